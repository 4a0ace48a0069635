//! Deduction-style transforms on H_BK derivations: discharging a disjunct.

use wkh::calculus::{verify_linear, write_linear, LinearDerivation, Statement};
use wkh::corpus::get_system;
use wkh::formula::{parse, Formula, Signature, Substitution};
use wkh::transforms::{deduction_transform, explosion_transform, DisjContext, Side};

fn f(s: &str) -> Formula {
    parse(s, &Signature::and_or_not()).unwrap()
}

fn main() {
    let h = get_system("H_BK").unwrap();

    // From  q, p | r, p |- p & q  obtain  q, p | r |- ~p | (p & q).
    let ctx = DisjContext::new([f("q")], f("p"), f("r"));
    let mut d = LinearDerivation::new();
    let q = d.premise(f("q"));
    let p = d.premise(f("p"));
    d.rule("BK4", &[p, q], Substitution::from_pairs([("p", f("p")), ("q", f("q"))]));
    let out = deduction_transform(&h, &d, &ctx, Side::Phi).unwrap();
    let claim = Statement::new(ctx.antecedent(None), [f("~p | p & q")]);
    verify_linear(&h, &out, &claim).unwrap();
    print!("{}", write_linear("H_BK", &claim, &out));

    // From  ~p, p | r, p |- s  (by explosion) obtain  ~p, p | r |- r.
    let ctx = DisjContext::new([f("~p")], f("p"), f("r"));
    let mut d = LinearDerivation::new();
    let np = d.premise(f("~p"));
    let p = d.premise(f("p"));
    d.rule("BK1*", &[p, np], Substitution::from_pairs([("p", f("p")), ("q", f("s"))]));
    let out = explosion_transform(&h, &d, &ctx, Side::Phi).unwrap();
    let claim = Statement::new(ctx.antecedent(None), [f("r")]);
    verify_linear(&h, &out, &claim).unwrap();
    println!("explosion discharge: {} primitive steps for {claim}", out.len());
}
