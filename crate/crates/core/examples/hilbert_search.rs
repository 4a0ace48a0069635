//! Bounded forward search in the single-conclusion systems H_PWK and H_BK.

use wkh::calculus::{prove_setfmla_bounded, verify_linear, write_linear, SearchConfig, SearchOutcome, Statement};
use wkh::corpus::get_system;
use wkh::formula::Signature;

fn main() {
    let sig = Signature::and_or_not();
    let cfg = SearchConfig::default();
    for (sys, claim) in [("H_BK", "p, ~p |- q"), ("H_BK", "~~p |- p"), ("H_PWK", "- |- p | ~p"), ("H_BK", "p & q |- q | p")] {
        let s = get_system(sys).unwrap();
        let claim = Statement::parse(claim, &sig).unwrap();
        let goal = claim.conclusion().unwrap();
        match prove_setfmla_bounded(&s, &claim.antecedent, goal, &cfg).unwrap() {
            SearchOutcome::Proved(d) => {
                verify_linear(&s, &d, &claim).unwrap();
                print!("{}", write_linear(sys, &claim, &d));
            }
            other => println!("{claim} in {sys}: {other:?}"),
        }
    }
}
