//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on failure.

mod common;

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;

use common::*;
use wkh::calculus::{
    prove_setset_analytic, rule_sound, star_universe, verify_linear, verify_tree, Derivation, HSystem,
    Justification, LinearDerivation, RuleSchema, SearchConfig, SearchOutcome, Statement, Universe,
};
use wkh::corpus::{get_derivation, get_matrix, get_system};
use wkh::family::{self, seeded};
use wkh::formula::{theta_subformulas, Formula};
use wkh::semantics::{
    check_matrix_renaming, check_monadicity, companion_oracle, consequence_holds, evaluate, Matrix, Valuation,
    WeakKleene,
};
use wkh::transforms::{
    big_or, compare_systems, deduction_transform, disjunction_elim, dualize_system, explosion_transform,
    neg_deduction_transform, or_convert_system, rule_derivable, translate_bk, DerivabilityStatus, DisjContext,
    FreshNamer, Side,
};

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sys(id: &str) -> std::sync::Arc<HSystem> {
    get_system(id).unwrap_or_else(|e| panic!("{id}: {e}"))
}

fn matrix(id: &str) -> Matrix {
    get_matrix(id).unwrap_or_else(|e| panic!("{id}: {e}"))
}

fn soundness() -> Verdict {
    let start = Instant::now();
    let plan = [
        ("SS-CL", "CL2", 8),
        ("SF-CL", "CL2", 4),
        ("R_PWK", "PWK", 20),
        ("H_PWK", "PWK", 23),
        ("R_BK", "BK", 20),
        ("R_BK_star", "BK", 20),
        ("H_BK", "BK", 47),
    ];
    let mut checked = 0;
    for (s, m, n) in plan {
        let (s, m) = (sys(s), matrix(m));
        ensure(s.rules().len() == n, || format!("{} has {} rules, expected {n}", s.name, s.rules().len()))?;
        for r in s.rules() {
            ensure(rule_sound(&m, r).holds, || format!("{} unsound for {}", r, m.name))?;
            checked += 1;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(5), || format!("took {t:?}"))?;
    Ok(format!("{checked} rules sound in {t:.2?}"))
}

/// Provable singleton-succedent statements of the R_BK family, kept for the translation check.
struct Agreement {
    summary: String,
    bk_singletons: Vec<Statement>,
    theta_checked: usize,
}

fn agreement() -> Result<Agreement, String> {
    let start = Instant::now();
    let statements = family::desk_family(&["p", "q"], 1, 2, 200, 1);
    let cfg = SearchConfig::default();
    let mut bk_singletons = Vec::new();
    let mut theta_checked = 0;
    let mut lines = Vec::new();
    for (s, m) in [("R_PWK", "PWK"), ("R_BK", "BK"), ("SS-CL", "CL2")] {
        let (s, m) = (sys(s), matrix(m));
        let (mut proofs, mut disagreements, mut exhausted) = (0, 0, 0);
        for claim in &statements {
            let semantic = consequence_holds(&m, &claim.antecedent, &claim.succedent).holds;
            let found = match prove_setset_analytic(&s, claim, &cfg).map_err(|e| e.to_string())? {
                SearchOutcome::Proved(t) => {
                    verify_tree(&s, &t, claim).map_err(|e| format!("{claim} in {}: {e}", s.name))?;
                    let allowed: BTreeSet<Formula> =
                        theta_subformulas(&claim.antecedent, &claim.succedent, &cfg.theta).unwrap().into_iter().collect();
                    if let Some(bad) = t.label_formulas().iter().find(|f| !allowed.contains(*f)) {
                        return Err(format!("proof of {claim} in {} uses {bad}", s.name));
                    }
                    theta_checked += 1;
                    if s.name == "R_BK" && claim.succedent.len() == 1 {
                        bk_singletons.push(claim.clone());
                    }
                    proofs += 1;
                    true
                }
                SearchOutcome::NoProof => false,
                SearchOutcome::BudgetExhausted => {
                    exhausted += 1;
                    continue;
                }
            };
            if found != semantic {
                disagreements += 1;
            }
        }
        ensure(disagreements == 0 && exhausted == 0, || {
            format!("{} vs {}: {disagreements} disagreements, {exhausted} exhausted", s.name, m.name)
        })?;
        lines.push(format!("{}/{}: {proofs} proofs", s.name, m.name));
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(600), || format!("took {t:?}"))?;
    let summary = format!("{} statements per pair, {} in {t:.2?}", statements.len(), lines.join(", "));
    Ok(Agreement { summary, bk_singletons, theta_checked })
}

fn corpus_derivations() -> Verdict {
    let expectations: [(&str, Option<usize>); 11] = [
        ("cl-p-imp-p", Some(5)),
        ("ss-cl-excluded-middle", None),
        ("ss-cl-demorgan", None),
        ("bk-demorgan", None),
        ("bk25", Some(6)),
        ("bk28", Some(6)),
        ("bk29", None),
        ("bk30", None),
        ("lift-bk3", None),
        ("lift-bk4", None),
        ("lift-bk12", None),
    ];
    for (id, len) in expectations {
        let d = get_derivation(id).map_err(|e| format!("{id}: {e}"))?;
        if let (Some(n), Derivation::Linear(l)) = (len, &d.file.derivation) {
            ensure(l.len() == n, || format!("{id} has {} steps, expected {n}", l.len()))?;
        }
    }
    Ok(format!("{} corpus derivations verify", expectations.len()))
}

fn transform_identities() -> Verdict {
    let (r_pwk, r_bk, h_pwk) = (sys("R_PWK"), sys("R_BK"), sys("H_PWK"));
    let dual = dualize_system(&r_pwk).map_err(|e| e.to_string())?;
    let cmp = compare_systems(&dual, &r_bk);
    ensure(cmp.identical(), || format!("dualize(R_PWK) vs R_BK: {cmp:?}"))?;
    let back = dualize_system(&dual).map_err(|e| e.to_string())?;
    ensure(back.rules() == r_pwk.rules(), || "dualization is not an involution".into())?;

    let conv = or_convert_system(&r_pwk, &mut FreshNamer::for_system(&r_pwk)).map_err(|e| e.to_string())?;
    let cmp = compare_systems(&conv.system, &h_pwk);
    ensure(conv.discarded == ["r15"], || format!("discarded {:?}", conv.discarded))?;
    ensure(cmp.only_left == ["r1.disj"] && cmp.only_right == ["hPWK1"], || format!("{cmp:?}"))?;

    let cfg = SearchConfig::default();
    let r1 = conv.system.rule("r1.disj").unwrap();
    let hpwk1 = h_pwk.rule("hPWK1").unwrap();
    let r15 = r_pwk.rule("r15").unwrap();
    let c = Formula::from_var(conv.p0.clone());
    let lift = |f: &Formula| Formula::or(f.clone(), c.clone());
    let r15_image = RuleSchema::new(
        "r15.disj",
        r15.antecedent.iter().map(lift).collect(),
        vec![lift(&big_or(&r15.succedent).unwrap())],
    );
    for (target, rule) in [(&*h_pwk, r1), (&conv.system, hpwk1), (&*h_pwk, &r15_image)] {
        let st = rule_derivable(target, rule, &cfg).map_err(|e| e.to_string())?;
        ensure(st == DerivabilityStatus::Proved, || format!("{} in {}: {st:?}", rule.name, target.name))?;
    }
    Ok(format!("dualization exact; or-conversion matches {} rules, 2 exceptions proved", cmp.matched.len()))
}

fn random_side(rng: &mut rand_chacha::ChaCha8Rng, vars: &[&str], depth: usize, max: usize) -> Vec<Formula> {
    let k = rng.gen_range(0..=max);
    (0..k).map(|_| random_upto(rng, vars, depth)).collect()
}

fn companion() -> Verdict {
    let start = Instant::now();
    let (pwk, bk) = (matrix("PWK"), matrix("BK"));
    let mut rng = seeded(6);
    let all = ["p", "q", "r"];
    for _ in 0..1000 {
        let vars = &all[..rng.gen_range(1..=3)];
        let gamma = random_side(&mut rng, vars, 3, 3);
        let psi = random_upto(&mut rng, vars, 3);
        let goal = std::slice::from_ref(&psi);
        for (logic, m) in [(WeakKleene::Pwk, &pwk), (WeakKleene::Bk, &bk)] {
            let brute = consequence_holds(m, &gamma, goal).holds;
            ensure(companion_oracle(logic, &gamma, &psi) == brute, || format!("{logic:?}: {gamma:?} |- {psi}"))?;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(30), || format!("took {t:?}"))?;
    Ok(format!("1000 cases agree for PWK and BK in {t:.2?}"))
}

fn disj_property() -> Verdict {
    let (pwk, bk) = (matrix("PWK"), matrix("BK"));
    let mut rng = seeded(7);
    let vars = ["p", "q", "r"];
    for _ in 0..300 {
        let gamma = random_side(&mut rng, &vars, 2, 2);
        let [phi, psi, gam] = [0; 3].map(|_| random_upto(&mut rng, &vars, 2));
        let holds = |extra: Formula| {
            let mut ant = gamma.clone();
            ant.push(extra);
            consequence_holds(&pwk, &ant, std::slice::from_ref(&gam)).holds
        };
        let joint = holds(Formula::or(phi.clone(), psi.clone()));
        ensure(joint == (holds(phi.clone()) && holds(psi.clone())), || format!("{gamma:?}; {phi}; {psi}; {gam}"))?;
    }

    let alg = &bk.algebra;
    let designated = |f: &Formula, v: &Valuation| bk.is_designated(evaluate(f, alg, v).unwrap());
    let c = f("p | q");
    let target = Formula::or(c.clone(), Formula::not(c));
    let v = Valuation::from_names(alg, &[("p", "u"), ("q", "t")]);
    ensure(!consequence_holds(&bk, &[f("q")], std::slice::from_ref(&target)).holds, || "first witness holds".into())?;
    ensure(designated(&f("q"), &v) && !designated(&target, &v), || "first valuation".into())?;
    let c = f("~p | q");
    let v = Valuation::from_names(alg, &[("p", "f"), ("q", "u")]);
    ensure(!consequence_holds(&bk, &[f("~p")], std::slice::from_ref(&c)).holds, || "second witness holds".into())?;
    ensure(designated(&f("~p"), &v) && !designated(&c, &v), || "second valuation".into())?;
    Ok("300 PWK samples hold; both BK witnesses confirmed".into())
}

fn translation(statements: &[Statement]) -> Verdict {
    let (star, h_bk) = (sys("R_BK_star"), sys("H_BK"));
    let base = SearchConfig::default();
    let mut seen = BTreeSet::new();
    for claim in statements {
        if !seen.insert(claim.to_string()) {
            continue;
        }
        let cfg = SearchConfig { universe: Universe::Explicit(star_universe(claim, &base).unwrap()), ..base.clone() };
        let t = match prove_setset_analytic(&star, claim, &cfg).map_err(|e| e.to_string())? {
            SearchOutcome::Proved(t) => t,
            other => return Err(format!("{claim}: R_BK_star search gave {other:?}")),
        };
        verify_tree(&star, &t, claim).map_err(|e| format!("{claim}: {e}"))?;
        let d = translate_bk(&star, &h_bk, &t, claim).map_err(|e| format!("{claim}: {e}"))?;
        let e = verify_linear(&h_bk, &d, claim).map_err(|e| format!("{claim}: {e}"))?;
        ensure(e.conclusion() == claim.conclusion(), || format!("{claim}: wrong conclusion"))?;
    }
    ensure(seen.len() >= 30, || format!("only {} statements", seen.len()))?;
    Ok(format!("{} statements translated and verified", seen.len()))
}

const VARS: [&str; 3] = ["p", "q", "r"];

/// A context with distinct disjuncts, a side, and a derivation starting from
/// `Γ, φ | ψ, δ` with `extra` added to Γ.
fn context(rng: &mut rand_chacha::ChaCha8Rng, extra: impl Fn(&Formula) -> Vec<Formula>) -> (DisjContext, Side) {
    loop {
        let phi = random_upto(rng, &VARS, 1);
        let psi = random_upto(rng, &VARS, 1);
        if phi == psi {
            continue;
        }
        let side = if rng.gen_bool(0.5) { Side::Phi } else { Side::Psi };
        let delta = if side == Side::Phi { &phi } else { &psi };
        let mut gamma = random_side(rng, &VARS, 1, 2);
        gamma.extend(extra(delta));
        return (DisjContext::new(gamma, phi, psi), side);
    }
}

fn start(ctx: &DisjContext, side: Side) -> LinearDerivation {
    premises_only(&ctx.antecedent(Some(ctx.pick(side))))
}

/// Derives `δ & g` for some premise g and appends BK1* against `~(δ & g)`.
fn contradiction(d: &mut LinearDerivation, delta: &Formula, g: &Formula, conclusion: &Formula) {
    let i = (0..d.len()).find(|&i| d.formula(i) == Some(delta)).unwrap();
    let j = (0..d.len()).find(|&i| d.formula(i) == Some(g)).unwrap();
    let c = Formula::and(delta.clone(), g.clone());
    let s = wkh::formula::Substitution::from_pairs([("p", delta.clone()), ("q", g.clone())]);
    d.rule("BK4", &[i, j], s);
    d.steps.last_mut().unwrap().formula = Some(c.clone());
    explode(d, &c, conclusion);
}

fn proof_transforms() -> Verdict {
    let (h_bk, star) = (sys("H_BK"), sys("R_BK_star"));
    let n = 40;
    let mut rng = seeded(9);
    let check = |d: &LinearDerivation, claim: &Statement, what: &str| -> Result<(), String> {
        let e = verify_linear(&h_bk, d, claim).map_err(|e| format!("{what} output for {claim}: {e}"))?;
        ensure(e.conclusion() == claim.conclusion(), || format!("{what}: wrong conclusion for {claim}"))
    };

    for _ in 0..n {
        let (ctx, side) = context(&mut rng, |_| vec![]);
        let mut d = start(&ctx, side);
        extend_randomly(&h_bk, &mut rng, &mut d, 1..=6, 12);
        let goal = conclusion(&d);
        let out = deduction_transform(&h_bk, &d, &ctx, side).map_err(|e| format!("deduction: {e}"))?;
        let claim = Statement::new(ctx.antecedent(None), [Formula::or(Formula::not(ctx.pick(side).clone()), goal)]);
        check(&out, &claim, "deduction")?;
    }

    for k in 0..n {
        let g = random_formula(&mut rng, &VARS, 1);
        let via_bk3 = k % 2 == 0;
        let (ctx, side) = context(&mut rng, |delta| {
            if via_bk3 {
                vec![Formula::not(Formula::not(Formula::not(delta.clone())))]
            } else {
                vec![g.clone(), Formula::not(Formula::and(delta.clone(), g.clone()))]
            }
        });
        let delta = ctx.pick(side).clone();
        let neg = Formula::not(delta.clone());
        let mut d = start(&ctx, side);
        extend_randomly(&h_bk, &mut rng, &mut d, 0..=4, 12);
        if via_bk3 {
            let nnn = Formula::not(Formula::not(neg.clone()));
            let i = (0..d.len()).find(|&i| d.formula(i) == Some(&nnn)).unwrap();
            d.rule("BK3", &[i], wkh::formula::Substitution::from_pairs([("p", neg.clone())]));
            d.steps.last_mut().unwrap().formula = Some(neg.clone());
        } else {
            contradiction(&mut d, &delta, &g, &neg);
        }
        let out = neg_deduction_transform(&h_bk, &d, &ctx, side).map_err(|e| format!("neg deduction: {e}"))?;
        check(&out, &Statement::new(ctx.antecedent(None), [neg]), "neg deduction")?;
    }

    for _ in 0..n {
        let g = random_formula(&mut rng, &VARS, 1);
        let (ctx, side) = context(&mut rng, |delta| vec![g.clone(), Formula::not(Formula::and(delta.clone(), g.clone()))]);
        let delta = ctx.pick(side).clone();
        let mut d = start(&ctx, side);
        extend_randomly(&h_bk, &mut rng, &mut d, 0..=3, 12);
        let gamma = random_formula(&mut rng, &VARS, 2);
        contradiction(&mut d, &delta, &g, &gamma);
        extend_randomly(&h_bk, &mut rng, &mut d, 0..=3, 12);
        let out = explosion_transform(&h_bk, &d, &ctx, side).map_err(|e| format!("explosion: {e}"))?;
        check(&out, &Statement::new(ctx.antecedent(None), [ctx.pick(side.other()).clone()]), "explosion")?;
    }

    let bk = matrix("BK");
    let mut done = 0;
    let mut attempts = 0;
    let mut seen = BTreeSet::new();
    let mut both = 0;
    while done < n || both < 15 {
        attempts += 1;
        ensure(attempts < 20_000, || format!("only {done} disjunction inputs found"))?;
        let (ctx, _) = context(&mut rng, |_| vec![]);
        let goal = random_upto(&mut rng, &VARS[..2], 2);
        let c1 = Statement::new(ctx.antecedent(Some(&ctx.phi)), [goal.clone()]);
        let c2 = Statement::new(ctx.antecedent(Some(&ctx.psi)), [goal.clone()]);
        let holds = |c: &Statement| consequence_holds(&bk, &c.antecedent, &c.succedent).holds;
        if !holds(&c1) || !holds(&c2) || !seen.insert((c1.to_string(), c2.to_string())) {
            continue;
        }
        let (Some(d1), Some(d2)) = (translated(&star, &h_bk, &c1), translated(&star, &h_bk, &c2)) else {
            return Err(format!("no R_BK_star proof for {c1} or {c2}"));
        };
        let needs = |d: &LinearDerivation, x: &Formula| {
            !ctx.gamma.contains(x) && d.steps.iter().any(|s| s.justification == Justification::Premise && s.formula.as_ref() == Some(x))
        };
        if needs(&d1, &ctx.phi) && needs(&d2, &ctx.psi) {
            both += 1;
        }
        let out = disjunction_elim(&h_bk, &d1, &d2, &ctx).map_err(|e| format!("disjunction: {e}"))?;
        check(&out, &Statement::new(ctx.antecedent(None), [goal]), "disjunction")?;
        done += 1;
    }
    ensure(both >= 15, || format!("only {both} disjunction inputs use both disjuncts"))?;
    Ok(format!("{n} inputs per transform ({done} for disjunction elimination, {both} using both disjuncts)"))
}

fn matrix_structure() -> Verdict {
    let (bk, mprime) = (matrix("BK"), matrix("Mprime"));
    ensure(check_matrix_renaming(&bk, &mprime, &[2, 1, 0]), || "BK and Mprime are not related by t<->f".into())?;
    let theta = [f("x"), f("~x")];
    for m in ["PWK", "BK"] {
        let rep = check_monadicity(&matrix(m), &theta);
        ensure(rep.is_monadic() && rep.entries.len() == 3, || format!("{m}: {rep:?}"))?;
    }
    Ok("renaming holds; PWK and BK fully separated by {x, ~x}".into())
}

fn wkh(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_wkh")).args(args).output().expect("run wkh");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn cli(dir: &Path) -> Verdict {
    let export = dir.join("corpus");
    let exp = export.to_str().unwrap();
    let (code, _) = wkh(&["corpus", "export", exp]);
    ensure(code == 0, || format!("corpus export exited {code}"))?;
    let drv = |name: &str| export.join("derivations").join(name).to_str().unwrap().to_string();
    let proof = dir.join("proof.drv");
    let proof_s = proof.to_str().unwrap().to_string();
    let tree = dir.join("tree.drv");
    let tree_s = tree.to_str().unwrap().to_string();
    let translated_s = dir.join("translated.drv").to_str().unwrap().to_string();
    let tampered = dir.join("tampered.drv");
    let original = std::fs::read_to_string(drv("cl-p-imp-p.drv")).map_err(|e| e.to_string())?;
    std::fs::write(&tampered, original.replace("4. SFCL1 {p:=p, q:=p}", "4. SFCL1 {p:=p, q:=q}")).map_err(|e| e.to_string())?;
    let tampered_s = tampered.to_str().unwrap().to_string();

    let canned: Vec<(Vec<String>, i32)> = [
        (vec!["parse", "p -> q & r"], 0),
        (vec!["eval", "p & ~q", "--matrix", "WK", "--valuation", "p=t,q=u"], 0),
        (vec!["entails", "--matrix", "PWK", "--lhs", "p, ~p", "--rhs", "q"], 1),
        (vec!["entails", "--matrix", "BK", "--lhs", "p, ~p", "--rhs", "q"], 0),
        (vec!["--json", "entails", "--matrix", "CL", "--lhs", "~(p & q)", "--rhs", "~p, ~q"], 0),
        (vec!["rule-sound", "--system", "H_BK"], 0),
        (vec!["rule-sound", "--system", "SS-CL", "--matrix", "BK"], 1),
        (vec!["monadic", "--matrix", "PWK"], 0),
        (vec!["prove", "--system", "R_PWK", "--rhs", "p | ~p"], 0),
        (vec!["prove", "--system", "R_BK", "--rhs", "p | ~p"], 1),
        (vec!["prove", "--system", "H_BK", "--lhs", "~~p", "--rhs", "p"], 0),
        (vec!["prove", "--system", "R_PWK", "--rhs", "p | ~p", "--max-nodes", "1"], 3),
        (vec!["--json", "prove", "--system", "SS-CL", "--lhs", "~(p & q)", "--rhs", "~p, ~q", "--format", "json"], 0),
        (vec!["prove", "--system", "SS-CL", "--lhs", "~(p & q)", "--rhs", "~p, ~q", "--format", "dot"], 0),
        (vec!["verify", &drv("cl-p-imp-p.drv")], 0),
        (vec!["verify", &drv("bk29.drv")], 0),
        (vec!["verify", &drv("bk-demorgan.drv")], 0),
        (vec!["verify", &tampered_s], 1),
        (vec!["verify", &drv("bk-demorgan.drv"), "--system", "R_BK"], 2),
        (vec!["transform", "dualize", "--system", "R_PWK"], 0),
        (vec!["transform", "or-convert", "--system", "R_PWK"], 0),
        (vec!["transform", "lift", "--system", "H_BK", "--rule", "BK4", "--mode", "imp"], 0),
        (vec!["systems", "list"], 0),
        (vec!["systems", "show", "R_BK_star"], 0),
        (vec!["compare", "--system", "R_BK", "--matrix", "BK", "--vars", "1"], 0),
        (vec!["compare", "--system", "SS-CL", "--matrix", "PWK", "--vars", "1"], 1),
        (vec!["frobnicate"], 2),
        (vec!["prove", "--system", "nope", "--rhs", "p"], 2),
    ]
    .into_iter()
    .map(|(a, c)| (a.into_iter().map(String::from).collect(), c))
    .collect();

    for (args, expected) in &canned {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, first) = wkh(&argv);
        ensure(code == *expected, || format!("wkh {}: exit {code}, expected {expected}", args.join(" ")))?;
        let (_, second) = wkh(&argv);
        ensure(first == second, || format!("wkh {}: output differs between runs", args.join(" ")))?;
    }

    let round_trips: [(&[&str], &str); 3] = [
        (&["prove", "--system", "H_BK", "--lhs", "p, ~p", "--rhs", "q", "--out", &proof_s], &proof_s),
        (&["prove", "--system", "R_BK_star", "--lhs", "~(p & q)", "--rhs", "~p | ~q", "--out", &tree_s], &tree_s),
        (&["translate-bk", &tree_s, "--out", &translated_s], &translated_s),
    ];
    for (args, file) in round_trips {
        let (code, _) = wkh(args);
        ensure(code == 0, || format!("wkh {}: exit {code}", args.join(" ")))?;
        let (code, _) = wkh(&["verify", file]);
        ensure(code == 0, || format!("verify {file}: exit {code}"))?;
    }
    let written = std::fs::read(&tree).map_err(|e| e.to_string())?;
    wkh(round_trips[1].0);
    ensure(std::fs::read(&tree).map_err(|e| e.to_string())? == written, || "prove --out is not deterministic".into())?;
    Ok(format!("{} invocations and {} round trips", canned.len(), round_trips.len()))
}

fn main() {
    let mut failed = 0;
    let mut report = |n: usize, name: &str, v: Verdict| match v {
        Ok(detail) => println!("PASS {n:>2} {name}: {detail}"),
        Err(why) => {
            failed += 1;
            println!("FAIL {n:>2} {name}: {why}");
        }
    };
    report(1, "soundness sweeps", soundness());
    let agree = agreement();
    let (bk_singletons, theta) = match &agree {
        Ok(a) => (a.bk_singletons.clone(), Ok(format!("{} proofs inside their Θ-subformulas", a.theta_checked))),
        Err(e) => (Vec::new(), Err(format!("not checked: {e}"))),
    };
    report(2, "search agrees with the matrices", agree.map(|a| a.summary));
    report(3, "proofs are Θ-analytic", theta);
    report(4, "corpus derivations", corpus_derivations());
    report(5, "system transforms", transform_identities());
    report(6, "companion oracles", companion());
    report(7, "disjunction property", disj_property());
    report(8, "completeness translation", translation(&bk_singletons));
    report(9, "proof transforms", proof_transforms());
    report(10, "matrix structure", matrix_structure());
    let dir = tempfile::tempdir().expect("temp dir");
    report(11, "command line", cli(dir.path()));
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
