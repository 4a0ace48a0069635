//! Input generators shared by the integration tests.
#![allow(dead_code)]

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use wkh::calculus::{
    prove_setset_analytic, star_universe, verify_linear, HSystem, Justification, LinearDerivation, SearchConfig,
    SearchOutcome, Statement, Step, Universe,
};
use wkh::formula::{match_into, parse, Formula, Signature, Substitution, Var};
use wkh::transforms::translate_bk;

pub fn f(s: &str) -> Formula {
    parse(s, &Signature::and_or_not()).unwrap()
}

pub fn fs(items: &[&str]) -> Vec<Formula> {
    items.iter().map(|s| f(s)).collect()
}

/// Core H_BK rules other than BK1*, used for random forward steps.
pub const FORWARD_RULES: [&str; 23] = [
    "BK2", "BK3", "BK4", "BK5", "BK6", "BK7", "BK8*", "BK9*", "BK10", "BK11", "BK12", "BK13", "BK14", "BK15*",
    "BK16*", "BK17", "BK18", "BK19", "BK20", "BK21", "BK22", "BK23", "BK24",
];

/// Appends a number of random rule applications drawn from `steps` to `d`,
/// keeping formulas at most `max_size` symbols. Every appended step carries
/// its formula.
pub fn extend_randomly(
    sys: &HSystem,
    rng: &mut ChaCha8Rng,
    d: &mut LinearDerivation,
    steps: RangeInclusive<usize>,
    max_size: usize,
) {
    let steps = rng.gen_range(steps);
    let mut added = 0;
    let mut attempts = 0;
    while added < steps && attempts < steps * 200 {
        attempts += 1;
        let name = *FORWARD_RULES.choose(rng).unwrap();
        let rule = sys.rule(name).unwrap();
        let mut s = Substitution::new();
        let mut refs = Vec::new();
        let ok = rule.antecedent.iter().all(|pat| {
            let i = rng.gen_range(0..d.len());
            refs.push(i);
            match_into(pat, d.formula(i).unwrap(), &mut s)
        });
        if !ok {
            continue;
        }
        let g = s.apply(&rule.succedent[0]);
        if g.size() > max_size || (0..d.len()).any(|i| d.formula(i) == Some(&g)) {
            continue;
        }
        d.steps.push(Step { formula: Some(g), justification: Justification::Rule { rule: name.into(), refs, subst: s } });
        added += 1;
    }
}

pub fn premises_only(items: &[Formula]) -> LinearDerivation {
    let mut d = LinearDerivation::new();
    for x in items {
        d.premise(x.clone());
    }
    d
}

pub fn conclusion(d: &LinearDerivation) -> Formula {
    d.steps.last().unwrap().formula.clone().unwrap()
}

/// Appends a BK1* step from the steps proving `c` and `~c`, concluding `q`.
pub fn explode(d: &mut LinearDerivation, c: &Formula, q: &Formula) {
    let nc = Formula::not(c.clone());
    let pos = (0..d.len()).find(|&i| d.formula(i) == Some(c)).expect("c present");
    let neg = (0..d.len()).find(|&i| d.formula(i) == Some(&nc)).expect("~c present");
    let s = Substitution::from_pairs([("p", c.clone()), ("q", q.clone())]);
    d.steps.push(Step { formula: Some(q.clone()), justification: Justification::Rule { rule: "BK1*".into(), refs: vec![pos, neg], subst: s } });
}

/// A random formula over `vars` with depth at most `depth`.
pub fn random_formula(rng: &mut ChaCha8Rng, vars: &[&str], depth: usize) -> Formula {
    wkh::family::random_formula(rng, vars, depth)
}

pub fn var(name: &str) -> Formula {
    Formula::from_var(Var::new(name))
}

/// Proves `claim` in R_BK_star over its star universe.
pub fn star_proof(r_bk_star: &HSystem, claim: &Statement) -> Option<wkh::calculus::TreeDerivation> {
    let mut cfg = SearchConfig::default();
    cfg.universe = Universe::Explicit(star_universe(claim, &cfg).unwrap());
    match prove_setset_analytic(r_bk_star, claim, &cfg).unwrap() {
        SearchOutcome::Proved(t) => Some(t),
        _ => None,
    }
}

/// An H_BK proof of `claim`, obtained by search in R_BK_star and translation.
pub fn translated(r_bk_star: &HSystem, h_bk: &HSystem, claim: &Statement) -> Option<LinearDerivation> {
    let t = star_proof(r_bk_star, claim)?;
    let d = translate_bk(r_bk_star, h_bk, &t, claim).expect("translation succeeds");
    verify_linear(h_bk, &d, claim).expect("translation verifies");
    Some(d)
}

/// A random formula whose depth is drawn uniformly from `0..=max_depth`.
pub fn random_upto(rng: &mut ChaCha8Rng, vars: &[&str], max_depth: usize) -> Formula {
    let depth = rng.gen_range(0..=max_depth);
    random_formula(rng, vars, depth)
}
