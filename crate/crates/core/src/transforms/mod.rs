//! System-level and proof-level transformations: conversion of Set-Set systems
//! to Set-Fmla ones, dualization, lifting, assembly of the BK systems, and the
//! deduction-style proof transforms.

mod proofs;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::calculus::{
    prove_setfmla_bounded, prove_setset_analytic, HSystem, Kind, LinearDerivation, Rejection, RuleSchema, SearchConfig,
    SearchError, SearchOutcome, Statement, SystemError,
};
use crate::formula::{Formula, Signature, Substitution, Var};

pub use proofs::{
    bk29_derivation, deduction_transform, disjunction_elim, explosion_transform, neg_deduction_transform, translate_bk, DisjContext,
    Side,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("input derivation does not verify: {0}")]
    NotVerified(Rejection),
    #[error("input derivation applies BK1*, which this transform does not allow")]
    UsesExplosion,
    #[error("input derivation never applies BK1*")]
    NoExplosion,
    #[error("rule {0} is not available")]
    MissingRule(String),
    #[error("the rule BK1* has no lifted version")]
    ExplosionNotLiftable,
    #[error("input does not have the expected shape: {0}")]
    BadInput(String),
    #[error("transform produced an invalid derivation: {0}")]
    Internal(String),
    #[error(transparent)]
    System(#[from] SystemError),
}

/// Hands out variables named `v0`, `v1`, ... that avoid a reserved set.
#[derive(Clone, Debug, Default)]
pub struct FreshNamer {
    reserved: BTreeSet<Var>,
    counter: usize,
}

impl FreshNamer {
    pub fn new(reserved: impl IntoIterator<Item = Var>) -> Self {
        FreshNamer { reserved: reserved.into_iter().collect(), counter: 0 }
    }

    /// Avoids every variable occurring in the rules of `sys`.
    pub fn for_system(sys: &HSystem) -> Self {
        FreshNamer::new(sys.rules().iter().flat_map(|r| r.vars()))
    }

    pub fn fresh(&mut self) -> Var {
        loop {
            let v = Var::new(&format!("v{}", self.counter));
            self.counter += 1;
            if self.reserved.insert(v.clone()) {
                return v;
            }
        }
    }
}

/// Left-associated disjunction `((f1 | f2) | ...) | fn` of the operands in
/// the order given. `None` for an empty slice.
pub fn big_or(operands: &[Formula]) -> Option<Formula> {
    let (first, rest) = operands.split_first()?;
    Some(rest.iter().fold(first.clone(), |acc, f| Formula::or(acc, f.clone())))
}

/// The four structural rules for disjunction added by the conversion.
pub fn disjunction_rules() -> Vec<RuleSchema> {
    let sig = Signature::and_or_not();
    [
        "disj.idem : p | p |- p",
        "disj.weak : p |- p | q",
        "disj.comm : p | q |- q | p",
        "disj.assoc : p | (q | r) |- (p | q) | r",
    ]
    .iter()
    .map(|s| RuleSchema::parse(s, &sig).expect("built-in rule"))
    .collect()
}

/// Result of converting a Set-Set system to Set-Fmla.
#[derive(Clone, Debug)]
pub struct Conversion {
    pub system: HSystem,
    /// Rules whose image had the form `f / f` and was dropped.
    pub discarded: Vec<String>,
    /// The variable used as the extra disjunct.
    pub p0: Var,
}

/// Converts a Set-Set system into a Set-Fmla one by disjoining a fresh
/// variable to every formula. Succedents are combined with [`big_or`] in the
/// order the rule writes them.
pub fn or_convert_system(sys: &HSystem, fresh: &mut FreshNamer) -> Result<Conversion, TransformError> {
    let p0 = fresh.fresh();
    let c = Formula::from_var(p0.clone());
    let lift = |f: &Formula| Formula::or(f.clone(), c.clone());
    let mut rules = disjunction_rules();
    let mut discarded = Vec::new();
    for r in sys.rules() {
        let name = format!("{}.disj", r.name);
        let converted = match (r.antecedent.is_empty(), r.succedent.len()) {
            (true, 1) => r.renamed(&name),
            (_, 0) => RuleSchema::new(&name, r.antecedent.iter().map(lift).collect(), vec![c.clone()]),
            _ => RuleSchema::new(
                &name,
                r.antecedent.iter().map(lift).collect(),
                vec![lift(&big_or(&r.succedent).expect("nonempty"))],
            ),
        };
        if converted.antecedent.len() == 1 && converted.antecedent == converted.succedent {
            discarded.push(r.name.clone());
            continue;
        }
        rules.push(converted);
    }
    let system = HSystem::new(&format!("{}.disj", sys.name), Kind::SetFmla, sys.signature.clone(), rules)?;
    Ok(Conversion { system, discarded, p0 })
}

/// Turns every rule upside down and swaps `&` with `|` throughout.
pub fn dualize_system(sys: &HSystem) -> Result<HSystem, TransformError> {
    if sys.kind != Kind::SetSet {
        return Err(TransformError::BadInput(format!("{} is not a Set-Set system", sys.name)));
    }
    let flip = |name: &str| name.strip_suffix(".dual").map(String::from).unwrap_or_else(|| format!("{name}.dual"));
    let rules = sys
        .rules()
        .iter()
        .map(|r| {
            RuleSchema::new(
                &flip(&r.name),
                r.succedent.iter().map(Formula::swap_and_or).collect(),
                r.antecedent.iter().map(Formula::swap_and_or).collect(),
            )
        })
        .collect();
    Ok(HSystem::new(&flip(&sys.name), Kind::SetSet, sys.signature.clone(), rules)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftMode {
    Or,
    Imp,
}

/// The lifted version of a single-conclusion rule: every premise and the
/// conclusion get a fresh disjunct `c | .` (or `~c | .`, i.e. `c -> .`).
pub fn lift_rule(r: &RuleSchema, mode: LiftMode, fresh: &mut FreshNamer) -> Result<RuleSchema, TransformError> {
    if r.succedent.len() != 1 {
        return Err(TransformError::BadInput(format!("{} is not single-conclusion", r.name)));
    }
    let mut namer = fresh.clone();
    let vars = r.vars();
    let c = loop {
        let v = namer.fresh();
        if !vars.contains(&v) {
            break v;
        }
    };
    *fresh = namer;
    let c = Formula::from_var(c);
    let (head, suffix) = match mode {
        LiftMode::Or => (c, "or"),
        LiftMode::Imp => (Formula::not(c), "imp"),
    };
    let lift = |f: &Formula| Formula::or(head.clone(), f.clone());
    Ok(RuleSchema::new(
        &format!("{}.{suffix}", r.name),
        r.antecedent.iter().map(lift).collect(),
        r.succedent.iter().map(lift).collect(),
    ))
}

/// Lifts with a namer that only avoids the rule's own variables.
pub fn lift_rule_default(r: &RuleSchema, mode: LiftMode) -> RuleSchema {
    lift_rule(r, mode, &mut FreshNamer::new(r.vars())).expect("single-conclusion rule")
}

/// Whether the conclusion's variables all occur in the premises.
pub fn satisfies_containment(r: &RuleSchema) -> bool {
    r.succedent.iter().all(|f| f.vars().is_subset(&r.antecedent_vars()))
}

fn schema(s: &str) -> RuleSchema {
    RuleSchema::parse(s, &Signature::and_or_not()).expect("built-in rule")
}

/// Rules of the Set-Set BK system that `assemble_bk_systems` expects, by name.
const R_BK_FINGERPRINT: [&str; 6] = [
    "r1 : p, ~p |- -",
    "r8 : ~(p & q) |- ~p, p",
    "r9 : ~(p & q) |- ~q, q",
    "r15 : p | q |- p, ~p",
    "r16 : p | q |- q, ~q",
    "r20 : p | q |- p, q",
];

const STAR_RULES: [&str; 4] = [
    "r8* : ~(p & q) |- ~p | p",
    "r9* : ~(p & q) |- ~q | q",
    "r15* : p | q |- p | ~p",
    "r16* : p | q |- q | ~q",
];

const BK_EXTRA: [&str; 6] = [
    "BK1* : p, ~p |- q",
    "BK20 : p | q, ~p |- q",
    "BK21 : p | (q | r) |- (p | q) | r",
    "BK22 : p | p |- p",
    "BK23 : p | q |- q | p",
    "BK24 : p | q, r |- ~p | r",
];

/// Builds `R_BK_star` (R_BK with r8, r9, r15, r16 replaced by single-conclusion
/// variants) and `H_BK` (24 core rules plus the `|`-lifted version of every
/// core rule satisfying containment).
pub fn assemble_bk_systems(r_bk: &HSystem) -> Result<(HSystem, HSystem), TransformError> {
    if r_bk.kind != Kind::SetSet || r_bk.rules().len() != 20 {
        return Err(TransformError::BadInput("expected the 20-rule Set-Set BK system".into()));
    }
    for expected in R_BK_FINGERPRINT.map(schema) {
        match r_bk.rule(&expected.name) {
            Some(r) if r.equivalent_to(&expected) => {}
            _ => return Err(TransformError::BadInput(format!("rule {} does not match {expected}", expected.name))),
        }
    }
    let stars: Vec<RuleSchema> = STAR_RULES.map(schema).to_vec();
    let star_for = |name: &str| stars.iter().find(|s| s.name == format!("{name}*"));
    let star_rules: Vec<RuleSchema> =
        r_bk.rules().iter().map(|r| star_for(&r.name).cloned().unwrap_or_else(|| r.clone())).collect();
    let r_bk_star = HSystem::new("R_BK_star", Kind::SetSet, r_bk.signature.clone(), star_rules)?;

    let extra: Vec<RuleSchema> = BK_EXTRA.map(schema).to_vec();
    let mut core = vec![extra[0].clone()];
    for i in 2..=19 {
        let name = format!("r{i}");
        let r = match star_for(&name) {
            Some(s) => s.renamed(&format!("BK{i}*")),
            None => {
                let r = r_bk.rule(&name).ok_or_else(|| TransformError::MissingRule(name.clone()))?;
                if r.succedent.len() != 1 {
                    return Err(TransformError::BadInput(format!("{name} should be single-conclusion")));
                }
                r.renamed(&format!("BK{i}"))
            }
        };
        core.push(r);
    }
    core.extend(extra[1..].iter().cloned());
    let mut rules = core.clone();
    for r in &core {
        if satisfies_containment(r) {
            rules.push(lift_rule_default(r, LiftMode::Or));
        }
    }
    let h_bk = HSystem::new("H_BK", Kind::SetFmla, r_bk.signature.clone(), rules)?;
    Ok((r_bk_star, h_bk))
}

/// The variable a lifted rule `X.or` adds to `X`.
pub(crate) fn lifting_var(sys: &HSystem, lifted: &str) -> Option<Var> {
    let base = sys.rule(lifted.strip_suffix(".or")?)?;
    let top = sys.rule(lifted)?;
    top.vars().difference(&base.vars()).next().cloned()
}

/// Derives the lift of the primitive lifted rule `name.or` in `H_BK`:
/// from `d | (c | f_i)` re-associate each premise with BK21, apply `name.or`
/// with `c := d | c`, and re-associate the result with BK27.
pub fn lifted_derivation_scheme(sys: &HSystem, name: &str) -> Result<(RuleSchema, LinearDerivation), TransformError> {
    if name == "BK1*" {
        return Err(TransformError::ExplosionNotLiftable);
    }
    let lifted_name = format!("{name}.or");
    let base = sys.rule(name).ok_or_else(|| TransformError::MissingRule(name.into()))?;
    let lifted = sys.rule(&lifted_name).ok_or_else(|| TransformError::MissingRule(lifted_name.clone()))?;
    let c = lifting_var(sys, &lifted_name).ok_or_else(|| TransformError::BadInput(format!("{lifted_name} adds no variable")))?;
    let double = lift_rule(lifted, LiftMode::Or, &mut FreshNamer::new(lifted.vars()))?;
    let d = double.vars().difference(&lifted.vars()).next().cloned().expect("fresh variable");
    let (cf, df) = (Formula::from_var(c.clone()), Formula::from_var(d));
    let mut proof = LinearDerivation::new();
    let premises: Vec<usize> = double.antecedent.iter().map(|f| proof.premise(f.clone())).collect();
    let mut reassoc = Vec::new();
    for (i, f) in base.antecedent.iter().enumerate() {
        let s = Substitution::from_pairs([("p", df.clone()), ("q", cf.clone()), ("r", f.clone())]);
        reassoc.push(proof.rule("BK21", &[premises[i]], s));
    }
    let mut s = Substitution::new();
    for v in base.vars() {
        s.insert(v.clone(), Formula::from_var(v));
    }
    s.insert(c, Formula::or(df.clone(), cf.clone()));
    let mid = proof.rule(&lifted_name, &reassoc, s);
    let s = Substitution::from_pairs([("p", df), ("q", cf), ("r", base.succedent[0].clone())]);
    proof.rule("BK27", &[mid], s);
    Ok((double.renamed(&format!("{lifted_name}.or")), proof))
}

/// Outcome of matching two rule sets up to variable renaming.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SystemComparison {
    pub matched: Vec<(String, String)>,
    pub only_left: Vec<String>,
    pub only_right: Vec<String>,
}

impl SystemComparison {
    pub fn identical(&self) -> bool {
        self.only_left.is_empty() && self.only_right.is_empty()
    }
}

/// Pairs up equivalent rules of `a` and `b` (maximum bipartite matching).
pub fn compare_systems(a: &HSystem, b: &HSystem) -> SystemComparison {
    let ra = a.rules();
    let rb = b.rules();
    let adj: Vec<Vec<usize>> =
        ra.iter().map(|x| (0..rb.len()).filter(|&j| x.equivalent_to(&rb[j])).collect()).collect();
    let mut owner: Vec<Option<usize>> = vec![None; rb.len()];
    fn augment(i: usize, adj: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for &j in &adj[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none() || augment(owner[j].unwrap(), adj, owner, seen) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }
    for i in 0..ra.len() {
        augment(i, &adj, &mut owner, &mut vec![false; rb.len()]);
    }
    let mut out = SystemComparison::default();
    let mut left_matched = vec![false; ra.len()];
    for (j, o) in owner.iter().enumerate() {
        if let Some(i) = o {
            left_matched[*i] = true;
            out.matched.push((ra[*i].name.clone(), rb[j].name.clone()));
        } else {
            out.only_right.push(rb[j].name.clone());
        }
    }
    out.matched.sort();
    out.only_left = ra.iter().zip(&left_matched).filter(|(_, m)| !**m).map(|(r, _)| r.name.clone()).collect();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivabilityStatus {
    Proved,
    /// Search ended without a proof; definitive only for analytic Set-Set search.
    NotFound,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivabilityEntry {
    pub rule: String,
    /// Name of the system the rule was proved in.
    pub target: String,
    pub status: DerivabilityStatus,
}

/// Tries to prove `rule` as a statement in `target`.
pub fn rule_derivable(target: &HSystem, rule: &RuleSchema, cfg: &SearchConfig) -> Result<DerivabilityStatus, SearchError> {
    let status = |found: bool, exhausted: bool| match (found, exhausted) {
        (true, _) => DerivabilityStatus::Proved,
        (false, true) => DerivabilityStatus::Inconclusive,
        (false, false) => DerivabilityStatus::NotFound,
    };
    Ok(match target.kind {
        Kind::SetSet => match prove_setset_analytic(target, &rule.statement(), cfg)? {
            SearchOutcome::Proved(_) => status(true, false),
            SearchOutcome::NoProof => status(false, false),
            SearchOutcome::BudgetExhausted => status(false, true),
        },
        Kind::SetFmla => {
            let goal = rule
                .succedent
                .first()
                .ok_or_else(|| SearchError::NotSingleConclusion)?;
            match prove_setfmla_bounded(target, &rule.antecedent, goal, cfg)? {
                SearchOutcome::Proved(_) => status(true, false),
                SearchOutcome::NoProof => DerivabilityStatus::Inconclusive,
                SearchOutcome::BudgetExhausted => status(false, true),
            }
        }
    })
}

/// For every rule of each system, attempts a proof of its statement in the other.
pub fn rule_interderivability(
    a: &HSystem,
    b: &HSystem,
    cfg: &SearchConfig,
) -> Result<Vec<DerivabilityEntry>, SearchError> {
    let mut out = Vec::new();
    for (from, to) in [(a, b), (b, a)] {
        for r in from.rules() {
            out.push(DerivabilityEntry {
                rule: format!("{}:{}", from.name, r.name),
                target: to.name.clone(),
                status: rule_derivable(to, r, cfg)?,
            });
        }
    }
    Ok(out)
}

/// Statement of a rule as seen by a Set-Fmla target.
pub fn rule_statement(r: &RuleSchema) -> Statement {
    r.statement()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::get_system;

    #[test]
    fn fresh_names_skip_reserved() {
        let mut n = FreshNamer::new([Var::new("v0"), Var::new("v2")]);
        assert_eq!(n.fresh().name(), "v1");
        assert_eq!(n.fresh().name(), "v3");
    }

    #[test]
    fn big_or_associates_left() {
        let fs: Vec<Formula> = ["a", "b", "c"].iter().map(|v| Formula::var(v)).collect();
        assert_eq!(big_or(&fs).unwrap().to_string(), "a | b | c");
        assert_eq!(big_or(&fs[..1]).unwrap().to_string(), "a");
        assert!(big_or(&[]).is_none());
    }

    #[test]
    fn lifting_examples() {
        let sys = get_system("H_BK").unwrap();
        let bk12 = sys.rule("BK12").unwrap();
        let lifted = lift_rule_default(bk12, LiftMode::Or);
        assert!(lifted.equivalent_to(&schema("x : c | ~p, c | ~q |- c | ~(p | q)")));
        let bk3 = lift_rule_default(sys.rule("BK3").unwrap(), LiftMode::Or);
        assert!(bk3.equivalent_to(&schema("x : c | ~~p |- c | p")));
        let bk4 = lift_rule_default(sys.rule("BK4").unwrap(), LiftMode::Imp);
        assert!(bk4.equivalent_to(&schema("x : ~c | p, ~c | q |- ~c | p & q")));
    }

    #[test]
    fn containment_examples() {
        assert!(!satisfies_containment(&schema("BK1* : p, ~p |- q")));
        assert!(satisfies_containment(&schema("BK13 : ~(p | q) |- ~p")));
        assert!(!satisfies_containment(&schema("hPWK1 : - |- p | ~p")));
    }

    #[test]
    fn dualization_examples() {
        let r = HSystem::new(
            "t",
            Kind::SetSet,
            Signature::and_or_not(),
            vec![schema("r1 : - |- p, ~p"), schema("r13 : p |- p | q")],
        )
        .unwrap();
        let d = dualize_system(&r).unwrap();
        assert!(d.rules()[0].equivalent_to(&schema("x : p, ~p |- -")));
        assert!(d.rules()[1].equivalent_to(&schema("x : p & q |- p")));
        let back = dualize_system(&d).unwrap();
        assert_eq!(back.rules(), r.rules());
    }

    #[test]
    fn conversion_examples() {
        let r_pwk = get_system("R_PWK").unwrap();
        let conv = or_convert_system(&r_pwk, &mut FreshNamer::for_system(&r_pwk)).unwrap();
        assert_eq!(conv.discarded, vec!["r15".to_string()]);
        let r2 = conv.system.rule("r2.disj").unwrap();
        assert!(r2.equivalent_to(&schema("x : p | c |- ~~p | c")));
        assert_eq!(conv.system.rules().len(), 23);
    }

    #[test]
    fn scheme_rejects_explosion() {
        let sys = get_system("H_BK").unwrap();
        assert_eq!(lifted_derivation_scheme(&sys, "BK1*").unwrap_err(), TransformError::ExplosionNotLiftable);
    }

    #[test]
    fn scheme_lengths() {
        let sys = get_system("H_BK").unwrap();
        let (_, d3) = lifted_derivation_scheme(&sys, "BK3").unwrap();
        assert_eq!(d3.len(), 4);
        let (_, d4) = lifted_derivation_scheme(&sys, "BK4").unwrap();
        assert_eq!(d4.len(), 6);
    }
}
