//! Proof-level transforms in `H_BK`: deduction-style discharges, disjunction
//! elimination, and the translation of `R_BK_star` trees into linear proofs.

use std::collections::HashMap;

use crate::calculus::{
    verify_linear, verify_tree, Children, HSystem, Justification, LinearDerivation, Statement, Step, TreeDerivation,
    TreeNode,
};
use crate::formula::{canonical_set, Formula, Substitution, Var};

use super::{lifting_var, TransformError};

/// The context `Γ, φ | ψ` shared by the deduction-style transforms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjContext {
    pub gamma: Vec<Formula>,
    pub phi: Formula,
    pub psi: Formula,
}

/// Which disjunct is the discharged hypothesis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Phi,
    Psi,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Phi => Side::Psi,
            Side::Psi => Side::Phi,
        }
    }
}

impl DisjContext {
    pub fn new(gamma: impl IntoIterator<Item = Formula>, phi: Formula, psi: Formula) -> Self {
        DisjContext { gamma: canonical_set(gamma), phi, psi }
    }

    pub fn disjunction(&self) -> Formula {
        Formula::or(self.phi.clone(), self.psi.clone())
    }

    pub fn pick(&self, side: Side) -> &Formula {
        match side {
            Side::Phi => &self.phi,
            Side::Psi => &self.psi,
        }
    }

    /// `Γ, φ | ψ`, plus `extra` if given.
    pub fn antecedent(&self, extra: Option<&Formula>) -> Vec<Formula> {
        canonical_set(self.gamma.iter().cloned().chain([self.disjunction()]).chain(extra.cloned()))
    }
}

fn subst(pairs: &[(&str, &Formula)]) -> Substitution {
    Substitution::from_pairs(pairs.iter().map(|(v, f)| (*v, (*f).clone())))
}

/// Builds a linear derivation, reusing any step whose formula is already present.
struct Builder<'a> {
    sys: &'a HSystem,
    d: LinearDerivation,
    known: HashMap<Formula, usize>,
}

impl<'a> Builder<'a> {
    fn new(sys: &'a HSystem) -> Self {
        Builder { sys, d: LinearDerivation::new(), known: HashMap::new() }
    }

    fn premise(&mut self, f: &Formula) -> usize {
        if let Some(&i) = self.known.get(f) {
            return i;
        }
        let i = self.d.premise(f.clone());
        self.known.insert(f.clone(), i);
        i
    }

    fn apply(&mut self, rule: &str, refs: &[usize], s: Substitution) -> Result<usize, TransformError> {
        let schema = self.sys.any_rule(rule).ok_or_else(|| TransformError::MissingRule(rule.into()))?;
        let inputs: Vec<Formula> = refs.iter().map(|&r| self.d.formula(r).unwrap().clone()).collect();
        let (f, s) = crate::calculus::apply_schema(schema, &inputs, &s, None)
            .map_err(|(reason, detail)| TransformError::Internal(format!("{rule}: {}: {detail}", reason.code())))?;
        if let Some(&i) = self.known.get(&f) {
            return Ok(i);
        }
        self.d.steps.push(Step {
            formula: Some(f.clone()),
            justification: Justification::Rule { rule: rule.into(), refs: refs.to_vec(), subst: s },
        });
        let i = self.d.len() - 1;
        self.known.insert(f, i);
        Ok(i)
    }

    /// Appends a derivation whose steps all carry formulas. Its premises are
    /// matched against formulas already present before being added.
    fn splice(&mut self, other: &LinearDerivation) -> usize {
        let mut map = Vec::with_capacity(other.len());
        for step in &other.steps {
            let f = step.formula.as_ref().expect("spliced steps carry formulas");
            let idx = match (&step.justification, self.known.get(f)) {
                (_, Some(&i)) => i,
                (Justification::Premise, None) => self.premise(f),
                (Justification::Rule { rule, refs, subst }, None) => {
                    self.d.steps.push(Step {
                        formula: Some(f.clone()),
                        justification: Justification::Rule {
                            rule: rule.clone(),
                            refs: refs.iter().map(|&r| map[r]).collect(),
                            subst: subst.clone(),
                        },
                    });
                    self.known.insert(f.clone(), self.d.len() - 1);
                    self.d.len() - 1
                }
                (Justification::Chain { .. }, None) => unreachable!("spliced derivations are expanded"),
            };
            map.push(idx);
        }
        *map.last().expect("nonempty derivation")
    }

    /// Drops everything not needed for step `goal`, which becomes the last one.
    fn finish(self, goal: usize) -> LinearDerivation {
        if goal + 1 == self.d.len() {
            self.d
        } else {
            truncate_to(&self.d, goal)
        }
    }
}

/// Keeps the steps needed for step `goal`, which becomes the last one.
fn truncate_to(d: &LinearDerivation, goal: usize) -> LinearDerivation {
    let mut needed = vec![false; d.len()];
    needed[goal] = true;
    for i in (0..=goal).rev() {
        if needed[i] {
            if let Justification::Rule { refs, .. } = &d.steps[i].justification {
                refs.iter().for_each(|&r| needed[r] = true);
            }
        }
    }
    let mut renumber = vec![usize::MAX; d.len()];
    let mut out = LinearDerivation::new();
    for i in (0..=goal).filter(|&i| needed[i]) {
        renumber[i] = out.len();
        let mut step = d.steps[i].clone();
        if let Justification::Rule { refs, .. } = &mut step.justification {
            refs.iter_mut().for_each(|r| *r = renumber[*r]);
        }
        out.steps.push(step);
    }
    out
}

fn verified(sys: &HSystem, d: &LinearDerivation, claim: &Statement) -> Result<LinearDerivation, TransformError> {
    verify_linear(sys, d, claim).map_err(TransformError::NotVerified)
}

fn check_output(sys: &HSystem, d: LinearDerivation, claim: &Statement) -> Result<LinearDerivation, TransformError> {
    verify_linear(sys, &d, claim).map_err(|r| TransformError::Internal(r.to_string()))?;
    Ok(d)
}

fn conclusion_of(d: &LinearDerivation) -> Result<Formula, TransformError> {
    d.steps
        .last()
        .and_then(|s| s.formula.clone())
        .ok_or_else(|| TransformError::BadInput("empty derivation".into()))
}

const EXPLOSION: &str = "BK1*";

/// The lifting variable of `X.or`, and the fresh variable of `X.or.or`.
fn lift_vars(sys: &HSystem, lifted: &str) -> Result<(Var, Var), TransformError> {
    let c = lifting_var(sys, lifted).ok_or_else(|| TransformError::MissingRule(lifted.into()))?;
    let double = sys.derived(&format!("{lifted}.or")).ok_or_else(|| TransformError::MissingRule(format!("{lifted}.or")))?;
    let top = sys.rule(lifted).unwrap().vars();
    let d = double.schema.vars().difference(&top).next().cloned().ok_or_else(|| TransformError::MissingRule(lifted.into()))?;
    Ok((c, d))
}

/// Core of the deduction transform on an expanded, BK1*-free derivation.
/// Appends to `b` a proof of `~δ | γ_k` for every step and returns the index
/// of the last one. `disj` is the working disjunction `δ | other`, already in `b`.
fn lift_all(
    b: &mut Builder,
    e: &LinearDerivation,
    delta: &Formula,
    other: &Formula,
    disj: usize,
    original_disj: &Formula,
) -> Result<usize, TransformError> {
    let sys = b.sys;
    let neg = Formula::not(delta.clone());
    let working = b.d.formula(disj).unwrap().clone();
    let mut map: Vec<usize> = Vec::with_capacity(e.len());
    for step in &e.steps {
        let g = step.formula.as_ref().unwrap();
        let idx = match &step.justification {
            Justification::Premise if g == delta => {
                let s = subst(&[("p", delta), ("q", other)]);
                let excluded = b.apply("BK15*", &[disj], s)?;
                b.apply("BK23", &[excluded], Substitution::new())?
            }
            Justification::Premise if *g == working => {
                b.apply("BK25", &[disj], subst(&[("p", delta), ("q", other)]))?
            }
            Justification::Premise => {
                let at = if g == original_disj { b.premise(original_disj) } else { b.premise(g) };
                b.apply("BK24", &[disj, at], subst(&[("p", delta), ("q", other), ("r", g)]))?
            }
            Justification::Rule { rule, .. } if rule == EXPLOSION => return Err(TransformError::UsesExplosion),
            Justification::Rule { rule, refs, subst: s } => {
                let refs: Vec<usize> = refs.iter().map(|&r| map[r]).collect();
                if sys.rule(&format!("{rule}.or")).is_some() {
                    let c = lifting_var(sys, &format!("{rule}.or")).unwrap();
                    let mut s = s.clone();
                    s.insert(c, neg.clone());
                    b.apply(&format!("{rule}.or"), &refs, s)?
                } else if rule.ends_with(".or") {
                    let (_, d) = lift_vars(sys, rule)?;
                    let mut s = s.clone();
                    s.insert(d, neg.clone());
                    b.apply(&format!("{rule}.or"), &refs, s)?
                } else {
                    return Err(TransformError::MissingRule(format!("{rule}.or")));
                }
            }
            Justification::Chain { .. } => unreachable!("expanded"),
        };
        map.push(idx);
    }
    Ok(*map.last().unwrap())
}

/// From a BK1*-free proof of `Γ, φ | ψ, δ ⊢ γ` builds a proof of
/// `Γ, φ | ψ ⊢ ~δ | γ`, where δ is the disjunct picked by `side`.
pub fn deduction_transform(
    sys: &HSystem,
    d: &LinearDerivation,
    ctx: &DisjContext,
    side: Side,
) -> Result<LinearDerivation, TransformError> {
    let delta = ctx.pick(side);
    let e = verified(sys, d, &Statement::new(ctx.antecedent(Some(delta)), [expanded_goal(sys, d)?]))?;
    let goal = conclusion_of(&e)?;
    let mut b = Builder::new(sys);
    let end = deduction_into(&mut b, &e, ctx, side)?;
    let out = b.finish(end);
    let claim = Statement::new(ctx.antecedent(None), [Formula::or(Formula::not(delta.clone()), goal)]);
    check_output(sys, out, &claim)
}

/// The conclusion of `d` after expansion, for derivations whose last step omits its formula.
fn expanded_goal(sys: &HSystem, d: &LinearDerivation) -> Result<Formula, TransformError> {
    if let Some(f) = d.conclusion() {
        return Ok(f.clone());
    }
    let e = crate::calculus::expand_derived(sys, d).map_err(TransformError::NotVerified)?;
    conclusion_of(&e)
}

fn deduction_into(b: &mut Builder, e: &LinearDerivation, ctx: &DisjContext, side: Side) -> Result<usize, TransformError> {
    if e.uses_rule(EXPLOSION) {
        return Err(TransformError::UsesExplosion);
    }
    let original = ctx.disjunction();
    let d0 = b.premise(&original);
    let (delta, other) = (ctx.pick(side), ctx.pick(side.other()));
    let disj = match side {
        Side::Phi => d0,
        Side::Psi => b.apply("BK23", &[d0], Substitution::new())?,
    };
    lift_all(b, e, delta, other, disj, &original)
}

/// From a proof of `Γ, φ | ψ, δ ⊢ ~δ` builds a proof of `Γ, φ | ψ ⊢ ~δ`.
pub fn neg_deduction_transform(
    sys: &HSystem,
    d: &LinearDerivation,
    ctx: &DisjContext,
    side: Side,
) -> Result<LinearDerivation, TransformError> {
    let delta = ctx.pick(side).clone();
    let neg = Formula::not(delta.clone());
    let e = verified(sys, d, &Statement::new(ctx.antecedent(Some(&delta)), [neg.clone()]))?;
    let mut b = Builder::new(sys);
    let end = neg_deduction_into(&mut b, &e, ctx, side)?;
    let claim = Statement::new(ctx.antecedent(None), [neg]);
    check_output(sys, b.finish(end), &claim)
}

fn neg_deduction_into(b: &mut Builder, e: &LinearDerivation, ctx: &DisjContext, side: Side) -> Result<usize, TransformError> {
    let delta = ctx.pick(side).clone();
    let neg = Formula::not(delta.clone());
    let Some(k) = e.first_use(EXPLOSION) else {
        let lifted = deduction_into(b, e, ctx, side)?;
        return b.apply("BK22", &[lifted], Substitution::new());
    };
    let Justification::Rule { refs, subst: s, .. } = &e.steps[k].justification else { unreachable!() };
    let c = s.get(&Var::new("p")).cloned().expect("BK1* binds p");
    let nc = Formula::not(c.clone());
    let pos = refs.iter().copied().find(|&r| e.formula(r) == Some(&c)).unwrap();
    let negpos = refs.iter().copied().find(|&r| e.formula(r) == Some(&nc)).unwrap();
    let with_c = deduction_into(b, &truncate_to(e, pos), ctx, side)?;
    let with_nc = deduction_into(b, &truncate_to(e, negpos), ctx, side)?;
    let c_var = lifting_var(b.sys, "BK4.or").ok_or_else(|| TransformError::MissingRule("BK4.or".into()))?;
    let mut s4 = subst(&[("p", &c), ("q", &nc)]);
    s4.insert(c_var, neg.clone());
    let conj = b.apply("BK4.or", &[with_c, with_nc], s4)?;
    let flipped = b.apply("BK23", &[conj], Substitution::new())?;
    let consistent = b.apply("BK30", &[with_c], subst(&[("p", &delta), ("q", &c)]))?;
    let cc = Formula::and(c.clone(), nc);
    b.apply("BK20", &[flipped, consistent], subst(&[("p", &cc), ("q", &neg)]))
}

/// From a proof of `Γ, φ | ψ, δ1 ⊢ γ` that applies BK1*, builds a proof of
/// `Γ, φ | ψ ⊢ δ2`, where δ1 is picked by `side` and δ2 is the other disjunct.
pub fn explosion_transform(
    sys: &HSystem,
    d: &LinearDerivation,
    ctx: &DisjContext,
    side: Side,
) -> Result<LinearDerivation, TransformError> {
    let delta1 = ctx.pick(side).clone();
    let e = verified(sys, d, &Statement::new(ctx.antecedent(Some(&delta1)), [expanded_goal(sys, d)?]))?;
    let mut b = Builder::new(sys);
    let end = explosion_into(&mut b, &e, ctx, side)?;
    let claim = Statement::new(ctx.antecedent(None), [ctx.pick(side.other()).clone()]);
    check_output(sys, b.finish(end), &claim)
}

fn explosion_into(b: &mut Builder, e: &LinearDerivation, ctx: &DisjContext, side: Side) -> Result<usize, TransformError> {
    let k = e.first_use(EXPLOSION).ok_or(TransformError::NoExplosion)?;
    let delta1 = ctx.pick(side).clone();
    let delta2 = ctx.pick(side.other()).clone();
    let neg = Formula::not(delta1.clone());
    let mut prefix = truncate_to(e, k);
    let last = prefix.steps.last_mut().unwrap();
    if let Justification::Rule { subst: s, .. } = &mut last.justification {
        s.insert(Var::new("q"), neg.clone());
    }
    last.formula = Some(neg.clone());
    let refuted = neg_deduction_into(b, &prefix, ctx, side)?;
    let d0 = b.premise(&ctx.disjunction());
    let disj = match side {
        Side::Phi => d0,
        Side::Psi => b.apply("BK23", &[d0], Substitution::new())?,
    };
    b.apply("BK20", &[disj, refuted], subst(&[("p", &delta1), ("q", &delta2)]))
}

/// Combines proofs of `Γ, φ | ψ, φ ⊢ γ` and `Γ, φ | ψ, ψ ⊢ γ` into a proof of
/// `Γ, φ | ψ ⊢ γ`.
pub fn disjunction_elim(
    sys: &HSystem,
    d1: &LinearDerivation,
    d2: &LinearDerivation,
    ctx: &DisjContext,
) -> Result<LinearDerivation, TransformError> {
    let goal = expanded_goal(sys, d1)?;
    let e1 = verified(sys, d1, &Statement::new(ctx.antecedent(Some(&ctx.phi)), [goal.clone()]))?;
    let e2 = verified(sys, d2, &Statement::new(ctx.antecedent(Some(&ctx.psi)), [goal.clone()]))?;
    let mut b = Builder::new(sys);
    let end = disjunction_into(&mut b, &e1, &e2, ctx)?;
    let claim = Statement::new(ctx.antecedent(None), [goal]);
    check_output(sys, b.finish(end), &claim)
}

fn uses_premise(e: &LinearDerivation, f: &Formula) -> bool {
    e.steps.iter().any(|s| s.justification == Justification::Premise && s.formula.as_ref() == Some(f))
}

fn disjunction_into(
    b: &mut Builder,
    e1: &LinearDerivation,
    e2: &LinearDerivation,
    ctx: &DisjContext,
) -> Result<usize, TransformError> {
    let available = |f: &Formula| ctx.gamma.contains(f) || *f == ctx.disjunction();
    if !uses_premise(e1, &ctx.phi) || available(&ctx.phi) {
        return Ok(b.splice(e1));
    }
    if !uses_premise(e2, &ctx.psi) || available(&ctx.psi) {
        return Ok(b.splice(e2));
    }
    if ctx.phi == ctx.psi {
        let d0 = b.premise(&ctx.disjunction());
        b.apply("BK22", &[d0], Substitution::new())?;
        return Ok(b.splice(e1));
    }
    let goal = conclusion_of(e1)?;
    if !e1.uses_rule(EXPLOSION) && !e2.uses_rule(EXPLOSION) {
        let left = deduction_into(b, e1, ctx, Side::Phi)?;
        let right = deduction_into(b, e2, ctx, Side::Psi)?;
        let joined = b.apply("BK28", &[left, right], subst(&[("p", &ctx.phi), ("q", &ctx.psi), ("r", &goal)]))?;
        let d0 = b.premise(&ctx.disjunction());
        let disj = ctx.disjunction();
        return b.apply("BK26", &[joined, d0], subst(&[("p", &disj), ("q", &goal)]));
    }
    if e1.uses_rule(EXPLOSION) {
        explosion_into(b, e1, ctx, Side::Phi)?;
        Ok(b.splice(e2))
    } else {
        explosion_into(b, e2, ctx, Side::Psi)?;
        Ok(b.splice(e1))
    }
}

/// Assembles the derivation of `~p | ~q |- ~(p & q)` from the auxiliary
/// derivations `lemma` (`~p, ~q | ~~q |- ~(p & q)`) and `mirror`
/// (`~q, ~p | ~~p |- ~(p & q)`): both are discharged with the deduction
/// transform and combined with BK28 and BK26.
pub fn bk29_derivation(
    sys: &HSystem,
    lemma: &LinearDerivation,
    mirror: &LinearDerivation,
) -> Result<LinearDerivation, TransformError> {
    let (p, q) = (Formula::var("p"), Formula::var("q"));
    let (np, nq) = (Formula::not(p.clone()), Formula::not(q.clone()));
    let (nnp, nnq) = (Formula::not(np.clone()), Formula::not(nq.clone()));
    let goal = Formula::not(Formula::and(p, q));
    let premise = Formula::or(np.clone(), nq.clone());
    let left_ctx = DisjContext::new([Formula::or(nq.clone(), nnq.clone())], np.clone(), nnp.clone());
    let left = deduction_transform(sys, lemma, &left_ctx, Side::Phi)?;
    let right_ctx = DisjContext::new([Formula::or(np.clone(), nnp)], nq.clone(), nnq);
    let right = deduction_transform(sys, mirror, &right_ctx, Side::Phi)?;

    let mut b = Builder::new(sys);
    let prem = b.premise(&premise);
    b.apply("BK15*", &[prem], subst(&[("p", &np), ("q", &nq)]))?;
    b.apply("BK16*", &[prem], subst(&[("p", &np), ("q", &nq)]))?;
    let l = b.splice(&left);
    let r = b.splice(&right);
    let joined = b.apply("BK28", &[l, r], subst(&[("p", &np), ("q", &nq), ("r", &goal)]))?;
    let end = b.apply("BK26", &[joined, prem], subst(&[("p", &premise), ("q", &goal)]))?;
    check_output(sys, b.finish(end), &Statement::set_fmla([premise], goal))
}

/// H_BK rule standing in for an `R_BK_star` rule with a single conclusion.
fn bk_name(rule: &str) -> Option<String> {
    let n = rule.strip_prefix('r')?;
    let (num, star) = match n.strip_suffix('*') {
        Some(num) => (num, "*"),
        None => (n, ""),
    };
    let i: usize = num.parse().ok()?;
    (2..=19).contains(&i).then(|| format!("BK{i}{star}"))
}

/// Translates an `R_BK_star` tree proof of `Γ ⊢ ψ` into an `H_BK` linear proof.
pub fn translate_bk(
    r_bk_star: &HSystem,
    h_bk: &HSystem,
    t: &TreeDerivation,
    claim: &Statement,
) -> Result<LinearDerivation, TransformError> {
    let psi = claim
        .conclusion()
        .cloned()
        .ok_or_else(|| TransformError::BadInput("the claim must have a single conclusion".into()))?;
    verify_tree(r_bk_star, t, claim).map_err(TransformError::NotVerified)?;
    let out = translate_node(h_bk, &t.node, &t.root, &psi)?;
    check_output(h_bk, out, claim)
}

fn translate_node(sys: &HSystem, node: &TreeNode, label: &[Formula], psi: &Formula) -> Result<LinearDerivation, TransformError> {
    let mut b = Builder::new(sys);
    match node {
        TreeNode::Leaf { .. } => {
            let end = b.premise(psi);
            Ok(b.finish(end))
        }
        TreeNode::Apply { rule, subst: s, children: Children::Star } => {
            if rule != "r1" {
                return Err(TransformError::BadInput(format!("unexpected discontinuation by {rule}")));
            }
            let c = s.get(&Var::new("p")).cloned().ok_or_else(|| TransformError::BadInput("r1 without p".into()))?;
            let nc = Formula::not(c.clone());
            let refs = [b.premise(&c), b.premise(&nc)];
            let end = b.apply(EXPLOSION, &refs, subst(&[("p", &c), ("q", psi)]))?;
            Ok(b.finish(end))
        }
        TreeNode::Apply { rule, subst: s, children: Children::Branches(bs) } if rule == "r20" => {
            let get = |v: &str| s.get(&Var::new(v)).cloned().ok_or_else(|| TransformError::BadInput("r20 needs p and q".into()));
            let (phi, chi) = (get("p")?, get("q")?);
            let child = |f: &Formula| -> Result<LinearDerivation, TransformError> {
                let (_, n) = bs.iter().find(|(g, _)| g == f).ok_or_else(|| TransformError::BadInput(format!("no branch for {f}")))?;
                let mut next = label.to_vec();
                next.push(f.clone());
                translate_node(sys, n, &canonical_set(next), psi)
            };
            let d1 = child(&phi)?;
            let d2 = if phi == chi { d1.clone() } else { child(&chi)? };
            let disj = Formula::or(phi.clone(), chi.clone());
            let ctx = DisjContext::new(label.iter().filter(|f| **f != disj).cloned(), phi, chi);
            let e1 = crate::calculus::expand_derived(sys, &d1).map_err(|r| TransformError::Internal(r.to_string()))?;
            let e2 = crate::calculus::expand_derived(sys, &d2).map_err(|r| TransformError::Internal(r.to_string()))?;
            let end = disjunction_into(&mut b, &e1, &e2, &ctx)?;
            Ok(b.finish(end))
        }
        TreeNode::Apply { rule, subst: s, children: Children::Branches(bs) } => {
            let name = bk_name(rule).ok_or_else(|| TransformError::BadInput(format!("no H_BK counterpart for {rule}")))?;
            let [(added, child)] = bs.as_slice() else {
                return Err(TransformError::BadInput(format!("{rule} should have one branch")));
            };
            let schema = sys.rule(&name).ok_or_else(|| TransformError::MissingRule(name.clone()))?;
            let ante: Vec<Formula> = canonical_set(s.apply_all(&schema.antecedent));
            let refs: Vec<usize> = ante.iter().map(|f| b.premise(f)).collect();
            b.apply(&name, &refs, s.clone())?;
            let mut next = label.to_vec();
            next.push(added.clone());
            let rest = translate_node(sys, child, &canonical_set(next), psi)?;
            let end = b.splice(&rest);
            Ok(b.finish(end))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::get_system;
    use crate::formula::{parse, Signature};

    fn p(s: &str) -> Formula {
        parse(s, &Signature::and_or_not()).unwrap()
    }

    #[test]
    fn deduction_base_cases() {
        let sys = get_system("H_BK").unwrap();
        let ctx = DisjContext::new([p("r")], p("p"), p("q"));
        let mut d = LinearDerivation::new();
        d.premise(p("r"));
        let out = deduction_transform(&sys, &d, &ctx, Side::Phi).unwrap();
        assert_eq!(out.conclusion().unwrap(), &p("~p | r"));

        let mut d = LinearDerivation::new();
        d.premise(p("p | q"));
        let out = deduction_transform(&sys, &d, &ctx, Side::Phi).unwrap();
        assert_eq!(out.conclusion().unwrap(), &p("~p | (p | q)"));

        let mut d = LinearDerivation::new();
        d.premise(p("p"));
        let out = deduction_transform(&sys, &d, &ctx, Side::Phi).unwrap();
        assert_eq!(out.conclusion().unwrap(), &p("~p | p"));
    }

    #[test]
    fn explosion_requires_bk1() {
        let sys = get_system("H_BK").unwrap();
        let ctx = DisjContext::new([], p("p"), p("q"));
        let mut d = LinearDerivation::new();
        d.premise(p("p"));
        assert_eq!(explosion_transform(&sys, &d, &ctx, Side::Phi).unwrap_err(), TransformError::NoExplosion);
    }

    #[test]
    fn explosion_example() {
        let sys = get_system("H_BK").unwrap();
        let ctx = DisjContext::new([p("~p")], p("p"), p("q"));
        let mut d = LinearDerivation::new();
        let a = d.premise(p("~p"));
        let b = d.premise(p("p"));
        d.rule("BK1*", &[b, a], Substitution::from_pairs([("p", p("p")), ("q", p("r"))]));
        let out = explosion_transform(&sys, &d, &ctx, Side::Phi).unwrap();
        assert_eq!(out.conclusion().unwrap(), &p("q"));
    }
}
