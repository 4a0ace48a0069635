//! Linear (Set-Fmla) derivations: expansion of derived and chained steps and verification.

use crate::formula::{canonical_set, match_into, Formula, Substitution};

use super::{HSystem, Kind, Location, RejectReason, Rejection, RuleSchema, Statement};

/// Why a step is present. Step references are 0-based indices into the derivation.
/// `Rule` names either a primitive or a registered derived rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Premise,
    Rule { rule: String, refs: Vec<usize>, subst: Substitution },
    /// Applies `rules` in sequence: the first to `refs`, each later one to the
    /// previous result. Missing substitutions are inferred by matching.
    Chain { rules: Vec<String>, refs: Vec<usize>, substs: Vec<Substitution> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    /// The formula the step claims. `None` lets the checker compute it.
    pub formula: Option<Formula>,
    pub justification: Justification,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearDerivation {
    pub steps: Vec<Step>,
}

impl LinearDerivation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn premise(&mut self, f: Formula) -> usize {
        self.steps.push(Step { formula: Some(f), justification: Justification::Premise });
        self.steps.len() - 1
    }

    pub fn rule(&mut self, rule: &str, refs: &[usize], subst: Substitution) -> usize {
        self.steps.push(Step {
            formula: None,
            justification: Justification::Rule { rule: rule.into(), refs: refs.to_vec(), subst },
        });
        self.steps.len() - 1
    }

    pub fn chain(&mut self, rules: &[&str], refs: &[usize], substs: Vec<Substitution>) -> usize {
        self.steps.push(Step {
            formula: None,
            justification: Justification::Chain {
                rules: rules.iter().map(|r| r.to_string()).collect(),
                refs: refs.to_vec(),
                substs,
            },
        });
        self.steps.len() - 1
    }

    /// Formula of step `i`, if recorded.
    pub fn formula(&self, i: usize) -> Option<&Formula> {
        self.steps.get(i).and_then(|s| s.formula.as_ref())
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().and_then(|s| s.formula.as_ref())
    }

    /// Formulas introduced as premises, in canonical order.
    pub fn premises(&self) -> Vec<Formula> {
        canonical_set(
            self.steps
                .iter()
                .filter(|s| s.justification == Justification::Premise)
                .filter_map(|s| s.formula.clone()),
        )
    }

    /// Names of all rules cited, chains included.
    pub fn uses_rule(&self, name: &str) -> bool {
        self.steps.iter().any(|s| match &s.justification {
            Justification::Premise => false,
            Justification::Rule { rule, .. } => rule == name,
            Justification::Chain { rules, .. } => rules.iter().any(|r| r == name),
        })
    }

    /// Index of the first step citing `name`.
    pub fn first_use(&self, name: &str) -> Option<usize> {
        self.steps.iter().position(|s| match &s.justification {
            Justification::Rule { rule, .. } => rule == name,
            Justification::Chain { rules, .. } => rules.iter().any(|r| r == name),
            Justification::Premise => false,
        })
    }
}

type StepError = (RejectReason, String);

/// Matches the antecedent patterns onto `targets` so that the image set equals
/// the target set exactly.
pub(crate) fn match_set(patterns: &[Formula], targets: &[Formula], subst: Substitution) -> Option<Substitution> {
    fn go(i: usize, patterns: &[Formula], targets: &[Formula], s: Substitution, used: &mut [bool]) -> Option<Substitution> {
        if i == patterns.len() {
            return used.iter().all(|u| *u).then_some(s);
        }
        for j in 0..targets.len() {
            let mut trial = s.clone();
            if match_into(&patterns[i], &targets[j], &mut trial) {
                let before = used[j];
                used[j] = true;
                if let Some(done) = go(i + 1, patterns, targets, trial, used) {
                    return Some(done);
                }
                used[j] = before;
            }
        }
        None
    }
    let targets = canonical_set(targets.iter().cloned());
    let mut used = vec![false; targets.len()];
    go(0, patterns, &targets, subst, &mut used)
}

/// Applies a single-conclusion schema to `inputs`, returning the conclusion
/// and the full substitution used. When `expected` is given, bindings that
/// produce it are preferred over other matches of the inputs.
pub(crate) fn apply_schema(
    rule: &RuleSchema,
    inputs: &[Formula],
    given: &Substitution,
    expected: Option<&Formula>,
) -> Result<(Formula, Substitution), StepError> {
    let conclusion = match rule.succedent.as_slice() {
        [c] => c,
        _ => return Err((RejectReason::NotSingleConclusion, format!("rule {} is not single-conclusion", rule.name))),
    };
    let vars = rule.vars();
    let start = given.restrict(&vars);
    let hinted = expected.and_then(|e| {
        let mut h = start.clone();
        match_into(conclusion, e, &mut h).then(|| match_set(&rule.antecedent, inputs, h)).flatten()
    });
    let s = hinted.or_else(|| match_set(&rule.antecedent, inputs, start)).ok_or_else(|| {
        let shown: Vec<String> = inputs.iter().map(|f| f.to_string()).collect();
        (
            RejectReason::AntecedentMismatch,
            format!("{} does not match the cited formulas [{}]", rule, shown.join("; ")),
        )
    })?;
    if let Some(v) = vars.iter().find(|v| !s.contains(v)) {
        return Err((RejectReason::UnboundVariable, format!("variable {v} of {} is not bound", rule.name)));
    }
    Ok((s.apply(conclusion), s))
}

struct Expander<'a> {
    sys: &'a HSystem,
    out: Vec<Step>,
    origin: Vec<usize>,
}

impl Expander<'_> {
    fn formula(&self, i: usize) -> &Formula {
        self.out[i].formula.as_ref().expect("expanded steps carry formulas")
    }

    fn push(&mut self, formula: Formula, justification: Justification, origin: usize) -> usize {
        self.out.push(Step { formula: Some(formula), justification });
        self.origin.push(origin);
        self.out.len() - 1
    }

    fn emit(
        &mut self,
        name: &str,
        refs: Vec<usize>,
        given: &Substitution,
        expected: Option<&Formula>,
        origin: usize,
    ) -> Result<usize, StepError> {
        let inputs: Vec<Formula> = refs.iter().map(|&i| self.formula(i).clone()).collect();
        if let Some(rule) = self.sys.rule(name) {
            let (f, s) = apply_schema(rule, &inputs, given, expected)?;
            return Ok(self.push(f, Justification::Rule { rule: name.into(), refs, subst: s }, origin));
        }
        let sys = self.sys;
        let Some(derived) = sys.derived(name) else {
            return Err((RejectReason::UnknownRule, format!("no rule named {name} in {}", sys.name)));
        };
        let (conclusion, s) = apply_schema(&derived.schema, &inputs, given, expected)?;
        // The template was verified at registration; a substitution instance of
        // a derivation is a derivation, so its steps are spliced directly.
        let mut map = Vec::with_capacity(derived.expanded.len());
        for step in &derived.expanded.steps {
            let f = s.apply(step.formula.as_ref().expect("expanded template"));
            let idx = match &step.justification {
                Justification::Premise => refs.iter().copied().find(|&r| *self.formula(r) == f).ok_or_else(|| {
                    (RejectReason::TemplateMismatch, format!("template premise {f} of {name} not among cited formulas"))
                })?,
                Justification::Rule { rule, refs: trefs, subst } => {
                    let vars = sys.rule(rule).expect("primitive").vars();
                    let js = Justification::Rule {
                        rule: rule.clone(),
                        refs: trefs.iter().map(|&r| map[r]).collect(),
                        subst: s.compose(subst).restrict(&vars),
                    };
                    self.push(f, js, origin)
                }
                Justification::Chain { .. } => unreachable!("expanded templates are primitive"),
            };
            map.push(idx);
        }
        let last = *map.last().ok_or((RejectReason::TemplateMismatch, format!("empty template for {name}")))?;
        if *self.formula(last) != conclusion {
            return Err((RejectReason::TemplateMismatch, format!("template of {name} does not end in {conclusion}")));
        }
        Ok(last)
    }
}

/// Expands every derived and chained step into primitive rule applications,
/// computing and checking every formula along the way. Premise claims are
/// not checked here.
pub fn expand_derived(sys: &HSystem, d: &LinearDerivation) -> Result<LinearDerivation, Rejection> {
    expand_with_origin(sys, d).map(|(out, _)| out)
}

pub(crate) fn expand_with_origin(sys: &HSystem, d: &LinearDerivation) -> Result<(LinearDerivation, Vec<usize>), Rejection> {
    let mut ex = Expander { sys, out: Vec::with_capacity(d.len()), origin: Vec::with_capacity(d.len()) };
    let mut map: Vec<usize> = Vec::with_capacity(d.len());
    for (k, step) in d.steps.iter().enumerate() {
        let at = |(reason, detail): StepError| Rejection { location: Location::Step(k + 1), reason, detail };
        let check_refs = |refs: &[usize]| -> Result<Vec<usize>, Rejection> {
            refs.iter()
                .map(|&r| {
                    if r < k {
                        Ok(map[r])
                    } else {
                        Err(at((RejectReason::ForwardReference, format!("step {} cites step {}", k + 1, r + 1))))
                    }
                })
                .collect()
        };
        let idx = match &step.justification {
            Justification::Premise => {
                let f = step
                    .formula
                    .clone()
                    .ok_or_else(|| at((RejectReason::MissingFormula, "premise without formula".into())))?;
                ex.push(f, Justification::Premise, k)
            }
            Justification::Rule { rule, refs, subst } => {
                let refs = check_refs(refs)?;
                ex.emit(rule, refs, subst, step.formula.as_ref(), k).map_err(at)?
            }
            Justification::Chain { rules, refs, substs } => {
                if rules.is_empty() {
                    return Err(at((RejectReason::UnknownRule, "empty chain".into())));
                }
                let mut cur = check_refs(refs)?;
                let empty = Substitution::new();
                let mut last = 0;
                for (i, rule) in rules.iter().enumerate() {
                    let hint = if i + 1 == rules.len() { step.formula.as_ref() } else { None };
                    last = ex.emit(rule, cur, substs.get(i).unwrap_or(&empty), hint, k).map_err(at)?;
                    cur = vec![last];
                }
                last
            }
        };
        if let Some(claimed) = &step.formula {
            if claimed != ex.formula(idx) {
                return Err(at((
                    RejectReason::FormulaMismatch,
                    format!("step claims {claimed} but the rule yields {}", ex.formula(idx)),
                )));
            }
        }
        map.push(idx);
    }
    Ok((LinearDerivation { steps: ex.out }, ex.origin))
}

/// Expands a single derived or chained application to primitive steps,
/// starting from premise steps for `inputs`.
pub fn expand_step(
    sys: &HSystem,
    rules: &[&str],
    inputs: &[Formula],
    substs: Vec<Substitution>,
) -> Result<LinearDerivation, Rejection> {
    let mut d = LinearDerivation::new();
    let refs: Vec<usize> = inputs.iter().map(|f| d.premise(f.clone())).collect();
    d.chain(rules, &refs, substs);
    expand_derived(sys, &d)
}

/// Checks `d` as a proof of `claim` in `sys`. Returns the fully expanded
/// primitive derivation on success.
pub fn verify_linear(sys: &HSystem, d: &LinearDerivation, claim: &Statement) -> Result<LinearDerivation, Rejection> {
    let whole = |reason, detail: String| Rejection { location: Location::Claim, reason, detail };
    if sys.kind != Kind::SetFmla {
        return Err(whole(RejectReason::KindMismatch, format!("{} is not a Set-Fmla system", sys.name)));
    }
    let Some(goal) = claim.conclusion() else {
        return Err(whole(RejectReason::NotSingleConclusion, "claim must have exactly one conclusion".into()));
    };
    if d.is_empty() {
        return Err(whole(RejectReason::EmptyDerivation, "derivation has no steps".into()));
    }
    let (out, origin) = expand_with_origin(sys, d)?;
    for (i, step) in out.steps.iter().enumerate() {
        if step.justification == Justification::Premise {
            let f = step.formula.as_ref().unwrap();
            if !claim.antecedent.contains(f) {
                return Err(Rejection {
                    location: Location::Step(origin[i] + 1),
                    reason: RejectReason::PremiseNotInClaim,
                    detail: format!("premise {f} is not in the claim's antecedent"),
                });
            }
        }
    }
    let last = out.conclusion().unwrap();
    if last != goal {
        return Err(Rejection {
            location: Location::Step(d.len()),
            reason: RejectReason::ConclusionMismatch,
            detail: format!("derivation ends in {last}, claim is {goal}"),
        });
    }
    Ok(out)
}
