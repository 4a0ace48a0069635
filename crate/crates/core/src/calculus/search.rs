//! Analytic Set-Set proof search and bounded Set-Fmla forward search.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::formula::{canonical_set, match_into, theta_subformulas, Formula, Substitution, ThetaError};

use super::linear::{Justification, LinearDerivation, Step};
use super::tree::{prune, TreeDerivation, TreeNode};
use super::{HSystem, Kind, RuleSchema, Statement};

/// Where search draws its formulas from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Universe {
    /// Θ-subformulas of the claim (Set-Set), widened by one layer of `∨` for Set-Fmla.
    Derived,
    Explicit(Vec<Formula>),
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// One-variable formulas; the default is `{x, ~x}`.
    pub theta: Vec<Formula>,
    pub universe: Universe,
    /// Node budget for Set-Set search.
    pub max_nodes: usize,
    /// Derived-formula budget for Set-Fmla search.
    pub max_steps: usize,
    /// Cap on the default Set-Fmla universe.
    pub universe_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        let x = Formula::var("x");
        SearchConfig {
            theta: vec![x.clone(), Formula::not(x)],
            universe: Universe::Derived,
            max_nodes: 200_000,
            max_steps: 20_000,
            universe_cap: 500,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Proved(T),
    /// For analytic Set-Set search this is definitive; for Set-Fmla search it
    /// only means nothing was found inside the universe.
    NoProof,
    BudgetExhausted,
}

impl<T> SearchOutcome<T> {
    pub fn proof(self) -> Option<T> {
        match self {
            SearchOutcome::Proved(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_proved(&self) -> bool {
        matches!(self, SearchOutcome::Proved(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("system {0} has the wrong kind for this search")]
    KindMismatch(String),
    #[error("claim must have exactly one conclusion")]
    NotSingleConclusion,
    #[error("budgets must be positive")]
    ZeroBudget,
    #[error(transparent)]
    Theta(#[from] ThetaError),
}

/// A rule instance over universe indices.
struct Instance {
    rule: usize,
    subst: Substitution,
    ante: Vec<usize>,
    succ: Vec<usize>,
}

/// All substitutions (over the rule's variables) sending every antecedent and
/// succedent formula into the universe, in canonical substitution order.
fn instances_in(rule: &RuleSchema, universe: &[Formula], index: &HashMap<Formula, usize>) -> Vec<(Vec<usize>, Substitution)> {
    let patterns: Vec<&Formula> = rule.antecedent.iter().chain(&rule.succedent).collect();
    let vars: Vec<_> = rule.vars().into_iter().collect();
    let mut found = Vec::new();
    fn go(
        i: usize,
        patterns: &[&Formula],
        universe: &[Formula],
        index: &HashMap<Formula, usize>,
        s: Substitution,
        found: &mut Vec<Substitution>,
    ) {
        let Some(pat) = patterns.get(i) else {
            found.push(s);
            return;
        };
        if pat.vars().iter().all(|v| s.contains(v)) {
            if index.contains_key(&s.apply(pat)) {
                go(i + 1, patterns, universe, index, s, found);
            }
            return;
        }
        for f in universe {
            let mut trial = s.clone();
            if match_into(pat, f, &mut trial) {
                go(i + 1, patterns, universe, index, trial, found);
            }
        }
    }
    let mut substs = Vec::new();
    go(0, &patterns, universe, index, Substitution::new(), &mut substs);
    for s in substs {
        let key: Vec<usize> = vars.iter().map(|v| index.get(s.get(v).unwrap()).copied().unwrap_or(usize::MAX)).collect();
        found.push((key, s));
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    found.dedup_by(|a, b| a.0 == b.0);
    found
}

/// Bitset over universe indices.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Label(Vec<u64>);

impl Label {
    fn new(n: usize) -> Self {
        Label(vec![0; n.div_ceil(64)])
    }
    fn has(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn add(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn has_all(&self, xs: &[usize]) -> bool {
        xs.iter().all(|&i| self.has(i))
    }
    fn meets(&self, other: &Label) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }
}

struct Analytic<'a> {
    sys: &'a HSystem,
    universe: Vec<Formula>,
    closers: Vec<Instance>,
    singles: Vec<Instance>,
    branchers: Vec<Instance>,
    goal: Label,
    failed: HashSet<Label>,
    nodes: usize,
    max_nodes: usize,
}

struct Exhausted;

impl Analytic<'_> {
    fn node(&self, inst: &Instance, children: Option<Vec<(Formula, TreeNode)>>) -> TreeNode {
        let name = &self.sys.rules()[inst.rule].name;
        match children {
            None => TreeNode::star(name, inst.subst.clone()),
            Some(bs) => TreeNode::apply(name, inst.subst.clone(), bs),
        }
    }

    fn solve(&mut self, mut label: Label) -> Result<Option<TreeNode>, Exhausted> {
        let mut chain: Vec<usize> = Vec::new();
        let closing = loop {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(Exhausted);
            }
            if label.meets(&self.goal) {
                let hit = (0..self.universe.len()).find(|&i| label.has(i) && self.goal.has(i)).unwrap();
                break TreeNode::leaf(self.universe[hit].clone());
            }
            if let Some(c) = self.closers.iter().find(|c| label.has_all(&c.ante)) {
                break self.node(c, None);
            }
            if let Some(k) = self.singles.iter().position(|s| !label.has(s.succ[0]) && label.has_all(&s.ante)) {
                label.add(self.singles[k].succ[0]);
                chain.push(k);
                continue;
            }
            if self.failed.contains(&label) {
                return Ok(None);
            }
            let pick = self
                .branchers
                .iter()
                .position(|b| !b.succ.iter().any(|&s| label.has(s)) && label.has_all(&b.ante));
            let Some(k) = pick else {
                self.failed.insert(label);
                return Ok(None);
            };
            let mut kids = Vec::new();
            for j in 0..self.branchers[k].succ.len() {
                let s = self.branchers[k].succ[j];
                let mut next = label.clone();
                next.add(s);
                match self.solve(next)? {
                    Some(t) => kids.push((self.universe[s].clone(), t)),
                    None => {
                        self.failed.insert(label);
                        return Ok(None);
                    }
                }
            }
            break self.node(&self.branchers[k], Some(kids));
        };
        let mut tree = closing;
        for &k in chain.iter().rev() {
            let inst = &self.singles[k];
            tree = self.node(inst, Some(vec![(self.universe[inst.succ[0]].clone(), tree)]));
        }
        Ok(Some(tree))
    }
}

/// The analytic universe for `claim`: its Θ-subformulas.
pub fn analytic_universe(claim: &Statement, cfg: &SearchConfig) -> Result<Vec<Formula>, SearchError> {
    Ok(match &cfg.universe {
        Universe::Derived => theta_subformulas(&claim.antecedent, &claim.succedent, &cfg.theta)?,
        Universe::Explicit(u) => canonical_set(u.iter().cloned()),
    })
}

/// The universe used for `R_BK_star`: analytic formulas plus `a | ~a` and `~a | a`
/// for each of them, since the starred rules conclude such disjunctions.
pub fn star_universe(claim: &Statement, cfg: &SearchConfig) -> Result<Vec<Formula>, SearchError> {
    let base = analytic_universe(claim, cfg)?;
    let mut out = base.clone();
    for a in &base {
        out.push(Formula::or(a.clone(), Formula::not(a.clone())));
        out.push(Formula::or(Formula::not(a.clone()), a.clone()));
    }
    Ok(canonical_set(out))
}

/// Decides `claim` in a Set-Set system by saturate-then-branch search over the
/// analytic universe. Closing and single-conclusion instances are applied
/// eagerly; a branching instance is used only when none of its conclusions is
/// already present. Failed labels are memoized.
pub fn prove_setset_analytic(
    sys: &HSystem,
    claim: &Statement,
    cfg: &SearchConfig,
) -> Result<SearchOutcome<TreeDerivation>, SearchError> {
    if sys.kind != Kind::SetSet {
        return Err(SearchError::KindMismatch(sys.name.clone()));
    }
    if cfg.max_nodes == 0 {
        return Err(SearchError::ZeroBudget);
    }
    let mut universe = analytic_universe(claim, cfg)?;
    // The claim itself must be representable in the label space.
    universe.extend(claim.antecedent.iter().chain(&claim.succedent).cloned());
    let universe = canonical_set(universe);
    let index: HashMap<Formula, usize> = universe.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();

    let mut closers = Vec::new();
    let mut singles = Vec::new();
    let mut branchers = Vec::new();
    for (ri, rule) in sys.rules().iter().enumerate() {
        for (_, subst) in instances_in(rule, &universe, &index) {
            let ante = canonical_set(subst.apply_all(&rule.antecedent)).iter().map(|f| index[f]).collect();
            let succ: Vec<usize> = canonical_set(subst.apply_all(&rule.succedent)).iter().map(|f| index[f]).collect();
            let inst = Instance { rule: ri, subst, ante, succ };
            match inst.succ.len() {
                0 => closers.push(inst),
                1 => singles.push(inst),
                _ => branchers.push(inst),
            }
        }
    }
    let mut goal = Label::new(universe.len());
    claim.succedent.iter().for_each(|f| goal.add(index[f]));
    let mut root = Label::new(universe.len());
    claim.antecedent.iter().for_each(|f| root.add(index[f]));

    let mut search = Analytic {
        sys,
        universe,
        closers,
        singles,
        branchers,
        goal,
        failed: HashSet::new(),
        nodes: 0,
        max_nodes: cfg.max_nodes,
    };
    match search.solve(root) {
        Err(Exhausted) => Ok(SearchOutcome::BudgetExhausted),
        Ok(None) => Ok(SearchOutcome::NoProof),
        Ok(Some(node)) => {
            let (node, need) = prune(sys, node);
            let root = claim.antecedent.iter().filter(|f| need.contains(*f)).cloned();
            Ok(SearchOutcome::Proved(TreeDerivation::new(root, node)))
        }
    }
}

/// Default Set-Fmla universe: Θ-subformulas of the claim plus disjunctions
/// `a | b` of those, capped at `cfg.universe_cap` in canonical order.
pub fn setfmla_default_universe(premises: &[Formula], goal: &Formula, cfg: &SearchConfig) -> Result<Vec<Formula>, SearchError> {
    let base = theta_subformulas(premises, std::slice::from_ref(goal), &cfg.theta)?;
    let mut ors = Vec::with_capacity(base.len() * base.len());
    for a in &base {
        for b in &base {
            ors.push(Formula::or(a.clone(), b.clone()));
        }
    }
    let base_set: HashSet<Formula> = base.iter().cloned().collect();
    let mut out = base;
    let room = cfg.universe_cap.saturating_sub(out.len());
    out.extend(canonical_set(ors).into_iter().filter(|f| !base_set.contains(f)).take(room));
    Ok(canonical_set(out))
}

/// Forward saturation in a Set-Fmla system: rounds of applying every rule
/// instance whose premises are already derived and whose conclusion lies in
/// the universe. Stops when `goal` appears.
pub fn prove_setfmla_bounded(
    sys: &HSystem,
    premises: &[Formula],
    goal: &Formula,
    cfg: &SearchConfig,
) -> Result<SearchOutcome<LinearDerivation>, SearchError> {
    if sys.kind != Kind::SetFmla {
        return Err(SearchError::KindMismatch(sys.name.clone()));
    }
    if cfg.max_steps == 0 {
        return Err(SearchError::ZeroBudget);
    }
    let universe = match &cfg.universe {
        Universe::Derived => setfmla_default_universe(premises, goal, cfg)?,
        Universe::Explicit(u) => canonical_set(u.iter().cloned().chain([goal.clone()])),
    };
    let in_universe: HashSet<Formula> = universe.iter().cloned().collect();

    let mut derived: Vec<(Formula, Justification)> = Vec::new();
    let mut known: HashMap<Formula, usize> = HashMap::new();
    for p in canonical_set(premises.iter().cloned()) {
        known.insert(p.clone(), derived.len());
        derived.push((p, Justification::Premise));
    }
    let extract = |derived: &[(Formula, Justification)], target: usize| {
        let mut needed = vec![false; derived.len()];
        needed[target] = true;
        for i in (0..=target).rev() {
            if needed[i] {
                if let Justification::Rule { refs, .. } = &derived[i].1 {
                    refs.iter().for_each(|&r| needed[r] = true);
                }
            }
        }
        let mut renumber = vec![usize::MAX; derived.len()];
        let mut d = LinearDerivation::new();
        for i in (0..=target).filter(|&i| needed[i]) {
            renumber[i] = d.len();
            let justification = match &derived[i].1 {
                Justification::Rule { rule, refs, subst } => Justification::Rule {
                    rule: rule.clone(),
                    refs: refs.iter().map(|&r| renumber[r]).collect(),
                    subst: subst.clone(),
                },
                other => other.clone(),
            };
            d.steps.push(Step { formula: Some(derived[i].0.clone()), justification });
        }
        d
    };
    if let Some(&i) = known.get(goal) {
        return Ok(SearchOutcome::Proved(extract(&derived, i)));
    }
    loop {
        let snapshot: Vec<Formula> = derived.iter().map(|(f, _)| f.clone()).collect();
        let mut grew = false;
        for rule in sys.rules() {
            let conclusion = &rule.succedent[0];
            let mut fits: Vec<(Substitution, Vec<usize>)> = Vec::new();
            antecedent_matches(&rule.antecedent, &snapshot, 0, Substitution::new(), &mut Vec::new(), &mut fits);
            for (s, refs) in fits {
                let closed = conclusion.vars().iter().all(|v| s.contains(v));
                let mut images = Vec::new();
                if closed {
                    let c = s.apply(conclusion);
                    if in_universe.contains(&c) {
                        images.push((c, s));
                    }
                } else {
                    for u in &universe {
                        let mut trial = s.clone();
                        if match_into(conclusion, u, &mut trial) {
                            images.push((u.clone(), trial));
                        }
                    }
                }
                for (c, s) in images {
                    if known.contains_key(&c) {
                        continue;
                    }
                    known.insert(c.clone(), derived.len());
                    let subst = s.restrict(&rule.vars());
                    derived.push((c.clone(), Justification::Rule { rule: rule.name.clone(), refs: refs.clone(), subst }));
                    grew = true;
                    if &c == goal {
                        return Ok(SearchOutcome::Proved(extract(&derived, derived.len() - 1)));
                    }
                    if derived.len() > cfg.max_steps {
                        return Ok(SearchOutcome::BudgetExhausted);
                    }
                }
            }
        }
        if !grew {
            return Ok(SearchOutcome::NoProof);
        }
    }
}

fn antecedent_matches(
    patterns: &[Formula],
    derived: &[Formula],
    i: usize,
    s: Substitution,
    refs: &mut Vec<usize>,
    out: &mut Vec<(Substitution, Vec<usize>)>,
) {
    let Some(pat) = patterns.get(i) else {
        out.push((s, refs.clone()));
        return;
    };
    for (j, f) in derived.iter().enumerate() {
        let mut trial = s.clone();
        if match_into(pat, f, &mut trial) {
            refs.push(j);
            antecedent_matches(patterns, derived, i + 1, trial, refs, out);
            refs.pop();
        }
    }
}
