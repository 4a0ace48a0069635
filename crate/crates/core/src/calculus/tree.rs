//! Tree (Set-Set) derivations and their verification.

use std::collections::{BTreeSet, HashSet};

use crate::formula::{canonical_set, match_into, Formula, Substitution};

use super::{HSystem, Kind, Location, RejectReason, Rejection, RuleSchema, Statement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Children {
    /// Discontinuation: the rule has an empty succedent.
    Star,
    /// One child per succedent formula, labelled with the formula it adds.
    Branches(Vec<(Formula, TreeNode)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeNode {
    /// A leaf whose label meets the claimed succedent, optionally naming the formula.
    Leaf { close: Option<Formula> },
    Apply { rule: String, subst: Substitution, children: Children },
}

impl TreeNode {
    pub fn leaf(close: Formula) -> Self {
        TreeNode::Leaf { close: Some(close) }
    }

    pub fn star(rule: &str, subst: Substitution) -> Self {
        TreeNode::Apply { rule: rule.into(), subst, children: Children::Star }
    }

    pub fn apply(rule: &str, subst: Substitution, branches: Vec<(Formula, TreeNode)>) -> Self {
        TreeNode::Apply { rule: rule.into(), subst, children: Children::Branches(branches) }
    }

    /// Number of nodes, leaves and star markers included.
    pub fn size(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 1,
            TreeNode::Apply { children: Children::Star, .. } => 2,
            TreeNode::Apply { children: Children::Branches(bs), .. } => 1 + bs.iter().map(|(_, n)| n.size()).sum::<usize>(),
        }
    }

    fn collect(&self, out: &mut BTreeSet<Formula>, rules: &mut BTreeSet<String>) {
        if let TreeNode::Apply { rule, children, .. } = self {
            rules.insert(rule.clone());
            if let Children::Branches(bs) = children {
                for (f, n) in bs {
                    out.insert(f.clone());
                    n.collect(out, rules);
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDerivation {
    pub root: Vec<Formula>,
    pub node: TreeNode,
}

impl TreeDerivation {
    pub fn new(root: impl IntoIterator<Item = Formula>, node: TreeNode) -> Self {
        TreeDerivation { root: canonical_set(root), node }
    }

    /// Every formula occurring in some node label.
    pub fn label_formulas(&self) -> BTreeSet<Formula> {
        let mut out: BTreeSet<Formula> = self.root.iter().cloned().collect();
        self.node.collect(&mut out, &mut BTreeSet::new());
        out
    }

    pub fn rules_used(&self) -> BTreeSet<String> {
        let mut rules = BTreeSet::new();
        self.node.collect(&mut BTreeSet::new(), &mut rules);
        rules
    }
}

/// Extends `subst` so that every pattern lands inside `label`.
pub(crate) fn match_subset(patterns: &[Formula], label: &[Formula], subst: Substitution) -> Option<Substitution> {
    fn go(i: usize, patterns: &[Formula], label: &[Formula], s: Substitution) -> Option<Substitution> {
        let Some(pat) = patterns.get(i) else {
            return Some(s);
        };
        for f in label {
            let mut trial = s.clone();
            if match_into(pat, f, &mut trial) {
                if let Some(done) = go(i + 1, patterns, label, trial) {
                    return Some(done);
                }
            }
        }
        None
    }
    go(0, patterns, label, subst)
}

/// Instantiates `rule` at a node: the antecedent must land inside `label` and
/// every succedent variable must be bound.
pub(crate) fn instantiate_at(
    rule: &RuleSchema,
    given: &Substitution,
    label: &[Formula],
) -> Result<(Substitution, Vec<Formula>), (RejectReason, String)> {
    let vars = rule.vars();
    let s = match_subset(&rule.antecedent, label, given.restrict(&vars)).ok_or_else(|| {
        (RejectReason::AntecedentMismatch, format!("antecedent of {rule} is not contained in the node label"))
    })?;
    if let Some(v) = vars.iter().find(|v| !s.contains(v)) {
        return Err((RejectReason::UnboundVariable, format!("variable {v} of {} is not bound", rule.name)));
    }
    let succ = canonical_set(s.apply_all(&rule.succedent));
    Ok((s, succ))
}

fn check_node(
    sys: &HSystem,
    node: &TreeNode,
    label: &mut Vec<Formula>,
    goal: &HashSet<Formula>,
    path: &mut Vec<usize>,
) -> Result<(), Rejection> {
    let at = |path: &[usize], reason, detail: String| {
        let mut p = String::from("root");
        for i in path {
            p.push_str(&format!("/{i}"));
        }
        Rejection { location: Location::Node(p), reason, detail }
    };
    match node {
        TreeNode::Leaf { close } => match close {
            Some(f) if label.contains(f) && goal.contains(f) => Ok(()),
            Some(f) => Err(at(path, RejectReason::OpenLeaf, format!("{f} is not in both the label and the succedent"))),
            None if label.iter().any(|f| goal.contains(f)) => Ok(()),
            None => Err(at(path, RejectReason::OpenLeaf, "leaf label does not meet the succedent".into())),
        },
        TreeNode::Apply { rule, subst, children } => {
            let r = sys
                .rule(rule)
                .ok_or_else(|| at(path, RejectReason::UnknownRule, format!("no rule named {rule} in {}", sys.name)))?;
            let (_, succ) = instantiate_at(r, subst, label).map_err(|(reason, d)| at(path, reason, d))?;
            match children {
                Children::Star if succ.is_empty() => Ok(()),
                Children::Star => Err(at(path, RejectReason::StarMisuse, format!("{rule} has a nonempty succedent"))),
                Children::Branches(_) if succ.is_empty() => {
                    Err(at(path, RejectReason::StarMisuse, format!("{rule} has an empty succedent and needs a star")))
                }
                Children::Branches(bs) => {
                    let written = canonical_set(bs.iter().map(|(f, _)| f.clone()));
                    if written != succ || written.len() != bs.len() {
                        let shown: Vec<String> = succ.iter().map(|f| f.to_string()).collect();
                        return Err(at(
                            path,
                            RejectReason::BranchMismatch,
                            format!("branches must be exactly [{}]", shown.join("; ")),
                        ));
                    }
                    for (i, (f, child)) in bs.iter().enumerate() {
                        let added = !label.contains(f);
                        if added {
                            label.push(f.clone());
                        }
                        path.push(i + 1);
                        let res = check_node(sys, child, label, goal, path);
                        path.pop();
                        if added {
                            label.pop();
                        }
                        res?;
                    }
                    Ok(())
                }
            }
        }
    }
}

/// Checks `t` as a proof of `claim` in the Set-Set system `sys`.
pub fn verify_tree(sys: &HSystem, t: &TreeDerivation, claim: &Statement) -> Result<(), Rejection> {
    let whole = |reason, detail: String| Rejection { location: Location::Claim, reason, detail };
    if sys.kind != Kind::SetSet {
        return Err(whole(RejectReason::KindMismatch, format!("{} is not a Set-Set system", sys.name)));
    }
    if let Some(f) = t.root.iter().find(|f| !claim.antecedent.contains(f)) {
        return Err(Rejection {
            location: Location::Node("root".into()),
            reason: RejectReason::RootNotInClaim,
            detail: format!("root formula {f} is not in the claim's antecedent"),
        });
    }
    let goal: HashSet<Formula> = claim.succedent.iter().cloned().collect();
    let mut label = t.root.clone();
    check_node(sys, &t.node, &mut label, &goal, &mut Vec::new())
}

/// Drops expansions whose added formula is never needed below them.
/// Returns the pruned node with the set of label formulas it relies on.
pub(crate) fn prune(sys: &HSystem, node: TreeNode) -> (TreeNode, BTreeSet<Formula>) {
    match node {
        TreeNode::Leaf { close } => {
            let need = close.iter().cloned().collect();
            (TreeNode::Leaf { close }, need)
        }
        TreeNode::Apply { rule, subst, children } => {
            let ante: BTreeSet<Formula> =
                sys.rule(&rule).map(|r| subst.apply_all(&r.antecedent).into_iter().collect()).unwrap_or_default();
            match children {
                Children::Star => (TreeNode::Apply { rule, subst, children: Children::Star }, ante),
                Children::Branches(bs) => {
                    let mut kept = Vec::with_capacity(bs.len());
                    let mut need = ante;
                    for (f, child) in bs {
                        let (child, mut child_need) = prune(sys, child);
                        if !child_need.contains(&f) {
                            return (child, child_need);
                        }
                        child_need.remove(&f);
                        need.extend(child_need);
                        kept.push((f, child));
                    }
                    (TreeNode::Apply { rule, subst, children: Children::Branches(kept) }, need)
                }
            }
        }
    }
}
