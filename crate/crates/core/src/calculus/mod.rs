//! Rule schemas, Hilbert-style systems, derivations, verification and proof search.

mod linear;
mod search;
mod text;
mod tree;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::formula::{canonical_set, parse_list, render_list, Formula, ParseError, Signature, Substitution, Var};
use crate::semantics::{consequence_holds, EntailmentVerdict, Matrix};

pub(crate) use linear::apply_schema;
pub use linear::{expand_derived, expand_step, verify_linear, Justification, LinearDerivation, Step};
pub use search::{
    analytic_universe, prove_setfmla_bounded, prove_setset_analytic, setfmla_default_universe, star_universe,
    SearchConfig, SearchError, SearchOutcome, Universe,
};
pub use text::{
    derivation_json, parse_derivation_file, tree_to_dot, write_linear, write_tree, Derivation, DerivationFile,
    FileError,
};
pub use tree::{verify_tree, Children, TreeDerivation, TreeNode};

/// Whether rules (and hence derivations) have sets or single formulas as conclusions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    SetSet,
    SetFmla,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::SetSet => "setset",
            Kind::SetFmla => "setfmla",
        }
    }

    pub fn from_name(s: &str) -> Option<Kind> {
        match s {
            "setset" => Some(Kind::SetSet),
            "setfmla" => Some(Kind::SetFmla),
            _ => None,
        }
    }
}

/// A pair of formula sets. Single-conclusion statements have a one-element succedent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Statement {
    pub antecedent: Vec<Formula>,
    pub succedent: Vec<Formula>,
}

impl Statement {
    /// Builds a statement, putting both sides in canonical order.
    pub fn new(antecedent: impl IntoIterator<Item = Formula>, succedent: impl IntoIterator<Item = Formula>) -> Self {
        Statement { antecedent: canonical_set(antecedent), succedent: canonical_set(succedent) }
    }

    pub fn set_fmla(antecedent: impl IntoIterator<Item = Formula>, conclusion: Formula) -> Self {
        Statement::new(antecedent, [conclusion])
    }

    pub fn parse(text: &str, sig: &Signature) -> Result<Statement, ParseError> {
        let (lhs, rhs) = text
            .split_once("|-")
            .ok_or_else(|| ParseError::Syntax { pos: 0, msg: "statement needs `|-`".into() })?;
        Ok(Statement::new(parse_list(lhs, sig)?, parse_list(rhs, sig)?))
    }

    /// The conclusion of a single-conclusion statement.
    pub fn conclusion(&self) -> Option<&Formula> {
        match self.succedent.as_slice() {
            [f] => Some(f),
            _ => None,
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.antecedent.iter().chain(&self.succedent).for_each(|f| f.collect_vars(&mut out));
        out
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |- {}", side(&self.antecedent), side(&self.succedent))
    }
}

fn side(items: &[Formula]) -> String {
    if items.is_empty() {
        "-".into()
    } else {
        render_list(items)
    }
}

/// A named rule schema. Both sides keep the order in which they were written;
/// duplicates are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleSchema {
    pub name: String,
    pub antecedent: Vec<Formula>,
    pub succedent: Vec<Formula>,
}

impl RuleSchema {
    pub fn new(name: &str, antecedent: Vec<Formula>, succedent: Vec<Formula>) -> Self {
        RuleSchema { name: name.into(), antecedent: dedup(antecedent), succedent: dedup(succedent) }
    }

    /// Parses `NAME : f1, f2 |- g1, g2` (an empty side is written `-`).
    pub fn parse(line: &str, sig: &Signature) -> Result<RuleSchema, ParseError> {
        let (name, body) = line
            .split_once(':')
            .ok_or_else(|| ParseError::Syntax { pos: 0, msg: "rule needs `NAME :`".into() })?;
        let (lhs, rhs) = body
            .split_once("|-")
            .ok_or_else(|| ParseError::Syntax { pos: 0, msg: "rule needs `|-`".into() })?;
        Ok(RuleSchema::new(name.trim(), parse_list(lhs, sig)?, parse_list(rhs, sig)?))
    }

    pub fn kind(&self) -> Kind {
        if self.succedent.len() == 1 {
            Kind::SetFmla
        } else {
            Kind::SetSet
        }
    }

    pub fn statement(&self) -> Statement {
        Statement::new(self.antecedent.clone(), self.succedent.clone())
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.antecedent.iter().chain(&self.succedent).for_each(|f| f.collect_vars(&mut out));
        out
    }

    pub fn antecedent_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.antecedent.iter().for_each(|f| f.collect_vars(&mut out));
        out
    }

    pub fn instantiate(&self, s: &Substitution) -> (Vec<Formula>, Vec<Formula>) {
        (s.apply_all(&self.antecedent), s.apply_all(&self.succedent))
    }

    pub fn renamed(&self, name: &str) -> RuleSchema {
        RuleSchema { name: name.into(), ..self.clone() }
    }

    /// Equality up to a bijective renaming of variables, with both sides
    /// compared as sets.
    pub fn equivalent_to(&self, other: &RuleSchema) -> bool {
        if self.antecedent.len() != other.antecedent.len() || self.succedent.len() != other.succedent.len() {
            return false;
        }
        let mine: Vec<(&Formula, bool)> =
            self.antecedent.iter().map(|f| (f, true)).chain(self.succedent.iter().map(|f| (f, false))).collect();
        let theirs: Vec<(&Formula, bool)> =
            other.antecedent.iter().map(|f| (f, true)).chain(other.succedent.iter().map(|f| (f, false))).collect();
        let mut used = vec![false; theirs.len()];
        renaming_search(&mine, &theirs, 0, &mut BTreeMap::new(), &mut used)
    }
}

fn renaming_search(
    mine: &[(&Formula, bool)],
    theirs: &[(&Formula, bool)],
    i: usize,
    map: &mut BTreeMap<Var, Var>,
    used: &mut [bool],
) -> bool {
    if i == mine.len() {
        return true;
    }
    let (f, side) = mine[i];
    for j in 0..theirs.len() {
        if used[j] || theirs[j].1 != side {
            continue;
        }
        let mut trial = map.clone();
        if rename_match(f, theirs[j].0, &mut trial) {
            used[j] = true;
            if renaming_search(mine, theirs, i + 1, &mut trial, used) {
                *map = trial;
                return true;
            }
            used[j] = false;
        }
    }
    false
}

fn rename_match(a: &Formula, b: &Formula, map: &mut BTreeMap<Var, Var>) -> bool {
    use crate::formula::View;
    match (a.view(), b.view()) {
        (View::Var(x), View::Var(y)) => match map.get(x) {
            Some(z) => z == y,
            None => {
                if map.values().any(|z| z == y) {
                    return false;
                }
                map.insert(x.clone(), y.clone());
                true
            }
        },
        (View::App(c, xs), View::App(d, ys)) => c == d && xs.iter().zip(ys).all(|(x, y)| rename_match(x, y, map)),
        _ => false,
    }
}

impl fmt::Display for RuleSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} |- {}", self.name, side(&self.antecedent), side(&self.succedent))
    }
}

fn dedup(items: Vec<Formula>) -> Vec<Formula> {
    let mut seen = BTreeSet::new();
    items.into_iter().filter(|f| seen.insert(f.clone())).collect()
}

/// Where a derivation failed to check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    /// 1-based step number of a linear derivation, as written in files.
    Step(usize),
    /// Path of a tree node: `root`, then 1-based branch indices, e.g. `root/2/1`.
    Node(String),
    /// The claim or the derivation as a whole.
    Claim,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Step(n) => write!(f, "step {n}"),
            Location::Node(p) => write!(f, "node {p}"),
            Location::Claim => f.write_str("claim"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RejectReason {
    UnknownRule,
    ForwardReference,
    AntecedentMismatch,
    UnboundVariable,
    FormulaMismatch,
    MissingFormula,
    PremiseNotInClaim,
    ConclusionMismatch,
    EmptyDerivation,
    KindMismatch,
    NotSingleConclusion,
    TemplateMismatch,
    StarMisuse,
    BranchMismatch,
    OpenLeaf,
    RootNotInClaim,
}

impl RejectReason {
    /// Stable machine-readable code.
    pub fn code(self) -> &'static str {
        match self {
            RejectReason::UnknownRule => "unknown-rule",
            RejectReason::ForwardReference => "forward-reference",
            RejectReason::AntecedentMismatch => "antecedent-mismatch",
            RejectReason::UnboundVariable => "unbound-variable",
            RejectReason::FormulaMismatch => "formula-mismatch",
            RejectReason::MissingFormula => "missing-formula",
            RejectReason::PremiseNotInClaim => "premise-not-in-claim",
            RejectReason::ConclusionMismatch => "conclusion-mismatch",
            RejectReason::EmptyDerivation => "empty-derivation",
            RejectReason::KindMismatch => "kind-mismatch",
            RejectReason::NotSingleConclusion => "not-single-conclusion",
            RejectReason::TemplateMismatch => "template-mismatch",
            RejectReason::StarMisuse => "star-misuse",
            RejectReason::BranchMismatch => "branch-mismatch",
            RejectReason::OpenLeaf => "open-leaf",
            RejectReason::RootNotInClaim => "root-not-in-claim",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{location}: {}: {detail}", reason.code())]
pub struct Rejection {
    pub location: Location,
    pub reason: RejectReason,
    pub detail: String,
}

/// Checks a rule against a matrix: the rule's statement must be a consequence.
pub fn rule_sound(m: &Matrix, r: &RuleSchema) -> EntailmentVerdict {
    consequence_holds(m, &r.antecedent, &r.succedent)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("duplicate rule name {0}")]
    DuplicateRule(String),
    #[error("rule {0} does not have a single conclusion")]
    NotSingleConclusion(String),
    #[error("rule {rule} uses a connective outside the signature")]
    OutsideSignature { rule: String },
    #[error("derived rule {name}: template does not derive the schema: {reason}")]
    BadTemplate { name: String, reason: String },
    #[error("system file line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A rule derivable in a Set-Fmla system, with the derivation that justifies it.
#[derive(Clone, Debug)]
pub struct DerivedRule {
    pub schema: RuleSchema,
    /// The derivation as registered, possibly citing other derived rules.
    pub template: LinearDerivation,
    /// The same derivation using only primitive rules, with every formula filled in.
    pub expanded: LinearDerivation,
}

/// A finite H-system: named rule schemas of one kind plus derived rules.
#[derive(Clone, Debug)]
pub struct HSystem {
    pub name: String,
    pub kind: Kind,
    pub signature: Signature,
    rules: Vec<RuleSchema>,
    index: BTreeMap<String, usize>,
    derived: BTreeMap<String, DerivedRule>,
}

impl HSystem {
    pub fn new(name: &str, kind: Kind, signature: Signature, rules: Vec<RuleSchema>) -> Result<Self, SystemError> {
        let mut index = BTreeMap::new();
        for (i, r) in rules.iter().enumerate() {
            if index.insert(r.name.clone(), i).is_some() {
                return Err(SystemError::DuplicateRule(r.name.clone()));
            }
            if kind == Kind::SetFmla && r.succedent.len() != 1 {
                return Err(SystemError::NotSingleConclusion(r.name.clone()));
            }
            if !r.antecedent.iter().chain(&r.succedent).all(|f| signature.admits(f)) {
                return Err(SystemError::OutsideSignature { rule: r.name.clone() });
            }
        }
        Ok(HSystem { name: name.into(), kind, signature, rules, index, derived: BTreeMap::new() })
    }

    pub fn rules(&self) -> &[RuleSchema] {
        &self.rules
    }

    pub fn rule(&self, name: &str) -> Option<&RuleSchema> {
        self.index.get(name).map(|i| &self.rules[*i])
    }

    pub fn rule_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn derived(&self, name: &str) -> Option<&DerivedRule> {
        self.derived.get(name)
    }

    pub fn derived_rules(&self) -> impl Iterator<Item = &DerivedRule> {
        self.derived.values()
    }

    /// Looks a name up among primitive and then derived rules.
    pub fn any_rule(&self, name: &str) -> Option<&RuleSchema> {
        self.rule(name).or_else(|| self.derived.get(name).map(|d| &d.schema))
    }

    /// Registers a derived rule after checking that `template` derives it.
    pub fn register_derived(&mut self, schema: RuleSchema, template: LinearDerivation) -> Result<(), SystemError> {
        let bad = |reason: String| SystemError::BadTemplate { name: schema.name.clone(), reason };
        if self.kind != Kind::SetFmla {
            return Err(bad("derived rules are only supported in Set-Fmla systems".into()));
        }
        if schema.succedent.len() != 1 {
            return Err(bad("derived rules must have a single conclusion".into()));
        }
        if self.index.contains_key(&schema.name) || self.derived.contains_key(&schema.name) {
            return Err(SystemError::DuplicateRule(schema.name.clone()));
        }
        let claim = schema.statement();
        let expanded = verify_linear(self, &template, &claim).map_err(|r| bad(r.to_string()))?;
        self.derived.insert(schema.name.clone(), DerivedRule { schema, template, expanded });
        Ok(())
    }

    /// Renders the system file: a `system NAME KIND SIGNATURE` header and one rule per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("system {} {} {}\n", self.name, self.kind.name(), self.signature.name());
        for r in &self.rules {
            out.push_str(&format!("rule {r}\n"));
        }
        out
    }

    /// Parses the system file format. The signature token in the header is
    /// optional and defaults to `and-or-not`.
    pub fn from_text(text: &str) -> Result<HSystem, SystemError> {
        let mut header = None;
        let mut rules = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let fail = |msg: &str| SystemError::Format { line: line_no, msg: msg.into() };
            if let Some(rest) = line.strip_prefix("system ") {
                let words: Vec<&str> = rest.split_whitespace().collect();
                let (name, kind) = match words.as_slice() {
                    [name, kind] | [name, kind, _] => (*name, *kind),
                    _ => return Err(fail("expected `system NAME setset|setfmla [SIGNATURE]`")),
                };
                let kind = Kind::from_name(kind).ok_or_else(|| fail("kind must be setset or setfmla"))?;
                let sig = match words.get(2) {
                    Some(s) => Signature::from_name(s).ok_or_else(|| fail("unknown signature"))?,
                    None => Signature::and_or_not(),
                };
                header = Some((name.to_string(), kind, sig));
            } else if let Some(rest) = line.strip_prefix("rule ") {
                let (_, _, sig) = header.as_ref().ok_or_else(|| fail("rule before `system` header"))?;
                rules.push(RuleSchema::parse(rest, sig).map_err(|e| fail(&e.to_string()))?);
            } else {
                return Err(fail("expected `system` or `rule`"));
            }
        }
        let (name, kind, sig) = header.ok_or(SystemError::Format { line: 1, msg: "missing `system` header".into() })?;
        HSystem::new(&name, kind, sig, rules)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{get_matrix, get_system};
    use crate::formula::parse;

    fn rule(s: &str) -> RuleSchema {
        RuleSchema::parse(s, &Signature::and_or_not()).unwrap()
    }

    #[test]
    fn rule_soundness_examples() {
        let cl = get_matrix("CL2").unwrap();
        let bk = get_matrix("BK").unwrap();
        let pwk = get_matrix("PWK").unwrap();
        let cl1 = rule("CL1 : - |- p, ~p");
        assert!(rule_sound(&cl, &cl1).holds);
        let v = rule_sound(&bk, &cl1);
        assert!(!v.holds);
        assert_eq!(v.countermodel.unwrap().display(&bk.algebra).to_string(), "p=u");
        assert!(rule_sound(&pwk, &rule("r9 : p, ~p |- p & q")).holds);
    }

    #[test]
    fn inference_prefers_the_stated_conclusion() {
        let h = get_system("H_BK").unwrap();
        let sig = Signature::and_or_not();
        let mut d = LinearDerivation::new();
        let p = d.premise(parse("p", &sig).unwrap());
        let q = d.premise(parse("q", &sig).unwrap());
        d.rule("BK4", &[p, q], Substitution::new());
        d.steps[2].formula = Some(parse("q & p", &sig).unwrap());
        let claim = Statement::parse("p, q |- q & p", &sig).unwrap();
        assert!(verify_linear(&h, &d, &claim).is_ok());
        d.steps[2].formula = Some(parse("p & p", &sig).unwrap());
        let err = verify_linear(&h, &d, &Statement::parse("p, q |- p & p", &sig).unwrap()).unwrap_err();
        assert_eq!(err.reason, RejectReason::FormulaMismatch);
    }

    #[test]
    fn renaming_equivalence() {
        assert!(rule("a : p | r |- ~~p | r").equivalent_to(&rule("b : p | v0 |- ~~p | v0")));
        assert!(rule("a : p, q |- p & q").equivalent_to(&rule("b : q, p |- p & q")));
        assert!(!rule("a : p |- p & q").equivalent_to(&rule("b : p |- q & p")));
        assert!(!rule("a : p |- p | q").equivalent_to(&rule("b : p |- p | p")));
        assert!(rule("a : p |- ~p, p").equivalent_to(&rule("b : q |- q, ~q")));
    }

    #[test]
    fn system_file_round_trip() {
        for id in ["SF-CL", "SS-CL", "R_PWK", "H_PWK", "R_BK", "R_BK_star", "H_BK"] {
            let sys = get_system(id).unwrap();
            let again = HSystem::from_text(&sys.to_text()).unwrap();
            assert_eq!(again.rules(), sys.rules(), "{id}");
            assert_eq!(again.kind, sys.kind);
            assert_eq!(again.signature, sys.signature);
        }
    }

    #[test]
    fn system_construction_errors() {
        let sig = Signature::and_or_not();
        let r = rule("x : p |- p, q");
        assert!(matches!(
            HSystem::new("s", Kind::SetFmla, sig.clone(), vec![r.clone()]),
            Err(SystemError::NotSingleConclusion(_))
        ));
        assert!(matches!(
            HSystem::new("s", Kind::SetSet, sig.clone(), vec![r.clone(), r]),
            Err(SystemError::DuplicateRule(_))
        ));
        let imp = RuleSchema::new("i", vec![], vec![parse("p -> p", &Signature::imp_not()).unwrap()]);
        assert!(matches!(
            HSystem::new("s", Kind::SetFmla, sig, vec![imp]),
            Err(SystemError::OutsideSignature { .. })
        ));
        assert!(HSystem::from_text("rule a : p |- p\n").is_err());
        assert!(HSystem::from_text("system s weird\n").is_err());
    }

    #[test]
    fn statement_parsing() {
        let sig = Signature::and_or_not();
        let s = Statement::parse("p, ~p |- -", &sig).unwrap();
        assert_eq!(s.antecedent.len(), 2);
        assert!(s.succedent.is_empty());
        assert_eq!(s.to_string(), "p, ~p |- -");
        let s = Statement::parse(" |- p | ~p", &sig).unwrap();
        assert_eq!(s.to_string(), "- |- p | ~p");
    }
}
