//! Finite algebras, logical matrices and semantic consequence by enumeration.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::formula::{Connective, Formula, Var, View};

/// Index of a truth value in an algebra's carrier.
pub type Value = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("no value assigned to variable {0}")]
    MissingVariable(Var),
    #[error("algebra {algebra} has no table for {conn}")]
    MissingTable { algebra: String, conn: Connective },
    #[error("matrix file line {line}: {msg}")]
    Format { line: usize, msg: String },
}

/// A finite algebra: an ordered carrier plus one total table per connective.
///
/// Tables are stored row-major: the entry for `(a, b)` sits at `a * n + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub name: String,
    carrier: Vec<String>,
    tables: BTreeMap<Connective, Vec<Value>>,
}

impl Algebra {
    pub fn new(name: &str, carrier: &[&str]) -> Self {
        Algebra { name: name.into(), carrier: carrier.iter().map(|s| s.to_string()).collect(), tables: BTreeMap::new() }
    }

    /// Adds a table given by value names in row-major order.
    pub fn with_table(mut self, c: Connective, entries: &[&str]) -> Self {
        let values = entries.iter().map(|e| self.value(e).expect("unknown value in table")).collect();
        self.set_table(c, values);
        self
    }

    pub fn set_table(&mut self, c: Connective, values: Vec<Value>) {
        assert_eq!(values.len(), self.size().pow(c.arity() as u32), "table for {c} has wrong length");
        assert!(values.iter().all(|v| *v < self.size()));
        self.tables.insert(c, values);
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn value(&self, name: &str) -> Option<Value> {
        self.carrier.iter().position(|c| c == name)
    }

    pub fn value_name(&self, v: Value) -> &str {
        &self.carrier[v]
    }

    pub fn table(&self, c: Connective) -> Option<&[Value]> {
        self.tables.get(&c).map(Vec::as_slice)
    }

    pub fn connectives(&self) -> impl Iterator<Item = Connective> + '_ {
        self.tables.keys().copied()
    }

    pub fn apply(&self, c: Connective, args: &[Value]) -> Result<Value, SemanticsError> {
        let table = self
            .tables
            .get(&c)
            .ok_or_else(|| SemanticsError::MissingTable { algebra: self.name.clone(), conn: c })?;
        let idx = args.iter().fold(0, |acc, a| acc * self.size() + a);
        Ok(table[idx])
    }
}

/// A logical matrix: an algebra with a set of designated values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub name: String,
    pub algebra: Algebra,
    designated: Vec<bool>,
}

impl Matrix {
    pub fn new(name: &str, algebra: Algebra, designated: &[&str]) -> Self {
        let mut flags = vec![false; algebra.size()];
        for d in designated {
            flags[algebra.value(d).expect("designated value outside the carrier")] = true;
        }
        Matrix { name: name.into(), algebra, designated: flags }
    }

    pub fn is_designated(&self, v: Value) -> bool {
        self.designated[v]
    }

    pub fn designated(&self) -> Vec<Value> {
        (0..self.algebra.size()).filter(|v| self.designated[*v]).collect()
    }

    pub fn designated_names(&self) -> Vec<&str> {
        self.designated().into_iter().map(|v| self.algebra.value_name(v)).collect()
    }
}

/// An assignment of truth values to variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Valuation(BTreeMap<Var, Value>);

impl Valuation {
    pub fn new() -> Self {
        Valuation(BTreeMap::new())
    }

    pub fn from_names(alg: &Algebra, pairs: &[(&str, &str)]) -> Self {
        Valuation(pairs.iter().map(|(v, x)| (Var::new(v), alg.value(x).expect("unknown value"))).collect())
    }

    pub fn set(&mut self, v: Var, x: Value) {
        self.0.insert(v, x);
    }

    pub fn get(&self, v: &Var) -> Option<Value> {
        self.0.get(v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, Value)> {
        self.0.iter().map(|(v, x)| (v, *x))
    }

    /// Renders as `p=u, q=f`.
    pub fn display<'a>(&'a self, alg: &'a Algebra) -> impl fmt::Display + 'a {
        DisplayValuation(self, alg)
    }
}

struct DisplayValuation<'a>(&'a Valuation, &'a Algebra);

impl fmt::Display for DisplayValuation<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, x)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}={}", self.1.value_name(x))?;
        }
        Ok(())
    }
}

pub fn evaluate(f: &Formula, alg: &Algebra, v: &Valuation) -> Result<Value, SemanticsError> {
    match f.view() {
        View::Var(x) => v.get(x).ok_or_else(|| SemanticsError::MissingVariable(x.clone())),
        View::App(c, args) => {
            let mut vals = [0; 2];
            for (slot, a) in vals.iter_mut().zip(args) {
                *slot = evaluate(a, alg, v)?;
            }
            alg.apply(c, &vals[..args.len()])
        }
    }
}

/// Result of a consequence check; the countermodel, when present, designates
/// every antecedent formula and no succedent formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntailmentVerdict {
    pub holds: bool,
    pub countermodel: Option<Valuation>,
}

impl EntailmentVerdict {
    fn holds() -> Self {
        EntailmentVerdict { holds: true, countermodel: None }
    }

    fn fails(v: Valuation) -> Self {
        EntailmentVerdict { holds: false, countermodel: Some(v) }
    }
}

/// Calls `visit` on every valuation of `vars` into the carrier, in canonical
/// order (first variable most significant, carrier in declared order). Stops
/// early when `visit` returns `false`.
pub fn for_each_valuation(vars: &[Var], size: usize, mut visit: impl FnMut(&Valuation) -> bool) {
    let mut digits = vec![0usize; vars.len()];
    let mut val = Valuation(vars.iter().map(|v| (v.clone(), 0)).collect());
    loop {
        if !visit(&val) {
            return;
        }
        let mut i = vars.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < size {
                val.set(vars[i].clone(), digits[i]);
                break;
            }
            digits[i] = 0;
            val.set(vars[i].clone(), 0);
        }
    }
}

fn statement_vars(antecedent: &[Formula], succedent: &[Formula]) -> Vec<Var> {
    let mut vars = BTreeSet::new();
    for f in antecedent.iter().chain(succedent) {
        f.collect_vars(&mut vars);
    }
    vars.into_iter().collect()
}

/// Decides `antecedent ⊢_m succedent` (Set-Set) by enumerating valuations.
///
/// Panics if a formula uses a connective the matrix does not interpret.
pub fn consequence_holds(m: &Matrix, antecedent: &[Formula], succedent: &[Formula]) -> EntailmentVerdict {
    let vars = statement_vars(antecedent, succedent);
    let mut found = None;
    for_each_valuation(&vars, m.algebra.size(), |v| {
        let designated = |f: &Formula| m.is_designated(evaluate(f, &m.algebra, v).expect("matrix must cover the statement"));
        if antecedent.iter().all(designated) && !succedent.iter().any(designated) {
            found = Some(v.clone());
            return false;
        }
        true
    });
    found.map_or_else(EntailmentVerdict::holds, EntailmentVerdict::fails)
}

/// Separator search result for one unordered pair of values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorEntry {
    pub pair: (Value, Value),
    pub separator: Option<Formula>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonadicityReport {
    pub entries: Vec<SeparatorEntry>,
}

impl MonadicityReport {
    pub fn is_monadic(&self) -> bool {
        self.entries.iter().all(|e| e.separator.is_some())
    }

    pub fn separator_for(&self, x: Value, y: Value) -> Option<&Formula> {
        let key = (x.min(y), x.max(y));
        self.entries.iter().find(|e| e.pair == key).and_then(|e| e.separator.as_ref())
    }
}

/// For every pair of distinct values, the first member of `theta` (in the
/// given order) that designates exactly one of them.
pub fn check_monadicity(m: &Matrix, theta: &[Formula]) -> MonadicityReport {
    let n = m.algebra.size();
    let mut entries = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let separator = theta
                .iter()
                .find(|t| {
                    let vars: Vec<Var> = t.vars().into_iter().collect();
                    if vars.len() != 1 {
                        return false;
                    }
                    let at = |val| {
                        let mut v = Valuation::new();
                        v.set(vars[0].clone(), val);
                        evaluate(t, &m.algebra, &v).map(|r| m.is_designated(r)).unwrap_or(false)
                    };
                    at(x) != at(y)
                })
                .cloned();
            entries.push(SeparatorEntry { pair: (x, y), separator });
        }
    }
    MonadicityReport { entries }
}

/// `swap` maps each carrier index of `m1` to a carrier index of `m2`.
/// True iff it is a bijection that maps designated onto designated and
/// commutes with every table of `m1`.
pub fn check_matrix_renaming(m1: &Matrix, m2: &Matrix, swap: &[Value]) -> bool {
    let n = m1.algebra.size();
    if n != m2.algebra.size() || swap.len() != n {
        return false;
    }
    let image: BTreeSet<_> = swap.iter().copied().collect();
    if image.len() != n || image.iter().any(|v| *v >= n) {
        return false;
    }
    if (0..n).any(|x| m1.is_designated(x) != m2.is_designated(swap[x])) {
        return false;
    }
    let c1: BTreeSet<_> = m1.algebra.connectives().collect();
    let c2: BTreeSet<_> = m2.algebra.connectives().collect();
    if c1 != c2 {
        return false;
    }
    c1.into_iter().all(|c| {
        let k = c.arity();
        (0..n.pow(k as u32)).all(|idx| {
            let args: Vec<Value> = (0..k).rev().map(|i| (idx / n.pow(i as u32)) % n).collect();
            let mapped: Vec<Value> = args.iter().map(|a| swap[*a]).collect();
            let lhs = swap[m1.algebra.apply(c, &args).unwrap()];
            lhs == m2.algebra.apply(c, &mapped).unwrap()
        })
    })
}

/// Which of the two weak Kleene logics a companion check refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeakKleene {
    Pwk,
    Bk,
}

/// Decides `antecedent ⊢ conclusion` in PWK or BK through classical logic and
/// variable inclusion, without looking at the three-valued matrix.
///
/// PWK keeps only the premises whose variables occur in the conclusion. BK
/// requires the conclusion's variables to occur among the premises, unless
/// the premises are classically unsatisfiable.
pub fn companion_oracle(logic: WeakKleene, antecedent: &[Formula], conclusion: &Formula) -> bool {
    let cl = crate::corpus::classical_matrix();
    let goal = std::slice::from_ref(conclusion);
    match logic {
        WeakKleene::Pwk => {
            let vars = conclusion.vars();
            let kept: Vec<Formula> = antecedent.iter().filter(|g| g.vars().is_subset(&vars)).cloned().collect();
            consequence_holds(&cl, &kept, goal).holds
        }
        WeakKleene::Bk => {
            let mut premise_vars = BTreeSet::new();
            antecedent.iter().for_each(|g| g.collect_vars(&mut premise_vars));
            let contained = conclusion.vars().is_subset(&premise_vars);
            (contained && consequence_holds(&cl, antecedent, goal).holds) || consequence_holds(&cl, antecedent, &[]).holds
        }
    }
}

// ---------------------------------------------------------------------------
// Matrix files

/// Renders the text format: `matrix NAME`, `values ...`, `designated ...`, then
/// one `table CONN` block per connective with one line per first argument.
pub fn write_matrix(m: &Matrix) -> String {
    let alg = &m.algebra;
    let mut out = format!("matrix {}\nvalues {}\ndesignated {}\n", m.name, alg.carrier.join(" "), m.designated_names().join(" "));
    for (c, table) in &alg.tables {
        out.push_str(&format!("table {}\n", c.name()));
        let row = if c.arity() == 1 { table.len() } else { alg.size() };
        for chunk in table.chunks(row) {
            let names: Vec<&str> = chunk.iter().map(|v| alg.value_name(*v)).collect();
            out.push_str(&format!("  {}\n", names.join(" ")));
        }
    }
    out
}

pub fn read_matrix(text: &str) -> Result<Matrix, SemanticsError> {
    let err = |line: usize, msg: &str| SemanticsError::Format { line, msg: msg.into() };
    let mut name = None;
    let mut values: Vec<String> = Vec::new();
    let mut designated: Vec<String> = Vec::new();
    let mut tables: Vec<(Connective, usize, Vec<String>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next().unwrap() {
            "matrix" => name = Some(words.next().ok_or_else(|| err(line_no, "missing matrix name"))?.to_string()),
            "values" => values = words.map(String::from).collect(),
            "designated" => designated = words.map(String::from).collect(),
            "table" => {
                let cname = words.next().ok_or_else(|| err(line_no, "missing connective"))?;
                let c = Connective::from_name(cname).ok_or_else(|| err(line_no, "unknown connective"))?;
                tables.push((c, line_no, Vec::new()));
            }
            first => {
                let (_, _, entries) = tables.last_mut().ok_or_else(|| err(line_no, "table entries before any `table` line"))?;
                entries.push(first.to_string());
                entries.extend(words.map(String::from));
            }
        }
    }
    let name = name.ok_or_else(|| err(1, "missing `matrix` header"))?;
    if values.is_empty() {
        return Err(err(1, "missing `values` line"));
    }
    let value_refs: Vec<&str> = values.iter().map(String::as_str).collect();
    let mut alg = Algebra::new(&name, &value_refs);
    for (c, line_no, entries) in tables {
        if entries.len() != alg.size().pow(c.arity() as u32) {
            return Err(err(line_no, "table has the wrong number of entries"));
        }
        let vals = entries
            .iter()
            .map(|e| alg.value(e).ok_or_else(|| err(line_no, &format!("unknown value {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        alg.set_table(c, vals);
    }
    for d in &designated {
        if alg.value(d).is_none() {
            return Err(err(1, &format!("designated value {d} not in carrier")));
        }
    }
    let d_refs: Vec<&str> = designated.iter().map(String::as_str).collect();
    Ok(Matrix::new(&name, alg, &d_refs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{get_matrix, weak_kleene_algebra};
    use crate::formula::{parse, Signature};

    fn p(s: &str) -> Formula {
        parse(s, &Signature::and_or_not()).unwrap()
    }

    fn ps(items: &[&str]) -> Vec<Formula> {
        items.iter().map(|s| p(s)).collect()
    }

    #[test]
    fn evaluation_examples() {
        let wk = weak_kleene_algebra();
        let v = Valuation::from_names(&wk, &[("p", "f"), ("q", "u")]);
        assert_eq!(wk.value_name(evaluate(&p("p & q"), &wk, &v).unwrap()), "u");
        let v = Valuation::from_names(&wk, &[("p", "t"), ("q", "t")]);
        assert_eq!(wk.value_name(evaluate(&p("~(p & q)"), &wk, &v).unwrap()), "f");
        let v = Valuation::from_names(&wk, &[("p", "f"), ("q", "u")]);
        assert_eq!(wk.value_name(evaluate(&p("(p | q) & ~p"), &wk, &v).unwrap()), "u");
    }

    #[test]
    fn evaluation_errors() {
        let wk = weak_kleene_algebra();
        let v = Valuation::from_names(&wk, &[("p", "f")]);
        assert_eq!(evaluate(&p("p & q"), &wk, &v), Err(SemanticsError::MissingVariable(Var::new("q"))));
        let imp = parse("p -> q", &Signature::imp_not()).unwrap();
        let v = Valuation::from_names(&wk, &[("p", "f"), ("q", "f")]);
        assert!(matches!(evaluate(&imp, &wk, &v), Err(SemanticsError::MissingTable { .. })));
    }

    #[test]
    fn consequence_examples() {
        let cl = get_matrix("CL2").unwrap();
        assert!(consequence_holds(&cl, &ps(&["~(p & q)"]), &ps(&["~p", "~q"])).holds);

        let pwk = get_matrix("PWK").unwrap();
        let verdict = consequence_holds(&pwk, &ps(&["p", "~p"]), &ps(&["q"]));
        assert!(!verdict.holds);
        let cm = verdict.countermodel.unwrap();
        assert_eq!(cm.display(&pwk.algebra).to_string(), "p=u, q=f");

        let bk = get_matrix("BK").unwrap();
        let verdict = consequence_holds(&bk, &ps(&["q"]), &ps(&["(p | q) | ~(p | q)"]));
        assert_eq!(verdict.countermodel.unwrap().display(&bk.algebra).to_string(), "p=u, q=t");
    }

    #[test]
    fn monadicity_examples() {
        let theta = ps(&["x", "~x"]);
        let pwk = get_matrix("PWK").unwrap();
        let wk = &pwk.algebra;
        let (f, u, t) = (wk.value("f").unwrap(), wk.value("u").unwrap(), wk.value("t").unwrap());
        let r = check_monadicity(&pwk, &theta);
        assert!(r.is_monadic());
        assert_eq!(r.separator_for(t, f), Some(&p("x")));
        assert_eq!(r.separator_for(f, u), Some(&p("x")));
        assert_eq!(r.separator_for(u, t), Some(&p("~x")));

        let bk = get_matrix("BK").unwrap();
        let r = check_monadicity(&bk, &theta);
        assert!(r.is_monadic());
        assert_eq!(r.separator_for(t, f), Some(&p("x")));
        assert_eq!(r.separator_for(t, u), Some(&p("x")));
        assert_eq!(r.separator_for(f, u), Some(&p("~x")));

        let r = check_monadicity(&pwk, &ps(&["x"]));
        assert!(!r.is_monadic());
        assert_eq!(r.separator_for(u, t), None);
    }

    #[test]
    fn renaming_examples() {
        let bk = get_matrix("BK").unwrap();
        let mprime = get_matrix("Mprime").unwrap();
        let pwk = get_matrix("PWK").unwrap();
        // carrier order f, u, t
        assert!(check_matrix_renaming(&bk, &mprime, &[2, 1, 0]));
        assert!(check_matrix_renaming(&bk, &bk, &[0, 1, 2]));
        assert!(!check_matrix_renaming(&pwk, &bk, &[0, 1, 2]));
        assert!(!check_matrix_renaming(&bk, &mprime, &[0, 1, 2]));
        assert!(!check_matrix_renaming(&bk, &mprime, &[0, 0, 2]));
    }

    #[test]
    fn companion_examples() {
        assert!(!companion_oracle(WeakKleene::Pwk, &ps(&["p & q"]), &p("p")));
        assert!(companion_oracle(WeakKleene::Bk, &ps(&["p & q"]), &p("p")));
        assert!(!companion_oracle(WeakKleene::Bk, &ps(&["p"]), &p("p | q")));
        // explosive premises
        assert!(companion_oracle(WeakKleene::Bk, &ps(&["p", "~p"]), &p("q")));
    }

    #[test]
    fn valuation_order_is_canonical() {
        let vars = vec![Var::new("p"), Var::new("q")];
        let mut seen = Vec::new();
        for_each_valuation(&vars, 3, |v| {
            seen.push((v.get(&vars[0]).unwrap(), v.get(&vars[1]).unwrap()));
            true
        });
        assert_eq!(seen.len(), 9);
        assert_eq!(&seen[..4], &[(0, 0), (0, 1), (0, 2), (1, 0)]);
        let mut count = 0;
        for_each_valuation(&[], 3, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 1);
    }

    #[test]
    fn matrix_file_round_trip() {
        for id in ["CL2", "PWK", "BK", "Mprime"] {
            let m = get_matrix(id).unwrap();
            let text = write_matrix(&m);
            assert_eq!(read_matrix(&text).unwrap(), m, "{text}");
        }
        assert!(read_matrix("matrix X\nvalues a b\ntable not\n a\n").is_err());
        assert!(read_matrix("values a b\n").is_err());
    }
}
