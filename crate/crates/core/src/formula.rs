//! Propositional formulas over the connectives `~`, `&`, `|` and `->`.
//!
//! Formulas are immutable, reference counted trees. Each node caches its size
//! and its canonical rendering, so equality, hashing and the canonical order
//! (size first, then rendered text) are cheap.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

/// The connectives available to signatures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Connective {
    Not,
    And,
    Or,
    Imp,
}

impl Connective {
    pub const ALL: [Connective; 4] = [Connective::Not, Connective::And, Connective::Or, Connective::Imp];

    pub fn arity(self) -> usize {
        match self {
            Connective::Not => 1,
            _ => 2,
        }
    }

    /// Canonical ASCII spelling used when rendering formulas.
    pub fn symbol(self) -> &'static str {
        match self {
            Connective::Not => "~",
            Connective::And => "&",
            Connective::Or => "|",
            Connective::Imp => "->",
        }
    }

    /// Word used in matrix files and signature headers.
    pub fn name(self) -> &'static str {
        match self {
            Connective::Not => "not",
            Connective::And => "and",
            Connective::Or => "or",
            Connective::Imp => "imp",
        }
    }

    pub fn from_name(name: &str) -> Option<Connective> {
        Connective::ALL.into_iter().find(|c| c.name() == name)
    }

    fn precedence(self) -> u8 {
        match self {
            Connective::Imp => 0,
            Connective::Or => 1,
            Connective::And => 2,
            Connective::Not => 3,
        }
    }
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A propositional signature: the connectives formulas may use.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    connectives: BTreeSet<Connective>,
}

impl Signature {
    pub fn new(connectives: impl IntoIterator<Item = Connective>) -> Self {
        Signature { connectives: connectives.into_iter().collect() }
    }

    /// `{&, |, ~}`, the signature of PWK and BK.
    pub fn and_or_not() -> Self {
        Signature::new([Connective::And, Connective::Or, Connective::Not])
    }

    /// `{->, ~}`, used by the single-conclusion classical system.
    pub fn imp_not() -> Self {
        Signature::new([Connective::Imp, Connective::Not])
    }

    pub fn and_or_imp_not() -> Self {
        Signature::new(Connective::ALL)
    }

    pub fn contains(&self, c: Connective) -> bool {
        self.connectives.contains(&c)
    }

    pub fn arity(&self, c: Connective) -> Option<usize> {
        self.contains(c).then(|| c.arity())
    }

    pub fn connectives(&self) -> impl Iterator<Item = Connective> + '_ {
        self.connectives.iter().copied()
    }

    /// Header spelling, e.g. `and-or-not`.
    pub fn name(&self) -> String {
        let order = [Connective::And, Connective::Or, Connective::Imp, Connective::Not];
        order.iter().filter(|c| self.contains(**c)).map(|c| c.name()).collect::<Vec<_>>().join("-")
    }

    pub fn from_name(name: &str) -> Option<Signature> {
        let mut set = BTreeSet::new();
        for part in name.split('-') {
            set.insert(Connective::from_name(part)?);
        }
        Some(Signature { connectives: set })
    }

    /// Whether `→` should be read as `¬a ∨ b` when parsing in this signature.
    pub fn default_expand_arrow(&self) -> bool {
        !self.contains(Connective::Imp)
    }

    pub fn admits(&self, f: &Formula) -> bool {
        match f.view() {
            View::Var(_) => true,
            View::App(c, args) => self.contains(c) && args.iter().all(|a| self.admits(a)),
        }
    }
}

impl Default for Signature {
    fn default() -> Self {
        Signature::and_or_not()
    }
}

/// A propositional variable, named by a `[a-z][a-z0-9_]*` identifier.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn is_valid_name(name: &str) -> bool {
        let mut chars = name.chars();
        matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
            && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

enum Node {
    Var(Var),
    App(Connective, Vec<Formula>),
}

struct Inner {
    node: Node,
    size: usize,
    text: Box<str>,
}

/// A formula: a variable or a connective applied to argument formulas.
#[derive(Clone)]
pub struct Formula(Arc<Inner>);

/// Borrowed view of a formula's top-level shape.
#[derive(Clone, Copy, Debug)]
pub enum View<'a> {
    Var(&'a Var),
    App(Connective, &'a [Formula]),
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::from_var(Var::new(name))
    }

    pub fn from_var(v: Var) -> Formula {
        let text: Box<str> = v.name().into();
        Formula(Arc::new(Inner { node: Node::Var(v), size: 1, text }))
    }

    /// Builds an application. Panics if the argument count does not match the arity.
    pub fn app(c: Connective, args: Vec<Formula>) -> Formula {
        assert_eq!(args.len(), c.arity(), "wrong number of arguments for {c}");
        let size = 1 + args.iter().map(Formula::size).sum::<usize>();
        let text = render_app(c, &args).into_boxed_str();
        Formula(Arc::new(Inner { node: Node::App(c, args), size, text }))
    }

    pub fn not(a: Formula) -> Formula {
        Formula::app(Connective::Not, vec![a])
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::app(Connective::And, vec![a, b])
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::app(Connective::Or, vec![a, b])
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::app(Connective::Imp, vec![a, b])
    }

    /// `¬a ∨ b`, the abbreviation of `a → b` over `{&, |, ~}`.
    pub fn imp_abbrev(a: Formula, b: Formula) -> Formula {
        Formula::or(Formula::not(a), b)
    }

    pub fn view(&self) -> View<'_> {
        match &self.0.node {
            Node::Var(v) => View::Var(v),
            Node::App(c, args) => View::App(*c, args),
        }
    }

    pub fn as_var(&self) -> Option<&Var> {
        match &self.0.node {
            Node::Var(v) => Some(v),
            Node::App(..) => None,
        }
    }

    pub fn head(&self) -> Option<Connective> {
        match &self.0.node {
            Node::Var(_) => None,
            Node::App(c, _) => Some(*c),
        }
    }

    pub fn args(&self) -> &[Formula] {
        match &self.0.node {
            Node::Var(_) => &[],
            Node::App(_, args) => args,
        }
    }

    /// Number of symbol occurrences (variables and connectives).
    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn depth(&self) -> usize {
        self.args().iter().map(|a| a.depth() + 1).max().unwrap_or(0)
    }

    /// Canonical rendering; `parse_formula` inverts it.
    pub fn text(&self) -> &str {
        &self.0.text
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self.view() {
            View::Var(v) => {
                out.insert(v.clone());
            }
            View::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        if out.insert(self.clone()) {
            self.args().iter().for_each(|a| a.collect_subformulas(out));
        }
    }

    pub fn contains_connective(&self, c: Connective) -> bool {
        self.head() == Some(c) || self.args().iter().any(|a| a.contains_connective(c))
    }

    /// Rewrites every `a -> b` as `~a | b`.
    pub fn expand_imp(&self) -> Formula {
        match self.view() {
            View::Var(_) => self.clone(),
            View::App(Connective::Imp, args) => Formula::imp_abbrev(args[0].expand_imp(), args[1].expand_imp()),
            View::App(c, args) => Formula::app(c, args.iter().map(Formula::expand_imp).collect()),
        }
    }

    /// Interchanges `&` and `|` throughout.
    pub fn swap_and_or(&self) -> Formula {
        match self.view() {
            View::Var(_) => self.clone(),
            View::App(c, args) => {
                let c = match c {
                    Connective::And => Connective::Or,
                    Connective::Or => Connective::And,
                    other => other,
                };
                Formula::app(c, args.iter().map(Formula::swap_and_or).collect())
            }
        }
    }

    fn precedence(&self) -> u8 {
        self.head().map_or(4, Connective::precedence)
    }
}

fn render_app(c: Connective, args: &[Formula]) -> String {
    let wrap = |f: &Formula, parens: bool| {
        if parens {
            format!("({})", f.text())
        } else {
            f.text().to_string()
        }
    };
    match c {
        Connective::Not => format!("~{}", wrap(&args[0], args[0].precedence() < 3)),
        Connective::Imp => {
            format!("{} -> {}", wrap(&args[0], args[0].precedence() == 0), args[1].text())
        }
        Connective::And | Connective::Or => {
            let p = c.precedence();
            format!(
                "{} {} {}",
                wrap(&args[0], args[0].precedence() < p),
                c.symbol(),
                wrap(&args[1], args[1].precedence() <= p)
            )
        }
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.size == other.0.size && self.0.text == other.0.text)
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.text.hash(state);
    }
}

impl Ord for Formula {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.size.cmp(&other.0.size).then_with(|| self.0.text.cmp(&other.0.text))
    }
}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.text())
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", self.text())
    }
}

/// Sorts and deduplicates formulas into canonical order.
pub fn canonical_set(items: impl IntoIterator<Item = Formula>) -> Vec<Formula> {
    items.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

/// Renders a comma-separated list; the empty list renders as the empty string.
pub fn render_list(items: &[Formula]) -> String {
    items.iter().map(Formula::text).collect::<Vec<_>>().join(", ")
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("connective {conn} not in signature (position {pos})")]
    ConnectiveNotInSignature { conn: Connective, pos: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    Not,
    And,
    Or,
    Imp,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok<'_>)>, ParseError> {
    let mut out = Vec::new();
    let mut iter = text.char_indices().peekable();
    while let Some(&(pos, c)) = iter.peek() {
        let rest = &text[pos..];
        let (tok, len) = match c {
            c if c.is_whitespace() => {
                iter.next();
                continue;
            }
            '~' | '!' => (Tok::Not, 1),
            '¬' => (Tok::Not, '¬'.len_utf8()),
            '&' => (Tok::And, 1),
            '∧' => (Tok::And, '∧'.len_utf8()),
            '|' => (Tok::Or, 1),
            '∨' => (Tok::Or, '∨'.len_utf8()),
            '→' => (Tok::Imp, '→'.len_utf8()),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '/' if rest.starts_with("/\\") => (Tok::And, 2),
            '\\' if rest.starts_with("\\/") => (Tok::Or, 2),
            '-' if rest.starts_with("->") => (Tok::Imp, 2),
            c if c.is_ascii_lowercase() => {
                let len = rest
                    .find(|ch: char| !(ch.is_ascii_lowercase() || ch.is_ascii_digit() || ch == '_'))
                    .unwrap_or(rest.len());
                (Tok::Ident(&rest[..len]), len)
            }
            other => {
                return Err(ParseError::Syntax { pos, msg: format!("unexpected character {other:?}") });
            }
        };
        out.push((pos, tok));
        // advance by `len` bytes
        while let Some(&(p, _)) = iter.peek() {
            if p < pos + len {
                iter.next();
            } else {
                break;
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok<'a>)>,
    at: usize,
    end: usize,
    sig: &'a Signature,
    expand_arrow: bool,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<Tok<'a>> {
        self.toks.get(self.at).map(|t| t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn build(&self, c: Connective, args: Vec<Formula>, pos: usize) -> Result<Formula, ParseError> {
        if self.sig.contains(c) {
            return Ok(Formula::app(c, args));
        }
        if c == Connective::Imp && self.expand_arrow && self.sig.contains(Connective::Or) && self.sig.contains(Connective::Not) {
            let mut args = args.into_iter();
            let (a, b) = (args.next().unwrap(), args.next().unwrap());
            return Ok(Formula::imp_abbrev(a, b));
        }
        Err(ParseError::ConnectiveNotInSignature { conn: c, pos })
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.binary(Connective::Or)?;
        if self.peek() == Some(Tok::Imp) {
            let pos = self.pos();
            self.at += 1;
            let rhs = self.imp()?;
            return self.build(Connective::Imp, vec![lhs, rhs], pos);
        }
        Ok(lhs)
    }

    fn binary(&mut self, c: Connective) -> Result<Formula, ParseError> {
        let (tok, next): (Tok, fn(&mut Self) -> Result<Formula, ParseError>) = match c {
            Connective::Or => (Tok::Or, |p| p.binary(Connective::And)),
            _ => (Tok::And, Self::neg),
        };
        let mut acc = next(self)?;
        while self.peek() == Some(tok) {
            let pos = self.pos();
            self.at += 1;
            let rhs = next(self)?;
            acc = self.build(c, vec![acc, rhs], pos)?;
        }
        Ok(acc)
    }

    fn neg(&mut self) -> Result<Formula, ParseError> {
        if self.peek() == Some(Tok::Not) {
            let pos = self.pos();
            self.at += 1;
            let inner = self.neg()?;
            return self.build(Connective::Not, vec![inner], pos);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Ident(name)) => {
                self.at += 1;
                Ok(Formula::var(name))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.imp()?;
                if self.peek() != Some(Tok::RParen) {
                    return Err(ParseError::Syntax { pos: self.pos(), msg: "expected ')'".into() });
                }
                self.at += 1;
                Ok(inner)
            }
            Some(t) => Err(ParseError::Syntax { pos, msg: format!("unexpected token {t:?}") }),
            None => Err(ParseError::Syntax { pos, msg: "unexpected end of input".into() }),
        }
    }
}

/// Parses `text` under `sig`.
///
/// With `expand_arrow`, an `a -> b` in a signature lacking `->` is built as
/// `~a | b`. Precedence is `~` > `&` > `|` > `->`; `&` and `|` associate to the
/// left and `->` to the right.
pub fn parse_formula(text: &str, sig: &Signature, expand_arrow: bool) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, end: text.len(), sig, expand_arrow };
    let f = p.imp()?;
    if p.at != p.toks.len() {
        return Err(ParseError::Syntax { pos: p.pos(), msg: "trailing input".into() });
    }
    Ok(f)
}

/// Parses with the signature's default arrow handling.
pub fn parse(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    parse_formula(text, sig, sig.default_expand_arrow())
}

/// Parses a comma-separated list of formulas; blank text or `-` is the empty list.
pub fn parse_list(text: &str, sig: &Signature) -> Result<Vec<Formula>, ParseError> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "-" {
        return Ok(Vec::new());
    }
    trimmed.split(',').map(|part| parse(part, sig)).collect()
}

// ---------------------------------------------------------------------------
// Substitutions and matching

/// A finite map from variables to formulas, identity elsewhere.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Substitution(BTreeMap<Var, Formula>);

impl Substitution {
    pub fn new() -> Self {
        Substitution(BTreeMap::new())
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, Formula)>) -> Self {
        Substitution(pairs.into_iter().map(|(v, f)| (Var::new(v), f)).collect())
    }

    pub fn insert(&mut self, v: Var, f: Formula) -> Option<Formula> {
        self.0.insert(v, f)
    }

    pub fn get(&self, v: &Var) -> Option<&Formula> {
        self.0.get(v)
    }

    pub fn contains(&self, v: &Var) -> bool {
        self.0.contains_key(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Formula)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, f: &Formula) -> Formula {
        if self.0.is_empty() {
            return f.clone();
        }
        match f.view() {
            View::Var(v) => self.0.get(v).cloned().unwrap_or_else(|| f.clone()),
            View::App(c, args) => Formula::app(c, args.iter().map(|a| self.apply(a)).collect()),
        }
    }

    pub fn apply_all(&self, fs: &[Formula]) -> Vec<Formula> {
        fs.iter().map(|f| self.apply(f)).collect()
    }

    /// `self ∘ inner`: first `inner`, then `self`, on the union of both domains.
    pub fn compose(&self, inner: &Substitution) -> Substitution {
        let mut out: BTreeMap<Var, Formula> = inner.0.iter().map(|(v, f)| (v.clone(), self.apply(f))).collect();
        for (v, f) in &self.0 {
            out.entry(v.clone()).or_insert_with(|| f.clone());
        }
        Substitution(out)
    }

    /// Keeps only the bindings of `vars`.
    pub fn restrict(&self, vars: &BTreeSet<Var>) -> Substitution {
        Substitution(self.0.iter().filter(|(v, _)| vars.contains(*v)).map(|(v, f)| (v.clone(), f.clone())).collect())
    }

    /// Drops bindings of the form `x := x`.
    pub fn without_identities(&self) -> Substitution {
        Substitution(
            self.0
                .iter()
                .filter(|(v, f)| f.as_var() != Some(*v))
                .map(|(v, f)| (v.clone(), f.clone()))
                .collect(),
        )
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}:={t}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `{p:=<formula>, q:=<formula>}`.
pub fn parse_substitution(text: &str, sig: &Signature) -> Result<Substitution, ParseError> {
    let t = text.trim();
    let inner = t
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| ParseError::Syntax { pos: 0, msg: "substitution must be enclosed in braces".into() })?;
    let mut out = Substitution::new();
    if inner.trim().is_empty() {
        return Ok(out);
    }
    for part in inner.split(',') {
        let (name, body) = part
            .split_once(":=")
            .ok_or_else(|| ParseError::Syntax { pos: 0, msg: format!("expected `var:=formula` in {part:?}") })?;
        let name = name.trim();
        if !Var::is_valid_name(name) {
            return Err(ParseError::Syntax { pos: 0, msg: format!("bad variable name {name:?}") });
        }
        out.insert(Var::new(name), parse(body, sig)?);
    }
    Ok(out)
}

/// Extends `subst` so that `pattern` maps onto `target`. On failure `subst`
/// may hold partial bindings; callers working with backtracking should clone.
pub fn match_into(pattern: &Formula, target: &Formula, subst: &mut Substitution) -> bool {
    match pattern.view() {
        View::Var(v) => match subst.get(v) {
            Some(bound) => bound == target,
            None => {
                subst.insert(v.clone(), target.clone());
                true
            }
        },
        View::App(c, pargs) => match target.view() {
            View::App(d, targs) if c == d => pargs.iter().zip(targs).all(|(p, t)| match_into(p, t, subst)),
            _ => false,
        },
    }
}

/// One-sided matching: the unique `s` with `s(pattern) = target`, restricted to
/// the variables of `pattern`.
pub fn match_schema(pattern: &Formula, target: &Formula) -> Option<Substitution> {
    let mut s = Substitution::new();
    match_into(pattern, target, &mut s).then_some(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThetaError {
    #[error("separator {0} must contain exactly one variable")]
    NotUnary(Formula),
}

/// Instantiates a one-variable formula at `arg`.
pub fn apply_unary(theta: &Formula, arg: &Formula) -> Result<Formula, ThetaError> {
    let vars = theta.vars();
    if vars.len() != 1 {
        return Err(ThetaError::NotUnary(theta.clone()));
    }
    let v = vars.into_iter().next().unwrap();
    let mut s = Substitution::new();
    s.insert(v, arg.clone());
    Ok(s.apply(theta))
}

/// The subformulas of `antecedent ∪ succedent` together with their images
/// under every member of `theta`, in canonical order.
pub fn theta_subformulas(
    antecedent: &[Formula],
    succedent: &[Formula],
    theta: &[Formula],
) -> Result<Vec<Formula>, ThetaError> {
    let mut subf = BTreeSet::new();
    for f in antecedent.iter().chain(succedent) {
        subf.extend(f.subformulas());
    }
    let mut out = subf.clone();
    for t in theta {
        for s in &subf {
            out.insert(apply_unary(t, s)?);
        }
    }
    Ok(out.into_iter().collect())
}
