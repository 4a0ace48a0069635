//! Derivation files: a line-based text format for linear and tree proofs,
//! plus JSON and DOT renderings.

use serde_json::{json, Value};
use thiserror::Error;

use crate::formula::{parse, parse_list, parse_substitution, Formula, Signature, Substitution};

use super::linear::{Justification, LinearDerivation, Step};
use super::tree::{Children, TreeDerivation, TreeNode};
use super::{side, Statement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derivation {
    Linear(LinearDerivation),
    Tree(TreeDerivation),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationFile {
    pub system: String,
    pub claim: Statement,
    pub derivation: Derivation,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unknown system {0}")]
    UnknownSystem(String),
}

fn syntax(line: usize, msg: impl Into<String>) -> FileError {
    FileError::Syntax { line, msg: msg.into() }
}

/// Renders a linear derivation. Formulas are written when known.
pub fn write_linear(system: &str, claim: &Statement, d: &LinearDerivation) -> String {
    let mut out = format!("system: {system}\nclaim: {claim}\n");
    for (i, step) in d.steps.iter().enumerate() {
        let refs = |rs: &[usize]| {
            let shown: Vec<String> = rs.iter().map(|r| (r + 1).to_string()).collect();
            format!("[{}]", shown.join(","))
        };
        let body = match &step.justification {
            Justification::Premise => format!("premise {}", step.formula.as_ref().map(|f| f.to_string()).unwrap_or_default()),
            Justification::Rule { rule, refs: rs, subst } => format!("{rule} {} {subst}", refs(rs)),
            Justification::Chain { rules, refs: rs, substs } => {
                let ss: Vec<String> = substs.iter().map(|s| s.to_string()).collect();
                format!("chain {} {} {}", rules.join(","), refs(rs), ss.join(" ")).trim_end().to_string()
            }
        };
        out.push_str(&format!("{}. {body}", i + 1));
        if step.justification != Justification::Premise {
            if let Some(f) = &step.formula {
                out.push_str(&format!(" => {f}"));
            }
        }
        out.push('\n');
    }
    out.push_str(&format!("qed {}\n", d.len()));
    out
}

/// Renders a tree derivation in the nested-block format.
pub fn write_tree(system: &str, claim: &Statement, t: &TreeDerivation) -> String {
    let mut out = format!("system: {system}\nclaim: {claim}\nroot: {}\nnode {{\n", side(&t.root));
    write_node(&t.node, 1, &mut out);
    out.push_str("}\n");
    out
}

fn write_node(n: &TreeNode, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match n {
        TreeNode::Leaf { close: Some(f) } => out.push_str(&format!("{pad}close {f}\n")),
        TreeNode::Leaf { close: None } => out.push_str(&format!("{pad}close\n")),
        TreeNode::Apply { rule, subst, children } => {
            out.push_str(&format!("{pad}rule {rule} {subst}\n"));
            match children {
                Children::Star => out.push_str(&format!("{pad}star\n")),
                Children::Branches(bs) => {
                    for (f, child) in bs {
                        out.push_str(&format!("{pad}branch {f} {{\n"));
                        write_node(child, depth + 1, out);
                        out.push_str(&format!("{pad}}}\n"));
                    }
                }
            }
        }
    }
}

/// Parses a derivation file. `signature_of` resolves the system named in the
/// header to the signature its formulas are written in.
pub fn parse_derivation_file(
    text: &str,
    signature_of: &dyn Fn(&str) -> Option<Signature>,
) -> Result<DerivationFile, FileError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let mut it = lines.into_iter().peekable();
    let (n, first) = it.next().ok_or_else(|| syntax(1, "empty file"))?;
    let system = first.strip_prefix("system:").ok_or_else(|| syntax(n, "expected `system: ID`"))?.trim().to_string();
    let sig = signature_of(&system).ok_or_else(|| FileError::UnknownSystem(system.clone()))?;
    let (n, second) = it.next().ok_or_else(|| syntax(n, "missing claim"))?;
    let claim_text = second.strip_prefix("claim:").ok_or_else(|| syntax(n, "expected `claim: ... |- ...`"))?;
    let claim = Statement::parse(claim_text, &sig).map_err(|e| syntax(n, e.to_string()))?;
    let rest: Vec<(usize, &str)> = it.collect();
    let is_tree = rest.first().map(|(_, l)| l.starts_with("root:") || l.starts_with("node")).unwrap_or(false);
    let derivation = if is_tree {
        Derivation::Tree(parse_tree(&rest, &sig, &claim)?)
    } else {
        Derivation::Linear(parse_linear(&rest, &sig)?)
    };
    Ok(DerivationFile { system, claim, derivation })
}

fn parse_refs(text: &str, line: usize) -> Result<Vec<usize>, FileError> {
    let inner = text.trim().strip_prefix('[').and_then(|s| s.strip_suffix(']')).ok_or_else(|| syntax(line, "bad references"))?;
    inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| match s.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k - 1),
            _ => Err(syntax(line, format!("bad step reference {s:?}"))),
        })
        .collect()
}

/// Splits `text` into the leading `[...]` group and the `{...}` groups after it.
fn split_groups(text: &str, line: usize) -> Result<(Vec<usize>, Vec<&str>), FileError> {
    let text = text.trim();
    let (refs, mut rest) = if text.starts_with('[') {
        let end = text.find(']').ok_or_else(|| syntax(line, "unclosed `[`"))?;
        (parse_refs(&text[..=end], line)?, text[end + 1..].trim())
    } else {
        (Vec::new(), text)
    };
    let mut groups = Vec::new();
    while !rest.is_empty() {
        if !rest.starts_with('{') {
            return Err(syntax(line, format!("unexpected text {rest:?}")));
        }
        let end = rest.find('}').ok_or_else(|| syntax(line, "unclosed `{`"))?;
        groups.push(&rest[..=end]);
        rest = rest[end + 1..].trim();
    }
    Ok((refs, groups))
}

fn parse_linear(lines: &[(usize, &str)], sig: &Signature) -> Result<LinearDerivation, FileError> {
    let mut d = LinearDerivation::new();
    let mut qed = None;
    for &(n, line) in lines {
        if let Some(k) = line.strip_prefix("qed") {
            qed = Some((n, k.trim().parse::<usize>().map_err(|_| syntax(n, "bad `qed` count"))?));
            continue;
        }
        if qed.is_some() {
            return Err(syntax(n, "text after `qed`"));
        }
        let (num, body) = line.split_once('.').ok_or_else(|| syntax(n, "expected `N. justification`"))?;
        if num.trim().parse::<usize>().ok() != Some(d.len() + 1) {
            return Err(syntax(n, format!("expected step number {}", d.len() + 1)));
        }
        let body = body.trim();
        if let Some(f) = body.strip_prefix("premise ") {
            d.premise(parse(f, sig).map_err(|e| syntax(n, e.to_string()))?);
            continue;
        }
        let (body, claimed) = match body.rsplit_once("=>") {
            Some((b, f)) => (b.trim(), Some(parse(f, sig).map_err(|e| syntax(n, e.to_string()))?)),
            None => (body, None),
        };
        let (head, tail) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let subst = |g: &str| parse_substitution(g, sig).map_err(|e| syntax(n, e.to_string()));
        let justification = if head == "chain" {
            let tail = tail.trim();
            let (rules, tail) = tail.split_once(char::is_whitespace).unwrap_or((tail, ""));
            let (refs, groups) = split_groups(tail, n)?;
            Justification::Chain {
                rules: rules.split(',').map(|r| r.trim().to_string()).collect(),
                refs,
                substs: groups.into_iter().map(subst).collect::<Result<_, _>>()?,
            }
        } else {
            let (refs, groups) = split_groups(tail, n)?;
            let s = match groups.as_slice() {
                [] => Substitution::new(),
                [g] => subst(g)?,
                _ => return Err(syntax(n, "a rule step takes one substitution")),
            };
            Justification::Rule { rule: head.to_string(), refs, subst: s }
        };
        d.steps.push(Step { formula: claimed, justification });
    }
    match qed {
        Some((_, k)) if k == d.len() => Ok(d),
        Some((n, k)) => Err(syntax(n, format!("`qed {k}` but the derivation has {} steps", d.len()))),
        None => Err(syntax(lines.last().map(|l| l.0).unwrap_or(1), "missing `qed N` footer")),
    }
}

fn parse_tree(lines: &[(usize, &str)], sig: &Signature, claim: &Statement) -> Result<TreeDerivation, FileError> {
    let mut pos = 0;
    let root = match lines.first() {
        Some((n, l)) if l.starts_with("root:") => {
            pos = 1;
            parse_list(&l["root:".len()..], sig).map_err(|e| syntax(*n, e.to_string()))?
        }
        _ => claim.antecedent.clone(),
    };
    let &(n, open) = lines.get(pos).ok_or_else(|| syntax(1, "missing `node {`"))?;
    if open.replace(' ', "") != "node{" {
        return Err(syntax(n, "expected `node {`"));
    }
    pos += 1;
    let node = parse_node(lines, &mut pos, sig)?;
    match lines.get(pos) {
        Some(&(_, "}")) => pos += 1,
        Some(&(n, _)) => return Err(syntax(n, "expected `}` closing the node")),
        None => return Err(syntax(lines.last().unwrap().0, "unclosed `node {`")),
    }
    if let Some(&(n, _)) = lines.get(pos) {
        return Err(syntax(n, "text after the tree"));
    }
    Ok(TreeDerivation::new(root, node))
}

fn parse_node(lines: &[(usize, &str)], pos: &mut usize, sig: &Signature) -> Result<TreeNode, FileError> {
    let &(n, line) = lines.get(*pos).ok_or_else(|| syntax(lines.last().map(|l| l.0).unwrap_or(1), "missing node body"))?;
    *pos += 1;
    if let Some(rest) = line.strip_prefix("close") {
        let rest = rest.trim();
        let close = if rest.is_empty() { None } else { Some(parse(rest, sig).map_err(|e| syntax(n, e.to_string()))?) };
        return Ok(TreeNode::Leaf { close });
    }
    let rest = line.strip_prefix("rule ").ok_or_else(|| syntax(n, "expected `rule`, `close` or `}`"))?.trim();
    let (rule, groups) = match rest.find('{') {
        Some(i) => (rest[..i].trim(), rest[i..].trim()),
        None => (rest, ""),
    };
    let subst = if groups.is_empty() {
        Substitution::new()
    } else {
        parse_substitution(groups, sig).map_err(|e| syntax(n, e.to_string()))?
    };
    if let Some(&(_, "star")) = lines.get(*pos) {
        *pos += 1;
        return Ok(TreeNode::star(rule, subst));
    }
    let mut branches: Vec<(Formula, TreeNode)> = Vec::new();
    while let Some(&(bn, bl)) = lines.get(*pos) {
        let Some(body) = bl.strip_prefix("branch ") else { break };
        let f = body.trim().strip_suffix('{').ok_or_else(|| syntax(bn, "branch line must end with `{`"))?;
        let f = parse(f, sig).map_err(|e| syntax(bn, e.to_string()))?;
        *pos += 1;
        let child = parse_node(lines, pos, sig)?;
        match lines.get(*pos) {
            Some(&(_, "}")) => *pos += 1,
            Some(&(cn, _)) => return Err(syntax(cn, "expected `}` closing the branch")),
            None => return Err(syntax(bn, "unclosed branch")),
        }
        branches.push((f, child));
    }
    if branches.is_empty() {
        return Err(syntax(n, "a rule node needs `star` or at least one `branch`"));
    }
    Ok(TreeNode::apply(rule, subst, branches))
}

/// Machine-readable form of a derivation file.
pub fn derivation_json(file: &DerivationFile) -> Value {
    let claim = json!({
        "antecedent": file.claim.antecedent.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "succedent": file.claim.succedent.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
    });
    let body = match &file.derivation {
        Derivation::Linear(d) => json!({
            "kind": "linear",
            "steps": d.steps.iter().enumerate().map(|(i, s)| step_json(i, s)).collect::<Vec<_>>(),
        }),
        Derivation::Tree(t) => json!({
            "kind": "tree",
            "root": t.root.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "node": node_json(&t.node),
        }),
    };
    json!({ "system": file.system, "claim": claim, "derivation": body })
}

fn subst_json(s: &Substitution) -> Value {
    Value::Object(s.iter().map(|(v, f)| (v.to_string(), Value::String(f.to_string()))).collect())
}

fn step_json(i: usize, s: &Step) -> Value {
    let formula = s.formula.as_ref().map(|f| f.to_string());
    match &s.justification {
        Justification::Premise => json!({ "index": i + 1, "formula": formula, "premise": true }),
        Justification::Rule { rule, refs, subst } => json!({
            "index": i + 1, "formula": formula, "rule": rule,
            "refs": refs.iter().map(|r| r + 1).collect::<Vec<_>>(), "subst": subst_json(subst),
        }),
        Justification::Chain { rules, refs, substs } => json!({
            "index": i + 1, "formula": formula, "chain": rules,
            "refs": refs.iter().map(|r| r + 1).collect::<Vec<_>>(),
            "substs": substs.iter().map(subst_json).collect::<Vec<_>>(),
        }),
    }
}

fn node_json(n: &TreeNode) -> Value {
    match n {
        TreeNode::Leaf { close } => json!({ "close": close.as_ref().map(|f| f.to_string()) }),
        TreeNode::Apply { rule, subst, children: Children::Star } => {
            json!({ "rule": rule, "subst": subst_json(subst), "star": true })
        }
        TreeNode::Apply { rule, subst, children: Children::Branches(bs) } => json!({
            "rule": rule, "subst": subst_json(subst),
            "branches": bs.iter().map(|(f, c)| json!({ "formula": f.to_string(), "node": node_json(c) })).collect::<Vec<_>>(),
        }),
    }
}

/// Graphviz rendering of a tree derivation: nodes show the formula added on
/// entry, edges are labelled with the rule applied.
pub fn tree_to_dot(t: &TreeDerivation) -> String {
    fn esc(s: &str) -> String {
        s.replace('\\', "\\\\").replace('"', "\\\"")
    }
    fn walk(n: &TreeNode, id: usize, next: &mut usize, out: &mut String) {
        match n {
            TreeNode::Leaf { close } => {
                let label = close.as_ref().map(|f| format!("closed by {f}")).unwrap_or_else(|| "closed".into());
                let leaf = *next;
                *next += 1;
                out.push_str(&format!("  n{leaf} [label=\"{}\", shape=plaintext];\n  n{id} -> n{leaf};\n", esc(&label)));
            }
            TreeNode::Apply { rule, children, .. } => match children {
                Children::Star => {
                    let star = *next;
                    *next += 1;
                    out.push_str(&format!(
                        "  n{star} [label=\"*\", shape=plaintext];\n  n{id} -> n{star} [label=\"{}\"];\n",
                        esc(rule)
                    ));
                }
                Children::Branches(bs) => {
                    for (f, child) in bs {
                        let c = *next;
                        *next += 1;
                        out.push_str(&format!(
                            "  n{c} [label=\"{}\"];\n  n{id} -> n{c} [label=\"{}\"];\n",
                            esc(&f.to_string()),
                            esc(rule)
                        ));
                        walk(child, c, next, out);
                    }
                }
            },
        }
    }
    let mut out = String::from("digraph derivation {\n  node [shape=box];\n");
    out.push_str(&format!("  n0 [label=\"{}\"];\n", esc(&side(&t.root))));
    let mut next = 1;
    walk(&t.node, 0, &mut next, &mut out);
    out.push_str("}\n");
    out
}
