//! Parsing, printing, substitution and pattern matching.

use wkh::formula::{match_schema, parse, parse_formula, theta_subformulas, Signature, Substitution};

fn main() {
    let sig = Signature::and_or_not();
    let f = parse("~(p & q) | r", &sig).unwrap();
    println!("{f}  (size {}, depth {})", f.size(), f.depth());

    // `->` is shorthand for `~a | b` unless the signature has a real arrow.
    let imp = parse_formula("p -> q", &sig, true).unwrap();
    println!("p -> q expands to {imp}");

    let s = Substitution::from_pairs([("p", parse("a | b", &sig).unwrap()), ("r", parse("~c", &sig).unwrap())]);
    let g = s.apply(&f);
    println!("{s} gives {g}");

    let pattern = parse("~(p & q) | r", &sig).unwrap();
    let found = match_schema(&pattern, &g).unwrap();
    println!("matching recovers {found}");

    let theta = [parse("x", &sig).unwrap(), parse("~x", &sig).unwrap()];
    let sub = theta_subformulas(&[], &[parse("p | q", &sig).unwrap()], &theta).unwrap();
    println!("{{x, ~x}}-subformulas of p | q: {}", sub.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", "));
}
