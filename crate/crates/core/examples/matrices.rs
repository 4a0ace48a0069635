//! Truth tables, consequence checking and countermodels in the weak Kleene matrices.

use wkh::corpus::get_matrix;
use wkh::formula::{parse, parse_list, Signature};
use wkh::semantics::{check_matrix_renaming, check_monadicity, consequence_holds, evaluate, Valuation};

fn main() {
    let sig = Signature::and_or_not();
    let pwk = get_matrix("PWK").unwrap();
    let bk = get_matrix("BK").unwrap();

    let f = parse("p | ~p", &sig).unwrap();
    for val in ["f", "u", "t"] {
        let v = Valuation::from_names(&pwk.algebra, &[("p", val)]);
        let out = evaluate(&f, &pwk.algebra, &v).unwrap();
        println!("p={val}: {f} = {}", pwk.algebra.value_name(out));
    }

    for (m, lhs, rhs) in [(&pwk, "p, ~p", "q"), (&bk, "p, ~p", "q"), (&bk, "q", "(p | q) | ~(p | q)")] {
        let (a, b) = (parse_list(lhs, &sig).unwrap(), parse_list(rhs, &sig).unwrap());
        let verdict = consequence_holds(m, &a, &b);
        match verdict.countermodel {
            None => println!("{}: {lhs} |- {rhs} holds", m.name),
            Some(v) => println!("{}: {lhs} |- {rhs} fails at {}", m.name, v.display(&m.algebra)),
        }
    }

    let theta = [parse("x", &sig).unwrap(), parse("~x", &sig).unwrap()];
    for m in [&pwk, &bk] {
        let rep = check_monadicity(m, &theta);
        for e in &rep.entries {
            let (x, y) = e.pair;
            let sep = e.separator.as_ref().map_or("none".to_string(), |s| s.to_string());
            println!("{}: ({},{}) separated by {sep}", m.name, m.algebra.value_name(x), m.algebra.value_name(y));
        }
    }

    let mprime = get_matrix("Mprime").unwrap();
    println!("BK and Mprime related by t<->f: {}", check_matrix_renaming(&bk, &mprime, &[2, 1, 0]));
}
