//! Analytic proof search in the multiple-conclusion systems, with tree output.

use wkh::calculus::{prove_setset_analytic, tree_to_dot, verify_tree, write_tree, SearchConfig, SearchOutcome, Statement};
use wkh::corpus::get_system;
use wkh::formula::Signature;

fn main() {
    let sig = Signature::and_or_not();
    let cfg = SearchConfig::default();
    for (sys, claim) in [("R_PWK", "- |- p | ~p"), ("R_BK", "- |- p | ~p"), ("SS-CL", "~(p & q) |- ~p, ~q")] {
        let s = get_system(sys).unwrap();
        let claim = Statement::parse(claim, &sig).unwrap();
        match prove_setset_analytic(&s, &claim, &cfg).unwrap() {
            SearchOutcome::Proved(t) => {
                verify_tree(&s, &t, &claim).unwrap();
                print!("{}", write_tree(sys, &claim, &t));
                if sys == "SS-CL" {
                    print!("{}", tree_to_dot(&t));
                }
            }
            other => println!("{claim} in {sys}: {other:?}"),
        }
    }
}
