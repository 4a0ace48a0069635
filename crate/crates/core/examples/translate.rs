//! Turning R_BK_star trees into linear H_BK proofs.

use wkh::calculus::{
    prove_setset_analytic, star_universe, verify_linear, write_linear, SearchConfig, SearchOutcome, Statement, Universe,
};
use wkh::corpus::get_system;
use wkh::formula::Signature;
use wkh::transforms::translate_bk;

fn main() {
    let sig = Signature::and_or_not();
    let (star, h) = (get_system("R_BK_star").unwrap(), get_system("H_BK").unwrap());
    for text in ["~(p & q) |- ~p | ~q", "~(p | q) |- ~q", "p & q |- q | p"] {
        let claim = Statement::parse(text, &sig).unwrap();
        let base = SearchConfig::default();
        let cfg = SearchConfig { universe: Universe::Explicit(star_universe(&claim, &base).unwrap()), ..base };
        let SearchOutcome::Proved(t) = prove_setset_analytic(&star, &claim, &cfg).unwrap() else {
            println!("{claim}: not provable in R_BK_star");
            continue;
        };
        let d = translate_bk(&star, &h, &t, &claim).unwrap();
        let expanded = verify_linear(&h, &d, &claim).unwrap();
        println!("{claim}: tree of {} nodes, {} lines, {} primitive steps", t.node.size(), d.len(), expanded.len());
        if text.starts_with("~(p |") {
            print!("{}", write_linear("H_BK", &claim, &d));
        }
    }
}
