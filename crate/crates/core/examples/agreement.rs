//! Search against truth tables over every small statement in two variables.

use wkh::calculus::SearchConfig;
use wkh::cli::compare_family;
use wkh::corpus::{get_matrix, get_system};
use wkh::family::desk_family;

fn main() {
    let family = desk_family(&["p", "q"], 1, 2, 50, 1);
    let cfg = SearchConfig::default();
    for (s, m) in [("R_PWK", "PWK"), ("R_BK", "BK"), ("SS-CL", "CL2"), ("SS-CL", "PWK")] {
        let rep = compare_family(&get_system(s).unwrap(), &get_matrix(m).unwrap(), &family, &cfg).unwrap();
        println!(
            "{s} vs {m}: {} statements, {} agree, {} disagree, {} proofs",
            rep.statements,
            rep.agreements,
            rep.disagreements.len(),
            rep.proofs
        );
        if let Some((claim, found, semantic)) = rep.disagreements.first() {
            println!("  e.g. {claim}: search {found}, matrix {semantic}");
        }
    }
}
