//! Every bundled derivation, checked against its system.

use wkh::calculus::Derivation;
use wkh::corpus::{get_derivation, get_system, DERIVATIONS, SYSTEM_IDS};

fn main() {
    for id in SYSTEM_IDS {
        let s = get_system(id).unwrap();
        println!("{id}: {} rules, {} derived", s.rules().len(), s.derived_rules().count());
    }
    for entry in DERIVATIONS.iter() {
        let d = get_derivation(entry.id).unwrap();
        let size = match &d.file.derivation {
            Derivation::Linear(l) => format!("{} steps", l.len()),
            Derivation::Tree(t) => format!("{} nodes", t.node.size()),
        };
        println!("{:<22} {:<10} {size:<10} {}", entry.id, d.file.system, d.file.claim);
    }
}
