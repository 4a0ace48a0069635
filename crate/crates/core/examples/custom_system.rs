//! Defining a system and a derivation in the text formats, then checking them.

use wkh::calculus::{parse_derivation_file, verify_linear, Derivation, HSystem};
use wkh::corpus::get_matrix;
use wkh::calculus::rule_sound;
use wkh::formula::Signature;

const SYSTEM: &str = "\
system MINI setfmla and-or-not
rule and-in : p, q |- p & q
rule and-out : p & q |- q
rule or-in : p |- p | q
";

const PROOF: &str = "\
system: MINI
claim: p, q |- q & p | r
1. premise p
2. premise q
3. and-in [2,1] => q & p
4. or-in [3] {p:=q & p, q:=r} => q & p | r
qed 4
";

fn main() {
    let sys = HSystem::from_text(SYSTEM).unwrap();
    let bk = get_matrix("BK").unwrap();
    for r in sys.rules() {
        println!("{r}: sound in BK: {}", rule_sound(&bk, r).holds);
    }
    let file = parse_derivation_file(PROOF, &|name| (name == "MINI").then(Signature::and_or_not)).unwrap();
    let Derivation::Linear(d) = &file.derivation else { unreachable!() };
    let e = verify_linear(&sys, d, &file.claim).unwrap();
    println!("accepted {} in {} steps", file.claim, e.len());
}
