//! Dualization, disjunctive conversion, rule lifting and the containment condition.

use wkh::calculus::SearchConfig;
use wkh::corpus::get_system;
use wkh::transforms::{
    compare_systems, dualize_system, lift_rule_default, or_convert_system, rule_derivable, satisfies_containment,
    FreshNamer, LiftMode,
};

fn main() {
    let r_pwk = get_system("R_PWK").unwrap();
    let dual = dualize_system(&r_pwk).unwrap();
    let cmp = compare_systems(&dual, &get_system("R_BK").unwrap());
    println!("dual of R_PWK vs R_BK: {} matched, identical: {}", cmp.matched.len(), cmp.identical());

    let conv = or_convert_system(&r_pwk, &mut FreshNamer::for_system(&r_pwk)).unwrap();
    let h_pwk = get_system("H_PWK").unwrap();
    let cmp = compare_systems(&conv.system, &h_pwk);
    println!("converted R_PWK vs H_PWK: {} matched, discarded {:?}", cmp.matched.len(), conv.discarded);
    println!("  only in conversion: {:?}, only in H_PWK: {:?}", cmp.only_left, cmp.only_right);
    let cfg = SearchConfig::default();
    for name in &cmp.only_left {
        let st = rule_derivable(&h_pwk, conv.system.rule(name).unwrap(), &cfg).unwrap();
        println!("  {name} in H_PWK: {st:?}");
    }

    let h_bk = get_system("H_BK").unwrap();
    for name in ["BK4", "BK20", "BK1*"] {
        let r = h_bk.rule(name).unwrap();
        println!("{r}: containment {}", satisfies_containment(r));
        println!("  {}", lift_rule_default(r, LiftMode::Or));
        println!("  {}", lift_rule_default(r, LiftMode::Imp));
    }
}
