//! The classical, variable-inclusion descriptions of PWK and BK checked against the matrices.

use wkh::corpus::get_matrix;
use wkh::family::{random_formula, seeded};
use wkh::semantics::{companion_oracle, consequence_holds, WeakKleene};

fn main() {
    let (pwk, bk) = (get_matrix("PWK").unwrap(), get_matrix("BK").unwrap());
    let mut rng = seeded(42);
    let vars = ["p", "q", "r"];
    let (mut valid_pwk, mut valid_bk) = (0, 0);
    for _ in 0..500 {
        let gamma: Vec<_> = (0..2).map(|_| random_formula(&mut rng, &vars, 2)).collect();
        let psi = random_formula(&mut rng, &vars, 2);
        let goal = std::slice::from_ref(&psi);
        let p = consequence_holds(&pwk, &gamma, goal).holds;
        let b = consequence_holds(&bk, &gamma, goal).holds;
        assert_eq!(p, companion_oracle(WeakKleene::Pwk, &gamma, &psi));
        assert_eq!(b, companion_oracle(WeakKleene::Bk, &gamma, &psi));
        valid_pwk += usize::from(p);
        valid_bk += usize::from(b);
    }
    println!("500 random statements: {valid_pwk} valid in PWK, {valid_bk} valid in BK, oracles agree on all");
}
