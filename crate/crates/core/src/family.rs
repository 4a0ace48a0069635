//! Formula and statement families for exhaustive and sampled checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calculus::Statement;
use crate::formula::{canonical_set, Formula};

/// Every formula over `vars` in `¬, ∧, ∨` with depth at most `depth`,
/// in canonical order.
pub fn all_formulas(vars: &[&str], depth: usize) -> Vec<Formula> {
    let mut layer: Vec<Formula> = vars.iter().map(|v| Formula::var(v)).collect();
    let mut all = layer.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for a in &all {
            next.push(Formula::not(a.clone()));
            for b in &all {
                next.push(Formula::and(a.clone(), b.clone()));
                next.push(Formula::or(a.clone(), b.clone()));
            }
        }
        layer = next;
        all.extend(layer.iter().cloned());
        all = canonical_set(all);
    }
    all
}

/// A random formula over `vars` with depth at most `depth`.
pub fn random_formula(rng: &mut impl Rng, vars: &[&str], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return Formula::var(vars.choose(rng).expect("at least one variable"));
    }
    match rng.gen_range(0..3) {
        0 => Formula::not(random_formula(rng, vars, depth - 1)),
        1 => Formula::and(random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1)),
        _ => Formula::or(random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1)),
    }
}

/// A reproducible generator seeded with `seed`.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` distinct formulas of depth exactly `depth`, sampled with `seed`.
pub fn sample_formulas(seed: u64, n: usize, vars: &[&str], depth: usize) -> Vec<Formula> {
    let mut pool: Vec<Formula> = all_formulas(vars, depth)
        .into_iter()
        .filter(|f| formula_depth(f) == depth)
        .collect();
    let mut rng = seeded(seed);
    pool.shuffle(&mut rng);
    pool.truncate(n);
    canonical_set(pool)
}

fn formula_depth(f: &Formula) -> usize {
    f.depth()
}

/// All subsets of `pool` with at most `max` elements, smallest first.
pub fn subsets(pool: &[Formula], max: usize) -> Vec<Vec<Formula>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(usize, Vec<Formula>)> = vec![(0, Vec::new())];
    for _ in 0..max {
        let mut next = Vec::new();
        for (start, set) in &frontier {
            for i in *start..pool.len() {
                let mut s = set.clone();
                s.push(pool[i].clone());
                out.push(s.clone());
                next.push((i + 1, s));
            }
        }
        frontier = next;
    }
    out
}

/// Every statement with both sides drawn from `pool`, each side of size at
/// most `max_side`.
pub fn statements(pool: &[Formula], max_side: usize) -> Vec<Statement> {
    let sides = subsets(pool, max_side);
    let mut out = Vec::with_capacity(sides.len() * sides.len());
    for a in &sides {
        for b in &sides {
            out.push(Statement::new(a.clone(), b.clone()));
        }
    }
    out
}

/// `n` statements sampled with `seed`. Each side has at most `max_side`
/// formulas taken from `pool` or from random formulas of depth exactly
/// `depth` over `vars`, and every statement contains at least one of the latter.
pub fn sample_statements(seed: u64, n: usize, pool: &[Formula], vars: &[&str], depth: usize, max_side: usize) -> Vec<Statement> {
    let deep = all_formulas(vars, depth).into_iter().filter(|f| f.depth() == depth).collect::<Vec<_>>();
    let mut rng = seeded(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let pick = |rng: &mut ChaCha8Rng| -> Vec<Formula> {
            let k = rng.gen_range(0..=max_side);
            (0..k)
                .map(|_| if rng.gen_bool(0.5) { deep.choose(rng).unwrap().clone() } else { pool.choose(rng).unwrap().clone() })
                .collect()
        };
        let (a, b) = (pick(&mut rng), pick(&mut rng));
        if a.iter().chain(&b).any(|f| f.depth() == depth) {
            out.push(Statement::new(a, b));
        }
    }
    out
}

/// The exhaustive family over `vars` at `depth` plus `sample` seeded
/// statements that each mention a formula one level deeper.
pub fn desk_family(vars: &[&str], depth: usize, max_side: usize, sample: usize, seed: u64) -> Vec<Statement> {
    let pool = all_formulas(vars, depth);
    let mut out = statements(&pool, max_side);
    out.extend(sample_statements(seed, sample, &pool, vars, depth + 1, max_side));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_one_over_two_variables() {
        // p, q, ~p, ~q and the eight binary combinations.
        assert_eq!(all_formulas(&["p", "q"], 1).len(), 12);
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = sample_formulas(7, 20, &["p", "q"], 2);
        assert_eq!(a, sample_formulas(7, 20, &["p", "q"], 2));
        assert!(a.iter().all(|f| formula_depth(f) == 2));
    }

    #[test]
    fn subset_counts() {
        let pool = all_formulas(&["p"], 0);
        assert_eq!(subsets(&pool, 2).len(), 2);
        let pool = all_formulas(&["p", "q"], 0);
        assert_eq!(subsets(&pool, 2).len(), 4);
    }
}
