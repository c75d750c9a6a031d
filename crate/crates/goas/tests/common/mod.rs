//! Helpers shared by the integration suites.
#![allow(dead_code)] // each test target uses its own subset

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use goas::instance::{build_instance, Instance};
use goas::rational::{rat, Rational};

/// Rebuilds the instance with every sibling list shuffled (seeded).
/// Optimum values must not depend on the planted order.
pub fn permute_siblings(inst: &Instance, seed: u64) -> Instance {
    let tree = inst.tree();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let vertices: Vec<(String, Rational)> = tree
        .vertex_indices()
        .map(|v| (tree.id(v).to_string(), inst.prize(v).clone()))
        .collect();
    let mut edges: Vec<(String, String, Rational)> = Vec::new();
    for u in tree.vertex_indices() {
        let mut kids: Vec<usize> = tree.children(u).to_vec();
        // Fisher-Yates with the seeded generator.
        for i in (1..kids.len()).rev() {
            let j = rng.gen_range(0..=i);
            kids.swap(i, j);
        }
        for c in kids {
            edges.push((
                tree.id(u).to_string(),
                tree.id(c).to_string(),
                inst.cost(c).clone(),
            ));
        }
    }
    build_instance(
        &vertices,
        &edges,
        tree.id(tree.root()),
        inst.budget().clone(),
        inst.threshold().clone(),
    )
    .expect("permutation preserves validity")
}

/// Five budgets spanning 0 ..= total edge cost.
pub fn budget_grid(inst: &Instance) -> Vec<Rational> {
    let total = inst.total_cost();
    if total.is_zero() {
        return vec![rat(0); 5];
    }
    (0..5)
        .map(|i| &total * Rational::new(i.into(), 4.into()))
        .collect()
}
