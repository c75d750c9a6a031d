//! The container-model conversion against a direct implementation of
//! the container semantics: a set of containers is a valid attack iff
//! it is closed under penetration lists; it pays the sum of the
//! penetration costs and acquires every target whose level-1 location
//! is in the set.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use goas::oracle::brute_force_optimum;
use goas::rational::{rat, Rational};
use goas::reductions::{containers_to_tree, ContainerDecl, ContainerModel, TargetDecl};

/// Randomly nested model with ≤ 10 containers; penetration lists are
/// ancestor chains by construction.
fn random_nested_model(seed: u64) -> ContainerModel {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let count = 1 + rng.gen_range(0..10) as usize;
    let mut parents: Vec<Option<usize>> = Vec::with_capacity(count);
    let mut chains: Vec<Vec<String>> = Vec::with_capacity(count);
    let mut containers = Vec::with_capacity(count);
    for i in 0..count {
        // Top-level with probability ~1/3, else nested in an earlier one.
        let parent = if i == 0 || rng.gen_range(0..3) == 0 {
            None
        } else {
            Some(rng.gen_range(0..i))
        };
        parents.push(parent);
        let chain = match parent {
            None => Vec::new(),
            Some(p) => {
                let mut c = chains[p].clone();
                c.push(format!("c{p}"));
                c
            }
        };
        chains.push(chain.clone());
        containers.push(ContainerDecl {
            id: format!("c{i}"),
            cost: rat(rng.gen_range(1..=6)),
            penetration: chain,
        });
    }
    let target_count = rng.gen_range(1..=8) as usize;
    let targets = (0..target_count)
        .map(|t| TargetDecl {
            id: format!("t{t}"),
            value: rat(rng.gen_range(0..=12)),
            location: format!("c{}", rng.gen_range(0..count)),
        })
        .collect();
    let total: i64 = (0..count).map(|_| 6).sum();
    ContainerModel {
        containers,
        targets,
        budget: rat(rng.gen_range(0..=total / 2)),
        threshold: rat(0),
    }
}

/// Direct optimum in the container semantics.
fn container_semantics_optimum(cm: &ContainerModel) -> Rational {
    let count = cm.containers.len();
    assert!(count <= 16);
    let index_of = |id: &str| cm.containers.iter().position(|c| c.id == id).unwrap();
    let mut best = rat(0); // attacking nothing is always valid
    for mask in 0u32..(1 << count) {
        let closed = cm.containers.iter().enumerate().all(|(i, c)| {
            mask & (1 << i) == 0
                || c.penetration
                    .iter()
                    .all(|dep| mask & (1 << index_of(dep)) != 0)
        });
        if !closed {
            continue;
        }
        let cost: Rational = cm
            .containers
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, c)| c.cost.clone())
            .sum();
        if cost > cm.budget {
            continue;
        }
        let value: Rational = cm
            .targets
            .iter()
            .filter(|t| mask & (1 << index_of(&t.location)) != 0)
            .map(|t| t.value.clone())
            .sum();
        if value > best {
            best = value;
        }
    }
    best
}

#[test]
fn conversion_matches_container_semantics() {
    for seed in 0..60u64 {
        let cm = random_nested_model(seed);
        let inst = containers_to_tree(&cm).expect("nested by construction");
        let via_tree = brute_force_optimum(&inst).unwrap().prize;
        let direct = container_semantics_optimum(&cm);
        assert_eq!(via_tree, direct, "seed {seed}");
    }
}

#[test]
fn hand_built_chain_with_side_branch() {
    // outer(2) holds inner(3) and a flat side container(1); values force
    // choosing the deep chain at budget 5 and the side at budget 3.
    let cm = ContainerModel {
        containers: vec![
            ContainerDecl {
                id: "outer".into(),
                cost: rat(2),
                penetration: vec![],
            },
            ContainerDecl {
                id: "inner".into(),
                cost: rat(3),
                penetration: vec!["outer".into()],
            },
            ContainerDecl {
                id: "side".into(),
                cost: rat(1),
                penetration: vec!["outer".into()],
            },
        ],
        targets: vec![
            TargetDecl {
                id: "crown".into(),
                value: rat(10),
                location: "inner".into(),
            },
            TargetDecl {
                id: "trinket".into(),
                value: rat(4),
                location: "side".into(),
            },
        ],
        budget: rat(5),
        threshold: rat(0),
    };
    let inst = containers_to_tree(&cm).unwrap();
    assert_eq!(brute_force_optimum(&inst).unwrap().prize, rat(10));
    assert_eq!(container_semantics_optimum(&cm), rat(10));

    let cheaper = ContainerModel {
        budget: rat(3),
        ..cm
    };
    let inst = containers_to_tree(&cheaper).unwrap();
    assert_eq!(brute_force_optimum(&inst).unwrap().prize, rat(4));
    assert_eq!(container_semantics_optimum(&cheaper), rat(4));
}
