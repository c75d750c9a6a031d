//! Structural and cross-solver properties on seeded random instances.

mod common;

use common::{budget_grid, permute_siblings};

use num_bigint::BigInt;
use proptest::prelude::*;

use goas::batch;
use goas::format::{parse_instance, serialize_instance};
use goas::generator::{
    generate, BudgetPolicy, CostModel, GeneratorConfig, PrizeModel, TreeShape,
};
use goas::harness::{alphabet_d2, config_for, solve_in_mode, VerifyMode};
use goas::instance::contract_zero_cost_edges;
use goas::oracle::{
    brute_force_optimum, enumerate_rooted_subtrees, subtree_count_recurrence,
};
use goas::rational::{rat, ratio, Rational};
use goas::solvers::{
    constant_table_ops, integer_table_ops_bound, recover_strategy, solve_constant,
    solve_constant_with_tables, solve_integer, solve_integer_with_tables, solve_rational_d,
    solve_rational_d_with_tables, DpTable, DEFAULT_D_CAP,
};

fn random_config(seed: u64, n: usize) -> GeneratorConfig {
    GeneratorConfig {
        seed,
        n,
        shape: TreeShape::Random,
        costs: CostModel::UniformInt { lo: 1, hi: 9 },
        prizes: PrizeModel::uniform_int(-5, 20),
        budget: BudgetPolicy::FractionOfTotalCost(ratio(2, 5)),
        threshold: rat(0),
    }
}

#[test]
fn decomposition_partitions_every_subtree() {
    for seed in 0..40u64 {
        let inst = generate(&random_config(seed, 1 + (seed as usize % 14))).unwrap();
        let tree = inst.tree();
        for u in tree.vertex_indices() {
            let d = tree.decompose(u);
            let subtree = tree.subtree_vertices(u);
            assert_eq!(
                d.left_vertices.len() + d.remainder_vertices.len(),
                subtree.len()
            );
            let mut union: Vec<usize> = d
                .left_vertices
                .iter()
                .chain(&d.remainder_vertices)
                .copied()
                .collect();
            union.sort_unstable();
            let mut expect = subtree;
            expect.sort_unstable();
            assert_eq!(union, expect);
        }
    }
}

#[test]
fn enumerator_count_matches_recurrence() {
    for seed in 0..30u64 {
        let inst = generate(&random_config(seed, 1 + (seed as usize % 10))).unwrap();
        let emitted = enumerate_rooted_subtrees(inst.tree()).unwrap().count() as u128;
        assert_eq!(emitted, subtree_count_recurrence(inst.tree()));
    }
}

#[test]
fn contraction_preserves_optimum_on_budget_grid() {
    // Non-negative prizes: lumping a zero-cost child is then harmless.
    let mut checked = 0;
    let mut seed = 0u64;
    while checked < 25 {
        seed += 1;
        let cfg = GeneratorConfig {
            seed,
            n: 2 + (seed as usize % 11),
            costs: CostModel::UniformInt { lo: 0, hi: 4 },
            prizes: PrizeModel::uniform_int(0, 15),
            ..random_config(seed, 0)
        };
        let inst = generate(&cfg).unwrap();
        let has_zero = inst
            .tree()
            .vertex_indices()
            .any(|v| v != inst.tree().root() && inst.cost(v) == &rat(0));
        if !has_zero {
            continue;
        }
        checked += 1;
        let (contracted, _) = contract_zero_cost_edges(&inst);
        for budget in budget_grid(&inst) {
            let before = brute_force_optimum(&inst.with_budget(budget.clone())).unwrap();
            let after = brute_force_optimum(&contracted.with_budget(budget)).unwrap();
            assert_eq!(before.prize, after.prize, "seed {seed}");
        }
    }
}

#[test]
fn cross_solver_agreement_on_unit_costs() {
    for seed in 0..40u64 {
        let cfg = GeneratorConfig {
            costs: CostModel::Constant(rat(1)),
            ..random_config(seed, 1 + (seed as usize % 12))
        };
        let inst = generate(&cfg).unwrap();
        let c = solve_constant(&inst, &rat(1)).unwrap();
        let i = solve_integer(&inst).unwrap();
        let d1 = solve_rational_d(&inst, &[rat(1)]).unwrap();
        assert_eq!(c.prize, i.prize, "seed {seed}");
        assert_eq!(c.prize, d1.prize, "seed {seed}");
        // Each strategy must price back to its reported optimum.
        for res in [&c, &i, &d1] {
            assert_eq!(res.strategy.prize, res.prize);
            assert!(res.strategy.cost <= *inst.budget());
        }
    }
}

#[test]
fn budget_monotonicity() {
    for seed in 0..15u64 {
        let inst = generate(&random_config(seed, 1 + (seed as usize % 10))).unwrap();
        let mut last: Option<Rational> = None;
        for budget in budget_grid(&inst) {
            let res = solve_integer(&inst.with_budget(budget)).unwrap();
            if let Some(prev) = &last {
                assert!(res.prize >= *prev, "seed {seed}");
            }
            last = Some(res.prize);
        }
    }
}

#[test]
fn sibling_order_does_not_change_optima_or_bounds() {
    for seed in 0..20u64 {
        let n = 2 + (seed as usize % 11);
        // Constant-cost check with the exact table count.
        let cfg = GeneratorConfig {
            costs: CostModel::Constant(rat(1)),
            budget: BudgetPolicy::Absolute(rat(((n + 1) / 2) as i64)),
            ..random_config(seed, n)
        };
        let inst = generate(&cfg).unwrap();
        let shuffled = permute_siblings(&inst, seed ^ 0xabcd);
        let a = solve_constant(&inst, &rat(1)).unwrap();
        let b = solve_constant(&shuffled, &rat(1)).unwrap();
        assert_eq!(a.prize, b.prize, "seed {seed}");
        assert_eq!(a.ops, b.ops, "constant-cost count is order independent");

        // Integer check against its bound.
        let cfg = random_config(seed, n);
        let inst = generate(&cfg).unwrap();
        let shuffled = permute_siblings(&inst, seed ^ 0x1234);
        let a = solve_integer(&inst).unwrap();
        let b = solve_integer(&shuffled).unwrap();
        assert_eq!(a.prize, b.prize, "seed {seed}");
        let budget = goas::rational::floor_int(inst.budget());
        let bound = integer_table_ops_bound(inst.tree().vertex_count(), &budget);
        assert!(BigInt::from(a.ops.table_total()) <= bound);
        assert!(BigInt::from(b.ops.table_total()) <= bound);
    }
}

#[test]
fn constant_count_is_exact_on_random_instances() {
    for seed in 0..25u64 {
        let n = 2 + (seed as usize % 14);
        let m = 1 + (seed as usize % (n - 1).max(1));
        let cfg = GeneratorConfig {
            costs: CostModel::Constant(rat(1)),
            budget: BudgetPolicy::Absolute(rat(m as i64)),
            ..random_config(seed, n)
        };
        let inst = generate(&cfg).unwrap();
        let res = solve_constant(&inst, &rat(1)).unwrap();
        assert_eq!(
            res.ops.table_total(),
            constant_table_ops(inst.tree().vertex_count(), m),
            "seed {seed} n {n} m {m}"
        );
    }
}

#[test]
fn recover_strategy_is_deterministic_across_table_kinds() {
    for seed in 0..12u64 {
        let n = 2 + (seed as usize % 9);

        let cfg = GeneratorConfig {
            costs: CostModel::Constant(rat(1)),
            budget: BudgetPolicy::Absolute(rat((n as i64) / 2)),
            ..random_config(seed, n)
        };
        let inst = generate(&cfg).unwrap();
        let (res, tables) = solve_constant_with_tables(&inst, &rat(1)).unwrap();
        let table = DpTable::Constant(tables);
        let recovered = recover_strategy(&table, &inst);
        assert_eq!(recovered, res.strategy);
        assert_eq!(recover_strategy(&table, &inst), recovered, "repeatable");

        let inst = generate(&random_config(seed, n)).unwrap();
        let (res, tables) = solve_integer_with_tables(&inst).unwrap();
        let recovered = recover_strategy(&DpTable::Integer(tables), &inst);
        assert_eq!(recovered, res.strategy);

        let cfg = GeneratorConfig {
            costs: CostModel::Alphabet {
                values: alphabet_d2(),
                weights: None,
            },
            ..random_config(seed, n)
        };
        let inst = generate(&cfg).unwrap();
        let (res, tables) =
            solve_rational_d_with_tables(&inst, &alphabet_d2(), DEFAULT_D_CAP).unwrap();
        let recovered = recover_strategy(&DpTable::RationalD(tables), &inst);
        assert_eq!(recovered, res.strategy);
    }
}

#[test]
fn negative_budget_is_rejected_at_build() {
    let err = goas::build_instance(
        &[("r".to_string(), rat(0))],
        &[],
        "r",
        rat(-1),
        rat(0),
    )
    .unwrap_err();
    assert_eq!(err, goas::tree::BuildError::NegativeBudget);
}

#[test]
fn parallel_sweep_equals_sequential_sweep() {
    let mode = VerifyMode::Rational2;
    let seeds: Vec<u64> = (0..16).collect();
    let solve = |seed: &u64| {
        let inst = generate(&config_for(&mode, *seed, 9)).unwrap();
        let res = solve_in_mode(&mode, &inst).unwrap();
        (res.prize.clone(), res.ops, res.strategy.vertices.clone())
    };
    assert_eq!(batch::map(&seeds, solve), batch::map_sequential(&seeds, solve));
    // Same alphabet the sweep used.
    assert_eq!(alphabet_d2().len(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // Build → serialize → parse → identical structure, numbers and order.
    #[test]
    fn serialization_round_trips(seed in 0u64..10_000, n in 0usize..16, kind in 0u8..3) {
        let costs = match kind {
            0 => CostModel::Constant(ratio(1, 2)),
            1 => CostModel::UniformInt { lo: 0, hi: 7 },
            _ => CostModel::Alphabet { values: vec![ratio(1, 3), ratio(5, 2), rat(2)], weights: None },
        };
        let cfg = GeneratorConfig {
            seed,
            n,
            shape: if seed % 3 == 0 { TreeShape::Random } else if seed % 3 == 1 { TreeShape::Star } else { TreeShape::BAry(3) },
            costs,
            prizes: PrizeModel { lo: ratio(-7, 2), hi: ratio(33, 2), denominator: 4, allow_negative: true },
            budget: BudgetPolicy::FractionOfTotalCost(ratio(1, 3)),
            threshold: ratio(7, 3),
        };
        let inst = generate(&cfg).unwrap();
        let text = serialize_instance(&inst, None);
        let parsed = parse_instance(&text).unwrap();
        prop_assert_eq!(&parsed.instance, &inst);
        prop_assert_eq!(serialize_instance(&parsed.instance, None), text);
    }

    // The recovered strategy always re-prices to the reported optimum.
    #[test]
    fn recovered_strategies_are_self_consistent(seed in 0u64..2_000) {
        let n = 1 + (seed as usize % 10);
        let inst = generate(&random_config(seed, n)).unwrap();
        let res = solve_integer(&inst).unwrap();
        let (cost, prize) =
            goas::instance::strategy_cost_prize(&inst, &res.strategy.vertices).unwrap();
        prop_assert_eq!(cost, res.strategy.cost.clone());
        prop_assert_eq!(prize, res.prize.clone());
        prop_assert!(res.strategy.cost <= *inst.budget());
    }
}
