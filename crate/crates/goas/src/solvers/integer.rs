//! Positive integer penetration costs: rows are indexed by the spent
//! budget k ∈ 0..⌊B⌋ ("total cost at most k"), pseudo-polynomial in B.
//!
//! Zero-cost edges must be contracted away before calling; a fractional
//! budget is floored.  When ⌊B⌋ covers the total edge cost the whole
//! tree is returned without building tables (the analogue of the m ≥ n
//! shortcut of the constant solver).

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::instance::{Instance, Strategy};
use crate::rational::{floor_int, is_integer, to_usize};

use super::{
    build_tables, whole_tree_strategy, Entry, OpCounts, SolveError, SolveResult, SolverTag,
    VertexRows,
};

/// Retained tables of an integer-cost run.
#[derive(Debug, Clone)]
pub struct IntegerTables {
    /// ⌊B⌋ as the last row index.
    pub budget: usize,
    /// Parent-edge cost per vertex (0 at the root).
    pub(crate) edge_cost: Vec<usize>,
    /// `None` when the whole tree was affordable.
    pub(crate) per_vertex: Option<Vec<VertexRows>>,
}

/// Solves GOAS-OP for positive integer costs in O(B²n) operations.
pub fn solve_integer(inst: &Instance) -> Result<SolveResult, SolveError> {
    solve_integer_with_tables(inst).map(|(res, _)| res)
}

/// As [`solve_integer`], additionally returning the tables.
pub fn solve_integer_with_tables(
    inst: &Instance,
) -> Result<(SolveResult, IntegerTables), SolveError> {
    let tree = inst.tree();
    let mut total = BigInt::zero();
    for v in tree.vertex_indices() {
        if v == tree.root() {
            continue;
        }
        let c = inst.cost(v);
        if !is_integer(c) {
            return Err(SolveError::NonIntegerCost {
                edge: tree.id(v).to_string(),
                cost: c.clone(),
            });
        }
        if c.is_zero() {
            return Err(SolveError::ZeroCostEdgePresent {
                edge: tree.id(v).to_string(),
            });
        }
        total += c.to_integer();
    }

    let budget_int = floor_int(inst.budget());
    let ample = budget_int >= total;
    let prizes_non_negative = tree
        .vertex_indices()
        .all(|v| !inst.prize(v).is_negative());
    if ample && prizes_non_negative {
        // Everything is affordable and nothing in the tree hurts.
        let strategy = whole_tree_strategy(inst);
        let result = SolveResult {
            prize: strategy.prize.clone(),
            goas_met: strategy.prize >= *inst.threshold(),
            strategy,
            ops: OpCounts::default(),
            solver: SolverTag::Integer {
                effective_budget: budget_int.clone(),
                trivial: true,
            },
        };
        let tables = IntegerTables {
            budget: 0,
            edge_cost: vec![0; tree.vertex_count()],
            per_vertex: None,
        };
        return Ok((result, tables));
    }

    // Beyond the total cost the tables saturate, so an ample budget
    // (reachable only with negative prizes) is clamped to it.
    let budget_eff = if ample { total } else { budget_int };
    let budget = to_usize(&budget_eff).ok_or_else(|| SolveError::TableTooLarge {
        detail: format!("budget {budget_eff} columns"),
    })?;
    // Costs above the budget never enter a combine; clamping them keeps
    // the conversion to usize safe for arbitrarily large costs.
    let edge_cost: Vec<usize> = tree
        .vertex_indices()
        .map(|v| {
            if v == tree.root() {
                return 0;
            }
            let c = inst.cost(v).to_integer();
            if c > BigInt::from(budget) {
                budget + 1
            } else {
                to_usize(&c).expect("bounded by budget")
            }
        })
        .collect();

    let base = |u: usize| vec![Entry::Value(inst.prize(u).clone()); budget + 1];
    let combine = |_u: usize, child: usize, left: &[Entry], right: &[Entry], ops: &mut OpCounts| {
        combine_row(budget, edge_cost[child], left, right, ops)
    };
    let (per_vertex, ops) = build_tables(tree, base, combine);

    let tables = IntegerTables {
        budget,
        edge_cost,
        per_vertex: Some(per_vertex),
    };
    let strategy = recover(&tables, inst);
    let prize = tables.per_vertex.as_ref().unwrap()[tree.root()].top()[budget]
        .value()
        .expect("integer tables hold no sentinels in range")
        .clone();
    debug_assert_eq!(strategy.prize, prize);

    let result = SolveResult {
        goas_met: prize >= *inst.threshold(),
        prize,
        strategy,
        ops,
        solver: SolverTag::Integer {
            effective_budget: BigInt::from(budget),
            trivial: false,
        },
    };
    Ok((result, tables))
}

/// out[k] = max(right[k], max_{c≤j≤k} left[j−c] ⊕ right[k−j]); entries
/// below the edge cost cannot include the edge and are plain copies.
fn combine_row(
    budget: usize,
    cost: usize,
    left: &[Entry],
    right: &[Entry],
    ops: &mut OpCounts,
) -> Vec<Entry> {
    let mut out = Vec::with_capacity(budget + 1);
    for k in 0..=budget {
        if k < cost {
            out.push(right[k].clone());
            continue;
        }
        let mut best = right[k].clone();
        for j in cost..=k {
            let cand = ops.counted_add(&left[j - cost], &right[k - j]);
            ops.counted_max(&mut best, cand);
        }
        out.push(best);
    }
    out
}

pub(super) fn recover(tables: &IntegerTables, inst: &Instance) -> Strategy {
    let tree = inst.tree();
    let per_vertex = match &tables.per_vertex {
        None => return whole_tree_strategy(inst),
        Some(rows) => rows,
    };
    let mut members = vec![tree.root()];
    let mut stack = vec![(tree.root(), 0usize, tables.budget)];
    while let Some((u, i, k)) = stack.pop() {
        if i == tree.child_count(u) {
            continue;
        }
        let rows = &per_vertex[u].rows;
        let val = &rows[i][k];
        if *val == rows[i + 1][k] {
            stack.push((u, i + 1, k));
            continue;
        }
        let child = tree.children(u)[i];
        let cost = tables.edge_cost[child];
        let left = per_vertex[child].top();
        let right = &rows[i + 1];
        let mut split = None;
        for j in cost..=k {
            if left[j - cost].add(&right[k - j]) == *val {
                split = Some(j);
                break;
            }
        }
        let j = split.expect("table value must decompose");
        members.push(child);
        stack.push((child, 0, j - cost));
        stack.push((u, i + 1, k - j));
    }
    Strategy::new(inst, &members).expect("recovered set is a rooted subtree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::solvers::integer_table_ops_bound;
    use crate::testutil::{instance, strategy_ids};

    #[test]
    fn path_with_costs_two_three() {
        // Subtrees: {r} (0), {r,a} (cost 2, prize 1), {r,a,b} (cost 5, prize 101).
        let inst = instance(
            &[("r", "0"), ("a", "1"), ("b", "100")],
            &[("r", "a", "2"), ("a", "b", "3")],
            "4",
            "0",
        );
        let res = solve_integer(&inst).unwrap();
        assert_eq!(res.prize, rat(1));
        let res = solve_integer(&inst.with_budget(rat(5))).unwrap();
        assert_eq!(res.prize, rat(101));
        assert_eq!(strategy_ids(&inst, &res.strategy), ["a", "b", "r"]);
    }

    #[test]
    fn zero_budget_buys_only_the_root() {
        let inst = instance(
            &[("r", "2"), ("a", "50")],
            &[("r", "a", "1")],
            "0",
            "0",
        );
        let res = solve_integer(&inst).unwrap();
        assert_eq!(res.prize, rat(2));
        assert_eq!(strategy_ids(&inst, &res.strategy), ["r"]);
    }

    #[test]
    fn knapsack_star() {
        // Items (w=2,v=3), (w=3,v=4), (w=4,v=5), capacity 5: best is 3+4.
        let inst = instance(
            &[("r", "0"), ("i1", "3"), ("i2", "4"), ("i3", "5")],
            &[("r", "i1", "2"), ("r", "i2", "3"), ("r", "i3", "4")],
            "5",
            "0",
        );
        let res = solve_integer(&inst).unwrap();
        assert_eq!(res.prize, rat(7));
        assert_eq!(res.strategy.cost, rat(5));
    }

    #[test]
    fn fractional_budget_is_floored() {
        let inst = instance(
            &[("r", "0"), ("a", "9")],
            &[("r", "a", "3")],
            "29/10",
            "0",
        );
        let res = solve_integer(&inst).unwrap();
        assert_eq!(res.prize, rat(0)); // ⌊2.9⌋ = 2 < 3
    }

    #[test]
    fn rejects_non_integer_and_zero_costs() {
        let inst = instance(
            &[("r", "0"), ("a", "1")],
            &[("r", "a", "1/2")],
            "1",
            "0",
        );
        assert!(matches!(
            solve_integer(&inst).unwrap_err(),
            SolveError::NonIntegerCost { .. }
        ));
        let inst = instance(
            &[("r", "0"), ("a", "1"), ("b", "1")],
            &[("r", "a", "1"), ("a", "b", "0")],
            "1",
            "0",
        );
        assert_eq!(
            solve_integer(&inst).unwrap_err(),
            SolveError::ZeroCostEdgePresent { edge: "b".into() }
        );
    }

    #[test]
    fn whole_tree_shortcut_when_budget_covers_total() {
        let inst = instance(
            &[("r", "1"), ("a", "2"), ("b", "4")],
            &[("r", "a", "3"), ("a", "b", "5")],
            "8",
            "0",
        );
        let res = solve_integer(&inst).unwrap();
        assert_eq!(res.prize, rat(7));
        assert!(matches!(res.solver, SolverTag::Integer { trivial: true, .. }));
        assert_eq!(res.ops.table_total(), 0);
    }

    #[test]
    fn op_count_stays_under_bound() {
        let inst = instance(
            &[("r", "0"), ("a", "5"), ("b", "3"), ("c", "2"), ("d", "8")],
            &[("r", "a", "1"), ("r", "b", "2"), ("a", "c", "3"), ("a", "d", "1")],
            "5",
            "0",
        );
        let res = solve_integer(&inst).unwrap();
        let bound = integer_table_ops_bound(inst.tree().vertex_count(), &BigInt::from(5));
        assert!(BigInt::from(res.ops.table_total()) <= bound);
    }

    #[test]
    fn agrees_with_constant_solver_on_unit_costs() {
        let inst = instance(
            &[("r", "1"), ("a", "5"), ("b", "3"), ("c", "2"), ("d", "8")],
            &[("r", "a", "1"), ("a", "b", "1"), ("a", "c", "1"), ("r", "d", "1")],
            "2",
            "0",
        );
        let res_i = solve_integer(&inst).unwrap();
        let res_c = crate::solvers::solve_constant(&inst, &rat(1)).unwrap();
        assert_eq!(res_i.prize, res_c.prize);
    }
}
