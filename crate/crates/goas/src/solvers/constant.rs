//! Constant penetration cost: every edge costs the same c > 0, so a
//! strategy is feasible exactly when it has at most m = ⌊B/c⌋ edges.
//!
//! Row entries are indexed by the edge allowance k ∈ 0..m ("at most k
//! edges").  Combining a child row into a parent row scans all m split
//! positions for every k, padding the infeasible tails with the
//! unreachable sentinel; each entry therefore costs exactly m additions
//! and m comparisons, and the whole table phase exactly 2(V−1)m²
//! operations.

use num_traits::{Signed, Zero};

use crate::instance::Instance;
use crate::rational::{floor_int, to_usize, Rational};

use super::{
    build_tables, whole_tree_strategy, Entry, OpCounts, SolveError, SolveResult, SolverTag,
    VertexRows,
};
use crate::instance::Strategy;

/// Retained tables of a constant-cost run.
#[derive(Debug, Clone)]
pub struct ConstantTables {
    /// Edge allowance ⌊B/c⌋, clamped to n when the run was trivial.
    pub m: usize,
    /// `None` when m ≥ n made the whole tree optimal without tables.
    pub(crate) per_vertex: Option<Vec<VertexRows>>,
}

/// Solves GOAS-OP for a constant cost function.
pub fn solve_constant(inst: &Instance, unit_cost: &Rational) -> Result<SolveResult, SolveError> {
    solve_constant_with_tables(inst, unit_cost).map(|(res, _)| res)
}

/// As [`solve_constant`], additionally returning the tables for
/// strategy recovery.
pub fn solve_constant_with_tables(
    inst: &Instance,
    unit_cost: &Rational,
) -> Result<(SolveResult, ConstantTables), SolveError> {
    let tree = inst.tree();
    for v in tree.vertex_indices() {
        if v == tree.root() {
            continue;
        }
        if inst.cost(v) != unit_cost {
            return Err(SolveError::NonConstantCost {
                edge: tree.id(v).to_string(),
                expected: unit_cost.clone(),
                found: inst.cost(v).clone(),
            });
        }
    }
    let n = tree.non_root_count();
    if n > 0 && unit_cost.is_zero() {
        return Err(SolveError::ZeroCost);
    }

    let ample = if n == 0 {
        true
    } else if unit_cost.is_positive() {
        floor_int(&(inst.budget() / unit_cost)) >= n.into()
    } else {
        // No edges match a non-positive unit cost, so n == 0 above.
        unreachable!("validated against edge costs")
    };
    let prizes_non_negative = tree
        .vertex_indices()
        .all(|v| !inst.prize(v).is_negative());
    if ample && prizes_non_negative {
        // m ≥ n: the whole tree is affordable and nothing in it hurts.
        let strategy = whole_tree_strategy(inst);
        let result = SolveResult {
            prize: strategy.prize.clone(),
            goas_met: strategy.prize >= *inst.threshold(),
            strategy,
            ops: OpCounts::default(),
            solver: SolverTag::Constant {
                unit_cost: unit_cost.clone(),
                m: n,
                trivial: true,
            },
        };
        return Ok((result, ConstantTables { m: n, per_vertex: None }));
    }

    // With negative prizes an ample budget is not trivial, but the
    // answer saturates at n edges, so the allowance is clamped.
    let m = if ample {
        n
    } else {
        to_usize(&floor_int(&(inst.budget() / unit_cost))).expect("m < n fits in usize")
    };

    let base = |u: usize| vec![Entry::Value(inst.prize(u).clone()); m + 1];
    let combine = |_u: usize, _child: usize, left: &[Entry], right: &[Entry], ops: &mut OpCounts| {
        combine_row(m, left, right, ops)
    };
    let (per_vertex, ops) = build_tables(tree, base, combine);

    let tables = ConstantTables {
        m,
        per_vertex: Some(per_vertex),
    };
    let strategy = recover(&tables, inst);
    let prize = tables.per_vertex.as_ref().unwrap()[tree.root()].top()[m]
        .value()
        .expect("constant tables hold no sentinels in range")
        .clone();
    debug_assert_eq!(strategy.prize, prize);

    let result = SolveResult {
        goas_met: prize >= *inst.threshold(),
        prize,
        strategy,
        ops,
        solver: SolverTag::Constant {
            unit_cost: unit_cost.clone(),
            m,
            trivial: false,
        },
    };
    Ok((result, tables))
}

/// One row combine: out[k] = max(right[k], max_{1≤j≤m} left[j−1] ⊕ right[k−j])
/// with right[k−j] read as the sentinel when k−j < 0.
fn combine_row(m: usize, left: &[Entry], right: &[Entry], ops: &mut OpCounts) -> Vec<Entry> {
    let mut out = Vec::with_capacity(m + 1);
    out.push(right[0].clone());
    for k in 1..=m {
        let mut best = right[k].clone();
        for j in 1..=m {
            let tail = if j <= k { &right[k - j] } else { &Entry::Unreachable };
            let cand = ops.counted_add(&left[j - 1], tail);
            ops.counted_max(&mut best, cand);
        }
        out.push(best);
    }
    out
}

/// Walks the tables back to a maximizing vertex set.
pub(super) fn recover(tables: &ConstantTables, inst: &Instance) -> Strategy {
    let tree = inst.tree();
    let per_vertex = match &tables.per_vertex {
        None => return whole_tree_strategy(inst),
        Some(rows) => rows,
    };
    let mut members = vec![tree.root()];
    let mut stack = vec![(tree.root(), 0usize, tables.m)];
    while let Some((u, i, k)) = stack.pop() {
        if i == tree.child_count(u) {
            continue; // base row: only u itself remains
        }
        let rows = &per_vertex[u].rows;
        let val = &rows[i][k];
        if *val == rows[i + 1][k] {
            stack.push((u, i + 1, k)); // exclude branch preferred
            continue;
        }
        let child = tree.children(u)[i];
        let left = per_vertex[child].top();
        let right = &rows[i + 1];
        let mut split = None;
        for j in 1..=k {
            if left[j - 1].add(&right[k - j]) == *val {
                split = Some(j);
                break;
            }
        }
        let j = split.expect("table value must decompose");
        members.push(child);
        stack.push((child, 0, j - 1));
        stack.push((u, i + 1, k - j));
    }
    Strategy::new(inst, &members).expect("recovered set is a rooted subtree")
}
