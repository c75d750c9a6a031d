//! Penetration costs drawn from a fixed alphabet of d distinct positive
//! rationals.
//!
//! Rows are indexed by cost-count vectors k̃ = (k_1..k_d): the entry
//! holds the best prize of a subtree using exactly k_j edges of cost
//! c_j, or the unreachable sentinel.  The index space is the box
//! {0..m_1}×…×{0..m_d} with m_j = min(⌈B′/c_j⌉, n_j) and B′ = B + Σc_j:
//! every budget-feasible count vector lies inside it, and the recursion
//! never needs a vector outside it.  Feasibility (c̃·k̃ ≤ B) is checked
//! only in the final maximization over the root's top row.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::instance::{Instance, Strategy};
use crate::rational::{ceil_int, to_usize, Rational};

use super::{
    build_tables, Entry, OpCounts, SolveError, SolveResult, SolverTag, VertexRows,
};

/// Default refusal threshold for the alphabet size; the box volume
/// grows as (m/d + 1)^d.
pub const DEFAULT_D_CAP: usize = 6;

/// Retained tables of a d-rational run.
#[derive(Debug, Clone)]
pub struct RationalTables {
    pub costs: Vec<Rational>,
    /// Box caps m_1..m_d.
    pub caps: Vec<usize>,
    pub(crate) dims: Vec<usize>,
    pub(crate) strides: Vec<usize>,
    /// Alphabet class of each vertex's parent edge (root: usize::MAX).
    pub(crate) edge_class: Vec<usize>,
    pub(crate) per_vertex: Vec<VertexRows>,
    pub(crate) budget: Rational,
}

/// Solves GOAS-OP for costs restricted to `costs`, with the default
/// alphabet-size cap.
pub fn solve_rational_d(inst: &Instance, costs: &[Rational]) -> Result<SolveResult, SolveError> {
    solve_rational_d_capped(inst, costs, DEFAULT_D_CAP)
}

/// As [`solve_rational_d`] with an explicit cap on d.
pub fn solve_rational_d_capped(
    inst: &Instance,
    costs: &[Rational],
    cap: usize,
) -> Result<SolveResult, SolveError> {
    solve_rational_d_with_tables(inst, costs, cap).map(|(res, _)| res)
}

/// As [`solve_rational_d_capped`], additionally returning the tables.
pub fn solve_rational_d_with_tables(
    inst: &Instance,
    costs: &[Rational],
    cap: usize,
) -> Result<(SolveResult, RationalTables), SolveError> {
    let d = costs.len();
    if d == 0 {
        return Err(SolveError::EmptyAlphabet);
    }
    if d > cap {
        return Err(SolveError::TooManyCostValues { d, cap });
    }
    for (i, c) in costs.iter().enumerate() {
        if *c <= Rational::zero() {
            return Err(SolveError::NonPositiveCostValue { cost: c.clone() });
        }
        if costs[..i].contains(c) {
            return Err(SolveError::DuplicateCostValue { cost: c.clone() });
        }
    }

    let tree = inst.tree();
    let mut edge_class = vec![usize::MAX; tree.vertex_count()];
    let mut class_count = vec![0usize; d];
    for v in tree.vertex_indices() {
        if v == tree.root() {
            continue;
        }
        match costs.iter().position(|c| c == inst.cost(v)) {
            Some(j) => {
                edge_class[v] = j;
                class_count[j] += 1;
            }
            None => {
                return Err(SolveError::UnknownCostValue {
                    edge: tree.id(v).to_string(),
                    cost: inst.cost(v).clone(),
                })
            }
        }
    }

    // m_j = min(⌈B′/c_j⌉, n_j), B′ = B + Σ c_j.
    let budget_primed = inst.budget() + costs.iter().sum::<Rational>();
    let caps: Vec<usize> = costs
        .iter()
        .zip(&class_count)
        .map(|(c, &n_j)| {
            let by_budget = ceil_int(&(&budget_primed / c));
            if by_budget >= BigInt::from(n_j) {
                n_j
            } else {
                to_usize(&by_budget).expect("bounded by n_j")
            }
        })
        .collect();
    let dims: Vec<usize> = caps.iter().map(|&m| m + 1).collect();
    let mut strides = vec![1usize; d];
    let mut size: usize = 1;
    for j in (0..d).rev() {
        strides[j] = size;
        size = size.checked_mul(dims[j]).ok_or_else(|| SolveError::TableTooLarge {
            detail: format!("index box of dims {dims:?}"),
        })?;
    }

    let base = |u: usize| {
        let mut row = vec![Entry::Unreachable; size];
        row[0] = Entry::Value(inst.prize(u).clone());
        row
    };
    let limits_full: Vec<usize> = caps.clone();
    let combine = |_u: usize, child: usize, left: &[Entry], right: &[Entry], ops: &mut OpCounts| {
        combine_row(
            &limits_full,
            &strides,
            edge_class[child],
            left,
            right,
            ops,
        )
    };
    let (per_vertex, mut ops) = build_tables(tree, base, combine);

    // Final maximization over feasible count vectors: c̃·k̃ ≤ B.
    let top = per_vertex[tree.root()].top();
    let mut best_flat = 0usize; // k̃ = 0̃ is always feasible (B ≥ 0)
    let mut best = &top[0];
    let mut finalize = 0u64;
    for_each_point(&caps, &strides, |flat, point| {
        if flat == 0 {
            return;
        }
        let cost: Rational = point
            .iter()
            .zip(costs)
            .map(|(&k, c)| Rational::from_integer(BigInt::from(k)) * c)
            .sum();
        if cost > *inst.budget() {
            return;
        }
        finalize += 1;
        if top[flat] > *best {
            best = &top[flat];
            best_flat = flat;
        }
    });
    ops.finalize_comparisons = finalize;

    let prize = best
        .value()
        .expect("the zero vector entry is always reachable")
        .clone();
    let tables = RationalTables {
        costs: costs.to_vec(),
        caps: caps.clone(),
        dims,
        strides,
        edge_class,
        per_vertex,
        budget: inst.budget().clone(),
    };
    let strategy = recover_from(&tables, inst, best_flat);
    debug_assert_eq!(strategy.prize, prize);

    let result = SolveResult {
        goas_met: prize >= *inst.threshold(),
        prize,
        strategy,
        ops,
        solver: SolverTag::RationalD {
            d,
            m: caps.iter().sum(),
            caps,
        },
    };
    Ok((result, tables))
}

/// Visits every integer point 0 ≤ x ≤ limit (componentwise), last
/// coordinate fastest, passing the flat index under `strides`.
fn for_each_point(limit: &[usize], strides: &[usize], mut f: impl FnMut(usize, &[usize])) {
    let d = limit.len();
    let mut x = vec![0usize; d];
    let mut flat = 0usize;
    loop {
        f(flat, &x);
        let mut advanced = false;
        for i in (0..d).rev() {
            if x[i] < limit[i] {
                x[i] += 1;
                flat += strides[i];
                advanced = true;
                break;
            }
            flat -= x[i] * strides[i];
            x[i] = 0;
        }
        if !advanced {
            return;
        }
    }
}

/// out[k̃] = max(right[k̃], max over α̃+β̃ = k̃−δ̃ of left[α̃] ⊕ right[β̃]);
/// when k̃ lacks the edge's cost class the edge cannot be included and
/// the entry is a plain copy.
fn combine_row(
    limits: &[usize],
    strides: &[usize],
    class: usize,
    left: &[Entry],
    right: &[Entry],
    ops: &mut OpCounts,
) -> Vec<Entry> {
    let mut out = vec![Entry::Unreachable; left.len().max(right.len())];
    let mut sub_limit = vec![0usize; limits.len()];
    // Borrow-friendly: collect results via index since `out` is written once per point.
    for_each_point(limits, strides, |flat, point| {
        if point[class] == 0 {
            out[flat] = right[flat].clone();
            return;
        }
        let base_flat = flat - strides[class];
        sub_limit.copy_from_slice(point);
        sub_limit[class] -= 1;
        let mut best = right[flat].clone();
        for_each_point(&sub_limit, strides, |a_flat, _| {
            let cand = ops.counted_add(&left[a_flat], &right[base_flat - a_flat]);
            ops.counted_max(&mut best, cand);
        });
        out[flat] = best;
    });
    out
}

pub(super) fn recover(tables: &RationalTables, inst: &Instance) -> Strategy {
    // Re-derive the argmax so recovery is self-contained.
    let tree = inst.tree();
    let top = tables.per_vertex[tree.root()].top();
    let mut best_flat = 0usize;
    let mut best = &top[0];
    for_each_point(&tables.caps, &tables.strides, |flat, point| {
        let cost: Rational = point
            .iter()
            .zip(&tables.costs)
            .map(|(&k, c)| Rational::from_integer(BigInt::from(k)) * c)
            .sum();
        if cost > tables.budget {
            return;
        }
        if top[flat] > *best {
            best = &top[flat];
            best_flat = flat;
        }
    });
    recover_from(tables, inst, best_flat)
}

fn recover_from(tables: &RationalTables, inst: &Instance, start_flat: usize) -> Strategy {
    let tree = inst.tree();
    let mut members = vec![tree.root()];
    let mut stack = vec![(tree.root(), 0usize, start_flat)];
    while let Some((u, i, flat)) = stack.pop() {
        if i == tree.child_count(u) {
            debug_assert_eq!(flat, 0, "base row is reachable only at the zero vector");
            continue;
        }
        let rows = &tables.per_vertex[u].rows;
        let val = &rows[i][flat];
        if *val == rows[i + 1][flat] {
            stack.push((u, i + 1, flat));
            continue;
        }
        let child = tree.children(u)[i];
        let class = tables.edge_class[child];
        let point = decode(flat, &tables.dims, &tables.strides);
        debug_assert!(point[class] > 0, "include branch requires the edge's class");
        let base_flat = flat - tables.strides[class];
        let mut sub_limit = point;
        sub_limit[class] -= 1;
        let left = tables.per_vertex[child].top();
        let right = &rows[i + 1];
        let mut split = None;
        for_each_point(&sub_limit, &tables.strides, |a_flat, _| {
            if split.is_none() && left[a_flat].add(&right[base_flat - a_flat]) == *val {
                split = Some(a_flat);
            }
        });
        let a_flat = split.expect("table value must decompose");
        members.push(child);
        stack.push((child, 0, a_flat));
        stack.push((u, i + 1, base_flat - a_flat));
    }
    Strategy::new(inst, &members).expect("recovered set is a rooted subtree")
}

fn decode(flat: usize, dims: &[usize], strides: &[usize]) -> Vec<usize> {
    dims.iter()
        .zip(strides)
        .map(|(&dim, &stride)| (flat / stride) % dim)
        .collect()
}
