//! The exact dynamic-programming solvers.
//!
//! All three solvers share one skeleton.  Every vertex u owns a stack
//! of table rows, one per child plus a base row: row i holds the optima
//! for the subtree family T^i(u) (u with only its rightmost branches),
//! and the base row is the single-vertex tree {u}.  Rows are built from
//! the base upward by combining, through the leftmost-child
//! decomposition, the child's topmost row with the previously built
//! row.  Leaves therefore need no computation at all: their only row is
//! the base row.
//!
//! Rows of distinct subtrees are independent, so vertices are processed
//! in waves of equal depth, deepest first; within a wave the work is
//! data-parallel (rayon when the `parallel` feature is on).  Results
//! and operation counts are identical to sequential execution: each
//! vertex's rows depend only on completed deeper waves, and per-vertex
//! counters are reduced in a fixed order.

mod constant;
mod integer;
mod rational_d;

pub use constant::{solve_constant, solve_constant_with_tables, ConstantTables};
pub use integer::{solve_integer, solve_integer_with_tables, IntegerTables};
pub use rational_d::{
    solve_rational_d, solve_rational_d_capped, solve_rational_d_with_tables, RationalTables,
    DEFAULT_D_CAP,
};

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::instance::{Instance, Strategy};
use crate::rational::Rational;
use crate::tree::PlantedPlaneTree;

/// Errors raised by the solvers when an instance lies outside the
/// admissible class of the chosen algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    NonConstantCost {
        edge: String,
        expected: Rational,
        found: Rational,
    },
    /// The constant cost is zero; contract the instance instead.
    ZeroCost,
    NonIntegerCost {
        edge: String,
        cost: Rational,
    },
    /// The integer solver requires positive costs; contract first.
    ZeroCostEdgePresent {
        edge: String,
    },
    /// An edge cost missing from the declared alphabet.
    UnknownCostValue {
        edge: String,
        cost: Rational,
    },
    DuplicateCostValue {
        cost: Rational,
    },
    NonPositiveCostValue {
        cost: Rational,
    },
    EmptyAlphabet,
    /// Alphabet size beyond the configured cap; the table volume grows
    /// as (m/d+1)^d.
    TooManyCostValues {
        d: usize,
        cap: usize,
    },
    InvalidEpsilon {
        epsilon: Rational,
    },
    /// The table index space does not fit in memory.
    TableTooLarge {
        detail: String,
    },
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::NonConstantCost {
                edge,
                expected,
                found,
            } => write!(
                f,
                "edge into {edge:?} has cost {found}, expected constant {expected}"
            ),
            SolveError::ZeroCost => write!(f, "constant cost is zero; contract the instance"),
            SolveError::NonIntegerCost { edge, cost } => {
                write!(f, "edge into {edge:?} has non-integer cost {cost}")
            }
            SolveError::ZeroCostEdgePresent { edge } => {
                write!(f, "edge into {edge:?} has cost zero; contract the instance first")
            }
            SolveError::UnknownCostValue { edge, cost } => {
                write!(f, "edge into {edge:?} has cost {cost} not in the declared alphabet")
            }
            SolveError::DuplicateCostValue { cost } => {
                write!(f, "alphabet value {cost} declared twice")
            }
            SolveError::NonPositiveCostValue { cost } => {
                write!(f, "alphabet value {cost} is not positive")
            }
            SolveError::EmptyAlphabet => write!(f, "cost alphabet is empty"),
            SolveError::TooManyCostValues { d, cap } => {
                write!(f, "alphabet has {d} values, exceeding the cap of {cap}")
            }
            SolveError::InvalidEpsilon { epsilon } => {
                write!(f, "epsilon must be non-negative, got {epsilon}")
            }
            SolveError::TableTooLarge { detail } => write!(f, "table too large: {detail}"),
        }
    }
}

impl std::error::Error for SolveError {}

/// A table cell: an achievable prize, or the sentinel for an index
/// no subtree realizes.  The sentinel orders below every prize and
/// absorbs additions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entry {
    Unreachable,
    Value(Rational),
}

impl Entry {
    pub fn add(&self, other: &Entry) -> Entry {
        match (self, other) {
            (Entry::Value(a), Entry::Value(b)) => Entry::Value(a + b),
            _ => Entry::Unreachable,
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            Entry::Value(q) => Some(q),
            Entry::Unreachable => None,
        }
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Entry::Unreachable, Entry::Unreachable) => Ordering::Equal,
            (Entry::Unreachable, Entry::Value(_)) => Ordering::Less,
            (Entry::Value(_), Entry::Unreachable) => Ordering::Greater,
            (Entry::Value(a), Entry::Value(b)) => a.cmp(b),
        }
    }
}

/// Instrumented arithmetic-operation counters.
///
/// `additions` and `comparisons` cover the table phase; the final
/// maximization over the root's row (needed only by the d-rational
/// solver) is counted separately.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub additions: u64,
    pub comparisons: u64,
    pub finalize_comparisons: u64,
}

impl OpCounts {
    /// Additions + comparisons of the table phase.
    pub fn table_total(&self) -> u64 {
        self.additions + self.comparisons
    }

    pub fn total(&self) -> u64 {
        self.table_total() + self.finalize_comparisons
    }

    pub fn merge(&mut self, other: &OpCounts) {
        self.additions += other.additions;
        self.comparisons += other.comparisons;
        self.finalize_comparisons += other.finalize_comparisons;
    }

    /// One counted addition of table entries.
    fn counted_add(&mut self, a: &Entry, b: &Entry) -> Entry {
        self.additions += 1;
        a.add(b)
    }

    /// One counted comparison; keeps the earlier candidate on ties, so
    /// the first maximizer in scan order wins.
    fn counted_max(&mut self, best: &mut Entry, cand: Entry) {
        self.comparisons += 1;
        if cand > *best {
            *best = cand;
        }
    }
}

/// The rows owned by one vertex: index i holds the row of T^{i+1}(u)
/// (0 is the full subtree), the last index is the base row for {u}.
#[derive(Debug, Clone)]
pub struct VertexRows {
    pub rows: Vec<Vec<Entry>>,
}

impl VertexRows {
    /// The row of the full subtree T(u).
    pub fn top(&self) -> &[Entry] {
        &self.rows[0]
    }
}

/// Minimum wave width before the per-wave work is handed to rayon.
#[cfg(feature = "parallel")]
const PARALLEL_WAVE_THRESHOLD: usize = 8;

/// Builds the per-vertex row stacks bottom-up in depth waves.
///
/// `base_row(u)` produces the row for the single-vertex tree {u};
/// `combine(u, child, left, right, ops)` merges the child's top row
/// into the previously built row of u.
pub(crate) fn build_tables<B, F>(
    tree: &PlantedPlaneTree,
    base_row: B,
    combine: F,
) -> (Vec<VertexRows>, OpCounts)
where
    B: Fn(usize) -> Vec<Entry> + Sync,
    F: Fn(usize, usize, &[Entry], &[Entry], &mut OpCounts) -> Vec<Entry> + Sync,
{
    let depths = tree.depths();
    let max_depth = depths.iter().copied().max().unwrap_or(0);
    let mut waves: Vec<Vec<usize>> = vec![Vec::new(); max_depth + 1];
    for v in tree.vertex_indices() {
        waves[depths[v]].push(v);
    }

    let mut slots: Vec<Option<VertexRows>> = (0..tree.vertex_count()).map(|_| None).collect();
    let mut total = OpCounts::default();

    for wave in waves.iter().rev() {
        let eval = |&u: &usize| -> (usize, VertexRows, OpCounts) {
            let mut ops = OpCounts::default();
            let children = tree.children(u);
            // Build from the base row upward: row for T^{i}(u) consumes
            // child i and the row for T^{i+1}(u).
            let mut stack: Vec<Vec<Entry>> = Vec::with_capacity(children.len() + 1);
            stack.push(base_row(u));
            for &child in children.iter().rev() {
                let left = slots[child]
                    .as_ref()
                    .expect("child wave completed before parent")
                    .top();
                let next = combine(u, child, left, stack.last().unwrap(), &mut ops);
                stack.push(next);
            }
            stack.reverse();
            (u, VertexRows { rows: stack }, ops)
        };

        #[cfg(feature = "parallel")]
        let results: Vec<(usize, VertexRows, OpCounts)> =
            if wave.len() >= PARALLEL_WAVE_THRESHOLD {
                use rayon::prelude::*;
                wave.par_iter().map(eval).collect()
            } else {
                wave.iter().map(eval).collect()
            };
        #[cfg(not(feature = "parallel"))]
        let results: Vec<(usize, VertexRows, OpCounts)> = wave.iter().map(eval).collect();

        for (u, rows, ops) in results {
            total.merge(&ops);
            slots[u] = Some(rows);
        }
    }

    let tables = slots
        .into_iter()
        .map(|s| s.expect("every vertex sits in some wave"))
        .collect();
    (tables, total)
}

/// Identifies which algorithm produced a result, with the parameters
/// that fix its table dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverTag {
    Constant {
        unit_cost: Rational,
        m: usize,
        /// m ≥ n: the whole tree was affordable, no tables were built.
        trivial: bool,
    },
    Integer {
        /// ⌊B⌋.
        effective_budget: BigInt,
        trivial: bool,
    },
    RationalD {
        d: usize,
        /// The caps m_1..m_d of the index box.
        caps: Vec<usize>,
        /// m = Σ m_i.
        m: usize,
    },
    Ptas {
        epsilon: Rational,
        /// Digits chosen from ε, B and n; 0 means exact fallback.
        t: u64,
        /// Digits actually truncated from the scaled costs.
        truncated_digits: u64,
        /// The integer scale M applied to costs and budget.
        scale: BigInt,
        mode: ScaleMode,
        /// Guaranteed cost ceiling B + n·2^t of the returned strategy.
        cost_bound: Rational,
        /// Budget of the inner exact solve after truncation.
        inner_budget: BigInt,
    },
    Oracle {
        enumerated: u64,
    },
}

/// How rational costs were brought to integers before truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleMode {
    /// Costs were already integers (M = 1).
    Integer,
    /// All denominators are powers of two (M = 2^d).
    BinaryFraction,
    /// General least-common-multiple scaling.
    Lcm,
}

impl fmt::Display for ScaleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScaleMode::Integer => write!(f, "integer"),
            ScaleMode::BinaryFraction => write!(f, "binary-fraction"),
            ScaleMode::Lcm => write!(f, "lcm"),
        }
    }
}

impl SolverTag {
    pub fn name(&self) -> &'static str {
        match self {
            SolverTag::Constant { .. } => "constant",
            SolverTag::Integer { .. } => "integer",
            SolverTag::RationalD { .. } => "rational-d",
            SolverTag::Ptas { .. } => "ptas",
            SolverTag::Oracle { .. } => "oracle",
        }
    }
}

/// Outcome of a solver run: the optimum (or, for the PTAS, guaranteed)
/// prize, an achieving strategy, the verdict against the threshold and
/// the instrumented operation counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub prize: Rational,
    pub strategy: Strategy,
    pub goas_met: bool,
    pub ops: OpCounts,
    pub solver: SolverTag,
}

/// The GOAS decision: does the computed optimum reach the threshold?
pub fn decide_goas(inst: &Instance, result: &SolveResult) -> bool {
    result.prize >= *inst.threshold()
}

/// Retained tables of an exact solver run, for strategy recovery.
#[derive(Debug, Clone)]
pub enum DpTable {
    Constant(ConstantTables),
    Integer(IntegerTables),
    RationalD(RationalTables),
}

/// Reads an optimum strategy back out of fully computed tables.
///
/// Deterministic: at every split the exclude-the-leftmost-child branch
/// is preferred, then the smallest split index, mirroring the order in
/// which the table kernels scan candidates.
pub fn recover_strategy(table: &DpTable, inst: &Instance) -> Strategy {
    match table {
        DpTable::Constant(t) => constant::recover(t, inst),
        DpTable::Integer(t) => integer::recover(t, inst),
        DpTable::RationalD(t) => rational_d::recover(t, inst),
    }
}

/// The whole tree as a strategy (used by the trivial shortcuts).
pub(crate) fn whole_tree_strategy(inst: &Instance) -> Strategy {
    let all: Vec<usize> = inst.tree().vertex_indices().collect();
    Strategy::new(inst, &all).expect("the whole tree is a rooted subtree")
}

/// Exact operation count of the constant-cost table phase:
/// 2(V−1)m², V the total vertex count.
pub fn constant_table_ops(vertex_count: usize, m: usize) -> u64 {
    2 * (vertex_count as u64 - 1) * (m as u64) * (m as u64)
}

/// Upper bound on the integer-cost table phase: 2(V−1)B².
pub fn integer_table_ops_bound(vertex_count: usize, budget: &BigInt) -> BigInt {
    BigInt::from(2 * (vertex_count - 1)) * budget * budget
}

/// Upper bound on the d-rational solver, table phase plus final
/// maximization: 4(V−1)(m/d+1)^{2d} + (m/d+1)^d.
pub fn rational_table_ops_bound(vertex_count: usize, d: usize, m: usize) -> Rational {
    let ratio = Rational::new(BigInt::from(m), BigInt::from(d)) + Rational::one();
    let pow_d = pow_rational(&ratio, d as u32);
    let pow_2d = &pow_d * &pow_d;
    Rational::from_integer(BigInt::from(4 * (vertex_count - 1))) * pow_2d + pow_d
}

fn pow_rational(q: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= q;
    }
    acc
}
