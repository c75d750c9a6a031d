//! The budget-relaxing approximation scheme.
//!
//! Costs are scaled to integers (by the LCM M of their denominators;
//! M = 1 when they already are integers, a power of two for binary
//! fractions), the low t digits are truncated away, and the truncated
//! problem is solved exactly.  The returned strategy, re-priced under
//! the original costs, spends at most B + n·2^t ≤ (1+ε)B and collects
//! at least the exact optimum prize at budget B: truncation only
//! enlarges the feasible set, and each of the ≤ n chosen edges hides
//! less than 2^t of cost.  ε = 0, or εB/n < 1, falls back to the exact
//! solver with the guarantee holding trivially.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::instance::{contract_zero_cost_edges, Instance, Strategy};
use crate::rational::{floor_log2, is_integer, pow2, Rational};
use crate::solvers::{solve_integer, ScaleMode, SolveError, SolveResult, SolverTag};

/// How a PTAS run will scale and truncate the costs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncationPlan {
    pub epsilon: Rational,
    /// Digits by the ε-rule: ⌊lg(εB/n)⌋, or 0 as the exact-fallback
    /// marker.
    pub t: u64,
    /// Integer scale M applied to costs and budget.
    pub scale: BigInt,
    pub mode: ScaleMode,
    /// Digits actually truncated from the scaled costs:
    /// max(0, ⌊t − lg M⌋).
    pub truncated_digits: u64,
}

impl TruncationPlan {
    /// Derives the plan for an instance: picks the scale from the cost
    /// denominators and the digit count from ε, B and n.
    pub fn for_instance(inst: &Instance, epsilon: &Rational) -> Result<Self, SolveError> {
        if epsilon.is_negative() {
            return Err(SolveError::InvalidEpsilon {
                epsilon: epsilon.clone(),
            });
        }
        let tree = inst.tree();
        let mut scale = BigInt::one();
        for v in tree.vertex_indices() {
            if v != tree.root() {
                scale = scale.lcm(inst.cost(v).denom());
            }
        }
        let mode = if scale.is_one() {
            ScaleMode::Integer
        } else if scale.magnitude().count_ones() == 1 {
            ScaleMode::BinaryFraction
        } else {
            ScaleMode::Lcm
        };
        let t = choose_t(epsilon, inst.budget(), inst.n());
        let truncated_digits = if t == 0 {
            0
        } else {
            t.saturating_sub(crate::rational::ceil_log2(&scale))
        };
        Ok(TruncationPlan {
            epsilon: epsilon.clone(),
            t,
            scale,
            mode,
            truncated_digits,
        })
    }
}

/// The digit count of the ε-rule: ⌊lg(εB/n)⌋ when εB/n ≥ 1, else 0
/// (the exact-fallback marker, also used for ε = 0).
pub fn choose_t(epsilon: &Rational, budget: &Rational, n: usize) -> u64 {
    if n == 0 || !epsilon.is_positive() {
        return 0;
    }
    let x = epsilon * budget / Rational::from_integer(BigInt::from(n));
    floor_log2(&x).unwrap_or(0)
}

/// Replaces every (integer) cost c by c − (c mod 2^t); the budget is
/// untouched.  Zero costs produced here are contracted by the solve
/// pipeline, not by this function.
pub fn truncate_costs(inst: &Instance, t: u64) -> Result<Instance, SolveError> {
    let tree = inst.tree();
    for v in tree.vertex_indices() {
        if v != tree.root() && !is_integer(inst.cost(v)) {
            return Err(SolveError::NonIntegerCost {
                edge: tree.id(v).to_string(),
                cost: inst.cost(v).clone(),
            });
        }
    }
    if t == 0 {
        return Ok(inst.clone());
    }
    Ok(inst.map_costs(|_, c| Rational::from_integer((c.to_integer() >> t) << t)))
}

/// Runs the approximation scheme for a given ε ≥ 0.
///
/// The returned strategy is re-priced under the original costs; its
/// actual cost is in `strategy.cost` and the guarantee ceiling
/// B + n·2^t in the solver tag.  The reported prize is at least the
/// exact optimum at budget B.
pub fn solve_ptas(inst: &Instance, epsilon: &Rational) -> Result<SolveResult, SolveError> {
    let plan = TruncationPlan::for_instance(inst, epsilon)?;
    solve_with_plan(inst, &plan)
}

/// Runs the scheme under an explicit plan (exposed so scale modes can
/// be compared directly).
pub fn solve_with_plan(inst: &Instance, plan: &TruncationPlan) -> Result<SolveResult, SolveError> {
    let t_eff = plan.truncated_digits;
    let scale = Rational::from_integer(plan.scale.clone());

    let scaled = inst
        .map_costs(|_, c| c * &scale)
        .with_budget(inst.budget() * &scale);
    let truncated = truncate_costs(&scaled, t_eff)?;
    // c_q is divisible by 2^t, so solving (c_q, B) equals solving
    // (c_q/2^t, B/2^t) on smaller tables.
    let unit = pow2(t_eff);
    let divided = truncated
        .map_costs(|_, c| c / &unit)
        .with_budget(truncated.budget() / &unit);
    let (contracted, map) = contract_zero_cost_edges(&divided);
    let inner = solve_integer(&contracted)?;

    let original_set = map.expand(&inner.strategy.vertices);
    let strategy =
        Strategy::new(inst, &original_set).expect("expanded strategy is a rooted subtree");
    debug_assert_eq!(
        strategy.prize, inner.prize,
        "contraction and expansion preserve the prize"
    );

    let cost_bound = inst.budget()
        + Rational::from_integer(BigInt::from(inst.n())) * pow2(plan.t);
    debug_assert!(strategy.cost <= cost_bound);

    let inner_budget = match &inner.solver {
        SolverTag::Integer {
            effective_budget, ..
        } => effective_budget.clone(),
        _ => unreachable!("inner solve is the integer solver"),
    };
    Ok(SolveResult {
        prize: strategy.prize.clone(),
        goas_met: strategy.prize >= *inst.threshold(),
        strategy,
        ops: inner.ops,
        solver: SolverTag::Ptas {
            epsilon: plan.epsilon.clone(),
            t: plan.t,
            truncated_digits: t_eff,
            scale: plan.scale.clone(),
            mode: plan.mode,
            cost_bound,
            inner_budget,
        },
    })
}
