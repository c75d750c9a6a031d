//! Result rendering.
//!
//! The structured form is line-oriented `key value` text with stable
//! field names; scripts parse it and the determinism checks compare it
//! byte-for-byte.  The human-readable form reports the same numbers
//! through the same formatter.

use crate::instance::Instance;
use crate::rational::format_rational;
use crate::solvers::{SolveResult, SolverTag};

/// Stable key/value rendering of every result field.
pub fn structured_report(inst: &Instance, res: &SolveResult) -> String {
    let mut out = String::new();
    let mut kv = |k: &str, v: String| {
        out.push_str(k);
        out.push(' ');
        out.push_str(&v);
        out.push('\n');
    };
    kv("solver", res.solver.name().to_string());
    kv("prize", format_rational(&res.prize));
    kv("cost", format_rational(&res.strategy.cost));
    kv("strategy", res.strategy.ids(inst).join(" "));
    kv("goas", if res.goas_met { "yes" } else { "no" }.to_string());
    kv("threshold", format_rational(inst.threshold()));
    kv("budget", format_rational(inst.budget()));
    kv("additions", res.ops.additions.to_string());
    kv("comparisons", res.ops.comparisons.to_string());
    kv("finalize_comparisons", res.ops.finalize_comparisons.to_string());
    match &res.solver {
        SolverTag::Constant {
            unit_cost,
            m,
            trivial,
        } => {
            kv("unit_cost", format_rational(unit_cost));
            kv("m", m.to_string());
            kv("trivial", trivial.to_string());
        }
        SolverTag::Integer {
            effective_budget,
            trivial,
        } => {
            kv("effective_budget", effective_budget.to_string());
            kv("trivial", trivial.to_string());
        }
        SolverTag::RationalD { d, caps, m } => {
            kv("d", d.to_string());
            kv(
                "caps",
                caps.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            kv("m", m.to_string());
        }
        SolverTag::Ptas {
            epsilon,
            t,
            truncated_digits,
            scale,
            mode,
            cost_bound,
            inner_budget,
        } => {
            kv("epsilon", format_rational(epsilon));
            kv("t", t.to_string());
            kv("truncated_digits", truncated_digits.to_string());
            kv("scale", scale.to_string());
            kv("scale_mode", mode.to_string());
            kv("cost_bound", format_rational(cost_bound));
            kv("inner_budget", inner_budget.to_string());
        }
        SolverTag::Oracle { enumerated } => {
            kv("enumerated", enumerated.to_string());
        }
    }
    out
}

/// Human-oriented rendering of the same numbers.
pub fn text_report(inst: &Instance, res: &SolveResult) -> String {
    let mut out = String::new();
    out.push_str(&format!("prize:     {}\n", format_rational(&res.prize)));
    out.push_str(&format!(
        "cost:      {} (budget {})\n",
        format_rational(&res.strategy.cost),
        format_rational(inst.budget())
    ));
    out.push_str(&format!("strategy:  {}\n", res.strategy.ids(inst).join(" ")));
    out.push_str(&format!(
        "goas:      {} (threshold {})\n",
        if res.goas_met { "yes" } else { "no" },
        format_rational(inst.threshold())
    ));
    out.push_str(&format!(
        "ops:       additions={} comparisons={} finalize={}\n",
        res.ops.additions, res.ops.comparisons, res.ops.finalize_comparisons
    ));
    let detail = match &res.solver {
        SolverTag::Constant { unit_cost, m, trivial } => {
            format!("constant (c={}, m={m}, trivial={trivial})", format_rational(unit_cost))
        }
        SolverTag::Integer {
            effective_budget,
            trivial,
        } => format!("integer (B={effective_budget}, trivial={trivial})"),
        SolverTag::RationalD { d, m, .. } => format!("rational-d (d={d}, m={m})"),
        SolverTag::Ptas {
            epsilon,
            t,
            scale,
            mode,
            cost_bound,
            ..
        } => format!(
            "ptas (epsilon={}, t={t}, scale={scale} [{mode}], cost bound {})",
            format_rational(epsilon),
            format_rational(cost_bound)
        ),
        SolverTag::Oracle { enumerated } => format!("oracle ({enumerated} subtrees)"),
    };
    out.push_str(&format!("solver:    {detail}\n"));
    out
}
