//! `goas` — solve, decide, generate, verify and benchmark budgeted
//! prize-collection problems on rooted trees.
//!
//! Exit codes: 0 success (for `decide`: the answer is yes), 1 a
//! negative `decide` answer or verification mismatches, 2 any error.

use std::fmt;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use goas::format::{parse_containers, parse_instance, serialize_instance};
use goas::generator::{
    generate, BudgetPolicy, CostModel, GeneratorConfig, PrizeModel, TreeShape,
};
use goas::harness::{bench_sweep, verify_sweep, BenchRow, BenchSweep, VerifyMode};
use goas::instance::{contract_zero_cost_edges, Instance};
use goas::oracle::{brute_force_optimum_with_cap, DEFAULT_ENUMERATION_CAP};
use goas::ptas::solve_ptas;
use goas::rational::{parse_rational, Rational};
use goas::reductions::containers_to_tree;
use goas::report::{structured_report, text_report};
use goas::solvers::{
    solve_constant, solve_integer, solve_rational_d_capped, SolveResult, DEFAULT_D_CAP,
};

#[derive(Parser)]
#[command(name = "goas", version, about = "Budgeted prize collection on rooted trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the optimization problem for an instance file.
    Solve(SolveArgs),
    /// Decide whether the optimum reaches the threshold (exit 0 = yes, 1 = no).
    Decide(SolveArgs),
    /// Brute-force reference answer (respects the enumeration cap).
    Oracle(OracleArgs),
    /// Generate a seeded instance file.
    Gen(GenArgs),
    /// Solver-vs-oracle sweeps over seeded instances.
    Verify(VerifyArgs),
    /// Parameter sweeps with wall times and instrumented counts (TSV).
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Auto,
    Constant,
    Integer,
    #[value(name = "rational-d")]
    RationalD,
    Ptas,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Structured,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file (`goas instance v1`) or container file
    /// (`goas containers v1`).
    #[arg(long)]
    input: String,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    /// Budget-relaxation factor for the approximation scheme.
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Cap on the cost-alphabet size of the d-rational solver.
    #[arg(long, default_value_t = DEFAULT_D_CAP)]
    d_cap: usize,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    input: String,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    n: usize,
    /// random | path | star | bary:<k>
    #[arg(long, default_value = "random")]
    shape: String,
    /// const:<q> | int:<lo>..<hi> | alphabet:<q>,<q>,...
    #[arg(long, default_value = "int:1..9")]
    costs: String,
    /// <lo>..<hi>[/<denominator>]
    #[arg(long, default_value = "0..20")]
    prizes: String,
    /// Allow a negative lower prize bound.
    #[arg(long)]
    negative_prizes: bool,
    /// abs:<q> | frac:<q> (fraction of the total edge cost)
    #[arg(long, default_value = "frac:1/2")]
    budget: String,
    #[arg(long, default_value = "0")]
    threshold: String,
    /// Output file.
    #[arg(long)]
    out: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Inclusive seed range `<lo>..<hi>`.
    #[arg(long)]
    seeds: String,
    #[arg(long)]
    n: usize,
    /// Comma-separated: constant, integer, rational2, rational3, ptas:<q>.
    #[arg(long, default_value = "constant,integer,rational2,rational3")]
    modes: String,
}

#[derive(Args)]
struct BenchArgs {
    /// n | b | m | epsilon
    #[arg(long)]
    sweep: String,
    /// Comma-separated sweep values.
    #[arg(long)]
    values: String,
    /// Fixed tree size for the b/m/epsilon sweeps.
    #[arg(long, default_value_t = 20)]
    n: usize,
    /// Fixed edge allowance for the n sweep.
    #[arg(long, default_value_t = 8)]
    m: usize,
    /// Fixed budget for the epsilon sweep.
    #[arg(long, default_value_t = 60)]
    budget: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Timing repetitions per row (median reported).
    #[arg(long, default_value_t = 3)]
    repeat: usize,
}

#[derive(Debug)]
struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn fail(msg: impl Into<String>) -> CliError {
    CliError(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(args) => cmd_solve(&args, false),
        Command::Decide(args) => cmd_solve(&args, true),
        Command::Oracle(args) => cmd_oracle(&args),
        Command::Gen(args) => cmd_gen(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Bench(args) => cmd_bench(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_instance(path: &str) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| fail(format!("{path}: {e}")))?;
    let header = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if header == goas::format::CONTAINERS_HEADER {
        let model = parse_containers(&text).map_err(|e| fail(format!("{path}: {e}")))?;
        containers_to_tree(&model).map_err(|e| fail(format!("{path}: {e}")))
    } else {
        parse_instance(&text)
            .map(|doc| doc.instance)
            .map_err(|e| fail(format!("{path}: {e}")))
    }
}

fn declared_alphabet(path: &str) -> Option<Vec<Rational>> {
    let text = std::fs::read_to_string(path).ok()?;
    parse_instance(&text).ok()?.alphabet
}

fn oracle_cap() -> usize {
    std::env::var("GOAS_ORACLE_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ENUMERATION_CAP)
}

fn parse_epsilon(args: &SolveArgs) -> Result<Option<Rational>, CliError> {
    args.epsilon
        .as_deref()
        .map(|e| parse_rational(e).map_err(|err| fail(err.to_string())))
        .transpose()
}

fn cmd_solve(args: &SolveArgs, decide: bool) -> Result<ExitCode, CliError> {
    let inst = load_instance(&args.input)?;
    let epsilon = parse_epsilon(args)?;
    let result = run_solver(args, &inst, epsilon)?;
    if decide {
        println!("{}", if result.goas_met { "yes" } else { "no" });
        return Ok(ExitCode::from(u8::from(!result.goas_met)));
    }
    match args.output {
        Output::Text => print!("{}", text_report(&inst, &result)),
        Output::Structured => print!("{}", structured_report(&inst, &result)),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_solver(
    args: &SolveArgs,
    inst: &Instance,
    epsilon: Option<Rational>,
) -> Result<SolveResult, CliError> {
    let err = |e: goas::solvers::SolveError| fail(e.to_string());
    match args.mode {
        Mode::Constant => {
            let c = first_edge_cost(inst);
            solve_constant(inst, &c).map_err(err)
        }
        Mode::Integer => solve_integer(inst).map_err(err),
        Mode::RationalD => {
            let alphabet = declared_alphabet(&args.input)
                .unwrap_or_else(|| inst.cost_alphabet());
            solve_rational_d_capped(inst, &alphabet, args.d_cap).map_err(err)
        }
        Mode::Ptas => {
            let eps = epsilon.ok_or_else(|| fail("--mode ptas requires --epsilon"))?;
            solve_ptas(inst, &eps).map_err(err)
        }
        Mode::Auto => {
            // Zero-cost edges are contracted away first; every exact
            // solver below requires positive costs.  With negative
            // prizes on zero-cost children the lumped instance is a
            // different problem, so flag it.
            let (inst, map) = contract_zero_cost_edges(inst);
            if !map.is_identity() {
                let has_negative = inst
                    .tree()
                    .vertex_indices()
                    .any(|v| inst.prize(v) < &Rational::from_integer(0.into()));
                if has_negative {
                    eprintln!(
                        "warning: contracted zero-cost edges with negative prizes present; \
                         lumped prizes may change the optimum"
                    );
                }
            }
            let alphabet = inst.cost_alphabet();
            if alphabet.len() <= 1 {
                let c = first_edge_cost(&inst);
                return solve_constant(&inst, &c).map_err(err);
            }
            if alphabet.iter().all(goas::rational::is_integer) {
                return solve_integer(&inst).map_err(err);
            }
            if alphabet.len() <= args.d_cap {
                return solve_rational_d_capped(&inst, &alphabet, args.d_cap).map_err(err);
            }
            let eps = epsilon.ok_or_else(|| {
                fail(format!(
                    "{} distinct non-integer costs exceed the d cap {}; pass --epsilon to approximate",
                    alphabet.len(),
                    args.d_cap
                ))
            })?;
            solve_ptas(&inst, &eps).map_err(err)
        }
    }
}

fn first_edge_cost(inst: &Instance) -> Rational {
    inst.cost_alphabet()
        .into_iter()
        .next()
        .unwrap_or_else(|| Rational::from_integer(1.into()))
}

fn cmd_oracle(args: &OracleArgs) -> Result<ExitCode, CliError> {
    let inst = load_instance(&args.input)?;
    let result = brute_force_optimum_with_cap(&inst, oracle_cap())
        .map_err(|e| fail(e.to_string()))?;
    match args.output {
        Output::Text => print!("{}", text_report(&inst, &result)),
        Output::Structured => print!("{}", structured_report(&inst, &result)),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen(args: &GenArgs) -> Result<ExitCode, CliError> {
    let shape = parse_shape(&args.shape)?;
    let costs = parse_costs(&args.costs)?;
    let prizes = parse_prizes(&args.prizes, args.negative_prizes)?;
    let budget = parse_budget(&args.budget)?;
    let threshold = parse_rational(&args.threshold).map_err(|e| fail(e.to_string()))?;
    let alphabet = match &costs {
        CostModel::Alphabet { values, .. } => Some(values.clone()),
        _ => None,
    };
    let config = GeneratorConfig {
        seed: args.seed,
        n: args.n,
        shape,
        costs,
        prizes,
        budget,
        threshold,
    };
    let inst = generate(&config).map_err(|e| fail(e.to_string()))?;
    let text = serialize_instance(&inst, alphabet.as_deref());
    std::fs::write(&args.out, text).map_err(|e| fail(format!("{}: {e}", args.out)))?;
    Ok(ExitCode::SUCCESS)
}

fn parse_shape(s: &str) -> Result<TreeShape, CliError> {
    match s {
        "random" => Ok(TreeShape::Random),
        "path" => Ok(TreeShape::Path),
        "star" => Ok(TreeShape::Star),
        _ => match s.strip_prefix("bary:").and_then(|k| k.parse().ok()) {
            Some(k) => Ok(TreeShape::BAry(k)),
            None => Err(fail(format!(
                "bad --shape {s:?}: expected random|path|star|bary:<k>"
            ))),
        },
    }
}

fn parse_costs(s: &str) -> Result<CostModel, CliError> {
    if let Some(c) = s.strip_prefix("const:") {
        return Ok(CostModel::Constant(
            parse_rational(c).map_err(|e| fail(e.to_string()))?,
        ));
    }
    if let Some(range) = s.strip_prefix("int:") {
        let (lo, hi) = range
            .split_once("..")
            .ok_or_else(|| fail(format!("bad --costs {s:?}: expected int:<lo>..<hi>")))?;
        return Ok(CostModel::UniformInt {
            lo: lo.parse().map_err(|_| fail("bad cost range"))?,
            hi: hi.parse().map_err(|_| fail("bad cost range"))?,
        });
    }
    if let Some(list) = s.strip_prefix("alphabet:") {
        let values: Result<Vec<Rational>, _> = list.split(',').map(parse_rational).collect();
        return Ok(CostModel::Alphabet {
            values: values.map_err(|e| fail(e.to_string()))?,
            weights: None,
        });
    }
    Err(fail(format!(
        "bad --costs {s:?}: expected const:<q>|int:<lo>..<hi>|alphabet:<q>,..."
    )))
}

fn parse_prizes(s: &str, allow_negative: bool) -> Result<PrizeModel, CliError> {
    let (range, den) = match s.split_once('/') {
        Some((r, d)) => (r, d.parse().map_err(|_| fail("bad prize denominator"))?),
        None => (s, 1),
    };
    let (lo, hi) = range
        .split_once("..")
        .ok_or_else(|| fail(format!("bad --prizes {s:?}: expected <lo>..<hi>[/<den>]")))?;
    Ok(PrizeModel {
        lo: parse_rational(lo).map_err(|e| fail(e.to_string()))?,
        hi: parse_rational(hi).map_err(|e| fail(e.to_string()))?,
        denominator: den,
        allow_negative,
    })
}

fn parse_budget(s: &str) -> Result<BudgetPolicy, CliError> {
    if let Some(q) = s.strip_prefix("abs:") {
        return Ok(BudgetPolicy::Absolute(
            parse_rational(q).map_err(|e| fail(e.to_string()))?,
        ));
    }
    if let Some(q) = s.strip_prefix("frac:") {
        return Ok(BudgetPolicy::FractionOfTotalCost(
            parse_rational(q).map_err(|e| fail(e.to_string()))?,
        ));
    }
    Err(fail(format!("bad --budget {s:?}: expected abs:<q>|frac:<q>")))
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, CliError> {
    let (lo, hi) = args
        .seeds
        .split_once("..")
        .ok_or_else(|| fail(format!("bad --seeds {:?}: expected <lo>..<hi>", args.seeds)))?;
    let lo: u64 = lo.parse().map_err(|_| fail("bad seed range"))?;
    let hi: u64 = hi.parse().map_err(|_| fail("bad seed range"))?;
    if lo > hi {
        return Err(fail("empty seed range"));
    }
    let modes: Result<Vec<VerifyMode>, CliError> = args
        .modes
        .split(',')
        .map(|tok| VerifyMode::parse(tok.trim()).ok_or_else(|| fail(format!("bad mode {tok:?}"))))
        .collect();
    let report = verify_sweep(lo, hi, args.n, &modes?, oracle_cap());
    for mismatch in &report.mismatches {
        eprintln!("mismatch: {mismatch}");
    }
    println!(
        "{} mismatches ({} runs)",
        report.mismatches.len(),
        report.runs
    );
    Ok(if report.mismatches.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_bench(args: &BenchArgs) -> Result<ExitCode, CliError> {
    let sweep = match args.sweep.as_str() {
        "n" => BenchSweep::N {
            m: args.m,
            values: parse_list(&args.values)?,
        },
        "b" => BenchSweep::Budget {
            n: args.n,
            values: parse_list(&args.values)?,
        },
        "m" => BenchSweep::M {
            n: args.n,
            values: parse_list(&args.values)?,
        },
        "epsilon" => {
            let values: Result<Vec<Rational>, _> =
                args.values.split(',').map(|v| parse_rational(v.trim())).collect();
            BenchSweep::Epsilon {
                n: args.n,
                budget: args.budget,
                values: values.map_err(|e| fail(e.to_string()))?,
            }
        }
        other => return Err(fail(format!("bad --sweep {other:?}: expected n|b|m|epsilon"))),
    };
    println!("{}", BenchRow::HEADER);
    for row in bench_sweep(&sweep, args.seed, args.repeat) {
        println!("{}", row.tsv());
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(|v| v.trim().parse().map_err(|_| fail(format!("bad value {v:?}"))))
        .collect()
}
