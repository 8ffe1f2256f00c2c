//! Command-line front end: solve, verify, gen, reduce, certify, bench.
//!
//! Exit codes: 0 on success, 1 when a check fails (infeasible packing,
//! violated bound, failed certification), 2 on usage or input errors — so
//! CI can gate directly on the certified guarantees.

use anyhow::{anyhow, Context, Result};
use barpack::app::app_pack;
use barpack::bench::{self, BenchConfig, Family, OracleChoice};
use barpack::exact::{
    exact_opt, linearly_ordered_opt, DEFAULT_EXACT_LIMIT, DEFAULT_LINEAR_LIMIT,
};
use barpack::galo::{galo_pack_with, LexKey};
use barpack::instance::Instance;
use barpack::io;
use barpack::matching::{build_graph, matching_pack, matching_pack_compact, max_matching};
use barpack::packing::Packing;
use barpack::reduction::{certify_reduction, DEFAULT_NDM_LIMIT};
use barpack::verify::{chain_decomposition, check_feasible, packing_length, VerifyError};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "barpack", version, about = "Pack two-bar charts into unit bins")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a solver on an instance file and emit the packing as JSON.
    Solve(SolveArgs),
    /// Check a packing against an instance and print the bin load report.
    Verify(VerifyArgs),
    /// Generate a random instance.
    Gen(GenArgs),
    /// Convert a numerical 3-dimensional matching instance into charts.
    Reduce(ReduceArgs),
    /// Certify the yes/no ⟷ bin-count equivalence of an NDM instance.
    Certify(CertifyArgs),
    /// Sweep random instances, compare solvers against oracles, emit CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Galo,
    Matching,
    App,
    Exact,
    ExactLinear,
}

#[derive(Clone, Copy, ValueEnum)]
enum LexKeyArg {
    /// Left bar, then right bar (the default with the proven guarantee).
    Ab,
    /// Taller bar, then shorter bar (experimental).
    MaxMin,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    algo: AlgoArg,
    /// Instance file, `-` for stdin.
    #[arg(default_value = "-")]
    input: String,
    /// Output file, `-` for stdout.
    #[arg(short, long, default_value = "-")]
    output: String,
    /// Merge adjacent blocks of the matching layout when they fit.
    #[arg(long)]
    compact: bool,
    /// Sort key for the greedy solver.
    #[arg(long, value_enum, default_value = "ab")]
    lex_key: LexKeyArg,
    /// Chart limit for the exact searches.
    #[arg(long)]
    limit: Option<usize>,
    /// Allow exact searches beyond twice the default limit.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    instance: String,
    #[arg(long)]
    packing: String,
    #[arg(short, long, default_value = "-")]
    output: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    AllBig,
    FirstBig,
    Pairable,
}

impl From<FamilyArg> for Family {
    fn from(arg: FamilyArg) -> Family {
        match arg {
            FamilyArg::AllBig => Family::AllBig,
            FamilyArg::FirstBig => Family::FirstBig,
            FamilyArg::Pairable => Family::Pairable,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Number of charts (pairable: rounded down to an even count).
    #[arg(long)]
    n: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    granularity: u64,
    #[arg(short, long, default_value = "-")]
    output: String,
}

#[derive(Args)]
struct ReduceArgs {
    /// NDM file, `-` for stdin.
    #[arg(default_value = "-")]
    input: String,
    #[arg(short, long, default_value = "-")]
    output: String,
}

#[derive(Args)]
struct CertifyArgs {
    /// NDM file, `-` for stdin.
    #[arg(default_value = "-")]
    input: String,
    #[arg(short, long, default_value = "-")]
    output: String,
    /// Decision limit on r.
    #[arg(long, default_value_t = DEFAULT_NDM_LIMIT)]
    ndm_limit: usize,
    /// Chart limit for the exact search on the converted instance.
    #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
    limit: usize,
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    n_min: usize,
    #[arg(long)]
    n_max: usize,
    #[arg(long)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    granularity: u64,
    #[arg(long, value_enum, default_value = "auto")]
    oracle: OracleArg,
    #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
    oracle_limit: usize,
    /// Fail instead of emitting rows without an oracle column.
    #[arg(long)]
    require_opt: bool,
    #[arg(short, long, default_value = "-")]
    output: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    Auto,
    Exact,
    Linear,
}

impl From<OracleArg> for OracleChoice {
    fn from(arg: OracleArg) -> OracleChoice {
        match arg {
            OracleArg::Auto => OracleChoice::Auto,
            OracleArg::Exact => OracleChoice::Exact,
            OracleArg::Linear => OracleChoice::Linear,
        }
    }
}

/// Errors that should exit 1: a check genuinely failed, as opposed to the
/// caller holding the tool wrong.
#[derive(Debug)]
struct CheckFailed(String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for CheckFailed {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.is::<CheckFailed>() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve(args) => solve(args),
        Command::Verify(args) => verify(args),
        Command::Gen(args) => gen(args),
        Command::Reduce(args) => reduce(args),
        Command::Certify(args) => certify(args),
        Command::Bench(args) => bench_cmd(args),
    }
}

fn gate_limit(limit: usize, default: usize, force: bool) -> Result<usize> {
    if limit > 2 * default && !force {
        Err(anyhow!(
            "limit {limit} exceeds twice the default ({default}); pass --force to accept the wait"
        ))
    } else {
        Ok(limit)
    }
}

/// Every packing leaves through here: re-verified, never emitted unchecked.
fn emit_packing(
    instance: &Instance,
    packing: &Packing,
    output: &str,
    summary: String,
) -> Result<()> {
    check_feasible(instance, packing)
        .map_err(|e| anyhow!(CheckFailed(format!("solver produced an invalid packing: {e}"))))?;
    let length = packing_length(instance, packing)?;
    io::write_output(output, &io::packing_to_json(packing, length))?;
    eprintln!("{summary}");
    Ok(())
}

fn solve(args: SolveArgs) -> Result<()> {
    if args.compact && !matches!(args.algo, AlgoArg::Matching) {
        return Err(anyhow!("--compact only applies to --algo matching"));
    }
    if !matches!(args.lex_key, LexKeyArg::Ab) && !matches!(args.algo, AlgoArg::Galo) {
        return Err(anyhow!("--lex-key only applies to --algo galo"));
    }
    let instance = io::parse_instance_json(&io::read_input(&args.input)?)?;
    match args.algo {
        AlgoArg::Galo => {
            let key = match args.lex_key {
                LexKeyArg::Ab => LexKey::FirstThenSecond,
                LexKeyArg::MaxMin => LexKey::TallestThenShortest,
            };
            let packing = galo_pack_with(&instance, key);
            let length = packing_length(&instance, &packing)?;
            let chains = chain_decomposition(&instance, &packing)?;
            let summary = format!(
                "n={} length={} lambda={}",
                instance.len(),
                length,
                chains.chain_count()
            );
            emit_packing(&instance, &packing, &args.output, summary)
        }
        AlgoArg::Matching => {
            let matching = max_matching(&build_graph(&instance));
            let packing = if args.compact {
                matching_pack_compact(&instance, &matching)
            } else {
                matching_pack(&instance, &matching)
            };
            let summary = format!("mu={}", matching.cardinality());
            emit_packing(&instance, &packing, &args.output, summary)
        }
        AlgoArg::App => {
            let result = app_pack(&instance)?;
            let summary = format!(
                "winner={} L_galo={} L_matching={}",
                result.winner.as_str(),
                result.galo_length,
                result.matching_length
            );
            emit_packing(&instance, &result.packing, &args.output, summary)
        }
        AlgoArg::Exact => {
            let limit = gate_limit(
                args.limit.unwrap_or(DEFAULT_EXACT_LIMIT),
                DEFAULT_EXACT_LIMIT,
                args.force,
            )?;
            let result = exact_opt(&instance, limit)?;
            check_feasible(&instance, &result.witness)?;
            io::write_output(&args.output, &io::exact_result_to_json(&result))?;
            Ok(())
        }
        AlgoArg::ExactLinear => {
            let limit = gate_limit(
                args.limit.unwrap_or(DEFAULT_LINEAR_LIMIT),
                DEFAULT_LINEAR_LIMIT,
                args.force,
            )?;
            let result = linearly_ordered_opt(&instance, limit)?;
            check_feasible(&instance, &result.witness)?;
            io::write_output(&args.output, &io::linear_result_to_json(&result))?;
            Ok(())
        }
    }
}

fn verify(args: VerifyArgs) -> Result<()> {
    let instance = io::parse_instance_json(&io::read_input(&args.instance)?)?;
    let (packing, declared_length) = io::parse_packing_json(&io::read_input(&args.packing)?)?;
    match check_feasible(&instance, &packing) {
        Ok(report) => {
            let computed = report.used_bins();
            io::write_output(&args.output, &io::load_report_to_json(&report))?;
            if let Some(declared) = declared_length {
                if declared != computed {
                    return Err(anyhow!(CheckFailed(format!(
                        "packing file declares length {declared} but the packing occupies {computed} bins"
                    ))));
                }
            }
            Ok(())
        }
        Err(VerifyError::Infeasible { violations }) => {
            io::write_output(&args.output, &io::violations_to_json(&violations))?;
            Err(anyhow!(CheckFailed(format!(
                "packing is infeasible in {} bin(s)",
                violations.len()
            ))))
        }
        Err(other) => Err(other.into()),
    }
}

fn gen(args: GenArgs) -> Result<()> {
    if args.n < 1 {
        return Err(anyhow!("--n must be at least 1"));
    }
    if args.granularity < 2 {
        return Err(anyhow!("--granularity must be at least 2"));
    }
    if matches!(args.family, FamilyArg::Pairable) && args.n < 2 {
        return Err(anyhow!("pairable instances need --n of at least 2"));
    }
    let instance = Family::from(args.family).generate(args.n, args.seed, args.granularity);
    io::write_output(&args.output, &io::instance_to_json(&instance))?;
    Ok(())
}

fn reduce(args: ReduceArgs) -> Result<()> {
    let ndm = io::parse_ndm_json(&io::read_input(&args.input)?)?;
    let instance = barpack::reduction::reduce(&ndm)?;
    io::write_output(&args.output, &io::instance_to_json(&instance))?;
    Ok(())
}

fn certify(args: CertifyArgs) -> Result<()> {
    let limit = gate_limit(args.limit, DEFAULT_EXACT_LIMIT, args.force)?;
    let ndm = io::parse_ndm_json(&io::read_input(&args.input)?)?;
    let report = certify_reduction(&ndm, args.ndm_limit, limit)?;
    io::write_output(&args.output, &io::certify_report_to_json(&report))?;
    if !report.equivalent {
        return Err(anyhow!(CheckFailed(format!(
            "equivalence violated: decision says {}, optimum {} vs budget {}",
            if report.ndm_yes { "yes" } else { "no" },
            report.opt_length,
            report.bin_budget
        ))));
    }
    Ok(())
}

fn bench_cmd(args: BenchArgs) -> Result<()> {
    let config = BenchConfig {
        family: args.family.into(),
        n_min: args.n_min,
        n_max: args.n_max,
        trials: args.trials,
        seed: args.seed,
        granularity: args.granularity,
        oracle: args.oracle.into(),
        oracle_limit: args.oracle_limit,
        require_opt: args.require_opt,
    };
    let rows = bench::run(&config).context("bench run failed")?;
    io::write_output(&args.output, &bench::to_csv(&rows))?;
    let violations = rows.iter().filter(|r| !r.bound_ok).count();
    if violations > 0 {
        return Err(anyhow!(CheckFailed(format!(
            "{violations} trial(s) violated the certified bound"
        ))));
    }
    Ok(())
}
