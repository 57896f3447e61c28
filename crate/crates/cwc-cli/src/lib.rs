//! Command-line surface: `bound`, `construct`, `verify`, `exact`, `stats`,
//! and `sweep` subcommands over the core library.
//!
//! Exit codes: 0 success, 1 invalid input, 2 verification failure,
//! 3 cap/timeout/budget verdicts.
//!
//! Result files and stdout JSON are byte-identical across re-runs with
//! identical inputs; timestamps and wall times go to the `--log` sidecar
//! only.

pub mod reports;
pub mod sweep;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use cwc_core::code::{verify, CodeSpec, Constraint, Verdict};
use cwc_core::exact::CliqueStatus;
use cwc_core::hyper::StatsMode;
use cwc_core::matcher::{Algorithm, MatchConfig};
use cwc_core::{bounds, codefile, exact, hyper, matcher};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_VERDICT: i32 = 3;

const DEFAULT_STATS_BUDGET: u64 = 50_000_000;

#[derive(Parser)]
#[command(
    name = "cwc",
    version,
    about = "Constant weight / constant composition codes: construction, verification, exact optima, and Johnson-type bounds"
)]
pub struct Cli {
    /// Worker threads for sweep cells (0 = automatic).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Append timing lines (timestamps, wall times) to this sidecar file.
    #[arg(long, global = true)]
    pub log: Option<PathBuf>,
    /// Stdout format for tabular output (sweep).
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
pub enum Command {
    /// Print the Johnson-type upper bound as JSON.
    Bound(SpecArgs),
    /// Construct a code with seeded randomized matching.
    Construct(ConstructArgs),
    /// Check a code file against its header parameters.
    Verify(VerifyArgs),
    /// Exact maximum code size by branch-and-bound clique search.
    Exact(ExactArgs),
    /// Degree/codegree statistics of the auxiliary hypergraph.
    Stats(StatsArgs),
    /// Construct across a grid of lengths and seeds; tabulate size/bound.
    Sweep(SweepArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("constraint").required(true).args(["w", "wbar"])))]
pub struct SpecArgs {
    /// Alphabet size (2..=36).
    #[arg(long)]
    pub q: u8,
    /// Word length.
    #[arg(long)]
    pub n: usize,
    /// Minimum Hamming distance.
    #[arg(long)]
    pub d: u32,
    /// Constant weight.
    #[arg(long)]
    pub w: Option<u32>,
    /// Constant composition w1,w2,... (one count per nonzero symbol).
    #[arg(long, value_delimiter = ',')]
    pub wbar: Option<Vec<u32>>,
}

impl SpecArgs {
    pub fn to_spec(&self) -> Result<CodeSpec, String> {
        match (self.w, &self.wbar) {
            (Some(w), None) => {
                CodeSpec::cwc(self.q, self.n, self.d, w).map_err(|e| e.to_string())
            }
            (None, Some(wbar)) => {
                CodeSpec::ccc(self.q, self.n, self.d, wbar.clone()).map_err(|e| e.to_string())
            }
            _ => Err("exactly one of --w / --wbar is required".into()),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmArg {
    Greedy,
    Nibble,
}

#[derive(Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long, value_enum, default_value_t = AlgorithmArg::Greedy)]
    pub algo: AlgorithmArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Nibble inclusion pressure in (0, 1].
    #[arg(long, default_value_t = matcher::DEFAULT_BITE_FRACTION)]
    pub bite: f64,
    /// Maximum nibble rounds.
    #[arg(long, default_value_t = matcher::DEFAULT_MAX_ROUNDS)]
    pub rounds: u32,
    /// Skip the greedy maximality pass after nibble rounds.
    #[arg(long)]
    pub no_completion: bool,
    /// Word-space size above which sampling replaces enumeration; also the
    /// total draw cap in the sampled regime.
    #[arg(long, default_value_t = matcher::DEFAULT_SAMPLE_BUDGET)]
    pub budget: u64,
    /// Output code file.
    #[arg(long)]
    pub out: PathBuf,
    /// Write the run report JSON here instead of stdout.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

impl ConstructArgs {
    fn to_config(&self) -> MatchConfig {
        MatchConfig {
            algorithm: match self.algo {
                AlgorithmArg::Greedy => Algorithm::Greedy,
                AlgorithmArg::Nibble => Algorithm::Nibble,
            },
            seed: self.seed,
            bite_fraction: self.bite,
            max_rounds: self.rounds,
            completion: !self.no_completion,
            sample_budget: self.budget,
        }
    }
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Code file to check.
    #[arg(long = "in")]
    pub input: PathBuf,
}

#[derive(Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Abort the clique search after this many seconds (verdict exit 3).
    #[arg(long)]
    pub time_limit_s: Option<f64>,
    /// Maximum number of graph vertices.
    #[arg(long, default_value_t = exact::DEFAULT_VERTEX_CAP)]
    pub cap: usize,
    /// Write the witness code file here.
    #[arg(long)]
    pub witness_out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatsModeArg {
    ClosedForm,
    Empirical,
}

#[derive(Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long, value_enum, default_value_t = StatsModeArg::ClosedForm)]
    pub mode: StatsModeArg,
    /// Operation budget for empirical enumeration.
    #[arg(long, default_value_t = DEFAULT_STATS_BUDGET)]
    pub budget: u64,
    /// Include conflict diagnostics (composition specs only).
    #[arg(long)]
    pub conflicts: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("constraint").required(true).args(["w", "wbar"])))]
pub struct SweepArgs {
    #[arg(long)]
    pub q: u8,
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub w: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    pub wbar: Option<Vec<u32>>,
    /// Strictly increasing lengths, e.g. 20,40,80.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n_values: Vec<usize>,
    /// Seeds to run per length, e.g. 0,1,2,3,4.
    #[arg(long, value_delimiter = ',', required = true)]
    pub seeds: Vec<u64>,
    #[arg(long, value_enum, default_value_t = AlgorithmArg::Greedy)]
    pub algo: AlgorithmArg,
    #[arg(long, default_value_t = matcher::DEFAULT_BITE_FRACTION)]
    pub bite: f64,
    #[arg(long, default_value_t = matcher::DEFAULT_MAX_ROUNDS)]
    pub rounds: u32,
    #[arg(long)]
    pub no_completion: bool,
    #[arg(long, default_value_t = matcher::DEFAULT_SAMPLE_BUDGET)]
    pub budget: u64,
    /// Base path: writes <out>.csv and <out>.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl SweepArgs {
    fn to_plan(&self) -> Result<sweep::SweepPlan, String> {
        let constraint = match (self.w, &self.wbar) {
            (Some(w), None) => Constraint::Weight(w),
            (None, Some(wbar)) => {
                Constraint::Composition(cwc_core::code::Composition::new(wbar.clone()))
            }
            _ => return Err("exactly one of --w / --wbar is required".into()),
        };
        Ok(sweep::SweepPlan {
            q: self.q,
            d: self.d,
            constraint,
            n_values: self.n_values.clone(),
            seeds: self.seeds.clone(),
            config: MatchConfig {
                algorithm: match self.algo {
                    AlgorithmArg::Greedy => Algorithm::Greedy,
                    AlgorithmArg::Nibble => Algorithm::Nibble,
                },
                seed: 0,
                bite_fraction: self.bite,
                max_rounds: self.rounds,
                completion: !self.no_completion,
                sample_budget: self.budget,
            },
        })
    }
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

/// Parses `argv` and runs the selected subcommand, returning the process
/// exit status.
pub fn cmd_dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(error) => {
            use clap::error::ErrorKind;
            let code = match error.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INVALID,
            };
            let _ = error.print();
            return code;
        }
    };
    let started = Instant::now();
    let name = command_name(&cli.command);
    let status = run(&cli);
    log_line(
        &cli.log,
        &format!(
            "ts={} cmd={} elapsed_ms={} exit={}",
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            name,
            started.elapsed().as_millis(),
            status
        ),
    );
    status
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Bound(_) => "bound",
        Command::Construct(_) => "construct",
        Command::Verify(_) => "verify",
        Command::Exact(_) => "exact",
        Command::Stats(_) => "stats",
        Command::Sweep(_) => "sweep",
    }
}

fn log_line(path: &Option<PathBuf>, line: &str) {
    if let Some(path) = path {
        if let Ok(mut file) = fs::OpenOptions::new().create(true).append(true).open(path) {
            let _ = writeln!(file, "{line}");
        }
    }
}

fn invalid(message: impl std::fmt::Display) -> i32 {
    eprintln!("error: {message}");
    EXIT_INVALID
}

fn emit(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn run(cli: &Cli) -> i32 {
    match &cli.command {
        Command::Bound(args) => cmd_bound(args),
        Command::Construct(args) => cmd_construct(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Exact(args) => cmd_exact(args),
        Command::Stats(args) => cmd_stats(args),
        Command::Sweep(args) => cmd_sweep(args, cli.threads, cli.format),
    }
}

fn cmd_bound(args: &SpecArgs) -> i32 {
    let spec = match args.to_spec() {
        Ok(spec) => spec,
        Err(message) => return invalid(message),
    };
    match bounds::upper_bound(&spec) {
        Ok(report) => {
            emit(&reports::bound_json(&report));
            EXIT_OK
        }
        Err(error) => invalid(error),
    }
}

fn cmd_construct(args: &ConstructArgs) -> i32 {
    let spec = match args.spec.to_spec() {
        Ok(spec) => spec,
        Err(message) => return invalid(message),
    };
    let config = args.to_config();
    let (code, report) = match matcher::construct(&spec, &config) {
        Ok(result) => result,
        Err(error) => return invalid(error),
    };
    let verdict = verify(&code);
    if verdict != Verdict::Ok {
        eprintln!("error: constructed code failed verification: {verdict}");
        return EXIT_VERIFY_FAILED;
    }
    if let Err(error) = fs::write(&args.out, codefile::write_code(&code)) {
        return invalid(format_args!("cannot write {}: {error}", args.out.display()));
    }
    let report_value = reports::run_report_json(&report);
    match &args.report {
        Some(path) => {
            let text = serde_json::to_string_pretty(&report_value).expect("serializable");
            if let Err(error) = fs::write(path, text + "\n") {
                return invalid(format_args!("cannot write {}: {error}", path.display()));
            }
        }
        None => emit(&report_value),
    }
    EXIT_OK
}

fn cmd_verify(args: &VerifyArgs) -> i32 {
    let text = match fs::read_to_string(&args.input) {
        Ok(text) => text,
        Err(error) => {
            return invalid(format_args!(
                "cannot read {}: {error}",
                args.input.display()
            ))
        }
    };
    let code = match codefile::parse_code(&text) {
        Ok(code) => code,
        Err(error) => return invalid(error),
    };
    let verdict = verify(&code);
    emit(&reports::verdict_json(&verdict));
    if verdict == Verdict::Ok {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

fn cmd_exact(args: &ExactArgs) -> i32 {
    let spec = match args.spec.to_spec() {
        Ok(spec) => spec,
        Err(message) => return invalid(message),
    };
    let time_limit = args.time_limit_s.map(Duration::from_secs_f64);
    let result = match exact::exact_a(&spec, time_limit, args.cap) {
        Ok(result) => result,
        Err(error @ exact::ExactError::CapExceeded { .. }) => {
            eprintln!("error: {error}");
            return EXIT_VERDICT;
        }
        Err(error) => return invalid(error),
    };
    let witness_file = match &args.witness_out {
        Some(path) => {
            if let Err(error) = fs::write(path, codefile::write_code(&result.witness)) {
                return invalid(format_args!("cannot write {}: {error}", path.display()));
            }
            Some(path.display().to_string())
        }
        None => None,
    };
    emit(&reports::exact_json(&result, witness_file.as_deref()));
    match result.status {
        CliqueStatus::Exact => EXIT_OK,
        CliqueStatus::Timeout { .. } => EXIT_VERDICT,
    }
}

fn cmd_stats(args: &StatsArgs) -> i32 {
    let spec = match args.spec.to_spec() {
        Ok(spec) => spec,
        Err(message) => return invalid(message),
    };
    let mode = match args.mode {
        StatsModeArg::ClosedForm => StatsMode::ClosedForm,
        StatsModeArg::Empirical => StatsMode::Empirical,
    };
    let stats = match hyper::degree_stats(&spec, mode, args.budget) {
        Ok(stats) => stats,
        Err(error @ cwc_core::hyper::HyperError::BudgetExceeded { .. }) => {
            eprintln!("error: {error}");
            return EXIT_VERDICT;
        }
        Err(error) => return invalid(error),
    };
    let conflicts = if args.conflicts {
        match matcher::conflict_diagnostics(&spec, args.budget) {
            Ok(diag) => Some(diag),
            Err(error) => return invalid(error),
        }
    } else {
        None
    };
    emit(&reports::stats_json(&stats, conflicts.as_ref()));
    EXIT_OK
}

fn cmd_sweep(args: &SweepArgs, threads: usize, format: OutputFormat) -> i32 {
    let plan = match args.to_plan() {
        Ok(plan) => plan,
        Err(message) => return invalid(message),
    };
    let table = match sweep::run_sweep(&plan, threads) {
        Ok(table) => table,
        Err(message) => return invalid(message),
    };
    match &args.out {
        Some(base) => {
            let json_path = base.with_extension("json");
            let csv_path = base.with_extension("csv");
            let json_text =
                serde_json::to_string_pretty(&sweep::table_json(&table)).expect("serializable");
            if let Err(error) = fs::write(&json_path, json_text + "\n") {
                return invalid(format_args!("cannot write {}: {error}", json_path.display()));
            }
            if let Err(error) = fs::write(&csv_path, sweep::table_csv(&table)) {
                return invalid(format_args!("cannot write {}: {error}", csv_path.display()));
            }
        }
        None => match format {
            OutputFormat::Json => emit(&sweep::table_json(&table)),
            OutputFormat::Csv => print!("{}", sweep::table_csv(&table)),
        },
    }
    EXIT_OK
}
