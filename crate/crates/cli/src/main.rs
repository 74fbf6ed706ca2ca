use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use citor::invariants::Settings;
use citor::io::{corpus_report, error_report, golden_reports, parse_problem, run, Command, Level, Report, RunOptions};
use citor::tor::{Route, TorOptions};

#[derive(Parser)]
#[command(name = "citor", version, about = "Tor-based invariants of modules over complete intersections")]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Flags {
    /// Highest homological degree computed.
    #[arg(long, global = true, default_value_t = 12)]
    nmax: usize,
    /// Trailing window for polynomial fits.
    #[arg(long, global = true, default_value_t = 3)]
    window: usize,
    /// Seed for generic choices.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Attempts at finding a surjective form.
    #[arg(long, global = true, default_value_t = 8)]
    retries: usize,
    /// Internal degree cutoff of the degreewise Tor route (automatic by default).
    #[arg(long, global = true)]
    degree_bound: Option<i32>,
    /// Zero window of the degreewise Tor route.
    #[arg(long, global = true, default_value_t = 4)]
    zero_window: usize,
    /// Characteristic, overriding the FIELD line.
    #[arg(long, global = true)]
    p: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = RouteArg::Both)]
    route: RouteArg,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also export Tor lengths and theta values as CSV.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Record wall-clock timings (reports are then not reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Exact,
    Degreewise,
    Both,
}

#[derive(Args)]
struct Input {
    /// Problem file.
    file: PathBuf,
    /// Pair, lifting or sequence name (all declared ones by default).
    target: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Q,
    R,
    I,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tor tables over R and over the polynomial ring.
    Tor(Input),
    /// Invariants and theorem checks.
    Invariants(Input),
    /// The invariant theta_s.
    Theta {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        s: usize,
    },
    /// Serre's intersection multiplicity.
    Chi {
        #[command(flatten)]
        input: Input,
        /// Polynomial ring, R, or the bottom of the principal lifting chain.
        #[arg(long, value_enum, default_value_t = LevelArg::R)]
        level: LevelArg,
    },
    /// Complexity of the pair and of each module.
    Cx(Input),
    /// Find and verify principal liftings down to complexity zero.
    Lift(Input),
    /// Verify declared intersection liftings.
    Semilift(Input),
    /// Biadditivity of theta_r on declared short exact sequences.
    Biadditivity(Input),
    /// Full theorem suite with consistency properties.
    Verify(Input),
    /// Execute the TASK lines of the file.
    Run(Input),
    /// Run the bundled examples against their golden reports.
    Corpus {
        /// Also run this many seeded random instances.
        #[arg(long, default_value_t = 0)]
        random: usize,
        /// Write fresh golden reports into this directory instead.
        #[arg(long)]
        bless: Option<PathBuf>,
    },
}

impl Flags {
    fn options(&self) -> RunOptions {
        let route = match self.route {
            RouteArg::Exact => Route::Exact,
            RouteArg::Degreewise => Route::Degreewise,
            RouteArg::Both => Route::Both,
        };
        RunOptions {
            settings: Settings {
                tor: TorOptions { nmax: self.nmax, route, degree_bound: self.degree_bound, zero_window: self.zero_window },
                fit_window: self.window,
                seed: self.seed,
                retries: self.retries,
                ..Settings::default()
            },
            timings: self.timings,
        }
    }
}

fn emit(report: &Report, flags: &Flags) -> Result<(), String> {
    let json = report.to_json();
    match &flags.out {
        Some(path) => fs::write(path, json).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{json}"),
    }
    if let Some(path) = &flags.csv {
        let mut w = csv::Writer::from_path(path).map_err(|e| format!("{}: {e}", path.display()))?;
        for row in report.sequence_rows() {
            w.serialize(row).map_err(|e| e.to_string())?;
        }
        w.flush().map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn bless(dir: &Path, opts: &RunOptions) -> Result<(), String> {
    fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    for (name, json) in golden_reports(opts) {
        let path = dir.join(format!("{name}.json"));
        fs::write(&path, json).map_err(|e| format!("{}: {e}", path.display()))?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn problem_report(command: Command, input: &Input, flags: &Flags, opts: &RunOptions) -> Report {
    let source = input.file.display().to_string();
    let label = command.label();
    let text = match fs::read_to_string(&input.file) {
        Ok(t) => t,
        Err(e) => {
            let err = citor::Error::Input(format!("cannot read {source}: {e}"));
            return error_report(&label, &source, &err, opts, flags.p.unwrap_or(32003));
        }
    };
    match parse_problem(&text, flags.p) {
        Ok(problem) => run(&problem, &source, command, input.target.as_deref(), opts),
        Err(e) => error_report(&label, &source, &e, opts, flags.p.unwrap_or(32003)),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let flags = &cli.flags;
    let opts = flags.options();
    let (command, input) = match &cli.command {
        Cmd::Tor(i) => (Command::Tor, i),
        Cmd::Invariants(i) => (Command::Invariants, i),
        Cmd::Theta { input, s } => (Command::Theta { s: *s }, input),
        Cmd::Chi { input, level } => {
            let level = match level {
                LevelArg::Q => Level::Q,
                LevelArg::R => Level::R,
                LevelArg::I => Level::I,
            };
            (Command::Chi { level }, input)
        }
        Cmd::Cx(i) => (Command::Cx, i),
        Cmd::Lift(i) => (Command::Lift, i),
        Cmd::Semilift(i) => (Command::Semilift, i),
        Cmd::Biadditivity(i) => (Command::Biadd, i),
        Cmd::Verify(i) => (Command::Verify, i),
        Cmd::Run(i) => (Command::Run, i),
        Cmd::Corpus { random, bless: dir } => {
            if let Some(dir) = dir {
                return match bless(dir, &opts) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => {
                        eprintln!("citor: {e}");
                        ExitCode::from(2)
                    }
                };
            }
            let report = corpus_report(&opts, *random);
            return finish(&report, flags);
        }
    };
    let report = problem_report(command, input, flags, &opts);
    finish(&report, flags)
}

fn finish(report: &Report, flags: &Flags) -> ExitCode {
    if let Err(e) = emit(report, flags) {
        eprintln!("citor: {e}");
        return ExitCode::from(2);
    }
    let s = &report.summary;
    if s.failed + s.errors + s.input_errors + s.mismatches > 0 {
        eprintln!(
            "citor: {} failed, {} errors, {} input errors, {} golden mismatches",
            s.failed, s.errors, s.input_errors, s.mismatches
        );
    }
    ExitCode::from(report.exit_code() as u8)
}
