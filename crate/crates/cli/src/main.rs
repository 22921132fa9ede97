mod commands;
mod config;
mod error;
mod tables;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use wtred::quantum_wtred::{CellulationStyle, CopyVariant, CycleBasis, Heights, HeightsSpec};

use commands::Report;
use config::{Construction, InputSpec, ReduceMode, RunConfig};
use error::CliError;
use tables::Scale;

/// Weight reduction for classical and quantum CSS codes.
#[derive(Parser)]
#[command(name = "wtred", version)]
struct Cli {
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true, env = "WTRED_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a product code and report its parameters.
    Build(BuildArgs),
    /// Reduce a classical matrix or a quantum code.
    Reduce(ReduceArgs),
    /// Report n, k and weights without distances.
    Params(Common),
    /// Report n, k, weights and distances.
    Distance(Common),
    /// Count 4-cycles and compute girth of the Tanner graph.
    Cycles(Common),
    /// Write the Tanner graph in Graphviz format.
    ExportDot(DotArgs),
    /// Regenerate a results table as CSV.
    Tables(TablesArgs),
}

#[derive(Args)]
struct Common {
    /// JSON or TOML run configuration; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Bundled code by name.
    #[arg(long, group = "input")]
    fixture: Option<String>,
    /// Classical parity-check matrix (text, or alist by extension).
    #[arg(long, group = "input")]
    matrix: Option<PathBuf>,
    /// CSS code file with `hx` and `hz` sections.
    #[arg(long, group = "input")]
    css: Option<PathBuf>,
    /// Base matrix over the cyclic group ring.
    #[arg(long, group = "input")]
    base: Option<PathBuf>,
    #[arg(long, value_enum)]
    construction: Option<Construction>,
    #[arg(long)]
    seed: Option<u64>,
    /// Largest weight searched exhaustively for distances.
    #[arg(long)]
    budget: Option<usize>,
    /// Sampled information sets for distance upper bounds.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    no_distance: bool,
    /// Directory for output code files.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
}

impl Common {
    fn config(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::from_file(p)?,
            None => RunConfig::default(),
        };
        let input = InputSpec {
            fixture: self.fixture.clone(),
            matrix: self.matrix.clone(),
            css: self.css.clone(),
            base: self.base.clone(),
        };
        if input != InputSpec::default() {
            cfg.input = input;
        }
        if self.construction.is_some() {
            cfg.construction = self.construction;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(b) = self.budget {
            cfg.distance.budget = b;
        }
        if let Some(t) = self.trials {
            cfg.distance.trials = t;
        }
        if self.no_distance {
            cfg.distance.enabled = false;
        }
        if self.out_dir.is_some() {
            cfg.output.dir = self.out_dir.clone();
        }
        if self.report.is_some() {
            cfg.output.report = self.report.clone();
        }
        Ok(cfg)
    }
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    common: Common,
    /// Include the 4-cycle census.
    #[arg(long)]
    cycles: bool,
}

#[derive(Args)]
struct ReduceArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum)]
    mode: Option<ReduceMode>,
    /// Chain columns in a cycle instead of a line.
    #[arg(long)]
    compressed: bool,
    /// Permuted classical reductions to try.
    #[arg(long)]
    permutations: Option<usize>,
    /// original, reduced or targeted:N
    #[arg(long, value_parser = parse_copy)]
    copy: Option<CopyVariant>,
    /// Thickening layers.
    #[arg(long)]
    ell: Option<usize>,
    /// greedy:Q or a comma-separated list.
    #[arg(long)]
    heights: Option<Heights>,
    /// Cone every Z check heavier than this.
    #[arg(long)]
    cone_above: Option<usize>,
    /// Coning trials; the lightest result is kept.
    #[arg(long)]
    cone_trials: Option<usize>,
    /// fundamental or short
    #[arg(long, value_parser = parse_basis)]
    cycle_basis: Option<CycleBasis>,
    /// ladder or triangulate
    #[arg(long, value_parser = parse_style)]
    cellulation: Option<CellulationStyle>,
    /// Layers of a second thickening after coning.
    #[arg(long, requires = "second_heights")]
    second_ell: Option<usize>,
    #[arg(long, requires = "second_ell")]
    second_heights: Option<Heights>,
}

impl ReduceArgs {
    fn config(&self) -> Result<RunConfig, CliError> {
        let mut cfg = self.common.config()?;
        let r = &mut cfg.reduce;
        if let Some(m) = self.mode {
            r.mode = m;
        }
        r.compressed |= self.compressed;
        if let Some(p) = self.permutations {
            r.permutations = p;
        }
        let q = &mut r.quantum;
        if let Some(c) = self.copy {
            q.copy = c;
        }
        if let Some(e) = self.ell {
            q.ell = e;
        }
        if let Some(h) = &self.heights {
            q.heights = h.clone();
        }
        if let Some(c) = self.cone_above {
            q.cone_above = c;
        }
        if let Some(t) = self.cone_trials {
            q.coning.trials = t;
        }
        if let Some(b) = self.cycle_basis {
            q.coning.basis = b;
        }
        if let Some(s) = self.cellulation {
            q.coning.style = s;
        }
        if let (Some(ell), Some(heights)) = (self.second_ell, &self.second_heights) {
            q.second_thickening = Some(HeightsSpec {
                ell,
                heights: heights.clone(),
            });
        }
        Ok(cfg)
    }
}

#[derive(Args)]
struct DotArgs {
    #[command(flatten)]
    common: Common,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TablesArgs {
    /// t1, t3 or t4.
    which: String,
    #[arg(long, value_enum, default_value_t = Scale::Desk)]
    scale: Scale,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_copy(s: &str) -> Result<CopyVariant, String> {
    match s {
        "original" => Ok(CopyVariant::Original),
        "reduced" => Ok(CopyVariant::Reduced),
        _ => s
            .strip_prefix("targeted:")
            .and_then(|n| n.parse().ok())
            .map(|targ_q_x| CopyVariant::Targeted { targ_q_x })
            .ok_or_else(|| format!("expected original, reduced or targeted:N, got {s:?}")),
    }
}

fn parse_basis(s: &str) -> Result<CycleBasis, String> {
    match s {
        "fundamental" => Ok(CycleBasis::Fundamental),
        "short" => Ok(CycleBasis::Short),
        _ => Err(format!("expected fundamental or short, got {s:?}")),
    }
}

fn parse_style(s: &str) -> Result<CellulationStyle, String> {
    match s {
        "ladder" => Ok(CellulationStyle::Ladder),
        "triangulate" => Ok(CellulationStyle::Triangulate),
        _ => Err(format!("expected ladder or triangulate, got {s:?}")),
    }
}

fn output(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => commands::write_file(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Write { path: "<stdout>".into(), source })
        }
    }
}

fn emit<T: Serialize>(cfg: &RunConfig, r: Report<T>) -> Result<(), CliError> {
    output(cfg.output.report.as_ref(), &r.to_json())
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot set up {n} threads: {e}")))?;
    }
    match cli.command {
        Command::Build(a) => {
            let mut cfg = a.common.config()?;
            cfg.cycles |= a.cycles;
            emit(&cfg, commands::build(&cfg)?)
        }
        Command::Reduce(a) => {
            let cfg = a.config()?;
            emit(&cfg, commands::reduce(&cfg)?)
        }
        Command::Params(c) => {
            let cfg = c.config()?;
            emit(&cfg, commands::params(&cfg)?)
        }
        Command::Distance(c) => {
            let cfg = c.config()?;
            emit(&cfg, commands::distance(&cfg)?)
        }
        Command::Cycles(c) => {
            let cfg = c.config()?;
            emit(&cfg, commands::cycles(&cfg)?)
        }
        Command::ExportDot(a) => {
            let cfg = a.common.config()?;
            output(a.out.as_ref(), &commands::export_dot(&cfg)?)
        }
        Command::Tables(a) => {
            let csv = tables::render(&a.which, a.scale, a.seed)?;
            output(a.out.as_ref(), &csv)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(d) = e.details() {
                eprintln!("  {d}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
