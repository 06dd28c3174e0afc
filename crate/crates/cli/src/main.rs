//! `orthograph`: build, export and verify orthogonal graphs over `Z/2^n`.

mod range;

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orthograph::analysis::{AutBudget, ColorBudget};
use orthograph::export::{write_dimacs, write_json, write_vertex_csv, GraphView};
use orthograph::report::{self, GridConfig, ParamReport, Status, VerifyConfig};
use orthograph::subconstituent::{subconstituent, SubVariant};
use orthograph::{FormSpec, OrthoGraph, DEFAULT_VERTEX_CAP};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "orthograph", version, about = "Orthogonal graphs over Z/2^n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form predictions only.
    Params {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the graph, measure it and compare with the predictions.
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify every spec of a grid.
    Sweep {
        /// Values of n: `a..b` (inclusive), `a,b,c` or a single value.
        #[arg(long, value_parser = range::parse)]
        n: range::Values,
        #[arg(long, value_parser = range::parse)]
        nu: range::Values,
        #[arg(long, value_parser = range::parse)]
        delta: range::Values,
        #[arg(long, value_parser = range::parse, default_value = "1")]
        z: range::Values,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Skip graph construction.
        #[arg(long)]
        predictions_only: bool,
        #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
        format: SweepFormat,
        /// Directory for one JSON report per spec plus `summary.csv`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the graph or a subconstituent to a file.
    Export {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = ExportFormat::Json)]
        format: ExportFormat,
        /// Export subconstituent 1 or 2 around [e1] instead of the graph.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        sub: Option<u8>,
        /// Drop the whole fiber of [e1] from subconstituent 2.
        #[arg(long, requires = "sub")]
        exclude_base_fiber: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SpecArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    nu: u32,
    #[arg(long)]
    delta: u32,
    /// Unit in the anisotropic block; only used when delta = 2.
    #[arg(long, default_value_t = 1)]
    z: u64,
}

impl SpecArgs {
    fn spec(&self) -> orthograph::Result<FormSpec> {
        FormSpec::with_z(self.n, self.nu, self.delta, self.z)
    }
}

#[derive(Args)]
struct BudgetArgs {
    /// Largest graph that is built.
    #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
    cap: usize,
    /// Search nodes for the chromatic number.
    #[arg(long)]
    budget_color: Option<u64>,
    /// Search nodes for the automorphism group.
    #[arg(long)]
    budget_aut: Option<u64>,
    /// Largest graph searched for automorphisms directly.
    #[arg(long)]
    aut_max_vertices: Option<usize>,
    /// Wall-clock limit in seconds for each search.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Skip the subconstituent checks.
    #[arg(long)]
    no_subconstituents: bool,
}

impl BudgetArgs {
    fn config(&self) -> VerifyConfig {
        let mut color = ColorBudget::default();
        let mut aut = AutBudget::default();
        let limit = self.time_limit.map(Duration::from_secs_f64);
        color.time_limit = limit;
        aut.time_limit = limit;
        if let Some(b) = self.budget_color {
            color.max_nodes = b;
        }
        if let Some(b) = self.budget_aut {
            aut.max_nodes = b;
        }
        if let Some(v) = self.aut_max_vertices {
            aut.max_vertices = v;
        }
        VerifyConfig {
            cap: self.cap,
            color,
            aut,
            subconstituents: !self.no_subconstituents,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Json,
    Dimacs,
    Csv,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<orthograph::Error> for Failure {
    fn from(e: orthograph::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

/// A closed stdout (e.g. piping into `head`) is not an error.
fn quiet_broken_pipe(r: io::Result<()>) -> io::Result<()> {
    match r {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        r => r,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("ORTHOGRAPH_THREADS") else {
        return Ok(());
    };
    let threads: usize =
        value.parse().ok().filter(|&t| t > 0).ok_or_else(|| {
            format!("ORTHOGRAPH_THREADS must be a positive integer, got {value:?}")
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

/// Returns whether every verdict passed.
fn run(command: Command) -> Result<bool, Failure> {
    match command {
        Command::Params { spec, format, out } => {
            let r = report::params(&spec.spec()?)?;
            emit(out.as_deref(), |w| write_report(&r, format, w))?;
            Ok(true)
        }
        Command::Verify {
            spec,
            budget,
            format,
            out,
        } => {
            let r = report::verify(&spec.spec()?, &budget.config())?;
            emit(out.as_deref(), |w| write_report(&r, format, w))?;
            Ok(!r.failed())
        }
        Command::Sweep {
            n,
            nu,
            delta,
            z,
            budget,
            predictions_only,
            format,
            out,
        } => {
            let cfg = GridConfig {
                n: n.u32s().map_err(Failure::Usage)?,
                nu: nu.u32s().map_err(Failure::Usage)?,
                delta: delta.u32s().map_err(Failure::Usage)?,
                z: z.0,
                verify: budget.config(),
                predictions_only,
            };
            cfg.specs()?;
            let reports = report::sweep(&cfg)?;
            match out {
                Some(dir) => write_sweep_dir(&dir, &reports)?,
                None => emit(None, |w| match format {
                    SweepFormat::Csv => report::write_summary_csv(&reports, w),
                    SweepFormat::Json => {
                        serde_json::to_writer_pretty(&mut *w, &reports)?;
                        writeln!(w)
                    }
                })?,
            }
            Ok(!reports.iter().any(ParamReport::failed))
        }
        Command::Export {
            spec,
            cap,
            format,
            sub,
            exclude_base_fiber,
            out,
        } => {
            let g = OrthoGraph::build(&spec.spec()?, cap)?;
            let variant = if exclude_base_fiber {
                SubVariant::ExcludeBaseFiber
            } else {
                SubVariant::Definitional
            };
            let s = sub.map(|i| subconstituent(&g, i, variant)).transpose()?;
            let view = match &s {
                Some(s) => GraphView::sub(&g, s),
                None => GraphView::whole(&g),
            };
            emit(out.as_deref(), |w| match format {
                ExportFormat::Json => {
                    write_json(view, &mut *w)?;
                    writeln!(w)
                }
                ExportFormat::Dimacs => write_dimacs(view, w),
                ExportFormat::Csv => write_vertex_csv(view, w),
            })?;
            Ok(true)
        }
    }
}

fn emit(out: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> io::Result<()> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            f(&mut w)?;
            w.flush()
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            quiet_broken_pipe(f(&mut w).and_then(|()| w.flush()))
        }
    }
}

fn write_report(r: &ParamReport, format: ReportFormat, w: &mut dyn Write) -> io::Result<()> {
    match format {
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut *w, r)?;
            writeln!(w)
        }
        ReportFormat::Text => write_text(r, w),
    }
}

fn write_text(r: &ParamReport, w: &mut dyn Write) -> io::Result<()> {
    let s = &r.spec;
    let p = &r.predicted.main;
    writeln!(w, "n={} nu={} delta={} z={}", s.n, s.nu, s.delta, s.z)?;
    writeln!(
        w,
        "predicted: v={} k={} lambda={} fiber={}",
        p.vertex_count, p.degree, p.lambda, p.fiber_size
    )?;
    for v in &r.verdicts {
        writeln!(w, "{:<26} {:<12} {}", v.claim, v.status.as_str(), v.detail)?;
    }
    if !r.verdicts.is_empty() {
        writeln!(w, "outcome: {}", r.outcome.as_str())?;
    }
    Ok(())
}

fn write_sweep_dir(dir: &Path, reports: &[ParamReport]) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    for r in reports {
        let s = &r.spec;
        let name = format!("report_n{}_nu{}_delta{}_z{}.json", s.n, s.nu, s.delta, s.z);
        emit(Some(&dir.join(name)), |w| {
            write_report(r, ReportFormat::Json, w)
        })?;
    }
    emit(Some(&dir.join("summary.csv")), |w| {
        report::write_summary_csv(reports, w)
    })?;
    let failed = reports.iter().filter(|r| r.outcome == Status::Fail).count();
    eprintln!(
        "{} reports, {failed} with failures, written to {}",
        reports.len(),
        dir.display()
    );
    Ok(())
}
