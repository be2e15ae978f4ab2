//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage or validation error, 3 numerical failure,
//! 1 anything else (I/O, failed self-checks). No environment variables are
//! read; all configuration comes from flags.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use chrono::{DateTime, SecondsFormat, Utc};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::eigensolver::{self, Problem, AUTO_MAX_ORDER, DEFAULT_ORDER, DEFAULT_POINTS};
use crate::error::Error;
use crate::geometry::ShellConfig;
use crate::quadrature::Tolerance;
use crate::rayleigh::{tau1_concentric, Rayleigh};
use crate::report::{fmt_num, Format, RunManifest, Table, DEFAULT_TIMESTAMP};
use crate::shell_spectrum::{self, coverage_limit, optimal_eps, scale_invariant, sigma1_closed_form};
use crate::verify::{self, offset_grid, Fault, Level, VerifyOptions};

#[derive(Debug, Parser)]
#[command(name = "steklov-shell", version, about = "Steklov eigenvalues of spherical shells")]
pub struct Cli {
    /// Output layout.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for sweeps and verification (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Absolute and relative quadrature tolerance.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tol: f64,
    /// Timestamp recorded in the manifest: RFC 3339, or `now`.
    #[arg(long, global = true, default_value = DEFAULT_TIMESTAMP)]
    pub timestamp: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemArg {
    Steklov,
    DirichletSteklov,
}

impl From<ProblemArg> for Problem {
    fn from(p: ProblemArg) -> Self {
        match p {
            ProblemArg::Steklov => Problem::Steklov,
            ProblemArg::DirichletSteklov => Problem::DirichletSteklov,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    Steklov,
    DirichletSteklov,
    Ratio,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Fast,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    W2Sign,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sorted Steklov spectrum of the concentric shell.
    Spectrum(SpectrumArgs),
    /// Rayleigh-quotient bound for the offset shell, with every intermediate.
    Bound(BoundArgs),
    /// Planar eigenvalues of the offset annulus by the Trefftz method.
    Solve(SolveArgs),
    /// Bound, closed form and solver value over an offset or hole-ratio grid.
    Sweep(SweepArgs),
    /// Run the invariant suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, default_value_t = shell_spectrum::DEFAULT_K_MAX)]
    pub kmax: usize,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, value_enum, default_value_t = ProblemArg::Steklov)]
    pub problem: ProblemArg,
    #[arg(long)]
    pub dim: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub d: f64,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum, default_value_t = ProblemArg::Steklov)]
    pub problem: ProblemArg,
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub d: f64,
    /// Highest angular order `N` of the basis.
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    /// Boundary quadrature points per circle (default: max(512, 8N)).
    #[arg(long)]
    pub points: Option<usize>,
    /// Number of eigenvalues to print.
    #[arg(long, default_value_t = 8)]
    pub modes: usize,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub problem: SweepKind,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Inner radius (offset sweeps only).
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Offsets evenly spaced over `[0, d_max_frac (1-a)]`.
    #[arg(long, default_value_t = 21)]
    pub d_steps: usize,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.95)]
    pub d_max_frac: f64,
    /// Hole ratios `j/steps` for `j = 0..steps` (ratio sweep only).
    #[arg(long, default_value_t = 200)]
    pub eps_steps: usize,
    /// Omit the planar solver column.
    #[arg(long)]
    pub no_solver: bool,
    /// Order cap for the adaptive solver.
    #[arg(long, default_value_t = AUTO_MAX_ORDER)]
    pub max_order: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = LevelArg::Fast)]
    pub level: LevelArg,
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<FaultArg>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Numeric(Error),
    Io(std::io::Error),
    ChecksFailed(Vec<String>),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_numerical() { CliError::Numeric(e) } else { CliError::Usage(e.to_string()) }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) | CliError::ChecksFailed(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Numeric(e) => e.to_string(),
            CliError::Io(e) => format!("i/o error: {e}"),
            CliError::ChecksFailed(names) => {
                format!("{} check(s) failed: {}", names.len(), names.join(", "))
            }
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses `std::env::args` and runs the command.
pub fn run() -> ExitCode {
    run_from(std::env::args_os())
}

pub fn run_from<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

struct Globals {
    format: Format,
    tol: Tolerance,
    timestamp: String,
}

fn validate_globals(cli: &Cli) -> CliResult<Globals> {
    if !(cli.tol > 0.0 && cli.tol < 1.0) {
        return Err(usage("tolerance must lie in (0,1)"));
    }
    if cli.jobs == Some(0) {
        return Err(usage("--jobs must be at least 1"));
    }
    let timestamp = if cli.timestamp == "now" {
        Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true)
    } else {
        DateTime::parse_from_rfc3339(&cli.timestamp)
            .map_err(|e| usage(format!("timestamp must be RFC 3339 or `now`: {e}")))?;
        cli.timestamp.clone()
    };
    let format = match cli.format {
        OutputFormat::Table => Format::Table,
        OutputFormat::Csv => Format::Csv,
    };
    Ok(Globals { format, tol: Tolerance::uniform(cli.tol), timestamp })
}

fn execute(cli: &Cli) -> CliResult<()> {
    let g = validate_globals(cli)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| usage(format!("cannot start worker pool: {e}")))?;
    let (manifest, table, outcome) = pool.install(|| match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(&g, a).map(|(m, t)| (m, t, Ok(()))),
        Command::Bound(a) => cmd_bound(&g, a).map(|(m, t)| (m, t, Ok(()))),
        Command::Solve(a) => cmd_solve(&g, a).map(|(m, t)| (m, t, Ok(()))),
        Command::Sweep(a) => cmd_sweep(&g, a).map(|(m, t)| (m, t, Ok(()))),
        Command::Verify(a) => cmd_verify(&g, a),
    })?;
    let manifest = manifest.tolerance("quadrature_abs", g.tol.abs).tolerance("quadrature_rel", g.tol.rel);
    let text = table.render(g.format, &manifest);
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(CliError::Io)?,
        None => print!("{text}"),
    }
    outcome
}

fn cmd_spectrum(g: &Globals, args: &SpectrumArgs) -> CliResult<(RunManifest, Table)> {
    ShellConfig::new(args.dim, args.a, 0.0)?;
    if args.kmax == 0 {
        return Err(usage("--kmax must be at least 1"));
    }
    let entries = shell_spectrum::spectrum(args.dim, args.a, args.kmax)?;
    let limit = coverage_limit(args.dim, args.a, args.kmax)?;
    let mut table = Table::new(&["value", "k", "branch", "multiplicity"]);
    let mut beyond = 0;
    for e in &entries {
        if e.value >= limit {
            beyond += 1;
        }
        table.push(vec![fmt_num(e.value), e.k.to_string(), e.branch.to_string(), e.multiplicity.to_string()]);
    }
    if beyond > 0 {
        eprintln!(
            "warning: {beyond} value(s) at or above {limit:.6} may be out of order; orders above {} are not computed",
            args.kmax
        );
    }
    let m = RunManifest::new("spectrum", &g.timestamp)
        .param("dim", args.dim)
        .param("a", args.a)
        .param("kmax", args.kmax);
    Ok((m, table))
}

fn cmd_bound(g: &Globals, args: &BoundArgs) -> CliResult<(RunManifest, Table)> {
    let cfg = ShellConfig::new(args.dim, args.a, args.d)?;
    let ray = Rayleigh::new(g.tol);
    let mut table = Table::new(&["quantity", "value"]);
    let mut row = |name: &str, v: f64| table.push(vec![name.to_string(), fmt_num(v)]);
    match args.problem {
        ProblemArg::Steklov => {
            let b = ray.steklov_bound(&cfg)?;
            for (name, v) in [
                ("mu", b.mu),
                ("w1", b.w1),
                ("w2", b.w2),
                ("w3", b.w3),
                ("v1", b.v1),
                ("v2", b.v2),
                ("v3", b.v3),
                ("i_n", b.i_n),
                ("inner_mass", b.inner_mass),
                ("outer_mass", b.outer_mass),
                ("energy", b.energy),
                ("boundary_mass", b.boundary_mass),
                ("bound", b.bound),
                ("closed_form", sigma1_closed_form(cfg.n, cfg.a)?),
            ] {
                row(name, v);
            }
        }
        ProblemArg::DirichletSteklov => {
            let b = ray.ds_breakdown(&cfg)?;
            row("energy", b.energy);
            row("boundary_mass", b.boundary_mass);
            row("bound", b.bound);
            row("closed_form", tau1_concentric(cfg.n, cfg.a)?);
        }
    }
    let m = RunManifest::new("bound", &g.timestamp)
        .param("problem", Problem::from(args.problem))
        .param("dim", args.dim)
        .param("a", args.a)
        .param("d", args.d);
    Ok((m, table))
}

fn cmd_solve(g: &Globals, args: &SolveArgs) -> CliResult<(RunManifest, Table)> {
    let cfg = ShellConfig::new(2, args.a, args.d)?;
    let points = args.points.unwrap_or(DEFAULT_POINTS.max(8 * args.order));
    if args.order < 4 {
        return Err(usage("--order must be at least 4"));
    }
    if points < 8 * args.order {
        return Err(usage(format!("--points must be at least 8 * order = {}", 8 * args.order)));
    }
    if args.modes == 0 {
        return Err(usage("--modes must be at least 1"));
    }
    let problem = Problem::from(args.problem);
    let r = eigensolver::solve(&cfg, problem, args.order, points)?;

    let mut table = Table::new(&["mode", "eigenvalue", "multiplicity"]);
    let mut mode = 0;
    'groups: for (_, size) in r.groups() {
        for _ in 0..size {
            if mode == args.modes {
                break 'groups;
            }
            table.push(vec![mode.to_string(), fmt_num(r.eigenvalues[mode]), size.to_string()]);
            mode += 1;
        }
    }
    let concentric = match problem {
        Problem::Steklov => sigma1_closed_form(2, args.a)?,
        Problem::DirichletSteklov => tau1_concentric(2, args.a)?,
    };
    table.note("first_eigenvalue", fmt_num(r.first_eigenvalue()));
    table.note("concentric_closed_form", fmt_num(concentric));
    table.note("residual", fmt_num(r.residual));
    table.note("gram_condition", fmt_num(r.gram_condition));
    table.note("symmetry_defect", fmt_num(r.symmetry_defect));
    let m = RunManifest::new("solve", &g.timestamp)
        .param("problem", problem)
        .param("a", args.a)
        .param("d", args.d)
        .param("order", args.order)
        .param("points", points)
        .tolerance("multiplicity_rel", eigensolver::MULTIPLICITY_REL_TOL)
        .tolerance("max_gram_condition", eigensolver::MAX_GRAM_CONDITION);
    Ok((m, table))
}

fn cmd_sweep(g: &Globals, args: &SweepArgs) -> CliResult<(RunManifest, Table)> {
    let base = RunManifest::new("sweep", &g.timestamp).param("dim", args.dim);
    if args.problem == SweepKind::Ratio {
        if args.eps_steps == 0 {
            return Err(usage("--eps-steps must be at least 1 (empty grid)"));
        }
        if args.dim < 2 {
            return Err(usage("dimension must be at least 2"));
        }
        return sweep_ratio(args, base.param("problem", "ratio").param("eps_steps", args.eps_steps));
    }

    let a = args.a.ok_or_else(|| usage("--a is required for offset sweeps"))?;
    ShellConfig::new(args.dim, a, 0.0)?;
    if args.d_steps == 0 {
        return Err(usage("--d-steps must be at least 1 (empty grid)"));
    }
    if !(args.d_max_frac > 0.0 && args.d_max_frac < 1.0) {
        return Err(usage("--d-max-frac must lie in (0,1)"));
    }
    if args.max_order < eigensolver::AUTO_START {
        return Err(usage(format!("--max-order must be at least {}", eigensolver::AUTO_START)));
    }
    let problem = match args.problem {
        SweepKind::DirichletSteklov => Problem::DirichletSteklov,
        _ => Problem::Steklov,
    };
    let with_solver = args.dim == 2 && !args.no_solver;
    let grid = offset_grid(a, args.d_steps, args.d_max_frac);
    let ray = Rayleigh::new(g.tol);
    let closed = match problem {
        Problem::Steklov => sigma1_closed_form(args.dim, a)?,
        Problem::DirichletSteklov => tau1_concentric(args.dim, a)?,
    };

    let rows = grid
        .par_iter()
        .map(|&d| -> CliResult<Vec<String>> {
            let cfg = ShellConfig::new(args.dim, a, d)?;
            let bound = match problem {
                Problem::Steklov => ray.steklov_bound(&cfg)?.bound,
                Problem::DirichletSteklov => ray.ds_bound(&cfg)?,
            };
            let mut row = vec![fmt_num(d), fmt_num(bound), fmt_num(closed)];
            if with_solver {
                let s = eigensolver::solve_auto(&cfg, problem, args.max_order)?;
                row.push(fmt_num(s.result.first_eigenvalue()));
                row.push(s.result.order.to_string());
                row.push(s.converged.to_string());
            }
            Ok(row)
        })
        .collect::<CliResult<Vec<_>>>()?;

    let mut cols = vec!["d", "bound", "closed_form"];
    if with_solver {
        cols.extend(["solver", "solver_order", "solver_converged"]);
    }
    let mut table = Table::new(&cols);
    for row in rows {
        table.push(row);
    }
    let m = base
        .param("problem", problem)
        .param("a", a)
        .param("d_steps", args.d_steps)
        .param("d_max_frac", args.d_max_frac)
        .param("solver", with_solver)
        .param("max_order", args.max_order)
        .tolerance("solver_rel", eigensolver::AUTO_REL_TOL);
    Ok((m, table))
}

fn sweep_ratio(args: &SweepArgs, manifest: RunManifest) -> CliResult<(RunManifest, Table)> {
    let n = args.dim;
    let base = scale_invariant(n, 0.0)?;
    let values = (0..args.eps_steps)
        .into_par_iter()
        .map(|j| {
            let eps = j as f64 / args.eps_steps as f64;
            Ok((eps, scale_invariant(n, eps)?))
        })
        .collect::<crate::Result<Vec<_>>>()?;
    let (grid_eps, grid_value) = values
        .iter()
        .copied()
        .fold((0.0, f64::NEG_INFINITY), |best, (e, v)| if v > best.1 { (e, v) } else { best });
    let (eps_star, value_star) = optimal_eps(n)?;

    let mut table = Table::new(&["eps", "value", "normalized"]);
    for (eps, v) in &values {
        table.push(vec![fmt_num(*eps), fmt_num(*v), fmt_num(v / base)]);
    }
    table.note("argmax", format!("eps={},value={}", fmt_num(eps_star), fmt_num(value_star)));
    table.note("argmax_grid", format!("eps={},value={}", fmt_num(grid_eps), fmt_num(grid_value)));
    Ok((manifest, table))
}

fn cmd_verify(g: &Globals, args: &VerifyArgs) -> CliResult<(RunManifest, Table, CliResult<()>)> {
    let level = match args.level {
        LevelArg::Fast => Level::Fast,
        LevelArg::Full => Level::Full,
    };
    let fault = args.inject_fault.map(|FaultArg::W2Sign| Fault::FlipW2Sign);
    let report = verify::run(&VerifyOptions { level, fault, tol: g.tol });
    let failed: Vec<String> = report.failures().map(|c| c.name.clone()).collect();
    let mut m = RunManifest::new("verify", &g.timestamp)
        .param("level", format!("{:?}", level).to_lowercase());
    if fault.is_some() {
        m = m.param("inject_fault", "w2-sign");
    }
    let outcome = if failed.is_empty() { Ok(()) } else { Err(CliError::ChecksFailed(failed)) };
    Ok((m, report.table(), outcome))
}

