//! Command-line front end.
//!
//! Data goes to `--out` when given and to stdout otherwise; the one-line
//! summary goes to whichever of stdout and stderr is not carrying data.
//! Exit codes: 0 success, 1 runtime failure, 2 usage error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bench::{run_bench, BenchConfig};
use crate::demo;
use crate::error::{Error, Result};
use crate::io;
use crate::ode::IntegratorConfig;
use crate::pendulum::{simulate_pendulum_threads, Engine, SummaryRow, Trajectory};
use crate::robust::{minimize, DescentConfig, RobustProblem, StopReason};
use crate::sampling::{self, ScalarDistribution};

#[derive(Debug, Parser)]
#[command(
    name = "mcprop",
    version,
    about = "Monte-Carlo uncertainty propagation with particles"
)]
pub struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write data here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Walk through basic usage, checking each printed result.
    Demo,
    /// Draw particles from a distribution.
    Sample(SampleArgs),
    /// Propagate a bivariate normal through a random linear map.
    MvDemo(MvArgs),
    /// Simulate the uncertain pendulum.
    Pendulum(PendulumArgs),
    /// Worst-case optimization over uncertain coefficients.
    Robust(RobustArgs),
    /// Time every propagation engine on the pendulum.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Dist {
    Normal,
    Uniform,
    Poisson,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long, value_enum, default_value_t = Dist::Normal)]
    pub dist: Dist,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mu: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub lo: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub hi: f64,
    #[arg(long, default_value_t = 3.0)]
    pub rate: f64,
    #[arg(long, default_value_t = crate::particles::DEFAULT_COUNT)]
    pub n: usize,
    /// Quantile-grid sampling (the default).
    #[arg(long, conflicts_with = "random")]
    pub systematic: bool,
    /// Independent uniform draws pushed through the quantile function.
    #[arg(long)]
    pub random: bool,
}

#[derive(Debug, Args)]
pub struct MvArgs {
    #[arg(long, default_value_t = 500)]
    pub n: usize,
    /// Use the identity instead of a random matrix.
    #[arg(long)]
    pub identity: bool,
}

#[derive(Debug, Args)]
pub struct PendulumArgs {
    /// scalar32, scalar64, linear, mc, sigma or naive.
    #[arg(long, default_value = "mc")]
    pub mode: String,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    #[arg(long, default_value_t = 2.0)]
    pub t_end: f64,
    #[arg(long, default_value_t = 10)]
    pub record_every: usize,
    /// Also write per-sample trajectories of θ here.
    #[arg(long)]
    pub wide: Option<PathBuf>,
    /// Threads for the naive engine.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Debug, Args)]
pub struct RobustArgs {
    #[arg(long, default_value_t = 500)]
    pub n: usize,
    #[arg(long, default_value_t = 10_000.0)]
    pub penalty: f64,
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    pub limit: f64,
    #[arg(long, default_value_t = 1.0)]
    pub x0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub y0: f64,
    #[arg(long, default_value_t = 1000)]
    pub max_iters: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    #[arg(long, default_value_t = 100.0)]
    pub t_end: f64,
    #[arg(long, default_value_t = 5)]
    pub repeats: usize,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(
        args,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                2
            } else {
                let _ = write!(stdout, "{}", e.render());
                0
            };
            return code;
        }
    };
    match execute(&cli, stdout, stderr) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Runtime(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

enum Failure {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Destination for data, plus the stream that receives the summary line.
struct Sink<'a> {
    file: Option<BufWriter<File>>,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Sink<'_> {
    fn data(&mut self) -> &mut dyn Write {
        match &mut self.file {
            Some(f) => f,
            None => self.stdout,
        }
    }

    fn summary(&mut self, line: &str) -> Result<()> {
        let w: &mut dyn Write = if self.file.is_some() {
            self.stdout
        } else {
            self.stderr
        };
        writeln!(w, "{line}")?;
        Ok(())
    }

    fn finish(mut self) -> Result<()> {
        if let Some(f) = &mut self.file {
            f.flush()?;
        }
        Ok(())
    }
}

fn json<T: Serialize>(w: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *w, value)?;
    writeln!(w)?;
    Ok(())
}

fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    let file = match &cli.out {
        Some(p) => Some(BufWriter::new(File::create(p).map_err(|e| {
            Error::Io(format!("cannot create {}: {e}", p.display()))
        })?)),
        None => None,
    };
    let mut sink = Sink {
        file,
        stdout,
        stderr,
    };
    let code = match &cli.command {
        Command::Demo => cmd_demo(cli, &mut sink)?,
        Command::Sample(a) => cmd_sample(cli, a, &mut sink)?,
        Command::MvDemo(a) => cmd_mv_demo(cli, a, &mut sink)?,
        Command::Pendulum(a) => cmd_pendulum(cli, a, &mut sink)?,
        Command::Robust(a) => cmd_robust(cli, a, &mut sink)?,
        Command::Bench(a) => cmd_bench(cli, a, &mut sink)?,
    };
    sink.finish()?;
    Ok(code)
}

fn cmd_demo(cli: &Cli, sink: &mut Sink) -> Outcome {
    if cli.format.is_some() {
        return Err(Failure::Usage(
            "demo prints a text transcript; --format does not apply".into(),
        ));
    }
    let t = demo::session(cli.seed);
    sink.data().write_all(t.text.as_bytes())?;
    if t.passed() {
        Ok(0)
    } else {
        for f in &t.failures {
            writeln!(sink.stderr, "{f}")?;
        }
        Ok(1)
    }
}

fn cmd_sample(cli: &Cli, a: &SampleArgs, sink: &mut Sink) -> Outcome {
    let dist = match a.dist {
        Dist::Normal => ScalarDistribution::normal(a.mu, a.sigma),
        Dist::Uniform => ScalarDistribution::uniform(a.lo, a.hi),
        Dist::Poisson => ScalarDistribution::poisson(a.rate),
    }
    .map_err(|e| Failure::Usage(e.to_string()))?;
    if a.n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let mut rng = sampling::seeded_rng(cli.seed);
    let p = if a.random {
        sampling::random_samples(&dist, a.n, &mut rng)?
    } else {
        sampling::systematic_samples(&dist, a.n, &mut rng)?
    };
    match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => io::write_particles_csv(sink.data(), &p)?,
        Format::Json => writeln!(sink.data(), "{}", io::particles_to_json(&p)?)?,
    }
    sink.summary(&p.to_string())?;
    Ok(0)
}

fn cmd_mv_demo(cli: &Cli, a: &MvArgs, sink: &mut Sink) -> Outcome {
    if cli.format == Some(Format::Csv) {
        return Err(Failure::Usage("mv-demo emits JSON only".into()));
    }
    if a.n < 2 {
        return Err(Failure::Usage("--n must be at least 2".into()));
    }
    let d = demo::mv_demo(cli.seed, a.n, a.identity)?;
    json(sink.data(), &d)?;
    sink.summary(&format!(
        "frobenius relative error {:.4}",
        d.frobenius_rel_err
    ))?;
    Ok(0)
}

#[derive(Serialize)]
struct PendulumJson<'a> {
    engine: String,
    n: usize,
    dt: f64,
    t_end: f64,
    wall_ms: f64,
    /// Largest relative energy drift of any sample; absent for linear runs.
    max_energy_drift: Option<f64>,
    theta: &'a [SummaryRow],
}

fn cmd_pendulum(cli: &Cli, a: &PendulumArgs, sink: &mut Sink) -> Outcome {
    let engine = Engine::parse(&a.mode, a.n).map_err(|e| Failure::Usage(e.to_string()))?;
    if engine.count() == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let cfg = IntegratorConfig::new(a.dt, a.t_end, a.record_every)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let t0 = Instant::now();
    let run = simulate_pendulum_threads(engine, cli.seed, &cfg, a.threads)?;
    let wall_ms = t0.elapsed().as_secs_f64() * 1e3;
    let rows = run.theta_summary();
    match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => io::write_summary_csv(sink.data(), &rows)?,
        Format::Json => {
            let drift = match &run.trajectory {
                Trajectory::Scalar64(r) => Some(r.max_relative_energy_drift()),
                Trajectory::Particles(r) => Some(r.max_relative_energy_drift()),
                _ => None,
            };
            json(
                sink.data(),
                &PendulumJson {
                    engine: engine.name().to_string(),
                    n: engine.count(),
                    dt: cfg.dt,
                    t_end: cfg.t_end,
                    wall_ms,
                    max_energy_drift: drift,
                    theta: &rows,
                },
            )?
        }
    }
    if let Some(path) = &a.wide {
        let samples = run.samples(1).ok_or_else(|| {
            Failure::Usage(format!(
                "--wide needs a sampled mode, not {}",
                engine.name()
            ))
        })?;
        let f = File::create(path)
            .map_err(|e| Error::Io(format!("cannot create {}: {e}", path.display())))?;
        let mut w = BufWriter::new(f);
        io::write_wide_csv(&mut w, &samples)?;
        w.flush()?;
    }
    let last = rows.last().expect("the initial state is always recorded");
    sink.summary(&format!(
        "{engine}: t = {} s, θ mean {:.6}, std {:.6}",
        last.t, last.mean, last.std
    ))?;
    Ok(0)
}

#[derive(Serialize)]
struct RobustJson {
    n: usize,
    seed: u64,
    penalty: f64,
    limit: f64,
    pars: [f64; 2],
    cost: f64,
    worst_case: f64,
    iterations: usize,
    stop: StopReason,
}

fn cmd_robust(cli: &Cli, a: &RobustArgs, sink: &mut Sink) -> Outcome {
    if a.n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let base = RobustProblem::standard(a.n, cli.seed);
    let prob = RobustProblem::new(base.c, base.d, a.penalty, a.limit)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let cfg = DescentConfig {
        max_iters: a.max_iters,
        ..Default::default()
    };
    let sol = minimize(&prob, [a.x0, a.y0], &cfg)?;
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => json(
            sink.data(),
            &RobustJson {
                n: a.n,
                seed: cli.seed,
                penalty: prob.penalty,
                limit: prob.limit,
                pars: sol.pars,
                cost: sol.cost,
                worst_case: sol.worst_case,
                iterations: sol.iterations,
                stop: sol.stop,
            },
        )?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(sink.data());
            w.write_record(["x", "y", "cost", "worst_case", "iterations"])?;
            w.write_record([
                sol.pars[0].to_string(),
                sol.pars[1].to_string(),
                sol.cost.to_string(),
                sol.worst_case.to_string(),
                sol.iterations.to_string(),
            ])?;
            w.flush()?;
        }
    }
    sink.summary(&format!(
        "x = {:.6}, y = {:.6}, cost {:.6}, worst case {:.9} after {} iterations",
        sol.pars[0], sol.pars[1], sol.cost, sol.worst_case, sol.iterations
    ))?;
    Ok(0)
}

fn cmd_bench(cli: &Cli, a: &BenchArgs, sink: &mut Sink) -> Outcome {
    if a.n < 2 {
        return Err(Failure::Usage("--n must be at least 2".into()));
    }
    IntegratorConfig::new(a.dt, a.t_end, 1).map_err(|e| Failure::Usage(e.to_string()))?;
    let report = run_bench(&BenchConfig {
        n: a.n,
        dt: a.dt,
        t_end: a.t_end,
        seed: cli.seed,
        repeats: a.repeats.max(1),
        threads: a.threads.max(1),
    })?;
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => json(sink.data(), &report)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(sink.data());
            for row in &report.rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
    }
    let mc = report.row("mc").expect("mc row");
    sink.summary(&format!(
        "mc({}) {:.1} ms, {:.2}x faster than naive",
        a.n, mc.wall_ms, mc.speedup_vs_naive
    ))?;
    Ok(0)
}
