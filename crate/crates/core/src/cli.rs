//! Experiment runner behind the `fujd` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::analysis::{compare_rates, threshold_bisect, RateReport, Verdict};
use crate::bubble::{a_limit, bubble_integrals};
use crate::error::FujdError;
use crate::heatkernel::{c_constant, c_constant_quadrature, kernel_check, kernel_check_slope, TailData, TailShape};
use crate::modulation::{
    fk_rate, log_grid, orthogonality_residual, supnorm_from_scale, Mu0Solver, PsiMode, ALPHA5, DEFAULT_M,
    DEFAULT_SWITCH,
};
use crate::pde::{build_grid, initial_field, simulate_from, Checkpoint, SimConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "fujd", version, about = "Bubble dynamics of the energy-critical heat equation in R^5")]
pub struct Cli {
    /// Worker threads for independent runs.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Directory for CSV/JSON artifacts and the run manifest.
    #[arg(long, global = true, default_value = "fujd-out")]
    pub out: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bubble constants, A(inf) and C_{5,gamma}.
    Constants {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_values_t = [-1.0, 0.0, 1.0, 1.8, 2.5, 4.0])]
        gamma: Vec<f64>,
    },
    /// Heat-kernel asymptotics sweep with slope checks.
    KernelCheck {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_values_t = [1.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0])]
        gamma: Vec<f64>,
        /// Times; defaults to 10^2 .. 10^6 in half decades.
        #[arg(long, value_delimiter = ',')]
        t: Vec<f64>,
    },
    /// Modulation trajectory mu0(t).
    Modulation(ModulationArgs),
    /// Radial PDE run from a config file.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Where to write the final state; defaults to `<out>/final.fujd`.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Continue from a checkpoint instead of building initial data.
        #[arg(long)]
        restart: Option<PathBuf>,
    },
    /// Rate verdicts against the five-dimensional sup-norm law.
    Rates {
        #[command(flatten)]
        run: ModulationArgs,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        gammas: Vec<f64>,
        /// Fit a simulate trajectory CSV (columns t, sup_norm) instead.
        #[arg(long)]
        trajectory: Option<PathBuf>,
    },
    /// Threshold amplitude by bisection.
    Threshold {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Fast,
    Hybrid,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ModulationArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub d0: Option<f64>,
    #[arg(long)]
    pub d1: Option<f64>,
    #[arg(long)]
    pub m: Option<f64>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Switch time of the hybrid mode.
    #[arg(long)]
    pub switch: Option<f64>,
    #[arg(long)]
    pub t_start: Option<f64>,
    #[arg(long)]
    pub t_end: Option<f64>,
    #[arg(long)]
    pub per_decade: Option<usize>,
}

fn default_d0() -> f64 {
    1.0
}
fn default_m() -> f64 {
    DEFAULT_M
}
fn default_t_start() -> f64 {
    1e6
}
fn default_t_end() -> f64 {
    1e9
}
fn default_per_decade() -> usize {
    10
}
fn default_shape() -> TailShape {
    TailShape::PowerLaw
}

/// Modulation and rates runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModulationConfig {
    pub gamma: f64,
    #[serde(default = "default_d0")]
    pub d0: f64,
    #[serde(default)]
    pub d1: Option<f64>,
    #[serde(default = "default_shape")]
    pub tail_shape: TailShape,
    #[serde(default = "default_m")]
    pub m: f64,
    #[serde(default)]
    pub mode: PsiMode,
    #[serde(default = "default_t_start")]
    pub t_start: f64,
    #[serde(default = "default_t_end")]
    pub t_end: f64,
    #[serde(default = "default_per_decade")]
    pub per_decade: usize,
}

impl ModulationConfig {
    pub fn new(gamma: f64) -> Self {
        Self {
            gamma,
            d0: 1.0,
            d1: None,
            tail_shape: TailShape::PowerLaw,
            m: DEFAULT_M,
            mode: PsiMode::default(),
            t_start: default_t_start(),
            t_end: default_t_end(),
            per_decade: default_per_decade(),
        }
    }

    pub fn tail(&self) -> crate::Result<TailData> {
        TailData::new(self.d0, self.d1.unwrap_or(self.d0), self.gamma, self.tail_shape)
    }

    pub fn times(&self) -> Vec<f64> {
        log_grid(self.t_start, self.t_end, self.per_decade)
    }
}

fn default_width() -> f64 {
    1e-3
}
fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdConfig {
    pub alpha_lo: f64,
    pub alpha_hi: f64,
    #[serde(default = "default_width")]
    pub width: f64,
    #[serde(default = "yes")]
    pub check_horizon: bool,
    pub simulation: SimConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub config: serde_json::Value,
    pub determinism: &'static str,
    pub version: &'static str,
    pub outputs: Vec<PathBuf>,
    pub wall_time_s: f64,
    pub exit_code: i32,
}

const DETERMINISM: &str = "no randomness; identical inputs give byte-identical CSV/JSON outputs";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Run(FujdError),
}

impl From<FujdError> for CliError {
    fn from(e: FujdError) -> Self {
        match e {
            FujdError::Config(m) => CliError::Usage(m),
            e => CliError::Run(e),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Run(FujdError::Io(e))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Run(FujdError::Io(std::io::Error::other(e)))
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Run(_) => EXIT_CHECK_FAILED,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Run(e) => write!(f, "{e}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses TOML, or JSON for `.json` files.
pub fn load_config<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text, is_json(path)).map_err(|m| CliError::Usage(format!("{}: {m}", path.display())))
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

pub fn parse_config<T: DeserializeOwned>(text: &str, json: bool) -> std::result::Result<T, String> {
    if json {
        serde_json::from_str(text).map_err(|e| e.to_string())
    } else {
        toml::from_str(text).map_err(|e| e.to_string())
    }
}

pub fn emit_config<T: Serialize>(config: &T, json: bool) -> std::result::Result<String, String> {
    if json {
        serde_json::to_string_pretty(config).map_err(|e| e.to_string())
    } else {
        toml::to_string(config).map_err(|e| e.to_string())
    }
}

struct Ctx {
    out: PathBuf,
    outputs: Vec<PathBuf>,
}

impl Ctx {
    fn path(&mut self, name: &str) -> PathBuf {
        let p = self.out.join(name);
        self.outputs.push(p.clone());
        p
    }

    fn csv<S: Serialize>(&mut self, name: &str, rows: &[S]) -> CliResult<()> {
        let mut w = csv::Writer::from_path(self.path(name))?;
        for r in rows {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    }

    fn json<S: Serialize>(&mut self, name: &str, value: &S) -> CliResult<()> {
        let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Run(FujdError::Io(e.into())))?;
        fs::write(self.path(name), text + "\n")?;
        Ok(())
    }
}

/// Runs the parsed command; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let start = Instant::now();
    let name = subcommand_name(&cli.command);
    if let Err(e) = fs::create_dir_all(&cli.out) {
        eprintln!("error: cannot create {}: {e}", cli.out.display());
        return EXIT_USAGE;
    }
    let mut ctx = Ctx { out: cli.out.clone(), outputs: Vec::new() };
    let outcome = dispatch(&cli.command, &mut ctx);
    let (code, config) = match outcome {
        Ok((code, config)) => (code, config),
        Err(e) => {
            eprintln!("error: {e}");
            (e.exit_code(), serde_json::Value::Null)
        }
    };
    let manifest = RunManifest {
        subcommand: name.to_string(),
        config,
        determinism: DETERMINISM,
        version: env!("CARGO_PKG_VERSION"),
        outputs: ctx.outputs.clone(),
        wall_time_s: start.elapsed().as_secs_f64(),
        exit_code: code,
    };
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serialises");
    if let Err(e) = fs::write(cli.out.join("manifest.json"), text + "\n") {
        eprintln!("warning: manifest not written: {e}");
    }
    code
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::Constants { .. } => "constants",
        Command::KernelCheck { .. } => "kernel-check",
        Command::Modulation(_) => "modulation",
        Command::Simulate { .. } => "simulate",
        Command::Rates { .. } => "rates",
        Command::Threshold { .. } => "threshold",
    }
}

fn snapshot<T: Serialize>(c: &T) -> serde_json::Value {
    serde_json::to_value(c).unwrap_or(serde_json::Value::Null)
}

fn dispatch(cmd: &Command, ctx: &mut Ctx) -> CliResult<(i32, serde_json::Value)> {
    match cmd {
        Command::Constants { gamma } => constants(gamma, ctx).map(|c| (c, snapshot(&serde_json::json!({ "gamma": gamma })))),
        Command::KernelCheck { gamma, t } => {
            let times = if t.is_empty() { log_grid(1e2, 1e6, 2) } else { t.clone() };
            let code = kernel_check_cmd(gamma, &times, ctx)?;
            Ok((code, serde_json::json!({ "gamma": gamma, "t": times })))
        }
        Command::Modulation(args) => {
            let cfg = modulation_config(args, None)?;
            let code = modulation_cmd(&cfg, ctx)?;
            Ok((code, snapshot(&cfg)))
        }
        Command::Simulate { config, checkpoint, restart } => {
            let cfg: SimConfig = load_config(config)?;
            let code = simulate_cmd(&cfg, checkpoint.as_deref(), restart.as_deref(), ctx)?;
            Ok((code, snapshot(&cfg)))
        }
        Command::Rates { run, gammas, trajectory } => rates_cmd(run, gammas, trajectory.as_deref(), ctx),
        Command::Threshold { config } => {
            let cfg: ThresholdConfig = load_config(config)?;
            let code = threshold_cmd(&cfg, ctx)?;
            Ok((code, snapshot(&cfg)))
        }
    }
}

/// Config file (if any) with command-line overrides; `gamma` may come from `default_gamma`.
pub fn modulation_config(a: &ModulationArgs, default_gamma: Option<f64>) -> CliResult<ModulationConfig> {
    let mut c = match &a.config {
        Some(p) => load_config::<ModulationConfig>(p)?,
        None => {
            let gamma = a
                .gamma
                .or(default_gamma)
                .ok_or_else(|| CliError::Usage("missing required key `gamma` (pass --gamma or --config)".into()))?;
            ModulationConfig::new(gamma)
        }
    };
    if let Some(g) = a.gamma {
        c.gamma = g;
    }
    if let Some(g) = default_gamma {
        c.gamma = g;
    }
    if let Some(v) = a.d0 {
        c.d0 = v;
    }
    if let Some(v) = a.d1 {
        c.d1 = Some(v);
    }
    if let Some(v) = a.m {
        c.m = v;
    }
    if let Some(v) = a.t_start {
        c.t_start = v;
    }
    if let Some(v) = a.t_end {
        c.t_end = v;
    }
    if let Some(v) = a.per_decade {
        c.per_decade = v;
    }
    match a.mode {
        Some(ModeArg::Exact) => c.mode = PsiMode::Exact,
        Some(ModeArg::Fast) => c.mode = PsiMode::Fast,
        Some(ModeArg::Hybrid) => c.mode = PsiMode::Hybrid { switch: a.switch.unwrap_or(DEFAULT_SWITCH) },
        None => {
            if let (Some(s), PsiMode::Hybrid { .. }) = (a.switch, c.mode) {
                c.mode = PsiMode::Hybrid { switch: s };
            }
        }
    }
    if !(c.t_end > c.t_start && c.t_start > 0.0) || c.per_decade == 0 {
        return Err(CliError::Usage(format!(
            "need t_end > t_start > 0 and per_decade >= 1, got {} .. {} at {}",
            c.t_start, c.t_end, c.per_decade
        )));
    }
    Ok(c)
}

#[derive(Serialize)]
struct ConstantRow {
    quantity: String,
    value: f64,
    reference: Option<f64>,
}

fn constants(gammas: &[f64], ctx: &mut Ctx) -> CliResult<i32> {
    let ints = bubble_integrals(5, f64::INFINITY)?;
    let mut rows = vec![
        ConstantRow { quantity: "alpha_5".into(), value: ALPHA5, reference: Some(15f64.powf(0.75)) },
        ConstantRow { quantity: "I_p".into(), value: ints.power, reference: None },
        ConstantRow { quantity: "I_Z2".into(), value: ints.kernel_sq, reference: None },
        ConstantRow { quantity: "I_mix".into(), value: ints.mixed, reference: None },
        ConstantRow { quantity: "I_mix/I_p".into(), value: ints.mixed_ratio(), reference: Some(-9.0 / 14.0) },
        ConstantRow { quantity: "A_inf".into(), value: a_limit(5)?, reference: None },
    ];
    for &g in gammas {
        let closed = c_constant(5, g)?;
        let quad = if g < 5.0 { Some(c_constant_quadrature(5, g)?) } else { None };
        rows.push(ConstantRow { quantity: format!("C_5({g})"), value: closed, reference: quad });
    }
    println!("{:<14} {:>22} {:>22}", "quantity", "value", "reference");
    for r in &rows {
        let reference = r.reference.map(|v| format!("{v:.15e}")).unwrap_or_default();
        println!("{:<14} {:>22.15e} {:>22}", r.quantity, r.value, reference);
    }
    ctx.csv("constants.csv", &rows)?;
    Ok(EXIT_OK)
}

fn kernel_check_cmd(gammas: &[f64], times: &[f64], ctx: &mut Ctx) -> CliResult<i32> {
    let rows = kernel_check(5, gammas, times)?;
    ctx.csv("kernel_check.csv", &rows)?;
    let mut slopes = Vec::new();
    for &g in gammas {
        let sub: Vec<_> = rows.iter().filter(|r| r.gamma == g).cloned().collect();
        slopes.push(kernel_check_slope(&sub)?);
    }
    println!("{:>8} {:>10} {:>10} {:>12} {:>6}", "gamma", "predicted", "fitted", "log", "pass");
    for s in &slopes {
        println!(
            "{:>8} {:>10.4} {:>10.4} {:>12} {:>6}",
            s.gamma,
            s.predicted,
            s.fitted,
            format!("{:?}", s.log_factor),
            s.pass
        );
    }
    ctx.csv("kernel_slopes.csv", &slopes)?;
    Ok(if slopes.iter().all(|s| s.pass) { EXIT_OK } else { EXIT_CHECK_FAILED })
}

#[derive(Debug, Clone, Serialize)]
pub struct ModulationRow {
    pub t: f64,
    pub mu0: f64,
    pub mu0_dot: f64,
    pub tau: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub beta: f64,
    pub supnorm_pred: f64,
    pub fk_rate: f64,
    pub orth_residual: f64,
}

pub fn modulation_rows(cfg: &ModulationConfig) -> crate::Result<Vec<ModulationRow>> {
    let solver = Mu0Solver::new(cfg.tail()?, cfg.m, cfg.mode)?;
    let states = solver.solve(&cfg.times())?;
    states
        .par_iter()
        .map(|s| {
            Ok(ModulationRow {
                t: s.t,
                mu0: s.mu0,
                mu0_dot: s.mu0_dot,
                tau: s.tau,
                r: s.r,
                beta: solver.beta(s.t)?,
                supnorm_pred: supnorm_from_scale(s.mu0),
                fk_rate: fk_rate(cfg.gamma, s.t),
                orth_residual: orthogonality_residual(s)?,
            })
        })
        .collect()
}

fn modulation_cmd(cfg: &ModulationConfig, ctx: &mut Ctx) -> CliResult<i32> {
    let rows = modulation_rows(cfg)?;
    ctx.csv("modulation.csv", &rows)?;
    if let (Some(a), Some(b)) = (rows.first(), rows.last()) {
        println!("gamma = {}: mu0 {:.6e} -> {:.6e} over t = {:e} .. {:e}", cfg.gamma, a.mu0, b.mu0, a.t, b.t);
    }
    let worst = rows.iter().map(|r| r.orth_residual.abs()).fold(0.0, f64::max);
    println!("max |orthogonality residual| = {worst:e}");
    Ok(EXIT_OK)
}

fn simulate_cmd(cfg: &SimConfig, checkpoint: Option<&Path>, restart: Option<&Path>, ctx: &mut Ctx) -> CliResult<i32> {
    let (grid, field) = match restart {
        Some(p) => {
            let cp = Checkpoint::read(p)?;
            let (grid, field) = cp.restore()?;
            if field.t >= cfg.t_end {
                return Err(CliError::Usage(format!("checkpoint time {} is past t_end = {}", field.t, cfg.t_end)));
            }
            (grid, field)
        }
        None => {
            let grid = build_grid(cfg)?;
            let field = initial_field(cfg, &grid)?;
            (grid, field)
        }
    };
    for w in &grid.warnings {
        eprintln!("warning: {w}");
    }
    let report = simulate_from(cfg, &grid, field)?;
    ctx.csv("trajectory.csv", &report.points)?;
    let cp_path = match checkpoint {
        Some(p) => {
            ctx.outputs.push(p.to_path_buf());
            p.to_path_buf()
        }
        None => ctx.path("final.fujd"),
    };
    Checkpoint::new(&grid, cfg.max_nodes, &report.final_field).write(&cp_path)?;
    println!(
        "status {}; {} accepted, {} rejected steps; {} nodes; positivity violations {}, energy violations {}",
        report.status,
        report.accepted_steps,
        report.rejected_steps,
        grid.len(),
        report.positivity_violations,
        report.energy_violations
    );
    Ok(if report.positivity_violations == 0 && report.energy_violations == 0 {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

#[derive(Deserialize)]
struct TrajectoryRecord {
    t: f64,
    sup_norm: f64,
}

pub fn read_trajectory(path: &Path) -> CliResult<Vec<(f64, f64)>> {
    let mut r = csv::Reader::from_path(path)
        .map_err(|e| CliError::Usage(format!("cannot read trajectory {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for rec in r.deserialize::<TrajectoryRecord>() {
        let rec = rec.map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        out.push((rec.t, rec.sup_norm));
    }
    Ok(out)
}

/// Sup-norm series `(t, 15^{3/4} mu0^{-3/2})` of the modulation trajectory.
pub fn modulation_supnorm(cfg: &ModulationConfig) -> crate::Result<Vec<(f64, f64)>> {
    let solver = Mu0Solver::new(cfg.tail()?, cfg.m, cfg.mode)?;
    Ok(solver
        .solve(&cfg.times())?
        .iter()
        .map(|s| (s.t, supnorm_from_scale(s.mu0)))
        .collect())
}

fn print_reports(reports: &[RateReport]) {
    println!(
        "{:>6} {:>10} {:>10} {:>10} {:>10} {:>6} {:>13}",
        "gamma", "t_a", "t_b", "measured", "predicted", "log", "verdict"
    );
    for r in reports {
        println!(
            "{:>6} {:>10.3e} {:>10.3e} {:>10.4} {:>10.4} {:>6} {:>13}",
            r.gamma,
            r.t_a,
            r.t_b,
            r.measured_slope,
            r.predicted_slope,
            r.log_power,
            format!("{:?}", r.verdict).to_lowercase()
        );
    }
}

fn rates_cmd(
    run: &ModulationArgs,
    gammas: &[f64],
    trajectory: Option<&Path>,
    ctx: &mut Ctx,
) -> CliResult<(i32, serde_json::Value)> {
    let (reports, config) = if let Some(path) = trajectory {
        let gamma = run
            .gamma
            .ok_or_else(|| CliError::Usage("missing required key `gamma` for a trajectory fit".into()))?;
        let series = read_trajectory(path)?;
        let report = compare_rates(&series, gamma, None)?;
        (vec![report], serde_json::json!({ "gamma": gamma, "trajectory": path }))
    } else {
        let list: Vec<Option<f64>> = if gammas.is_empty() { vec![None] } else { gammas.iter().map(|&g| Some(g)).collect() };
        let configs = list
            .iter()
            .map(|&g| modulation_config(run, g))
            .collect::<CliResult<Vec<_>>>()?;
        let reports = configs
            .par_iter()
            .map(|c| compare_rates(&modulation_supnorm(c)?, c.gamma, None))
            .collect::<crate::Result<Vec<_>>>()?;
        (reports, snapshot(&configs))
    };
    print_reports(&reports);
    ctx.json("rates.json", &reports)?;
    let ok = reports.iter().all(|r| r.verdict == Verdict::Consistent);
    Ok((if ok { EXIT_OK } else { EXIT_CHECK_FAILED }, config))
}

fn threshold_cmd(cfg: &ThresholdConfig, ctx: &mut Ctx) -> CliResult<i32> {
    let res = threshold_bisect(&cfg.simulation, cfg.alpha_lo, cfg.alpha_hi, cfg.width, cfg.check_horizon)?;
    println!(
        "alpha* in [{:.8}, {:.8}] (width {:e}, {} halvings, {} runs)",
        res.alpha_lo,
        res.alpha_hi,
        res.width,
        res.iterations,
        res.trials.len()
    );
    if let Some(h) = res.horizon {
        println!(
            "horizon 2T (t_end = {:e}): alpha_lo still global: {}, alpha_hi still blows up: {}",
            h.t_end, h.lo_still_global, h.hi_still_blows_up
        );
    }
    ctx.json("threshold.json", &res)?;
    Ok(EXIT_OK)
}
