//! Command-line front end: point evaluations, sweeps written as CSV,
//! Hohmann-transfer planning and the validation suite.
//!
//! Exit codes: 0 success, 1 failed validation, 2 invalid parameters,
//! 3 internal-consistency failure, 4 unwritable output path.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use becorbit::bogoliubov::{ChannelMode, CondensateParams};
use becorbit::constants::{GM_EARTH, HE4_MASS, R_EARTH};
use becorbit::experiment::{
    sweep, ExperimentConfig, ManeuverSource, NegativityResult, ReferenceOrbit, SweepAxis,
};
use becorbit::orbits::{ManeuverPlan, OrbitPair};
use becorbit::Error;

const EXIT_VALIDATION_FAILED: u8 = 1;
const EXIT_INVALID_PARAMS: u8 = 2;
const EXIT_INCONSISTENT: u8 = 3;
const EXIT_UNWRITABLE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "becorbit",
    about = "Entanglement degradation between condensate phonon modes across an orbit change",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the negativity for a single maneuver.
    Point(PointArgs),
    /// Sweep the negativity over a range of the chosen axis and write CSV.
    Sweep(SweepArgs),
    /// Plan a Hohmann transfer between two circular orbits.
    Hohmann(HohmannArgs),
    /// Run the full invariant suite and report per-check residuals.
    Validate(ValidateArgs),
}

#[derive(Args, Clone, Default)]
struct SharedArgs {
    /// Thruster proper acceleration (m/s^2)
    #[arg(long)]
    a: Option<f64>,
    /// Trap length (m)
    #[arg(long = "L")]
    length: Option<f64>,
    /// Speed of sound in the condensate (m/s)
    #[arg(long)]
    cs: Option<f64>,
    /// Initial squeezing parameter
    #[arg(long)]
    r: Option<f64>,
    /// Spectator mode index
    #[arg(long)]
    k: Option<usize>,
    /// Mode of interest in the maneuvering condensate
    #[arg(long)]
    kp: Option<usize>,
    /// Mode-space truncation order
    #[arg(long)]
    nmax: Option<usize>,
    /// Comoving fundamental frequency Omega_1 (rad/s); defaults to 2*pi*cs/L
    #[arg(long)]
    omega1: Option<f64>,
    /// Channel construction
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Gravitational parameter GM (m^3/s^2)
    #[arg(long)]
    gm: Option<f64>,
    /// Reference outer orbit radius for delta-phi conversions (m)
    #[arg(long)]
    rh_ref: Option<f64>,
    /// Flat key=value configuration file ('#' starts a comment)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output CSV path
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    shared: SharedArgs,
    /// Burn duration (s)
    #[arg(long)]
    dtau: Option<f64>,
    /// Potential difference between orbits (m^2/s^2)
    #[arg(long)]
    dphi: Option<f64>,
    /// Lower orbit radius (m); needs --rh too
    #[arg(long)]
    rl: Option<f64>,
    /// Higher orbit radius (m); needs --rl too
    #[arg(long)]
    rh: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    shared: SharedArgs,
    /// Sweep axis
    #[arg(long, value_enum)]
    axis: Option<AxisArg>,
    /// Lower end of the sweep range
    #[arg(long)]
    min: Option<f64>,
    /// Upper end of the sweep range
    #[arg(long)]
    max: Option<f64>,
    /// Number of grid points
    #[arg(long)]
    steps: Option<usize>,
}

#[derive(Args)]
struct HohmannArgs {
    #[command(flatten)]
    shared: SharedArgs,
    /// Lower orbit radius (m)
    #[arg(long)]
    rl: Option<f64>,
    /// Higher orbit radius (m)
    #[arg(long)]
    rh: Option<f64>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Inject a perturbation into the reference symplectic form
    /// (negative-control hook; any nonzero value must fail the suite).
    #[arg(long, hide = true, default_value_t = 0.0)]
    perturb_omega: f64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Literal,
    Composed,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum AxisArg {
    Dphi,
    Dtau,
}

/// Layered configuration: built-in defaults, overridden by the config file,
/// overridden by command-line flags.
struct Resolved {
    a: f64,
    length: f64,
    cs: f64,
    r: f64,
    k: usize,
    kp: usize,
    nmax: usize,
    omega1: Option<f64>,
    mode: ChannelMode,
    gm: f64,
    rh_ref: f64,
    out: Option<PathBuf>,
}

fn parse_key<T: std::str::FromStr>(
    map: &HashMap<String, String>,
    key: &str,
) -> Result<Option<T>, String> {
    match map.get(key) {
        None => Ok(None),
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|_| format!("config key '{key}' has unparsable value '{raw}'")),
    }
}

impl Resolved {
    fn from(shared: &SharedArgs) -> Result<Self, String> {
        let file = match &shared.config {
            Some(path) => load_config(path)?,
            None => HashMap::new(),
        };
        let mode = match shared.mode {
            Some(ModeArg::Literal) => ChannelMode::Literal,
            Some(ModeArg::Composed) => ChannelMode::Composed,
            None => match file.get("mode").map(String::as_str) {
                Some("literal") => ChannelMode::Literal,
                Some("composed") | None => ChannelMode::Composed,
                Some(other) => return Err(format!("config key 'mode' has unknown value '{other}'")),
            },
        };
        let out = shared
            .out
            .clone()
            .or_else(|| file.get("out").map(PathBuf::from));
        Ok(Self {
            a: shared.a.or(parse_key(&file, "a")?).unwrap_or(1e-3),
            length: shared.length.or(parse_key(&file, "L")?).unwrap_or(1e-4),
            cs: shared.cs.or(parse_key(&file, "cs")?).unwrap_or(1e-3),
            r: shared.r.or(parse_key(&file, "r")?).unwrap_or(0.5),
            k: shared.k.or(parse_key(&file, "k")?).unwrap_or(1),
            kp: shared.kp.or(parse_key(&file, "kp")?).unwrap_or(1),
            nmax: shared.nmax.or(parse_key(&file, "nmax")?).unwrap_or(100),
            omega1: shared.omega1.or(parse_key(&file, "omega1")?),
            mode,
            gm: shared.gm.or(parse_key(&file, "gm")?).unwrap_or(GM_EARTH),
            rh_ref: shared
                .rh_ref
                .or(parse_key(&file, "rh_ref")?)
                .unwrap_or(R_EARTH + 4e5),
            out,
        })
    }

    fn experiment_config(&self, maneuver: ManeuverSource) -> Result<ExperimentConfig, Error> {
        let condensate = CondensateParams::new(self.length, self.cs, HE4_MASS, self.nmax)?;
        Ok(ExperimentConfig {
            condensate,
            thruster_acceleration: self.a,
            squeezing: self.r,
            mode_k: self.k,
            mode_k_prime: self.kp,
            omega1_override: self.omega1,
            channel_mode: self.mode,
            maneuver,
            reference_orbit: ReferenceOrbit {
                gm: self.gm,
                r_high: self.rh_ref,
            },
        })
    }
}

fn load_config(path: &Path) -> Result<HashMap<String, String>, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read config {path:?}: {e}"))?;
    let mut map = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {} is not key=value: '{raw}'", lineno + 1))?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// Floating-point serialization used everywhere output must be
/// byte-reproducible: 12 significant digits, '.' decimal separator.
fn fmt(v: f64) -> String {
    format!("{:.11e}", v)
}

const CSV_HEADER: &str = "delta_phi,delta_tau,h,n0,n_pert,n_num,degradation_pct";

fn csv_row(row: &NegativityResult) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        fmt(row.delta_phi),
        fmt(row.delta_tau),
        fmt(row.h),
        fmt(row.n0),
        fmt(row.n_pert),
        fmt(row.n_num),
        fmt(row.degradation_pct)
    )
}

fn write_csv(path: &Path, rows: &[NegativityResult]) -> Result<(), String> {
    let mut buf = String::with_capacity(64 * (rows.len() + 1));
    buf.push_str(CSV_HEADER);
    buf.push('\n');
    for row in rows {
        buf.push_str(&csv_row(row));
        buf.push('\n');
    }
    fs::write(path, buf).map_err(|e| format!("cannot write {path:?}: {e}"))
}

fn error_exit(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    match err {
        Error::InternalConsistency(_) => ExitCode::from(EXIT_INCONSISTENT),
        _ => ExitCode::from(EXIT_INVALID_PARAMS),
    }
}

fn param_exit(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INVALID_PARAMS)
}

fn cmd_point(args: &PointArgs) -> ExitCode {
    let resolved = match Resolved::from(&args.shared) {
        Ok(r) => r,
        Err(msg) => return param_exit(&msg),
    };
    let maneuver = match (args.dtau, args.dphi, args.rl, args.rh) {
        (Some(tau), None, None, None) => ManeuverSource::DeltaTau(tau),
        (None, Some(phi), None, None) => ManeuverSource::DeltaPhi(phi),
        (None, None, Some(rl), Some(rh)) => match OrbitPair::new(resolved.gm, rl, rh) {
            Ok(orbit) => ManeuverSource::Orbit(orbit),
            Err(e) => return error_exit(&e),
        },
        _ => {
            return param_exit(
                "specify the maneuver as exactly one of --dtau, --dphi, or --rl with --rh",
            )
        }
    };
    let cfg = match resolved.experiment_config(maneuver) {
        Ok(c) => c,
        Err(e) => return error_exit(&e),
    };
    let strongly_perturbative = cfg
        .condensate
        .perturbative_h(cfg.thruster_acceleration)
        .map(|h| h > 0.3)
        .unwrap_or(false);
    if strongly_perturbative {
        eprintln!("warning: h > 0.3; second-order results should be read with care");
    }
    let res = match cfg.evaluate() {
        Ok(r) => r,
        Err(e) => return error_exit(&e),
    };
    println!("n0={}", fmt(res.n0));
    println!("n_pert={}", fmt(res.n_pert));
    println!("n_num={}", fmt(res.n_num));
    println!("degradation_pct={}", fmt(res.degradation_pct));
    println!("h={}", fmt(res.h));
    println!("delta_tau={}", fmt(res.delta_tau));
    println!("delta_phi={}", fmt(res.delta_phi));
    if let Some(path) = &resolved.out {
        if let Err(msg) = write_csv(path, std::slice::from_ref(&res)) {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_UNWRITABLE);
        }
    }
    ExitCode::SUCCESS
}

fn cmd_sweep(args: &SweepArgs) -> ExitCode {
    let resolved = match Resolved::from(&args.shared) {
        Ok(r) => r,
        Err(msg) => return param_exit(&msg),
    };
    let file = match &args.shared.config {
        Some(path) => match load_config(path) {
            Ok(map) => map,
            Err(msg) => return param_exit(&msg),
        },
        None => HashMap::new(),
    };
    let axis = match args.axis {
        Some(AxisArg::Dphi) => SweepAxis::DeltaPhi,
        Some(AxisArg::Dtau) => SweepAxis::DeltaTau,
        None => match file.get("axis").map(String::as_str) {
            Some("dtau") => SweepAxis::DeltaTau,
            Some("dphi") | None => SweepAxis::DeltaPhi,
            Some(other) => return param_exit(&format!("unknown axis '{other}'")),
        },
    };
    let min = match args.min.map(Ok).unwrap_or_else(|| {
        parse_key(&file, "min").map(|v| v.unwrap_or(0.0))
    }) {
        Ok(v) => v,
        Err(msg) => return param_exit(&msg),
    };
    let max = match args.max.map(Ok).unwrap_or_else(|| {
        parse_key(&file, "max").map(|v| v.unwrap_or(2.0))
    }) {
        Ok(v) => v,
        Err(msg) => return param_exit(&msg),
    };
    let steps = match args.steps.map(Ok).unwrap_or_else(|| {
        parse_key(&file, "steps").map(|v| v.unwrap_or(100))
    }) {
        Ok(v) => v,
        Err(msg) => return param_exit(&msg),
    };
    let out = match &resolved.out {
        Some(path) => path.clone(),
        None => return param_exit("sweep requires --out PATH (or 'out' in the config file)"),
    };
    let cfg = match resolved.experiment_config(ManeuverSource::DeltaTau(0.0)) {
        Ok(c) => c,
        Err(e) => return error_exit(&e),
    };
    let rows = match sweep(&cfg, axis, min, max, steps) {
        Ok(rows) => rows,
        Err(e) => return error_exit(&e),
    };
    if let Err(msg) = write_csv(&out, &rows) {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_UNWRITABLE);
    }
    println!("wrote {} rows to {}", rows.len(), out.display());
    ExitCode::SUCCESS
}

fn cmd_hohmann(args: &HohmannArgs) -> ExitCode {
    let resolved = match Resolved::from(&args.shared) {
        Ok(r) => r,
        Err(msg) => return param_exit(&msg),
    };
    let (rl, rh) = match (args.rl, args.rh) {
        (Some(rl), Some(rh)) => (rl, rh),
        _ => return param_exit("hohmann requires --rl and --rh"),
    };
    let orbit = match OrbitPair::new(resolved.gm, rl, rh) {
        Ok(o) => o,
        Err(e) => return error_exit(&e),
    };
    let plan = match ManeuverPlan::for_orbit(orbit, resolved.a) {
        Ok(p) => p,
        Err(e) => return error_exit(&e),
    };
    println!("dv_l={}", fmt(plan.dv_low));
    println!("dv_h={}", fmt(plan.dv_high));
    println!("period_approx={}", fmt(plan.period.approx));
    println!("period_exact={}", fmt(plan.period.exact));
    println!("delta_phi={}", fmt(plan.delta_phi));
    println!("delta_tau={}", fmt(plan.delta_tau_low));
    println!("within_capability={}", plan.within_capability());
    ExitCode::SUCCESS
}

fn cmd_validate(args: &ValidateArgs) -> ExitCode {
    let checks = match becorbit::validate::run_all(args.perturb_omega) {
        Ok(c) => c,
        Err(e) => return error_exit(&e),
    };
    let mut all_pass = true;
    println!("{:<34} {:>14} {:>11} result", "check", "max residual", "threshold");
    for c in &checks {
        all_pass &= c.pass;
        println!(
            "{:<34} {:>14.3e} {:>11.0e} {}",
            c.name,
            c.residual,
            c.threshold,
            if c.pass { "pass" } else { "FAIL" }
        );
    }
    if all_pass {
        println!("all {} checks passed", checks.len());
        ExitCode::SUCCESS
    } else {
        println!("validation failed");
        ExitCode::from(EXIT_VALIDATION_FAILED)
    }
}

fn main() -> ExitCode {
    // Errors must not leave half-written output behind; flush explicitly.
    let code = match &Cli::parse().command {
        Command::Point(args) => cmd_point(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Hohmann(args) => cmd_hohmann(args),
        Command::Validate(args) => cmd_validate(args),
    };
    let _ = std::io::stdout().flush();
    code
}
