//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification check or a computation
//! fails, 2 on argument errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::classical_radiation::{self as cr, SphereFrame, SphereOptions};
use crate::error::Error;
use crate::kinematics::{self, ElectronState, GAUSS_PER_TESLA};
use crate::spectra;
use crate::spin_dynamics::{self as sd, SpinVectorRest};
use crate::verify::{self, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Electron g-factor used when `--g` is not given.
pub const DEFAULT_G: f64 = 2.002_319_304_36;

#[derive(Debug, Parser)]
#[command(name = "spinlight", version, about = "Spin-dependent synchrotron radiation calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print ξ and its five representations
    Xi(StateArgs),
    /// Print the first-order radiated power split into σ/π and Larmor/Thomas parts
    Power(StateArgs),
    /// CSV of the spectral correction densities (columns y, sigma, pi)
    Spectrum(DistArgs),
    /// CSV of the angular correction densities (columns chi, sigma, pi)
    Angular(DistArgs),
    /// CSV time series of the rest-frame spin on the orbit
    Precess(PrecessArgs),
    /// Classical mixed power: closed form against sphere integration
    Classical(ClassicalArgs),
    /// Run every acceptance check and print a PASS/FAIL table
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FieldUnit {
    Gauss,
    Tesla,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GridScale {
    Lin,
    Log,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Frame {
    Rest,
    Lab,
}

#[derive(Debug, Clone, Args)]
struct StateArgs {
    /// Lorentz factor
    #[arg(long, conflicts_with = "energy")]
    gamma: Option<f64>,
    /// Beam energy in GeV
    #[arg(long)]
    energy: Option<f64>,
    /// Magnetic field strength
    #[arg(long, default_value_t = 1e4)]
    field: f64,
    #[arg(long, value_enum, default_value_t = FieldUnit::Gauss)]
    unit: FieldUnit,
    /// Set ξ directly; the field is then derived from ξ and γ
    #[arg(long)]
    xi: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_G)]
    g: f64,
    /// Spin orientation along the field, +1 or -1
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    zeta: f64,
    /// Angle between spin and field, radians
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    nu: f64,
}

impl StateArgs {
    fn state(&self) -> Result<ElectronState, Error> {
        let gamma = match (self.gamma, self.energy) {
            (Some(g), _) => g,
            (None, Some(e)) => kinematics::gamma_from_energy_gev(e),
            (None, None) => 1000.0,
        };
        match self.xi {
            Some(xi) => ElectronState::from_xi(gamma, xi, self.g, self.zeta, self.nu),
            None => {
                let h = match self.unit {
                    FieldUnit::Gauss => self.field,
                    FieldUnit::Tesla => self.field * GAUSS_PER_TESLA,
                };
                ElectronState::new(gamma, h, self.g, self.zeta, self.nu)
            }
        }
    }
}

#[derive(Debug, Clone, Args)]
struct GridArgs {
    #[arg(long, allow_negative_numbers = true)]
    min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    max: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long, value_enum)]
    scale: Option<GridScale>,
}

#[derive(Debug, Clone, Args)]
struct DistArgs {
    #[arg(long, default_value_t = DEFAULT_G)]
    g: f64,
    #[command(flatten)]
    grid: GridArgs,
    /// Write CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
struct PrecessArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Duration in orbit periods
    #[arg(long, default_value_t = 1.0)]
    periods: f64,
    #[arg(long, default_value_t = 1000)]
    steps_per_period: usize,
    /// Emit every n-th step
    #[arg(long, default_value_t = 10)]
    every: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
struct ClassicalArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Proper time of the emission event
    #[arg(long, default_value_t = 0.0)]
    tau: f64,
    #[arg(long, value_enum, default_value_t = Frame::Rest)]
    frame: Frame,
    /// Starting Gauss–Legendre order of the sphere rule
    #[arg(long, default_value_t = 8)]
    order: usize,
    #[arg(long, default_value_t = 1e-12)]
    rel_tol: f64,
}

#[derive(Debug, Clone, Args)]
struct VerifyArgs {
    /// Additional g value for the closure checks
    #[arg(long)]
    g: Option<f64>,
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
}

/// Grid of abscissae; a single point requires `min == max`.
pub fn grid(min: f64, max: f64, points: usize, log: bool) -> Result<Vec<f64>, String> {
    if !min.is_finite() || !max.is_finite() {
        return Err(format!("grid bounds must be finite (min = {min}, max = {max})"));
    }
    if points == 0 {
        return Err("grid needs at least one point".into());
    }
    if points == 1 {
        if min != max {
            return Err(format!("a single grid point needs min = max (got {min}, {max})"));
        }
        return Ok(vec![min]);
    }
    if !(min < max) {
        return Err(format!("grid needs min < max (got {min}, {max})"));
    }
    if log && !(min > 0.0) {
        return Err(format!("log grid needs min > 0 (got {min})"));
    }
    let n = (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            let f = i as f64 / n;
            if i == 0 {
                min
            } else if i == points - 1 {
                max
            } else if log {
                (min.ln() + f * (max.ln() - min.ln())).exp()
            } else {
                min + f * (max - min)
            }
        })
        .collect())
}

fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_csv(out: &Option<PathBuf>, header: &[&str], rows: &[Vec<f64>]) -> Result<(), String> {
    let sink: Box<dyn Write> = match out {
        Some(p) => Box::new(File::create(p).map_err(|e| format!("cannot create {}: {e}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink);
    let err = |e: csv::Error| e.to_string();
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(r.iter().map(|&x| fmt_num(x))).map_err(err)?;
    }
    w.flush().map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter { .. } | Error::Domain { .. } | Error::Precondition(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            EXIT_FAILURE
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32, Failure> {
    match cmd {
        Command::Xi(a) => {
            let s = a.state()?;
            let x = kinematics::xi(&s);
            println!("gamma = {}", fmt_num(s.gamma));
            println!("H = {} G", fmt_num(s.field_h));
            println!("xi = {}", fmt_num(x.value));
            let labels = ["hbar gamma^2/(m0 c rho)", "hbar omega0 gamma^2/(m0 c^2)", "(H/H*) gamma", "mu0 gamma^2/(e0 rho)", "sqrt(w.w)"];
            for (i, (l, v)) in labels.iter().zip(x.representations).enumerate() {
                println!("xi[{}] {l} = {}", i + 1, fmt_num(v));
            }
            println!("max pairwise rel. diff = {:.3e}", x.max_pairwise_rel_diff());
            Ok(EXIT_OK)
        }
        Command::Power(a) => {
            let s = a.state()?;
            let b = spectra::total_power(&s);
            println!("xi = {:.6}", s.xi_value());
            println!("zeta xi cos(nu) = {:.6}", b.expansion);
            println!("main sigma = {:.6}", b.main_sigma);
            println!("main pi = {:.6}", b.main_pi);
            println!("em L = {:.6}", b.em_l);
            println!("em Th = {:.6}", b.em_th);
            println!("sigma total = {:.6}", b.sigma_total);
            println!("pi total = {:.6}", b.pi_total);
            println!("total/W_SR = {:.6}", b.total);
            if b.outside_first_order_regime() {
                eprintln!("warning: |xi cos(nu)| >= 0.1, the first-order result is unreliable");
            }
            Ok(EXIT_OK)
        }
        Command::Spectrum(a) => distribution(a, true),
        Command::Angular(a) => distribution(a, false),
        Command::Precess(a) => {
            let s = a.state.state()?;
            if a.steps_per_period == 0 {
                return Err(Failure::Usage("--steps-per-period must be positive".into()));
            }
            let period = 2.0 * std::f64::consts::PI / s.omega0;
            let z0 = SpinVectorRest::new(cr::orbit(&s, 0.0).spin)?;
            let h = sd::precess_history(
                z0,
                |t| sd::orbit_omega(&s, t),
                a.periods * period,
                period / a.steps_per_period as f64,
                a.every,
            )?;
            let rows: Vec<Vec<f64>> = h.iter().map(|(t, z)| vec![*t, z.x(), z.y(), z.z(), z.norm()]).collect();
            write_csv(&a.out, &["t", "zx", "zy", "zz", "norm"], &rows).map_err(Failure::Compute)?;
            Ok(EXIT_OK)
        }
        Command::Classical(a) => {
            let s = a.state.state()?;
            let o = cr::orbit(&s, a.tau);
            let p = s.particle();
            let closed = cr::mixed_power_closed_form(&o, &p);
            let opts = SphereOptions {
                frame: match a.frame {
                    Frame::Rest => SphereFrame::Rest,
                    Frame::Lab => SphereFrame::Lab,
                },
                initial_order: a.order,
                rel_tol: a.rel_tol,
                ..SphereOptions::default()
            };
            let sphere = cr::mixed_power_angular_integration(&o, &p, opts)?;
            let diff = ((sphere.mixed.w_em - closed.w_em) / closed.w_em).abs();
            let lienard = kinematics::w_sr_lienard(&s);
            println!("xi = {:.6e}", s.xi_value());
            println!("closed form W_em = {} erg/s", fmt_num(closed.w_em));
            println!("closed form W_em/W_SR = {}", fmt_num(closed.ratio));
            println!("expected (zeta/3)(g/2) xi cos(nu) = {}", fmt_num(cr::expected_ratio(&s, p.moment)));
            println!("sphere W_em = {} erg/s (order {})", fmt_num(sphere.mixed.w_em), sphere.order);
            println!("sphere charge-only power / W_SR = {}", fmt_num(sphere.charge_power / lienard));
            let ok = diff <= verify::SPHERE_TOL;
            println!("match: {} (rel. diff {diff:.3e})", if ok { "yes" } else { "no" });
            Ok(if ok { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Verify(a) => {
            let mut opts = match a.g {
                Some(g) => VerifyOptions::with_extra_g(g),
                None => VerifyOptions::default(),
            };
            opts.seed = a.seed;
            let results = verify::run_all(&opts);
            for r in &results {
                println!("{r}");
            }
            let ok = verify::all_passed(&results);
            println!("overall: {}", if ok { "PASS" } else { "FAIL" });
            Ok(if ok { EXIT_OK } else { EXIT_FAILURE })
        }
    }
}

fn distribution(a: DistArgs, spectral: bool) -> Result<i32, Failure> {
    let (min, max, points, scale) = if spectral {
        (1e-3, 10.0, 100, GridScale::Log)
    } else {
        (-5.0, 5.0, 101, GridScale::Lin)
    };
    let GridArgs { min: lo, max: hi, points: n, scale: sc } = a.grid;
    let points = n.unwrap_or(points);
    // one point with only one bound given means that bound
    let (min, max) = match (lo, hi, points) {
        (Some(l), None, 1) => (l, l),
        (None, Some(h), 1) => (h, h),
        _ => (lo.unwrap_or(min), hi.unwrap_or(max)),
    };
    let log = matches!(sc.unwrap_or(scale), GridScale::Log);
    let xs = grid(min, max, points, log).map_err(Failure::Usage)?;
    let mut rows = Vec::with_capacity(xs.len());
    for x in xs {
        let d = if spectral {
            spectra::spectral_sample(x, a.g)?
        } else {
            spectra::angular_sample(x, a.g)
        };
        rows.push(vec![d.abscissa, d.sigma_density, d.pi_density]);
    }
    let header = if spectral { ["y", "sigma", "pi"] } else { ["chi", "sigma", "pi"] };
    write_csv(&a.out, &header, &rows).map_err(Failure::Compute)?;
    Ok(EXIT_OK)
}
