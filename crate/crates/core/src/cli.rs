//! Configuration-driven experiment runner behind the `dnls` binary.
//!
//! Configuration is a flat `key = value` file (`#` starts a comment),
//! overridden by `--set key=value` and `--seed`. Outputs are written to the
//! directory `output_path`:
//!
//! * `simulate`: `trajectory.csv` (and `trajectory.svg` with `--svg`);
//! * `check-identities`: `identities.txt`;
//! * `check-bounds`: `bounds.txt` and `bounds_n{n}.csv` (and `bounds.svg`).
//!
//! Exit codes: 0 success, 2 configuration error or budget refusal,
//! 3 numerical failure, 4 check failure.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rand::Rng;

use crate::bounds::{
    check_gagliardo_nirenberg, check_holder_interpolation, check_multilinear_bound, check_scaling_invariance,
    run_growth_experiment, GrowthConfig,
};
use crate::dynamics::{integrate, IntegrationConfig, Observable};
use crate::energies::{
    d_m, lambda_derivative_identity, lambda_m, lambda_time_derivative, multiplier, mu_eval, quadratic_derivative,
    quadratic_derivative_resonant, Constant, LambdaBudget, ModifiedEnergy, ResonancePoint,
};
use crate::initial::{self, InitialCondition, RNG_NAME};
use crate::lattice::LatticeState;
use crate::svg::line_plot;
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_CHECK: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "dnls", version, about = "Cubic discrete NLS experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate and write the observable trajectory as CSV.
    Simulate(CommonArgs),
    /// Run the exact-identity suite on the configured state.
    CheckIdentities(CommonArgs),
    /// Run the growth experiment and the inequality checkers.
    CheckBounds(CommonArgs),
}

#[derive(Debug, Args, Clone, Default)]
pub struct CommonArgs {
    /// Flat key = value configuration file.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Override one configuration key (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Shorthand for `--set seed=SEED`; applied last.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Also write SVG line plots.
    #[arg(long)]
    pub svg: bool,
    /// Lift the grid-size limit on cubic resonant sums.
    #[arg(long)]
    pub allow_large_lambda3: bool,
}

/// Validated experiment configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n_points: usize,
    pub stepsize: f64,
    pub nu: f64,
    pub tau: f64,
    pub t_end: f64,
    pub n_max: usize,
    pub seed: u64,
    pub initial_condition: InitialCondition,
    pub record_every: usize,
    pub lambda3_budget_n: usize,
    pub output_path: PathBuf,
    /// Flag a growth constant above this value as a failure.
    pub c_ceiling: f64,
    /// Replace the resonant-sum weight by a wrong one in `check-identities`.
    pub inject_weight_error: bool,
}

const KEYS: [&str; 17] = [
    "n_points",
    "stepsize",
    "nu",
    "tau",
    "t_end",
    "n_max",
    "seed",
    "initial_condition",
    "mode",
    "amplitude",
    "width",
    "cutoff_fraction",
    "record_every",
    "lambda3_budget_n",
    "output_path",
    "inject_weight_error",
    "c_ceiling",
];

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self::from_map(&BTreeMap::new()).expect("defaults are valid")
    }
}

impl ExperimentConfig {
    /// Parses `key = value` lines; blank lines and `#` comments are skipped.
    pub fn parse_text(text: &str) -> Result<BTreeMap<String, String>> {
        let mut map = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = parse_pair(line).map_err(|e| Error::Config(format!("line {}: {e}", i + 1)))?;
            map.insert(k, v);
        }
        Ok(map)
    }

    /// Builds the configuration from defaults, the optional file, `--set`
    /// overrides and `--seed`, in that order.
    pub fn load(args: &CommonArgs) -> Result<Self> {
        let mut map = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
                Self::parse_text(&text)?
            }
            None => BTreeMap::new(),
        };
        for s in &args.set {
            let (k, v) = parse_pair(s).map_err(Error::Config)?;
            map.insert(k, v);
        }
        if let Some(seed) = args.seed {
            map.insert("seed".into(), seed.to_string());
        }
        Self::from_map(&map)
    }

    pub fn from_map(map: &BTreeMap<String, String>) -> Result<Self> {
        if let Some(k) = map.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(Error::Config(format!("unknown key `{k}`")));
        }
        let get = |k: &str| map.get(k).map(String::as_str);
        fn num<T: std::str::FromStr>(key: &str, v: Option<&str>, default: T) -> Result<T> {
            match v {
                None => Ok(default),
                Some(s) => s
                    .parse()
                    .map_err(|_| Error::Config(format!("`{key}`: cannot parse `{s}`"))),
            }
        }
        let positive = |key: &str, x: f64| -> Result<f64> {
            if x.is_finite() && x > 0.0 {
                Ok(x)
            } else {
                Err(Error::Config(format!("`{key}` must be positive, got {x}")))
            }
        };

        let n_points: usize = num("n_points", get("n_points"), 32)?;
        if n_points < 8 || !n_points.is_multiple_of(2) {
            return Err(Error::Config(format!("`n_points` must be even and at least 8, got {n_points}")));
        }
        let nu: f64 = num("nu", get("nu"), 1.0)?;
        if nu != 1.0 && nu != -1.0 {
            return Err(Error::Config(format!("`nu` must be +1 or -1, got {nu}")));
        }
        let n_max: usize = num("n_max", get("n_max"), 3)?;
        if !(1..=crate::lattice::MAX_SOBOLEV_INDEX).contains(&n_max) {
            return Err(Error::Config(format!(
                "`n_max` must lie in 1..={}, got {n_max}",
                crate::lattice::MAX_SOBOLEV_INDEX
            )));
        }
        let record_every: usize = num("record_every", get("record_every"), 10)?;
        let lambda3_budget_n: usize = num("lambda3_budget_n", get("lambda3_budget_n"), 32)?;
        if record_every == 0 || lambda3_budget_n == 0 {
            return Err(Error::Config("`record_every` and `lambda3_budget_n` must be positive".into()));
        }

        let amplitude: f64 = num("amplitude", get("amplitude"), 0.5)?;
        if !(amplitude.is_finite() && amplitude >= 0.0) {
            return Err(Error::Config(format!("`amplitude` must be nonnegative, got {amplitude}")));
        }
        let kind = get("initial_condition").unwrap_or("random_bandlimited");
        let require = |k: &str| {
            get(k).ok_or_else(|| Error::Config(format!("initial condition `{kind}` requires `{k}`")))
        };
        let initial_condition = match kind {
            "plane_wave" => InitialCondition::PlaneWave {
                mode: num("mode", Some(require("mode")?), 0)?,
                amplitude,
            },
            "gaussian" => InitialCondition::Gaussian {
                width: positive("width", num("width", Some(require("width")?), 0.0)?)?,
                amplitude,
            },
            "random_bandlimited" => {
                let cutoff_fraction: f64 = num("cutoff_fraction", get("cutoff_fraction"), 0.25)?;
                if !(cutoff_fraction > 0.0 && cutoff_fraction <= 1.0) {
                    return Err(Error::Config(format!("`cutoff_fraction` must lie in (0, 1], got {cutoff_fraction}")));
                }
                InitialCondition::RandomBandlimited {
                    cutoff_fraction,
                    amplitude,
                }
            }
            "spike" => InitialCondition::Spike { amplitude },
            other => {
                return Err(Error::Config(format!(
                    "unknown initial_condition `{other}` (plane_wave, gaussian, random_bandlimited, spike)"
                )))
            }
        };

        Ok(Self {
            n_points,
            stepsize: positive("stepsize", num("stepsize", get("stepsize"), 1.0)?)?,
            nu,
            tau: positive("tau", num("tau", get("tau"), 1e-3)?)?,
            t_end: positive("t_end", num("t_end", get("t_end"), 1.0)?)?,
            n_max,
            seed: num("seed", get("seed"), 0)?,
            initial_condition,
            record_every,
            lambda3_budget_n,
            output_path: PathBuf::from(get("output_path").unwrap_or(".")),
            c_ceiling: positive("c_ceiling", num("c_ceiling", get("c_ceiling"), crate::bounds::DEFAULT_C_CEILING)?)?,
            inject_weight_error: num("inject_weight_error", get("inject_weight_error"), false)?,
        })
    }

    pub fn initial_state(&self) -> Result<LatticeState> {
        let mut rng = initial::rng(self.seed);
        self.initial_condition.build(self.n_points, self.stepsize, &mut rng)
    }

    fn header(&self, command: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# dnls {command}");
        let _ = writeln!(s, "# rng = {RNG_NAME}, seed = {}", self.seed);
        let _ = writeln!(
            s,
            "# n_points = {}, stepsize = {}, nu = {}, tau = {}, t_end = {}, n_max = {}, initial_condition = {:?}",
            self.n_points, self.stepsize, self.nu, self.tau, self.t_end, self.n_max, self.initial_condition
        );
        s
    }
}

fn parse_pair(s: &str) -> std::result::Result<(String, String), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

/// Parses the arguments, runs the subcommand and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let (common, f): (&CommonArgs, fn(&ExperimentConfig, &CommonArgs) -> Result<bool>) = match &cli.command {
        Command::Simulate(a) => (a, cmd_simulate),
        Command::CheckIdentities(a) => (a, cmd_check_identities),
        Command::CheckBounds(a) => (a, cmd_check_bounds),
    };
    let outcome = ExperimentConfig::load(common).and_then(|cfg| {
        std::fs::create_dir_all(&cfg.output_path)?;
        f(&cfg, common)
    });
    match outcome {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_CHECK,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Numerical { .. } => EXIT_NUMERICAL,
                _ => EXIT_CONFIG,
            }
        }
    }
}

fn budget(cfg: &ExperimentConfig, args: &CommonArgs) -> LambdaBudget {
    if args.allow_large_lambda3 {
        LambdaBudget::default().with_lambda3_max(usize::MAX)
    } else {
        LambdaBudget::default().with_lambda3_max(cfg.lambda3_budget_n)
    }
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<()> {
    std::fs::write(dir.join(name), contents)?;
    Ok(())
}

/// `simulate`: CSV of `t, l2, hamiltonian, hnorm_*, energy_*, rhs_*`.
pub fn cmd_simulate(cfg: &ExperimentConfig, args: &CommonArgs) -> Result<bool> {
    let u0 = cfg.initial_state()?;
    let mut observables = vec![Observable::L2, Observable::Hamiltonian];
    observables.extend((1..=cfg.n_max).map(Observable::Sobolev));
    observables.extend((1..=cfg.n_max).map(Observable::Energy));
    observables.extend((1..=cfg.n_max).map(|n| Observable::GrowthBoundRhs { n, c: 1.0 }));
    let ic = IntegrationConfig::new(cfg.nu, cfg.tau, cfg.t_end)
        .record_every(cfg.record_every)
        .budget(budget(cfg, args))
        .observables(observables);
    let tr = integrate(&u0, &ic)?;

    let mut csv = cfg.header("simulate");
    csv.push('t');
    for s in tr.all_series() {
        csv.push(',');
        csv.push_str(&s.observable.name());
    }
    csv.push('\n');
    for (i, t) in tr.times().iter().enumerate() {
        let _ = write!(csv, "{t:e}");
        for s in tr.all_series() {
            let _ = write!(csv, ",{:e}", s.values[i]);
        }
        csv.push('\n');
    }
    write(&cfg.output_path, "trajectory.csv", &csv)?;

    if args.svg {
        let series: Vec<(String, Vec<f64>)> = tr
            .all_series()
            .iter()
            .filter(|s| matches!(s.observable, Observable::L2 | Observable::Sobolev(_)))
            .map(|s| (s.observable.name(), s.values.clone()))
            .collect();
        write(&cfg.output_path, "trajectory.svg", &line_plot("norms", tr.times(), &series, true))?;
    }
    Ok(true)
}

/// One line of an identity or bound report.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub error: f64,
    pub tolerance: f64,
}

impl CheckLine {
    pub fn passed(&self) -> bool {
        self.error <= self.tolerance
    }
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

/// Exact identities of the energy machinery evaluated on `u` (stepsize 1).
/// With `corrupt`, every `Λ_m` value is multiplied by `(2π)^{2m−2}`, the
/// factor separating the grid weight from `(2π/N)^{2m−1}`.
pub fn identity_suite(
    u: &LatticeState,
    nu: f64,
    budget: &LambdaBudget,
    corrupt: bool,
    rng: &mut impl Rng,
) -> Result<Vec<CheckLine>> {
    let u = u.with_stepsize(1.0)?;
    let factor = |m: i32| if corrupt { (2.0 * PI).powi(2 * m - 2) } else { 1.0 };
    let v = u.dft();
    let mut out = Vec::new();
    let mut push = |name: &str, error: f64, tolerance: f64| {
        out.push(CheckLine {
            name: name.to_string(),
            error,
            tolerance,
        })
    };

    let h2pi = 2.0 * PI * u.hamiltonian(nu);
    let kinetic = 0.5 * v.weighted_integral(|w| (2.0 * (0.5 * w).sin()).powi(2));
    let quartic = lambda_m(&Constant { arity: 2, value: 1.0 }, &v, budget)?.re * factor(2);
    push("hamiltonian_compact_form", rel(h2pi.into(), (kinetic - 0.25 * nu * quartic).into()), 1e-12);

    let e1 = ModifiedEnergy::new(1, nu)?;
    let p = e1.parts(&u, budget)?;
    let e1v = p.quadratic + p.correction * factor(2);
    push("energy_1_equals_2pi_hamiltonian", rel(e1v.into(), h2pi.into()), 1e-12);

    let f2 = crate::energies::build_fn(2)?;
    let mu1 = multiplier(1, |p: &[f64], _: &[f64]| f2.eval(p[0]));
    let mu2 = ModifiedEnergy::new(2, nu)?;
    for (m, mu) in [(1, &mu1 as &dyn crate::energies::Multiplier), (2, mu2.multiplier())] {
        let chain = lambda_time_derivative(mu, &u, nu, budget)? * factor(m);
        let ident = if corrupt {
            let lin = lambda_m(&crate::energies::TimesDCos(mu), &v, budget)? * factor(m);
            let cub = lambda_m(&crate::energies::ShiftDifference(mu), &v, budget)? * factor(m + 1);
            -Complex64::i() * (2.0 * lin + nu * cub)
        } else {
            lambda_derivative_identity(mu, &u, nu, budget)?
        };
        push(&format!("lambda_derivative_m{m}"), rel(chain, ident), 1e-10);
    }

    let quad = quadratic_derivative(|w| f2.eval(w), &u, nu);
    let res = quadratic_derivative_resonant(|w| f2.eval(w), &u, nu, budget)? * factor(2);
    push("quadratic_derivative_resonant_form", rel(quad, res), 1e-10);

    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let mut draw = || rng.random_range(-PI..PI);
        let w = ResonancePoint::close(vec![draw(), draw()], vec![draw()])?;
        let dcos = d_m(f64::cos, &w);
        if dcos.abs() < 1e-3 {
            continue;
        }
        let lhs = mu_eval(mu2.series(), &w, nu)? * 4.0 / nu * dcos;
        let rhs = d_m(|x| mu2.series().eval(x), &w);
        worst = worst.max((lhs - rhs).abs() / rhs.abs().max(1.0));
    }
    push("multiplier_cross_check", worst, 1e-12);

    for n in 1..=3 {
        let e = ModifiedEnergy::new(n, nu)?;
        let direct = e.derivative_direct(&u, budget)? * factor(3);
        if n == 1 {
            let scale = u.l2_norm_sq().powi(3).max(f64::MIN_POSITIVE);
            push("energy_1_derivative_zero", direct.norm() / scale, 1e-12);
        } else {
            let chain = e.derivative_chain_rule(&u, budget)?;
            push(&format!("energy_{n}_derivative"), rel(chain, direct), 1e-8);
        }
    }
    Ok(out)
}

fn report(lines: &[CheckLine]) -> String {
    let mut s = String::new();
    for l in lines {
        let _ = writeln!(
            s,
            "{name}.error = {e:e}\n{name}.tolerance = {t:e}\n{name}.status = {st}",
            name = l.name,
            e = l.error,
            t = l.tolerance,
            st = if l.passed() { "pass" } else { "fail" }
        );
    }
    let all = lines.iter().all(CheckLine::passed);
    let _ = writeln!(s, "overall = {}", if all { "pass" } else { "fail" });
    s
}

/// `check-identities`: writes `identities.txt`; fails on any violated identity.
pub fn cmd_check_identities(cfg: &ExperimentConfig, args: &CommonArgs) -> Result<bool> {
    let b = budget(cfg, args);
    b.check(3, cfg.n_points)?;
    let u = cfg.initial_state()?;
    let mut rng = initial::rng(cfg.seed);
    let lines = identity_suite(&u, cfg.nu, &b, cfg.inject_weight_error, &mut rng)?;
    let text = format!("{}{}", cfg.header("check-identities"), report(&lines));
    write(&cfg.output_path, "identities.txt", &text)?;
    for l in &lines {
        println!("{:<40} {:>12.3e}  {}", l.name, l.error, if l.passed() { "pass" } else { "FAIL" });
    }
    Ok(lines.iter().all(CheckLine::passed))
}

/// `check-bounds`: growth experiment plus inequality checkers on the
/// configured state.
pub fn cmd_check_bounds(cfg: &ExperimentConfig, args: &CommonArgs) -> Result<bool> {
    let u0 = cfg.initial_state()?;
    let b = budget(cfg, args);
    let mut gc = GrowthConfig::new(cfg.nu, cfg.n_max, cfg.t_end, cfg.tau);
    gc.record_every = cfg.record_every;
    gc.c_ceiling = cfg.c_ceiling;
    let growth = run_growth_experiment(&u0, &gc)?;

    let mut text = cfg.header("check-bounds");
    let mut ok = true;
    let _ = writeln!(text, "m_quantity = {:e}", growth.reports[0].m_quantity);
    let _ = writeln!(text, "hamiltonian_drift = {:e}", growth.hamiltonian_drift);
    let bc = &growth.base_case;
    ok &= bc.holds();
    let _ = writeln!(
        text,
        "base_case.bound = {:e}\nbase_case.max_h1 = {:e}\nbase_case.status = {}",
        bc.bound,
        bc.max_h1,
        status(bc.holds())
    );
    for r in &growth.reports {
        let pass = r.max_ratio.is_finite() && !r.exceeds_ceiling;
        ok &= pass;
        let p = format!("n{}", r.n);
        let _ = writeln!(text, "{p}.fitted_c = {:e}", r.fitted_c);
        let _ = writeln!(text, "{p}.max_ratio = {:e}", r.max_ratio);
        let _ = writeln!(text, "{p}.max_ratio_time = {:e}", r.max_ratio_time);
        match r.exponent_fit {
            Some(x) => {
                let _ = writeln!(text, "{p}.exponent_fit = {x:e}");
            }
            None => {
                let _ = writeln!(text, "{p}.exponent_fit = none");
            }
        }
        let _ = writeln!(text, "{p}.exponent_bound = {:e}", (r.n as f64 - 1.0) / 2.0);
        let _ = writeln!(text, "{p}.status = {}", status(pass));

        let mut csv = cfg.header("check-bounds");
        csv.push_str("t,lhs,rhs\n");
        for i in 0..r.times.len() {
            let _ = writeln!(csv, "{:e},{:e},{:e}", r.times[i], r.lhs[i], r.rhs[i]);
        }
        write(&cfg.output_path, &format!("bounds_n{}.csv", r.n), &csv)?;
    }

    let gn = check_gagliardo_nirenberg(&u0);
    ok &= gn.holds();
    let _ = writeln!(text, "gagliardo_nirenberg.ratio = {:e}\ngagliardo_nirenberg.status = {}", gn.ratio, status(gn.holds()));

    for n in 2..=cfg.n_max.max(2) {
        let h = check_holder_interpolation(&u0, n)?;
        ok &= h;
        let _ = writeln!(text, "holder_n{n}.status = {}", status(h));
    }

    if b.check(2, cfg.n_points).is_ok() {
        for n in 1..=cfg.n_max {
            let k = check_multilinear_bound(2, n, std::slice::from_ref(&u0), &b)?.k;
            ok &= k.is_finite();
            let _ = writeln!(text, "multilinear_m2_n{n}.k = {k:e}");
        }
    }

    let t_scale = cfg.t_end.min(1.0);
    for n in 1..=cfg.n_max {
        let s = check_scaling_invariance(&u0, 2, n, t_scale, cfg.nu, cfg.tau)?;
        let pass = s.passes(1e-12);
        ok &= pass;
        let _ = writeln!(
            text,
            "scaling_n{n}.max_deviation = {:e}\nscaling_n{n}.status = {}",
            s.max_deviation(),
            status(pass)
        );
    }
    let _ = writeln!(text, "overall = {}", status(ok));
    write(&cfg.output_path, "bounds.txt", &text)?;

    if args.svg {
        let times = &growth.reports[0].times;
        let series: Vec<(String, Vec<f64>)> = growth
            .reports
            .iter()
            .flat_map(|r| [(format!("hnorm_{}", r.n), r.lhs.clone()), (format!("rhs_{}", r.n), r.rhs.clone())])
            .collect();
        write(&cfg.output_path, "bounds.svg", &line_plot("Sobolev norms and bounds (C = 1)", times, &series, true))?;
    }
    print!("{}", text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect::<String>());
    Ok(ok)
}

fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}
