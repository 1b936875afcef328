//! Time integration of `i ∂ₜu = Δ_h u + ν|u|²u` on the periodic lattice.
//!
//! The primary scheme is Strang splitting: half a step of the exact
//! nonlinear flow `u ↦ e^{−iντ|u|²/2} u` (the modulus is conserved pointwise),
//! a full step of the exact linear flow `û_j ↦ e^{i 4 sin²(ω_j/2) τ/h²} û_j`,
//! and another nonlinear half step. Both pieces are `L²` isometries. Classical
//! RK4 is kept as an independent reference.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::Fft;

use crate::bounds::growth_bound_rhs;
use crate::energies::{LambdaBudget, ModifiedEnergy};
use crate::lattice::LatticeState;
use crate::spectral::{laplacian_symbol, plan_negative, plan_positive, slot_frequency, SpectralState};
use crate::{Error, Result};

/// `τ = min(10⁻³, 0.1 h²)`.
pub fn default_tau(stepsize: f64) -> f64 {
    (0.1 * stepsize * stepsize).min(1e-3)
}

/// `∂ₜu = −i(Δ_h u + ν|u|²u)`.
pub fn time_derivative(u: &LatticeState, nu: f64) -> LatticeState {
    let lap = u.laplacian();
    let values = lap
        .values()
        .iter()
        .zip(u.values())
        .map(|(l, z)| -Complex64::i() * (l + nu * z.norm_sqr() * z))
        .collect();
    u.with_values(values)
}

/// `∂ₜû = −i[(2cos ω − 2)/h² · û + ν (|u|²u)^]`, the Fourier-side equation
/// evaluated at `u`.
pub fn spectral_time_derivative(u: &LatticeState, nu: f64) -> SpectralState {
    let n = u.n_points();
    let inv_h2 = 1.0 / (u.stepsize() * u.stepsize());
    let v = u.dft();
    let cubic = u
        .with_values(u.values().iter().map(|z| z.norm_sqr() * z).collect())
        .dft();
    let coeffs = (0..n)
        .map(|k| {
            let lin = laplacian_symbol(slot_frequency(n, k)) * inv_h2 * v.coeffs()[k];
            -Complex64::i() * (lin + nu * cubic.coeffs()[k])
        })
        .collect();
    SpectralState::from_coeffs(coeffs).expect("same grid as u")
}

/// Reusable Strang stepper for one grid; caches FFT plans and the linear
/// phase factors of the last step size.
pub struct SplitStepper {
    positive: Arc<dyn Fft<f64>>,
    negative: Arc<dyn Fft<f64>>,
    symbol: Vec<f64>,
    nu: f64,
    cached_tau: f64,
    phases: Vec<Complex64>,
}

impl SplitStepper {
    pub fn new(n_points: usize, stepsize: f64, nu: f64) -> Self {
        let inv_h2 = 1.0 / (stepsize * stepsize);
        let symbol = (0..n_points)
            .map(|k| -laplacian_symbol(slot_frequency(n_points, k)) * inv_h2)
            .collect();
        Self {
            positive: plan_positive(n_points),
            negative: plan_negative(n_points),
            symbol,
            nu,
            cached_tau: f64::NAN,
            phases: Vec::new(),
        }
    }

    fn nonlinear(&self, u: &mut [Complex64], tau: f64) {
        for z in u.iter_mut() {
            *z *= Complex64::from_polar(1.0, -self.nu * tau * z.norm_sqr());
        }
    }

    fn linear(&mut self, u: &mut [Complex64], tau: f64) {
        if tau != self.cached_tau {
            self.phases = self.symbol.iter().map(|s| Complex64::from_polar(1.0, s * tau)).collect();
            self.cached_tau = tau;
        }
        self.positive.process(u);
        let inv_n = 1.0 / u.len() as f64;
        for (z, p) in u.iter_mut().zip(&self.phases) {
            *z *= p * inv_n;
        }
        self.negative.process(u);
    }

    /// One Strang step in place. A negative `tau` steps backwards.
    pub fn step(&mut self, u: &mut [Complex64], tau: f64) {
        self.nonlinear(u, 0.5 * tau);
        self.linear(u, tau);
        self.nonlinear(u, 0.5 * tau);
    }
}

/// One Strang split step of size `tau` (negative values step backwards).
pub fn step_splitstep(u: &LatticeState, nu: f64, tau: f64) -> LatticeState {
    let mut buf = u.values().to_vec();
    SplitStepper::new(u.n_points(), u.stepsize(), nu).step(&mut buf, tau);
    u.with_values(buf)
}

/// One classical fourth-order Runge–Kutta step.
pub fn step_rk4(u: &LatticeState, nu: f64, tau: f64) -> LatticeState {
    let axpy = |base: &LatticeState, k: &LatticeState, a: f64| {
        base.with_values(base.values().iter().zip(k.values()).map(|(x, y)| x + y * a).collect())
    };
    let k1 = time_derivative(u, nu);
    let k2 = time_derivative(&axpy(u, &k1, 0.5 * tau), nu);
    let k3 = time_derivative(&axpy(u, &k2, 0.5 * tau), nu);
    let k4 = time_derivative(&axpy(u, &k3, tau), nu);
    let values = (0..u.n_points())
        .map(|g| {
            u.values()[g]
                + (k1.values()[g] + 2.0 * k2.values()[g] + 2.0 * k3.values()[g] + k4.values()[g]) * (tau / 6.0)
        })
        .collect();
    u.with_values(values)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scheme {
    #[default]
    Strang,
    Rk4,
}

/// Quantities recorded along a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub enum Observable {
    L2,
    Hamiltonian,
    /// Discrete `Ḣⁿ` norm.
    Sobolev(usize),
    /// Modified energy `E_n`.
    Energy(usize),
    /// Right-hand side of the growth bound for `Ḣⁿ` with constant `c`,
    /// relative to the initial state.
    GrowthBoundRhs { n: usize, c: f64 },
}

impl Observable {
    pub fn name(&self) -> String {
        match self {
            Observable::L2 => "l2".into(),
            Observable::Hamiltonian => "hamiltonian".into(),
            Observable::Sobolev(n) => format!("hnorm_{n}"),
            Observable::Energy(n) => format!("energy_{n}"),
            Observable::GrowthBoundRhs { n, .. } => format!("rhs_{n}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct IntegrationConfig {
    pub nu: f64,
    pub tau: f64,
    pub t_end: f64,
    pub scheme: Scheme,
    /// Record observables every this many steps (the final time is always
    /// recorded).
    pub record_every: usize,
    /// Keep a state snapshot every this many records.
    pub store_every: Option<usize>,
    pub observables: Vec<Observable>,
    pub budget: LambdaBudget,
}

impl IntegrationConfig {
    pub fn new(nu: f64, tau: f64, t_end: f64) -> Self {
        Self {
            nu,
            tau,
            t_end,
            scheme: Scheme::Strang,
            record_every: 1,
            store_every: None,
            observables: vec![Observable::L2, Observable::Hamiltonian],
            budget: LambdaBudget::default(),
        }
    }

    pub fn scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn record_every(mut self, steps: usize) -> Self {
        self.record_every = steps.max(1);
        self
    }

    pub fn store_every(mut self, records: usize) -> Self {
        self.store_every = Some(records.max(1));
        self
    }

    pub fn observables(mut self, observables: Vec<Observable>) -> Self {
        self.observables = observables;
        self
    }

    pub fn budget(mut self, budget: LambdaBudget) -> Self {
        self.budget = budget;
        self
    }
}

#[derive(Debug, Clone)]
pub struct Series {
    pub observable: Observable,
    pub values: Vec<f64>,
}

/// Recorded times, optional snapshots and observable series.
#[derive(Debug, Clone)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<(f64, LatticeState)>,
    series: Vec<Series>,
    final_state: LatticeState,
}

impl Trajectory {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[(f64, LatticeState)] {
        &self.states
    }

    pub fn all_series(&self) -> &[Series] {
        &self.series
    }

    pub fn series(&self, observable: &Observable) -> Option<&[f64]> {
        self.series
            .iter()
            .find(|s| &s.observable == observable)
            .map(|s| s.values.as_slice())
    }

    pub fn final_state(&self) -> &LatticeState {
        &self.final_state
    }
}

enum Probe {
    L2,
    Hamiltonian,
    Sobolev(usize),
    Energy(Box<ModifiedEnergy>),
    Rhs(usize, f64),
}

struct Observer<'a> {
    probes: Vec<Probe>,
    u0: &'a LatticeState,
    nu: f64,
    budget: LambdaBudget,
}

impl Observer<'_> {
    fn measure(&self, u: &LatticeState, t: f64) -> Result<Vec<f64>> {
        self.probes
            .iter()
            .map(|p| match p {
                Probe::L2 => Ok(u.l2_norm()),
                Probe::Hamiltonian => Ok(u.hamiltonian(self.nu)),
                Probe::Sobolev(n) => u.sobolev_norm(*n),
                Probe::Energy(e) => e.value(u, &self.budget),
                Probe::Rhs(n, c) => growth_bound_rhs(*n, t, self.u0, *c),
            })
            .collect()
    }
}

/// Integrates from `u0` up to `t_end`, evaluating the observables after full
/// steps only.
///
/// The last step is shortened so that the final record sits exactly at
/// `t_end`. RK4 requires `τ·(4/h² + |ν|·‖u0‖²_{L∞}) < 1`; the split-step
/// scheme has no step restriction for stability in `L²`.
pub fn integrate(u0: &LatticeState, config: &IntegrationConfig) -> Result<Trajectory> {
    let IntegrationConfig { nu, tau, t_end, .. } = *config;
    if !(tau.is_finite() && tau > 0.0) {
        return Err(out_of_range("time step", tau, "τ > 0"));
    }
    if !(t_end.is_finite() && t_end > 0.0) {
        return Err(out_of_range("final time", t_end, "t_end > 0"));
    }
    let h = u0.stepsize();
    if config.scheme == Scheme::Rk4 {
        let stiffness = tau * (4.0 / (h * h) + nu.abs() * u0.linf_norm().powi(2));
        if stiffness >= 1.0 {
            return Err(out_of_range("RK4 stability number τ(4/h² + |ν|‖u‖²_∞)", stiffness, "< 1"));
        }
    }

    let probes = config
        .observables
        .iter()
        .map(|o| {
            Ok(match o {
                Observable::L2 => Probe::L2,
                Observable::Hamiltonian => Probe::Hamiltonian,
                Observable::Sobolev(n) => Probe::Sobolev(*n),
                Observable::Energy(n) => Probe::Energy(Box::new(ModifiedEnergy::new(*n, nu)?)),
                Observable::GrowthBoundRhs { n, c } => Probe::Rhs(*n, *c),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let observer = Observer {
        probes,
        u0,
        nu,
        budget: config.budget,
    };

    let ratio = t_end / tau;
    let n_steps = if (ratio - ratio.round()).abs() < 1e-9 * ratio.max(1.0) {
        ratio.round() as usize
    } else {
        ratio.ceil() as usize
    }
    .max(1);

    let mut times = Vec::new();
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); config.observables.len()];
    let mut states = Vec::new();
    let mut record = |u: &LatticeState, t: f64| -> Result<()> {
        let values = observer.measure(u, t)?;
        if let Some(every) = config.store_every {
            if times.len() % every == 0 {
                states.push((t, u.clone()));
            }
        }
        times.push(t);
        for (col, v) in columns.iter_mut().zip(values) {
            col.push(v);
        }
        Ok(())
    };

    record(u0, 0.0)?;
    let mut stepper = SplitStepper::new(u0.n_points(), h, nu);
    let mut u = u0.clone();
    for k in 1..=n_steps {
        let t = if k == n_steps { t_end } else { k as f64 * tau };
        let dt = t - if k == 1 { 0.0 } else { (k - 1) as f64 * tau };
        u = match config.scheme {
            Scheme::Strang => {
                let mut buf = u.into_values();
                stepper.step(&mut buf, dt);
                u0.with_values(buf)
            }
            Scheme::Rk4 => step_rk4(&u, nu, dt),
        };
        if !u.is_finite() {
            return Err(Error::Numerical {
                time: t,
                reason: "non-finite amplitude (overflow or NaN)".into(),
            });
        }
        if k % config.record_every == 0 || k == n_steps {
            record(&u, t)?;
        }
    }

    let series = config
        .observables
        .iter()
        .cloned()
        .zip(columns)
        .map(|(observable, values)| Series { observable, values })
        .collect();
    Ok(Trajectory {
        times,
        states,
        series,
        final_state: u,
    })
}

fn out_of_range(what: &'static str, value: f64, allowed: &str) -> Error {
    Error::OutOfRange {
        what,
        value: value.to_string(),
        allowed: allowed.to_string(),
    }
}
