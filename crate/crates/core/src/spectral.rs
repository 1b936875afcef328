//! Lattice Fourier transform, Fourier symbols and band-limited interpolation.
//!
//! Conventions (unit stepsize):
//!
//! ```text
//! û(ω) = Σ_g u_g e^{i g ω},        u_g = (1/N) Σ_j û(ω_j) e^{−i g ω_j},
//! ω_j = 2πj/N,  j ∈ {−N/2, …, N/2 − 1}  (the grid covers [−π, π) once).
//! ```
//!
//! Integrals over a period are realised by the rectangle rule
//! `∫ φ(ω) dω ≈ (2π/N) Σ_j φ(ω_j)`, which is exact for trigonometric
//! polynomials of degree below `N`. Coefficients are stored in FFT order: slot
//! `k` holds the mode `j = k` for `k < N/2` and `j = k − N` otherwise.

use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::lattice::LatticeState;
use crate::{Error, Result};

fn planner() -> &'static Mutex<FftPlanner<f64>> {
    static PLANNER: OnceLock<Mutex<FftPlanner<f64>>> = OnceLock::new();
    PLANNER.get_or_init(|| Mutex::new(FftPlanner::new()))
}

/// `Σ_g x_g e^{+2πi gk/N}` (unnormalised).
pub(crate) fn plan_positive(n: usize) -> Arc<dyn Fft<f64>> {
    planner().lock().expect("FFT planner poisoned").plan_fft_inverse(n)
}

/// `Σ_k x_k e^{−2πi gk/N}` (unnormalised).
pub(crate) fn plan_negative(n: usize) -> Arc<dyn Fft<f64>> {
    planner().lock().expect("FFT planner poisoned").plan_fft_forward(n)
}

/// Signed mode index of FFT slot `k`.
pub fn signed_mode(n_points: usize, k: usize) -> i64 {
    if k < n_points / 2 {
        k as i64
    } else {
        k as i64 - n_points as i64
    }
}

/// FFT slot of the signed mode `j` (taken modulo `N`).
pub fn slot_of_mode(n_points: usize, mode: i64) -> usize {
    mode.rem_euclid(n_points as i64) as usize
}

/// Frequency `ω ∈ [−π, π)` of FFT slot `k`.
pub fn slot_frequency(n_points: usize, k: usize) -> f64 {
    2.0 * PI * signed_mode(n_points, k) as f64 / n_points as f64
}

/// Frequencies of all slots, in FFT order.
pub fn frequencies(n_points: usize) -> Vec<f64> {
    (0..n_points).map(|k| slot_frequency(n_points, k)).collect()
}

/// Symbol of the unit-stepsize Laplacian, `2cos ω − 2 = −4 sin²(ω/2)`.
pub fn laplacian_symbol(omega: f64) -> f64 {
    let s = (0.5 * omega).sin();
    -4.0 * s * s
}

/// Discrete Fourier coefficients of a lattice state.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralState {
    coeffs: Vec<Complex64>,
}

impl SpectralState {
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self> {
        let n = coeffs.len();
        if n < crate::lattice::MIN_POINTS || !n.is_multiple_of(2) {
            return Err(Error::InvalidState(format!(
                "spectral grid must have an even number (≥ 8) of modes, got {n}"
            )));
        }
        Ok(Self { coeffs })
    }

    pub fn n_points(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficients in FFT order.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of the signed mode `j`.
    pub fn mode(&self, mode: i64) -> Complex64 {
        self.coeffs[slot_of_mode(self.n_points(), mode)]
    }

    pub fn frequency(&self, k: usize) -> f64 {
        slot_frequency(self.n_points(), k)
    }

    /// Pointwise moduli `|û_j|`.
    pub fn abs(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|z| Complex64::new(z.norm(), 0.0)).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|z| z.conj()).collect(),
        }
    }

    /// `∫ φ(ω) |û(ω)|² dω` by the rectangle rule.
    pub fn weighted_integral(&self, phi: impl Fn(f64) -> f64) -> f64 {
        let n = self.n_points();
        let sum: f64 = (0..n).map(|k| phi(self.frequency(k)) * self.coeffs[k].norm_sqr()).sum();
        2.0 * PI / n as f64 * sum
    }

    /// `(1/2π) ∫ (2 sin(ω/2))^{2n} |û|² dω`, square-rooted: the lattice
    /// `Ḣⁿ` norm computed from the Fourier symbol.
    pub fn symbol_norm(&self, n: usize) -> f64 {
        let e = n as i32;
        (self.weighted_integral(|w| (2.0 * (0.5 * w).sin()).powi(2 * e)) / (2.0 * PI)).sqrt()
    }

    /// `‖∂ₓⁿ 𝓘u‖_{L²(ℝ)} = ((1/2π) ∫ ω^{2n} |û|² dω)^{1/2}` for the band-limited
    /// interpolant.
    pub fn continuous_sobolev(&self, n: usize) -> f64 {
        let e = n as i32;
        (self.weighted_integral(|w| w.powi(2 * e)) / (2.0 * PI)).sqrt()
    }

    /// Transform of `|u|² u`, computed on the Fourier side as the circular
    /// triple convolution
    ///
    /// ```text
    /// (1/N²) Σ_{a − b + c ≡ k (mod N)} û_a conj(û_b) û_c .
    /// ```
    ///
    /// Working modulo `N` is what realises aliasing: a triple whose frequency
    /// sum `ω_a − ω_b + ω_c` leaves `[−π, π)` is folded back by a shift of
    /// `±2π` (at most one wrap in each direction since each frequency lies in
    /// `[−π, π)`), which is exactly the `k ∈ {−1, 0, 1}` periodisation of the
    /// continuous convolution.
    pub fn nonlinear_symbol(&self) -> Self {
        let n = self.n_points();
        let v = &self.coeffs;
        // correlation q_d = Σ_a û_a conj(û_{a−d})
        let q: Vec<Complex64> = (0..n)
            .map(|d| (0..n).map(|a| v[a] * v[(a + n - d) % n].conj()).sum())
            .collect();
        let scale = 1.0 / (n as f64 * n as f64);
        let coeffs = (0..n)
            .map(|k| (0..n).map(|d| q[d] * v[(k + n - d) % n]).sum::<Complex64>() * scale)
            .collect();
        Self { coeffs }
    }

    /// Value at `x` of the trigonometric interpolant `(1/N) Σ_j û_j e^{−ixω_j}`,
    /// the periodic counterpart of the band-limited interpolant.
    pub fn trig_interpolate(&self, x: f64) -> Complex64 {
        let n = self.n_points();
        let s: Complex64 = (0..n)
            .map(|k| self.coeffs[k] * Complex64::from_polar(1.0, -x * self.frequency(k)))
            .sum();
        s / n as f64
    }
}

/// `û(ω_j) = Σ_g u_g e^{i g ω_j}` (the stepsize is not used).
pub fn dft(u: &LatticeState) -> SpectralState {
    let mut buf = u.values().to_vec();
    plan_positive(buf.len()).process(&mut buf);
    SpectralState { coeffs: buf }
}

/// Inverse of [`dft`]; returns a unit-stepsize state.
pub fn idft(v: &SpectralState) -> LatticeState {
    let n = v.n_points();
    let mut buf = v.coeffs.clone();
    plan_negative(n).process(&mut buf);
    let inv = 1.0 / n as f64;
    buf.iter_mut().for_each(|z| *z *= inv);
    LatticeState::from_values(buf).expect("spectral grid already validated")
}

impl LatticeState {
    pub fn dft(&self) -> SpectralState {
        dft(self)
    }
}

/// Periodised cardinal-sine kernel used to evaluate the band-limited
/// interpolant off the lattice.
#[derive(Debug, Clone, Copy)]
pub struct ShannonKernel {
    /// Number of periods summed, centred on the base period (odd; default 3
    /// means the base period and one image on each side).
    pub periods: usize,
}

impl Default for ShannonKernel {
    fn default() -> Self {
        Self { periods: 3 }
    }
}

impl ShannonKernel {
    pub fn new(periods: usize) -> Self {
        Self { periods: periods.max(1) }
    }

    /// `Σ_p Σ_g u_g sinc(π(x − g − pN))` over the configured image periods,
    /// centred on the period containing `x`.
    pub fn eval(&self, u: &LatticeState, x: f64) -> Complex64 {
        let n = u.n_points() as i64;
        let half = (self.periods / 2) as i64;
        let centre = (x / n as f64).floor() as i64;
        let mut acc = Complex64::new(0.0, 0.0);
        for p in centre - half..=centre + half {
            for (g, z) in u.values().iter().enumerate() {
                let d = x - (g as i64 + p * n) as f64;
                acc += z * sinc_pi(d);
            }
        }
        acc
    }
}

/// `sin(πx)/(πx)`, exact at the integers.
fn sinc_pi(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else if x == x.round() {
        0.0
    } else {
        let y = PI * x;
        y.sin() / y
    }
}

/// Band-limited interpolant with the default three-period kernel.
pub fn shannon_eval(u: &LatticeState, x: f64) -> Complex64 {
    ShannonKernel::default().eval(u, x)
}
