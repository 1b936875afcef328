//! Periodic lattice states and the discrete operators acting on them.
//!
//! A [`LatticeState`] holds `N` complex amplitudes `u_0, …, u_{N−1}` on the
//! periodic grid `h·{0, …, N−1}`; indices wrap modulo `N`. All norms carry the
//! `h` weight, `‖u‖²_{L²} = h Σ |u_g|²`, so they scale covariantly under
//! [`LatticeState::rescale`].

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// Largest Sobolev index accepted by [`LatticeState::sobolev_norm`].
///
/// Iterated stencils amplify the `ω ≈ π` content by `4ⁿ`; past `n = 8` the
/// round-off of the stencil route is no longer negligible.
pub const MAX_SOBOLEV_INDEX: usize = 8;

/// Smallest admissible number of lattice sites.
pub const MIN_POINTS: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeState {
    values: Vec<Complex64>,
    stepsize: f64,
}

impl LatticeState {
    /// Builds a state, checking that `N ≥ 8` is even, the amplitudes are
    /// finite and the stepsize is positive.
    pub fn new(values: Vec<Complex64>, stepsize: f64) -> Result<Self> {
        let n = values.len();
        if n < MIN_POINTS || !n.is_multiple_of(2) {
            return Err(Error::InvalidState(format!(
                "number of sites must be even and at least {MIN_POINTS}, got {n}"
            )));
        }
        if !(stepsize.is_finite() && stepsize > 0.0) {
            return Err(Error::InvalidState(format!(
                "stepsize must be positive and finite, got {stepsize}"
            )));
        }
        if let Some(g) = values.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidState(format!("non-finite amplitude at site {g}")));
        }
        Ok(Self { values, stepsize })
    }

    /// Unit-stepsize state.
    pub fn from_values(values: Vec<Complex64>) -> Result<Self> {
        Self::new(values, 1.0)
    }

    pub fn zeros(n_points: usize) -> Result<Self> {
        Self::from_values(vec![Complex64::new(0.0, 0.0); n_points])
    }

    pub fn from_fn(n_points: usize, f: impl FnMut(usize) -> Complex64) -> Result<Self> {
        Self::from_values((0..n_points).map(f).collect())
    }

    /// Kronecker delta of unit height at `site`.
    pub fn spike(n_points: usize, site: usize) -> Result<Self> {
        Self::from_fn(n_points, |g| {
            if g == site % n_points.max(1) {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Single Fourier mode `u_g = a·e^{−i ω_j g}` with `ω_j = 2πj/N`.
    ///
    /// With the transform convention `û(ω) = Σ_g u_g e^{igω}` this is the state
    /// whose transform is concentrated on the mode `j` (with value `N·a`).
    pub fn plane_wave(n_points: usize, mode: i64, amplitude: Complex64) -> Result<Self> {
        let omega = mode_frequency(n_points, mode);
        Self::from_fn(n_points, |g| amplitude * Complex64::from_polar(1.0, -omega * g as f64))
    }

    pub fn n_points(&self) -> usize {
        self.values.len()
    }

    pub fn stepsize(&self) -> f64 {
        self.stepsize
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Same grid, new amplitudes. The caller guarantees the length matches.
    pub(crate) fn with_values(&self, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), self.values.len());
        Self {
            values,
            stepsize: self.stepsize,
        }
    }

    pub fn with_stepsize(&self, stepsize: f64) -> Result<Self> {
        Self::new(self.values.clone(), stepsize)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        self.with_values(self.values.iter().map(|z| z * factor).collect())
    }

    /// Global phase rotation `u ↦ e^{iθ} u`.
    pub fn rotate_phase(&self, theta: f64) -> Self {
        self.scale(Complex64::from_polar(1.0, theta))
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `(Δ_h u)_g = (u_{g+1} − 2u_g + u_{g−1}) / h²` with periodic wraparound.
    pub fn laplacian(&self) -> Self {
        let n = self.n_points();
        let inv_h2 = 1.0 / (self.stepsize * self.stepsize);
        let u = &self.values;
        let values = (0..n)
            .map(|g| (u[(g + 1) % n] - 2.0 * u[g] + u[(g + n - 1) % n]) * inv_h2)
            .collect();
        self.with_values(values)
    }

    /// Forward difference `(u_{g+1} − u_g) / h`.
    pub fn forward_difference(&self) -> Self {
        let n = self.n_points();
        let inv_h = 1.0 / self.stepsize;
        let u = &self.values;
        self.with_values((0..n).map(|g| (u[(g + 1) % n] - u[g]) * inv_h).collect())
    }

    /// `h`-weighted inner product `⟨u, v⟩ = h Σ u_g conj(v_g)`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let s: Complex64 = self.values.iter().zip(&other.values).map(|(a, b)| a * b.conj()).sum();
        s * self.stepsize
    }

    pub fn l2_norm(&self) -> f64 {
        self.l2_norm_sq().sqrt()
    }

    pub fn l2_norm_sq(&self) -> f64 {
        self.stepsize * self.values.iter().map(|z| z.norm_sqr()).sum::<f64>()
    }

    pub fn l4_norm(&self) -> f64 {
        self.l4_norm_pow4().powf(0.25)
    }

    /// `‖u‖⁴_{L⁴} = h Σ |u_g|⁴`.
    pub fn l4_norm_pow4(&self) -> f64 {
        self.stepsize * self.values.iter().map(|z| z.norm_sqr().powi(2)).sum::<f64>()
    }

    pub fn linf_norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Discrete homogeneous Sobolev norm `⟨(−Δ_h)ⁿ u, u⟩^{1/2}`, `n ≤ 8`.
    pub fn sobolev_norm(&self, n: usize) -> Result<f64> {
        self.sobolev_norm_capped(n, MAX_SOBOLEV_INDEX)
    }

    /// [`Self::sobolev_norm`] with an explicit maximum index.
    ///
    /// Evaluated on the stencil side: `v = (−Δ_h)^{⌊n/2⌋} u`, then
    /// `‖v‖²` for even `n` and `‖∂⁺v‖²` (forward difference) for odd `n`.
    pub fn sobolev_norm_capped(&self, n: usize, max_index: usize) -> Result<f64> {
        if n > max_index {
            return Err(Error::OutOfRange {
                what: "Sobolev index",
                value: n.to_string(),
                allowed: format!("0..={max_index}"),
            });
        }
        let mut v = self.clone();
        for _ in 0..n / 2 {
            v = v.laplacian().scale(Complex64::new(-1.0, 0.0));
        }
        if n % 2 == 1 {
            v = v.forward_difference();
        }
        Ok(v.l2_norm())
    }

    /// `H(u) = ½‖u‖²_{Ḣ¹} − (ν/4)‖u‖⁴_{L⁴}`.
    pub fn hamiltonian(&self, nu: f64) -> f64 {
        let grad = self.forward_difference().l2_norm_sq();
        0.5 * grad - 0.25 * nu * self.l4_norm_pow4()
    }

    /// Dilation `u ↦ λu` on the grid of stepsize `h/λ`.
    ///
    /// If `u(t)` solves the equation at stepsize `h`, the rescaled state solves
    /// it at stepsize `h/λ` with time `t/λ²`; the time change is left to the
    /// caller.
    pub fn rescale(&self, lambda: u32) -> Result<Self> {
        if lambda == 0 {
            return Err(Error::OutOfRange {
                what: "dilation factor",
                value: "0".into(),
                allowed: "λ ≥ 1".into(),
            });
        }
        let l = f64::from(lambda);
        Ok(Self {
            values: self.values.iter().map(|z| z * l).collect(),
            stepsize: self.stepsize / l,
        })
    }
}

/// `ω_j = 2πj/N` for a signed mode index `j`.
pub fn mode_frequency(n_points: usize, mode: i64) -> f64 {
    2.0 * PI * mode as f64 / n_points as f64
}
