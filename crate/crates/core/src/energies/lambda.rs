//! Resonant multilinear functionals
//!
//! ```text
//! Λ_m(μ, v) = ∫_{V_m} μ(w) Π_{j=1}^m v(w_j) conj(v(w_{−j})) dw
//! ```
//!
//! realised on the mode grid. The free variables `w_1, …, w_m` and
//! `w_{−1}, …, w_{−m+1}` range over all `N` modes; `w_{−m}` is fixed by the
//! resonance condition taken modulo `N`, i.e. folded back into `[−π, π)`,
//! which is where aliased tuples (`Σ w_j − w_{−j} = ±2π, …`) enter. Each tuple
//! carries the weight `2π / N^{2m−1}`. This is the normalisation under which
//! `Λ_1(1, û) = 2π‖u‖²_{L²}` and `Λ_2(1, û) = 2π‖u‖⁴_{L⁴}`, so the compact
//! Hamiltonian formula and the derivative identities hold exactly on the grid.
//!
//! Sums are split over the first free index and run in parallel; the partial
//! sums are added in index order, so results do not depend on the number of
//! worker threads.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::resonance::{d_m_raw, mu_raw};
use super::series::OddCosineSeries;
use crate::dynamics::spectral_time_derivative;
use crate::lattice::LatticeState;
use crate::spectral::{frequencies, SpectralState};
use crate::{Error, Result};

/// Largest arity handled by the grid sums.
pub const MAX_ARITY: usize = 3;

/// A real function on `V_m`, given the `+` block and the `−` block.
pub trait Multiplier: Sync {
    fn arity(&self) -> usize;
    fn eval(&self, plus: &[f64], minus: &[f64]) -> f64;
}

impl<T: Multiplier + ?Sized> Multiplier for &T {
    fn arity(&self) -> usize {
        (**self).arity()
    }

    fn eval(&self, plus: &[f64], minus: &[f64]) -> f64 {
        (**self).eval(plus, minus)
    }
}

/// Multiplier backed by a closure.
pub struct FnMultiplier<F> {
    arity: usize,
    f: F,
}

pub fn multiplier<F>(arity: usize, f: F) -> FnMultiplier<F>
where
    F: Fn(&[f64], &[f64]) -> f64 + Sync,
{
    FnMultiplier { arity, f }
}

impl<F> Multiplier for FnMultiplier<F>
where
    F: Fn(&[f64], &[f64]) -> f64 + Sync,
{
    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, plus: &[f64], minus: &[f64]) -> f64 {
        (self.f)(plus, minus)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Constant {
    pub arity: usize,
    pub value: f64,
}

impl Multiplier for Constant {
    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, _: &[f64], _: &[f64]) -> f64 {
        self.value
    }
}

/// `D_m f` as a multiplier on `V_m`.
pub struct EvaluationDifference<F> {
    pub arity: usize,
    pub f: F,
}

impl<F: Fn(f64) -> f64 + Sync> Multiplier for EvaluationDifference<F> {
    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, plus: &[f64], minus: &[f64]) -> f64 {
        d_m_raw(&self.f, plus, minus)
    }
}

/// `μ · D_m cos`.
pub struct TimesDCos<M>(pub M);

impl<M: Multiplier> Multiplier for TimesDCos<M> {
    fn arity(&self) -> usize {
        self.0.arity()
    }

    fn eval(&self, plus: &[f64], minus: &[f64]) -> f64 {
        self.0.eval(plus, minus) * d_m_raw(&f64::cos, plus, minus)
    }
}

/// The shift transform `S_m`, taking a multiplier on `V_m` to one on
/// `V_{m+1}`:
///
/// ```text
/// S_m μ(w_{−m−1}, w, w_{m+1}) = Σ_{k=1}^m μ(w + e_k δ) − μ(w − e_{−k} δ),
/// δ = w_{m+1} − w_{−m−1}.
/// ```
///
/// The shifted points are not folded; `μ` is expected to be 2π-periodic in
/// each entry.
pub struct ShiftDifference<M>(pub M);

impl<M: Multiplier> Multiplier for ShiftDifference<M> {
    fn arity(&self) -> usize {
        self.0.arity() + 1
    }

    fn eval(&self, plus: &[f64], minus: &[f64]) -> f64 {
        let m = self.0.arity();
        let delta = plus[m] - minus[m];
        if delta == 0.0 {
            return 0.0;
        }
        let mut p = [0.0; MAX_ARITY + 1];
        let mut q = [0.0; MAX_ARITY + 1];
        p[..m].copy_from_slice(&plus[..m]);
        q[..m].copy_from_slice(&minus[..m]);
        let mut acc = 0.0;
        for k in 0..m {
            p[k] += delta;
            acc += self.0.eval(&p[..m], &q[..m]);
            p[k] = plus[k];
            q[k] -= delta;
            acc -= self.0.eval(&p[..m], &q[..m]);
            q[k] = minus[k];
        }
        acc
    }
}

/// `μ_n = (ν/4) D₂f_n / D₂cos` on `V_2` (see [`super::mu_eval`]).
#[derive(Debug, Clone)]
pub struct ModifiedMultiplier {
    beta: Vec<f64>,
    nu: f64,
}

impl ModifiedMultiplier {
    pub fn new(f: &OddCosineSeries, nu: f64) -> Self {
        Self {
            beta: f.beta().to_vec(),
            nu,
        }
    }
}

impl Multiplier for ModifiedMultiplier {
    fn arity(&self) -> usize {
        2
    }

    fn eval(&self, plus: &[f64], minus: &[f64]) -> f64 {
        mu_raw(&self.beta, plus, minus, self.nu)
    }
}

/// Per-arity limits on the grid size, since `Λ_m` costs `O(N^{2m−1})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LambdaBudget {
    pub max_points: [usize; MAX_ARITY],
}

impl Default for LambdaBudget {
    fn default() -> Self {
        Self {
            max_points: [usize::MAX, 256, 32],
        }
    }
}

impl LambdaBudget {
    pub fn unlimited() -> Self {
        Self {
            max_points: [usize::MAX; MAX_ARITY],
        }
    }

    pub fn with_lambda3_max(mut self, n: usize) -> Self {
        self.max_points[2] = n;
        self
    }

    pub fn check(&self, m: usize, n_points: usize) -> Result<()> {
        if !(1..=MAX_ARITY).contains(&m) {
            return Err(Error::OutOfRange {
                what: "arity of Λ_m",
                value: m.to_string(),
                allowed: format!("1..={MAX_ARITY}"),
            });
        }
        let max_points = self.max_points[m - 1];
        if n_points > max_points {
            return Err(Error::Budget {
                m,
                n_points,
                max_points,
            });
        }
        Ok(())
    }
}

/// Grid weight `2π / N^{2m−1}` of one resonant tuple.
pub fn lambda_weight(m: usize, n_points: usize) -> f64 {
    2.0 * PI / (n_points as f64).powi(2 * m as i32 - 1)
}

/// Sums `term(plus_slots, minus_slots)` over every resonant tuple of slots.
fn resonant_sum<F>(m: usize, n: usize, term: F) -> Complex64
where
    F: Fn(&[usize], &[usize]) -> Complex64 + Sync,
{
    let free = 2 * m - 2;
    let partials: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut plus = [0usize; MAX_ARITY];
            let mut minus = [0usize; MAX_ARITY];
            let mut digits = [0usize; 2 * MAX_ARITY];
            plus[0] = first;
            let mut acc = Complex64::new(0.0, 0.0);
            loop {
                // digits[..m−1] → plus[1..m], digits[m−1..] → minus[..m−1]
                plus[1..m].copy_from_slice(&digits[..m - 1]);
                minus[..m - 1].copy_from_slice(&digits[m - 1..free]);
                let s_plus: usize = plus[..m].iter().sum();
                let s_minus: usize = minus[..m - 1].iter().sum();
                minus[m - 1] = (s_plus + (m - 1) * n - s_minus) % n;
                acc += term(&plus[..m], &minus[..m]);

                let mut i = 0;
                loop {
                    if i == free {
                        return acc;
                    }
                    digits[i] += 1;
                    if digits[i] < n {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
            }
        })
        .collect();
    partials.into_iter().sum()
}

/// `Λ_m(μ, v)` on the mode grid, `m = μ.arity()`.
pub fn lambda_m(mu: &dyn Multiplier, v: &SpectralState, budget: &LambdaBudget) -> Result<Complex64> {
    let m = mu.arity();
    let n = v.n_points();
    budget.check(m, n)?;
    let omega = frequencies(n);
    let c = v.coeffs();
    let sum = resonant_sum(m, n, |ps, ms| {
        let mut wp = [0.0; MAX_ARITY];
        let mut wm = [0.0; MAX_ARITY];
        let mut prod = Complex64::new(1.0, 0.0);
        for j in 0..m {
            wp[j] = omega[ps[j]];
            wm[j] = omega[ms[j]];
            prod *= c[ps[j]] * c[ms[j]].conj();
        }
        if prod == Complex64::new(0.0, 0.0) {
            return prod;
        }
        prod * mu.eval(&wp[..m], &wm[..m])
    });
    Ok(sum * lambda_weight(m, n))
}

/// Time derivative of `Λ_m(μ, û(t))` along the flow at the state `u`, by the
/// product rule with `∂ₜû` taken from the Fourier-side equation. No time
/// stepping is involved.
pub fn lambda_time_derivative(
    mu: &dyn Multiplier,
    u: &LatticeState,
    nu: f64,
    budget: &LambdaBudget,
) -> Result<Complex64> {
    let m = mu.arity();
    let n = u.n_points();
    budget.check(m, n)?;
    let v = u.dft();
    let dv = spectral_time_derivative(u, nu);
    let omega = frequencies(n);
    let (c, dc) = (v.coeffs(), dv.coeffs());
    let sum = resonant_sum(m, n, |ps, ms| {
        let mut wp = [0.0; MAX_ARITY];
        let mut wm = [0.0; MAX_ARITY];
        let mut f = [Complex64::new(0.0, 0.0); 2 * MAX_ARITY];
        let mut df = [Complex64::new(0.0, 0.0); 2 * MAX_ARITY];
        for j in 0..m {
            wp[j] = omega[ps[j]];
            wm[j] = omega[ms[j]];
            f[j] = c[ps[j]];
            df[j] = dc[ps[j]];
            f[m + j] = c[ms[j]].conj();
            df[m + j] = dc[ms[j]].conj();
        }
        let mut d = Complex64::new(0.0, 0.0);
        for i in 0..2 * m {
            let mut p = df[i];
            for (k, fk) in f[..2 * m].iter().enumerate() {
                if k != i {
                    p *= fk;
                }
            }
            d += p;
        }
        if d == Complex64::new(0.0, 0.0) {
            return d;
        }
        d * mu.eval(&wp[..m], &wm[..m])
    });
    Ok(sum * lambda_weight(m, n))
}

/// Right-hand side of the derivative identity for `Λ_m`:
/// `−i [2Λ_m(μ D_m cos, û) + ν Λ_{m+1}(S_m μ, û)]`.
pub fn lambda_derivative_identity(
    mu: &dyn Multiplier,
    u: &LatticeState,
    nu: f64,
    budget: &LambdaBudget,
) -> Result<Complex64> {
    let v = u.dft();
    let linear = lambda_m(&TimesDCos(mu), &v, budget)?;
    let cubic = lambda_m(&ShiftDifference(mu), &v, budget)?;
    Ok(-Complex64::i() * (2.0 * linear + nu * cubic))
}
