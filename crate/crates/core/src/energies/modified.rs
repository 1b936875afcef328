//! Modified energies `E_n(u) = ∫ f_n |û|² dω + Λ₂(μ_n, û)` and their time
//! derivatives.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::lambda::{
    lambda_m, lambda_time_derivative, EvaluationDifference, LambdaBudget, ModifiedMultiplier,
    ShiftDifference,
};
use super::series::{build_fn, OddCosineSeries};
use crate::dynamics::spectral_time_derivative;
use crate::lattice::LatticeState;
use crate::Result;

/// Quadratic and correction parts of `E_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyParts {
    /// `∫ f_n |û|² dω`.
    pub quadratic: f64,
    /// `Λ₂(μ_n, û)` (real part; the imaginary part is round-off).
    pub correction: f64,
}

impl EnergyParts {
    pub fn total(&self) -> f64 {
        self.quadratic + self.correction
    }
}

/// The `n`-th modified energy for coupling `nu`, with its weight and
/// multiplier built once.
#[derive(Debug, Clone)]
pub struct ModifiedEnergy {
    series: OddCosineSeries,
    multiplier: ModifiedMultiplier,
    nu: f64,
}

impl ModifiedEnergy {
    pub fn new(n: usize, nu: f64) -> Result<Self> {
        let series = build_fn(n)?;
        let multiplier = ModifiedMultiplier::new(&series, nu);
        Ok(Self {
            series,
            multiplier,
            nu,
        })
    }

    pub fn series(&self) -> &OddCosineSeries {
        &self.series
    }

    pub fn multiplier(&self) -> &ModifiedMultiplier {
        &self.multiplier
    }

    pub fn parts(&self, u: &LatticeState, budget: &LambdaBudget) -> Result<EnergyParts> {
        let v = u.dft();
        let quadratic = v.weighted_integral(|w| self.series.eval(w));
        let correction = lambda_m(&self.multiplier, &v, budget)?.re;
        Ok(EnergyParts {
            quadratic,
            correction,
        })
    }

    pub fn value(&self, u: &LatticeState, budget: &LambdaBudget) -> Result<f64> {
        Ok(self.parts(u, budget)?.total())
    }

    /// `∂ₜE_n = −iν Λ₃(S₂μ_n, û)`, returned as a complex number whose
    /// imaginary part is round-off.
    pub fn derivative_direct(&self, u: &LatticeState, budget: &LambdaBudget) -> Result<Complex64> {
        let cubic = lambda_m(&ShiftDifference(&self.multiplier), &u.dft(), budget)?;
        Ok(-Complex64::i() * self.nu * cubic)
    }

    /// `∂ₜE_n` by the product rule applied to both parts of `E_n`.
    pub fn derivative_chain_rule(&self, u: &LatticeState, budget: &LambdaBudget) -> Result<Complex64> {
        let quadratic = quadratic_derivative(|w| self.series.eval(w), u, self.nu);
        let correction = lambda_time_derivative(&self.multiplier, u, self.nu, budget)?;
        Ok(quadratic + correction)
    }
}

/// `E_n(u)`.
pub fn modified_energy(n: usize, u: &LatticeState, nu: f64, budget: &LambdaBudget) -> Result<f64> {
    ModifiedEnergy::new(n, nu)?.value(u, budget)
}

/// `∂ₜE_n(u) = −iν Λ₃(S₂μ_n, û)` (real part).
pub fn energy_derivative_direct(n: usize, u: &LatticeState, nu: f64, budget: &LambdaBudget) -> Result<f64> {
    Ok(ModifiedEnergy::new(n, nu)?.derivative_direct(u, budget)?.re)
}

/// `∂ₜ ∫ f |û|² dω` at `u` by the product rule.
pub fn quadratic_derivative(f: impl Fn(f64) -> f64, u: &LatticeState, nu: f64) -> Complex64 {
    let v = u.dft();
    let dv = spectral_time_derivative(u, nu);
    let n = v.n_points();
    let s: Complex64 = (0..n)
        .map(|k| {
            let z = v.coeffs()[k];
            let dz = dv.coeffs()[k];
            f(v.frequency(k)) * (dz * z.conj() + z * dz.conj())
        })
        .sum();
    s * (2.0 * PI / n as f64)
}

/// `∂ₜ ∫ f |û|² dω = (iν/2) Λ₂(D₂f, û)` for a 2π-periodic `f`.
pub fn quadratic_derivative_resonant<F>(f: F, u: &LatticeState, nu: f64, budget: &LambdaBudget) -> Result<Complex64>
where
    F: Fn(f64) -> f64 + Sync,
{
    let d2f = EvaluationDifference { arity: 2, f };
    let l = lambda_m(&d2f, &u.dft(), budget)?;
    Ok(Complex64::new(0.0, 0.5 * nu) * l)
}

/// `∂ₜ‖u‖²_{Ḣⁿ} = (iν/4π) Λ₂(D₂(2 sin(ω/2))^{2n}, û)`, the derivative of the
/// plain Sobolev energy (real part).
pub fn sobolev_derivative(n: usize, u: &LatticeState, nu: f64, budget: &LambdaBudget) -> Result<f64> {
    let e = 2 * n as i32;
    let d = quadratic_derivative_resonant(|w| (2.0 * (0.5 * w).sin()).powi(e), u, nu, budget)?;
    Ok(d.re / (2.0 * PI))
}
