//! Initial data: plane waves, Gaussians, spikes and seeded random states.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::lattice::LatticeState;
use crate::{Error, Result};

/// Name of the generator written into output headers.
pub const RNG_NAME: &str = "ChaCha8";

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitialCondition {
    /// `u_g = a e^{−iω_j g}`.
    PlaneWave { mode: i64, amplitude: f64 },
    /// `a exp(−((g − N/2)h)² / (2w²))`, with `w` in physical units.
    Gaussian { width: f64, amplitude: f64 },
    /// Complex Gaussian coefficients on `|j| ≤ cutoff · N/2`, normalised to
    /// the given RMS amplitude.
    RandomBandlimited { cutoff_fraction: f64, amplitude: f64 },
    /// Unit mass at site 0, times `amplitude`.
    Spike { amplitude: f64 },
}

impl InitialCondition {
    pub fn name(&self) -> &'static str {
        match self {
            Self::PlaneWave { .. } => "plane_wave",
            Self::Gaussian { .. } => "gaussian",
            Self::RandomBandlimited { .. } => "random_bandlimited",
            Self::Spike { .. } => "spike",
        }
    }

    pub fn build(&self, n_points: usize, stepsize: f64, rng: &mut impl Rng) -> Result<LatticeState> {
        let u = match *self {
            Self::PlaneWave { mode, amplitude } => {
                LatticeState::plane_wave(n_points, mode, Complex64::new(amplitude, 0.0))?
            }
            Self::Gaussian { width, amplitude } => {
                if !(width > 0.0) {
                    return Err(Error::Config(format!("gaussian width must be positive, got {width}")));
                }
                let centre = (n_points / 2) as f64 * stepsize;
                LatticeState::from_fn(n_points, |g| {
                    let x = g as f64 * stepsize - centre;
                    Complex64::new(amplitude * (-x * x / (2.0 * width * width)).exp(), 0.0)
                })?
            }
            Self::RandomBandlimited {
                cutoff_fraction,
                amplitude,
            } => random_bandlimited(n_points, cutoff_fraction, amplitude, rng)?,
            Self::Spike { amplitude } => LatticeState::spike(n_points, 0)?.scale(Complex64::new(amplitude, 0.0)),
        };
        u.with_stepsize(stepsize)
    }
}

/// Sites drawn iid from the standard complex Gaussian (unit variance per
/// component), scaled by `amplitude`.
pub fn random_state(n_points: usize, amplitude: f64, rng: &mut impl Rng) -> Result<LatticeState> {
    LatticeState::from_fn(n_points, |_| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re, im) * amplitude
    })
}

/// Random trigonometric polynomial with modes `|j| ≤ cutoff · N/2` and RMS
/// site amplitude `amplitude`.
pub fn random_bandlimited(
    n_points: usize,
    cutoff_fraction: f64,
    amplitude: f64,
    rng: &mut impl Rng,
) -> Result<LatticeState> {
    if !(cutoff_fraction > 0.0 && cutoff_fraction <= 1.0) {
        return Err(Error::Config(format!("cutoff_fraction must lie in (0, 1], got {cutoff_fraction}")));
    }
    let jmax = ((cutoff_fraction * (n_points / 2) as f64).floor() as i64).max(0);
    let mut coeffs = Vec::new();
    for j in -jmax..=jmax {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        coeffs.push((j, Complex64::new(re, im)));
    }
    let n = n_points as f64;
    let u = LatticeState::from_fn(n_points, |g| {
        coeffs
            .iter()
            .map(|&(j, c)| c * Complex64::from_polar(1.0, -2.0 * PI * (j as f64) * g as f64 / n))
            .sum()
    })?;
    let rms = (u.l2_norm_sq() / n).sqrt();
    Ok(if rms == 0.0 { u } else { u.scale(Complex64::new(amplitude / rms, 0.0)) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_states_repeat() {
        let a = random_state(16, 1.0, &mut rng(7)).unwrap();
        let b = random_state(16, 1.0, &mut rng(7)).unwrap();
        let c = random_state(16, 1.0, &mut rng(8)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn bandlimited_rms_and_support() {
        let u = random_bandlimited(64, 0.25, 0.3, &mut rng(1)).unwrap();
        assert!(((u.l2_norm_sq() / 64.0).sqrt() - 0.3).abs() < 1e-12);
        let v = u.dft();
        for j in -32..32i64 {
            if j.abs() > 8 {
                assert!(v.mode(j).norm() < 1e-10, "mode {j}");
            }
        }
    }

    #[test]
    fn builders() {
        let mut r = rng(0);
        let pw = InitialCondition::PlaneWave { mode: 3, amplitude: 0.5 }.build(16, 0.5, &mut r).unwrap();
        assert_eq!(pw.stepsize(), 0.5);
        assert!((pw.linf_norm() - 0.5).abs() < 1e-15);
        let g = InitialCondition::Gaussian { width: 1.0, amplitude: 2.0 }.build(32, 0.25, &mut r).unwrap();
        assert!((g.values()[16].re - 2.0).abs() < 1e-15);
        assert!(InitialCondition::Gaussian { width: 0.0, amplitude: 1.0 }.build(32, 1.0, &mut r).is_err());
    }
}
