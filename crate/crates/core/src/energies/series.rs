//! The weights `f_n` of the modified energies, stored as odd-cosine series.

use std::f64::consts::PI;

use crate::{Error, Result};

/// Largest order accepted by [`build_fn`].
pub const MAX_ORDER: usize = 8;

/// Below this value of `sin²ω` the weight is evaluated from its tail series.
const TAIL_THRESHOLD: f64 = 0.5;

/// Points used by the dense search for the equivalence constant.
const ALPHA_SAMPLES: usize = 20_000;

/// `c₀ + Σ_k β_k cos((2k+1)ω)`, the trigonometric polynomial
///
/// ```text
/// f_n(ω) = 1 − cos ω · Σ_{k=0}^{n−1} C(2k,k)/4ᵏ · sin^{2k} ω .
/// ```
///
/// `f_n` vanishes to order `2n` at `ω = 0`, equals 1 at `π/2`, and `f_n − 1`
/// is odd about `π/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct OddCosineSeries {
    order: usize,
    constant: f64,
    beta: Vec<f64>,
    alpha: f64,
}

/// `C(2k, k) / 4ᵏ`, the Taylor coefficients of `(1 − x²)^{−1/2}` in `x²`.
pub fn central_binomial_ratio(k: usize) -> f64 {
    (0..k).fold(1.0, |c, i| c * (2 * i + 1) as f64 / (2 * i + 2) as f64)
}

/// `f_n(ω)` from its defining product form (no expansion).
pub fn product_form(n: usize, omega: f64) -> f64 {
    let s2 = omega.sin().powi(2);
    let mut sum = 0.0;
    let mut pow = 1.0;
    for k in 0..n {
        sum += central_binomial_ratio(k) * pow;
        pow *= s2;
    }
    1.0 - omega.cos() * sum
}

/// Expands `f_n` into odd cosines.
///
/// The `β_k` are obtained from `M = 4n` equispaced samples by discrete
/// orthogonality, which is exact because `f_n` only contains the harmonics
/// `0, 1, 3, …, 2n − 1`, all below `M/2`.
pub fn build_fn(n: usize) -> Result<OddCosineSeries> {
    if !(1..=MAX_ORDER).contains(&n) {
        return Err(Error::OutOfRange {
            what: "modified-energy order",
            value: n.to_string(),
            allowed: format!("1..={MAX_ORDER}"),
        });
    }
    let m = 4 * n;
    let samples: Vec<(f64, f64)> = (0..m)
        .map(|i| {
            let theta = 2.0 * PI * i as f64 / m as f64;
            (theta, product_form(n, theta))
        })
        .collect();
    let constant = samples.iter().map(|(_, f)| f).sum::<f64>() / m as f64;
    let beta = (0..n)
        .map(|k| {
            let h = (2 * k + 1) as f64;
            2.0 / m as f64 * samples.iter().map(|(t, f)| f * (h * t).cos()).sum::<f64>()
        })
        .collect();
    let mut series = OddCosineSeries {
        order: n,
        constant,
        beta,
        alpha: 0.0,
    };
    series.alpha = series.equivalence_constant();
    Ok(series)
}

impl OddCosineSeries {
    pub fn order(&self) -> usize {
        self.order
    }

    /// `c₀ = f_n(π/2)`.
    pub fn constant(&self) -> f64 {
        self.constant
    }

    /// `β_k`, the coefficient of `cos((2k+1)ω)`.
    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    /// Constant `α` with `α ω^{2n} ≤ f_n(ω) ≤ α⁻¹ ω^{2n}` on `[−π, π]`.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `C(2n, n)/4ⁿ`, the limit of `f_n(ω)/ω^{2n}` as `ω → 0`.
    pub fn leading_coefficient(&self) -> f64 {
        central_binomial_ratio(self.order)
    }

    /// `c₀ + Σ β_k cos((2k+1)ω)` summed directly.
    pub fn eval_cosine_sum(&self, omega: f64) -> f64 {
        self.constant
            + self
                .beta
                .iter()
                .enumerate()
                .map(|(k, b)| b * ((2 * k + 1) as f64 * omega).cos())
                .sum::<f64>()
    }

    /// Evaluates `f_n(ω)`.
    ///
    /// Near `ω ≡ 0` the cosine sum cancels to `O(ω^{2n})`, so there the value
    /// is taken from `cos ω · Σ_{k≥n} C(2k,k)/4ᵏ sin^{2k}ω`, the same function
    /// written without cancellation.
    pub fn eval(&self, omega: f64) -> f64 {
        let (s, c) = omega.sin_cos();
        let s2 = s * s;
        if c > 0.0 && s2 <= TAIL_THRESHOLD {
            c * binomial_tail(self.order, s2)
        } else {
            self.eval_cosine_sum(omega)
        }
    }

    fn equivalence_constant(&self) -> f64 {
        let e = 2 * self.order as i32;
        let (mut lo, mut hi) = (self.leading_coefficient(), self.leading_coefficient());
        for i in 1..=ALPHA_SAMPLES {
            let w = PI * i as f64 / ALPHA_SAMPLES as f64;
            let r = self.eval(w) / w.powi(e);
            lo = lo.min(r);
            hi = hi.max(r);
        }
        lo.min(1.0 / hi)
    }
}

/// `Σ_{k≥n} C(2k,k)/4ᵏ · x^k` for `0 ≤ x ≤ 1/2`.
fn binomial_tail(n: usize, x: f64) -> f64 {
    let mut coeff = central_binomial_ratio(n);
    let mut pow = x.powi(n as i32);
    let mut sum = 0.0;
    let mut k = n;
    loop {
        let term = coeff * pow;
        sum += term;
        if term <= 1e-18 * sum {
            return sum;
        }
        coeff *= (2 * k + 1) as f64 / (2 * k + 2) as f64;
        pow *= x;
        k += 1;
    }
}
