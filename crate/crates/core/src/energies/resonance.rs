//! Points of the resonant sets `V_m` and the multiplier `μ_n` on `V_2`.
//!
//! A point of `V_m` is a pair of blocks `(w_1, …, w_m)` and
//! `(w_{−1}, …, w_{−m})` with `Σ_j w_j − w_{−j} = 2π·j_alias` for an integer
//! alias index.

use std::f64::consts::PI;

use super::series::OddCosineSeries;
use crate::{Error, Result};

/// Resonance defect tolerated by [`ResonancePoint::new`].
pub const RESONANCE_TOL: f64 = 1e-12;

/// Reduces an angle to `[−π, π)`.
pub fn fold(omega: f64) -> f64 {
    let r = (omega + PI).rem_euclid(2.0 * PI) - PI;
    // rem_euclid can round up to exactly 2π
    if r >= PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Alias index `round(Σ_j (w_j − w_{−j}) / 2π)`.
pub fn alias_index(plus: &[f64], minus: &[f64]) -> i64 {
    (block_sum(plus, minus) / (2.0 * PI)).round() as i64
}

fn block_sum(plus: &[f64], minus: &[f64]) -> f64 {
    plus.iter().sum::<f64>() - minus.iter().sum::<f64>()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResonancePoint {
    plus: Vec<f64>,
    minus: Vec<f64>,
    alias_index: i64,
}

impl ResonancePoint {
    /// Checks that both blocks have the same arity, every entry lies in
    /// `[−π, π)` and the resonance condition holds to [`RESONANCE_TOL`].
    pub fn new(plus: Vec<f64>, minus: Vec<f64>) -> Result<Self> {
        if plus.is_empty() || plus.len() != minus.len() {
            return Err(Error::InvalidState(format!(
                "resonant blocks must have equal positive arity, got {} and {}",
                plus.len(),
                minus.len()
            )));
        }
        if let Some(w) = plus.iter().chain(&minus).find(|w| !(-PI..PI).contains(*w)) {
            return Err(Error::InvalidState(format!("frequency {w} outside [−π, π)")));
        }
        let j = alias_index(&plus, &minus);
        let defect = block_sum(&plus, &minus) - 2.0 * PI * j as f64;
        if defect.abs() > RESONANCE_TOL {
            return Err(Error::InvalidState(format!("point is off V_m by {defect:e}")));
        }
        Ok(Self {
            plus,
            minus,
            alias_index: j,
        })
    }

    /// Closes a point of `V_m` from `m` plus-entries and `m − 1` minus-entries:
    /// the last minus-entry is the folded resonant value.
    pub fn close(plus: Vec<f64>, mut minus_free: Vec<f64>) -> Result<Self> {
        if minus_free.len() + 1 != plus.len() {
            return Err(Error::InvalidState("closing needs m plus and m − 1 minus entries".into()));
        }
        let last = fold(plus.iter().sum::<f64>() - minus_free.iter().sum::<f64>());
        minus_free.push(last);
        let plus = plus.into_iter().map(fold).collect();
        let minus = minus_free.into_iter().map(fold).collect();
        Self::new(plus, minus)
    }

    pub fn arity(&self) -> usize {
        self.plus.len()
    }

    /// `(w_1, …, w_m)`.
    pub fn plus(&self) -> &[f64] {
        &self.plus
    }

    /// `(w_{−1}, …, w_{−m})`.
    pub fn minus(&self) -> &[f64] {
        &self.minus
    }

    pub fn alias_index(&self) -> i64 {
        self.alias_index
    }

    pub fn resonance_defect(&self) -> f64 {
        block_sum(&self.plus, &self.minus) - 2.0 * PI * self.alias_index as f64
    }

    /// Exchanges the `+` and `−` blocks.
    pub fn swap_blocks(&self) -> Self {
        Self {
            plus: self.minus.clone(),
            minus: self.plus.clone(),
            alias_index: -self.alias_index,
        }
    }

    /// `(X, Y, Z, H)` for `m = 2`:
    /// `X = (w₁ − w₂ + w₋₁ − w₋₂)/4`, `Y = (w₁ − w₂ − w₋₁ + w₋₂)/4`,
    /// `Z = (w₁ + w₂)/2`, `H = w₁ + w₂ − w₋₁ − w₋₂`.
    pub fn xyzh(&self) -> Option<[f64; 4]> {
        let [a, b] = self.plus[..] else { return None };
        let [c, d] = self.minus[..] else { return None };
        Some([
            (a - b + c - d) / 4.0,
            (a - b - c + d) / 4.0,
            (a + b) / 2.0,
            a + b - c - d,
        ])
    }

    /// `Σ_j |w_j|^p + |w_{−j}|^p`.
    pub fn power_sum(&self, p: i32) -> f64 {
        self.plus.iter().chain(&self.minus).map(|w| w.abs().powi(p)).sum()
    }
}

/// `D_m f(w) = Σ_j f(w_j) − f(w_{−j})`.
pub fn d_m(f: impl Fn(f64) -> f64, w: &ResonancePoint) -> f64 {
    d_m_raw(&f, w.plus(), w.minus())
}

pub(crate) fn d_m_raw(f: &impl Fn(f64) -> f64, plus: &[f64], minus: &[f64]) -> f64 {
    plus.iter().zip(minus).map(|(p, q)| f(*p) - f(*q)).sum()
}

/// Second-kind Chebyshev values `U_0(x), …, U_{deg}(x)`.
pub fn chebyshev_u(deg: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(deg + 1);
    out.push(1.0);
    if deg >= 1 {
        out.push(2.0 * x);
    }
    for k in 2..=deg {
        out.push(2.0 * x * out[k - 1] - out[k - 2]);
    }
    out
}

/// `μ_n(w) = (ν/4) · D₂f_n(w) / D₂cos(w)` on `V_2`, evaluated without division.
///
/// With `j` the alias index, `Z = (w₁ + w₂)/2` and the quarter differences
/// `A = (w₁ − w₂ − w₋₁ + w₋₂ + 2πj)/4`, `B = (w₁ − w₂ + w₋₁ − w₋₂ + 2πj)/4`,
/// each odd harmonic factorises as `D₂ cos((2k+1)·) ∝ cos((2k+1)Z)
/// sin((2k+1)A) sin((2k+1)B)` with a prefactor common to all `k`, so
///
/// ```text
/// μ_n = (ν/4) Σ_k β_k · (−1)ᵏ U_{2k}(sin Z) · U_{2k}(cos A) · U_{2k}(cos B),
/// ```
///
/// a polynomial in `sin Z`, `cos A`, `cos B`. The result is finite everywhere
/// and bounded by `(1/4) Σ_k |β_k| (2k+1)³`.
pub fn mu_eval(f: &OddCosineSeries, w: &ResonancePoint, nu: f64) -> Result<f64> {
    if w.arity() != 2 {
        return Err(Error::InvalidState(format!(
            "μ_n lives on V_2, got a point of V_{}",
            w.arity()
        )));
    }
    Ok(mu_raw(f.beta(), w.plus(), w.minus(), nu))
}

/// Entries need not be folded: the expression is 2π-periodic in each one.
pub(crate) fn mu_raw(beta: &[f64], plus: &[f64], minus: &[f64], nu: f64) -> f64 {
    let (w1, w2, wm1, wm2) = (plus[0], plus[1], minus[0], minus[1]);
    let shift = 2.0 * PI * alias_index(plus, minus) as f64;
    let z = 0.5 * (w1 + w2);
    let a = 0.25 * (w1 - w2 - wm1 + wm2 + shift);
    let b = 0.25 * (w1 - w2 + wm1 - wm2 + shift);

    let (sz, ca, cb) = (z.sin(), a.cos(), b.cos());
    // U_{2k} by the three-term recurrence, two steps per k
    let (mut uz, mut ua, mut ub) = ([1.0, 2.0 * sz], [1.0, 2.0 * ca], [1.0, 2.0 * cb]);
    let mut acc = 0.0;
    let mut sign = 1.0;
    for (k, beta_k) in beta.iter().enumerate() {
        if k > 0 {
            for (u, x) in [(&mut uz, sz), (&mut ua, ca), (&mut ub, cb)] {
                let even = 2.0 * x * u[1] - u[0];
                let odd = 2.0 * x * even - u[1];
                *u = [even, odd];
            }
        }
        acc += beta_k * sign * uz[0] * ua[0] * ub[0];
        sign = -sign;
    }
    0.25 * nu * acc
}

/// Pointwise bound `(1/4) Σ_k |β_k| (2k+1)³` on `|μ_n|`.
pub fn mu_sup_bound(f: &OddCosineSeries) -> f64 {
    0.25 * f
        .beta()
        .iter()
        .enumerate()
        .map(|(k, b)| b.abs() * ((2 * k + 1) as f64).powi(3))
        .sum::<f64>()
}
