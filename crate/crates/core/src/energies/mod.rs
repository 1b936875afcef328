//! Modified-energy machinery on the mode grid.
//!
//! * [`series`]: the weights `f_n` as odd-cosine series.
//! * [`resonance`]: points of `V_m`, `D_m`, and the division-free multiplier
//!   `μ_n = (ν/4) D₂f_n / D₂cos`.
//! * [`lambda`]: the functionals `Λ_m(μ, v)`, the shift transform `S_m` and
//!   the exact time derivative of `Λ_m` along the flow.
//! * [`modified`]: `E_n`, its two derivative formulas and the derivative of
//!   the plain Sobolev energy.

pub mod lambda;
pub mod modified;
pub mod resonance;
pub mod series;

pub use lambda::{
    lambda_derivative_identity, lambda_m, lambda_time_derivative, lambda_weight, multiplier, Constant,
    EvaluationDifference, LambdaBudget, ModifiedMultiplier, Multiplier, ShiftDifference, TimesDCos,
};
pub use modified::{
    energy_derivative_direct, modified_energy, quadratic_derivative, quadratic_derivative_resonant,
    sobolev_derivative, EnergyParts, ModifiedEnergy,
};
pub use resonance::{chebyshev_u, d_m, fold, mu_eval, mu_sup_bound, ResonancePoint};
pub use series::{build_fn, central_binomial_ratio, product_form, OddCosineSeries};
