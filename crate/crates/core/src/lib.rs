//! Numerical laboratory for the cubic discrete nonlinear Schrödinger equation
//!
//! ```text
//! i ∂ₜ u_g = (Δ_h u)_g + ν |u_g|² u_g,   ν ∈ {−1, +1}
//! ```
//!
//! on a periodic lattice of `N` sites with stepsize `h`.
//!
//! The crate is organised bottom-up:
//!
//! * [`lattice`]: lattice states, the discrete Laplacian, discrete Lebesgue and
//!   Sobolev norms, the Hamiltonian and the dilation map.
//! * [`spectral`]: the lattice Fourier transform, Fourier symbols, the
//!   band-limited (Shannon) interpolant and continuous/discrete norm equivalence.
//! * [`dynamics`]: Strang split-step and RK4 integrators with observers.
//! * [`energies`]: resonant multilinear functionals `Λ_m`, the modified
//!   energies `E_n` and their exact time derivatives.
//! * [`bounds`]: Sobolev-growth harness and the inequality checkers.
//! * [`cli`]: configuration-driven experiment runner behind the `dnls` binary.

pub mod bounds;
pub mod cli;
pub mod dynamics;
pub mod energies;
mod error;
pub mod initial;
pub mod lattice;
pub mod spectral;
mod svg;

pub use error::{Error, Result};
pub use lattice::LatticeState;
pub use spectral::SpectralState;

pub use num_complex::Complex64;
