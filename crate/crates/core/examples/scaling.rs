//! Refining the lattice by λ and running for t/λ² rescales every term of the
//! growth bound by the same power of λ.

use dnls::bounds::check_scaling_invariance;
use dnls::initial::{random_bandlimited, rng};

fn main() -> dnls::Result<()> {
    let u0 = random_bandlimited(32, 0.25, 0.5, &mut rng(9))?;
    for lambda in [2, 4] {
        for n in 1..=3 {
            let r = check_scaling_invariance(&u0, lambda, n, 1.0, 1.0, 1e-2)?;
            println!(
                "lambda {lambda} n {n}: expected {:.4}, terms {:?}, bound ratio {:.6} -> {:.6}, deviation {:.1e}",
                r.expected_factor,
                r.term_factors.map(|x| (x * 1e4).round() / 1e4),
                r.ratio_original,
                r.ratio_rescaled,
                r.max_deviation()
            );
        }
    }
    Ok(())
}
