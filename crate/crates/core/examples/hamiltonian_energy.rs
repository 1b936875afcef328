//! The first modified energy is the Hamiltonian up to a factor 2π, and every
//! modified energy splits into a quadratic and a quartic part.

use std::f64::consts::PI;

use dnls::energies::{LambdaBudget, ModifiedEnergy};
use dnls::initial::{random_bandlimited, rng};

fn main() -> dnls::Result<()> {
    let u = random_bandlimited(32, 0.25, 0.6, &mut rng(11))?;
    let budget = LambdaBudget::default();
    for nu in [1.0, -1.0] {
        println!("nu = {nu:+}");
        println!("  hamiltonian    = {:.12}", u.hamiltonian(nu));
        for n in 1..=4 {
            let e = ModifiedEnergy::new(n, nu)?;
            let parts = e.parts(&u, &budget)?;
            println!(
                "  E_{n} = {:>14.10} (quadratic {:>14.10}, correction {:>12.3e})",
                parts.total(),
                parts.quadratic,
                parts.correction
            );
            if n == 1 {
                println!("  E_1 / (2π H)   = {:.15}", parts.total() / (2.0 * PI * u.hamiltonian(nu)));
            }
        }
    }
    Ok(())
}
