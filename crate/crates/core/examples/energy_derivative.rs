//! Time derivative of the modified energies: direct evaluation against the
//! chain rule along the flow, and against a finite difference.

use dnls::dynamics::step_rk4;
use dnls::energies::{modified_energy, sobolev_derivative, LambdaBudget, ModifiedEnergy};
use dnls::initial::{random_bandlimited, rng};

fn main() -> dnls::Result<()> {
    let u = random_bandlimited(16, 0.5, 0.7, &mut rng(3))?;
    let budget = LambdaBudget::default();
    let nu = 1.0;
    let tau = 1e-4;
    let ahead = step_rk4(&u, nu, tau);
    let behind = step_rk4(&u, nu, -tau);
    println!("{:>3} {:>16} {:>16} {:>16} {:>16}", "n", "direct", "chain rule", "finite diff", "d/dt |u|²_Hn");
    for n in 1..=3 {
        let e = ModifiedEnergy::new(n, nu)?;
        let direct = e.derivative_direct(&u, &budget)?;
        let chain = e.derivative_chain_rule(&u, &budget)?;
        let fd = (modified_energy(n, &ahead, nu, &budget)? - modified_energy(n, &behind, nu, &budget)?) / (2.0 * tau);
        let naive = sobolev_derivative(n, &u, nu, &budget)?;
        println!("{n:>3} {:>16.8e} {:>16.8e} {fd:>16.8e} {naive:>16.8e}", direct.re, chain.re);
    }
    Ok(())
}
