//! Integrates a single Fourier mode and compares against its closed form.

use dnls::dynamics::{integrate, IntegrationConfig, Observable};
use dnls::lattice::mode_frequency;
use dnls::{Complex64, LatticeState};

fn main() -> dnls::Result<()> {
    let (n, j, a, nu, t_end) = (64, 5, 0.8, 1.0, 20.0);
    let u0 = LatticeState::plane_wave(n, j, Complex64::new(a, 0.0))?;
    let cfg = IntegrationConfig::new(nu, 1e-2, t_end)
        .record_every(200)
        .observables(vec![Observable::L2, Observable::Hamiltonian]);
    let tr = integrate(&u0, &cfg)?;

    let w = mode_frequency(n, j);
    let phase = -((2.0 * w.cos() - 2.0) + nu * a * a) * t_end;
    let exact = LatticeState::plane_wave(n, j, Complex64::from_polar(a, phase))?;
    let err = tr
        .final_state()
        .values()
        .iter()
        .zip(exact.values())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);

    println!("{:>8} {:>14} {:>14}", "t", "l2", "hamiltonian");
    let l2 = tr.series(&Observable::L2).unwrap();
    let h = tr.series(&Observable::Hamiltonian).unwrap();
    for (i, t) in tr.times().iter().enumerate() {
        println!("{t:>8.2} {:>14.10} {:>14.10}", l2[i], h[i]);
    }
    println!("max |u(T) - exact| = {err:.3e}");
    Ok(())
}
