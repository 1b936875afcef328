//! Tracks the Sobolev norms of a band-limited state and fits the constant and
//! exponent of the polynomial growth bound.

use dnls::bounds::{run_growth_experiment, GrowthConfig};
use dnls::initial::{random_bandlimited, rng};

fn main() -> dnls::Result<()> {
    let u0 = random_bandlimited(128, 0.25, 0.5, &mut rng(1))?;
    let cfg = GrowthConfig::new(1.0, 4, 40.0, 1e-2);
    let rep = run_growth_experiment(&u0, &cfg)?;

    println!("M(u0) = {:.6}", rep.reports[0].m_quantity);
    println!("H1 bound {:.4}, largest H1 seen {:.4}", rep.base_case.bound, rep.base_case.max_h1);
    println!("hamiltonian drift {:.3e}", rep.hamiltonian_drift);
    println!("{:>3} {:>12} {:>12} {:>10} {:>10}", "n", "fitted C", "max ratio", "exponent", "bound exp");
    for r in &rep.reports {
        let exp = r.exponent_fit.map_or("-".to_string(), |x| format!("{x:.4}"));
        println!(
            "{:>3} {:>12.4e} {:>12.4e} {exp:>10} {:>10.1}",
            r.n,
            r.fitted_c,
            r.max_ratio,
            (r.n as f64 - 1.0) / 2.0
        );
    }
    Ok(())
}
