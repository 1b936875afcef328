//! Tabulates the quartic multiplier on a slice of the resonant set and
//! checks it against its sup bound.

use std::f64::consts::PI;

use dnls::energies::{build_fn, mu_eval, mu_sup_bound, ResonancePoint};

fn main() -> dnls::Result<()> {
    for n in 1..=5 {
        let f = build_fn(n)?;
        let bound = mu_sup_bound(&f);
        let mut sup: f64 = 0.0;
        let steps = 60;
        for i in 0..steps {
            for k in 0..steps {
                let a = -PI + 2.0 * PI * i as f64 / steps as f64;
                let b = -PI + 2.0 * PI * k as f64 / steps as f64;
                let w = ResonancePoint::close(vec![a, b], vec![0.3])?;
                sup = sup.max(mu_eval(&f, &w, 1.0)?.abs());
            }
        }
        println!("n = {n}: sup |mu| on grid = {sup:.6}, bound = {bound:.6}");
    }

    let f = build_fn(3)?;
    println!("\nmu_3 along w = (x, -x; y, -y):");
    for x in [0.0, 0.5, 1.0, 2.0, 3.0] {
        let w = ResonancePoint::close(vec![x, -x], vec![1.0])?;
        println!("  x = {x:.1}: {:+.8}", mu_eval(&f, &w, 1.0)?);
    }
    Ok(())
}
