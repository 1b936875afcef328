//! Discrete Sobolev norms against the continuous ones of the trigonometric
//! interpolant, and truncation of the periodised Shannon kernel.

use dnls::initial::{random_bandlimited, rng};
use dnls::spectral::ShannonKernel;

fn main() -> dnls::Result<()> {
    let u = random_bandlimited(64, 0.3, 1.0, &mut rng(5))?;
    let v = u.dft();
    println!("{:>3} {:>14} {:>14} {:>10}", "n", "discrete", "continuous", "ratio");
    for n in 0..=6 {
        let d = u.sobolev_norm(n)?;
        let c = v.continuous_sobolev(n);
        println!("{n:>3} {d:>14.8} {c:>14.8} {:>10.6}", d / c);
    }

    println!("\nShannon interpolant at x = 10.5 by number of images:");
    let reference = ShannonKernel::new(401).eval(&u, 10.5);
    for periods in [1, 3, 11, 41, 101] {
        let z = ShannonKernel::new(periods).eval(&u, 10.5);
        println!("  {periods:>4}: {z:.10}  (diff {:.2e})", (z - reference).norm());
    }
    println!("  trigonometric interpolant: {:.10}", v.trig_interpolate(10.5));
    Ok(())
}
