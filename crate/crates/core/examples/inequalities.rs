//! The inequality checkers: Gagliardo–Nirenberg, Hölder interpolation and the
//! multilinear estimate on a handful of random states.

use dnls::bounds::{check_gagliardo_nirenberg, check_holder_interpolation, check_multilinear_bound};
use dnls::energies::LambdaBudget;
use dnls::initial::{random_state, rng};
use dnls::{Complex64, LatticeState};

fn main() -> dnls::Result<()> {
    let mut r = rng(2);
    let states: Vec<_> = (0..8).map(|_| random_state(16, 1.0, &mut r)).collect::<Result<_, _>>()?;

    let worst = states.iter().map(|u| check_gagliardo_nirenberg(u).ratio).fold(0.0, f64::max);
    println!("GN ratio on iid states: {worst:.4}");
    let flat = LatticeState::from_values(vec![Complex64::new(1.0, 0.0); 16])?;
    println!("GN ratio on a constant state: {}", check_gagliardo_nirenberg(&flat).ratio);

    for n in 2..=5 {
        let ok = states.iter().map(|u| check_holder_interpolation(u, n)).collect::<Result<Vec<_>, _>>()?;
        println!("Hölder n = {n}: {}", if ok.iter().all(|x| *x) { "holds" } else { "violated" });
    }

    let budget = LambdaBudget::default();
    for (m, n) in [(2, 1), (2, 2), (2, 3), (3, 2)] {
        let rep = check_multilinear_bound(m, n, &states[..2], &budget)?;
        println!("multilinear m = {m} n = {n}: K = {:.4e}", rep.k);
    }
    Ok(())
}
