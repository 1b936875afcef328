use std::f64::consts::PI;

use dnls::bounds::{check_gagliardo_nirenberg, check_holder_interpolation};
use dnls::dynamics::step_splitstep;
use dnls::energies::{
    build_fn, d_m, lambda_m, mu_eval, mu_sup_bound, Constant, LambdaBudget, ModifiedMultiplier, Multiplier,
    ResonancePoint, ShiftDifference,
};
use dnls::initial::{random_state, rng};
use dnls::spectral::{dft, idft};
use dnls::{Complex64, LatticeState};
use proptest::prelude::*;

fn state_of(n: usize, amp: f64) -> impl Strategy<Value = LatticeState> {
    prop::collection::vec((-amp..amp, -amp..amp), n)
        .prop_map(|v| LatticeState::from_values(v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap())
}

fn state() -> impl Strategy<Value = LatticeState> {
    prop_oneof![Just(8usize), Just(16), Just(32)].prop_flat_map(|n| state_of(n, 2.0))
}

fn angle() -> impl Strategy<Value = f64> {
    -PI..PI
}

fn point2() -> impl Strategy<Value = ResonancePoint> {
    (angle(), angle(), angle()).prop_map(|(a, b, c)| ResonancePoint::close(vec![a, b], vec![c]).unwrap())
}

fn max_diff(a: &LatticeState, b: &LatticeState) -> f64 {
    a.values().iter().zip(b.values()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

proptest! {
    #[test]
    fn sobolev_is_bounded_by_the_stepsize(u in state(), h in 0.1f64..2.0, n in 0usize..=8) {
        let u = u.with_stepsize(h).unwrap();
        let s = u.sobolev_norm(n).unwrap();
        prop_assert!(s <= (2.0 / h).powi(n as i32) * u.l2_norm() * (1.0 + 1e-12));
    }

    #[test]
    fn stencil_and_symbol_norms_agree(u in state(), n in 0usize..=8) {
        let a = u.sobolev_norm(n).unwrap();
        let b = dft(&u).symbol_norm(n);
        prop_assert!((a - b).abs() <= 1e-11 * a.max(1e-300) + 1e-13);
    }

    #[test]
    fn symbol_norm_is_sandwiched(u in state(), n in 0usize..=6) {
        let v = dft(&u);
        let (s, c) = (v.symbol_norm(n), v.continuous_sobolev(n));
        let tol = 1e-12 * c + 1e-14;
        prop_assert!((2.0 / PI).powi(n as i32) * c <= s + tol);
        prop_assert!(s <= c + tol);
    }

    #[test]
    fn laplacian_self_adjoint(u in state_of(16, 1.0), v in state_of(16, 1.0), h in 0.1f64..2.0) {
        let (u, v) = (u.with_stepsize(h).unwrap(), v.with_stepsize(h).unwrap());
        let a = u.laplacian().inner(&v);
        let b = u.inner(&v.laplacian());
        prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0) / (h * h));
    }

    #[test]
    fn dft_round_trip_and_plancherel(u in state()) {
        let v = dft(&u);
        prop_assert!(max_diff(&idft(&v), &u) <= 1e-13 * u.linf_norm().max(1.0));
        let p = v.coeffs().iter().map(|z| z.norm_sqr()).sum::<f64>() / u.n_points() as f64;
        prop_assert!((p - u.l2_norm_sq()).abs() <= 1e-12 * p.max(1.0));
    }

    #[test]
    fn nonlinear_symbol_is_transform_of_cube(u in state()) {
        let cube = LatticeState::from_fn(u.n_points(), |g| u.values()[g] * u.values()[g].norm_sqr()).unwrap();
        let (a, b) = (dft(&u).nonlinear_symbol(), dft(&cube));
        let scale = b.coeffs().iter().map(|z| z.norm()).fold(1.0, f64::max);
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            prop_assert!((x - y).norm() <= 1e-12 * scale);
        }
    }

    #[test]
    fn focusing_minus_defocusing_hamiltonian(u in state()) {
        let d = u.hamiltonian(-1.0) - u.hamiltonian(1.0);
        let e = 0.5 * u.l4_norm_pow4();
        prop_assert!((d - e).abs() <= 1e-12 * e.max(1.0));
    }

    #[test]
    fn rescale_multiplies_mass(u in state(), lambda in 1u32..=4) {
        let v = u.rescale(lambda).unwrap();
        let expect = f64::from(lambda).sqrt() * u.l2_norm();
        prop_assert!((v.l2_norm() - expect).abs() <= 1e-12 * expect.max(1.0));
    }

    #[test]
    fn evaluation_difference_is_antisymmetric(w in point2(), k in 1i32..5) {
        let f = |x: f64| (f64::from(k) * x).cos() + x.sin().powi(3);
        let s = w.swap_blocks();
        prop_assert!((d_m(f, &w) + d_m(f, &s)).abs() <= 1e-13);
    }

    #[test]
    fn multiplier_is_bounded_and_swap_symmetric(w in point2(), n in 1usize..=6, nu in prop_oneof![Just(1.0), Just(-1.0)]) {
        let f = build_fn(n).unwrap();
        let mu = mu_eval(&f, &w, nu).unwrap();
        prop_assert!(mu.abs() <= mu_sup_bound(&f) * (1.0 + 1e-12));
        let back = mu_eval(&f, &w.swap_blocks(), nu).unwrap();
        prop_assert!((mu - back).abs() <= 1e-12 * mu_sup_bound(&f));
        // 2π-periodic in each entry
        let shifted = ModifiedMultiplier::new(&f, nu).eval(
            &[w.plus()[0] + 2.0 * PI, w.plus()[1]],
            &[w.minus()[0], w.minus()[1] - 2.0 * PI],
        );
        prop_assert!((mu - shifted).abs() <= 1e-11 * mu_sup_bound(&f));
    }

    #[test]
    fn first_multiplier_is_constant(w in point2(), v in point2()) {
        let f = build_fn(1).unwrap();
        let (a, b) = (mu_eval(&f, &w, 1.0).unwrap(), mu_eval(&f, &v, 1.0).unwrap());
        prop_assert!((a - b).abs() <= 1e-14);
    }

    #[test]
    fn shift_of_a_constant_vanishes(w in point2(), x in angle(), y in angle(), c in -3.0f64..3.0) {
        let s = ShiftDifference(Constant { arity: 2, value: c });
        let plus = [w.plus()[0], w.plus()[1], x];
        let minus = [w.minus()[0], w.minus()[1], y];
        prop_assert_eq!(s.eval(&plus, &minus), 0.0);
        let same = [w.minus()[0], w.minus()[1], x];
        prop_assert_eq!(ShiftDifference(ModifiedMultiplier::new(&build_fn(3).unwrap(), 1.0)).eval(&plus, &same), 0.0);
    }

    #[test]
    fn splitstep_is_an_isometry(u in state_of(32, 1.0), tau in 1e-4f64..0.2, nu in prop_oneof![Just(1.0), Just(-1.0)]) {
        let v = step_splitstep(&u, nu, tau);
        prop_assert!((v.l2_norm() - u.l2_norm()).abs() <= 1e-13 * u.l2_norm().max(1.0));
        let back = step_splitstep(&v, nu, -tau);
        prop_assert!(max_diff(&back, &u) <= 1e-12);
    }

    #[test]
    fn splitstep_commutes_with_phase(u in state_of(16, 1.0), theta in angle(), tau in 1e-4f64..0.2) {
        let a = step_splitstep(&u.rotate_phase(theta), 1.0, tau);
        let b = step_splitstep(&u, 1.0, tau).rotate_phase(theta);
        prop_assert!(max_diff(&a, &b) <= 1e-13);
    }

    #[test]
    fn gagliardo_nirenberg_on_iid_states(seed in any::<u64>(), n in prop_oneof![Just(8usize), Just(16), Just(64)], amp in 1e-3f64..10.0) {
        let u = random_state(n, amp, &mut rng(seed)).unwrap();
        prop_assert!(check_gagliardo_nirenberg(&u).holds());
    }

    #[test]
    fn holder_interpolation(u in state(), n in 2usize..=8) {
        prop_assert!(check_holder_interpolation(&u, n).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lambda_is_real_for_symmetric_multipliers(u in prop_oneof![state_of(8, 1.0), state_of(16, 1.0)], n in 1usize..=4) {
        let v = dft(&u);
        let mu = ModifiedMultiplier::new(&build_fn(n).unwrap(), 1.0);
        let l = lambda_m(&mu, &v, &LambdaBudget::default()).unwrap();
        let scale = u.l2_norm_sq().powi(2).max(1.0);
        prop_assert!(l.im.abs() <= 1e-12 * scale);
    }

    #[test]
    fn lambda_is_independent_of_thread_count(u in state_of(16, 1.0), n in 2usize..=4) {
        let v = dft(&u);
        let mu = ModifiedMultiplier::new(&build_fn(n).unwrap(), -1.0);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| lambda_m(&mu, &v, &LambdaBudget::default()).unwrap())
        };
        let (a, b) = (run(1), run(4));
        prop_assert_eq!((a.re.to_bits(), a.im.to_bits()), (b.re.to_bits(), b.im.to_bits()));
    }
}
