//! Acceptance harness: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Reference values are computed here from independent formulas
//! (naive transforms, product-form weights, ratio forms) wherever the
//! library offers a fast path.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use dnls::bounds::{
    base_case_bound, check_gagliardo_nirenberg, check_holder_interpolation, check_scaling_invariance, holder_sides,
    run_growth_experiment, GrowthConfig, EMBEDDING_CONSTANT,
};
use dnls::dynamics::{integrate, IntegrationConfig, Observable};
use dnls::energies::{
    build_fn, d_m, lambda_derivative_identity, lambda_m, lambda_time_derivative,
    modified_energy, mu_eval, mu_sup_bound, multiplier, product_form, Constant, LambdaBudget, ModifiedEnergy,
    ResonancePoint,
};
use dnls::initial::{random_bandlimited, random_state, rng};
use dnls::lattice::mode_frequency;
use dnls::{Complex64, LatticeState};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

struct Outcome {
    pass: bool,
    detail: String,
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    let s = a.norm().max(b.norm());
    if s == 0.0 {
        0.0
    } else {
        (a - b).norm() / s
    }
}

/// `û_j = Σ_g u_g e^{i g ω_j}` by direct summation, indexed by `j ∈ [−N/2, N/2)`.
fn naive_dft(u: &LatticeState) -> Vec<(f64, Complex64)> {
    let n = u.n_points() as i64;
    (-n / 2..n / 2)
        .map(|j| {
            let w = 2.0 * PI * j as f64 / n as f64;
            let c = u
                .values()
                .iter()
                .enumerate()
                .map(|(g, z)| z * Complex64::from_polar(1.0, g as f64 * w))
                .sum();
            (w, c)
        })
        .collect()
}

fn iid_states(n: usize, count: usize, amp: f64, seed: u64) -> Vec<LatticeState> {
    let mut r = rng(seed);
    (0..count).map(|_| random_state(n, amp, &mut r).unwrap()).collect()
}

// 1
fn hamiltonian_compact_form() -> Outcome {
    let budget = LambdaBudget::default();
    let mut worst: f64 = 0.0;
    for (i, u) in iid_states(32, 20, 0.6, 11).iter().enumerate() {
        let nu = if i % 2 == 0 { 1.0 } else { -1.0 };
        let lhs = 2.0 * PI * u.hamiltonian(nu);
        let kinetic: f64 = naive_dft(u)
            .iter()
            .map(|(w, c)| (2.0 * (0.5 * w).sin()).powi(2) * c.norm_sqr())
            .sum::<f64>()
            * (2.0 * PI / 32.0)
            * 0.5;
        let quartic = lambda_m(&Constant { arity: 2, value: 1.0 }, &u.dft(), &budget).unwrap().re;
        worst = worst.max(rel(lhs.into(), (kinetic - 0.25 * nu * quartic).into()));
    }
    Outcome {
        pass: worst < 1e-12,
        detail: format!("max relative error {worst:.2e} (tol 1e-12)"),
    }
}

// 2
fn energy_one_is_hamiltonian() -> Outcome {
    let budget = LambdaBudget::default();
    let mut worst: f64 = 0.0;
    for (i, u) in iid_states(32, 20, 0.6, 12).iter().enumerate() {
        let nu = if i % 2 == 0 { 1.0 } else { -1.0 };
        let e1 = modified_energy(1, u, nu, &budget).unwrap();
        worst = worst.max(rel(e1.into(), (2.0 * PI * u.hamiltonian(nu)).into()));
    }
    Outcome {
        pass: worst < 1e-12,
        detail: format!("max relative error {worst:.2e} (tol 1e-12)"),
    }
}

// 3
fn lambda_derivative_identity_check() -> Outcome {
    let budget = LambdaBudget::default();
    let f3 = build_fn(3).unwrap();
    let mu1 = multiplier(1, |p: &[f64], _: &[f64]| f3.eval(p[0]) + 0.3 * (2.0 * p[0]).sin());
    let mu2_smooth = multiplier(2, |p: &[f64], q: &[f64]| {
        (p[0] - q[1]).cos() + 0.5 * (p[1] + 2.0 * q[0]).sin() * p[0].cos()
    });
    let mut worst = [0.0f64; 2];
    for (i, u) in iid_states(16, 4, 0.7, 13).iter().enumerate() {
        let nu = if i % 2 == 0 { 1.0 } else { -1.0 };
        let mu2 = ModifiedEnergy::new(2, nu).unwrap();
        let cases: [(usize, &dyn dnls::energies::Multiplier); 3] =
            [(0, &mu1), (1, &mu2_smooth), (1, mu2.multiplier())];
        for (slot, mu) in cases {
            let chain = lambda_time_derivative(mu, u, nu, &budget).unwrap();
            let ident = lambda_derivative_identity(mu, u, nu, &budget).unwrap();
            worst[slot] = worst[slot].max(rel(chain, ident));
        }
    }
    Outcome {
        pass: worst.iter().all(|e| *e < 1e-10),
        detail: format!("m=1 {:.2e}, m=2 {:.2e} (tol 1e-10)", worst[0], worst[1]),
    }
}

// 4
fn energy_derivative_identity() -> Outcome {
    let budget = LambdaBudget::default();
    let mut worst = [0.0f64; 3];
    for (i, u) in iid_states(16, 4, 0.7, 14).iter().enumerate() {
        let nu = if i % 2 == 0 { 1.0 } else { -1.0 };
        for n in 1..=3 {
            let e = ModifiedEnergy::new(n, nu).unwrap();
            let direct = e.derivative_direct(u, &budget).unwrap();
            if n == 1 {
                worst[0] = worst[0].max(direct.norm() / u.l2_norm_sq().powi(3));
            } else {
                let chain = e.derivative_chain_rule(u, &budget).unwrap();
                worst[n - 1] = worst[n - 1].max(rel(chain, direct));
            }
        }
    }
    Outcome {
        pass: worst[0] < 1e-12 && worst[1] < 1e-8 && worst[2] < 1e-8,
        detail: format!(
            "n=1 scaled |dE/dt| {:.2e} (tol 1e-12); n=2 {:.2e}, n=3 {:.2e} (tol 1e-8)",
            worst[0], worst[1], worst[2]
        ),
    }
}

// 5
fn norm_equivalence() -> Outcome {
    let mut r = rng(15);
    let (mut lo, mut hi, mut agree) = (f64::INFINITY, 0.0f64, 0.0f64);
    let mut sandwich = true;
    for i in 0..100 {
        let n_pts = [16, 32, 64][i % 3];
        let u = if i % 2 == 0 {
            random_state(n_pts, 1.0, &mut r).unwrap()
        } else {
            random_bandlimited(n_pts, 0.5, 1.0, &mut r).unwrap()
        };
        let spec = naive_dft(&u);
        for n in 1..=5 {
            let e = n as i32;
            let cont = (spec.iter().map(|(w, c)| w.abs().powi(2 * e) * c.norm_sqr()).sum::<f64>() / n_pts as f64).sqrt();
            let symb = (spec
                .iter()
                .map(|(w, c)| (2.0 * (0.5 * w).sin()).powi(2 * e) * c.norm_sqr())
                .sum::<f64>()
                / n_pts as f64)
                .sqrt();
            let lat = u.sobolev_norm(n).unwrap();
            agree = agree.max((lat - symb).abs() / symb);
            let q = lat / cont;
            lo = lo.min(q / (2.0 / PI).powi(e));
            hi = hi.max(q);
            sandwich &= q >= (2.0 / PI).powi(e) * (1.0 - 1e-12) && q <= 1.0 + 1e-12;
        }
    }
    Outcome {
        pass: sandwich && agree < 1e-12,
        detail: format!(
            "min ratio/(2/π)ⁿ {lo:.4}, max ratio {hi:.4}; lattice vs symbol {agree:.2e} (tol 1e-12)"
        ),
    }
}

// 6
fn weight_asymptotics() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 1..=5 {
        let f = build_fn(n).unwrap();
        let x: f64 = 1e-2;
        // C(2n, n)/4ⁿ from factorials
        let binom = (1..=n).fold(1.0, |c, i| c * (n + i) as f64 / i as f64) / 4f64.powi(n as i32);
        worst = worst.max((f.eval(x) / x.powi(2 * n as i32) / binom - 1.0).abs());
    }
    let b1 = build_fn(1).unwrap();
    let b2 = build_fn(2).unwrap();
    let beta_err = [
        (b1.beta()[0] + 1.0).abs(),
        (b2.beta()[0] + 9.0 / 8.0).abs(),
        (b2.beta()[1] - 1.0 / 8.0).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    let beta_ok = b1.beta().len() == 1 && b2.beta().len() == 2 && beta_err < 1e-13;
    Outcome {
        pass: worst < 0.01 && beta_ok,
        detail: format!("max asymptotic deviation {worst:.2e} (tol 1e-2); β error {beta_err:.1e} (tol 1e-13)"),
    }
}

fn draw_point(r: &mut ChaCha8Rng, kind: usize) -> ResonancePoint {
    let mut u = |a: f64, b: f64| r.random_range(a..b);
    match kind {
        // generic
        0..=3 => ResonancePoint::close(vec![u(-PI, PI), u(-PI, PI)], vec![u(-PI, PI)]).unwrap(),
        // near-resonant: w₋₁ close to w₁ or w₂
        4 | 5 => {
            let (a, b) = (u(-PI, PI), u(-PI, PI));
            let eps = 10f64.powf(-u(1.0, 13.0)) * if u(0.0, 1.0) < 0.5 { -1.0 } else { 1.0 };
            let target = if kind == 4 { a } else { b };
            ResonancePoint::close(vec![a, b], vec![target + eps]).unwrap()
        }
        // exactly resonant
        6 => {
            let (a, b) = (u(-PI, PI), u(-PI, PI));
            ResonancePoint::close(vec![a, b], vec![if u(0.0, 1.0) < 0.5 { a } else { b }]).unwrap()
        }
        // aliased: w₁ + w₂ − w₋₁ leaves [−π, π)
        7 | 8 => {
            let s = if kind == 7 { 1.0 } else { -1.0 };
            let a = s * u(0.6 * PI, PI);
            let b = s * u(0.6 * PI, PI);
            ResonancePoint::close(vec![a, b], vec![-s * u(0.0, 0.5 * PI)]).unwrap()
        }
        // small frequencies
        _ => {
            let sc = 10f64.powf(-u(0.0, 6.0));
            ResonancePoint::close(vec![sc * u(-1.0, 1.0), sc * u(-1.0, 1.0)], vec![sc * u(-1.0, 1.0)]).unwrap()
        }
    }
}

const RATIO_FLOOR: f64 = 1e-10;
const RATIO_CEILING: f64 = 1e3;

// 7
fn multiplier_bounds() -> Outcome {
    let mut r = rng(16);
    let series: Vec<_> = (1..=5).map(|n| build_fn(n).unwrap()).collect();
    let bounds: Vec<f64> = series.iter().map(mu_sup_bound).collect();
    let mut sup_ratio = [0.0f64; 5];
    let mut violations = 0usize;
    let mut non_finite = 0usize;
    let mut cross: f64 = 0.0;
    let mut aliased = 0usize;
    let mut unresolved = 0usize;
    let total = 1_000_000;
    for i in 0..total {
        let w = draw_point(&mut r, i % 10);
        if w.alias_index() != 0 {
            aliased += 1;
        }
        let n = i % 5;
        let nu = if i % 2 == 0 { 1.0 } else { -1.0 };
        let mu = mu_eval(&series[n], &w, nu).unwrap();
        if !mu.is_finite() {
            non_finite += 1;
            continue;
        }
        if mu.abs() > bounds[n] * (1.0 + 1e-12) {
            violations += 1;
        }
        // μ is evaluated to an absolute accuracy of about ε·bound, so the
        // ratio is only resolved where the denominator is well above that
        let denom = w.power_sum(2 * n as i32);
        if denom > RATIO_FLOOR {
            sup_ratio[n] = sup_ratio[n].max(mu.abs() / denom);
        } else if n > 0 {
            unresolved += 1;
        }
        let dcos = d_m(f64::cos, &w);
        if dcos.abs() > 1e-3 {
            let dfn = d_m(|x| product_form(n + 1, x), &w);
            let lhs = mu * 4.0 / nu * dcos;
            cross = cross.max((lhs - dfn).abs() / dfn.abs().max(1.0));
        }
    }
    let finite_sup = sup_ratio.iter().all(|x| *x <= RATIO_CEILING);
    Outcome {
        pass: violations == 0 && non_finite == 0 && finite_sup && cross < 1e-12,
        detail: format!(
            "{total} points ({aliased} aliased), {violations} bound violations, {non_finite} non-finite; \
             sup |μ|/Σ|w|^(2n−2) for n=1..5 = {:?} (≤ {RATIO_CEILING:e}, {unresolved} points below the \
             resolvable floor {RATIO_FLOOR:e}); ratio cross-check {cross:.2e} (tol 1e-12)",
            sup_ratio.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>()
        ),
    }
}

fn max_drift(series: &[f64]) -> f64 {
    series.iter().map(|x| (x - series[0]).abs()).fold(0.0, f64::max)
}

// 8
fn conservation() -> Outcome {
    let mut r = rng(17);
    let u0 = random_bandlimited(128, 0.25, 0.5, &mut r).unwrap();
    let cfg = IntegrationConfig::new(1.0, 1e-3, 10.0).record_every(100).observables(vec![Observable::L2]);
    let tr = integrate(&u0, &cfg).unwrap();
    let l2 = tr.series(&Observable::L2).unwrap();
    let l2_drift = max_drift(l2) / l2[0];

    let ham = |tau: f64| {
        let steps = (1.0 / tau).round() as usize;
        let cfg = IntegrationConfig::new(1.0, tau, 1.0)
            .record_every(steps / 10)
            .observables(vec![Observable::Hamiltonian]);
        max_drift(integrate(&u0, &cfg).unwrap().series(&Observable::Hamiltonian).unwrap())
    };
    let (d1, d2) = (ham(0.02), ham(0.01));
    let order_ratio = d1 / d2;

    let (n, j, a, nu, t) = (64, 5i64, 0.8, 1.0, 10.0);
    let pw = LatticeState::plane_wave(n, j, Complex64::new(a, 0.0)).unwrap();
    let tr = integrate(&pw, &IntegrationConfig::new(nu, 1e-3, t).record_every(usize::MAX).observables(vec![])).unwrap();
    let w = mode_frequency(n, j);
    let phase = -(2.0 * w.cos() - 2.0 + nu * a * a) * t;
    let pw_err = tr
        .final_state()
        .values()
        .iter()
        .enumerate()
        .map(|(g, z)| (z - Complex64::from_polar(a, phase - w * g as f64)).norm())
        .fold(0.0, f64::max);

    Outcome {
        pass: l2_drift < 1e-12 && (order_ratio - 4.0).abs() <= 0.5 && pw_err < 1e-9,
        detail: format!(
            "L² drift {l2_drift:.2e} over 10⁴ steps (tol 1e-12); H drift ratio τ=0.02/0.01 {order_ratio:.3} (4±0.5); \
             plane wave error {pw_err:.2e} at t=10 (tol 1e-9)"
        ),
    }
}

// 9
fn growth_harness() -> Outcome {
    let mut r = rng(18);
    let u0 = random_bandlimited(128, 0.25, 0.5, &mut r).unwrap();
    let mut cfg = GrowthConfig::new(1.0, 3, 50.0, 5e-3);
    cfg.record_every = 20;
    let rep = run_growth_experiment(&u0, &cfg).unwrap();
    let bound = base_case_bound(&u0, EMBEDDING_CONSTANT);
    let base_ok = rep.reports[0].lhs.iter().all(|h| *h <= bound);
    let mut ok = base_ok;
    let mut parts = vec![format!("max Ḣ¹ {:.4} ≤ base bound {:.4}", rep.base_case.max_h1, bound)];
    for r in &rep.reports[1..] {
        let cap = (r.n as f64 - 1.0) / 2.0 + 0.25;
        let exp = r.exponent_fit.unwrap_or(f64::NAN);
        let good = r.fitted_c.is_finite() && r.max_ratio.is_finite() && !r.exceeds_ceiling && exp <= cap;
        ok &= good;
        parts.push(format!(
            "n={}: C_fit {:.3e}, C_max {:.3e}, exponent {exp:.3} (≤ {cap})",
            r.n, r.fitted_c, r.max_ratio
        ));
    }
    Outcome {
        pass: ok,
        detail: parts.join("; "),
    }
}

// 10
fn gagliardo_nirenberg_and_holder() -> Outcome {
    let mut r = rng(19);
    let mut gn_max: f64 = 0.0;
    let mut holder_ok = true;
    for i in 0..1000 {
        let n_pts = [8, 16, 32, 64][i % 4];
        let amp = 10f64.powf(r.random_range(-2.0..2.0));
        let u = random_state(n_pts, amp, &mut r).unwrap();
        gn_max = gn_max.max(check_gagliardo_nirenberg(&u).ratio);
        let v = if i % 2 == 0 { u } else { random_bandlimited(n_pts, 0.5, amp, &mut r).unwrap() };
        for n in 2..=5 {
            holder_ok &= check_holder_interpolation(&v, n).unwrap();
        }
    }
    let mut eq_err: f64 = 0.0;
    for j in [1i64, 3, 7, -5, -16] {
        let re: f64 = StandardNormal.sample(&mut r);
        let u = LatticeState::plane_wave(32, j, Complex64::new(re, 0.4)).unwrap();
        for n in 2..=5 {
            let (l, rr) = holder_sides(&u, n).unwrap();
            eq_err = eq_err.max((l - rr).abs() / rr);
        }
    }
    Outcome {
        pass: gn_max <= 1.0 && holder_ok && eq_err < 1e-12,
        detail: format!(
            "max GN ratio {gn_max:.4} (≤ 1); Hölder holds on all states: {holder_ok}; single-mode equality error {eq_err:.1e}"
        ),
    }
}

// 11
fn scaling_invariance() -> Outcome {
    let mut r = rng(20);
    let states = [
        random_bandlimited(32, 0.5, 0.5, &mut r).unwrap(),
        LatticeState::plane_wave(32, 3, Complex64::new(0.7, 0.1)).unwrap(),
    ];
    let mut worst: f64 = 0.0;
    for u in &states {
        for lambda in [2, 4] {
            for n in 1..=3 {
                let rep = check_scaling_invariance(u, lambda, n, 1.0, 1.0, 1e-2).unwrap();
                worst = worst.max(rep.max_deviation());
            }
        }
    }
    Outcome {
        pass: worst < 1e-12,
        detail: format!("max per-term deviation {worst:.2e} over λ ∈ {{2, 4}}, n ≤ 3 (tol 1e-12)"),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("hamiltonian compact form", hamiltonian_compact_form),
        ("E_1 equals 2πH", energy_one_is_hamiltonian),
        ("Λ_m derivative identity, m ∈ {1, 2}", lambda_derivative_identity_check),
        ("modified-energy derivative identity", energy_derivative_identity),
        ("norm equivalence", norm_equivalence),
        ("weight asymptotics and coefficients", weight_asymptotics),
        ("multiplier boundedness", multiplier_bounds),
        ("conservation under integration", conservation),
        ("growth harness", growth_harness),
        ("Gagliardo–Nirenberg and Hölder", gagliardo_nirenberg_and_holder),
        ("scaling invariance", scaling_invariance),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let secs = start.elapsed().as_secs_f64();
        if !o.pass {
            failed += 1;
        }
        println!(
            "[{}] {:>2} {name}: {} ({secs:.1} s)",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
