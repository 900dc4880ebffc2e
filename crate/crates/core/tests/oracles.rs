//! Independent routes to the quantities the library computes symbolically.

mod common;

use common::*;
use mpflow::algebra::rational::{self, frac, int, Rational};
use mpflow::algebra::RhoPoly;
use mpflow::flow::{compute_r_terms, numeric_terms, Candidate, ConcreteTerms, VelocitySpec};
use mpflow::hk::{HKPoly, LambdaPoly};
use num_traits::{One, Signed, Zero};
use rand::Rng;

fn rho(c: &[i64]) -> RhoPoly {
    RhoPoly::from_ints(c)
}

/// `(ρ − 1)^2`
fn sq_minus_one() -> RhoPoly {
    rho(&[1, -2, 1])
}

#[test]
fn control_terms_factor_as_expected() {
    let c2 = Candidate::new(hk(2, &[1, -4]), hk(0, &[1]), int(2)).unwrap();
    // −2(ρ + 1)(ρ − 1)²
    let expect = &rho(&[-2, -2]) * &sq_minus_one();
    assert_eq!(ConcreteTerms::of(&c2).c, expect);

    let c1 = Candidate::new(hk(2, &[1, -4]), hk(0, &[1]), int(1)).unwrap();
    let t = ConcreteTerms::of(&c1);
    assert!(t.c.is_zero());
    assert_eq!(t.g1, &rho(&[0, -32]) * &sq_minus_one());
    assert_eq!(t.g2, &rho(&[0, 0, -32]) * &sq_minus_one());

    // −ρ(ρ² + 1)(ρ − 1)²
    let c3 = Candidate::new(hk(3, &[1, -4]), HKPoly::k(), int(1)).unwrap();
    let expect = &(&rho(&[0, -1]) * &rho(&[1, 0, 1])) * &sq_minus_one();
    assert_eq!(ConcreteTerms::of(&c3).c, expect);
}

/// `w`'s `H, K` derivatives recovered from λ-partials of the expanded
/// numerator and denominator, without touching the `H, K` derivative code.
struct LambdaRoute {
    w_h: Rational,
    w_k: Rational,
    w_hh: Rational,
    w_hk: Rational,
    w_kk: Rational,
}

fn lambda_route(p: &HKPoly, q: &HKPoly, l1: &Rational, l2: &Rational) -> LambdaRoute {
    let (pl, ql) = (p.expand_lambda(), q.expand_lambda());
    let ev = |f: &LambdaPoly| f.eval(l1, l2);
    let (pv, qv) = (ev(&pl), ev(&ql));
    let d1 = |f: &LambdaPoly| f.partial_1();
    let d2 = |f: &LambdaPoly| f.partial_2();
    // quotient rule in λ coordinates
    let first = |dp: &LambdaPoly, dq: &LambdaPoly| (ev(dp) * &qv - &pv * ev(dq)) / (&qv * &qv);
    let second = |dxy_p: &LambdaPoly, dx_p: &LambdaPoly, dy_p: &LambdaPoly, dxy_q: &LambdaPoly, dx_q: &LambdaPoly, dy_q: &LambdaPoly| {
        let q2 = &qv * &qv;
        ev(dxy_p) / &qv - (ev(dx_p) * ev(dy_q) + ev(dy_p) * ev(dx_q)) / &q2 - &pv * ev(dxy_q) / &q2
            + rational::int(2) * &pv * ev(dx_q) * ev(dy_q) / (&q2 * &qv)
    };
    let w1 = first(&d1(&pl), &d1(&ql));
    let w2 = first(&d2(&pl), &d2(&ql));
    let w11 = second(&d1(&d1(&pl)), &d1(&pl), &d1(&pl), &d1(&d1(&ql)), &d1(&ql), &d1(&ql));
    let w22 = second(&d2(&d2(&pl)), &d2(&pl), &d2(&pl), &d2(&d2(&ql)), &d2(&ql), &d2(&ql));
    let w12 = second(&d1(&d2(&pl)), &d1(&pl), &d2(&pl), &d1(&d2(&ql)), &d1(&ql), &d2(&ql));

    // w_1 = w_H + λ2 w_K, w_2 = w_H + λ1 w_K
    let w_k = (&w1 - &w2) / (l2 - l1);
    let w_h = &w1 - l2 * &w_k;
    // w_11 = w_HH + 2λ2 w_HK + λ2² w_KK
    // w_22 = w_HH + 2λ1 w_HK + λ1² w_KK
    // w_12 = w_HH + (λ1 + λ2) w_HK + λ1λ2 w_KK + w_K
    let a = w11;
    let b = w22;
    let c = &w12 - &w_k;
    // a − c = (λ2 − λ1) w_HK + λ2(λ2 − λ1) w_KK
    // b − c = (λ1 − λ2) w_HK + λ1(λ1 − λ2) w_KK
    let u = (&a - &c) / (l2 - l1);
    let v = (&b - &c) / (l1 - l2);
    // u = w_HK + λ2 w_KK, v = w_HK + λ1 w_KK
    let w_kk = (&u - &v) / (l2 - l1);
    let w_hk = &u - l2 * &w_kk;
    let w_hh = a - rational::int(2) * l2 * &w_hk - l2 * l2 * &w_kk;
    LambdaRoute { w_h, w_k, w_hh, w_hk, w_kk }
}

/// Constant and gradient terms for `F = K^n`, integer `n`, in exact arithmetic.
fn exact_kpow_terms(n: i64, w: &LambdaRoute, l1: &Rational, l2: &Rational) -> (Rational, Rational) {
    let s = int(n);
    let k = l1 * l2;
    let kp = |e: i64| if e >= 0 { rational::pow(&k, e as u32) } else { Rational::one() / rational::pow(&k, (-e) as u32) };
    let f = kp(n);
    let f1 = &s * &f / l1;
    let f2 = &s * &f / l2;
    let f11 = &s * (&s - int(1)) * &f / (l1 * l1);
    let f12 = &s * &s * &f / &k;
    let f22 = &s * (&s - int(1)) * &f / (l2 * l2);

    let c_h = &f * (l1 * l1 + l2 * l2) + (&f1 - &f2) * (l1 - l2) * &k;
    let c_k = (&f * (l1 + l2) + (&f1 * l1 - &f2 * l2) * (l1 - l2)) * &k;
    let c_w = c_h * &w.w_h + c_k * &w.w_k;

    let a1 = -(&w.w_h + l2 * &w.w_k) / (&w.w_h + l1 * &w.w_k);
    let two = int(2);
    let dd = (&f1 - &f2) / (l1 - l2);
    let hess = &f11 + &two * &f12 * &a1 + &f22 * &a1 * &a1;
    let g_h = &hess + &two * &dd * &a1 * &a1;
    let g_k = &two * (-(&f1 * &a1) + &f2 * &a1 * &a1) + &hess * l2 + &two * &dd * &a1 * &a1 * l1;
    let u = Rational::one() + &a1;
    let v = l2 + l1 * &a1;
    let mixed = -(&f1 * (&u * &u * &w.w_hh + &two * &u * &v * &w.w_hk + &v * &v * &w.w_kk));
    (c_w, g_h * &w.w_h + g_k * &w.w_k + mixed)
}

/// Homogeneous value `λ2^d · P(λ1/λ2)`.
fn homogeneous(p: &RhoPoly, d: usize, l1: &Rational, l2: &Rational) -> Rational {
    rational::pow(l2, d as u32) * p.eval(&(l1 / l2))
}

#[test]
fn symbolic_terms_match_general_formula_exactly() {
    let mut rng = rng(11);
    let mut checked = 0;
    while checked < 150 {
        let n = rng.gen_range(1..=3);
        let cand = random_candidate(&mut rng, 5, 4, int(n));
        let l1 = random_positive_rational(&mut rng, 9, 4);
        let l2 = random_positive_rational(&mut rng, 9, 4);
        if l1 == l2 || cand.q.eval(&l1, &l2).is_zero() {
            continue;
        }
        let w = lambda_route(&cand.p, &cand.q, &l1, &l2);
        let crit = &w.w_h + &l1 * &w.w_k;
        if crit.is_zero() {
            continue;
        }
        let (c_w, g_w) = exact_kpow_terms(n, &w, &l1, &l2);
        let terms = ConcreteTerms::of(&cand);
        let deg = cand.g() + cand.h();
        let qv = cand.q.eval(&l1, &l2);
        let kpow = rational::pow(&(&l1 * &l2), n as u32);

        // q² C_w = K^σ C_r(λ1, λ2)
        assert_eq!(&qv * &qv * &c_w, &kpow * homogeneous(&terms.c, deg + 1, &l1, &l2), "{cand:?}");

        // q² (r_H + λ1 r_K)² G_w = σ K^(σ−2) G_r(λ1, λ2),
        // with r_H + λ1 r_K = q² (w_H + λ1 w_K)
        let r = &qv * &qv * &crit;
        let k = &l1 * &l2;
        let lhs = &qv * &qv * &r * &r * &g_w;
        let rhs = int(n) * &kpow / (&k * &k) * homogeneous(&terms.g1, 3 * deg - 1, &l1, &l2);
        assert_eq!(lhs, rhs, "{cand:?} at ({l1}, {l2})");

        // and the swapped coefficient is G2's
        let ws = lambda_route(&cand.p, &cand.q, &l2, &l1);
        let crit_s = &ws.w_h + &l2 * &ws.w_k;
        if !crit_s.is_zero() {
            let (_, g_ws) = exact_kpow_terms(n, &ws, &l2, &l1);
            let r = &qv * &qv * &crit_s;
            let lhs = &qv * &qv * &r * &r * &g_ws;
            let rhs = int(n) * &kpow / (&k * &k) * homogeneous(&terms.g2, 3 * deg - 1, &l1, &l2);
            assert_eq!(lhs, rhs, "swapped {cand:?} at ({l1}, {l2})");
        }
        checked += 1;
    }
}

#[test]
fn numeric_evaluator_matches_exact_route() {
    let mut rng = rng(12);
    let mut checked = 0;
    while checked < 100 {
        let n = rng.gen_range(1..=3);
        let cand = random_candidate(&mut rng, 5, 4, int(n));
        let l1 = random_positive_rational(&mut rng, 9, 4);
        let l2 = random_positive_rational(&mut rng, 9, 4);
        let Ok(t) = numeric_terms(&VelocitySpec::KPow(int(n)), &cand, &l1, &l2) else {
            continue;
        };
        let w = lambda_route(&cand.p, &cand.q, &l1, &l2);
        let (c_w, g_w) = exact_kpow_terms(n, &w, &l1, &l2);
        let close = |x: f64, y: &Rational| {
            let y = rational::to_f64(y);
            (x - y).abs() <= 1e-9 * y.abs().max(1e-300)
        };
        assert!(close(t.c_w, &c_w) && close(t.g_w, &g_w), "{cand:?}: {t:?}");
        checked += 1;
    }
}

#[test]
fn r_terms_match_lambda_quotient_rule() {
    // (H³ − 4HK, K): r-terms recomputed through λ-expansion of the products
    let p = hk(3, &[1, -4]);
    let q = HKPoly::k();
    let r = compute_r_terms(&p, &q);
    let expect = [
        (r.r_h.clone(), hk(4, &[0, 3, -4])),
        (r.r_k.clone(), hk(3, &[-1, 0])),
        (r.r_hh.clone(), hk(3, &[0, 6])),
        (r.r_hk.clone(), hk(2, &[0, -4])),
    ];
    for (got, want) in expect {
        assert_eq!(got.expand_lambda(), want.expand_lambda());
    }
    assert!(r.r_kk.is_zero());
}

#[test]
fn velocity_second_partials_match_finite_differences() {
    let mut rng = rng(13);
    let specs = [
        VelocitySpec::KPow(frac(1, 2)),
        VelocitySpec::KPow(int(2)),
        VelocitySpec::HPow(int(2)),
        VelocitySpec::HPow(frac(5, 2)),
        VelocitySpec::A2,
        VelocitySpec::TrAPow(frac(3, 2)),
        VelocitySpec::TrAPow(int(5)),
    ];
    for spec in &specs {
        for _ in 0..100 {
            let a: f64 = rng.gen_range(0.2..4.0);
            let b: f64 = rng.gen_range(0.2..4.0);
            let h = 1e-5;
            let j = spec.jet_f64(a, b);
            let ja = |x: f64, y: f64| spec.jet_f64(x, y);
            let f11 = (ja(a + h, b)[1] - ja(a - h, b)[1]) / (2.0 * h);
            let f12 = (ja(a, b + h)[1] - ja(a, b - h)[1]) / (2.0 * h);
            let f21 = (ja(a + h, b)[2] - ja(a - h, b)[2]) / (2.0 * h);
            let f22 = (ja(a, b + h)[2] - ja(a, b - h)[2]) / (2.0 * h);
            for (fd, exact) in [(f11, j[3]), (f12, j[4]), (f21, j[4]), (f22, j[5])] {
                let rel = (fd - exact).abs() / exact.abs().max(1.0);
                assert!(rel <= 1e-6, "{spec:?} at ({a}, {b}): {fd} vs {exact}");
            }
            // symmetry
            let s = spec.jet_f64(b, a);
            assert!((s[0] - j[0]).abs() <= 1e-12 * j[0].abs().max(1.0));
        }
    }
}

// --- root counting by grid scanning --------------------------------------

type Dense = Vec<Rational>;

fn trim(mut p: Dense) -> Dense {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn rem(a: &Dense, b: &Dense) -> Dense {
    let mut r = a.clone();
    while r.len() >= b.len() && !r.is_empty() {
        let f = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        r = trim(r);
    }
    r
}

fn quot(a: &Dense, b: &Dense) -> Dense {
    let mut r = a.clone();
    let mut q = vec![Rational::zero(); a.len() + 1 - b.len()];
    while r.len() >= b.len() && !r.is_empty() {
        let f = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        q[shift] = f;
        r = trim(r);
    }
    q
}

fn squarefree(p: &Dense) -> Dense {
    let d: Dense = trim(p.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect());
    if d.is_empty() {
        return p.clone();
    }
    let (mut a, mut b) = (p.clone(), d);
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    quot(p, &a)
}

/// Sign changes of `p` over the dyadic grid `{i/2^k : |i| ≤ B·2^k}`,
/// counting exact zeros as roots.
fn scan(p: &RhoPoly, bound: i64, k: u32) -> usize {
    let step = Rational::new(1.into(), (1i64 << k).into());
    let n = bound << k;
    let (mut count, mut last) = (0, 0i8);
    for i in -n..=n {
        let s = rational::signum(&p.eval(&(int(i) * &step)));
        if s == 0 {
            count += 1;
            last = 0;
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

#[test]
fn sturm_agrees_with_refined_grid_scan() {
    use mpflow::algebra::{sturm_count_roots, Endpoint};
    let mut rng = rng(14);
    let mut unresolved = 0;
    for _ in 0..1000 {
        let deg = rng.gen_range(1..=8);
        let coeffs: Dense = (0..=deg)
            .map(|i| if i == deg { frac(rng.gen_range(1..=4), rng.gen_range(1..=3)) } else { frac(rng.gen_range(-9..=9), rng.gen_range(1..=3)) })
            .collect();
        let p = RhoPoly::from_coeffs(coeffs.clone());
        let sf = RhoPoly::from_coeffs(squarefree(&coeffs));
        let lead = sf.leading_coefficient().unwrap().clone();
        // Cauchy bound for the squarefree part
        let bound = sf.coeffs().iter().map(|c| (c / &lead).abs()).max().unwrap() + int(1);
        let bound = bound.ceil().to_integer().try_into().unwrap();
        let sturm = sturm_count_roots(&p, &Endpoint::NegInf, &Endpoint::PosInf).unwrap();
        let mut k = 3;
        let mut seen = scan(&sf, bound, k);
        while seen < sturm && k < 9 {
            k += 1;
            seen = scan(&sf, bound, k);
        }
        // refinement can only reveal roots, never invent them
        assert!(seen <= sturm, "{p}: scan {seen} > sturm {sturm}");
        unresolved += usize::from(seen != sturm);
    }
    assert_eq!(unresolved, 0);
}
