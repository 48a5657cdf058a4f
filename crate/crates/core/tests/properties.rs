use std::f64::consts::PI;

use biortho_core::cnum::{cpow, ln_gamma, pochhammer};
use biortho_core::expansion::{ray_expression, ray_majorant, rp_direct};
use biortho_core::hyp::{eval_p, eval_q, f11, gen_bernoulli, Params};
use biortho_core::quad::{contour_integral_p, euler_integral_p, euler_prefactor, on_ray, rp_integral, split_integrals};
use biortho_core::{c64, Complex, QuadratureRule};
use proptest::prelude::*;

fn complex(lo: f64, hi: f64) -> impl Strategy<Value = Complex> {
    (lo..hi, lo..hi).prop_map(|(re, im)| c64(re, im))
}

/// Parameters in Ω₀, drawn through α+β and α−β.
fn omega0() -> impl Strategy<Value = Params> {
    (-0.9..2.0f64, -0.5..0.5f64, 0.1..2.5f64, -0.5..0.5f64).prop_map(|(sr, si, dr, di)| {
        let (s, d) = (c64(sr, si), c64(dr, di));
        Params::new((s + d) / 2.0, (s - d) / 2.0)
    })
}

/// Points with 0.3 ≤ |z| ≤ 3 and |z − 1| ≥ 0.2, off the segment (0, 1).
fn annulus() -> impl Strategy<Value = Complex> {
    (0.3..3.0f64, -PI..PI)
        .prop_map(|(r, t)| Complex::from_polar(r, t))
        .prop_filter("near 1", |z| (z - 1.0).norm() >= 0.2)
        .prop_filter("on (0, 1)", |z| z.im != 0.0 || z.re < 0.0 || z.re > 1.0)
}

fn rel(a: Complex, b: Complex) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

proptest! {
    #[test]
    fn pochhammer_splits(a in complex(-5.0, 5.0), j in 0usize..=20, k in 0usize..=20) {
        let lhs = pochhammer(a, j + k);
        let rhs = pochhammer(a, j) * pochhammer(a + j as f64, k);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1e-300));
    }

    #[test]
    fn ln_gamma_recurrence(re in 0.1..10.0f64, im in -10.0..10.0f64) {
        let z = c64(re, im);
        let lhs = ln_gamma(z + 1.0).unwrap().exp();
        let rhs = z * ln_gamma(z).unwrap().exp();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
    }

    #[test]
    fn powers_add_exponents(z in annulus(), a in complex(-3.0, 3.0), b in complex(-3.0, 3.0)) {
        let lhs = cpow(z, a).unwrap() * cpow(z, b).unwrap();
        let rhs = cpow(z, a + b).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
    }

    #[test]
    fn polynomial_differences_vanish(n in 0usize..=10, x0 in -2.0..2.0f64, params in omega0()) {
        let h = 0.25;
        let mut diff = c64(0.0, 0.0);
        let mut scale = 0.0;
        let mut binom = 1.0;
        for j in 0..=n + 1 {
            let v = eval_p(n, c64(x0 + j as f64 * h, 0.0), params).unwrap();
            let sign = if (n + 1 - j) % 2 == 0 { 1.0 } else { -1.0 };
            diff += v * (sign * binom);
            scale += binom * v.norm();
            binom = binom * (n + 1 - j) as f64 / (j + 1) as f64;
        }
        prop_assert!(diff.norm() <= 1e-9 * scale);
    }

    #[test]
    fn bernoulli_translation(m in 0usize..=12, sigma in complex(-2.0, 2.0), x in complex(-2.0, 2.0)) {
        let direct = gen_bernoulli(m, sigma, x).unwrap();
        let zero = c64(0.0, 0.0);
        let mut sum = zero;
        let mut scale = 0.0;
        let mut binom = 1.0;
        for k in 0..=m {
            let term = gen_bernoulli(k, sigma, zero).unwrap() * x.powi((m - k) as i32) * binom;
            sum += term;
            scale += term.norm();
            binom = binom * (m - k) as f64 / (k + 1) as f64;
        }
        prop_assert!((direct - sum).norm() <= 1e-11 * scale.max(1.0));
    }

    #[test]
    fn confluent_derivative(a in complex(-2.0, 2.0), cre in 0.5..3.0f64, cim in -1.0..1.0f64) {
        let c = c64(cre, cim);
        let h = 1e-5;
        for x in [c64(0.5, 0.0), c64(-0.5, 0.0), c64(0.0, 1.0), c64(0.0, -1.0)] {
            let fd = (f11(a, c, x + h, 1e-15).unwrap() - f11(a, c, x - h, 1e-15).unwrap()) / (2.0 * h);
            let want = a / c * f11(a + 1.0, c + 1.0, x, 1e-15).unwrap();
            prop_assert!((fd - want).norm() < 1e-7 * want.norm().max(1.0));
        }
    }

    #[test]
    fn conjugate_symmetry_on_circle(n in 0usize..=15, alpha in -0.45..3.0f64, b in -2.0..2.0f64, t in -PI..PI) {
        let params = Params::new(c64(alpha, 0.0), c64(0.0, b));
        let z = Complex::from_polar(1.0, t);
        let lhs = eval_q(n, z.conj(), params).unwrap();
        let rhs = eval_p(n, z, params).unwrap().conj();
        prop_assert!(rel(lhs, rhs) < 1e-12);
    }

    #[test]
    fn ray_expression_below_majorant(
        gre in -0.999..-0.001f64,
        gim in -2.0..2.0f64,
        k in 0usize..=20,
        x in prop::sample::select(vec![-1.1, -2.0, -5.0, -20.0]),
    ) {
        let g = c64(gre, gim);
        prop_assert!(ray_expression(c64(x, 0.0), g, k) < ray_majorant(g, k));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn representations_agree(n in 0usize..=12, z in annulus(), params in omega0()) {
        let rule = QuadratureRule::default();
        let p = eval_p(n, z, params).unwrap();
        let euler = euler_integral_p(n, z, params, &rule).unwrap();
        let (i1, i2) = split_integrals(n, z, params, &rule).unwrap();
        let split = euler_prefactor(params).unwrap() * (i1 + i2);
        let contour = contour_integral_p(n, z, params, &rule).unwrap();
        for (name, v) in [("euler", euler), ("split", split), ("contour", contour)] {
            prop_assert!(rel(v, p) < 1e-8, "{} {} vs {}", name, v, p);
        }
    }

    #[test]
    fn euler_integral_stable_under_refinement(n in 0usize..=12, z in annulus(), params in omega0()) {
        let rule = QuadratureRule::default();
        let a = euler_integral_p(n, z, params, &rule).unwrap();
        let b = euler_integral_p(n, z, params, &rule.refined()).unwrap();
        prop_assert!(rel(a, b) < 1e-10);
    }

    #[test]
    fn remainder_integral_matches_closed_form(
        u in complex(-2.0, 2.0),
        psi in complex(-2.0, 2.0),
        gre in -0.95..2.5f64,
        gim in -1.0..1.0f64,
        extra in 0usize..4,
    ) {
        let g = c64(gre, gim);
        prop_assume!(g.norm() > 0.05 && psi.norm() > 0.05 && !on_ray(u, psi) && (u * psi + 1.0).norm() > 0.05);
        let p = gre.floor().max(0.0) as usize + extra;
        let direct = rp_direct(u, psi, g, p).unwrap();
        let integral = rp_integral(u, psi, g, p, &QuadratureRule::default()).unwrap();
        prop_assert!((direct - integral).norm() < 1e-9 * direct.norm().max(1.0));
    }
}
