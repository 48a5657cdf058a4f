//! Complex special-function kernels: log-gamma, Pochhammer symbols,
//! generalized binomial coefficients, the Beta function and principal-branch
//! powers.
//!
//! Every multi-valued function uses the principal branch, arg z ∈ (−π, π].

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

/// Shorthand constructor.
#[inline]
pub const fn c64(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// Largest argument accepted by `exp` before the result leaves double range.
pub const EXP_LIMIT: f64 = 709.0;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

// Lanczos coefficients for g = 607/128 (15 terms).
const LANCZOS_G: f64 = 607.0 / 128.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];

/// True when `z` is finite in both components.
#[inline]
pub fn is_finite(z: Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Principal argument in (−π, π]. Signed zeros never produce −π.
#[inline]
pub fn arg(z: Complex) -> f64 {
    let a = z.im.atan2(z.re);
    if a == -PI {
        PI
    } else {
        a
    }
}

/// Principal logarithm ln|z| + i·arg z.
pub fn ln(z: Complex) -> Result<Complex> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::Domain("logarithm of zero".into()));
    }
    Ok(ln_unchecked(z))
}

/// Principal logarithm without the zero check (returns −∞ real part at 0).
#[inline]
pub fn ln_unchecked(z: Complex) -> Complex {
    c64(z.re.hypot(z.im).ln(), arg(z))
}

/// `exp(w)` with an overflow check on the real part.
pub fn checked_exp(w: Complex) -> Result<Complex> {
    if w.re > EXP_LIMIT {
        return Err(Error::Overflow(format!("exp of argument with real part {}", w.re)));
    }
    if !is_finite(w) {
        return Err(Error::Domain(format!("exp of non-finite argument {w}")));
    }
    Ok(w.exp())
}

/// exp(z) − 1 without cancellation for small |z|.
pub fn expm1(z: Complex) -> Complex {
    let (s, c) = z.im.sin_cos();
    let em1 = z.re.exp_m1();
    let half = (0.5 * z.im).sin();
    c64(em1 * c - 2.0 * half * half, (em1 + 1.0) * s)
}

/// Principal power z^a = exp(a·ln z).
///
/// Fails at z = 0. Use [`cpow_or_zero`] where the value 0 is wanted for Re(a) > 0.
pub fn cpow(z: Complex, a: Complex) -> Result<Complex> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::Domain("power of zero".into()));
    }
    checked_exp(a * ln_unchecked(z))
}

/// Principal power that returns 0 at z = 0 when Re(a) > 0.
pub fn cpow_or_zero(z: Complex, a: Complex) -> Result<Complex> {
    if z.re == 0.0 && z.im == 0.0 && a.re > 0.0 {
        return Ok(Complex::new(0.0, 0.0));
    }
    cpow(z, a)
}

/// Power with a caller-supplied logarithm, so that z^a·z^b = z^(a+b) holds
/// when the same `ln_z` is reused.
#[inline]
pub fn cpow_ln(ln_z: Complex, a: Complex) -> Complex {
    (a * ln_z).exp()
}

/// Power of a positive real base, exp(a·ln x).
#[inline]
pub fn rpow(x: f64, a: Complex) -> Complex {
    (a * x.ln()).exp()
}

fn is_pole(z: Complex) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Principal log-gamma. `exp(ln_gamma(z)) = Γ(z)`; the reflection formula is used
/// for Re z < 0.5.
pub fn ln_gamma(z: Complex) -> Result<Complex> {
    if !is_finite(z) {
        return Err(Error::Domain(format!("ln_gamma of non-finite {z}")));
    }
    if is_pole(z) {
        return Err(Error::Pole(format!("{}", z.re)));
    }
    if z.re < 0.5 {
        // ln Γ(z) = ln π − ln sin(πz) − ln Γ(1 − z)
        let s = (z * PI).sin();
        Ok(c64(PI.ln(), 0.0) - ln_unchecked(s) - lanczos(Complex::new(1.0, 0.0) - z))
    } else {
        Ok(lanczos(z))
    }
}

fn lanczos(z: Complex) -> Complex {
    let z = z - 1.0;
    let mut x = c64(LANCZOS[0], 0.0);
    for (i, &ci) in LANCZOS.iter().enumerate().skip(1) {
        x += ci / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (z + 0.5) * ln_unchecked(t) - t + LN_SQRT_2PI + ln_unchecked(x)
}

/// ln|Γ(x)| for real x.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    if x <= 0.0 && x == x.round() {
        return Err(Error::Pole(format!("{x}")));
    }
    // The real part is ln|Γ(x)| on both sides of the origin.
    Ok(ln_gamma(c64(x, 0.0))?.re)
}

/// Γ(z) with an overflow check.
pub fn gamma(z: Complex) -> Result<Complex> {
    checked_exp(ln_gamma(z)?)
}

/// Rising factorial (a)_k = a(a+1)…(a+k−1), as a product.
pub fn pochhammer(a: Complex, k: usize) -> Complex {
    let mut acc = c64(1.0, 0.0);
    for j in 0..k {
        acc *= a + j as f64;
    }
    acc
}

/// Generalized binomial coefficient ∏_{j=1}^{k} (a−j+1)/j.
pub fn gen_binom(a: Complex, k: usize) -> Complex {
    let mut acc = c64(1.0, 0.0);
    for j in 1..=k {
        acc *= (a - (j - 1) as f64) / j as f64;
    }
    acc
}

/// Beta function Γ(a)Γ(b)/Γ(a+b).
pub fn beta_fn(a: Complex, b: Complex) -> Result<Complex> {
    checked_exp(ln_gamma(a)? + ln_gamma(b)? - ln_gamma(a + b)?)
}

/// ln[Γ(n+1)/Γ(n+1+d)] for integer n ≥ 0, accurate for large n and moderate d.
pub fn ln_gamma_ratio(n: usize, d: Complex) -> Result<Complex> {
    if n <= 4096 {
        let mut acc = -ln_gamma(d + 1.0)?;
        for j in 1..=n {
            acc -= ln_unchecked(d / j as f64 + 1.0);
        }
        Ok(acc)
    } else {
        let nn = n as f64;
        Ok(ln_gamma(c64(nn + 1.0, 0.0))? - ln_gamma(d + nn + 1.0)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex, b: Complex, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn ln_gamma_small_integers_and_half() {
        assert!(ln_gamma(c64(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!((ln_gamma(c64(0.5, 0.0)).unwrap().re - 0.572_364_942_924_700_1).abs() < 1e-14);
        assert!((ln_gamma(c64(4.0, 0.0)).unwrap().re - 6f64.ln()).abs() < 1e-14);
    }

    #[test]
    #[allow(clippy::excessive_precision)]
    fn ln_gamma_reference_values() {
        // Reference values from a 30-digit evaluation.
        let cases = [
            (c64(0.3, 0.7), c64(-0.093_170_312_498_134_18, -1.223_957_365_713_688_7)),
            (c64(2.5, -1.5), c64(-0.227_112_240_793_227_32, -1.171_292_934_664_603)),
            (c64(-1.3, 0.2), c64(0.951_875_325_883_141_06, -5.778_323_056_042_991_7)),
            (c64(12.25, 3.0), c64(17.736_963_372_322_134, 7.424_384_354_496_224_2)),
        ];
        for (z, want) in cases {
            let got = ln_gamma(z).unwrap();
            assert!(close(got.exp(), want.exp(), 1e-13), "z={z} got={got} want={want}");
        }
    }

    #[test]
    fn ln_gamma_poles() {
        assert!(matches!(ln_gamma(c64(0.0, 0.0)), Err(Error::Pole(_))));
        assert!(matches!(ln_gamma(c64(-3.0, 0.0)), Err(Error::Pole(_))));
        assert!(ln_gamma(c64(-3.0, 1e-9)).is_ok());
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(c64(0.3, 2.0), 0), c64(1.0, 0.0));
        assert_eq!(pochhammer(c64(1.0, 0.0), 4), c64(24.0, 0.0));
        assert_eq!(pochhammer(c64(0.5, 0.0), 2), c64(0.75, 0.0));
        assert_eq!(pochhammer(c64(-2.0, 0.0), 4), c64(0.0, 0.0));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(gen_binom(c64(1.7, -0.2), 0), c64(1.0, 0.0));
        assert!(close(gen_binom(c64(3.0, 0.0), 2), c64(3.0, 0.0), 1e-15));
        assert!(close(gen_binom(c64(-0.5, 0.0), 1), c64(-0.5, 0.0), 1e-15));
        assert_eq!(gen_binom(c64(3.0, 0.0), 5), c64(0.0, 0.0));
    }

    #[test]
    fn beta_examples() {
        assert!(close(beta_fn(c64(1.0, 0.0), c64(1.0, 0.0)).unwrap(), c64(1.0, 0.0), 1e-14));
        assert!(close(beta_fn(c64(2.0, 0.0), c64(3.0, 0.0)).unwrap(), c64(1.0 / 12.0, 0.0), 1e-14));
        assert!(close(beta_fn(c64(0.5, 0.0), c64(0.5, 0.0)).unwrap(), c64(PI, 0.0), 1e-14));
    }

    #[test]
    fn cpow_examples() {
        let a = c64(0.3, -1.1);
        assert!(close(cpow(c64(1.0, 0.0), a).unwrap(), c64(1.0, 0.0), 1e-15));
        assert!(close(cpow(c64(-1.0, 0.0), c64(0.5, 0.0)).unwrap(), c64(0.0, 1.0), 1e-15));
        assert!(close(cpow(c64(-1.0, -0.0), c64(0.5, 0.0)).unwrap(), c64(0.0, 1.0), 1e-15));
        let l2 = 2f64.ln();
        assert!(close(cpow(c64(2.0, 0.0), c64(0.0, 1.0)).unwrap(), c64(l2.cos(), l2.sin()), 1e-15));
    }

    #[test]
    fn cpow_at_zero() {
        assert!(cpow(c64(0.0, 0.0), c64(0.5, 0.0)).is_err());
        assert_eq!(cpow_or_zero(c64(0.0, 0.0), c64(0.5, 0.0)).unwrap(), c64(0.0, 0.0));
        assert!(cpow_or_zero(c64(0.0, 0.0), c64(-0.5, 0.0)).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(gamma(c64(200.0, 0.0)), Err(Error::Overflow(_))));
        assert!(matches!(cpow(c64(1e10, 0.0), c64(40.0, 0.0)), Err(Error::Overflow(_))));
    }

    #[test]
    fn gamma_ratio_matches_direct() {
        let d = c64(0.75, -0.6);
        for n in [0usize, 1, 7, 40] {
            let direct = ln_gamma(c64(n as f64 + 1.0, 0.0)).unwrap() - ln_gamma(d + n as f64 + 1.0).unwrap();
            assert!(close(ln_gamma_ratio(n, d).unwrap().exp(), direct.exp(), 1e-12));
        }
    }

    #[test]
    fn expm1_small_arguments() {
        let z = c64(1e-12, -3e-13);
        let got = expm1(z);
        assert!(close(got, z + z * z / 2.0, 1e-15));
        let w = c64(0.4, 2.0);
        assert!(close(expm1(w), w.exp() - 1.0, 1e-15));
    }
}
