//! Large-degree compound expansion of Pₙ with computable remainder bounds.
//!
//! For z ≠ 1 and (α, β) ∈ Ω₀,
//!
//! Pₙ(z) = A₁(z)·(Σ_{k≤p₁} term1(k) + ξ₁) + A₂(z)·(Σ_{k≤p₂} term2(k) + ξ₂)
//!
//! with
//!
//! A₁ = Γ(2α+1)/Γ(α+β+1) · Γ(n+1)/Γ(n+α−β+1) · z^{n+α−β}(z−1)^{β−α},
//! A₂ = Γ(2α+1)/Γ(α−β) · Γ(n+1)/Γ(n+α+β+2) · (1−z)^{−α−β−1},
//! term1(k) = C(α+β, k)(z/(1−z))^k (α−β)_k/(n+1+α−β)_k,
//! term2(k) = C(α−β−1, k)(z−1)^{−k} (α+β+1)_k/(n+2+α+β)_k.
//!
//! The remainders ξ₁, ξ₂ are Beta-normalised integrals of the binomial tail
//! r_p and admit the explicit bounds of [`bound_xi`]. In
//! Ω₁ = {|z| < |z−1|, |z−1| > 1} both series converge ([`converge_p`]).

use std::f64::consts::PI;

use crate::cnum::{self, c64, gen_binom, ln_gamma, ln_gamma_ratio, ln_gamma_real, Complex};
use crate::error::{Error, Result};
use crate::hyp::{eval_p, Params};
use crate::quad::{integrate_01, on_ray, QuadratureRule};

/// Selects one of the two series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Series {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpansionRequest {
    pub n: usize,
    pub z: Complex,
    pub params: Params,
    pub p1: usize,
    pub p2: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionResult {
    pub value: Complex,
    pub terms1: Vec<Complex>,
    pub terms2: Vec<Complex>,
    pub prefactor1: Complex,
    pub prefactor2: Complex,
    pub bound_xi1: f64,
    pub bound_xi2: f64,
    pub total_error_bound: f64,
}

/// Roundoff allowance applied to the total bound.
pub const BOUND_SLACK: f64 = 1e-12;

/// Term cap for [`converge_p`].
pub const MAX_CONVERGE_TERMS: usize = 1000;

/// |z| < |z−1| and |z−1| > 1.
pub fn region_omega1(z: Complex) -> bool {
    let d = (z - 1.0).norm();
    z.norm() < d && d > 1.0
}

fn check_point(z: Complex, params: Params) -> Result<()> {
    params.require_omega0()?;
    if z == c64(1.0, 0.0) {
        return Err(Error::Domain("expansion point z = 1".into()));
    }
    if !cnum::is_finite(z) {
        return Err(Error::Domain(format!("non-finite z = {z}")));
    }
    Ok(())
}

/// r_p as a function of w = ψu, without argument checks.
fn rp_of_w(w: Complex, gamma: Complex, p: usize) -> Complex {
    if w.norm() <= 0.5 {
        // Σ_{k>p} C(γ,k) w^{k−p−1}
        let mut b = gen_binom(gamma, p + 1);
        let mut sum = b;
        let mut wk = c64(1.0, 0.0);
        let mut small = 0;
        for k in (p + 1)..(p + 400) {
            b *= (gamma - k as f64) / (k + 1) as f64;
            wk *= w;
            let term = b * wk;
            sum += term;
            if b == c64(0.0, 0.0) {
                break;
            }
            if term.norm() <= 1e-18 * sum.norm() {
                small += 1;
                if small == 2 {
                    break;
                }
            } else {
                small = 0;
            }
        }
        sum
    } else {
        let mut partial = c64(0.0, 0.0);
        let mut b = c64(1.0, 0.0);
        let mut wk = c64(1.0, 0.0);
        for k in 0..=p {
            partial += b * wk;
            b *= (gamma - k as f64) / (k + 1) as f64;
            wk *= w;
        }
        let full = cnum::cpow_ln(cnum::ln_unchecked(w + 1.0), gamma);
        (full - partial) / wk
    }
}

/// r_p(u; ψ, γ) = ((1+ψu)^γ − Σ_{k≤p} C(γ,k)(ψu)^k)/(ψu)^{p+1}, with the
/// limit C(γ, p+1) at u = 0 and the value 0 when ψ = 0 or γ = 0.
pub fn rp_direct(u: Complex, psi: Complex, gamma: Complex, p: usize) -> Result<Complex> {
    let zero = c64(0.0, 0.0);
    if psi == zero || gamma == zero {
        return Ok(zero);
    }
    if on_ray(u, psi) {
        return Err(Error::Ray(format!("uψ = {}", u * psi)));
    }
    Ok(rp_of_w(u * psi, gamma, p))
}

/// e^{|γ|²+Re γ}/k^{1+Re γ}, the majorant of |C(γ, k)| for γ ≠ 0, k ≥ 1.
pub fn binomial_majorant(gamma: Complex, k: usize) -> f64 {
    (gamma.norm_sqr() + gamma.re).exp() / (k as f64).powf(1.0 + gamma.re)
}

/// |e^{−iπ(k−γ)}((1+w)/w)^γ + (1+w)^γ/w^{k+1}| at w = ψu, principal branches.
pub fn ray_expression(w: Complex, gamma: Complex, k: usize) -> f64 {
    let one = c64(1.0, 0.0);
    let phase = (c64(0.0, -PI) * (c64(k as f64, 0.0) - gamma)).exp();
    let ratio = cnum::cpow_ln(cnum::ln_unchecked((one + w) / w), gamma);
    let full = cnum::cpow_ln(cnum::ln_unchecked(one + w), gamma);
    (phase * ratio + full / w.powi(k as i32 + 1)).norm()
}

/// e^{−π Im γ}|k+1−γ|, the bound for [`ray_expression`] on the ray.
pub fn ray_majorant(gamma: Complex, k: usize) -> f64 {
    (-PI * gamma.im).exp() * (c64(k as f64 + 1.0, 0.0) - gamma).norm()
}

/// m₁(z; γ) = e^{π|Im γ|} max(2^{Re γ}, (1+|z|)^{Re γ}).
pub fn m1(z: Complex, gamma: Complex) -> f64 {
    (PI * gamma.im.abs()).exp() * 2f64.powf(gamma.re).max((1.0 + z.norm()).powf(gamma.re))
}

/// Argument of [`m2`]: a finite point or the point at infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum M2Point {
    Finite(Complex),
    Infinity,
}

/// m₂(z; q, γ) = e^{π|Im γ|}(|z|+1)^{1+Re γ}/(|z−1||z|^{Re γ}) · (1+2|(q+1)/(γ+1)|),
/// for −1 < Re γ < 0. At infinity the z-dependent factor is replaced by its
/// limit 1.
pub fn m2(z: M2Point, q: Complex, gamma: Complex) -> Result<f64> {
    if !(gamma.re > -1.0 && gamma.re < 0.0) {
        return Err(Error::Domain(format!("m₂ needs −1 < Re γ < 0, got γ = {gamma}")));
    }
    let tail = (PI * gamma.im.abs()).exp() * (1.0 + 2.0 * ((q + 1.0) / (gamma + 1.0)).norm());
    match z {
        M2Point::Infinity => Ok(tail),
        M2Point::Finite(z) => {
            if z == c64(1.0, 0.0) {
                return Err(Error::Domain("m₂ at z = 1".into()));
            }
            let r = z.norm();
            let geom = (r + 1.0).powf(1.0 + gamma.re) / ((z - 1.0).norm() * r.powf(gamma.re));
            Ok(geom * tail)
        }
    }
}

/// m₃(p, γ) = max(e^{−π Im γ}|p−γ+1| + 1 + p e^{|γ|²+Re γ}, 1 + |sin πγ/(π(1+Re γ))|).
pub fn m3(p: usize, gamma: Complex) -> f64 {
    let pf = p as f64;
    let a = (-PI * gamma.im).exp() * (c64(pf + 1.0, 0.0) - gamma).norm()
        + 1.0
        + pf * (gamma.norm_sqr() + gamma.re).exp();
    let b = 1.0 + ((gamma * PI).sin() / (PI * (1.0 + gamma.re))).norm();
    a.max(b)
}

/// k-th summand of the first series.
pub fn term1(k: usize, n: usize, z: Complex, params: Params) -> Complex {
    let (a, b) = (params.alpha, params.beta);
    let psi = z / (c64(1.0, 0.0) - z);
    gen_binom(a + b, k) * psi.powi(k as i32) * cnum::pochhammer(a - b, k)
        / cnum::pochhammer(a - b + (n + 1) as f64, k)
}

/// k-th summand of the second series.
pub fn term2(k: usize, n: usize, z: Complex, params: Params) -> Complex {
    let (a, b) = (params.alpha, params.beta);
    let inv = c64(1.0, 0.0) / (z - 1.0);
    gen_binom(a - b - 1.0, k) * inv.powi(k as i32) * cnum::pochhammer(a + b + 1.0, k)
        / cnum::pochhammer(a + b + (n + 2) as f64, k)
}

fn terms1(n: usize, z: Complex, params: Params, p: usize) -> Vec<Complex> {
    let (a, b) = (params.alpha, params.beta);
    let psi = z / (c64(1.0, 0.0) - z);
    let mut out = Vec::with_capacity(p + 1);
    let mut t = c64(1.0, 0.0);
    out.push(t);
    for k in 1..=p {
        let kf = k as f64;
        t = t * (a + b - (kf - 1.0)) / kf * psi * (a - b + (kf - 1.0)) / (a - b + n as f64 + kf);
        out.push(t);
    }
    out
}

fn terms2(n: usize, z: Complex, params: Params, p: usize) -> Vec<Complex> {
    let (a, b) = (params.alpha, params.beta);
    let inv = c64(1.0, 0.0) / (z - 1.0);
    let mut out = Vec::with_capacity(p + 1);
    let mut t = c64(1.0, 0.0);
    out.push(t);
    for k in 1..=p {
        let kf = k as f64;
        t = t * (a - b - kf) / kf * inv * (a + b + kf) / (a + b + n as f64 + 1.0 + kf);
        out.push(t);
    }
    out
}

/// Both prefactors (A₁, A₂), assembled in log space.
pub fn prefactors(n: usize, z: Complex, params: Params) -> Result<(Complex, Complex)> {
    check_point(z, params)?;
    let (a, b) = (params.alpha, params.beta);
    let one = c64(1.0, 0.0);
    let common = ln_gamma(a * 2.0 + 1.0)?;
    let a1 = if z == c64(0.0, 0.0) {
        c64(0.0, 0.0)
    } else {
        let ln1 = common - ln_gamma(a + b + 1.0)? + ln_gamma_ratio(n, a - b)?
            + (a - b + n as f64) * cnum::ln_unchecked(z)
            + (b - a) * cnum::ln_unchecked(z - one);
        cnum::checked_exp(ln1)?
    };
    let ln2 = common - ln_gamma(a - b)? + ln_gamma_ratio(n, a + b + 1.0)?
        - (a + b + 1.0) * cnum::ln_unchecked(one - z);
    let a2 = cnum::checked_exp(ln2)?;
    Ok((a1, a2))
}

/// 1/B(n+1, d) = Γ(n+1+d)/(Γ(n+1)Γ(d)).
fn inv_beta(n: usize, d: Complex) -> Result<Complex> {
    cnum::checked_exp(-ln_gamma_ratio(n, d)? - ln_gamma(d)?)
}

/// ψ, γ and the extra (1−t) exponent of the chosen remainder integral.
fn remainder_data(which: Series, z: Complex, params: Params) -> (Complex, Complex, Complex) {
    let (a, b) = (params.alpha, params.beta);
    let one = c64(1.0, 0.0);
    match which {
        Series::First => (z / (one - z), a + b, a - b),
        Series::Second => (one / (z - one), a - b - 1.0, a + b + 1.0),
    }
}

/// True when the remainder integrand for `which` meets the branch ray, so that
/// its integral representation cannot be used on the real segment.
pub fn crosses_ray(which: Series, z: Complex, params: Params) -> bool {
    let (psi, _, _) = remainder_data(which, z, params);
    psi.im == 0.0 && psi.re <= -1.0
}

fn xi_quadrature(which: Series, n: usize, p: usize, z: Complex, params: Params, rule: &QuadratureRule) -> Result<Complex> {
    let (psi, gamma, d) = remainder_data(which, z, params);
    let zero = c64(0.0, 0.0);
    if psi == zero || gamma == zero {
        return Ok(zero);
    }
    let norm = inv_beta(n, d)? * psi.powi(p as i32 + 1);
    let e = d + p as f64;
    let ni = n as i32;
    let integral = integrate_01(
        |t, tc| c64(t.powi(ni), 0.0) * cnum::rpow(tc, e) * rp_of_w(psi * tc, gamma, p),
        rule,
    )?;
    Ok(norm * integral)
}

/// The remainder ξ of the chosen series.
///
/// Computed from its defining Beta-normalised integral. When that integrand
/// crosses the branch ray (z > 1 real for the first series, 0 ≤ z < 1 for the
/// second) the remainder is recovered from the exact decomposition instead,
/// using Pₙ and the other remainder.
pub fn xi_exact(which: Series, n: usize, p: usize, z: Complex, params: Params, rule: &QuadratureRule) -> Result<Complex> {
    check_point(z, params)?;
    if !crosses_ray(which, z, params) {
        return xi_quadrature(which, n, p, z, params, rule);
    }
    let other = match which {
        Series::First => Series::Second,
        Series::Second => Series::First,
    };
    let xi_other = xi_quadrature(other, n, p, z, params, rule)?;
    let (a1, a2) = prefactors(n, z, params)?;
    let s1: Complex = terms1(n, z, params, p).iter().sum();
    let s2: Complex = terms2(n, z, params, p).iter().sum();
    let pn = eval_p(n, z, params)?;
    Ok(match which {
        Series::First => (pn - a2 * (s2 + xi_other)) / a1 - s1,
        Series::Second => (pn - a1 * (s1 + xi_other)) / a2 - s2,
    })
}

fn ln_abs_gamma(z: Complex) -> Result<f64> {
    Ok(ln_gamma(z)?.re)
}

/// Upper bound for |ξ| of the chosen series.
pub fn bound_xi(which: Series, n: usize, p: usize, z: Complex, params: Params) -> Result<f64> {
    check_point(z, params)?;
    let (a, b) = (params.alpha, params.beta);
    let s = (a + b).re;
    let d = (a - b).re;
    let (nf, pf) = (n as f64, p as f64);
    match which {
        Series::First => {
            if z == c64(0.0, 0.0) {
                return Ok(0.0);
            }
            let gamma = a + b;
            let psi = z / (c64(1.0, 0.0) - z);
            let c1 = if s >= 0.0 {
                m1(psi, gamma) + pf * (gamma.norm_sqr() + s).exp() + 1.0
            } else {
                let rb = b.re;
                let ratio = ln_gamma_real(pf + 1.0 - 2.0 * rb)? - ln_gamma_real(pf + 1.0 + d)?
                    + ln_gamma_real(nf + pf + 2.0 + d)?
                    - ln_gamma_real(nf + pf + 2.0 - 2.0 * rb)?;
                m2(M2Point::Finite(z), -(b * 2.0) + pf, gamma)? * ratio.exp() + m3(p, gamma)
            };
            let ln_lead = ln_gamma_real(pf + d)? - ln_abs_gamma(a - b)? + (pf + 1.0) * psi.norm().ln()
                + ln_gamma_real(nf + 1.0 + d)?
                - ln_gamma_real(nf + pf + 2.0 + d)?;
            Ok(ln_lead.exp() * c1)
        }
        Series::Second => {
            let gamma = a - b - 1.0;
            let inv = c64(1.0, 0.0) / (z - 1.0);
            let c2 = if d >= 1.0 {
                m1(inv, gamma) + pf * (gamma.norm_sqr() + d - 1.0).exp() + 1.0
            } else {
                let rb = b.re;
                let ratio = ln_gamma_real(pf + 2.0 * rb + 3.0)? - ln_gamma_real(pf + s + 2.0)?
                    + ln_gamma_real(nf + pf + 3.0 + s)?
                    - ln_gamma_real(nf + pf + 2.0 * rb + 4.0)?;
                let point = if z == c64(0.0, 0.0) {
                    M2Point::Infinity
                } else {
                    M2Point::Finite(c64(1.0, 0.0) / z)
                };
                m2(point, b * 2.0 + pf + 2.0, gamma)? * ratio.exp() + m3(p, a - b + 1.0)
            };
            let ln_lead = ln_gamma_real(pf + 2.0 + s)? - ln_abs_gamma(a + b + 1.0)?
                + (pf + 1.0) * inv.norm().ln()
                + ln_gamma_real(nf + 2.0 + s)?
                - ln_gamma_real(nf + pf + 3.0 + s)?;
            Ok(ln_lead.exp() * c2)
        }
    }
}

/// Truncated expansion of Pₙ with certified remainder bounds.
pub fn expand_p(req: &ExpansionRequest) -> Result<ExpansionResult> {
    let ExpansionRequest { n, z, params, p1, p2 } = *req;
    let (prefactor1, prefactor2) = prefactors(n, z, params)?;
    let terms1 = terms1(n, z, params, p1);
    let terms2 = terms2(n, z, params, p2);
    let s1: Complex = terms1.iter().sum();
    let s2: Complex = terms2.iter().sum();
    let bound_xi1 = bound_xi(Series::First, n, p1, z, params)?;
    let bound_xi2 = bound_xi(Series::Second, n, p2, z, params)?;
    let total_error_bound =
        (prefactor1.norm() * bound_xi1 + prefactor2.norm() * bound_xi2) * (1.0 + BOUND_SLACK);
    Ok(ExpansionResult {
        value: prefactor1 * s1 + prefactor2 * s2,
        terms1,
        terms2,
        prefactor1,
        prefactor2,
        bound_xi1,
        bound_xi2,
        total_error_bound,
    })
}

/// Expansion of Qₙ(z; α, β) = Pₙ(z; α, −β); needs (α, −β) ∈ Ω₀.
pub fn expand_q(req: &ExpansionRequest) -> Result<ExpansionResult> {
    expand_p(&ExpansionRequest {
        params: req.params.reflected(),
        ..*req
    })
}

/// Result of [`converge_p`].
#[derive(Clone, Debug, PartialEq)]
pub struct Converged {
    pub value: Complex,
    /// Truncation indices used for the two series.
    pub p1: usize,
    pub p2: usize,
    pub error_bound: f64,
}

/// Sums both series far enough that the certified error is below `tol`.
/// Requires z ∈ Ω₁.
pub fn converge_p(n: usize, z: Complex, params: Params, tol: f64) -> Result<Converged> {
    check_point(z, params)?;
    if !region_omega1(z) {
        return Err(Error::Region(format!("z = {z} is outside Ω₁")));
    }
    let (a1, a2) = prefactors(n, z, params)?;
    let first_below = |which: Series, scale: f64| -> Result<usize> {
        for p in 0..MAX_CONVERGE_TERMS {
            if scale * bound_xi(which, n, p, z, params)? * (1.0 + BOUND_SLACK) < 0.5 * tol {
                return Ok(p);
            }
        }
        Err(Error::NonConvergence {
            what: "factorial series",
            iterations: MAX_CONVERGE_TERMS,
        })
    };
    let p1 = first_below(Series::First, a1.norm())?;
    let p2 = first_below(Series::Second, a2.norm())?;
    let r = expand_p(&ExpansionRequest { n, z, params, p1, p2 })?;
    Ok(Converged {
        value: r.value,
        p1,
        p2,
        error_bound: r.total_error_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex, b: Complex, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn omega1_membership() {
        assert!(region_omega1(c64(-2.0, 0.0)));
        assert!(!region_omega1(c64(0.4, 0.0)));
        assert!(region_omega1(c64(0.0, 1.0)));
        assert!(!region_omega1(c64(3.0, 0.0)));
    }

    #[test]
    fn rp_limits_and_conventions() {
        let g = c64(0.6, -0.3);
        assert!(close(rp_direct(c64(0.0, 0.0), c64(1.3, 0.0), g, 2).unwrap(), gen_binom(g, 3), 1e-15));
        assert_eq!(rp_direct(c64(0.4, 0.0), c64(0.0, 0.0), g, 2).unwrap(), c64(0.0, 0.0));
        assert_eq!(rp_direct(c64(0.4, 0.0), c64(1.3, 0.0), c64(0.0, 0.0), 2).unwrap(), c64(0.0, 0.0));
        for u in [0.1, 0.4, 0.9, 3.0] {
            let v = rp_direct(c64(u, 0.2), c64(1.3, 0.0), c64(3.0, 0.0), 3).unwrap();
            assert!(v.norm() < 1e-13, "u={u} v={v}");
        }
        assert!(matches!(
            rp_direct(c64(-1.0, 0.0), c64(2.0, 0.0), g, 1),
            Err(Error::Ray(_))
        ));
    }

    #[test]
    fn rp_series_and_direct_branches_agree() {
        let g = c64(-0.4, 0.7);
        let psi = c64(1.0, 0.0);
        for p in [0, 1, 3, 6] {
            let below = rp_direct(c64(0.5, 0.0), psi, g, p).unwrap();
            let above = rp_direct(c64(0.500_000_000_1, 0.0), psi, g, p).unwrap();
            assert!(close(below, above, 1e-8), "p={p}");
        }
    }

    #[test]
    fn m1_examples() {
        assert!((m1(c64(1.0, 0.0), c64(0.7, 0.0)) - 2f64.powf(0.7)).abs() < 1e-15);
        assert!((m1(c64(0.0, 0.0), c64(0.0, 1.0)) - PI.exp()).abs() < 1e-12);
        assert!((m1(c64(3.0, 0.0), c64(1.0, 0.0)) - 4.0).abs() < 1e-15);
    }

    #[test]
    fn m2_examples() {
        let g = c64(-0.5, 0.0);
        assert!((m2(M2Point::Infinity, c64(0.0, 0.0), g).unwrap() - 5.0).abs() < 1e-15);
        let v = m2(M2Point::Finite(c64(-1.0, 0.0)), c64(0.0, 0.0), g).unwrap();
        assert!((v - 2f64.sqrt() / 2.0 * 5.0).abs() < 1e-14);
        // Hand evaluation at z = 2i, q = 1+i, γ = −0.3+0.2i.
        let v = m2(M2Point::Finite(c64(0.0, 2.0)), c64(1.0, 1.0), c64(-0.3, 0.2)).unwrap();
        assert!((v - 15.906_031_081_234_777).abs() < 1e-12, "{v}");
        assert!(m2(M2Point::Finite(c64(1.0, 0.0)), c64(0.0, 0.0), g).is_err());
        assert!(m2(M2Point::Infinity, c64(0.0, 0.0), c64(0.5, 0.0)).is_err());
    }

    #[test]
    fn m3_examples() {
        assert!((m3(0, c64(-0.5, 0.0)) - 2.5).abs() < 1e-15);
        let g = c64(2.0, 0.0);
        assert!((m3(0, g) - ((1.0 - 2.0f64).abs() + 1.0).max(1.0)).abs() < 1e-14);
        // Hand evaluation at γ = −0.3+0.4i, p = 3.
        assert!((m3(3, c64(-0.3, 0.4)) - 5.082_792_965_440_806).abs() < 1e-12);
    }

    #[test]
    fn term_examples() {
        let p = Params::real(1.0, 0.25);
        let z = c64(-0.5, 0.7);
        assert_eq!(term1(0, 7, z, p), c64(1.0, 0.0));
        assert_eq!(term2(0, 7, z, p), c64(1.0, 0.0));
        let (a, b) = (p.alpha, p.beta);
        let want = (a + b) * (z / (c64(1.0, 0.0) - z)) * (a - b) / (a - b + 8.0);
        assert!(close(term1(1, 7, z, p), want, 1e-15));
        // C(−0.25, 2)·(1/9)·(2.25)(3.25)/((8.25)(9.25)) at n = 5, z = −2.
        let want2 = 0.156_25 / 9.0 * 2.25 * 3.25 / (8.25 * 9.25);
        assert!(close(term2(2, 5, c64(-2.0, 0.0), p), c64(want2, 0.0), 1e-15));
    }

    #[test]
    fn recurrences_match_closed_terms() {
        let p = Params::new(c64(0.75, 0.1), c64(0.2, 0.6));
        let z = c64(-1.5, 2.0);
        let t1 = terms1(9, z, p, 12);
        let t2 = terms2(9, z, p, 12);
        for k in 0..=12 {
            assert!(close(t1[k], term1(k, 9, z, p), 1e-13));
            assert!(close(t2[k], term2(k, 9, z, p), 1e-13));
        }
    }

    #[test]
    fn certification_example() {
        let params = Params::real(1.0, 0.25);
        let req = ExpansionRequest { n: 40, z: c64(-2.0, 0.0), params, p1: 4, p2: 4 };
        let r = expand_p(&req).unwrap();
        let exact = eval_p(40, req.z, params).unwrap();
        assert!((exact - r.value).norm() <= r.total_error_bound);
        let sum1: Complex = r.terms1.iter().sum();
        let sum2: Complex = r.terms2.iter().sum();
        assert_eq!(r.value, r.prefactor1 * sum1 + r.prefactor2 * sum2);
    }

    #[test]
    fn exact_decomposition() {
        let rule = QuadratureRule::default();
        let params = Params::real(1.0, 0.25);
        for (n, z, p) in [(8, c64(-2.0, 0.0), 2), (5, c64(0.2, 1.5), 1), (12, c64(-0.5, 0.5), 3)] {
            let (a1, a2) = prefactors(n, z, params).unwrap();
            let x1 = xi_exact(Series::First, n, p, z, params, &rule).unwrap();
            let x2 = xi_exact(Series::Second, n, p, z, params, &rule).unwrap();
            let s1: Complex = terms1(n, z, params, p).iter().sum();
            let s2: Complex = terms2(n, z, params, p).iter().sum();
            let rebuilt = a1 * (s1 + x1) + a2 * (s2 + x2);
            assert!(close(rebuilt, eval_p(n, z, params).unwrap(), 1e-8), "n={n} z={z}");
        }
    }

    #[test]
    fn remainder_bound_example() {
        let rule = QuadratureRule::default();
        let params = Params::real(1.0, 0.25);
        let z = c64(-2.0, 0.0);
        let x = xi_exact(Series::First, 8, 2, z, params, &rule).unwrap();
        assert!(x.norm() <= bound_xi(Series::First, 8, 2, z, params).unwrap());
    }

    #[test]
    fn integer_gamma_makes_first_series_exact() {
        let rule = QuadratureRule::default();
        let params = Params::real(1.5, 0.5); // α+β = 2
        let z = c64(-0.7, 0.4);
        let x = xi_exact(Series::First, 6, 2, z, params, &rule).unwrap();
        assert!(x.norm() < 1e-14);
        let r = expand_p(&ExpansionRequest { n: 6, z, params, p1: 2, p2: 3 }).unwrap();
        assert!(r.terms1.len() == 3);
    }

    #[test]
    fn bound_halves_with_doubled_degree() {
        let params = Params::real(1.0, 0.25);
        let z = c64(-2.0, 0.0);
        for p in [0, 1, 3] {
            for which in [Series::First, Series::Second] {
                let r = bound_xi(which, 80, p, z, params).unwrap() / bound_xi(which, 40, p, z, params).unwrap();
                assert!(r <= 0.6f64.powi(p as i32 + 1), "p={p} ratio={r}");
            }
        }
    }

    #[test]
    fn convergent_mode() {
        let params = Params::real(1.0, 0.25);
        let c = converge_p(3, c64(-2.0, 0.0), params, 1e-10).unwrap();
        assert!((c.value - eval_p(3, c64(-2.0, 0.0), params).unwrap()).norm() < 1e-10);
        let c = converge_p(0, c64(-5.0, 0.0), params, 1e-10).unwrap();
        assert!((c.value - 1.0).norm() < 1e-10);
        let params = Params::real(0.75, 0.3);
        let z = c64(-1.5, 2.0);
        let c = converge_p(10, z, params, 1e-10).unwrap();
        assert!((c.value - eval_p(10, z, params).unwrap()).norm() < 1e-10);
        assert!(matches!(converge_p(3, c64(3.0, 0.0), params, 1e-10), Err(Error::Region(_))));
    }

    #[test]
    fn expansion_of_q_uses_reflected_parameters() {
        let params = Params::new(c64(0.75, 0.0), c64(0.0, 0.6));
        let req = ExpansionRequest { n: 20, z: c64(-2.0, 0.0), params, p1: 3, p2: 3 };
        let q = expand_q(&req).unwrap();
        let exact = crate::hyp::eval_q(20, req.z, params).unwrap();
        assert!((q.value - exact).norm() <= q.total_error_bound);
    }

    #[test]
    fn domain_errors() {
        let params = Params::real(1.0, 0.25);
        let req = ExpansionRequest { n: 4, z: c64(1.0, 0.0), params, p1: 1, p2: 1 };
        assert!(matches!(expand_p(&req), Err(Error::Domain(_))));
        let req = ExpansionRequest { params: Params::real(0.1, 0.3), z: c64(-2.0, 0.0), ..req };
        assert!(matches!(expand_p(&req), Err(Error::Region(_))));
    }
}
