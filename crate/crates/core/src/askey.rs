//! Expansion of Pₙ(e^{iθ/n}; α, β) in powers of iθ/n,
//!
//! Pₙ(e^{iθ/n}) = Σ_{j≤k} a_j(θ)(iθ/n)^j + R_{k,n}(θ),
//!
//! whose leading coefficient is ₁F₁(α+β+1; 2α+1; iθ) and whose higher
//! coefficients are triple sums of generalized Bernoulli values times ₁F₁
//! factors. The remainder satisfies
//!
//! |R_{k,n}| ≤ Γ(Re(α+β+1))Γ(Re(α−β))/|Γ(α+β+1)Γ(α−β)| · |2θ/(3nπ−2θ)| ·
//!            |2θ/(3nπ)|^k · max_{|v|=3π/2}|e^{v(α−β)} v/(eᵛ−1)|.
//!
//! For large n the bound drops below double precision, so [`askey_certify`]
//! re-evaluates both sides in double-double.

use std::f64::consts::PI;

use crate::cnum::{self, c64, ln_gamma, ln_gamma_real, Complex};
use crate::dd::{one_minus_expi, Dd, DdComplex, Scalar};
use crate::error::{Error, Result};
use crate::hyp::{bernoulli_series, eval_p, eval_p_dd, f11_in, Params, BERNOULLI_MAX_ORDER, F11_TOL};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AskeyRequest {
    pub n: usize,
    pub theta: f64,
    pub k: usize,
    pub params: Params,
}

impl AskeyRequest {
    fn validate(&self) -> Result<()> {
        self.params.require_omega0()?;
        if self.n == 0 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        if !(-PI..PI).contains(&self.theta) {
            return Err(Error::Domain(format!("θ = {} outside [−π, π)", self.theta)));
        }
        if self.k > BERNOULLI_MAX_ORDER {
            return Err(Error::Domain(format!("order k = {} exceeds {BERNOULLI_MAX_ORDER}", self.k)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AskeyExpansion {
    pub value: Complex,
    pub remainder_bound: f64,
}

/// Double-double check of the remainder bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AskeyCertificate {
    pub value: Complex,
    pub reference: Complex,
    /// |Pₙ(e^{iθ/n}) − value|, both sides in double-double.
    pub error: f64,
    pub remainder_bound: f64,
    pub pass: bool,
}

/// Coefficients a_0..a_k in the scalar type `S`.
fn coefficients_in<S: Scalar>(k: usize, theta: f64, params: Params, tol: f64) -> Result<Vec<S>> {
    let (a, b) = (params.alpha, params.beta);
    let s = |z: Complex| S::from_c64(z);
    let zero = c64(0.0, 0.0);
    let w1 = bernoulli_series(k, s(-a - b), s(a - b));
    let w2 = bernoulli_series(k, s(-a + b + 1.0), s(zero));
    let w3 = bernoulli_series(k, s(a * 2.0), s(zero));
    let poch = |base: Complex, len: usize| -> Vec<S> {
        let mut out = Vec::with_capacity(len + 1);
        let mut acc = S::one();
        out.push(acc);
        for j in 0..len {
            acc *= s(base + j as f64);
            out.push(acc);
        }
        out
    };
    let p1 = poch(a + b + 1.0, k);
    let p2 = poch(a - b, k);
    let p3 = poch(a * 2.0 + 1.0, k);
    let x = s(c64(0.0, theta));
    // ₁F₁(1+α+β+i₁; 1+2α+i₁+i₂; iθ) depends on (i₁, i₂) only.
    let mut f = vec![vec![S::zero(); k + 1]; k + 1];
    for (i1, row) in f.iter_mut().enumerate() {
        for (i2, slot) in row.iter_mut().take(k + 1 - i1).enumerate() {
            *slot = f11_in(
                s(a + b + 1.0 + i1 as f64),
                s(a * 2.0 + 1.0 + (i1 + i2) as f64),
                x,
                tol,
            )?;
        }
    }
    let mut out = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let mut acc = S::zero();
        for i1 in 0..=j {
            for i2 in 0..=(j - i1) {
                let i3 = j - i1 - i2;
                acc += w1[i1] * w2[i2] * w3[i3] * p1[i1] * p2[i2] / p3[i1 + i2] * f[i1][i2];
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// Coefficient of (iθ/n)^j; independent of n.
pub fn askey_term(j: usize, theta: f64, params: Params) -> Result<Complex> {
    if j > BERNOULLI_MAX_ORDER {
        return Err(Error::Domain(format!("order {j} exceeds {BERNOULLI_MAX_ORDER}")));
    }
    Ok(coefficients_in::<DdComplex>(j, theta, params, 1e-32)?[j].to_c64())
}

/// Number of samples in the coarse scan of [`max_circle`].
pub const MAX_CIRCLE_SAMPLES: usize = 4096;

/// max over |v| = 3π/2 of |e^{v(α−β)} v/(eᵛ−1)|: a 4096-point scan followed by
/// golden-section refinement of the best bracket.
pub fn max_circle(params: Params) -> f64 {
    let d = params.alpha - params.beta;
    let r = 1.5 * PI;
    let f = |phi: f64| {
        let v = c64(r * phi.cos(), r * phi.sin());
        (v * d).re + r.ln() - cnum::expm1(v).norm().ln()
    };
    let h = 2.0 * PI / MAX_CIRCLE_SAMPLES as f64;
    let (mut best_i, mut best) = (0, f64::NEG_INFINITY);
    for i in 0..MAX_CIRCLE_SAMPLES {
        let v = f(i as f64 * h);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = ((best_i as f64 - 1.0) * h, (best_i as f64 + 1.0) * h);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-12 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    best.max(f1).max(f2).exp()
}

/// Γ(Re(α+β+1))Γ(Re(α−β))/|Γ(α+β+1)Γ(α−β)|.
fn gamma_factor(params: Params) -> Result<f64> {
    let (a, b) = (params.alpha, params.beta);
    let s = a + b + 1.0;
    let d = a - b;
    Ok((ln_gamma_real(s.re)? + ln_gamma_real(d.re)? - ln_gamma(s)?.re - ln_gamma(d)?.re).exp())
}

/// Bound on |R_{k,n}(θ)|.
pub fn askey_remainder_bound(req: &AskeyRequest) -> Result<f64> {
    req.validate()?;
    Ok(bound_with(req, gamma_factor(req.params)?, max_circle(req.params)))
}

fn bound_with(req: &AskeyRequest, gamma_factor: f64, circle: f64) -> f64 {
    let two_theta = 2.0 * req.theta;
    let three_n_pi = 3.0 * req.n as f64 * PI;
    gamma_factor
        * (two_theta / (three_n_pi - two_theta)).abs()
        * (two_theta / three_n_pi).abs().powi(req.k as i32)
        * circle
}

fn value_in<S: Scalar>(req: &AskeyRequest, coeffs: &[S]) -> S {
    let step = S::from_c64(c64(0.0, req.theta)) / S::from_f64(req.n as f64);
    let mut acc = S::zero();
    let mut pw = S::one();
    for &c in coeffs {
        acc += c * pw;
        pw *= step;
    }
    acc
}

/// Truncated expansion with its remainder bound.
pub fn askey_expand(req: &AskeyRequest) -> Result<AskeyExpansion> {
    req.validate()?;
    let coeffs = coefficients_in::<Complex>(req.k, req.theta, req.params, F11_TOL)?;
    Ok(AskeyExpansion {
        value: value_in(req, &coeffs),
        remainder_bound: askey_remainder_bound(req)?,
    })
}

/// Compares the expansion with Pₙ(e^{iθ/n}) in double-double arithmetic,
/// with e^{iθ/n} formed from the exact double θ.
pub fn askey_certify(req: &AskeyRequest) -> Result<AskeyCertificate> {
    req.validate()?;
    let coeffs = coefficients_in::<DdComplex>(req.k, req.theta, req.params, 1e-32)?;
    let value = value_in(req, &coeffs);
    let w = Dd::from(req.theta) / Dd::from(req.n as f64);
    let reference = eval_p_dd(req.n, one_minus_expi(w), req.params)?;
    let error = (reference - value).to_c64().norm();
    let remainder_bound = askey_remainder_bound(req)?;
    Ok(AskeyCertificate {
        value: value.to_c64(),
        reference: reference.to_c64(),
        error,
        remainder_bound,
        pass: error <= remainder_bound,
    })
}

/// |Pₙ(e^{iθ/n}) − value| in plain double precision.
pub fn askey_error_f64(req: &AskeyRequest) -> Result<f64> {
    let e = askey_expand(req)?;
    let z = c64(0.0, req.theta / req.n as f64).exp();
    Ok((eval_p(req.n, z, req.params)? - e.value).norm())
}
