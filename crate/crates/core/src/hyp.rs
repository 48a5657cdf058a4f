//! Hypergeometric evaluators, generalized Bernoulli polynomials and the
//! polynomials
//!
//! Pₙ(z; α, β) = ₂F₁(−n, α+β+1; 2α+1; 1−z),   Qₙ(z; α, β) = Pₙ(z; α, −β).
//!
//! The terminating ₂F₁ is summed in double-double arithmetic because its terms
//! alternate and grow like |1−z|ⁿ before cancelling.

use crate::cnum::{c64, Complex};
use crate::dd::{DdComplex, Scalar};
use crate::error::{Error, Result};

/// The parameter pair (α, β).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Params {
    pub alpha: Complex,
    pub beta: Complex,
}

impl Params {
    pub const fn new(alpha: Complex, beta: Complex) -> Self {
        Self { alpha, beta }
    }

    /// Real-valued shorthand.
    pub const fn real(alpha: f64, beta: f64) -> Self {
        Self::new(c64(alpha, 0.0), c64(beta, 0.0))
    }

    /// Re(α+β) > −1 and Re(α−β) > 0.
    pub fn in_omega0(&self) -> bool {
        (self.alpha + self.beta).re > -1.0 && (self.alpha - self.beta).re > 0.0
    }

    /// α real and > −1/2, β purely imaginary: the weight is then positive.
    pub fn weight_positive(&self) -> bool {
        self.alpha.im == 0.0 && self.alpha.re > -0.5 && self.beta.re == 0.0
    }

    /// (α, −β), the parameters for which Pₙ reproduces Qₙ.
    pub fn reflected(&self) -> Self {
        Self::new(self.alpha, -self.beta)
    }

    pub(crate) fn require_omega0(&self) -> Result<()> {
        if self.in_omega0() {
            Ok(())
        } else {
            Err(Error::Region(format!(
                "need Re(α+β) > −1 and Re(α−β) > 0, got α = {}, β = {}",
                self.alpha, self.beta
            )))
        }
    }
}

fn is_nonpositive_integer(c: Complex) -> bool {
    c.im == 0.0 && c.re <= 0.0 && c.re == c.re.round()
}

/// Σ_{k=0}^{n} (−n)_k (a)_k / ((c)_k k!) · x^k in the scalar type `S`.
///
/// The pole check on `c` must be done by the caller.
pub fn f21_terminating_in<S: Scalar>(n: usize, a: S, c: S, x: S) -> S {
    let mut term = S::one();
    let mut sum = S::one();
    for k in 0..n {
        let kf = k as f64;
        let num = (S::from_f64(kf - n as f64)) * (a + S::from_f64(kf));
        let den = (c + S::from_f64(kf)) * S::from_f64(kf + 1.0);
        term = term * num / den * x;
        sum += term;
    }
    sum
}

fn check_c(n: usize, c: Complex) -> Result<()> {
    if n > 0 && is_nonpositive_integer(c) && (-c.re) <= (n - 1) as f64 {
        return Err(Error::ParameterPole(format!(
            "(c)_k vanishes for c = {} and k ≤ {n}",
            c.re
        )));
    }
    Ok(())
}

/// Terminating ₂F₁(−n, a; c; x).
pub fn f21_terminating(n: usize, a: Complex, c: Complex, x: Complex) -> Result<Complex> {
    check_c(n, c)?;
    let v = f21_terminating_in(
        n,
        DdComplex::from_c64(a),
        DdComplex::from_c64(c),
        DdComplex::from_c64(x),
    );
    Ok(v.to_c64())
}

/// Pₙ as a double-double value, taking x = 1 − z already in double-double.
pub fn eval_p_dd(n: usize, one_minus_z: DdComplex, params: Params) -> Result<DdComplex> {
    let a = params.alpha + params.beta + 1.0;
    let c = params.alpha * 2.0 + 1.0;
    check_c(n, c)?;
    Ok(f21_terminating_in(
        n,
        DdComplex::from_c64(a),
        DdComplex::from_c64(c),
        one_minus_z,
    ))
}

/// Pₙ(z; α, β).
pub fn eval_p(n: usize, z: Complex, params: Params) -> Result<Complex> {
    let x = DdComplex::from_c64(c64(1.0, 0.0)) - DdComplex::from_c64(z);
    Ok(eval_p_dd(n, x, params)?.to_c64())
}

/// Qₙ(z; α, β) = Pₙ(z; α, −β).
pub fn eval_q(n: usize, z: Complex, params: Params) -> Result<Complex> {
    eval_p(n, z, params.reflected())
}

/// Number of Maclaurin terms allowed in [`f11`].
pub const F11_MAX_TERMS: usize = 10_000;

/// Default relative tolerance for [`f11`].
pub const F11_TOL: f64 = 1e-14;

/// ₁F₁(a; c; x) by Maclaurin summation in the scalar type `S`.
pub fn f11_in<S: Scalar>(a: S, c: S, x: S, tol: f64) -> Result<S> {
    let cc = c.to_c64();
    if is_nonpositive_integer(cc) {
        return Err(Error::ParameterPole(format!("₁F₁ with c = {}", cc.re)));
    }
    if x.abs() > 50.0 {
        return Err(Error::Domain(format!("₁F₁ argument |x| = {} exceeds 50", x.abs())));
    }
    let mut term = S::one();
    let mut sum = S::one();
    let mut small = 0;
    for k in 0..F11_MAX_TERMS {
        let kf = S::from_f64(k as f64);
        term = term * (a + kf) / ((c + kf) * S::from_f64(k as f64 + 1.0)) * x;
        sum += term;
        if term.abs() <= tol * sum.abs() {
            small += 1;
            if small == 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence {
        what: "1F1 series",
        iterations: F11_MAX_TERMS,
    })
}

/// ₁F₁(a; c; x).
pub fn f11(a: Complex, c: Complex, x: Complex, tol: f64) -> Result<Complex> {
    f11_in(a, c, x, tol)
}

/// Largest order accepted by the Bernoulli routines.
pub const BERNOULLI_MAX_ORDER: usize = 64;

/// Coefficients B_m^{(σ)}(x)/m! for m = 0..=order, read off the power series of
/// (z/(eᶻ−1))^σ e^{xz}.
pub fn bernoulli_series<S: Scalar>(order: usize, sigma: S, x: S) -> Vec<S> {
    let len = order + 1;
    // b = (eᶻ−1)/z = Σ zᵏ/(k+1)!
    let mut b = vec![S::one(); len];
    for k in 1..len {
        b[k] = b[k - 1] / S::from_f64((k + 1) as f64);
    }
    // l = ln b via k·l_k = k·b_k − Σ_{j=1}^{k−1} j·l_j·b_{k−j}
    let mut l = vec![S::zero(); len];
    for k in 1..len {
        let mut acc = b[k] * S::from_f64(k as f64);
        for j in 1..k {
            acc -= l[j] * b[k - j] * S::from_f64(j as f64);
        }
        l[k] = acc / S::from_f64(k as f64);
    }
    // s = −σ·l + x·z, then e = exp(s) via k·e_k = Σ_{j=1}^{k} j·s_j·e_{k−j}
    let mut s: Vec<S> = l.iter().map(|&v| -(sigma * v)).collect();
    if len > 1 {
        s[1] += x;
    }
    let mut e = vec![S::zero(); len];
    e[0] = S::one();
    for k in 1..len {
        let mut acc = S::zero();
        for j in 1..=k {
            acc += s[j] * e[k - j] * S::from_f64(j as f64);
        }
        e[k] = acc / S::from_f64(k as f64);
    }
    e
}

/// Generalized Bernoulli polynomial B_m^{(σ)}(x).
pub fn gen_bernoulli(m: usize, sigma: Complex, x: Complex) -> Result<Complex> {
    if m > BERNOULLI_MAX_ORDER {
        return Err(Error::Domain(format!(
            "Bernoulli order {m} exceeds {BERNOULLI_MAX_ORDER}"
        )));
    }
    let series = bernoulli_series(m, DdComplex::from_c64(sigma), DdComplex::from_c64(x));
    let mut fact = DdComplex::one();
    for j in 2..=m {
        fact *= DdComplex::from_f64(j as f64);
    }
    Ok((series[m] * fact).to_c64())
}
