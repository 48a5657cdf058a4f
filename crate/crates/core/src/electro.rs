//! Electrostatic model on the unit circle.
//!
//! Unit charges sit at e^{iθ₁}, …, e^{iθₙ} with 0 < θ₁ < … < θₙ < 2π, a charge
//! p > 0 sits at 1 and a rotational field of strength q acts on every charge.
//! The energy is
//!
//! E(θ) = Σ_{j<k} −ln|e^{iθ_k} − e^{iθ_j}| − p Σ ln|1 − e^{iθ_j}| + q Σ θ_j,
//!
//! with each pair counted once; this is the convention under which the
//! gradient below is the exact derivative of E. Its equilibrium is given by
//! the zeros of the monic para-orthogonal polynomial
//!
//! Bₙ(z) = (2α)ₙ/(α+β)ₙ · ₂F₁(−n, α+β; 2α; 1−z),   α = p, β = 2iq.

use std::f64::consts::{PI, TAU};

use crate::cnum::{c64, Complex};
use crate::dd::{Dd, DdComplex, Scalar};
use crate::error::{Error, Result};
use crate::hyp::Params;

/// Minimal admissible distance between charges, and from the charge at 1.
pub const BOUNDARY_EPS: f64 = 1e-12;

/// Sweeps before the root finder gives up.
pub const ABERTH_MAX_SWEEPS: usize = 500;

/// Convergence threshold on the largest root update.
pub const ABERTH_TOL: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyConfig {
    pub n: usize,
    pub p: f64,
    pub q: f64,
}

impl EnergyConfig {
    pub fn new(n: usize, p: f64, q: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("need at least one charge".into()));
        }
        if !p.is_finite() || p <= 0.0 || !q.is_finite() {
            return Err(Error::Domain(format!("need p > 0 and finite q, got p = {p}, q = {q}")));
        }
        Ok(Self { n, p, q })
    }

    /// α = p, β = 2iq.
    pub fn params(&self) -> Params {
        Params::new(c64(self.p, 0.0), c64(0.0, 2.0 * self.q))
    }
}

/// Strictly increasing angles in (0, 2π).
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroConfiguration {
    thetas: Vec<f64>,
}

impl ZeroConfiguration {
    pub fn new(thetas: Vec<f64>) -> Result<Self> {
        check_admissible(&thetas)?;
        Ok(Self { thetas })
    }

    /// Sorts the angles first.
    pub fn from_unsorted(mut thetas: Vec<f64>) -> Result<Self> {
        thetas.sort_by(f64::total_cmp);
        Self::new(thetas)
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.thetas
    }

    /// Largest angle difference against another configuration of equal size.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        assert_eq!(self.len(), other.len());
        self.thetas
            .iter()
            .zip(&other.thetas)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

fn check_admissible(t: &[f64]) -> Result<()> {
    if t.iter().any(|x| !x.is_finite()) {
        return Err(Error::Boundary("non-finite angle".into()));
    }
    let Some((&first, &last)) = t.first().zip(t.last()) else {
        return Ok(());
    };
    if first < BOUNDARY_EPS || last > TAU - BOUNDARY_EPS {
        return Err(Error::Boundary(format!("angles must lie in (0, 2π), got {first} … {last}")));
    }
    if let Some(w) = t.windows(2).find(|w| w[1] - w[0] < BOUNDARY_EPS) {
        return Err(Error::Boundary(format!("angles {} and {} coincide or are out of order", w[0], w[1])));
    }
    Ok(())
}

fn unit(theta: f64) -> Complex {
    c64(theta.cos(), theta.sin())
}

/// Monic polynomial, coefficients in ascending powers.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyCoeffs {
    coeffs: Vec<Complex>,
}

impl PolyCoeffs {
    /// Rescales so the leading coefficient is exactly 1.
    pub fn monic(mut coeffs: Vec<Complex>) -> Result<Self> {
        let lead = *coeffs.last().ok_or_else(|| Error::Domain("empty polynomial".into()))?;
        if lead == c64(0.0, 0.0) {
            return Err(Error::Degenerate("zero leading coefficient".into()));
        }
        for c in coeffs.iter_mut() {
            *c /= lead;
        }
        *coeffs.last_mut().unwrap() = c64(1.0, 0.0);
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.coeffs.iter().rev().fold(c64(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// (y, y′, y″) by Horner's scheme.
    pub fn eval_derivs(&self, z: Complex) -> (Complex, Complex, Complex) {
        let zero = c64(0.0, 0.0);
        let (mut y, mut d1, mut d2) = (zero, zero, zero);
        for &c in self.coeffs.iter().rev() {
            d2 = d2 * z + d1;
            d1 = d1 * z + y;
            y = y * z + c;
        }
        (y, d1, d2 * 2.0)
    }

    /// Newton correction y/y′ with the sums in double-double.
    fn newton_step(&self, z: Complex) -> Complex {
        let zd = DdComplex::from_c64(z);
        let (mut y, mut d) = (DdComplex::zero(), DdComplex::zero());
        for &c in self.coeffs.iter().rev() {
            d = d * zd + y;
            y = y * zd + DdComplex::from_c64(c);
        }
        (y / d).to_c64()
    }
}

fn is_nonpositive_integer(c: Complex) -> bool {
    c.im == 0.0 && c.re <= 0.0 && c.re == c.re.round()
}

/// Bₙ in the monomial basis.
pub fn para_poly(n: usize, params: Params) -> Result<PolyCoeffs> {
    let (a, b) = (params.alpha, params.beta);
    let two_a = a * 2.0;
    let s = a + b;
    if a == c64(0.0, 0.0) {
        return Err(Error::ParameterPole("α = 0".into()));
    }
    if is_nonpositive_integer(two_a) && -two_a.re < n as f64 {
        return Err(Error::ParameterPole(format!("(2α)_k vanishes for 2α = {two_a}")));
    }
    if is_nonpositive_integer(s) && -s.re < n as f64 {
        return Err(Error::ParameterPole(format!("(α+β)_n vanishes for α+β = {s}")));
    }
    // Bₙ = Σ_k c_k (1−z)^k with c_k = (−n)_k/k! · (2α+k)_{n−k}/(α+β+k)_{n−k}.
    let dd = DdComplex::from_c64;
    let mut tail = vec![DdComplex::one(); n + 1];
    for k in (0..n).rev() {
        tail[k] = tail[k + 1] * dd(two_a + k as f64) / dd(s + k as f64);
    }
    let mut out = vec![DdComplex::zero(); n + 1];
    let mut binom = DdComplex::one();
    for (k, t) in tail.iter().enumerate() {
        if k > 0 {
            binom = binom * DdComplex::from_f64(k as f64 - 1.0 - n as f64) / DdComplex::from_f64(k as f64);
        }
        let ck = binom * *t;
        // (1−z)^k = Σ_m C(k, m)(−1)^m z^m
        let mut c = Dd::from(1.0);
        for (m, slot) in out.iter_mut().enumerate().take(k + 1) {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            *slot += ck.scale(c * sign);
            c = c * ((k - m) as f64) / ((m + 1) as f64);
        }
    }
    PolyCoeffs::monic(out.into_iter().map(DdComplex::to_c64).collect())
}

/// Zeros of a polynomial whose roots lie on the unit circle, by Aberth
/// iteration from points equispaced on the circle and offset by half a step.
pub fn roots_on_circle(poly: &PolyCoeffs, tol: f64) -> Result<ZeroConfiguration> {
    let n = poly.degree();
    if n == 0 {
        return Ok(ZeroConfiguration { thetas: Vec::new() });
    }
    let mut z: Vec<Complex> = (0..n).map(|k| unit(TAU * (k as f64 + 0.5) / n as f64)).collect();
    let mut converged = false;
    for _ in 0..ABERTH_MAX_SWEEPS {
        let mut max_update: f64 = 0.0;
        for k in 0..n {
            let w = poly.newton_step(z[k]);
            let s: Complex = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let upd = w / (c64(1.0, 0.0) - w * s);
            z[k] -= upd;
            max_update = max_update.max(upd.norm());
        }
        if !max_update.is_finite() {
            return Err(Error::Degenerate("root iteration produced a non-finite value".into()));
        }
        if max_update < ABERTH_TOL {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence { what: "Aberth root iteration", iterations: ABERTH_MAX_SWEEPS });
    }
    let mut thetas = Vec::with_capacity(n);
    for (index, r) in z.iter().enumerate() {
        let deviation = r.norm() - 1.0;
        if deviation.abs() > tol {
            return Err(Error::OffCircle { index, deviation });
        }
        let t = r.im.atan2(r.re);
        thetas.push(if t <= 0.0 { t + TAU } else { t });
    }
    ZeroConfiguration::from_unsorted(thetas)
}

fn check_len(cfg: &EnergyConfig, t: &[f64]) -> Result<()> {
    if t.len() != cfg.n {
        return Err(Error::Domain(format!("expected {} angles, got {}", cfg.n, t.len())));
    }
    check_admissible(t)
}

/// E with each pair counted once.
pub fn energy(cfg: &EnergyConfig, thetas: &ZeroConfiguration) -> Result<f64> {
    let t = thetas.thetas();
    check_len(cfg, t)?;
    let mut e = 0.0;
    for j in 0..t.len() {
        for k in j + 1..t.len() {
            e -= (2.0 * ((t[k] - t[j]) / 2.0).sin()).ln();
        }
        e -= cfg.p * (2.0 * (t[j] / 2.0).sin()).ln();
        e += cfg.q * t[j];
    }
    Ok(e)
}

/// ∂E/∂θ_j = Σ_{k≠j} Im(z_j/(z_j−z_k)) − Im((p/(1−z_j) + ((n+p−1)/2 − iq)/z_j) z_j).
pub fn energy_grad(cfg: &EnergyConfig, thetas: &ZeroConfiguration) -> Result<Vec<f64>> {
    let t = thetas.thetas();
    check_len(cfg, t)?;
    let z: Vec<Complex> = t.iter().map(|&x| unit(x)).collect();
    let aux = c64((cfg.n as f64 + cfg.p - 1.0) / 2.0, -cfg.q);
    Ok((0..z.len())
        .map(|j| {
            let pair: f64 = (0..z.len()).filter(|&k| k != j).map(|k| (z[j] / (z[j] - z[k])).im).sum();
            let field = (cfg.p / (c64(1.0, 0.0) - z[j]) + aux / z[j]) * z[j];
            pair - field.im
        })
        .collect())
}

/// max_j |Im(z_j f″(z_j)/f′(z_j) − L(z_j)/(1 − z_j))| for f = ∏(z − z_k),
/// L(z) = n+α−1−β − (n−α−β−1)z, α = p, β = 2iq.
pub fn stationarity_residual(thetas: &ZeroConfiguration, cfg: &EnergyConfig) -> Result<f64> {
    let t = thetas.thetas();
    if t.len() != cfg.n {
        return Err(Error::Domain(format!("expected {} angles, got {}", cfg.n, t.len())));
    }
    let params = cfg.params();
    let (a, b) = (params.alpha, params.beta);
    let n = cfg.n as f64;
    let z: Vec<Complex> = t.iter().map(|&x| unit(x)).collect();
    let mut worst: f64 = 0.0;
    for j in 0..z.len() {
        let mut ratio = c64(0.0, 0.0);
        for k in (0..z.len()).filter(|&k| k != j) {
            let d = z[j] - z[k];
            if d == c64(0.0, 0.0) {
                return Err(Error::Degenerate(format!("f′ vanishes at z_{j}")));
            }
            ratio += d.inv();
        }
        let one_minus = c64(1.0, 0.0) - z[j];
        if one_minus == c64(0.0, 0.0) {
            return Err(Error::Boundary(format!("z_{j} = 1")));
        }
        let l = (a + n - 1.0 - b) - (-a - b + n - 1.0) * z[j];
        let v = z[j] * ratio * 2.0 - l / one_minus;
        worst = worst.max(v.im.abs());
    }
    Ok(worst)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MinimizeOptions {
    /// Stop when the gradient's infinity norm drops below this.
    pub tol: f64,
    pub maxiter: usize,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self { tol: 1e-10, maxiter: 50_000 }
    }
}

const ARMIJO_C: f64 = 1e-4;

/// ln(sin b′/sin b) for sin b, sin b′ of equal sign, accurate when b′ ≈ b.
fn log_sin_ratio(b: f64, db: f64) -> f64 {
    let diff = 2.0 * (b + db / 2.0).cos() * (db / 2.0).sin();
    (diff / b.sin()).ln_1p()
}

/// E(θ + s) − E(θ) evaluated term by term to avoid cancellation.
fn energy_delta(cfg: &EnergyConfig, t: &[f64], s: &[f64]) -> f64 {
    let mut d = 0.0;
    for j in 0..t.len() {
        for k in j + 1..t.len() {
            d -= log_sin_ratio((t[k] - t[j]) / 2.0, (s[k] - s[j]) / 2.0);
        }
        d -= cfg.p * log_sin_ratio(t[j] / 2.0, s[j] / 2.0);
        d += cfg.q * s[j];
    }
    d
}

/// Gradient descent with Armijo backtracking. Trial steps that would leave
/// the ordered region are halved until feasible.
pub fn minimize_energy(cfg: &EnergyConfig, init: &ZeroConfiguration, opts: MinimizeOptions) -> Result<ZeroConfiguration> {
    check_len(cfg, init.thetas())?;
    let mut x = init.clone();
    let mut step = f64::NAN;
    for _ in 0..opts.maxiter {
        let g = energy_grad(cfg, &x)?;
        let gmax = g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if gmax < opts.tol {
            return Ok(x);
        }
        let gg: f64 = g.iter().map(|v| v * v).sum();
        if !step.is_finite() {
            step = 0.1 / gmax;
        }
        let t = x.thetas();
        let accepted = loop {
            let s: Vec<f64> = g.iter().map(|v| -step * v).collect();
            let trial: Vec<f64> = t.iter().zip(&s).map(|(a, b)| a + b).collect();
            if check_admissible(&trial).is_ok() && energy_delta(cfg, t, &s) <= -ARMIJO_C * step * gg {
                break trial;
            }
            step /= 2.0;
            if step * gmax < f64::EPSILON * PI {
                return Err(Error::NonConvergence { what: "energy line search", iterations: 0 });
            }
        };
        x = ZeroConfiguration { thetas: accepted };
        step *= 2.0;
    }
    Err(Error::NonConvergence { what: "minimize_energy", iterations: opts.maxiter })
}

/// z(1−z)y″ − (α+n−β−1 − (n−α−β−1)z)y′ + n(α+β)y for y = Bₙ.
pub fn ode_residual(n: usize, params: Params, z: Complex) -> Result<Complex> {
    let poly = para_poly(n, params)?;
    Ok(ode_residual_of(&poly, params, z))
}

fn ode_residual_of(poly: &PolyCoeffs, params: Params, z: Complex) -> Complex {
    let (a, b) = (params.alpha, params.beta);
    let nf = poly.degree() as f64;
    let (y, d1, d2) = poly.eval_derivs(z);
    z * (c64(1.0, 0.0) - z) * d2 - ((a + nf - b - 1.0) - (-a - b + nf - 1.0) * z) * d1 + (a + b) * nf * y
}
