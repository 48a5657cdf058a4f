//! Quadrature rules on (0, 1) and the integral representations of Pₙ used as
//! independent oracles: the Euler integral, its two-piece split, the
//! contour-type u-integral, the r_p integral and the bi-orthogonality pairing.
//!
//! Integrands receive both t and 1 − t. Near t = 1 the complement is known to
//! full relative precision even though t itself rounds to 1, which is what
//! keeps (1−t)^a with Re a ∈ (−1, 0) integrable under tanh-sinh.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::cnum::{self, c64, cpow, cpow_or_zero, expm1, ln_gamma, rpow, Complex};
use crate::dd::{DdComplex, Scalar};
use crate::error::{Error, Result};
use crate::hyp::{eval_p_dd, Params};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleKind {
    GaussLegendre,
    TanhSinh,
}

/// Nodes and weights on (0, 1). `complements[i] = 1 − nodes[i]`, accurate to
/// full relative precision.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub complements: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: RuleKind,
}

/// Half-width of the tanh-sinh step range; beyond it the distance to the
/// endpoints is below 1e−270.
const TANH_SINH_TMAX: f64 = 6.0;

/// Node count of [`QuadratureRule::default`].
pub const DEFAULT_TANH_SINH_NODES: usize = 513;

impl QuadratureRule {
    /// n-point Gauss–Legendre rule mapped to (0, 1).
    pub fn gauss_legendre(n: usize) -> Self {
        let n = n.max(2);
        let mut nodes = vec![0.0; n];
        let mut complements = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 1.0 / ((1.0 - x * x) * dp * dp);
            // x > 0 here; place the mirrored pair symmetrically.
            nodes[i] = 0.5 * (1.0 - x);
            complements[i] = 0.5 * (1.0 + x);
            weights[i] = w;
            nodes[n - 1 - i] = 0.5 * (1.0 + x);
            complements[n - 1 - i] = 0.5 * (1.0 - x);
            weights[n - 1 - i] = w;
        }
        Self {
            nodes,
            complements,
            weights,
            kind: RuleKind::GaussLegendre,
        }
    }

    /// Tanh-sinh rule on (0, 1) with about `n` nodes on the step range [−6, 6].
    pub fn tanh_sinh(n: usize) -> Self {
        let n = n.max(3);
        let half = (n - 1) / 2;
        let h = TANH_SINH_TMAX / half as f64;
        let mut nodes = Vec::with_capacity(2 * half + 1);
        let mut complements = Vec::with_capacity(2 * half + 1);
        let mut weights = Vec::with_capacity(2 * half + 1);
        for k in -(half as i64)..=(half as i64) {
            let t = k as f64 * h;
            let u = FRAC_PI_2 * t.sinh();
            // node = 1/(1+e^{−2u}), complement = 1/(1+e^{2u}), both without cancellation
            let e = (-2.0 * u.abs()).exp();
            let small = e / (1.0 + e);
            let large = 1.0 / (1.0 + e);
            let (x, xc) = if u >= 0.0 { (large, small) } else { (small, large) };
            // dx/dt = (π/2) cosh t · sech²u / 2 on (0, 1)
            let sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
            let w = h * FRAC_PI_2 * t.cosh() * sech2 * 0.5;
            if x > 0.0 && xc > 0.0 && w > 0.0 {
                nodes.push(x);
                complements.push(xc);
                weights.push(w);
            }
        }
        Self {
            nodes,
            complements,
            weights,
            kind: RuleKind::TanhSinh,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// A rule of the same kind with roughly twice the nodes.
    pub fn refined(&self) -> Self {
        match self.kind {
            RuleKind::GaussLegendre => Self::gauss_legendre(2 * self.len()),
            RuleKind::TanhSinh => Self::tanh_sinh(2 * self.len()),
        }
    }
}

impl Default for QuadratureRule {
    fn default() -> Self {
        Self::tanh_sinh(DEFAULT_TANH_SINH_NODES)
    }
}

/// Legendre Pₙ(x) and its derivative.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Σ wᵢ f(tᵢ, 1 − tᵢ). A non-finite integrand value is an error.
pub fn integrate_01<F>(f: F, rule: &QuadratureRule) -> Result<Complex>
where
    F: Fn(f64, f64) -> Complex,
{
    let mut acc = c64(0.0, 0.0);
    for ((&t, &tc), &w) in rule.nodes.iter().zip(&rule.complements).zip(&rule.weights) {
        let v = f(t, tc);
        if !cnum::is_finite(v) {
            return Err(Error::Integrand(t));
        }
        acc += v * w;
    }
    Ok(acc)
}

/// [`integrate_01`] applied separately on (0, c) and (c, 1), so the endpoint
/// clustering of the rule resolves a near-singularity of f close to t = c.
pub fn integrate_01_split<F>(f: F, c: f64, rule: &QuadratureRule) -> Result<Complex>
where
    F: Fn(f64, f64) -> Complex,
{
    if !(c > 0.0 && c < 1.0) {
        return integrate_01(f, rule);
    }
    let cc = 1.0 - c;
    let left = integrate_01(|s, sc| f(c * s, cc + c * sc), rule)?;
    let right = integrate_01(|s, sc| f(c + cc * s, cc * sc), rule)?;
    Ok(left * c + right * cc)
}

/// ∫₀¹ tᵃ(1−t)ᵇ h(t) dt for Re a, Re b > −1, with h given as h(t, 1−t).
///
/// The part h(0)(1−t) + h(1)t is integrated exactly through Beta functions.
/// The remainder then vanishes at both ends, which matters when a or b has
/// real part near −1 and a sizeable imaginary part: the raw integrand then
/// decays slowly while oscillating in ln t, and tanh-sinh aliases. `near`
/// marks a point of (0, 1) close to which h is nearly singular.
pub(crate) fn integrate_jacobi<H>(a: Complex, b: Complex, h: H, near: Option<f64>, rule: &QuadratureRule) -> Result<Complex>
where
    H: Fn(f64, f64) -> Complex,
{
    let finite_or_zero = |v: Complex| if cnum::is_finite(v) { v } else { c64(0.0, 0.0) };
    let h0 = finite_or_zero(h(0.0, 1.0));
    let h1 = finite_or_zero(h(1.0, 0.0));
    let mut exact = c64(0.0, 0.0);
    if h0 != c64(0.0, 0.0) {
        exact += h0 * cnum::beta_fn(a + 1.0, b + 2.0)?;
    }
    if h1 != c64(0.0, 0.0) {
        exact += h1 * cnum::beta_fn(a + 2.0, b + 1.0)?;
    }
    let g = |t: f64, tc: f64| rpow(t, a) * rpow(tc, b) * (h(t, tc) - h0 * tc - h1 * t);
    let rest = match near {
        Some(c) if c > 0.02 && c < 0.98 => integrate_01_split(g, c, rule)?,
        _ => integrate_01(g, rule)?,
    };
    Ok(exact + rest)
}

/// Γ(2α+1)/(Γ(α+β+1)Γ(α−β)), the normalisation shared by the Euler,
/// split and contour representations.
pub fn euler_prefactor(params: Params) -> Result<Complex> {
    let (a, b) = (params.alpha, params.beta);
    cnum::checked_exp(ln_gamma(a * 2.0 + 1.0)? - ln_gamma(a + b + 1.0)? - ln_gamma(a - b)?)
}

/// Pₙ from its Euler integral
/// Γ(2α+1)/(Γ(α+β+1)Γ(α−β)) ∫₀¹ t^{α+β}(1−t)^{α−β−1}(1−t(1−z))ⁿ dt.
pub fn euler_integral_p(n: usize, z: Complex, params: Params, rule: &QuadratureRule) -> Result<Complex> {
    params.require_omega0()?;
    let pref = euler_prefactor(params)?;
    let e1 = params.alpha + params.beta;
    let e2 = params.alpha - params.beta - 1.0;
    let ni = n as i32;
    let integral = integrate_jacobi(e1, e2, |t, tc| (z * t + tc).powi(ni), None, rule)?;
    Ok(pref * integral)
}

/// The two summands of the split representation, each with its own
/// z-dependent factor:
///
/// I₁ = z^{n+α−β}(z−1)^{β−α} ∫₀¹ tⁿ(1−t)^{α−β−1}((1−zt)/(1−z))^{α+β} dt,
/// I₂ = (1−z)^{−α−β−1} ∫₀¹ tⁿ(1−t)^{α+β}((z−t)/(z−1))^{α−β−1} dt.
///
/// Pₙ = Γ(2α+1)/(Γ(α−β)Γ(α+β+1))·(I₁ + I₂).
pub fn split_integrals(
    n: usize,
    z: Complex,
    params: Params,
    rule: &QuadratureRule,
) -> Result<(Complex, Complex)> {
    params.require_omega0()?;
    if z == c64(1.0, 0.0) {
        return Err(Error::Domain("split representation at z = 1".into()));
    }
    // (z−1)^{β−α} and (1−z)^{−α−β−1} jump across (0, 1), and the two limits
    // disagree with the principal value taken on the segment itself.
    if z.im == 0.0 && z.re > 0.0 && z.re < 1.0 {
        return Err(Error::Domain(format!("split representation on the cut (0, 1) at z = {}", z.re)));
    }
    let (a, b) = (params.alpha, params.beta);
    let one = c64(1.0, 0.0);
    let psi = z / (one - z);
    let inv_zm1 = one / (z - one);
    let nf = n as f64;

    let f1 = cpow_or_zero(z, a - b + nf)? * cpow(z - one, b - a)?;
    let nc = c64(nf, 0.0);
    // the bracket in J₁ vanishes at t = 1/z, the one in J₂ at t = z
    let near1 = (z != c64(0.0, 0.0)).then(|| z.inv().re);
    let j1 = integrate_jacobi(nc, a - b - 1.0, |_, tc| (one + psi * tc).powc_principal(a + b), near1, rule)?;
    let f2 = cpow(one - z, -(a + b) - 1.0)?;
    let j2 = integrate_jacobi(nc, a + b, |_, tc| (one + inv_zm1 * tc).powc_principal(a - b - 1.0), Some(z.re), rule)?;
    Ok((f1 * j1, f2 * j2))
}

/// Principal power that maps 0 to 0, for use inside integrands.
pub(crate) trait PrincipalPow {
    fn powc_principal(self, a: Complex) -> Complex;
}

impl PrincipalPow for Complex {
    #[inline]
    fn powc_principal(self, a: Complex) -> Complex {
        if self.re == 0.0 && self.im == 0.0 {
            return c64(0.0, 0.0);
        }
        cnum::cpow_ln(cnum::ln_unchecked(self), a)
    }
}

/// Pₙ from the u-integral over the path s = z^u:
///
/// Γ(2α+1)/(Γ(α+β+1)Γ(α−β)) ∫₀¹ ((z^u−1)/(z−1))^{α+β} ((z−z^u)/(z−1))^{α−β−1}
/// e^{nu ln z} z^u ln z/(z−1) du.
pub fn contour_integral_p(n: usize, z: Complex, params: Params, rule: &QuadratureRule) -> Result<Complex> {
    params.require_omega0()?;
    if z == c64(0.0, 0.0) || z == c64(1.0, 0.0) {
        return Err(Error::Domain(format!("contour representation at z = {z}")));
    }
    let pref = euler_prefactor(params)?;
    let (a, b) = (params.alpha, params.beta);
    let one = c64(1.0, 0.0);
    let l = cnum::ln_unchecked(z);
    let zm1 = z - one;
    let scale = l / zm1;
    let np1 = (n + 1) as f64;
    let integral = integrate_01(
        |u, uc| {
            let head = expm1(l * u) / zm1;
            let tail = -z * expm1(-l * uc) / zm1;
            head.powc_principal(a + b) * tail.powc_principal(a - b - 1.0) * (l * (np1 * u)).exp() * scale
        },
        rule,
    )?;
    Ok(pref * integral)
}

/// Γ(2α+1)/(Γ(α+β+1)Γ(α−β+1)) · n!/(2α+1)ₙ, the diagonal of the pairing.
pub fn biorth_norm(n: usize, params: Params) -> Result<Complex> {
    let (a, b) = (params.alpha, params.beta);
    let lead = cnum::checked_exp(ln_gamma(a * 2.0 + 1.0)? - ln_gamma(a + b + 1.0)? - ln_gamma(a - b + 1.0)?)?;
    let mut ratio = c64(1.0, 0.0);
    for j in 0..n {
        ratio *= (j + 1) as f64 / (a * 2.0 + 1.0 + j as f64);
    }
    Ok(lead * ratio)
}

/// Default node count for [`inner_product`].
pub fn default_biorth_nodes(n: usize, m: usize) -> usize {
    64 * (n + m + 4)
}

/// Weight (1−e^{iθ})^{α+β}(1−e^{−iθ})^{α−β} with both factors principal.
pub fn weight(theta: f64, params: Params) -> Complex {
    let s = (0.5 * theta).sin();
    let w = c64(2.0 * s * s, -theta.sin());
    let (a, b) = (params.alpha, params.beta);
    w.powc_principal(a + b) * w.conj().powc_principal(a - b)
}

/// Angles and weights for the pairing, split at θ = 0.
struct CircleNodes {
    thetas: Vec<f64>,
    weights: Vec<f64>,
}

fn circle_nodes(npoints: usize) -> CircleNodes {
    let rule = QuadratureRule::tanh_sinh(npoints.div_ceil(2));
    let mut thetas = Vec::with_capacity(2 * rule.len());
    let mut weights = Vec::with_capacity(2 * rule.len());
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        for sign in [-1.0, 1.0] {
            thetas.push(sign * PI * t);
            weights.push(PI * w);
        }
    }
    CircleNodes { thetas, weights }
}

fn p_on_circle(n: usize, theta: f64, params: Params) -> Result<Complex> {
    let s = (0.5 * theta).sin();
    let x = c64(2.0 * s * s, -theta.sin());
    Ok(eval_p_dd(n, DdComplex::from_c64(x), params)?.to_c64())
}

/// (1/2π) ∫_{−π}^{π} Pₙ(e^{iθ}) Q_m(e^{−iθ}) ω(θ) dθ.
///
/// The weight has an algebraic zero and, for complex β, a jump at θ = 0, so
/// each half-interval gets its own tanh-sinh rule. `npoints` is the total node
/// count; `None` selects [`default_biorth_nodes`].
pub fn inner_product(n: usize, m: usize, params: Params, npoints: Option<usize>) -> Result<Complex> {
    let nodes = circle_nodes(npoints.unwrap_or_else(|| default_biorth_nodes(n, m)));
    let refl = params.reflected();
    let mut acc = c64(0.0, 0.0);
    for (&th, &w) in nodes.thetas.iter().zip(&nodes.weights) {
        let v = p_on_circle(n, th, params)? * p_on_circle(m, -th, refl)? * weight(th, params);
        if !cnum::is_finite(v) {
            return Err(Error::Integrand(th));
        }
        acc += v * w;
    }
    Ok(acc / (2.0 * PI))
}

/// All pairings for 0 ≤ n, m ≤ nmax, row-major, sharing one set of samples.
pub fn inner_product_matrix(nmax: usize, params: Params, npoints: Option<usize>) -> Result<Vec<Vec<Complex>>> {
    let nodes = circle_nodes(npoints.unwrap_or_else(|| default_biorth_nodes(nmax, nmax)));
    let refl = params.reflected();
    let k = nodes.thetas.len();
    let mut pv = vec![vec![c64(0.0, 0.0); k]; nmax + 1];
    let mut qv = vec![vec![c64(0.0, 0.0); k]; nmax + 1];
    for deg in 0..=nmax {
        for (i, &th) in nodes.thetas.iter().enumerate() {
            pv[deg][i] = p_on_circle(deg, th, params)?;
            qv[deg][i] = p_on_circle(deg, -th, refl)?;
        }
    }
    let wts: Vec<Complex> = nodes
        .thetas
        .iter()
        .zip(&nodes.weights)
        .map(|(&th, &w)| weight(th, params) * w / (2.0 * PI))
        .collect();
    let mut out = vec![vec![c64(0.0, 0.0); nmax + 1]; nmax + 1];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let mut acc = c64(0.0, 0.0);
            for s in 0..k {
                acc += pv[i][s] * qv[j][s] * wts[s];
            }
            if !cnum::is_finite(acc) {
                return Err(Error::Integrand(f64::NAN));
            }
            *cell = acc;
        }
    }
    Ok(out)
}

/// True when 1 + sψu vanishes for some s ∈ [0, 1], i.e. ψu ∈ (−∞, −1].
pub fn on_ray(u: Complex, psi: Complex) -> bool {
    let w = psi * u;
    w.im == 0.0 && w.re <= -1.0
}

/// r_p(u; ψ, γ) through sin π(γ−p)/π ∫₀¹ t^{p−γ}(1−t)^γ /(1+tuψ) dt.
pub fn rp_integral(u: Complex, psi: Complex, gamma: Complex, p: usize, rule: &QuadratureRule) -> Result<Complex> {
    if gamma == c64(0.0, 0.0) {
        return Err(Error::Domain("γ = 0".into()));
    }
    if gamma.re <= -1.0 {
        return Err(Error::Domain(format!("Re γ = {} ≤ −1", gamma.re)));
    }
    if (p as f64) < gamma.re.floor() {
        return Err(Error::Domain(format!("p = {p} below ⌊Re γ⌋")));
    }
    if on_ray(u, psi) {
        return Err(Error::Ray(format!("uψ = {}", u * psi)));
    }
    let w = u * psi;
    let e1 = -gamma + p as f64;
    let near = (w != c64(0.0, 0.0)).then(|| (-w.inv()).re);
    let integral = integrate_jacobi(e1, gamma, |t, _| (w * t + 1.0).inv(), near, rule)?;
    let s = ((gamma - p as f64) * PI).sin() / PI;
    Ok(s * integral)
}
