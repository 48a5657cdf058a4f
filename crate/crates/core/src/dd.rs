//! Double-double arithmetic (an unevaluated sum hi + lo of two `f64`, about
//! 32 significant digits) and the [`Scalar`] abstraction that lets the series
//! evaluators run either in plain `f64` or in double-double.

use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::cnum::{c64, Complex};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Real double-double number.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const fn new(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let (h, l) = fast_two_sum(hi, lo);
        Self::new(h, l)
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    fn mul_f64(self, b: f64) -> Self {
        let (ch, cl1) = two_prod(self.hi, b);
        let cl3 = self.lo.mul_add(b, cl1);
        Self::renorm(ch, cl3)
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Self::new(x, 0.0)
    }
}

impl From<Dd> for f64 {
    fn from(x: Dd) -> f64 {
        x.hi + x.lo
    }
}

impl Neg for Dd {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.hi, -self.lo)
    }
}

impl Add for Dd {
    type Output = Self;
    fn add(self, y: Self) -> Self {
        let (sh, sl) = two_sum(self.hi, y.hi);
        let (th, tl) = two_sum(self.lo, y.lo);
        let (vh, vl) = fast_two_sum(sh, sl + th);
        Self::renorm(vh, tl + vl)
    }
}

impl Sub for Dd {
    type Output = Self;
    fn sub(self, y: Self) -> Self {
        self + (-y)
    }
}

impl Mul for Dd {
    type Output = Self;
    fn mul(self, y: Self) -> Self {
        let (ch, cl1) = two_prod(self.hi, y.hi);
        let tl0 = self.lo * y.lo;
        let tl1 = self.hi.mul_add(y.lo, tl0);
        let cl2 = self.lo.mul_add(y.hi, tl1);
        Self::renorm(ch, cl1 + cl2)
    }
}

impl Div for Dd {
    type Output = Self;
    fn div(self, y: Self) -> Self {
        // Long division with two correction steps.
        let q1 = self.hi / y.hi;
        let r = self - y.mul_f64(q1);
        let q2 = r.hi / y.hi;
        let r = r - y.mul_f64(q2);
        let q3 = r.hi / y.hi;
        Dd::renorm(q1, q2) + Dd::from(q3)
    }
}

impl Add<f64> for Dd {
    type Output = Self;
    fn add(self, y: f64) -> Self {
        let (sh, sl) = two_sum(self.hi, y);
        Self::renorm(sh, sl + self.lo)
    }
}

impl Sub<f64> for Dd {
    type Output = Self;
    fn sub(self, y: f64) -> Self {
        self + (-y)
    }
}

impl Mul<f64> for Dd {
    type Output = Self;
    fn mul(self, y: f64) -> Self {
        self.mul_f64(y)
    }
}

impl Div<f64> for Dd {
    type Output = Self;
    fn div(self, y: f64) -> Self {
        self / Dd::from(y)
    }
}

impl AddAssign for Dd {
    fn add_assign(&mut self, y: Self) {
        *self = *self + y;
    }
}

/// Field operations shared by [`Complex`] and [`DdComplex`].
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
{
    fn from_c64(z: Complex) -> Self;
    fn to_c64(self) -> Complex;

    fn from_f64(x: f64) -> Self {
        Self::from_c64(c64(x, 0.0))
    }
    fn zero() -> Self {
        Self::from_f64(0.0)
    }
    fn one() -> Self {
        Self::from_f64(1.0)
    }
    /// Modulus rounded to `f64`.
    fn abs(self) -> f64 {
        self.to_c64().norm()
    }
}

impl Scalar for Complex {
    #[inline]
    fn from_c64(z: Complex) -> Self {
        z
    }
    #[inline]
    fn to_c64(self) -> Complex {
        self
    }
}

/// Complex number with double-double components.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DdComplex {
    pub re: Dd,
    pub im: Dd,
}

impl DdComplex {
    pub fn new(re: Dd, im: Dd) -> Self {
        Self { re, im }
    }

    pub fn norm_sqr(self) -> Dd {
        self.re * self.re + self.im * self.im
    }

    pub fn scale(self, s: Dd) -> Self {
        Self::new(self.re * s, self.im * s)
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }
}

impl Scalar for DdComplex {
    fn from_c64(z: Complex) -> Self {
        Self::new(Dd::from(z.re), Dd::from(z.im))
    }
    fn to_c64(self) -> Complex {
        c64(f64::from(self.re), f64::from(self.im))
    }
}

impl Add for DdComplex {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for DdComplex {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for DdComplex {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

impl Div for DdComplex {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let d = o.norm_sqr();
        Self::new(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )
    }
}

impl Neg for DdComplex {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl AddAssign for DdComplex {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl SubAssign for DdComplex {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl MulAssign for DdComplex {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl DivAssign for DdComplex {
    fn div_assign(&mut self, o: Self) {
        *self = *self / o;
    }
}

/// sin and cos of a double-double argument with |x| ≤ 2, by Taylor series.
pub fn sin_cos(x: Dd) -> (Dd, Dd) {
    debug_assert!(f64::from(x).abs() <= 2.0);
    let x2 = x * x;
    let mut s = x;
    let mut c = Dd::from(1.0);
    let mut ts = x;
    let mut tc = Dd::from(1.0);
    for k in 1..40 {
        let k = k as f64;
        ts = -ts * x2 / ((2.0 * k) * (2.0 * k + 1.0));
        tc = -tc * x2 / ((2.0 * k - 1.0) * (2.0 * k));
        s += ts;
        c += tc;
        if f64::from(ts).abs() < 1e-34 && f64::from(tc).abs() < 1e-34 {
            break;
        }
    }
    (s, c)
}

/// 1 − e^{iw} for real |w| ≤ π, computed as 2 sin²(w/2) − i sin w.
pub fn one_minus_expi(w: Dd) -> DdComplex {
    let (s, c) = sin_cos(w * 0.5);
    DdComplex::new(s * s * 2.0, -(s * c * 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_round_trip() {
        let a = DdComplex::from_c64(c64(1.25, -0.5));
        let b = DdComplex::from_c64(c64(-0.3, 2.0));
        let q = (a * b) / b;
        let err = (q - a).to_c64().norm();
        assert!(err < 1e-30, "{err}");
        let want = c64(1.25, -0.5) * c64(-0.3, 2.0);
        assert!(((a * b).to_c64() - want).norm() < 1e-15);
    }

    #[test]
    fn sin_cos_small_and_moderate() {
        let (s, c) = sin_cos(Dd::from(0.5));
        assert!((f64::from(s) - 0.5f64.sin()).abs() < 1e-16);
        assert!((f64::from(c) - 0.5f64.cos()).abs() < 1e-16);
        let (s, c) = sin_cos(Dd::from(1.9));
        let one = s * s + c * c - 1.0;
        assert!(f64::from(one).abs() < 1e-30);
    }

    #[test]
    fn real_operations_are_double_double_accurate() {
        let third = Dd::from(1.0) / Dd::from(3.0);
        assert!(f64::from(third * 3.0 - 1.0).abs() < 1e-31);
        let a = Dd::from(1.25);
        let b = Dd::from(-0.3);
        assert!(f64::from((a * b) / b - a).abs() < 1e-31);
        let s = Dd::from(0.1) + Dd::from(1e-20) - Dd::from(0.1);
        assert!((f64::from(s) - 1e-20).abs() < 1e-34);
    }

    #[test]
    fn one_minus_expi_tiny_angle() {
        // 1 − e^{iw} ≈ w²/2 − i w for tiny w, with no cancellation
        let w = 1e-9;
        let v = one_minus_expi(Dd::from(w)).to_c64();
        assert!((v.re - w * w / 2.0).abs() < 1e-32);
        assert!((v.im + w).abs() < 1e-24);
    }
}
