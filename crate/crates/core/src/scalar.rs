//! Scalar types.
//!
//! Symbolic work runs over [`ExactScalar`] implementors: plain rationals,
//! Gaussian rationals ([`GaussianRational`], the exact complex numbers used
//! for matrix entries) and quadratic extensions `a + b·√M` of the Gaussian
//! rationals ([`QuadExt`]), which hold exceptional points that sit at
//! irrational parameter values.
//!
//! Floating-point verification code is generic over [`Real`], implemented for
//! `f32` and `f64`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Floating-point scalar for the numeric layer.
pub trait Real:
    nalgebra::RealField
    + Float
    + FloatConst
    + FromPrimitive
    + Copy
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal.
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("literal fits the float type")
    }

    fn to_f64_lossy(self) -> f64 {
        <Self as ToPrimitive>::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Exact field element usable as a polynomial coefficient.
pub trait ExactScalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_integer(v: i64) -> Self;

    fn from_rational(r: BigRational) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Complex conjugate.
    fn conj(&self) -> Self;

    fn to_complex<T: Real>(&self) -> Complex<T>;

    /// Exact division by a nonzero integer.
    fn div_int(&self, k: i64) -> Self {
        assert!(k != 0, "division by zero");
        self.clone() * Self::from_rational(BigRational::new(BigInt::one(), BigInt::from(k)))
    }
}

pub(crate) fn rational_to_real<T: Real>(r: &BigRational) -> T {
    T::lit(r.to_f64().unwrap_or(f64::NAN))
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-1.25"` or `"2e-3"`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Ok(r) = BigRational::from_str(s) {
        return Some(r);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: String = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(if all.is_empty() { "0" } else { &all }).ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Some(value)
}

/// `p/q` string with the denominator omitted when it is one.
pub fn format_rational(r: &BigRational) -> String {
    r.to_string()
}

impl ExactScalar for BigRational {
    fn from_integer(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_rational(r: BigRational) -> Self {
        r
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn to_complex<T: Real>(&self) -> Complex<T> {
        Complex::new(rational_to_real(self), T::zero())
    }
}

/// Exact complex number with rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        Self::real(BigRational::new(numer.into(), denom.into()))
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}i", self.re, -self.im.clone())
                } else {
                    write!(f, "{}+{}i", self.re, self.im)
                }
            }
        }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Self::new(re, im)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl ExactScalar for GaussianRational {
    fn from_integer(v: i64) -> Self {
        Self::from_ints(v, 0)
    }

    fn from_rational(r: BigRational) -> Self {
        Self::real(r)
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    fn to_complex<T: Real>(&self) -> Complex<T> {
        Complex::new(rational_to_real(&self.re), rational_to_real(&self.im))
    }
}

/// `a + b·√M` with `a`, `b` Gaussian rationals.
///
/// `M` must not be a square or minus a square of a rational, otherwise the
/// representation is not a field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QuadExt<const M: i64> {
    pub a: GaussianRational,
    pub b: GaussianRational,
}

impl<const M: i64> QuadExt<M> {
    const RADICAND_OK: () = assert!(
        M > 1 && !is_square(M),
        "quadratic extension radicand must be a positive non-square"
    );

    pub fn new(a: GaussianRational, b: GaussianRational) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::RADICAND_OK;
        Self { a, b }
    }

    /// The element `√M`.
    pub fn sqrt_m() -> Self {
        Self::new(GaussianRational::zero(), GaussianRational::one())
    }

    pub fn radicand() -> i64 {
        M
    }

    pub fn is_base(&self) -> bool {
        self.b.is_zero()
    }
}

const fn is_square(m: i64) -> bool {
    let mut k = 0;
    while k * k < m {
        k += 1;
    }
    k * k == m
}

impl<const M: i64> From<GaussianRational> for QuadExt<M> {
    fn from(a: GaussianRational) -> Self {
        Self::new(a, GaussianRational::zero())
    }
}

impl<const M: i64> fmt::Display for QuadExt<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "({})√{}", self.b, M)
        } else {
            write!(f, "{}+({})√{}", self.a, self.b, M)
        }
    }
}

impl<const M: i64> Zero for QuadExt<M> {
    fn zero() -> Self {
        Self::new(GaussianRational::zero(), GaussianRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<const M: i64> One for QuadExt<M> {
    fn one() -> Self {
        Self::new(GaussianRational::one(), GaussianRational::zero())
    }
}

impl<const M: i64> Add for QuadExt<M> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl<const M: i64> Sub for QuadExt<M> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl<const M: i64> Mul for QuadExt<M> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let m = GaussianRational::from_integer(M);
        let a = self.a.clone() * rhs.a.clone() + m * self.b.clone() * rhs.b.clone();
        let b = self.a * rhs.b + self.b * rhs.a;
        Self::new(a, b)
    }
}

impl<const M: i64> Neg for QuadExt<M> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl<const M: i64> ExactScalar for QuadExt<M> {
    fn from_integer(v: i64) -> Self {
        GaussianRational::from_integer(v).into()
    }

    fn from_rational(r: BigRational) -> Self {
        GaussianRational::real(r).into()
    }

    fn inv(&self) -> Option<Self> {
        // (a + b√M)⁻¹ = (a − b√M) / (a² − M b²)
        let norm = self.a.clone() * self.a.clone()
            - GaussianRational::from_integer(M) * self.b.clone() * self.b.clone();
        let norm_inv = norm.inv()?;
        Some(Self::new(self.a.clone() * norm_inv.clone(), -(self.b.clone() * norm_inv)))
    }

    fn conj(&self) -> Self {
        Self::new(self.a.conj(), self.b.conj())
    }

    fn to_complex<T: Real>(&self) -> Complex<T> {
        let root = Float::sqrt(T::lit(M as f64));
        self.a.to_complex::<T>() + self.b.to_complex::<T>() * root
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/4"), Some(q(3, 4)));
        assert_eq!(parse_rational("-7"), Some(q(-7, 1)));
        assert_eq!(parse_rational("1.5"), Some(q(3, 2)));
        assert_eq!(parse_rational("-0.125"), Some(q(-1, 8)));
        assert_eq!(parse_rational("2e-3"), Some(q(1, 500)));
        assert_eq!(parse_rational(".5"), Some(q(1, 2)));
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational(""), None);
    }

    #[test]
    fn gaussian_inverse_and_lowest_terms() {
        let z = GaussianRational::new(q(2, 4), q(-3, 1));
        assert_eq!(z.re, q(1, 2));
        let w = z.inv().unwrap();
        assert_eq!(z * w, GaussianRational::one());
        assert!(GaussianRational::zero().inv().is_none());
        assert_eq!(GaussianRational::i() * GaussianRational::i(), GaussianRational::from_integer(-1));
    }

    #[test]
    fn quadratic_extension_arithmetic() {
        type Q5 = QuadExt<5>;
        let r5 = Q5::sqrt_m();
        assert_eq!(r5.clone() * r5.clone(), Q5::from_integer(5));
        // golden ratio φ satisfies φ² = φ + 1
        let phi = (Q5::one() + r5.clone()) * Q5::from_rational(q(1, 2));
        assert_eq!(phi.clone() * phi.clone(), phi.clone() + Q5::one());
        let inv = phi.inv().unwrap();
        assert_eq!(inv * phi.clone(), Q5::one());
        let z: Complex<f64> = phi.to_complex();
        assert!((z.re - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussianRational::new(q(1, 2), q(-3, 1)).to_string(), "1/2-3i");
        assert_eq!(GaussianRational::i().to_string(), "1i");
        assert_eq!(GaussianRational::zero().to_string(), "0");
    }
}
