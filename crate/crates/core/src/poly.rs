//! Sparse univariate polynomials in the perturbation parameter `t`.
//!
//! A [`ScalarPoly`] stores only nonzero coefficients, keyed by exponent. An
//! optional truncation order `T` marks the value as a power series known only
//! modulo `t^T`; every stored exponent is then below `T`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::One;

use crate::scalar::{ExactScalar, GaussianRational, Real};

/// Lowest power of `t` present in a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(u32),
    /// The zero polynomial.
    Infinite,
    /// Zero up to the truncation order; the true order is `>=` the payload.
    AtLeast(u32),
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_determined(self) -> bool {
        !matches!(self, Valuation::AtLeast(_))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

/// Polynomial (or truncated series) in `t` with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarPoly<S = GaussianRational> {
    terms: BTreeMap<u32, S>,
    trunc: Option<u32>,
}

impl<S: ExactScalar> Default for ScalarPoly<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: ExactScalar> ScalarPoly<S> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new(), trunc: None }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(S::from_integer(c))
    }

    /// `c·t^exp`.
    pub fn monomial(c: S, exp: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms, trunc: None }
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(S::one(), 1)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed and terms at or beyond `trunc` are dropped.
    pub fn from_terms<I>(terms: I, trunc: Option<u32>) -> Self
    where
        I: IntoIterator<Item = (u32, S)>,
    {
        let mut out = Self { terms: BTreeMap::new(), trunc };
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, exp: u32, c: S) {
        if c.is_zero() || self.trunc.is_some_and(|t| exp >= t) {
            return;
        }
        match self.terms.remove(&exp) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(exp, sum);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    /// Returns the series truncated at `order` (keeps the tighter of the two bounds).
    pub fn truncated(&self, order: u32) -> Self {
        let trunc = Some(self.trunc.map_or(order, |t| t.min(order)));
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c.clone())), trunc)
    }

    /// Forgets the truncation order, treating the stored terms as exact.
    pub fn untruncated(&self) -> Self {
        Self { terms: self.terms.clone(), trunc: None }
    }

    pub fn trunc(&self) -> Option<u32> {
        self.trunc
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &S)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: u32) -> S {
        self.terms.get(&exp).cloned().unwrap_or_else(S::zero)
    }

    /// Highest stored exponent.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// No stored terms (a truncated series may still be nonzero beyond its order).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn ord(&self) -> Valuation {
        match (self.terms.keys().next(), self.trunc) {
            (Some(&e), _) => Valuation::Finite(e),
            (None, None) => Valuation::Infinite,
            (None, Some(t)) => Valuation::AtLeast(t),
        }
    }

    /// Coefficient at the lowest exponent.
    pub fn leading(&self) -> Option<(u32, &S)> {
        self.terms.iter().next().map(|(e, c)| (*e, c))
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, v)| (*e, v.clone() * c.clone())), self.trunc)
    }

    pub fn div_int(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, v)| (*e, v.div_int(k))), self.trunc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `p(c·t)`.
    pub fn rescale(&self, c: &S) -> Self {
        let mut out = Self { terms: BTreeMap::new(), trunc: self.trunc };
        let mut power = S::one();
        let mut last = 0u32;
        for (e, v) in &self.terms {
            for _ in last..*e {
                power = power * c.clone();
            }
            last = *e;
            out.add_term(*e, v.clone() * power.clone());
        }
        out
    }

    /// Converts every coefficient into another scalar type.
    pub fn map<R: ExactScalar>(&self, f: impl Fn(&S) -> R) -> ScalarPoly<R> {
        ScalarPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))), self.trunc)
    }

    pub fn lift<R: ExactScalar + From<S>>(&self) -> ScalarPoly<R> {
        self.map(|c| R::from(c.clone()))
    }

    /// Evaluates at complex `z` by sparse Horner.
    pub fn evaluate<T: Real>(&self, z: Complex<T>) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        let mut prev: Option<u32> = None;
        for (e, c) in self.terms.iter().rev() {
            if let Some(p) = prev {
                acc *= z.powu(p - e);
            }
            acc += c.to_complex::<T>();
            prev = Some(*e);
        }
        match prev {
            Some(p) if p > 0 => acc * z.powu(p),
            _ => acc,
        }
    }

    /// Coefficient-wise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(|c| c.conj())
    }

    /// `Σ_k (a t)^k / k!` truncated at `order`.
    pub fn exp_series(a: &S, order: u32) -> Self {
        let mut terms = Vec::with_capacity(order as usize);
        let mut term = S::one();
        let mut fact = BigInt::one();
        for k in 0..order {
            if k > 0 {
                term = term * a.clone();
                fact *= k;
            }
            let inv = S::from_rational(BigRational::new(BigInt::one(), fact.clone()));
            terms.push((k, term.clone() * inv));
        }
        Self::from_terms(terms, Some(order))
    }

    /// `cos(a t)` truncated at `order`.
    pub fn cos_series(a: &S, order: u32) -> Self {
        Self::trig_series(a, order, 0)
    }

    /// `sin(a t)` truncated at `order`.
    pub fn sin_series(a: &S, order: u32) -> Self {
        Self::trig_series(a, order, 1)
    }

    fn trig_series(a: &S, order: u32, parity: u32) -> Self {
        let exp = Self::exp_series(a, order);
        Self::from_terms(
            exp.terms().filter(|(e, _)| e % 2 == parity).map(|(e, c)| {
                let sign = if (e / 2) % 2 == 0 { 1 } else { -1 };
                (e, c.clone() * S::from_integer(sign))
            }),
            Some(order),
        )
    }
}

impl<S: ExactScalar> fmt::Display for ScalarPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{e}")?,
            }
        }
        if let Some(t) = self.trunc {
            write!(f, " + O(t^{t})")?;
        }
        Ok(())
    }
}

fn min_trunc(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<S: ExactScalar> Add for &ScalarPoly<S> {
    type Output = ScalarPoly<S>;
    fn add(self, rhs: Self) -> ScalarPoly<S> {
        let mut out = ScalarPoly::from_terms(
            self.terms.iter().map(|(e, c)| (*e, c.clone())),
            min_trunc(self.trunc, rhs.trunc),
        );
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<S: ExactScalar> Neg for &ScalarPoly<S> {
    type Output = ScalarPoly<S>;
    fn neg(self) -> ScalarPoly<S> {
        ScalarPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
            trunc: self.trunc,
        }
    }
}

impl<S: ExactScalar> Sub for &ScalarPoly<S> {
    type Output = ScalarPoly<S>;
    fn sub(self, rhs: Self) -> ScalarPoly<S> {
        self + &(-rhs)
    }
}

impl<S: ExactScalar> Mul for &ScalarPoly<S> {
    type Output = ScalarPoly<S>;
    fn mul(self, rhs: Self) -> ScalarPoly<S> {
        let mut out = ScalarPoly { terms: BTreeMap::new(), trunc: min_trunc(self.trunc, rhs.trunc) };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca.clone() * cb.clone());
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<S: ExactScalar> $tr for ScalarPoly<S> {
            type Output = ScalarPoly<S>;
            fn $m(self, rhs: Self) -> ScalarPoly<S> {
                (&self).$m(&rhs)
            }
        }
        impl<S: ExactScalar> $tr<&ScalarPoly<S>> for ScalarPoly<S> {
            type Output = ScalarPoly<S>;
            fn $m(self, rhs: &ScalarPoly<S>) -> ScalarPoly<S> {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<S: ExactScalar> Neg for ScalarPoly<S> {
    type Output = ScalarPoly<S>;
    fn neg(self) -> ScalarPoly<S> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    type P = ScalarPoly<GaussianRational>;

    fn c(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    #[test]
    fn ord_of_basic_polynomials() {
        let p = P::from_terms([(2, c(3, 0)), (5, c(1, 0))], None);
        assert_eq!(p.ord(), Valuation::Finite(2));
        assert_eq!(P::zero().ord(), Valuation::Infinite);
        assert_eq!(P::zero().truncated(4).ord(), Valuation::AtLeast(4));
    }

    #[test]
    fn cos_minus_one_has_order_two() {
        let cos = P::cos_series(&c(1, 0), 4);
        let a = &cos - &P::one();
        assert_eq!(a.ord(), Valuation::Finite(2));
        assert_eq!(a.coeff(2), GaussianRational::ratio(-1, 2));
        assert_eq!(a.trunc(), Some(4));
        let four = (&P::from_int(4) * &cos) - P::from_int(4);
        assert_eq!(four.leading().unwrap().1, &c(-2, 0));
    }

    #[test]
    fn sin_series_coefficients() {
        let s = P::sin_series(&c(2, 0), 6);
        assert_eq!(s.coeff(1), c(2, 0));
        assert_eq!(s.coeff(3), GaussianRational::ratio(-8, 6));
        assert_eq!(s.coeff(5), GaussianRational::ratio(32, 120));
        assert_eq!(s.coeff(2), GaussianRational::zero());
    }

    #[test]
    fn multiplication_and_cancellation() {
        let t = P::t();
        assert_eq!(&t * &t.pow(2), P::monomial(c(1, 0), 3));
        let t2 = t.pow(2);
        assert_eq!((&t2 + &(-&t2)).ord(), Valuation::Infinite);
    }

    #[test]
    fn truncation_drops_high_terms() {
        let a = P::from_terms([(0, c(1, 0)), (1, c(1, 0))], Some(3));
        let sq = &a * &a.pow(2);
        assert_eq!(sq.trunc(), Some(3));
        assert_eq!(sq.degree(), Some(2));
        assert_eq!(sq.coeff(2), c(3, 0));
    }

    #[test]
    fn evaluation_matches_direct_float() {
        let p = P::from_terms([(0, c(2, 0)), (3, c(0, -1)), (7, GaussianRational::ratio(1, 3))], None);
        let z = Complex::new(0.3f64, -0.7);
        let direct = Complex::new(2.0, 0.0) + Complex::new(0.0, -1.0) * z.powu(3) + z.powu(7) / 3.0;
        assert!((p.evaluate(z) - direct).norm() < 1e-14);
        assert_eq!(P::zero().evaluate(z), Complex::new(0.0, 0.0));
        assert!((P::t().pow(2).evaluate(Complex::new(0.5f64, 0.0)) - Complex::new(0.25, 0.0)).norm() < 1e-16);
    }

    #[test]
    fn rescale_substitutes_ct() {
        let p = P::from_terms([(1, c(1, 0)), (3, c(1, 0))], None);
        let q = p.rescale(&c(2, 0));
        assert_eq!(q.coeff(1), c(2, 0));
        assert_eq!(q.coeff(3), c(8, 0));
    }
}
