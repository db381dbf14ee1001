//! Exact characteristic polynomials of matrices with polynomial entries.
//!
//! Two independent routes compute `det(λI − M) = Σ a_i λ^{n−i}`:
//! [`charpoly_traces`] uses power sums and Newton's identities (needs exact
//! division by small integers), [`charpoly_direct`] is Berkowitz's
//! division-free algorithm. [`charpoly_checked`] runs both and insists on
//! exact agreement.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::poly::ScalarPoly;
use crate::scalar::{ExactScalar, GaussianRational, Real};

/// Square matrix of [`ScalarPoly`] entries, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<S = GaussianRational> {
    n: usize,
    entries: Vec<ScalarPoly<S>>,
}

impl<S: ExactScalar> PolyMatrix<S> {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        Self { n, entries: vec![ScalarPoly::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { ScalarPoly::one() } else { ScalarPoly::zero() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> ScalarPoly<S>) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self { n, entries }
    }

    /// Matrix with constant entries.
    pub fn from_constants(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        Self::from_fn(n, |i, j| ScalarPoly::constant(f(i, j)))
    }

    pub fn from_rows(rows: Vec<Vec<ScalarPoly<S>>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Dimension("matrix has no rows".into()));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::Dimension(format!("row {i} has {} entries, expected {n}", r.len())));
        }
        Ok(Self { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &ScalarPoly<S> {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: ScalarPoly<S>) {
        self.entries[i * self.n + j] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ScalarPoly<S>]> + '_ {
        self.entries.chunks(self.n)
    }

    pub fn trace(&self) -> ScalarPoly<S> {
        (0..self.n).fold(ScalarPoly::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "matrix dimensions differ");
        let n = self.n;
        Self::from_fn(n, |i, j| {
            (0..n).fold(ScalarPoly::zero(), |acc, k| acc + self.get(i, k) * rhs.get(k, j))
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "matrix dimensions differ");
        Self::from_fn(self.n, |i, j| self.get(i, j) + rhs.get(i, j))
    }

    /// `M − c·I`.
    pub fn shift(&self, c: &ScalarPoly<S>) -> Self {
        Self::from_fn(self.n, |i, j| {
            if i == j {
                self.get(i, j) - c
            } else {
                self.get(i, j).clone()
            }
        })
    }

    pub fn map<R: ExactScalar>(&self, f: impl Fn(&ScalarPoly<S>) -> ScalarPoly<R>) -> PolyMatrix<R> {
        PolyMatrix { n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    pub fn lift<R: ExactScalar + From<S>>(&self) -> PolyMatrix<R> {
        self.map(|p| p.lift())
    }

    /// Constant term of every entry.
    pub fn at_zero(&self) -> Self {
        self.map(|p| ScalarPoly::constant(p.coeff(0)))
    }

    pub fn evaluate<T: Real>(&self, t: Complex<T>) -> DMatrix<Complex<T>> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j).evaluate(t))
    }

    /// Exact inverse of a matrix whose entries are constants, `None` when
    /// singular or when some entry depends on `t`.
    pub fn inverse_constant(&self) -> Option<Self> {
        let n = self.n;
        if self.entries.iter().any(|p| p.degree().is_some_and(|d| d > 0)) {
            return None;
        }
        let mut a: Vec<Vec<S>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).coeff(0)).collect()).collect();
        let mut inv: Vec<Vec<S>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect()).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].inv()?;
            for j in 0..n {
                a[col][j] = a[col][j].clone() * p.clone();
                inv[col][j] = inv[col][j].clone() * p.clone();
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    a[r][j] = a[r][j].clone() - f.clone() * a[col][j].clone();
                    inv[r][j] = inv[r][j].clone() - f.clone() * inv[col][j].clone();
                }
            }
        }
        Some(Self::from_constants(n, |i, j| inv[i][j].clone()))
    }
}

impl<S: ExactScalar> fmt::Display for PolyMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// `M − (tr M / n)·I`.
pub fn traceless_shift<S: ExactScalar>(m: &PolyMatrix<S>) -> PolyMatrix<S> {
    let mean = m.trace().div_int(m.n() as i64);
    m.shift(&mean)
}

/// Monic `Σ_{i=0}^{n} a_i λ^{n−i}` with `a_0 = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPoly<S = GaussianRational> {
    coeffs: Vec<ScalarPoly<S>>,
}

impl<S: ExactScalar> CharPoly<S> {
    /// Accepts `[a_0, …, a_n]`; rejects non-monic input.
    pub fn new(coeffs: Vec<ScalarPoly<S>>) -> Result<Self> {
        match coeffs.first() {
            None => Err(Error::InvalidArgument("characteristic polynomial has no coefficients".into())),
            Some(a0) if !a0.is_one() => {
                Err(Error::InvalidArgument("characteristic polynomial must be monic (a_0 = 1)".into()))
            }
            Some(_) if coeffs.len() < 2 => Err(Error::InvalidArgument("degree must be at least one".into())),
            Some(_) => Ok(Self { coeffs }),
        }
    }

    /// `λ^n` plus the given lower coefficients `a_1..a_n`.
    pub fn from_lower(lower: Vec<ScalarPoly<S>>) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(lower.len() + 1);
        coeffs.push(ScalarPoly::one());
        coeffs.extend(lower);
        Self::new(coeffs)
    }

    pub fn n(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `a_i`, the coefficient of `λ^{n−i}`.
    pub fn coeff(&self, i: usize) -> &ScalarPoly<S> {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[ScalarPoly<S>] {
        &self.coeffs
    }

    /// `σ_k = (−1)^k a_k`, the trace of the k-th exterior power.
    pub fn sigma(&self, k: usize) -> ScalarPoly<S> {
        if k.is_multiple_of(2) {
            self.coeffs[k].clone()
        } else {
            -&self.coeffs[k]
        }
    }

    pub fn map<R: ExactScalar>(&self, f: impl Fn(&ScalarPoly<S>) -> ScalarPoly<R>) -> CharPoly<R> {
        CharPoly { coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Product of two monic polynomials in `λ`.
    pub fn product(&self, other: &Self) -> Self {
        let mut coeffs = vec![ScalarPoly::zero(); self.n() + other.n() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Self { coeffs }
    }

    /// `a_i(c·t)` for every coefficient.
    pub fn rescale(&self, c: &S) -> Self {
        self.map(|p| p.rescale(c))
    }

    /// Numeric coefficients `[a_0(t), …, a_n(t)]`.
    pub fn coeffs_at<T: Real>(&self, t: Complex<T>) -> Vec<Complex<T>> {
        self.coeffs.iter().map(|p| p.evaluate(t)).collect()
    }

    /// `F(λ)` at parameter `t`.
    pub fn evaluate<T: Real>(&self, t: Complex<T>, lambda: Complex<T>) -> Complex<T> {
        self.coeffs_at(t).into_iter().fold(Complex::new(T::zero(), T::zero()), |acc, a| acc * lambda + a)
    }
}

impl<S: ExactScalar> fmt::Display for CharPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        write!(f, "λ^{n}")?;
        for (i, a) in self.coeffs.iter().enumerate().skip(1) {
            if a.is_zero() && a.trunc().is_none() {
                continue;
            }
            match n - i {
                0 => write!(f, " + [{a}]")?,
                1 => write!(f, " + [{a}]λ")?,
                p => write!(f, " + [{a}]λ^{p}")?,
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial from power sums `s_k = tr M^k` and Newton's
/// identities `a_k = −(s_k + a_1 s_{k−1} + … + a_{k−1} s_1)/k`.
///
/// Valid only over fields containing the rationals.
pub fn charpoly_traces<S: ExactScalar>(m: &PolyMatrix<S>) -> CharPoly<S> {
    let n = m.n();
    let mut power = m.clone();
    let mut s = Vec::with_capacity(n + 1);
    s.push(ScalarPoly::from_int(n as i64));
    for k in 1..=n {
        if k > 1 {
            power = power.matmul(m);
        }
        s.push(power.trace());
    }
    let mut a: Vec<ScalarPoly<S>> = vec![ScalarPoly::one()];
    for k in 1..=n {
        let mut acc = s[k].clone();
        for j in 1..k {
            acc = acc + &a[j] * &s[k - j];
        }
        a.push(-acc.div_int(k as i64));
    }
    CharPoly { coeffs: a }
}

/// Characteristic polynomial by Berkowitz's division-free algorithm.
pub fn charpoly_direct<S: ExactScalar>(m: &PolyMatrix<S>) -> CharPoly<S> {
    let n = m.n();
    let mut vect = vec![ScalarPoly::one(), -m.get(0, 0)];
    for r in 1..n {
        // Toeplitz column [1, −a_rr, −R C, −R M C, …, −R M^{r−1} C] of the
        // bordered leading (r+1)×(r+1) block.
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(ScalarPoly::one());
        toeplitz.push(-m.get(r, r));
        let mut v: Vec<ScalarPoly<S>> = (0..r).map(|i| m.get(i, r).clone()).collect();
        for k in 0..r {
            let rv = (0..r).fold(ScalarPoly::zero(), |acc, j| acc + m.get(r, j) * &v[j]);
            toeplitz.push(-rv);
            if k + 1 < r {
                v = (0..r)
                    .map(|i| (0..r).fold(ScalarPoly::zero(), |acc, j| acc + m.get(i, j) * &v[j]))
                    .collect();
            }
        }
        let mut next = vec![ScalarPoly::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, vj) in vect.iter().enumerate().take(i.min(r) + 1) {
                *slot = &*slot + &(&toeplitz[i - j] * vj);
            }
        }
        vect = next;
    }
    CharPoly { coeffs: vect }
}

/// Runs both routes and returns the result only if they agree exactly.
pub fn charpoly_checked<S: ExactScalar>(m: &PolyMatrix<S>) -> Result<CharPoly<S>> {
    let a = charpoly_traces(m);
    let b = charpoly_direct(m);
    match a.coeffs.iter().zip(&b.coeffs).position(|(x, y)| x != y) {
        Some(index) => Err(Error::RouteMismatch { index }),
        None => Ok(a),
    }
}

/// Matrix entry `c + Σ_k w_k · d_k` affine in named placeholders `d_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineEntry<S = GaussianRational> {
    pub constant: S,
    pub terms: Vec<(String, S)>,
}

impl<S: ExactScalar> AffineEntry<S> {
    /// Parses entries such as `0`, `1`, `d21`, `-d44`, `d22-d11`, `-2d13+1`.
    pub fn parse(src: &str) -> Result<Self> {
        let err = |m: &str| Error::Parse { path: src.to_string(), message: m.to_string() };
        let mut constant = S::zero();
        let mut terms: Vec<(String, S)> = Vec::new();
        let cleaned: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(err("empty entry"));
        }
        let mut pieces = Vec::new();
        let mut start = 0;
        for (k, ch) in cleaned.char_indices() {
            if (ch == '+' || ch == '-') && k > 0 {
                pieces.push(&cleaned[start..k]);
                start = k;
            }
        }
        pieces.push(&cleaned[start..]);
        for piece in pieces {
            let (sign, body) = match piece.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, piece.strip_prefix('+').unwrap_or(piece)),
            };
            let split = body.find(|c: char| !c.is_ascii_digit()).unwrap_or(body.len());
            let (digits, name) = body.split_at(split);
            if digits.is_empty() && name.is_empty() {
                return Err(err("dangling sign"));
            }
            let weight: i64 = if digits.is_empty() { 1 } else { digits.parse().map_err(|_| err("bad integer"))? };
            let w = S::from_integer(sign * weight);
            if name.is_empty() {
                constant = constant + w;
            } else {
                if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(err("bad placeholder name"));
                }
                terms.push((name.to_string(), w));
            }
        }
        Ok(Self { constant, terms })
    }
}

/// Square matrix of [`AffineEntry`] values, the symbolic form of a
/// perturbed Jordan matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixTemplate<S = GaussianRational> {
    n: usize,
    entries: Vec<AffineEntry<S>>,
}

impl<S: ExactScalar> MatrixTemplate<S> {
    pub fn parse(rows: &[&[&str]]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension(format!("template row {i} has {} entries, expected {n}", row.len())));
            }
            for cell in row.iter() {
                entries.push(AffineEntry::parse(cell)?);
            }
        }
        if n == 0 {
            return Err(Error::Dimension("template has no rows".into()));
        }
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &AffineEntry<S> {
        &self.entries[i * self.n + j]
    }

    pub fn placeholders(&self) -> BTreeSet<String> {
        self.entries.iter().flat_map(|e| e.terms.iter().map(|(name, _)| name.clone())).collect()
    }

    /// Substitutes `d_k = c_k · t`; every placeholder needs a slope.
    pub fn instantiate(&self, direction: &BTreeMap<String, S>) -> Result<PolyMatrix<S>> {
        if let Some(missing) = self.placeholders().into_iter().find(|p| !direction.contains_key(p)) {
            return Err(Error::MissingPlaceholder(missing));
        }
        Ok(PolyMatrix::from_fn(self.n, |i, j| {
            let e = self.entry(i, j);
            let slope = e.terms.iter().fold(S::zero(), |acc, (name, w)| acc + w.clone() * direction[name].clone());
            ScalarPoly::constant(e.constant.clone()) + ScalarPoly::monomial(slope, 1)
        }))
    }
}

/// Restricts a template to the line `d_k = c_k t` and returns its
/// characteristic polynomial in `λ` with coefficients in `t`.
pub fn substitute_direction<S: ExactScalar>(
    template: &MatrixTemplate<S>,
    direction: &BTreeMap<String, S>,
) -> Result<CharPoly<S>> {
    charpoly_checked(&template.instantiate(direction)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Valuation;

    type P = ScalarPoly<GaussianRational>;

    fn g(v: i64) -> GaussianRational {
        GaussianRational::from_integer(v)
    }

    fn dir(pairs: &[(&str, i64)]) -> BTreeMap<String, GaussianRational> {
        pairs.iter().map(|(k, v)| (k.to_string(), g(*v))).collect()
    }

    #[test]
    fn traceless_shift_of_diagonal() {
        let m = PolyMatrix::from_constants(2, |i, j| if i == j { g(2 * i as i64 + 1) } else { g(0) });
        let s = traceless_shift(&m);
        assert_eq!(s.get(0, 0), &P::from_int(-1));
        assert_eq!(s.get(1, 1), &P::from_int(1));
        assert!(s.trace().is_zero());
    }

    #[test]
    fn one_by_one() {
        let m = PolyMatrix::from_fn(1, |_, _| P::t());
        let c = charpoly_checked(&m).unwrap();
        assert_eq!(c.coeff(1), &(-P::t()));
    }

    #[test]
    fn h2_direction_gives_lambda_squared_minus_t() {
        let tpl = MatrixTemplate::<GaussianRational>::parse(&[&["0", "1"], &["d21", "0"]]).unwrap();
        let c = substitute_direction(&tpl, &dir(&[("d21", 1)])).unwrap();
        assert!(c.coeff(1).is_zero());
        assert_eq!(c.coeff(2), &(-P::t()));
    }

    #[test]
    fn missing_placeholder_is_named() {
        let tpl = MatrixTemplate::<GaussianRational>::parse(&[&["-d22", "d12"], &["d21", "d22"]]).unwrap();
        let err = tpl.instantiate(&dir(&[("d12", 1), ("d21", 1)])).unwrap_err();
        assert_eq!(err, Error::MissingPlaceholder("d22".into()));
    }

    #[test]
    fn unlifting_h11_direction() {
        let tpl = MatrixTemplate::<GaussianRational>::parse(&[&["-d22", "d12"], &["d21", "d22"]]).unwrap();
        let c = substitute_direction(&tpl, &dir(&[("d22", 3), ("d12", 1), ("d21", -9)])).unwrap();
        assert_eq!(c.coeff(2).ord(), Valuation::Infinite);
    }

    #[test]
    fn zero_direction_gives_pure_power() {
        let tpl = MatrixTemplate::<GaussianRational>::parse(&[
            &["0", "1", "0"],
            &["d21", "-d33", "d23"],
            &["d31", "0", "d33"],
        ])
        .unwrap();
        let zero = dir(&[("d21", 0), ("d23", 0), ("d31", 0), ("d33", 0)]);
        let c = substitute_direction(&tpl, &zero).unwrap();
        assert!(c.coeffs()[1..].iter().all(|a| a.is_zero()));
    }

    #[test]
    fn affine_parser() {
        let e = AffineEntry::<GaussianRational>::parse("-2d13+1-d11").unwrap();
        assert_eq!(e.constant, g(1));
        assert_eq!(e.terms, vec![("d13".to_string(), g(-2)), ("d11".to_string(), g(-1))]);
        assert!(AffineEntry::<GaussianRational>::parse("d1$").is_err());
        assert!(AffineEntry::<GaussianRational>::parse("").is_err());
    }

    #[test]
    fn constant_inverse() {
        let m = PolyMatrix::from_constants(3, |i, j| g([[2, 1, 0], [0, 1, 4], [1, 0, 1]][i][j]));
        let inv = m.inverse_constant().unwrap();
        assert_eq!(m.matmul(&inv), PolyMatrix::identity(3));
        let singular = PolyMatrix::from_constants(2, |_, _| g(1));
        assert!(singular.inverse_constant().is_none());
    }

    #[test]
    fn product_of_charpolys() {
        let a = CharPoly::from_lower(vec![P::zero(), -P::t()]).unwrap();
        let p = a.product(&a);
        assert_eq!(p.n(), 4);
        assert_eq!(p.coeff(2), &(P::from_int(-2) * P::t()));
        assert_eq!(p.coeff(4), &P::t().pow(2));
    }
}
