//! Tropicalization, Newton polygons and tropical roots.
//!
//! For `F(λ, t) = Σ a_i(t) λ^{n−i}` let `α_i = ord a_i`. The tropical
//! polynomial is `P(ω) = min_i (α_i + (n−i)·ω)` and its points of
//! non-differentiability are the leading exponents of the eigenvalues in `t`.
//! The same information sits in the lower convex hull of the points
//! `(i, α_i)`: each hull edge of slope `ω` and horizontal extent `m` is a
//! root `ω` of multiplicity `m`.
//!
//! Roots are computed twice, once from the hull ([`NewtonPolygon::roots`])
//! and once by scanning the kinks of the min-of-affine-forms representation
//! ([`TropicalPoly::roots`]); [`analyze`] insists that both agree.

pub mod hull;
pub mod plot;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::charpoly::CharPoly;
use crate::error::{Error, Result};
use crate::poly::Valuation;
use crate::scalar::ExactScalar;

/// Rational number or `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(BigRational),
    Infinite,
}

impl ExtRational {
    pub fn int(v: i64) -> Self {
        ExtRational::Finite(BigRational::from_integer(v.into()))
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            ExtRational::Infinite => None,
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
            (ExtRational::Finite(_), ExtRational::Infinite) => Ordering::Less,
            (ExtRational::Infinite, ExtRational::Finite(_)) => Ordering::Greater,
            (ExtRational::Infinite, ExtRational::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(r) => write!(f, "{r}"),
            ExtRational::Infinite => write!(f, "inf"),
        }
    }
}

/// One affine form `α + k·ω` of a tropical polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalTerm {
    pub slope: u32,
    pub intercept: BigRational,
}

/// `min_k (α_k + k·ω)` over finitely many terms, indexed by slope `k = n − i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalPoly {
    n: usize,
    terms: Vec<TropicalTerm>,
    undetermined: bool,
}

impl TropicalPoly {
    /// Terms with a repeated slope keep the smaller intercept.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (u32, BigRational)>, undetermined: bool) -> Self {
        let mut best: Vec<Option<BigRational>> = vec![None; n + 1];
        for (k, a) in terms {
            assert!(k as usize <= n, "slope exceeds degree");
            let slot = &mut best[k as usize];
            if slot.as_ref().is_none_or(|b| a < *b) {
                *slot = Some(a);
            }
        }
        let terms = best
            .into_iter()
            .enumerate()
            .rev()
            .filter_map(|(k, a)| a.map(|intercept| TropicalTerm { slope: k as u32, intercept }))
            .collect();
        Self { n, terms, undetermined }
    }

    /// Degree `n` of the underlying polynomial in `λ`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Terms ordered by decreasing slope.
    pub fn terms(&self) -> &[TropicalTerm] {
        &self.terms
    }

    pub fn is_undetermined(&self) -> bool {
        self.undetermined
    }

    pub fn eval(&self, omega: &BigRational) -> BigRational {
        self.terms
            .iter()
            .map(|t| &t.intercept + omega * BigRational::from_integer(t.slope.into()))
            .min()
            .expect("tropical polynomial has at least one term")
    }

    pub fn eval_f64(&self, omega: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.intercept.to_f64().unwrap_or(f64::NAN) + t.slope as f64 * omega)
            .fold(f64::INFINITY, f64::min)
    }

    /// Kink scan: starting from the steepest form, repeatedly jump to the
    /// form with a smaller slope that takes over first; ties go to the
    /// smallest slope. Every jump is a root whose multiplicity is the slope drop.
    pub fn roots(&self) -> SplittingReport {
        let mut roots = Vec::new();
        let mut cur = &self.terms[0];
        loop {
            let mut next: Option<(BigRational, &TropicalTerm)> = None;
            for cand in self.terms.iter().filter(|c| c.slope < cur.slope) {
                let omega = (&cand.intercept - &cur.intercept) / BigRational::from_integer((cur.slope - cand.slope).into());
                let better = match &next {
                    None => true,
                    Some((w, t)) => omega < *w || (omega == *w && cand.slope < t.slope),
                };
                if better {
                    next = Some((omega, cand));
                }
            }
            match next {
                Some((omega, cand)) => {
                    roots.push(TropicalRoot { omega, multiplicity: cur.slope - cand.slope });
                    cur = cand;
                }
                None => break,
            }
        }
        SplittingReport { n: self.n, roots, zero_root_count: cur.slope as usize, undetermined: self.undetermined }
    }

    /// Min-plus product: `trop(f·g) = trop(f) ⊙ trop(g)` for generic coefficients.
    pub fn product(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push((a.slope + b.slope, &a.intercept + &b.intercept));
            }
        }
        Self::from_terms(self.n + other.n, terms, self.undetermined || other.undetermined)
    }
}

impl fmt::Display for TropicalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| match (t.intercept.is_zero(), t.slope) {
                (_, 0) => format!("{}", t.intercept),
                (true, 1) => "ω".to_string(),
                (true, k) => format!("{k}ω"),
                (false, 1) => format!("{}+ω", t.intercept),
                (false, k) => format!("{}+{k}ω", t.intercept),
            })
            .collect();
        write!(f, "min{{{}}}", parts.join(", "))
    }
}

/// Tropicalizes a characteristic polynomial. Coefficients whose order is
/// hidden by truncation are omitted and flag the result undetermined.
pub fn tropicalize<S: ExactScalar>(c: &CharPoly<S>) -> TropicalPoly {
    let n = c.n();
    let mut undetermined = false;
    let mut terms = Vec::new();
    for (i, a) in c.coeffs().iter().enumerate() {
        match a.ord() {
            Valuation::Finite(v) => terms.push(((n - i) as u32, BigRational::from_integer(v.into()))),
            Valuation::Infinite => {}
            Valuation::AtLeast(_) => undetermined = true,
        }
    }
    TropicalPoly::from_terms(n, terms, undetermined)
}

/// Points `(i, α_i)` and their lower convex hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    points: Vec<(u32, ExtRational)>,
    hull: Vec<(u32, BigRational)>,
    undetermined: bool,
}

impl NewtonPolygon {
    /// `alphas[i] = α_i` for `i = 0..=n`; `α_0` must be finite.
    pub fn from_alphas(alphas: Vec<ExtRational>, undetermined: bool) -> Self {
        assert!(alphas.first().is_some_and(|a| a.finite().is_some()), "α_0 must be finite");
        let finite: Vec<(BigRational, BigRational)> = alphas
            .iter()
            .enumerate()
            .filter_map(|(i, a)| a.finite().map(|v| (BigRational::from_integer((i as u32).into()), v.clone())))
            .collect();
        let hull = hull::lower_hull(&finite)
            .into_iter()
            .map(|k| (finite[k].0.to_integer().to_u32().expect("index fits"), finite[k].1.clone()))
            .collect();
        let points = alphas.into_iter().enumerate().map(|(i, a)| (i as u32, a)).collect();
        Self { points, hull, undetermined }
    }

    pub fn n(&self) -> usize {
        self.points.len() - 1
    }

    pub fn points(&self) -> &[(u32, ExtRational)] {
        &self.points
    }

    /// Hull vertices from `(0, α_0)` to the last finite point.
    pub fn hull(&self) -> &[(u32, BigRational)] {
        &self.hull
    }

    pub fn is_undetermined(&self) -> bool {
        self.undetermined
    }

    /// Hull edges as `(slope, horizontal extent)`.
    pub fn segments(&self) -> Vec<(BigRational, u32)> {
        self.hull
            .windows(2)
            .map(|w| {
                let di = w[1].0 - w[0].0;
                ((&w[1].1 - &w[0].1) / BigRational::from_integer(di.into()), di)
            })
            .collect()
    }

    pub fn roots(&self) -> SplittingReport {
        let roots = self
            .segments()
            .into_iter()
            .map(|(omega, multiplicity)| TropicalRoot { omega, multiplicity })
            .collect();
        let last = self.hull.last().map_or(0, |v| v.0 as usize);
        SplittingReport { n: self.n(), roots, zero_root_count: self.n() - last, undetermined: self.undetermined }
    }
}

pub fn newton_polygon<S: ExactScalar>(c: &CharPoly<S>) -> NewtonPolygon {
    let mut undetermined = false;
    let alphas = c
        .coeffs()
        .iter()
        .map(|a| match a.ord() {
            Valuation::Finite(v) => ExtRational::int(v as i64),
            Valuation::Infinite => ExtRational::Infinite,
            Valuation::AtLeast(_) => {
                undetermined = true;
                ExtRational::Infinite
            }
        })
        .collect();
    NewtonPolygon::from_alphas(alphas, undetermined)
}

/// Leading exponent `ω` shared by `multiplicity` eigenvalues.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalRoot {
    pub omega: BigRational,
    pub multiplicity: u32,
}

impl TropicalRoot {
    pub fn new(numer: i64, denom: i64, multiplicity: u32) -> Self {
        Self { omega: BigRational::new(numer.into(), denom.into()), multiplicity }
    }
}

impl fmt::Display for TropicalRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.omega, self.multiplicity)
    }
}

/// Tropical roots of a degree-`n` polynomial plus the count of eigenvalues
/// that stay identically zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplittingReport {
    pub n: usize,
    /// Sorted by increasing `omega`, distinct values.
    pub roots: Vec<TropicalRoot>,
    pub zero_root_count: usize,
    pub undetermined: bool,
}

impl SplittingReport {
    /// Builds a report from `(numer, denom, multiplicity)` triples.
    pub fn expect(n: usize, roots: &[(i64, i64, u32)], zero_root_count: usize) -> Self {
        let roots = roots.iter().map(|&(p, q, m)| TropicalRoot::new(p, q, m)).collect();
        let r = Self { n, roots, zero_root_count, undetermined: false };
        debug_assert!(r.is_consistent(), "inconsistent expectation {r}");
        r
    }

    pub fn multiplicity_sum(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity as usize).sum()
    }

    /// Multiplicities plus zero roots account for all `n` eigenvalues and
    /// the roots are strictly increasing.
    pub fn is_consistent(&self) -> bool {
        self.multiplicity_sum() + self.zero_root_count == self.n
            && self.roots.windows(2).all(|w| w[0].omega < w[1].omega)
            && self.roots.iter().all(|r| r.multiplicity > 0)
    }

    /// Roots with `ω > 0`.
    pub fn nonzero_roots(&self) -> impl Iterator<Item = &TropicalRoot> + '_ {
        self.roots.iter().filter(|r| !r.omega.is_zero())
    }

    /// `e^{2πi(l−1)/m}` for `l = 1..m`, one list per root.
    pub fn branch_phases(&self) -> Vec<Vec<Complex<f64>>> {
        self.roots
            .iter()
            .map(|r| {
                let m = r.multiplicity as f64;
                (0..r.multiplicity).map(|l| Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * l as f64 / m)).collect()
            })
            .collect()
    }

    /// Cycle lengths expected from a small loop around `t = 0`: a root `p/q`
    /// (lowest terms) of multiplicity `m` contributes `m/q` cycles of length
    /// `q`, identically-zero eigenvalues stay fixed. Sorted decreasing.
    pub fn expected_cycle_lengths(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.n);
        for r in &self.roots {
            let q = r.omega.denom().to_usize().unwrap_or(1).max(1);
            let m = r.multiplicity as usize;
            let cycles = m / q;
            out.extend(std::iter::repeat_n(q, cycles));
            out.extend(std::iter::repeat_n(1, m % q));
        }
        out.extend(std::iter::repeat_n(1, self.zero_root_count));
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Multiset of `(ω, multiplicity)` pairs with equal `ω` merged.
    pub fn root_multiset(&self) -> Vec<(BigRational, u32)> {
        self.roots.iter().map(|r| (r.omega.clone(), r.multiplicity)).collect()
    }

    /// Union with another report, as for a product of polynomials.
    pub fn union(&self, other: &Self) -> Self {
        let mut roots: Vec<TropicalRoot> = self.roots.iter().chain(&other.roots).cloned().collect();
        roots.sort_by(|a, b| a.omega.cmp(&b.omega));
        let mut merged: Vec<TropicalRoot> = Vec::with_capacity(roots.len());
        for r in roots {
            match merged.last_mut() {
                Some(last) if last.omega == r.omega => last.multiplicity += r.multiplicity,
                _ => merged.push(r),
            }
        }
        Self {
            n: self.n + other.n,
            roots: merged,
            zero_root_count: self.zero_root_count + other.zero_root_count,
            undetermined: self.undetermined || other.undetermined,
        }
    }
}

impl fmt::Display for SplittingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.roots.iter().map(|r| r.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))?;
        if self.zero_root_count > 0 {
            write!(f, " + {} zero", self.zero_root_count)?;
        }
        if self.undetermined {
            write!(f, " [undetermined]")?;
        }
        Ok(())
    }
}

/// Tropical data of one characteristic polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    pub tropical: TropicalPoly,
    pub polygon: NewtonPolygon,
    pub report: SplittingReport,
}

/// Tropicalizes `c`, builds its Newton polygon and checks that both root
/// routes agree.
pub fn analyze<S: ExactScalar>(c: &CharPoly<S>) -> Result<Analysis> {
    let tropical = tropicalize(c);
    let polygon = newton_polygon(c);
    let report = polygon.roots();
    let dual = tropical.roots();
    if report != dual {
        return Err(Error::DualMismatch(format!("hull {report} vs kinks {dual}")));
    }
    Ok(Analysis { tropical, polygon, report })
}

/// `p/q` with `q ≤ max_denom` nearest to `x`, by exhaustive search over
/// denominators.
pub fn nearest_rational(x: f64, max_denom: u32) -> BigRational {
    let mut best = (f64::INFINITY, BigRational::zero());
    for q in 1..=max_denom.max(1) {
        let p = (x * q as f64).round();
        let err = (x - p / q as f64).abs();
        if err < best.0 - 1e-15 {
            let (pi, qi) = (p as i64, q as i64);
            let g = pi.gcd(&qi).max(1);
            best = (err, BigRational::new(BigInt::from(pi / g), BigInt::from(qi / g)));
        }
    }
    best.1
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::poly::ScalarPoly;
    use crate::scalar::GaussianRational;

    type P = ScalarPoly<GaussianRational>;

    fn cp(lower: &[&[(u32, i64)]]) -> CharPoly<GaussianRational> {
        let coeffs = lower
            .iter()
            .map(|terms| P::from_terms(terms.iter().map(|&(e, c)| (e, GaussianRational::from_integer(c))), None))
            .collect();
        CharPoly::from_lower(coeffs).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn lambda_squared_minus_t() {
        let a = analyze(&cp(&[&[], &[(1, -1)]])).unwrap();
        assert_eq!(a.tropical.to_string(), "min{2ω, 1}");
        assert_eq!(a.report, SplittingReport::expect(2, &[(1, 2, 2)], 0));
    }

    #[test]
    fn generic_h4_polynomial() {
        let a = analyze(&cp(&[&[], &[(1, 2)], &[(1, 3)], &[(1, 5)]])).unwrap();
        assert_eq!(a.tropical.to_string(), "min{4ω, 1+2ω, 1+ω, 1}");
        assert_eq!(a.report, SplittingReport::expect(4, &[(1, 4, 4)], 0));
    }

    #[test]
    fn pure_power_has_no_roots() {
        let a = analyze(&cp(&[&[], &[], &[]])).unwrap();
        assert!(a.report.roots.is_empty());
        assert_eq!(a.report.zero_root_count, 3);
        assert_eq!(a.polygon.hull(), &[(0, q(0, 1))]);
    }

    #[test]
    fn generic_h21_kink_value() {
        let a = analyze(&cp(&[&[], &[(1, 1)], &[(2, 1)]])).unwrap();
        assert_eq!(a.report, SplittingReport::expect(3, &[(1, 2, 2), (1, 1, 1)], 0));
        assert_eq!(a.tropical.eval(&q(1, 2)), q(3, 2));
        assert_eq!(a.tropical.eval(&q(0, 1)), q(0, 1));
    }

    #[test]
    fn liouvillian_polygon() {
        let alphas = [0, 1, 2, 3].iter().map(|&v| ExtRational::int(v)).collect::<Vec<_>>();
        let mut pts = vec![ExtRational::Infinite; 10];
        for (i, a) in [0usize, 5, 8, 9].iter().zip(alphas) {
            pts[*i] = a;
        }
        let poly = NewtonPolygon::from_alphas(pts, false);
        assert_eq!(poly.segments(), vec![(q(1, 5), 5), (q(1, 3), 3), (q(1, 1), 1)]);
    }

    #[test]
    fn collinear_points_count_in_extent() {
        // λ² − t²: single segment of slope 1 and extent 2
        let a = analyze(&cp(&[&[], &[(2, -1)]])).unwrap();
        assert_eq!(a.report, SplittingReport::expect(2, &[(1, 1, 2)], 0));
        // r̃ = 0 for four trivial blocks: (3,3) is collinear with (0,0)-(4,4)
        let b = analyze(&cp(&[&[], &[], &[(3, 1)], &[(4, 1)]])).unwrap();
        assert_eq!(b.report, SplittingReport::expect(4, &[(1, 1, 4)], 0));
    }

    #[test]
    fn horizontal_segment_is_root_zero() {
        // λ² + (t + i): two O(1) eigenvalues
        let c = CharPoly::from_lower(vec![
            P::zero(),
            P::from_terms([(0, GaussianRational::i()), (1, GaussianRational::one())], None),
        ])
        .unwrap();
        let a = analyze(&c).unwrap();
        assert_eq!(a.report, SplittingReport::expect(2, &[(0, 1, 2)], 0));
        assert_eq!(a.report.nonzero_roots().count(), 0);
    }

    #[test]
    fn truncation_flags_undetermined() {
        let c = CharPoly::from_lower(vec![P::zero(), P::zero().truncated(3)]).unwrap();
        let a = analyze(&c).unwrap();
        assert!(a.report.undetermined);
        assert!(a.tropical.is_undetermined());
    }

    #[test]
    fn product_identity() {
        let a = tropicalize(&cp(&[&[], &[(1, 1)], &[(2, 1)]]));
        let one = TropicalPoly::from_terms(0, [(0, q(0, 1))], false);
        assert_eq!(a.product(&one), a);
    }

    #[test]
    fn expected_cycles() {
        let r = SplittingReport::expect(4, &[(1, 2, 4)], 0);
        assert_eq!(r.expected_cycle_lengths(), vec![2, 2]);
        let r = SplittingReport::expect(4, &[(1, 2, 2), (1, 1, 2)], 0);
        assert_eq!(r.expected_cycle_lengths(), vec![2, 1, 1]);
        let r = SplittingReport::expect(3, &[(1, 2, 2)], 1);
        assert_eq!(r.expected_cycle_lengths(), vec![2, 1]);
    }

    #[test]
    fn branch_phases_are_roots_of_unity() {
        let r = SplittingReport::expect(3, &[(1, 3, 3)], 0);
        let ph = &r.branch_phases()[0];
        for z in ph {
            assert!((z.powu(3) - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn rational_rounding() {
        assert_eq!(nearest_rational(0.3334, 6), q(1, 3));
        assert_eq!(nearest_rational(0.49, 8), q(1, 2));
        assert_eq!(nearest_rational(2.0, 4), q(2, 1));
    }
}
