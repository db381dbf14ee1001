//! Random exact instances shared by the property and acceptance suites.
#![allow(dead_code)]

use nhdegen::{CharPoly, GaussianRational, PolyMatrix, ScalarPoly};
use num_complex::Complex;
use rand::Rng;

pub type G = GaussianRational;

/// Gaussian rational with numerator parts in `[-b, b]` and denominator in `1..=3`.
pub fn gaussian(rng: &mut impl Rng, b: i64) -> G {
    let d = rng.gen_range(1..=3);
    G::new(
        num_rational::BigRational::new(rng.gen_range(-b..=b).into(), d.into()),
        num_rational::BigRational::new(rng.gen_range(-b..=b).into(), d.into()),
    )
}

/// Sparse polynomial of degree at most `max_deg`; each term present with
/// probability one half.
pub fn poly(rng: &mut impl Rng, max_deg: u32) -> ScalarPoly<G> {
    let mut terms = Vec::new();
    for e in 0..=max_deg {
        if rng.gen_bool(0.5) {
            terms.push((e, gaussian(rng, 4)));
        }
    }
    ScalarPoly::from_terms(terms, None)
}

/// `n×n` polynomial matrix with degree at most two entries.
pub fn matrix(rng: &mut impl Rng, n: usize) -> PolyMatrix<G> {
    PolyMatrix::from_fn(n, |_, _| poly(rng, 2))
}

/// Constant invertible matrix `L·U` with unit diagonals, and its inverse.
pub fn unimodular(rng: &mut impl Rng, n: usize) -> (PolyMatrix<G>, PolyMatrix<G>) {
    let tri = |rng: &mut _, lower: bool| {
        PolyMatrix::from_fn(n, |i, j| {
            if i == j {
                ScalarPoly::one()
            } else if (i > j) == lower {
                ScalarPoly::constant(gaussian(rng, 3))
            } else {
                ScalarPoly::zero()
            }
        })
    };
    let p = tri(rng, true).matmul(&tri(rng, false));
    let inv = p.inverse_constant().expect("unit triangular factors are invertible");
    (p, inv)
}

/// Monic degree-`n` characteristic polynomial whose coefficients have random
/// orders in `0..=3` or vanish identically.
pub fn charpoly(rng: &mut impl Rng, n: usize) -> CharPoly<G> {
    let lower = (0..n)
        .map(|_| {
            if rng.gen_bool(0.2) {
                ScalarPoly::zero()
            } else {
                let v = rng.gen_range(0..=3);
                let mut c = gaussian(rng, 4);
                while num_traits::Zero::is_zero(&c) {
                    c = gaussian(rng, 4);
                }
                &ScalarPoly::monomial(c, v) + &ScalarPoly::monomial(gaussian(rng, 4), v + 1)
            }
        })
        .collect();
    CharPoly::from_lower(lower).expect("degree at least one")
}

/// Depressed cubic coefficients with `|p|, |q| ≤ 1`.
pub fn depressed_cubic(rng: &mut impl Rng) -> (Complex<f64>, Complex<f64>) {
    let mut draw = || Complex::from_polar(rng.gen_range(0.0..=1.0), rng.gen_range(0.0..std::f64::consts::TAU));
    (draw(), draw())
}

/// Largest distance from a root in `a` to its nearest partner in `b`, after
/// greedy one-to-one matching.
pub fn match_distance(a: &[Complex<f64>], b: &[Complex<f64>]) -> f64 {
    let mut free: Vec<Complex<f64>> = b.to_vec();
    let mut worst: f64 = 0.0;
    for x in a {
        let (k, d) = free
            .iter()
            .enumerate()
            .map(|(k, y)| (k, (x - y).norm()))
            .min_by(|u, v| u.1.total_cmp(&v.1))
            .expect("equal lengths");
        free.swap_remove(k);
        worst = worst.max(d);
    }
    worst
}
