//! Laplacian of two coupled gain/loss resonators. At
//! `γ_EP = (√5 + 1)/2`, `μ_EP = (√5 − 1)/4` it has an EP6, so entries live
//! in `ℚ(i)(√5)`.

use std::str::FromStr;

use crate::charpoly::{CharPoly, PolyMatrix};
use crate::error::{Error, Result};
use crate::models::{ExactMatrix, ModelFamily, Realization, G};
use crate::poly::ScalarPoly;
use crate::scalar::QuadExt;
use crate::tropical::SplittingReport;

type Q5 = QuadExt<5>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircuitPerturbation {
    /// Diagonal entry `ε = t` at the EP6 point.
    Epsilon,
    /// `ε = 0`, `γ = γ_EP + t`.
    GammaDetune,
}

impl FromStr for CircuitPerturbation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "epsilon" => Ok(Self::Epsilon),
            "gamma_detune" => Ok(Self::GammaDetune),
            _ => Err(Error::InvalidArgument(format!("unknown circuit perturbation {s:?}; expected epsilon or gamma_detune"))),
        }
    }
}

fn q(a: G, b: G) -> Q5 {
    Q5::new(a, b)
}

fn gamma_ep() -> Q5 {
    q(G::ratio(1, 2), G::ratio(1, 2))
}

fn mu_ep() -> Q5 {
    q(G::ratio(-1, 4), G::ratio(1, 4))
}

/// The 6×6 Laplacian with polynomial `ε`, `γ` and constant `μ`.
fn laplacian(eps: ScalarPoly<Q5>, gamma: ScalarPoly<Q5>, mu: Q5) -> PolyMatrix<Q5> {
    let i = Q5::from(G::i());
    let k = |v: Q5| ScalarPoly::constant(v);
    let zero = ScalarPoly::<Q5>::zero;
    let ii = || k(i.clone());
    let mi = || k(-i.clone());
    let imu = |c: i64| k(i.clone() * mu.clone() * Q5::from(G::from_ints(c, 0)));
    let ig = gamma.scale(&i);
    PolyMatrix::from_rows(vec![
        vec![eps, zero(), zero(), ii(), zero(), zero()],
        vec![zero(), zero(), zero(), zero(), ii(), zero()],
        vec![zero(), zero(), zero(), zero(), zero(), ii()],
        vec![mi(), ii(), zero(), -&ig, zero(), zero()],
        vec![imu(1), imu(-2), imu(1), zero(), zero(), zero()],
        vec![zero(), ii(), mi(), zero(), zero(), ig],
    ])
    .expect("square by construction")
}

pub fn circuit_laplacian(perturbation: CircuitPerturbation) -> Result<ModelFamily> {
    let (name, matrix, expected) = match perturbation {
        CircuitPerturbation::Epsilon => (
            "epsilon",
            laplacian(ScalarPoly::t(), ScalarPoly::constant(gamma_ep()), mu_ep()),
            SplittingReport::expect(6, &[(1, 6, 6)], 0),
        ),
        CircuitPerturbation::GammaDetune => (
            "gamma_detune",
            laplacian(ScalarPoly::zero(), ScalarPoly::constant(gamma_ep()) + ScalarPoly::t(), mu_ep()),
            SplittingReport::expect(6, &[(1, 4, 4)], 2),
        ),
    };
    Ok(ModelFamily {
        name: "circuit".into(),
        parameters: vec![
            ("perturbation".into(), name.into()),
            ("gamma_ep".into(), gamma_ep().to_string()),
            ("mu_ep".into(), mu_ep().to_string()),
        ],
        realization: Realization::Matrix(ExactMatrix::Sqrt5(matrix)),
        expected: Some(expected),
        notes: vec![],
    })
}

/// The closed-form characteristic polynomials of both perturbations.
pub fn circuit_printed_charpoly(perturbation: CircuitPerturbation) -> CharPoly<Q5> {
    let t = ScalarPoly::<Q5>::t();
    let r = |a: (i64, i64), b: (i64, i64)| q(G::ratio(a.0, a.1), G::ratio(b.0, b.1));
    let ri = |a: (i64, i64), b: (i64, i64)| q(G::ratio(a.0, a.1) * G::i(), G::ratio(b.0, b.1) * G::i());
    let coeffs = match perturbation {
        // λ⁶ − ελ⁵ − ελ³ + (i/2 + i√5/2)ελ² + (3/4 + √5/4)ελ − iε/2
        CircuitPerturbation::Epsilon => vec![
            -&t,
            ScalarPoly::zero(),
            -&t,
            t.scale(&ri((1, 2), (1, 2))),
            t.scale(&r((3, 4), (1, 4))),
            t.scale(&ri((-1, 2), (0, 1))),
        ],
        // λ⁶ + η(η + √5 + 1)λ⁴ + ½η(−√5η + η − 4)λ²
        CircuitPerturbation::GammaDetune => vec![
            ScalarPoly::zero(),
            t.pow(2) + t.scale(&r((1, 1), (1, 1))),
            ScalarPoly::zero(),
            t.pow(2).scale(&r((1, 2), (-1, 2))) - t.scale(&r((2, 1), (0, 1))),
            ScalarPoly::zero(),
            ScalarPoly::zero(),
        ],
    };
    CharPoly::from_lower(coeffs).expect("degree six")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::models::ExactCharPoly;

    #[test]
    fn matrix_reproduces_closed_form_charpolys() {
        for p in [CircuitPerturbation::Epsilon, CircuitPerturbation::GammaDetune] {
            let m = circuit_laplacian(p).unwrap();
            let Some(ExactCharPoly::Sqrt5(c)) = m.charpoly().unwrap() else { unreachable!() };
            assert_eq!(c, circuit_printed_charpoly(p), "{p:?}");
            assert_eq!(m.analyze().unwrap().report, m.expected.unwrap());
        }
    }

    #[test]
    fn ep6_at_zero() {
        let c = circuit_printed_charpoly(CircuitPerturbation::Epsilon);
        assert!(c.coeffs().iter().skip(1).all(|a| a.coeff(0).is_zero()));
    }
}
