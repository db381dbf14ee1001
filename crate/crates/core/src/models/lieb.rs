//! Three-band non-Hermitian Lieb lattice
//!
//! ```text
//! H = [ 0                  1 + e^{i ky}   0                 ]
//!     [ 1 + e^{−i ky} + iε  0              1 + e^{−i kx} − iε ]
//!     [ 0                  1 + e^{i kx}   0                 ]
//! ```
//!
//! with `det H = 0` (a flat band) and `tr H = 0`, so
//! `F = λ³ − S(kx, ky) λ`. Along each path through a degeneracy, `−S` is a
//! trigonometric polynomial in the path parameter `δ`; it is expanded into a
//! truncated series.
//!
//! * `arccot_antidiag`: `ky = −kx = k₀ + 2δ` with `k₀ = 2 arccot(ε/2)`, where
//!   `−S = 4cos 2δ − 4 + 2ε sin 2δ`.
//! * `pi_antidiag`: `kx = π + δ`, `ky = π − δ`, `−S = 4cos δ − 4 + 2ε sin δ`.
//! * `pi_diag`: `kx = ky = π + δ`, `−S = 4cos δ − 4`.

use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex;
use num_rational::BigRational;

use crate::charpoly::CharPoly;
use crate::error::{Error, Result};
use crate::jordan::JordanPartition;
use crate::models::{ExactCharPoly, ModelFamily, Realization, G};
use crate::numeric::NumericFamily;
use crate::poly::ScalarPoly;
use crate::tropical::SplittingReport;

pub const DEFAULT_SERIES_ORDER: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiebPath {
    ArccotAntidiag,
    PiAntidiag,
    PiDiag,
}

impl LiebPath {
    pub const ALL: [LiebPath; 3] = [Self::ArccotAntidiag, Self::PiAntidiag, Self::PiDiag];

    pub fn name(self) -> &'static str {
        match self {
            Self::ArccotAntidiag => "arccot_antidiag",
            Self::PiAntidiag => "pi_antidiag",
            Self::PiDiag => "pi_diag",
        }
    }

    /// Jordan structure of `H` at the base point.
    pub fn base_partition(self) -> JordanPartition {
        match self {
            Self::ArccotAntidiag => JordanPartition::new(vec![3]),
            Self::PiAntidiag | Self::PiDiag => JordanPartition::new(vec![2, 1]),
        }
        .expect("valid partition")
    }

    fn expected(self) -> SplittingReport {
        match self {
            Self::ArccotAntidiag | Self::PiAntidiag => SplittingReport::expect(3, &[(1, 2, 2)], 1),
            Self::PiDiag => SplittingReport::expect(3, &[(1, 1, 2)], 1),
        }
    }

    /// `(kx, ky)` at parameter `δ`.
    fn point(self, eps: f64, delta: Complex<f64>) -> (Complex<f64>, Complex<f64>) {
        let pi = Complex::new(std::f64::consts::PI, 0.0);
        match self {
            Self::ArccotAntidiag => {
                let k = Complex::new(2.0 * (2.0 / eps).atan(), 0.0) + delta * 2.0;
                (-k, k)
            }
            Self::PiAntidiag => (pi + delta, pi - delta),
            Self::PiDiag => (pi + delta, pi + delta),
        }
    }
}

impl FromStr for LiebPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown Lieb path {s:?}; expected arccot_antidiag, pi_antidiag or pi_diag")))
    }
}

/// Bloch Hamiltonian at complex momenta.
pub fn lieb_hamiltonian(kx: Complex<f64>, ky: Complex<f64>, eps: f64) -> DMatrix<Complex<f64>> {
    let one = Complex::new(1.0, 0.0);
    let zero = Complex::new(0.0, 0.0);
    let ie = Complex::new(0.0, eps);
    let e = |k: Complex<f64>| (Complex::<f64>::i() * k).exp();
    DMatrix::from_row_slice(
        3,
        3,
        &[
            zero,
            one + e(ky),
            zero,
            one + e(-ky) + ie,
            zero,
            one + e(-kx) - ie,
            zero,
            one + e(kx),
            zero,
        ],
    )
}

/// Hamiltonian at the degeneracy the path passes through.
pub fn lieb_base_point(path: LiebPath, eps: f64) -> DMatrix<Complex<f64>> {
    let (kx, ky) = path.point(eps, Complex::new(0.0, 0.0));
    lieb_hamiltonian(kx, ky, eps)
}

/// Characteristic polynomial with the trigonometric coefficient expanded to
/// `series_order`; too short an expansion gives an undetermined report.
pub fn lieb(path: LiebPath, eps: &BigRational, series_order: u32) -> Result<ModelFamily> {
    if series_order == 0 {
        return Err(Error::InvalidArgument("series order must be positive".into()));
    }
    if *eps <= BigRational::from_integer(0.into()) {
        return Err(Error::InvalidArgument("Lieb model needs ε > 0".into()));
    }
    let e = G::real(eps.clone());
    let four = G::from_ints(4, 0);
    let (a, with_sine) = match path {
        LiebPath::ArccotAntidiag => (G::from_ints(2, 0), true),
        LiebPath::PiAntidiag => (G::from_ints(1, 0), true),
        LiebPath::PiDiag => (G::from_ints(1, 0), false),
    };
    let mut linear = ScalarPoly::cos_series(&a, series_order).scale(&four) - ScalarPoly::constant(four);
    if with_sine {
        linear = linear + ScalarPoly::sin_series(&a, series_order).scale(&(e * G::from_ints(2, 0)));
    }
    let cp = CharPoly::from_lower(vec![ScalarPoly::zero(), linear, ScalarPoly::zero()])?;
    Ok(ModelFamily {
        name: "lieb".into(),
        parameters: vec![
            ("path".into(), path.name().into()),
            ("eps".into(), eps.to_string()),
            ("series_order".into(), series_order.to_string()),
        ],
        realization: Realization::CharPoly(ExactCharPoly::Gaussian(cp)),
        expected: Some(path.expected()),
        notes: vec![format!("Jordan structure {} at the base point", path.base_partition())],
    })
}

/// The same path with the exact trigonometric Hamiltonian, for numeric checks.
pub fn lieb_numeric(path: LiebPath, eps: f64) -> Result<ModelFamily> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::InvalidArgument("Lieb model needs ε > 0".into()));
    }
    let family = NumericFamily::new(3, move |d: Complex<f64>| {
        let (kx, ky) = path.point(eps, d);
        lieb_hamiltonian(kx, ky, eps)
    });
    Ok(ModelFamily {
        name: "lieb_numeric".into(),
        parameters: vec![("path".into(), path.name().into()), ("eps".into(), eps.to_string())],
        realization: Realization::Numeric(std::sync::Arc::new(family)),
        expected: Some(path.expected()),
        notes: vec![format!("Jordan structure {} at the base point", path.base_partition())],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{weyr_structure, DEFAULT_WEYR_TOL};
    use crate::numeric::{numeric_ord, SampleGrid};
    use crate::poly::Valuation;

    fn eps() -> BigRational {
        BigRational::new(3.into(), 2.into())
    }

    #[test]
    fn tropical_reports() {
        for path in LiebPath::ALL {
            let m = lieb(path, &eps(), DEFAULT_SERIES_ORDER).unwrap();
            assert_eq!(m.analyze().unwrap().report, m.expected.unwrap(), "{path:?}");
        }
    }

    #[test]
    fn short_series_is_undetermined() {
        let m = lieb(LiebPath::PiDiag, &eps(), 2).unwrap();
        assert!(m.analyze().unwrap().report.undetermined);
    }

    #[test]
    fn pi_diag_leading_term() {
        let Realization::CharPoly(ExactCharPoly::Gaussian(c)) = lieb(LiebPath::PiDiag, &eps(), 6).unwrap().realization
        else {
            unreachable!()
        };
        assert_eq!(c.coeff(2).ord(), Valuation::Finite(2));
        assert_eq!(c.coeff(2).coeff(2), G::from_ints(-2, 0));
    }

    #[test]
    fn series_matches_hamiltonian() {
        // a_2(δ) from the series agrees with −S from the matrix at small δ
        for path in LiebPath::ALL {
            let Realization::CharPoly(ExactCharPoly::Gaussian(c)) = lieb(path, &eps(), 10).unwrap().realization else {
                unreachable!()
            };
            let d = Complex::new(1e-2, 0.0);
            let (kx, ky) = path.point(1.5, d);
            let h = lieb_hamiltonian(kx, ky, 1.5);
            let minus_s = -(h[(0, 1)] * h[(1, 0)] + h[(1, 2)] * h[(2, 1)]);
            let series = c.coeff(2).evaluate(d);
            assert!((series - minus_s).norm() < 1e-12, "{path:?}: {series} vs {minus_s}");
        }
    }

    #[test]
    fn weyr_at_base_points() {
        for path in LiebPath::ALL {
            let s = weyr_structure(&lieb_base_point(path, 1.5), Complex::new(0.0, 0.0), DEFAULT_WEYR_TOL).unwrap();
            assert_eq!(s.partition, path.base_partition(), "{path:?}");
        }
    }

    #[test]
    fn numeric_ord_of_linear_coefficient() {
        let grid = SampleGrid::new(0.1, 0.5, 12, 0.0).unwrap();
        for (path, want) in [(LiebPath::PiAntidiag, 1), (LiebPath::PiDiag, 2), (LiebPath::ArccotAntidiag, 1)] {
            let samples: Vec<(f64, Complex<f64>)> = grid
                .points()
                .into_iter()
                .map(|d| {
                    let (kx, ky) = path.point(1.5, d);
                    let h = lieb_hamiltonian(kx, ky, 1.5);
                    (d.norm(), -(h[(0, 1)] * h[(1, 0)] + h[(1, 2)] * h[(2, 1)]))
                })
                .collect();
            let r = numeric_ord(&samples, 3).unwrap();
            assert_eq!(r.alpha, crate::tropical::ExtRational::int(want), "{path:?} slope {}", r.slope);
        }
    }
}
