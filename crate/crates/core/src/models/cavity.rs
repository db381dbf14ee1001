//! Dynamical matrices of cavity-coupled magnon modes, perturbed by the
//! detuning `γ`.
//!
//! The `d22_ep4` preset has entries with `√γ`, which are not polynomial in
//! `γ`; it is realized by its characteristic polynomial
//! `λ⁴ − γλ² + γλ + γ`, which is.

use std::str::FromStr;

use crate::charpoly::{CharPoly, PolyMatrix};
use crate::error::{Error, Result};
use crate::models::{ExactCharPoly, ExactMatrix, ModelFamily, Realization, G};
use crate::poly::ScalarPoly;
use crate::tropical::SplittingReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CavityPreset {
    /// 3×3, EP3 at `γ = 0`.
    D12,
    /// 4×4, EP(3,1) at `γ = 0`.
    D22Ep31,
    /// 4×4, EP4 at `γ = 0`.
    D22Ep4,
}

impl FromStr for CavityPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "d12" => Ok(Self::D12),
            "d22_ep31" => Ok(Self::D22Ep31),
            "d22_ep4" => Ok(Self::D22Ep4),
            _ => Err(Error::InvalidArgument(format!("unknown cavity preset {s:?}; expected d12, d22_ep31 or d22_ep4"))),
        }
    }
}

fn c(v: i64) -> ScalarPoly<G> {
    ScalarPoly::from_int(v)
}

fn g(num: i64, den: i64) -> ScalarPoly<G> {
    ScalarPoly::monomial(G::ratio(num, den), 1)
}

pub fn cavity_dynamical(preset: CavityPreset) -> Result<ModelFamily> {
    let z = || c(0);
    let (name, realization, expected) = match preset {
        CavityPreset::D12 => {
            let m = PolyMatrix::from_rows(vec![
                vec![g(-1, 1), z(), c(1)],
                vec![z(), g(1, 1), c(-1)],
                vec![c(-1), c(-1), z()],
            ])?;
            ("d12", Realization::Matrix(ExactMatrix::Gaussian(m)), SplittingReport::expect(3, &[(1, 3, 3)], 0))
        }
        CavityPreset::D22Ep31 => {
            let m = PolyMatrix::from_rows(vec![
                vec![g(-1, 1), z(), z(), c(1)],
                vec![z(), g(1, 2), z(), z()],
                vec![z(), z(), g(1, 1), c(-1)],
                vec![c(-1), z(), c(-1), z()],
            ])?;
            (
                "d22_ep31",
                Realization::Matrix(ExactMatrix::Gaussian(m)),
                SplittingReport::expect(4, &[(1, 3, 3), (1, 1, 1)], 0),
            )
        }
        CavityPreset::D22Ep4 => {
            let gamma = ScalarPoly::<G>::t();
            let cp = CharPoly::from_lower(vec![z(), -&gamma, gamma.clone(), gamma])?;
            ("d22_ep4", Realization::CharPoly(ExactCharPoly::Gaussian(cp)), SplittingReport::expect(4, &[(1, 4, 4)], 0))
        }
    };
    Ok(ModelFamily {
        name: "cavity".into(),
        parameters: vec![("preset".into(), name.into())],
        realization,
        expected: Some(expected),
        notes: vec![],
    })
}

/// Numeric `d22_ep4` matrix at real `γ ∈ [0, 1]`, for cross-checking its
/// characteristic polynomial.
pub fn d22_ep4_matrix(gamma: f64) -> nalgebra::DMatrix<num_complex::Complex<f64>> {
    let s = gamma.sqrt();
    let a = ((s + 1.0) / 2.0).sqrt();
    let b = ((1.0 - s) / 2.0).sqrt();
    let m = nalgebra::DMatrix::from_row_slice(
        4,
        4,
        &[s, 0.0, 0.0, a, 0.0, -s, 0.0, b, 0.0, 0.0, 0.0, -1.0, -a, -b, -1.0, 0.0],
    );
    m.map(|x| num_complex::Complex::new(x, 0.0))
}
