//! Physical example families.
//!
//! Each builder returns a [`ModelFamily`]: a one-parameter family in the
//! perturbation variable `t`, realized as an exact polynomial matrix, an
//! exact characteristic polynomial or a numeric matrix function, together
//! with the splitting it is expected to show.

pub mod cavity;
pub mod circuit;
pub mod hatano_nelson;
pub mod knot;
pub mod lieb;
pub mod liouvillian;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::charpoly::{charpoly_checked, CharPoly, PolyMatrix};
use crate::error::{Error, Result};
use crate::numeric::{MatrixWithCharPoly, NumericFamily, SpectralFamily};
use crate::scalar::{parse_rational, GaussianRational, QuadExt};
use crate::tropical::{analyze, Analysis, SplittingReport};

pub use cavity::{cavity_dynamical, CavityPreset};
pub use circuit::{circuit_laplacian, circuit_printed_charpoly, CircuitPerturbation};
pub use hatano_nelson::{hatano_nelson, HatanoNelsonRegime};
pub use knot::{torus_knot, TorusDirection};
pub use lieb::{lieb, lieb_base_point, lieb_hamiltonian, lieb_numeric, LiebPath};
pub use liouvillian::{
    dissipator, effective_hamiltonian, effective_liouvillian_example, effective_liouvillian_with, jump_free_liouvillian,
    lindblad_liouvillian,
};

type G = GaussianRational;

/// Exact polynomial matrix over one of the supported scalar fields.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactMatrix {
    Gaussian(PolyMatrix<G>),
    Sqrt2(PolyMatrix<QuadExt<2>>),
    Sqrt5(PolyMatrix<QuadExt<5>>),
}

/// Exact characteristic polynomial over one of the supported scalar fields.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactCharPoly {
    Gaussian(CharPoly<G>),
    Sqrt2(CharPoly<QuadExt<2>>),
    Sqrt5(CharPoly<QuadExt<5>>),
}

impl ExactMatrix {
    pub fn n(&self) -> usize {
        match self {
            Self::Gaussian(m) => m.n(),
            Self::Sqrt2(m) => m.n(),
            Self::Sqrt5(m) => m.n(),
        }
    }

    pub fn charpoly(&self) -> Result<ExactCharPoly> {
        Ok(match self {
            Self::Gaussian(m) => ExactCharPoly::Gaussian(charpoly_checked(m)?),
            Self::Sqrt2(m) => ExactCharPoly::Sqrt2(charpoly_checked(m)?),
            Self::Sqrt5(m) => ExactCharPoly::Sqrt5(charpoly_checked(m)?),
        })
    }
}

impl ExactCharPoly {
    pub fn n(&self) -> usize {
        match self {
            Self::Gaussian(c) => c.n(),
            Self::Sqrt2(c) => c.n(),
            Self::Sqrt5(c) => c.n(),
        }
    }

    pub fn analyze(&self) -> Result<Analysis> {
        match self {
            Self::Gaussian(c) => analyze(c),
            Self::Sqrt2(c) => analyze(c),
            Self::Sqrt5(c) => analyze(c),
        }
    }

    fn spectral(&self) -> Box<dyn SpectralFamily<f64>> {
        match self {
            Self::Gaussian(c) => Box::new(c.clone()),
            Self::Sqrt2(c) => Box::new(c.clone()),
            Self::Sqrt5(c) => Box::new(c.clone()),
        }
    }
}

impl fmt::Display for ExactCharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Gaussian(c) => c.fmt(f),
            Self::Sqrt2(c) => c.fmt(f),
            Self::Sqrt5(c) => c.fmt(f),
        }
    }
}

/// How a family is given.
#[derive(Clone)]
pub enum Realization {
    Matrix(ExactMatrix),
    CharPoly(ExactCharPoly),
    /// Entries not polynomial in `t`; verification only.
    Numeric(Arc<NumericFamily<f64>>),
}

impl fmt::Debug for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Matrix(m) => f.debug_tuple("Matrix").field(m).finish(),
            Self::CharPoly(c) => f.debug_tuple("CharPoly").field(c).finish(),
            Self::Numeric(n) => f.debug_tuple("Numeric").field(n).finish(),
        }
    }
}

/// A named one-parameter family with its expected splitting.
#[derive(Clone, Debug)]
pub struct ModelFamily {
    pub name: String,
    /// Fixed parameters as `(name, value)` pairs.
    pub parameters: Vec<(String, String)>,
    pub realization: Realization,
    pub expected: Option<SplittingReport>,
    /// Free-form remarks, e.g. the Jordan structure at the base point.
    pub notes: Vec<String>,
}

impl ModelFamily {
    /// Family from an exact realization, expected to split as its own
    /// tropical analysis predicts.
    pub fn from_exact(name: &str, realization: Realization) -> Result<Self> {
        let mut family = Self { name: name.into(), parameters: vec![], realization, expected: None, notes: vec![] };
        family.expected = Some(family.analyze()?.report);
        Ok(family)
    }

    pub fn dim(&self) -> usize {
        match &self.realization {
            Realization::Matrix(m) => m.n(),
            Realization::CharPoly(c) => c.n(),
            Realization::Numeric(f) => SpectralFamily::<f64>::dim(f.as_ref()),
        }
    }

    /// Exact characteristic polynomial, `None` for numeric families.
    pub fn charpoly(&self) -> Result<Option<ExactCharPoly>> {
        match &self.realization {
            Realization::Matrix(m) => m.charpoly().map(Some),
            Realization::CharPoly(c) => Ok(Some(c.clone())),
            Realization::Numeric(_) => Ok(None),
        }
    }

    /// Tropical analysis of the exact characteristic polynomial.
    pub fn analyze(&self) -> Result<Analysis> {
        self.charpoly()?
            .ok_or_else(|| Error::InvalidArgument(format!("{} has no exact realization", self.name)))?
            .analyze()
    }

    /// Numeric view used for verification; matrices come with their exact
    /// characteristic polynomial so both eigenvalue routes are available.
    pub fn spectral(&self) -> Result<Box<dyn SpectralFamily<f64>>> {
        Ok(match &self.realization {
            Realization::Matrix(ExactMatrix::Gaussian(m)) => {
                Box::new(MatrixWithCharPoly { charpoly: charpoly_checked(m)?, matrix: m.clone() })
            }
            Realization::Matrix(ExactMatrix::Sqrt2(m)) => {
                Box::new(MatrixWithCharPoly { charpoly: charpoly_checked(m)?, matrix: m.clone() })
            }
            Realization::Matrix(ExactMatrix::Sqrt5(m)) => {
                Box::new(MatrixWithCharPoly { charpoly: charpoly_checked(m)?, matrix: m.clone() })
            }
            Realization::CharPoly(c) => c.spectral(),
            Realization::Numeric(f) => Box::new(ArcFamily(f.clone())),
        })
    }
}

struct ArcFamily(Arc<NumericFamily<f64>>);

impl SpectralFamily<f64> for ArcFamily {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn matrix_at(&self, t: num_complex::Complex<f64>) -> Option<nalgebra::DMatrix<num_complex::Complex<f64>>> {
        self.0.matrix_at(t)
    }
}

/// Names accepted by [`build`].
pub const MODEL_NAMES: &[&str] = &[
    "torus_knot",
    "cavity",
    "circuit",
    "hatano_nelson",
    "lieb",
    "lieb_numeric",
    "effective_liouvillian",
];

/// Builds a named family from `key=value` parameters.
///
/// | name | parameters (defaults) |
/// |---|---|
/// | `torus_knot` | `p=2`, `q=3`, `direction=linear\|kx_only`, `ky=1` |
/// | `cavity` | `preset=d12\|d22_ep31\|d22_ep4` |
/// | `circuit` | `perturbation=epsilon\|gamma_detune` |
/// | `hatano_nelson` | `L=4`, `regime=obc\|unidirectional`, `gamma1=1`, `t1=-1`, `t2=-1` |
/// | `lieb`, `lieb_numeric` | `path=arccot_antidiag\|pi_antidiag\|pi_diag`, `eps=3/2`, `series_order=6` |
/// | `effective_liouvillian` | none |
pub fn build(name: &str, params: &BTreeMap<String, String>) -> Result<ModelFamily> {
    let p = Params(params);
    let allowed: &[&str] = match name {
        "torus_knot" => &["p", "q", "direction", "ky"],
        "cavity" => &["preset"],
        "circuit" => &["perturbation"],
        "hatano_nelson" => &["L", "regime", "gamma1", "t1", "t2"],
        "lieb" | "lieb_numeric" => &["path", "eps", "series_order"],
        "effective_liouvillian" => &[],
        _ => {
            return Err(Error::InvalidArgument(format!("unknown example {name:?}; known: {}", MODEL_NAMES.join(", "))))
        }
    };
    if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(Error::InvalidArgument(format!("example {name} has no parameter {k:?}")));
    }
    match name {
        "torus_knot" => {
            let direction = match p.str("direction", "linear") {
                "linear" => TorusDirection::Linear,
                "kx_only" => TorusDirection::KxOnly { ky: G::real(p.rational("ky", "1")?) },
                other => return Err(Error::InvalidArgument(format!("unknown torus direction {other:?}"))),
            };
            torus_knot(p.int("p", 2)?, p.int("q", 3)?, direction)
        }
        "cavity" => cavity_dynamical(p.str("preset", "d12").parse()?),
        "circuit" => circuit_laplacian(p.str("perturbation", "epsilon").parse()?),
        "hatano_nelson" => {
            let l = p.int("L", 4)?;
            let regime = match p.str("regime", "obc") {
                "obc" | "obc_t1_eq_gamma1" => HatanoNelsonRegime::Obc { gamma1: p.rational("gamma1", "1")? },
                "unidirectional" => HatanoNelsonRegime::Unidirectional {
                    t1: p.rational("t1", "-1")?,
                    t2: p.rational("t2", "-1")?,
                },
                other => return Err(Error::InvalidArgument(format!("unknown Hatano-Nelson regime {other:?}"))),
            };
            hatano_nelson(l, regime)
        }
        "lieb" => lieb(p.str("path", "arccot_antidiag").parse()?, &p.rational("eps", "3/2")?, p.int("series_order", 6)?),
        "lieb_numeric" => {
            let eps = p.rational("eps", "3/2")?;
            lieb_numeric(p.str("path", "arccot_antidiag").parse()?, num_traits::ToPrimitive::to_f64(&eps).unwrap_or(f64::NAN))
        }
        _ => effective_liouvillian_example(),
    }
}

struct Params<'a>(&'a BTreeMap<String, String>);

impl Params<'_> {
    fn str<'b>(&'b self, key: &str, default: &'b str) -> &'b str {
        self.0.get(key).map_or(default, |s| s.as_str())
    }

    fn int(&self, key: &str, default: u32) -> Result<u32> {
        match self.0.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| Error::InvalidArgument(format!("parameter {key} must be a non-negative integer, got {v:?}"))),
        }
    }

    fn rational(&self, key: &str, default: &str) -> Result<num_rational::BigRational> {
        let v = self.str(key, default);
        parse_rational(v).ok_or_else(|| Error::InvalidArgument(format!("parameter {key} must be rational, got {v:?}")))
    }
}
