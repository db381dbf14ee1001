//! Exact classification of eigenvalue splitting at degeneracies of
//! non-Hermitian matrices.
//!
//! A one-parameter family `M(t)` with a degenerate eigenvalue at `t = 0` is
//! reduced to its characteristic polynomial `F(λ, t)` over exact scalars. The
//! orders `α_i = ord a_i(t)` of its coefficients are tropicalized and the
//! Newton polygon of the points `(i, α_i)` gives every leading exponent
//! `λ ~ t^ω` together with the number of eigenvalues that share it.
//!
//! * [`poly`] and [`charpoly`]: exact polynomial and matrix arithmetic.
//! * [`tropical`]: tropical polynomials, Newton polygons and their roots.
//! * [`jordan`]: Jordan forms, perturbation catalogs and Weyr detection.
//! * [`numeric`]: floating-point cross-checks (exponent fits, braids).
//! * [`models`]: physical example families.
//! * [`json`]: the JSON exchange format.

pub mod charpoly;
pub mod error;
pub mod jordan;
pub mod json;
pub mod models;
pub mod numeric;
pub mod poly;
pub mod scalar;
pub mod tropical;

pub use charpoly::{charpoly_checked, charpoly_direct, charpoly_traces, CharPoly, MatrixTemplate, PolyMatrix};
pub use error::{Error, Result};
pub use jordan::{catalog_families, weyr_structure, JordanPartition, JordanStructure, PerturbationFamily};
pub use models::{ExactCharPoly, ExactMatrix, ModelFamily};
pub use numeric::{braid_loop, fit_exponents, BraidOptions, BraidPermutation, FitOptions, SampleGrid, VerificationResult};
pub use poly::{ScalarPoly, Valuation};
pub use scalar::{ExactScalar, GaussianRational, QuadExt, Real};
pub use tropical::{analyze, SplittingReport, TropicalPoly, TropicalRoot};

/// Exact complex rational, the default coefficient type.
pub type ExactComplex = GaussianRational;
/// `ℚ(i)(√2)`.
pub type Sqrt2 = QuadExt<2>;
/// `ℚ(i)(√5)`.
pub type Sqrt5 = QuadExt<5>;
/// Polynomial in `t` over exact complex rationals.
pub type Poly = ScalarPoly<ExactComplex>;
