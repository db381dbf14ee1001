//! Eigenvalues of a one-parameter family at a numeric parameter value.

use nalgebra::{linalg::Schur, DMatrix};
use num_complex::Complex;

use crate::charpoly::{CharPoly, PolyMatrix};
use crate::error::{Error, Result};
use crate::numeric::roots::poly_roots;
use crate::scalar::{ExactScalar, Real};

const SCHUR_MAX_ITER: usize = 10_000;

/// A matrix family `M(t)` known through its dense matrix, its
/// characteristic polynomial, or both.
pub trait SpectralFamily<T: Real>: Sync {
    fn dim(&self) -> usize;

    fn matrix_at(&self, _t: Complex<T>) -> Option<DMatrix<Complex<T>>> {
        None
    }

    /// Coefficients `[a_0(t), …, a_n(t)]` of `det(λI − M(t))`.
    fn charpoly_at(&self, _t: Complex<T>) -> Option<Vec<Complex<T>>> {
        None
    }
}

impl<S: ExactScalar, T: Real> SpectralFamily<T> for PolyMatrix<S> {
    fn dim(&self) -> usize {
        self.n()
    }

    fn matrix_at(&self, t: Complex<T>) -> Option<DMatrix<Complex<T>>> {
        Some(self.evaluate(t))
    }
}

impl<S: ExactScalar, T: Real> SpectralFamily<T> for CharPoly<S> {
    fn dim(&self) -> usize {
        self.n()
    }

    fn charpoly_at(&self, t: Complex<T>) -> Option<Vec<Complex<T>>> {
        Some(self.coeffs_at(t))
    }
}

/// A matrix with its exact characteristic polynomial; the polynomial route
/// is preferred for accuracy at small `t`, the matrix route stays available.
#[derive(Clone, Debug)]
pub struct MatrixWithCharPoly<S: ExactScalar> {
    pub matrix: PolyMatrix<S>,
    pub charpoly: CharPoly<S>,
}

impl<S: ExactScalar, T: Real> SpectralFamily<T> for MatrixWithCharPoly<S> {
    fn dim(&self) -> usize {
        self.matrix.n()
    }

    fn matrix_at(&self, t: Complex<T>) -> Option<DMatrix<Complex<T>>> {
        Some(self.matrix.evaluate(t))
    }

    fn charpoly_at(&self, t: Complex<T>) -> Option<Vec<Complex<T>>> {
        Some(self.charpoly.coeffs_at(t))
    }
}

/// Matrix family given by a closure, for entries that are not polynomial in `t`.
pub struct NumericFamily<T: Real> {
    dim: usize,
    f: Box<dyn Fn(Complex<T>) -> DMatrix<Complex<T>> + Send + Sync>,
}

impl<T: Real> NumericFamily<T> {
    pub fn new(dim: usize, f: impl Fn(Complex<T>) -> DMatrix<Complex<T>> + Send + Sync + 'static) -> Self {
        Self { dim, f: Box::new(f) }
    }
}

impl<T: Real> std::fmt::Debug for NumericFamily<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "NumericFamily(dim={})", self.dim)
    }
}

impl<T: Real> SpectralFamily<T> for NumericFamily<T> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn matrix_at(&self, t: Complex<T>) -> Option<DMatrix<Complex<T>>> {
        Some((self.f)(t))
    }
}

/// Which eigenvalue computation to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EigenRoute {
    /// Characteristic polynomial if available, else the dense matrix.
    #[default]
    Auto,
    Dense,
    CharPoly,
}

/// Eigenvalues of a dense complex matrix via the complex Schur form.
pub fn dense_eigenvalues<T: Real>(m: &DMatrix<Complex<T>>) -> Result<Vec<Complex<T>>> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::Dimension(format!("expected a square matrix, got {}x{}", n, m.ncols())));
    }
    let schur = Schur::try_new(m.clone(), T::epsilon(), SCHUR_MAX_ITER)
        .ok_or(Error::NoConvergence { iterations: SCHUR_MAX_ITER, max_step: f64::NAN })?;
    let (_, upper) = schur.unpack();
    Ok((0..n).map(|i| upper[(i, i)]).collect())
}

/// The `n` eigenvalues of `family` at `t`.
pub fn eigenvalues_at<T: Real, F: SpectralFamily<T> + ?Sized>(
    family: &F,
    t: Complex<T>,
    route: EigenRoute,
) -> Result<Vec<Complex<T>>> {
    let via_poly = |t| family.charpoly_at(t).map(|c| poly_roots(&c));
    let via_dense = |t| family.matrix_at(t).map(|m| dense_eigenvalues(&m));
    let out = match route {
        EigenRoute::Auto => via_poly(t).or_else(|| via_dense(t)),
        EigenRoute::Dense => via_dense(t),
        EigenRoute::CharPoly => via_poly(t),
    };
    out.unwrap_or_else(|| Err(Error::InvalidArgument(format!("family offers no {route:?} eigenvalue route"))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::charpoly_checked;
    use crate::poly::ScalarPoly;
    use crate::scalar::GaussianRational;

    fn h2() -> PolyMatrix<GaussianRational> {
        PolyMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 1) => ScalarPoly::one(),
            (1, 0) => ScalarPoly::t(),
            _ => ScalarPoly::zero(),
        })
    }

    #[test]
    fn h2_square_root_splitting_both_routes() {
        let t = Complex::new(1e-6, 0.0);
        let m = h2();
        let both = MatrixWithCharPoly { charpoly: charpoly_checked(&m).unwrap(), matrix: m };
        for route in [EigenRoute::Dense, EigenRoute::CharPoly] {
            let mut ev = eigenvalues_at::<f64, _>(&both, t, route).unwrap();
            ev.sort_by(|a, b| a.re.total_cmp(&b.re));
            assert!((ev[0] + 1e-3).norm() < 1e-12, "{route:?}");
            assert!((ev[1] - 1e-3).norm() < 1e-12, "{route:?}");
        }
    }

    #[test]
    fn zero_matrix_has_zero_eigenvalues() {
        let m = PolyMatrix::<GaussianRational>::zeros(3);
        let ev = eigenvalues_at::<f64, _>(&m, Complex::new(0.1, 0.0), EigenRoute::Dense).unwrap();
        assert!(ev.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn missing_route_is_an_error() {
        let m = h2();
        assert!(eigenvalues_at::<f64, _>(&m, Complex::new(0.1, 0.0), EigenRoute::CharPoly).is_err());
    }

    #[test]
    fn closure_family() {
        let f = NumericFamily::new(2, |t: Complex<f64>| DMatrix::from_row_slice(2, 2, &[t, Complex::new(1.0, 0.0), Complex::new(0.0, 0.0), -t]));
        let ev = eigenvalues_at(&f, Complex::new(0.5, 0.0), EigenRoute::Auto).unwrap();
        assert!(ev.iter().all(|z| (z.norm() - 0.5).abs() < 1e-14));
    }
}
