//! Torus-knot family: a `p×p` shift matrix with corner entry `z^q`, so that
//! `F = λ^p − z^q` and the eigenvalues `z^{q/p}` braid into a `(p,q)` torus
//! knot when `z` circles the origin.

use crate::charpoly::PolyMatrix;
use crate::error::{Error, Result};
use crate::models::{ExactMatrix, ModelFamily, Realization, G};
use crate::poly::ScalarPoly;
use crate::tropical::SplittingReport;

#[derive(Clone, Debug, PartialEq)]
pub enum TorusDirection {
    /// `z = t`.
    Linear,
    /// `z = t + i·ky` with `ky ≠ 0`: the base point is not degenerate.
    KxOnly { ky: G },
}

pub fn torus_knot(p: u32, q: u32, direction: TorusDirection) -> Result<ModelFamily> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidArgument("torus knot needs p, q ≥ 1".into()));
    }
    let z = match &direction {
        TorusDirection::Linear => ScalarPoly::t(),
        TorusDirection::KxOnly { ky } => {
            if num_traits::Zero::is_zero(ky) {
                return Err(Error::InvalidArgument("kx-only direction needs ky ≠ 0".into()));
            }
            ScalarPoly::t() + ScalarPoly::constant(G::i() * ky.clone())
        }
    };
    let n = p as usize;
    let corner = z.pow(q);
    let matrix = PolyMatrix::from_fn(n, |i, j| {
        if n == 1 {
            corner.clone()
        } else if j == i + 1 {
            ScalarPoly::one()
        } else if i == n - 1 && j == 0 {
            corner.clone()
        } else {
            ScalarPoly::zero()
        }
    });
    let expected = match direction {
        TorusDirection::Linear => SplittingReport::expect(n, &[(q as i64, p as i64, p)], 0),
        TorusDirection::KxOnly { .. } => SplittingReport::expect(n, &[(0, 1, p)], 0),
    };
    let dir = match &direction {
        TorusDirection::Linear => "linear".to_string(),
        TorusDirection::KxOnly { ky } => format!("kx_only(ky={ky})"),
    };
    Ok(ModelFamily {
        name: "torus_knot".into(),
        parameters: vec![("p".into(), p.to_string()), ("q".into(), q.to_string()), ("direction".into(), dir)],
        realization: Realization::Matrix(ExactMatrix::Gaussian(matrix)),
        expected: Some(expected),
        notes: vec![],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::charpoly_checked;

    fn report(p: u32, q: u32, d: TorusDirection) -> SplittingReport {
        torus_knot(p, q, d).unwrap().analyze().unwrap().report
    }

    #[test]
    fn linear_direction_gives_q_over_p() {
        assert_eq!(report(2, 3, TorusDirection::Linear), SplittingReport::expect(2, &[(3, 2, 2)], 0));
        assert_eq!(report(3, 2, TorusDirection::Linear), SplittingReport::expect(3, &[(2, 3, 3)], 0));
        for p in 1..=4 {
            for q in 1..=4 {
                let m = torus_knot(p, q, TorusDirection::Linear).unwrap();
                assert_eq!(m.analyze().unwrap().report, m.expected.unwrap(), "p={p} q={q}");
            }
        }
    }

    #[test]
    fn kx_only_has_no_nonzero_root() {
        let r = report(3, 2, TorusDirection::KxOnly { ky: G::from_ints(1, 0) });
        assert_eq!(r.nonzero_roots().count(), 0);
        assert_eq!(r.zero_root_count, 0);
    }

    #[test]
    fn charpoly_is_shift_plus_corner() {
        let ExactMatrix::Gaussian(m) = (match torus_knot(3, 2, TorusDirection::Linear).unwrap().realization {
            Realization::Matrix(m) => m,
            _ => unreachable!(),
        }) else {
            unreachable!()
        };
        let c = charpoly_checked(&m).unwrap();
        assert!(c.coeff(1).is_zero() && c.coeff(2).is_zero());
        assert_eq!(c.coeff(3), &-ScalarPoly::<G>::t().pow(2));
    }
}
