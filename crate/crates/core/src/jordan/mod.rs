//! Jordan normal forms, their perturbation catalogs and numerical Jordan
//! structure detection.

pub mod catalog;
pub mod weyr;

use std::fmt;

use num_complex::Complex;

use crate::charpoly::PolyMatrix;
use crate::error::{Error, Result};
use crate::poly::ScalarPoly;
use crate::scalar::ExactScalar;

pub use catalog::{catalog_families, PerturbationFamily, DEFAULT_SEED};
pub use weyr::{weyr_structure, DEFAULT_WEYR_TOL};

/// Jordan block sizes, non-increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JordanPartition(Vec<usize>);

impl JordanPartition {
    pub fn new(mut sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::InvalidArgument("partition parts must be positive and non-empty".into()));
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self(sizes))
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// Conjugate partition; for Jordan sizes this is the Weyr characteristic.
    pub fn conjugate(&self) -> Self {
        let largest = self.0[0];
        Self((1..=largest).map(|k| self.0.iter().filter(|&&s| s >= k).count()).collect())
    }

    /// All partitions of `n`, in reverse lexicographic order (`(n)` first).
    pub fn all(n: usize) -> Vec<Self> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<JordanPartition>) {
            if rest == 0 {
                out.push(JordanPartition(cur.clone()));
                return;
            }
            for part in (1..=rest.min(max)).rev() {
                cur.push(part);
                rec(rest - part, part, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, n, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Subscript label such as `H_{2,1,1}`.
    pub fn label(&self) -> String {
        format!("H_{{{}}}", self.0.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","))
    }
}

impl fmt::Display for JordanPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// Block-diagonal Jordan matrix with `λ` on the diagonal and ones on the
/// superdiagonal inside each block.
pub fn jordan_matrix<S: ExactScalar>(p: &JordanPartition, lambda: &S) -> PolyMatrix<S> {
    let n = p.n();
    let mut m = PolyMatrix::zeros(n);
    let mut start = 0;
    for &size in p.sizes() {
        for k in start..start + size {
            m.set(k, k, ScalarPoly::constant(lambda.clone()));
            if k + 1 < start + size {
                m.set(k, k + 1, ScalarPoly::one());
            }
        }
        start += size;
    }
    m
}

/// Numerically detected Jordan structure at one eigenvalue.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanStructure {
    pub eigenvalue: Complex<f64>,
    pub partition: JordanPartition,
    /// `rank((M − λI)^k)` for `k = 0, 1, …` until it stabilises.
    pub rank_sequence: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational;
    use num_traits::Zero;

    #[test]
    fn partitions_of_four() {
        let all: Vec<String> = JordanPartition::all(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(all, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
        assert_eq!(JordanPartition::all(6).len(), 11);
    }

    #[test]
    fn conjugate_partition() {
        let p = JordanPartition::new(vec![1, 3]).unwrap();
        assert_eq!(p.sizes(), &[3, 1]);
        assert_eq!(p.conjugate().sizes(), &[2, 1, 1]);
        assert_eq!(p.conjugate().conjugate(), p);
    }

    #[test]
    fn jordan_matrices() {
        let z = GaussianRational::zero();
        let h2 = jordan_matrix(&JordanPartition::new(vec![2]).unwrap(), &z);
        assert!(h2.get(0, 1).is_one());
        assert!(h2.get(1, 0).is_zero());
        let h1111 = jordan_matrix(&JordanPartition::new(vec![1, 1, 1, 1]).unwrap(), &z);
        assert_eq!(h1111, PolyMatrix::zeros(4));
        let h31 = jordan_matrix(&JordanPartition::new(vec![3, 1]).unwrap(), &z);
        let ones: Vec<(usize, usize)> =
            (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).filter(|&(i, j)| h31.get(i, j).is_one()).collect();
        assert_eq!(ones, vec![(0, 1), (1, 2)]);
    }
}
