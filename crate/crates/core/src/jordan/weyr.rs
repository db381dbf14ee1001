//! Jordan structure from numerical rank sequences.
//!
//! With `A = M − λI` and `r_k = rank A^k`, the number of Jordan blocks of
//! size `≥ k` at `λ` is `w_k = r_{k−1} − r_k` (the Weyr characteristic). The
//! block sizes are the conjugate partition of `w`.
//!
//! Ranks count singular values of `A^k` above `tol · σ_max(A)^k`, so that the
//! threshold scales like the powers themselves.

use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::jordan::{JordanPartition, JordanStructure};
use crate::scalar::Real;

pub const DEFAULT_WEYR_TOL: f64 = 1e-8;

/// Rank of `m` with absolute threshold, plus the ratio between the smallest
/// kept and the largest dropped singular value (the gap, `∞` if one side is empty).
fn rank_with_gap<T: Real>(m: &DMatrix<Complex<T>>, threshold: T) -> (usize, f64) {
    let sv = m.clone().singular_values();
    let mut kept = T::infinity();
    let mut dropped = T::zero();
    let mut rank = 0;
    for s in sv.iter() {
        if *s > threshold {
            rank += 1;
            kept = Float::min(kept, *s);
        } else {
            dropped = Float::max(dropped, *s);
        }
    }
    let gap = if dropped <= T::zero() || kept.is_infinite() {
        f64::INFINITY
    } else {
        (kept / dropped).to_f64_lossy()
    };
    (rank, gap)
}

/// Jordan partition of `m` at eigenvalue `lambda`.
pub fn weyr_structure<T: Real>(m: &DMatrix<Complex<T>>, lambda: Complex<T>, tol: T) -> Result<JordanStructure> {
    let n = m.nrows();
    if n == 0 || m.ncols() != n {
        return Err(Error::Dimension(format!("expected a square matrix, got {}x{}", m.nrows(), m.ncols())));
    }
    if tol.partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let a = m - DMatrix::<Complex<T>>::identity(n, n) * lambda;
    let smax = a.clone().singular_values().iter().copied().fold(T::zero(), Float::max);
    let mut ranks = vec![n];
    let mut gaps = Vec::new();
    if smax > T::zero() {
        let mut power = DMatrix::<Complex<T>>::identity(n, n);
        for k in 1..=n {
            power = &power * &a;
            let threshold = tol * Float::powi(smax, k as i32);
            let (rank, gap) = rank_with_gap(&power, threshold);
            ranks.push(rank);
            gaps.push(gap);
            if rank == ranks[k - 1] {
                break;
            }
        }
    } else {
        ranks.push(0);
    }
    let weyr: Vec<usize> = ranks.windows(2).map(|w| w[0].saturating_sub(w[1])).collect();
    let valid = ranks.windows(2).all(|w| w[1] <= w[0]) && weyr.windows(2).all(|w| w[1] <= w[0]);
    if !valid {
        return Err(Error::ToleranceAmbiguity { ranks, gaps });
    }
    let weyr: Vec<usize> = weyr.into_iter().filter(|&w| w > 0).collect();
    if weyr.is_empty() {
        return Err(Error::InvalidArgument("lambda is not an eigenvalue at this tolerance".into()));
    }
    let partition = JordanPartition::new(weyr)?.conjugate();
    Ok(JordanStructure {
        eigenvalue: Complex::new(lambda.re.to_f64_lossy(), lambda.im.to_f64_lossy()),
        partition,
        rank_sequence: ranks,
    })
}
