//! Braid permutations from eigenvalue continuation around `t = ε0 e^{iφ}`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numeric::eigen::{eigenvalues_at, EigenRoute, SpectralFamily};
use crate::numeric::fit::ZERO_FLOOR;
use crate::numeric::track::{match_indices, track_path};

/// Minimal eigenvalue gap on the loop, relative to the largest modulus.
pub const LOOP_GAP_FACTOR: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BraidOptions {
    pub eps0: f64,
    pub steps: usize,
    pub route: EigenRoute,
    pub parallel: bool,
}

impl Default for BraidOptions {
    fn default() -> Self {
        Self { eps0: 1e-3, steps: 360, route: EigenRoute::Auto, parallel: false }
    }
}

/// Result of one counter-clockwise loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidPermutation {
    /// `permutation[i] = j`: the eigenvalue starting at index `i` ends where
    /// eigenvalue `j` started (0-based).
    pub permutation: Vec<usize>,
    /// Cycle lengths, decreasing.
    pub cycle_lengths: Vec<usize>,
    /// Indices of identically zero eigenvalues, kept fixed.
    pub zero_tracks: Vec<usize>,
}

/// Cycle lengths of a permutation, decreasing.
pub fn cycle_lengths(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Tracks every eigenvalue once around the loop and reads off the
/// permutation between start and end.
pub fn braid_loop<F: SpectralFamily<f64> + ?Sized>(family: &F, opts: &BraidOptions) -> Result<BraidPermutation> {
    if opts.eps0.is_nan() || opts.eps0 <= 0.0 || opts.steps < 3 {
        return Err(Error::InvalidArgument("loop needs eps0 > 0 and at least 3 steps".into()));
    }
    let ts: Vec<Complex<f64>> = (0..=opts.steps)
        .map(|k| Complex::from_polar(opts.eps0, std::f64::consts::TAU * k as f64 / opts.steps as f64))
        .collect();
    let start = eigenvalues_at(family, ts[0], opts.route)?;
    let scale = match family.matrix_at(ts[0]) {
        Some(m) => m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
        None => start.iter().map(|z| z.norm()).fold(0.0, f64::max),
    }
    .max(1.0);
    let floor = ZERO_FLOOR * scale;
    let tracks = track_path(family, &ts, opts.route, floor, opts.parallel)?;
    let n = tracks.n();
    let zero_tracks: Vec<usize> =
        (0..n).filter(|&j| tracks.values.iter().all(|v| v[j].norm() <= floor)).collect();
    let moving: Vec<usize> = (0..n).filter(|j| !zero_tracks.contains(j)).collect();

    let max_modulus = tracks.values.iter().flat_map(|v| moving.iter().map(move |&j| v[j].norm())).fold(0.0, f64::max);
    let mut min_gap = f64::INFINITY;
    for v in &tracks.values {
        for (a, &i) in moving.iter().enumerate() {
            for &j in &moving[a + 1..] {
                min_gap = min_gap.min((v[i] - v[j]).norm());
            }
        }
    }
    let threshold = LOOP_GAP_FACTOR * max_modulus;
    if moving.len() > 1 && min_gap < threshold {
        return Err(Error::LoopTooCoarse { min_gap, threshold });
    }

    let first: Vec<Complex<f64>> = moving.iter().map(|&j| tracks.values[0][j]).collect();
    let last: Vec<Complex<f64>> = moving.iter().map(|&j| tracks.values[opts.steps][j]).collect();
    let (assigned, _) = match_indices(&last, &first, floor);
    let mut permutation: Vec<usize> = (0..n).collect();
    for (a, &i) in moving.iter().enumerate() {
        permutation[i] = moving[assigned[a]];
    }
    Ok(BraidPermutation { cycle_lengths: cycle_lengths(&permutation), permutation, zero_tracks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::eigen::NumericFamily;
    use nalgebra::DMatrix;

    fn companion(n: usize) -> NumericFamily<f64> {
        // λⁿ = t
        NumericFamily::new(n, move |t: Complex<f64>| {
            DMatrix::from_fn(n, n, |i, j| {
                if j == i + 1 {
                    Complex::new(1.0, 0.0)
                } else if i == n - 1 && j == 0 {
                    t
                } else {
                    Complex::new(0.0, 0.0)
                }
            })
        })
    }

    #[test]
    fn cycle_decomposition() {
        assert_eq!(cycle_lengths(&[1, 2, 0, 3]), vec![3, 1]);
        assert_eq!(cycle_lengths(&[1, 0, 3, 2]), vec![2, 2]);
        assert_eq!(cycle_lengths(&[0, 1]), vec![1, 1]);
    }

    #[test]
    fn nth_root_gives_single_cycle() {
        for n in 2..=4 {
            let b = braid_loop(&companion(n), &BraidOptions::default()).unwrap();
            assert_eq!(b.cycle_lengths, vec![n]);
        }
    }

    #[test]
    fn identity_for_linear_splitting() {
        let f = NumericFamily::new(2, |t: Complex<f64>| {
            DMatrix::from_row_slice(2, 2, &[t, Complex::new(0.0, 0.0), Complex::new(0.0, 0.0), -t])
        });
        let b = braid_loop(&f, &BraidOptions::default()).unwrap();
        assert_eq!(b.permutation, vec![0, 1]);
    }

    #[test]
    fn crossing_is_detected() {
        // eigenvalues ±(t − ε0) collide on the loop
        let f = NumericFamily::new(2, |t: Complex<f64>| {
            let z = t - Complex::new(1e-3, 0.0);
            DMatrix::from_row_slice(2, 2, &[z, Complex::new(0.0, 0.0), Complex::new(0.0, 0.0), -z])
        });
        assert!(matches!(braid_loop(&f, &BraidOptions::default()), Err(Error::LoopTooCoarse { .. })));
    }

    #[test]
    fn zero_eigenvalues_stay_fixed() {
        let f = NumericFamily::new(3, |t: Complex<f64>| {
            let mut m = DMatrix::zeros(3, 3);
            m[(0, 1)] = Complex::new(1.0, 0.0);
            m[(1, 0)] = t;
            m
        });
        let b = braid_loop(&f, &BraidOptions::default()).unwrap();
        assert_eq!(b.cycle_lengths, vec![2, 1]);
        assert_eq!(b.zero_tracks, vec![2]);
    }
}
