//! Eigenvalue continuation along a path of parameter values.
//!
//! Consecutive spectra are matched greedily by distance. A match is
//! ambiguous when the distance travelled exceeds half the separation of the
//! target from its nearest neighbour; the step is then halved at the
//! geometric midpoint, up to `MAX_DEPTH` times. Numerically coincident
//! eigenvalues are interchangeable and never count as ambiguous.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::Result;
use crate::numeric::eigen::{eigenvalues_at, EigenRoute, SpectralFamily};

const MAX_DEPTH: usize = 10;
const AMBIGUITY_FACTOR: f64 = 0.5;
/// Relative separation below which two eigenvalues are treated as equal.
const COINCIDENT_REL: f64 = 1e-5;

/// Eigenvalue tracks sampled at the requested path points.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Tracks {
    pub ts: Vec<Complex<f64>>,
    /// `values[k][j]` is track `j` at `ts[k]`.
    pub values: Vec<Vec<Complex<f64>>>,
    /// Midpoints inserted by step-halving.
    pub refinements: usize,
    /// Steps still ambiguous at the maximal halving depth.
    pub unresolved: usize,
}

impl Tracks {
    pub fn n(&self) -> usize {
        self.values.first().map_or(0, |v| v.len())
    }

    pub fn track(&self, j: usize) -> Vec<Complex<f64>> {
        self.values.iter().map(|v| v[j]).collect()
    }

    /// `t_re,t_im,lambda_re,lambda_im,track` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t_re,t_im,lambda_re,lambda_im,track\n");
        for (t, vals) in self.ts.iter().zip(&self.values) {
            for (j, z) in vals.iter().enumerate() {
                out.push_str(&format!("{:e},{:e},{:e},{:e},{}\n", t.re, t.im, z.re, z.im, j));
            }
        }
        out
    }
}

struct Stepper<'a, F: ?Sized> {
    family: &'a F,
    route: EigenRoute,
    floor: f64,
    refinements: usize,
    unresolved: usize,
}

impl<F: SpectralFamily<f64> + ?Sized> Stepper<'_, F> {
    fn advance(
        &mut self,
        a: Complex<f64>,
        from: &[Complex<f64>],
        b: Complex<f64>,
        at_b: Option<Vec<Complex<f64>>>,
        depth: usize,
    ) -> Result<Vec<Complex<f64>>> {
        let at_b = match at_b {
            Some(v) => v,
            None => eigenvalues_at(self.family, b, self.route)?,
        };
        let (matched, ambiguous) = match_step(from, &at_b, self.floor);
        if !ambiguous {
            return Ok(matched);
        }
        if depth == MAX_DEPTH {
            self.unresolved += 1;
            return Ok(matched);
        }
        self.refinements += 1;
        let mid = a * (b / a).sqrt();
        let at_mid = self.advance(a, from, mid, None, depth + 1)?;
        self.advance(mid, &at_mid, b, Some(at_b), depth + 1)
    }
}

/// Reorders `next` so that entry `j` continues `prev[j]`; also reports
/// whether any assignment was ambiguous.
pub(crate) fn match_step(prev: &[Complex<f64>], next: &[Complex<f64>], floor: f64) -> (Vec<Complex<f64>>, bool) {
    let (assigned, ambiguous) = match_indices(prev, next, floor);
    (assigned.iter().map(|&j| next[j]).collect(), ambiguous)
}

/// Greedy nearest assignment `prev[i] → next[assigned[i]]`.
pub(crate) fn match_indices(prev: &[Complex<f64>], next: &[Complex<f64>], floor: f64) -> (Vec<usize>, bool) {
    let n = prev.len();
    let mut pairs: Vec<(f64, usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| ((prev[i] - next[j]).norm(), i, j)).collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut assigned = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut ambiguous = false;
    for (d, i, j) in pairs {
        if assigned[i] != usize::MAX || used[j] {
            continue;
        }
        assigned[i] = j;
        used[j] = true;
        let sep = (0..n).filter(|&k| k != j).map(|k| (next[j] - next[k]).norm()).fold(f64::INFINITY, f64::min);
        let coincident = sep <= COINCIDENT_REL * next[j].norm() + floor;
        if !coincident && d > AMBIGUITY_FACTOR * sep {
            ambiguous = true;
        }
    }
    (assigned, ambiguous)
}

/// Tracks the eigenvalues of `family` through `ts` in order.
///
/// Eigenvalues at the requested points may be computed in parallel; the
/// continuation itself is sequential and deterministic.
pub fn track_path<F: SpectralFamily<f64> + ?Sized>(
    family: &F,
    ts: &[Complex<f64>],
    route: EigenRoute,
    floor: f64,
    parallel: bool,
) -> Result<Tracks> {
    let spectra: Vec<Vec<Complex<f64>>> = if parallel {
        ts.par_iter().map(|&t| eigenvalues_at(family, t, route)).collect::<Result<_>>()?
    } else {
        ts.iter().map(|&t| eigenvalues_at(family, t, route)).collect::<Result<_>>()?
    };
    let mut stepper = Stepper { family, route, floor, refinements: 0, unresolved: 0 };
    let mut values: Vec<Vec<Complex<f64>>> = Vec::with_capacity(ts.len());
    let mut spectra = spectra.into_iter();
    if let Some(first) = spectra.next() {
        values.push(first);
    }
    for (k, at_b) in spectra.enumerate() {
        let next = stepper.advance(ts[k], &values[k], ts[k + 1], Some(at_b), 0)?;
        values.push(next);
    }
    Ok(Tracks { ts: ts.to_vec(), values, refinements: stepper.refinements, unresolved: stepper.unresolved })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::eigen::NumericFamily;
    use nalgebra::DMatrix;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn greedy_matching_follows_nearest() {
        let prev = [c(1.0, 0.0), c(-1.0, 0.0)];
        let next = [c(-0.9, 0.0), c(0.9, 0.0)];
        let (m, amb) = match_step(&prev, &next, 0.0);
        assert_eq!(m, vec![c(0.9, 0.0), c(-0.9, 0.0)]);
        assert!(!amb);
        let (_, amb) = match_step(&prev, &[c(0.0, 0.1), c(0.0, -0.1)], 0.0);
        assert!(amb);
    }

    #[test]
    fn coincident_values_are_not_ambiguous() {
        let (_, amb) = match_step(&[c(0.0, 0.0), c(0.0, 0.0)], &[c(0.0, 0.0), c(0.0, 0.0)], 1e-13);
        assert!(!amb);
    }

    #[test]
    fn rotating_pair_needs_refinement() {
        // eigenvalues ±t on the unit circle: a quarter-turn step is ambiguous
        let f = NumericFamily::new(2, |t: Complex<f64>| {
            DMatrix::from_row_slice(2, 2, &[t, c(0.0, 0.0), c(0.0, 0.0), -t])
        });
        let ts: Vec<_> = (0..=4).map(|k| Complex::from_polar(1.0, k as f64 * std::f64::consts::FRAC_PI_2)).collect();
        let tr = track_path(&f, &ts, EigenRoute::Dense, 0.0, false).unwrap();
        assert!(tr.refinements > 0);
        assert_eq!(tr.unresolved, 0);
        let start = tr.values[0][0];
        let end = tr.values[4][0];
        // a full turn of θ brings each eigenvalue back to itself
        assert!((start - end).norm() < 1e-12);
        assert!(tr.to_csv().lines().count() == 1 + 5 * 2);
    }
}
