//! Leading-exponent fits of eigenvalue tracks and of scalar coefficients.
//!
//! Each track is fitted by least squares of `log|λ|` against `log|t|` over
//! the smallest-`|t|` half of the grid, where the leading term dominates.
//! Tracks below `ZERO_FLOOR · scale` over the whole window are identically
//! zero. The remaining slopes are split into clusters at gaps larger than
//! `FitOptions::gap` and each cluster is matched to a predicted root.

use num_complex::Complex;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::numeric::eigen::{eigenvalues_at, EigenRoute, SpectralFamily};
use crate::numeric::track::{track_path, Tracks};
use crate::numeric::SampleGrid;
use crate::tropical::{nearest_rational, ExtRational, SplittingReport, TropicalRoot};

/// Relative level below which a value counts as exactly zero.
pub const ZERO_FLOOR: f64 = 1e-13;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FitOptions {
    pub route: EigenRoute,
    /// Maximal distance between a cluster exponent and its root.
    pub tol: f64,
    /// Slope gap that separates clusters.
    pub gap: f64,
    pub parallel: bool,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self { route: EigenRoute::Auto, tol: 0.05, gap: 0.1, parallel: false }
    }
}

/// Tracks sharing one fitted exponent.
#[derive(Clone, Debug, PartialEq)]
pub struct Cluster {
    /// Mean fitted slope of the members.
    pub exponent: f64,
    pub members: usize,
    pub matched: Option<TropicalRoot>,
    /// Largest deviation of `log|λ|` from its fitted line over all members.
    pub max_residual: f64,
    pub tracks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationResult {
    pub clusters: Vec<Cluster>,
    pub zero_tracks: usize,
    pub expected_zero_tracks: usize,
    /// Fitted slope per track, `None` for identically zero tracks.
    pub track_exponents: Vec<Option<f64>>,
    pub pass: bool,
    pub diagnostics: Vec<String>,
    pub tracks: Tracks,
}

impl VerificationResult {
    /// Sum of cluster sizes; equals `n − zero_root_count` when the check passes.
    pub fn member_sum(&self) -> usize {
        self.clusters.iter().map(|c| c.members).sum()
    }
}

/// Least-squares line `y = a + b x`; returns `(b, max |residual|)`.
fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let b = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let a = my - b * mx;
    let res = xs.iter().zip(ys).map(|(x, y)| (y - a - b * x).abs()).fold(0.0, f64::max);
    (b, res)
}

/// Slope and residual of `log|v|` against `log|t|` using points above
/// `floor`, or `None` if fewer than two points qualify.
fn log_log_fit(ts: &[f64], values: &[f64], floor: f64) -> Option<(f64, f64)> {
    let (xs, ys): (Vec<f64>, Vec<f64>) =
        ts.iter().zip(values).filter(|(_, v)| **v > floor).map(|(t, v)| (t.ln(), v.ln())).unzip();
    (xs.len() >= 2).then(|| least_squares(&xs, &ys))
}

/// Scale of the family at the largest grid point, at least one.
fn family_scale<F: SpectralFamily<f64> + ?Sized>(family: &F, t: Complex<f64>, spectrum: &[Complex<f64>]) -> f64 {
    let norm = match family.matrix_at(t) {
        Some(m) => m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
        None => spectrum.iter().map(|z| z.norm()).fold(0.0, f64::max),
    };
    norm.max(1.0)
}

/// Fits the leading exponent of every eigenvalue track of `family` on
/// `grid` and compares the clusters against `expected`.
pub fn fit_exponents<F: SpectralFamily<f64> + ?Sized>(
    family: &F,
    expected: &SplittingReport,
    grid: &SampleGrid,
    opts: &FitOptions,
) -> Result<VerificationResult> {
    grid.validate()?;
    if grid.decades() < 3.0 {
        return Err(Error::InvalidArgument(format!("grid spans {:.2} decades, need at least 3", grid.decades())));
    }
    let ts = grid.points();
    let first = eigenvalues_at(family, ts[0], opts.route)?;
    let floor = ZERO_FLOOR * family_scale(family, ts[0], &first);
    let tracks = track_path(family, &ts, opts.route, floor, opts.parallel)?;
    let n = tracks.n();
    let window = grid.count / 2;
    let mags = grid.magnitudes();
    let fit_ts = &mags[window..];

    let mut diagnostics = Vec::new();
    let mut track_exponents = Vec::with_capacity(n);
    let mut residuals = Vec::with_capacity(n);
    for j in 0..n {
        let values: Vec<f64> = tracks.values[window..].iter().map(|v| v[j].norm()).collect();
        if values.iter().all(|v| *v <= floor) {
            track_exponents.push(None);
            residuals.push(0.0);
            continue;
        }
        match log_log_fit(fit_ts, &values, floor) {
            Some((slope, res)) => {
                track_exponents.push(Some(slope));
                residuals.push(res);
            }
            None => {
                diagnostics.push(format!("track {j} is above the zero floor at fewer than two points"));
                track_exponents.push(None);
                residuals.push(0.0);
            }
        }
    }
    if tracks.unresolved > 0 {
        diagnostics.push(format!("{} continuation steps stayed ambiguous after step-halving", tracks.unresolved));
    }

    let mut order: Vec<usize> = (0..n).filter(|&j| track_exponents[j].is_some()).collect();
    order.sort_by(|&a, &b| track_exponents[a].unwrap().total_cmp(&track_exponents[b].unwrap()).then(a.cmp(&b)));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for j in order {
        let s = track_exponents[j].unwrap();
        match groups.last_mut() {
            Some(g) if s - track_exponents[*g.last().unwrap()].unwrap() <= opts.gap => g.push(j),
            _ => groups.push(vec![j]),
        }
    }

    let mut used = vec![false; expected.roots.len()];
    let mut pass = !expected.undetermined;
    if expected.undetermined {
        diagnostics.push("prediction is undetermined".into());
    }
    let mut clusters = Vec::with_capacity(groups.len());
    for g in groups {
        let exponent = g.iter().map(|&j| track_exponents[j].unwrap()).sum::<f64>() / g.len() as f64;
        let max_residual = g.iter().map(|&j| residuals[j]).fold(0.0, f64::max);
        let best = expected
            .roots
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, r)| (i, (omega_f64(r) - exponent).abs()))
            .filter(|(_, d)| *d <= opts.tol)
            .min_by(|a, b| a.1.total_cmp(&b.1));
        let matched = best.map(|(i, _)| {
            used[i] = true;
            expected.roots[i].clone()
        });
        match &matched {
            None => {
                pass = false;
                diagnostics.push(format!("cluster at exponent {exponent:.4} with {} members matches no root", g.len()));
            }
            Some(r) if r.multiplicity as usize != g.len() => {
                pass = false;
                diagnostics.push(format!("cluster at exponent {exponent:.4} has {} members, root {r} expects {}", g.len(), r.multiplicity));
            }
            Some(_) => {}
        }
        clusters.push(Cluster { exponent, members: g.len(), matched, max_residual, tracks: g });
    }
    for (i, r) in expected.roots.iter().enumerate() {
        if !used[i] {
            pass = false;
            diagnostics.push(format!("root {r} has no matching cluster"));
        }
    }
    let zero_tracks = track_exponents.iter().filter(|e| e.is_none()).count();
    if zero_tracks != expected.zero_root_count {
        pass = false;
        diagnostics.push(format!("{zero_tracks} identically zero tracks, expected {}", expected.zero_root_count));
    }
    Ok(VerificationResult {
        clusters,
        zero_tracks,
        expected_zero_tracks: expected.zero_root_count,
        track_exponents,
        pass,
        diagnostics,
        tracks,
    })
}

fn omega_f64(r: &TropicalRoot) -> f64 {
    r.omega.to_f64().unwrap_or(f64::NAN)
}

/// Leading order of a sampled coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericOrd {
    /// Least-squares slope, `∞` when every sample is below the floor.
    pub slope: f64,
    /// Slope rounded to the nearest rational with denominator at most `2n`.
    pub alpha: ExtRational,
    /// `|slope − alpha|`.
    pub residual: f64,
}

/// Estimates `ord a` from samples `(|t|, a(t))` on a geometric grid.
pub fn numeric_ord(samples: &[(f64, Complex<f64>)], n: usize) -> Result<NumericOrd> {
    if samples.len() < 5 {
        return Err(Error::InvalidArgument(format!("need at least 5 samples, got {}", samples.len())));
    }
    if samples.iter().any(|(t, _)| t.is_nan() || *t <= 0.0) {
        return Err(Error::InvalidArgument("sample magnitudes must be positive".into()));
    }
    let (ts, values): (Vec<f64>, Vec<f64>) = samples.iter().map(|(t, a)| (*t, a.norm())).unzip();
    let floor = ZERO_FLOOR * values.iter().copied().fold(1.0, f64::max);
    let Some((slope, _)) = log_log_fit(&ts, &values, floor) else {
        return Ok(NumericOrd { slope: f64::INFINITY, alpha: ExtRational::Infinite, residual: 0.0 });
    };
    let max_denom = u32::try_from(2 * n.max(1)).unwrap_or(u32::MAX);
    let alpha = nearest_rational(slope, max_denom);
    let residual = (slope - alpha.to_f64().unwrap_or(f64::NAN)).abs();
    Ok(NumericOrd { slope, alpha: ExtRational::Finite(alpha), residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::{charpoly_checked, PolyMatrix};
    use crate::poly::ScalarPoly;
    use crate::scalar::GaussianRational;
    use num_rational::BigRational;

    fn grid_samples(f: impl Fn(f64) -> f64) -> Vec<(f64, Complex<f64>)> {
        (0..12).map(|k| 0.1 * 0.5f64.powi(k)).map(|t| (t, Complex::new(f(t), 0.0))).collect()
    }

    fn rat(p: i64, q: i64) -> ExtRational {
        ExtRational::Finite(BigRational::new(p.into(), q.into()))
    }

    #[test]
    fn ord_of_cosine_coefficient() {
        let r = numeric_ord(&grid_samples(|t| 4.0 * t.cos() - 4.0), 3).unwrap();
        assert_eq!(r.alpha, rat(2, 1));
        assert!(r.residual < 0.01);
    }

    #[test]
    fn ord_of_sine_plus_cosine() {
        let r = numeric_ord(&grid_samples(|t| 3.0 * t.sin() + 4.0 * t.cos() - 4.0), 3).unwrap();
        assert_eq!(r.alpha, rat(1, 1));
    }

    #[test]
    fn ord_of_zero_is_infinite() {
        let r = numeric_ord(&grid_samples(|_| 0.0), 3).unwrap();
        assert_eq!(r.alpha, ExtRational::Infinite);
        assert!(numeric_ord(&grid_samples(|t| t)[..4], 3).is_err());
    }

    #[test]
    fn h2_family_fits_square_root() {
        let m = PolyMatrix::<GaussianRational>::from_fn(2, |i, j| match (i, j) {
            (0, 1) => ScalarPoly::one(),
            (1, 0) => ScalarPoly::t(),
            _ => ScalarPoly::zero(),
        });
        let c = charpoly_checked(&m).unwrap();
        let expected = SplittingReport::expect(2, &[(1, 2, 2)], 0);
        for route in [EigenRoute::Dense, EigenRoute::CharPoly] {
            let v = if route == EigenRoute::Dense {
                fit_exponents(&m, &expected, &SampleGrid::default(), &FitOptions { route, ..Default::default() })
            } else {
                fit_exponents(&c, &expected, &SampleGrid::default(), &FitOptions { route, ..Default::default() })
            }
            .unwrap();
            assert!(v.pass, "{route:?}: {:?}", v.diagnostics);
            assert_eq!(v.clusters.len(), 1);
            assert!((v.clusters[0].exponent - 0.5).abs() < 1e-6);
        }
    }

    #[test]
    fn wrong_prediction_fails_with_diagnostics() {
        let m = PolyMatrix::<GaussianRational>::from_fn(2, |i, j| match (i, j) {
            (0, 1) => ScalarPoly::one(),
            (1, 0) => ScalarPoly::t(),
            _ => ScalarPoly::zero(),
        });
        let wrong = SplittingReport::expect(2, &[(1, 1, 2)], 0);
        let v = fit_exponents(&m, &wrong, &SampleGrid::default(), &FitOptions::default()).unwrap();
        assert!(!v.pass);
        assert!(!v.diagnostics.is_empty());
    }

    #[test]
    fn zero_family_is_all_zero_tracks() {
        let m = PolyMatrix::<GaussianRational>::zeros(3);
        let c = charpoly_checked(&m).unwrap();
        let v = fit_exponents(&c, &SplittingReport::expect(3, &[], 3), &SampleGrid::default(), &FitOptions::default()).unwrap();
        assert!(v.pass);
        assert_eq!(v.zero_tracks, 3);
    }

    #[test]
    fn short_grid_is_rejected() {
        let m = PolyMatrix::<GaussianRational>::zeros(2);
        let g = SampleGrid::new(1e-4, 0.5, 6, 0.0).unwrap();
        assert!(fit_exponents(&m, &SplittingReport::expect(2, &[], 2), &g, &FitOptions::default()).is_err());
    }
}
