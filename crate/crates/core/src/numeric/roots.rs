//! Simultaneous polynomial root finding (Aberth–Ehrlich).
//!
//! Initial approximations sit on circles whose radii come from the upper
//! convex hull of `(j, log|b_j|)`, so roots of very different magnitudes
//! start near their own scale. A root is frozen once its backward error
//! `|p(z)| / Σ|b_j||z|^j` is at the rounding level.

use num_complex::Complex;
use num_traits::{Float, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_ITER: usize = 600;

/// Roots of `Σ_{i=0}^{n} c_i λ^{n−i}` (descending coefficients, `c_0 ≠ 0`).
/// Trailing exact zeros are returned as exact zero roots.
pub fn poly_roots<T: Real>(coeffs_desc: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    if coeffs_desc.is_empty() || coeffs_desc[0].is_zero() {
        return Err(Error::InvalidArgument("leading coefficient must be nonzero".into()));
    }
    let n = coeffs_desc.len() - 1;
    let trailing = coeffs_desc.iter().rev().take_while(|c| c.is_zero()).count().min(n);
    let mut roots = vec![Complex::new(T::zero(), T::zero()); trailing];
    let deg = n - trailing;
    if deg == 0 {
        return Ok(roots);
    }
    // ascending, normalised to a monic polynomial
    let lead = coeffs_desc[0];
    let b: Vec<Complex<T>> = coeffs_desc[..=deg].iter().rev().map(|c| *c / lead).collect();
    if deg == 1 {
        roots.push(-b[0]);
        return Ok(roots);
    }
    let mut z = initial_guesses(&b);
    let abs_b: Vec<T> = b.iter().map(|c| c.norm()).collect();
    let eps = T::epsilon();
    let mut done = vec![false; deg];
    let mut max_step = T::zero();
    for _ in 0..MAX_ITER {
        max_step = T::zero();
        for i in 0..deg {
            if done[i] {
                continue;
            }
            let (p, dp, scale) = horner(&b, &abs_b, z[i]);
            if p.norm() <= T::lit(4.0 * deg as f64) * eps * scale {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let mut sum = Complex::new(T::zero(), T::zero());
            for j in 0..deg {
                if j != i {
                    let d = z[i] - z[j];
                    if !d.is_zero() {
                        sum += d.inv();
                    }
                }
            }
            let denom = Complex::new(T::one(), T::zero()) - ratio * sum;
            let step = if denom.is_zero() || !denom.norm().is_finite() { ratio } else { ratio / denom };
            if !step.norm().is_finite() {
                continue;
            }
            z[i] -= step;
            max_step = Float::max(max_step, step.norm() / Float::max(z[i].norm(), T::min_positive_value()));
        }
        if done.iter().all(|d| *d) {
            roots.extend(z);
            return Ok(roots);
        }
    }
    Err(Error::NoConvergence { iterations: MAX_ITER, max_step: max_step.to_f64_lossy() })
}

/// `(p(z), p'(z), Σ|b_j||z|^j)`.
fn horner<T: Real>(b: &[Complex<T>], abs_b: &[T], z: Complex<T>) -> (Complex<T>, Complex<T>, T) {
    let mut p = Complex::new(T::zero(), T::zero());
    let mut dp = Complex::new(T::zero(), T::zero());
    let mut s = T::zero();
    let r = z.norm();
    for j in (0..b.len()).rev() {
        dp = dp * z + p;
        p = p * z + b[j];
        s = s * r + abs_b[j];
    }
    (p, dp, s)
}

/// Points on circles given by the upper hull of `(j, log|b_j|)`.
fn initial_guesses<T: Real>(b: &[Complex<T>]) -> Vec<Complex<T>> {
    let deg = b.len() - 1;
    let pts: Vec<(usize, f64)> = b
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| (j, c.norm().to_f64_lossy().ln()))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 as f64 - o.0 as f64) * (p.1 - o.1) - (a.1 - o.1) * (p.0 as f64 - o.0 as f64);
            if cross < 0.0 {
                break;
            }
            hull.pop();
        }
        hull.push(p);
    }
    let mut z = Vec::with_capacity(deg);
    let two_pi = std::f64::consts::TAU;
    for w in hull.windows(2) {
        let (k0, l0) = w[0];
        let (k1, l1) = w[1];
        let m = k1 - k0;
        let radius = ((l0 - l1) / m as f64).exp();
        for j in 0..m {
            let theta = two_pi * j as f64 / m as f64 + two_pi * k0 as f64 / deg as f64 + 0.4;
            z.push(Complex::new(T::lit(radius * theta.cos()), T::lit(radius * theta.sin())));
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn sorted(mut v: Vec<Complex<f64>>) -> Vec<Complex<f64>> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn quadratic_roots() {
        let r = sorted(poly_roots(&[c(1.0, 0.0), c(0.0, 0.0), c(-1e-6, 0.0)]).unwrap());
        assert!((r[0] - c(-1e-3, 0.0)).norm() < 1e-15);
        assert!((r[1] - c(1e-3, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn trailing_zeros_are_exact() {
        let r = poly_roots(&[c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(r.iter().filter(|z| z.is_zero()).count(), 2);
        assert!(r.iter().any(|z| (z - c(1.0, 0.0)).norm() < 1e-14));
        let z = poly_roots(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(z.iter().all(|r| r.is_zero()));
    }

    #[test]
    fn widely_separated_scales() {
        // (λ − 1e-9)(λ − 1e-3)(λ − 1)(λ + 2i)
        let roots = [c(1e-9, 0.0), c(1e-3, 0.0), c(1.0, 0.0), c(0.0, -2.0)];
        let mut coeffs = vec![c(1.0, 0.0)];
        for r in roots {
            let mut next = coeffs.clone();
            next.push(c(0.0, 0.0));
            for k in 1..next.len() {
                next[k] -= r * coeffs[k - 1];
            }
            coeffs = next;
        }
        let got = poly_roots(&coeffs).unwrap();
        for r in roots {
            let best = got.iter().map(|z| (z - r).norm() / r.norm()).fold(f64::INFINITY, f64::min);
            assert!(best < 1e-10, "root {r} relative error {best}");
        }
    }

    #[test]
    fn works_in_single_precision() {
        let r = poly_roots(&[Complex::new(1.0f32, 0.0), Complex::new(0.0, 0.0), Complex::new(-4.0, 0.0)]).unwrap();
        assert!(r.iter().all(|z| (z.norm() - 2.0).abs() < 1e-5));
    }

    #[test]
    fn rejects_zero_leading() {
        assert!(poly_roots(&[c(0.0, 0.0), c(1.0, 0.0)]).is_err());
    }
}
