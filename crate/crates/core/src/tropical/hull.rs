//! Exact lower convex hull of points sorted by strictly increasing abscissa.

use num_rational::BigRational;
use num_traits::Signed;

/// `(a − o) × (b − o)`; positive for a counter-clockwise turn.
fn cross(o: &(BigRational, BigRational), a: &(BigRational, BigRational), b: &(BigRational, BigRational)) -> BigRational {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

/// Indices of the lower-hull vertices, left to right. Collinear interior
/// points are dropped. Input must be sorted by strictly increasing `x`.
pub fn lower_hull(points: &[(BigRational, BigRational)]) -> Vec<usize> {
    debug_assert!(points.windows(2).all(|w| w[0].0 < w[1].0), "abscissae must strictly increase");
    let mut hull: Vec<usize> = Vec::with_capacity(points.len());
    for (k, p) in points.iter().enumerate() {
        while hull.len() >= 2 {
            let o = &points[hull[hull.len() - 2]];
            let a = &points[hull[hull.len() - 1]];
            if cross(o, a, p).is_positive() {
                break;
            }
            hull.pop();
        }
        hull.push(k);
    }
    hull
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<(BigRational, BigRational)> {
        v.iter()
            .map(|&(x, y)| (BigRational::from_integer(x.into()), BigRational::from_integer(y.into())))
            .collect()
    }

    #[test]
    fn drops_points_above_and_on_hull() {
        // (3,3) lies on the segment (0,0)-(4,4); (2,5) lies above it
        assert_eq!(lower_hull(&pts(&[(0, 0), (2, 5), (3, 3), (4, 4)])), vec![0, 3]);
    }

    #[test]
    fn liouvillian_points() {
        assert_eq!(lower_hull(&pts(&[(0, 0), (5, 1), (8, 2), (9, 3)])), vec![0, 1, 2, 3]);
    }

    #[test]
    fn single_point() {
        assert_eq!(lower_hull(&pts(&[(0, 0)])), vec![0]);
    }
}
