//! CSV and SVG renderings of tropical polynomials and Newton polygons.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{NewtonPolygon, SplittingReport, TropicalPoly};

/// `omega,value` samples of `P(ω)` on `[lo, hi]`, exact kinks included.
pub fn samples_csv(p: &TropicalPoly, lo: f64, hi: f64, count: usize) -> String {
    let mut omegas: Vec<f64> = (0..count.max(2)).map(|k| lo + (hi - lo) * k as f64 / (count.max(2) - 1) as f64).collect();
    omegas.extend(kink_omegas(p).into_iter().filter(|w| *w >= lo && *w <= hi));
    omegas.sort_by(f64::total_cmp);
    omegas.dedup();
    let mut out = String::from("omega,value\n");
    for w in omegas {
        let _ = writeln!(out, "{w},{}", p.eval_f64(w));
    }
    out
}

/// Exact kink list `omega,value,multiplicity`, rationals as `p/q`.
pub fn kinks_csv(p: &TropicalPoly) -> String {
    let mut out = String::from("omega,value,multiplicity\n");
    for r in p.roots().roots {
        let _ = writeln!(out, "{},{},{}", r.omega, p.eval(&r.omega), r.multiplicity);
    }
    out
}

fn kink_omegas(p: &TropicalPoly) -> Vec<f64> {
    p.roots().roots.iter().map(|r| r.omega.to_f64().unwrap_or(0.0)).collect()
}

fn f(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Two-panel SVG: the piecewise-linear graph of `P(ω)` with kinks marked,
/// and the Newton polygon with hull vertices highlighted.
pub fn svg(p: &TropicalPoly, polygon: &NewtonPolygon, report: &SplittingReport) -> String {
    const W: f64 = 320.0;
    const H: f64 = 240.0;
    const PAD: f64 = 30.0;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" font-family="sans-serif" font-size="10">"#,
        2.0 * W,
        H
    );

    // left panel: P(ω)
    let kinks = kink_omegas(p);
    let hi = kinks.iter().copied().fold(0.5f64, f64::max) * 1.5 + 0.25;
    let samples: Vec<(f64, f64)> = {
        let mut ws: Vec<f64> = (0..=64).map(|k| hi * k as f64 / 64.0).collect();
        ws.extend(kinks.iter().copied().filter(|w| *w >= 0.0));
        ws.sort_by(f64::total_cmp);
        ws.dedup();
        ws.into_iter().map(|w| (w, p.eval_f64(w))).collect()
    };
    let vmax = samples.iter().map(|s| s.1).fold(1e-9f64, f64::max);
    let vmin = samples.iter().map(|s| s.1).fold(0.0f64, f64::min);
    let sx = |w: f64| PAD + (W - 2.0 * PAD) * w / hi;
    let sy = |v: f64| H - PAD - (H - 2.0 * PAD) * (v - vmin) / (vmax - vmin);
    let path: Vec<String> = samples.iter().map(|(w, v)| format!("{:.2},{:.2}", sx(*w), sy(*v))).collect();
    let _ = writeln!(s, r#"<text x="{PAD}" y="15">P(ω)</text>"#);
    let _ = writeln!(s, r#"<polyline fill="none" stroke="black" points="{}"/>"#, path.join(" "));
    for r in &report.roots {
        let w = f(&r.omega);
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="red"><title>ω={} m={}</title></circle>"#,
            sx(w),
            sy(p.eval_f64(w)),
            r.omega,
            r.multiplicity
        );
    }

    // right panel: Newton polygon
    let n = polygon.n().max(1) as f64;
    let amax = polygon.points().iter().filter_map(|(_, a)| a.finite().map(f)).fold(1.0f64, f64::max);
    let px = |i: f64| W + PAD + (W - 2.0 * PAD) * i / n;
    let py = |a: f64| H - PAD - (H - 2.0 * PAD) * a / amax;
    let _ = writeln!(s, r#"<text x="{}" y="15">Newton polygon (i, α_i)</text>"#, W + PAD);
    for (i, a) in polygon.points() {
        if let Some(v) = a.finite() {
            let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="gray"/>"#, px(*i as f64), py(f(v)));
        }
    }
    let hull: Vec<String> = polygon.hull().iter().map(|(i, a)| format!("{:.2},{:.2}", px(*i as f64), py(f(a)))).collect();
    let _ = writeln!(s, r#"<polyline fill="none" stroke="blue" points="{}"/>"#, hull.join(" "));
    for (i, a) in polygon.hull() {
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3.5" fill="blue"/>"#, px(*i as f64), py(f(a)));
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::NewtonPolygon;
    use crate::tropical::ExtRational;

    fn h21() -> (TropicalPoly, NewtonPolygon) {
        let q = |v: i64| BigRational::from_integer(v.into());
        let p = TropicalPoly::from_terms(3, [(3, q(0)), (1, q(1)), (0, q(2))], false);
        let n = NewtonPolygon::from_alphas(
            vec![ExtRational::int(0), ExtRational::Infinite, ExtRational::int(1), ExtRational::int(2)],
            false,
        );
        (p, n)
    }

    #[test]
    fn kink_csv_is_exact() {
        let (p, _) = h21();
        assert_eq!(kinks_csv(&p), "omega,value,multiplicity\n1/2,3/2,2\n1,2,1\n");
    }

    #[test]
    fn samples_include_kinks() {
        let (p, _) = h21();
        let csv = samples_csv(&p, 0.0, 2.0, 5);
        assert!(csv.lines().any(|l| l == "0.5,1.5"));
        assert_eq!(csv.lines().next(), Some("omega,value"));
    }

    #[test]
    fn svg_mentions_roots() {
        let (p, n) = h21();
        let r = n.roots();
        let s = svg(&p, &n, &r);
        assert!(s.starts_with("<svg"));
        assert!(s.contains("ω=1/2 m=2"));
        assert!(s.trim_end().ends_with("</svg>"));
    }
}
