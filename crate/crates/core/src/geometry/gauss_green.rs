//! Length accounting for boundary identities under set operations.
//!
//! For two polygonal sets E, F the reduced boundary of E \ F splits into the
//! parts of dE exterior to F, the parts of dF interior to E (with reversed
//! normal), and the coincident parts carrying opposite normals; the union
//! splits analogously with exterior parts and equal normals. The checker
//! measures both sides of each identity along two genuinely different routes:
//! the right-hand terms come from classifying boundary fragments against the
//! other set, while the left-hand boundary length is measured by probing the
//! membership indicator of E \ F (resp. E ∪ F) on either side of every
//! fragment. Agreement of the two routes is the verified identity.

use alloc::vec::Vec;

use crate::tol::Tolerances;
use crate::vec2::Vec2;

use super::seg::{self, SegHit};
use super::window::Window;
use super::PolygonalSet;

/// Per-term lengths for both identities, plus residuals.
#[derive(Clone, Debug, Default)]
pub struct GaussGreenReport {
    /// H1 of the boundary of E \ F, measured by side probing.
    pub diff_lhs: f64,
    /// Length of dE fragments exterior to F.
    pub diff_e_in_f0: f64,
    /// Length of dF fragments interior to E.
    pub diff_f_in_e1: f64,
    /// Length of coincident fragments with opposite normals.
    pub diff_opposite: f64,
    /// |lhs - sum of terms| for the difference identity.
    pub diff_residual: f64,
    /// Worst mismatch between probed and prescribed outward normals.
    pub diff_normal_dev: f64,

    /// H1 of the boundary of E ∪ F, measured by side probing.
    pub union_lhs: f64,
    /// Length of dE fragments exterior to F.
    pub union_e_in_f0: f64,
    /// Length of dF fragments exterior to E.
    pub union_f_in_e0: f64,
    /// Length of coincident fragments with equal normals.
    pub union_same: f64,
    /// |lhs - sum of terms| for the union identity.
    pub union_residual: f64,
    pub union_normal_dev: f64,

    /// Combined perimeter of both inputs inside the window (the scale the
    /// residual tolerance refers to).
    pub total_perimeter: f64,
    pub passes: bool,
}

#[derive(Clone, Copy, Debug)]
struct Fragment {
    a: Vec2,
    b: Vec2,
    mid: Vec2,
    normal: Vec2,
    len_in_window: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum FragClass {
    Interior,
    Exterior,
    OnSame,
    OnOpposite,
}

/// Verifies the difference and union boundary identities for `(e, f)` by
/// H1 length accounting inside `window`. Report-only: nothing fails, the
/// `passes` flag summarizes whether residuals stay below
/// `rel_tol * total_perimeter`.
pub fn check_gauss_green_identities(
    e: &PolygonalSet,
    f: &PolygonalSet,
    window: &Window,
    rel_tol: f64,
    tol: &Tolerances,
) -> GaussGreenReport {
    let frags_e = fragments_against(e, f, window, tol);
    let frags_f = fragments_against(f, e, window, tol);

    let mut report = GaussGreenReport::default();
    report.total_perimeter = clipped_perimeter(e, window) + clipped_perimeter(f, window);

    let in_diff = |p: Vec2| e.contains(p) && !f.contains(p);
    let in_union = |p: Vec2| e.contains(p) || f.contains(p);

    // Pass over dE fragments. Coincident fragments are counted here only.
    for frag in &frags_e {
        let class = classify(frag, f, tol);
        match class {
            FragClass::Exterior => {
                report.diff_e_in_f0 += frag.len_in_window;
                report.union_e_in_f0 += frag.len_in_window;
            }
            FragClass::OnOpposite => report.diff_opposite += frag.len_in_window,
            FragClass::OnSame => report.union_same += frag.len_in_window,
            FragClass::Interior => {}
        }
        let eps = probe_eps(frag, e, f, tol);
        if let Some(normal) = probed_boundary_normal(frag, eps, &in_diff) {
            report.diff_lhs += frag.len_in_window;
            let prescribed = match class {
                FragClass::Exterior | FragClass::OnOpposite => frag.normal,
                // Not part of the prescribed decomposition; flag via deviation.
                _ => normal,
            };
            report.diff_normal_dev = report.diff_normal_dev.max((normal - prescribed).norm());
        }
        if let Some(normal) = probed_boundary_normal(frag, eps, &in_union) {
            report.union_lhs += frag.len_in_window;
            let prescribed = match class {
                FragClass::Exterior | FragClass::OnSame => frag.normal,
                _ => normal,
            };
            report.union_normal_dev = report.union_normal_dev.max((normal - prescribed).norm());
        }
    }

    // Pass over dF fragments, skipping coincident ones (already counted).
    for frag in &frags_f {
        let class = classify(frag, e, tol);
        match class {
            FragClass::Interior => report.diff_f_in_e1 += frag.len_in_window,
            FragClass::Exterior => report.union_f_in_e0 += frag.len_in_window,
            FragClass::OnSame | FragClass::OnOpposite => continue,
        }
        let eps = probe_eps(frag, e, f, tol);
        if let Some(normal) = probed_boundary_normal(frag, eps, &in_diff) {
            report.diff_lhs += frag.len_in_window;
            let prescribed = match class {
                FragClass::Interior => -frag.normal,
                _ => normal,
            };
            report.diff_normal_dev = report.diff_normal_dev.max((normal - prescribed).norm());
        }
        if let Some(normal) = probed_boundary_normal(frag, eps, &in_union) {
            report.union_lhs += frag.len_in_window;
            let prescribed = match class {
                FragClass::Exterior => frag.normal,
                _ => normal,
            };
            report.union_normal_dev = report.union_normal_dev.max((normal - prescribed).norm());
        }
    }

    let diff_rhs = report.diff_e_in_f0 + report.diff_f_in_e1 + report.diff_opposite;
    let union_rhs = report.union_e_in_f0 + report.union_f_in_e0 + report.union_same;
    report.diff_residual = (report.diff_lhs - diff_rhs).abs();
    report.union_residual = (report.union_lhs - union_rhs).abs();
    let allowance = rel_tol * report.total_perimeter.max(1.0);
    report.passes = report.diff_residual <= allowance
        && report.union_residual <= allowance
        && report.diff_normal_dev <= 1e-6
        && report.union_normal_dev <= 1e-6;
    report
}

/// Splits every edge of `set` at its contacts with `other` and materializes
/// the fragments with their window-clipped lengths.
fn fragments_against(
    set: &PolygonalSet,
    other: &PolygonalSet,
    window: &Window,
    tol: &Tolerances,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for l in set.loops() {
        for i in 0..l.len() {
            let (a, b) = l.edge(i);
            let normal = match l.edge_normal(i) {
                Some(n) => n,
                None => continue,
            };
            let mut params = alloc::vec![0.0f64, 1.0];
            for lo in other.loops() {
                for j in 0..lo.len() {
                    let (c, d) = lo.edge(j);
                    match seg::segment_hit(a, b, c, d, tol.on_boundary) {
                        SegHit::At(t) => params.push(t),
                        SegHit::Overlap => {
                            params.push(seg::project_param(c, a, b).clamp(0.0, 1.0));
                            params.push(seg::project_param(d, a, b).clamp(0.0, 1.0));
                        }
                        SegHit::None => {}
                    }
                }
            }
            params.sort_by(|x, y| x.partial_cmp(y).unwrap());
            params.dedup_by(|x, y| (*x - *y).abs() <= 1e-12);
            let edge_len = a.dist(b);
            for w in params.windows(2) {
                if (w[1] - w[0]) * edge_len <= tol.merge_dist {
                    continue;
                }
                let fa = a.lerp(b, w[0]);
                let fb = a.lerp(b, w[1]);
                out.push(Fragment {
                    a: fa,
                    b: fb,
                    mid: fa.midpoint(fb),
                    normal,
                    len_in_window: window.clip_segment_len(fa, fb),
                });
            }
        }
    }
    out
}

fn classify(frag: &Fragment, other: &PolygonalSet, tol: &Tolerances) -> FragClass {
    if let Some((_, _, n_other)) = nearest_edge_normal(other, frag.mid, tol.on_boundary) {
        if frag.normal.dot(n_other) > 0.0 {
            FragClass::OnSame
        } else {
            FragClass::OnOpposite
        }
    } else if other.contains(frag.mid) {
        FragClass::Interior
    } else {
        FragClass::Exterior
    }
}

fn nearest_edge_normal(
    set: &PolygonalSet,
    p: Vec2,
    eps: f64,
) -> Option<(usize, usize, Vec2)> {
    let mut best: Option<(usize, usize, f64)> = None;
    for (li, l) in set.loops().iter().enumerate() {
        for i in 0..l.len() {
            let (a, b) = l.edge(i);
            let d = seg::point_segment_dist(p, a, b);
            if d <= eps && best.map_or(true, |(_, _, bd)| d < bd) {
                best = Some((li, i, d));
            }
        }
    }
    best.and_then(|(li, i, _)| set.loops()[li].edge_normal(i).map(|n| (li, i, n)))
}

/// Probe distance: half the clearance from the fragment midpoint to every
/// non-carrier boundary edge, capped by the fragment size.
fn probe_eps(frag: &Fragment, e: &PolygonalSet, f: &PolygonalSet, tol: &Tolerances) -> f64 {
    let mut clearance = f64::INFINITY;
    for set in [e, f] {
        for l in set.loops() {
            for i in 0..l.len() {
                let (a, b) = l.edge(i);
                let d = seg::point_segment_dist(frag.mid, a, b);
                if d > tol.on_boundary {
                    clearance = clearance.min(d);
                }
            }
        }
    }
    let frag_len = frag.a.dist(frag.b);
    (0.5 * clearance).min(0.25 * frag_len).min(1e-3).max(4.0 * tol.merge_dist)
}

/// If the indicator differs across the fragment, returns the outward normal
/// of the indicated set there (pointing from material to complement).
fn probed_boundary_normal(
    frag: &Fragment,
    eps: f64,
    indicator: &impl Fn(Vec2) -> bool,
) -> Option<Vec2> {
    let plus = indicator(frag.mid + frag.normal * eps);
    let minus = indicator(frag.mid - frag.normal * eps);
    match (minus, plus) {
        (true, false) => Some(frag.normal),
        (false, true) => Some(-frag.normal),
        _ => None,
    }
}

fn clipped_perimeter(set: &PolygonalSet, window: &Window) -> f64 {
    set.loops()
        .iter()
        .map(|l| {
            (0..l.len())
                .map(|i| {
                    let (a, b) = l.edge(i);
                    window.clip_segment_len(a, b)
                })
                .sum::<f64>()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Loop;
    use alloc::vec;
    use approx::assert_relative_eq;

    fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Loop {
        Loop::new(vec![
            Vec2::new(x0, y0),
            Vec2::new(x1, y0),
            Vec2::new(x1, y1),
            Vec2::new(x0, y1),
        ])
    }

    fn big_window() -> Window {
        Window::disk(Vec2::ZERO, 100.0).unwrap()
    }

    #[test]
    fn identical_sets() {
        let tol = Tolerances::default();
        let e = PolygonalSet::new(vec![rect(0.0, 0.0, 1.0, 1.0)], &tol).unwrap();
        let r = check_gauss_green_identities(&e, &e.clone(), &big_window(), 1e-9, &tol);
        assert!(r.passes, "{r:?}");
        assert_relative_eq!(r.diff_lhs, 0.0);
        assert_relative_eq!(r.diff_opposite, 0.0);
        assert_relative_eq!(r.union_lhs, 4.0);
        assert_relative_eq!(r.union_same, 4.0);
    }

    #[test]
    fn disjoint_squares_lengths_add() {
        let tol = Tolerances::default();
        let e = PolygonalSet::new(vec![rect(0.0, 0.0, 1.0, 1.0)], &tol).unwrap();
        let f = PolygonalSet::new(vec![rect(3.0, 0.0, 4.0, 1.0)], &tol).unwrap();
        let r = check_gauss_green_identities(&e, &f, &big_window(), 1e-9, &tol);
        assert!(r.passes, "{r:?}");
        assert_relative_eq!(r.union_lhs, 8.0);
        assert_relative_eq!(r.diff_lhs, 4.0);
    }

    #[test]
    fn half_square_terms() {
        let tol = Tolerances::default();
        let e = PolygonalSet::new(vec![rect(0.0, 0.0, 1.0, 1.0)], &tol).unwrap();
        let f = PolygonalSet::new(vec![rect(0.5, 0.0, 1.0, 1.0)], &tol).unwrap();
        let r = check_gauss_green_identities(&e, &f, &big_window(), 1e-9, &tol);
        assert!(r.passes, "{r:?}");
        // E \ F is the left half: perimeter 3 contributed by dE-outside-F
        // (2 + 0.5 + 0.5) plus dF-inside-E (the divider, length 1).
        assert_relative_eq!(r.diff_lhs, 3.0, epsilon = 1e-12);
        assert_relative_eq!(r.diff_e_in_f0, 2.0, epsilon = 1e-12);
        assert_relative_eq!(r.diff_f_in_e1, 1.0, epsilon = 1e-12);
        assert_relative_eq!(r.diff_opposite, 0.0);
        // E ∪ F = E: boundary length 4 = 2 + 0 + overlap-with-same-normals 2.
        assert_relative_eq!(r.union_lhs, 4.0, epsilon = 1e-12);
        assert_relative_eq!(r.union_same, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn edge_sharing_squares() {
        let tol = Tolerances::default();
        let e = PolygonalSet::new(vec![rect(0.0, 0.0, 1.0, 1.0)], &tol).unwrap();
        let f = PolygonalSet::new(vec![rect(1.0, 0.0, 2.0, 1.0)], &tol).unwrap();
        let r = check_gauss_green_identities(&e, &f, &big_window(), 1e-9, &tol);
        assert!(r.passes, "{r:?}");
        assert_relative_eq!(r.diff_lhs, 4.0, epsilon = 1e-12);
        assert_relative_eq!(r.diff_opposite, 1.0, epsilon = 1e-12);
        assert_relative_eq!(r.union_lhs, 6.0, epsilon = 1e-12);
        assert_relative_eq!(r.union_same, 0.0);
    }
}
