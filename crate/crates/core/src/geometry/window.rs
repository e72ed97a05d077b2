//! Windows: the open sets that define boundary conditions.
//!
//! Competitors may only differ from the original set on a region compactly
//! contained in the window, and energies are measured on boundary pieces
//! clipped to it. Edges lying exactly on the window boundary are counted in
//! full; competitors agree near the window edge, so the tie-break cancels in
//! every comparison.

use alloc::vec::Vec;

use crate::error::GeometryError;
use crate::math;
use crate::vec2::Vec2;

use super::Loop;

/// An open bounded window: a disk or a convex polygon.
#[derive(Clone, Debug, PartialEq)]
pub enum Window {
    Disk { center: Vec2, radius: f64 },
    ConvexPolygon { vertices: Vec<Vec2> },
}

impl Window {
    pub fn disk(center: Vec2, radius: f64) -> Result<Self, GeometryError> {
        if !(radius > 0.0 && radius.is_finite() && center.is_finite()) {
            return Err(GeometryError::InvalidWindow("disk needs a positive radius"));
        }
        Ok(Window::Disk { center, radius })
    }

    /// A convex polygon window. Vertices are reordered counterclockwise;
    /// non-convex input is rejected.
    pub fn convex_polygon(vertices: Vec<Vec2>) -> Result<Self, GeometryError> {
        if vertices.len() < 3 {
            return Err(GeometryError::InvalidWindow("polygon needs >= 3 vertices"));
        }
        let l = Loop::new(vertices.clone());
        let area = l.signed_area();
        if area == 0.0 {
            return Err(GeometryError::InvalidWindow("polygon has zero area"));
        }
        let vertices = if area > 0.0 {
            vertices
        } else {
            let mut v = vertices;
            v.reverse();
            v
        };
        let n = vertices.len();
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            if (b - a).cross(c - b) < 0.0 {
                return Err(GeometryError::InvalidWindow("polygon is not convex"));
            }
            if (b - a).norm() == 0.0 {
                return Err(GeometryError::InvalidWindow("polygon has a zero edge"));
            }
        }
        Ok(Window::ConvexPolygon { vertices })
    }

    /// Signed interior clearance: positive strictly inside the open window,
    /// negative outside.
    pub fn interior_distance(&self, p: Vec2) -> f64 {
        match self {
            Window::Disk { center, radius } => radius - p.dist(*center),
            Window::ConvexPolygon { vertices } => {
                let n = vertices.len();
                let mut d = f64::INFINITY;
                for i in 0..n {
                    let a = vertices[i];
                    let b = vertices[(i + 1) % n];
                    let outward = (b - a).rot_cw().normalized().unwrap_or(Vec2::ZERO);
                    d = d.min(-outward.dot(p - a));
                }
                d
            }
        }
    }

    /// Membership in the open window.
    pub fn contains(&self, p: Vec2) -> bool {
        self.interior_distance(p) > 0.0
    }

    /// Whether the closed polygon bounded by `l` is compactly contained in
    /// the open window. For a convex window this is exactly "every vertex
    /// strictly inside".
    pub fn contains_loop_closure(&self, l: &Loop) -> bool {
        l.vertices().iter().all(|&v| self.interior_distance(v) > 0.0)
    }

    /// Parameter interval of `[a, b]` inside the closed window, or `None` if
    /// the segment misses it.
    pub fn clip_params(&self, a: Vec2, b: Vec2) -> Option<(f64, f64)> {
        match self {
            Window::Disk { center, radius } => {
                segment_disk_params(a, b, *center, *radius)
            }
            Window::ConvexPolygon { vertices } => {
                let d = b - a;
                let mut lo: f64 = 0.0;
                let mut hi: f64 = 1.0;
                let n = vertices.len();
                for i in 0..n {
                    let va = vertices[i];
                    let vb = vertices[(i + 1) % n];
                    let outward = (vb - va).rot_cw();
                    let num = outward.dot(a - va);
                    let den = outward.dot(d);
                    let eps = 1e-12 * (1.0 + a.norm() + va.norm());
                    if den.abs() <= eps * (1.0 + d.norm()) {
                        // Parallel to this window edge: on-boundary counts.
                        if num > eps {
                            return None;
                        }
                    } else {
                        let t = -num / den;
                        if den > 0.0 {
                            hi = hi.min(t);
                        } else {
                            lo = lo.max(t);
                        }
                        if lo > hi {
                            return None;
                        }
                    }
                }
                if lo <= hi {
                    Some((lo, hi))
                } else {
                    None
                }
            }
        }
    }

    /// Length of `[a, b]` inside the closed window.
    pub fn clip_segment_len(&self, a: Vec2, b: Vec2) -> f64 {
        match self.clip_params(a, b) {
            Some((lo, hi)) => (hi - lo).max(0.0) * a.dist(b),
            None => 0.0,
        }
    }

    /// Axis-aligned bounding box.
    pub fn bbox(&self) -> (Vec2, Vec2) {
        match self {
            Window::Disk { center, radius } => (
                Vec2::new(center.x - radius, center.y - radius),
                Vec2::new(center.x + radius, center.y + radius),
            ),
            Window::ConvexPolygon { vertices } => {
                let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
                let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
                for v in vertices {
                    lo.x = lo.x.min(v.x);
                    lo.y = lo.y.min(v.y);
                    hi.x = hi.x.max(v.x);
                    hi.y = hi.y.max(v.y);
                }
                (lo, hi)
            }
        }
    }
}

/// Parameter interval of segment `[a, b]` inside the closed disk.
pub fn segment_disk_params(a: Vec2, b: Vec2, center: Vec2, radius: f64) -> Option<(f64, f64)> {
    let d = b - a;
    let f = a - center;
    let qa = d.norm_sq();
    if qa == 0.0 {
        return if f.norm() <= radius {
            Some((0.0, 1.0))
        } else {
            None
        };
    }
    let qb = f.dot(d);
    let qc = f.norm_sq() - radius * radius;
    let disc = qb * qb - qa * qc;
    if disc < 0.0 {
        return None;
    }
    let sq = math::sqrt(disc);
    let lo = ((-qb - sq) / qa).max(0.0);
    let hi = ((-qb + sq) / qa).min(1.0);
    if lo <= hi {
        Some((lo, hi))
    } else {
        None
    }
}

/// Length of segment `[a, b]` inside the closed disk `B(center, radius)`.
pub fn segment_disk_clip_len(a: Vec2, b: Vec2, center: Vec2, radius: f64) -> f64 {
    match segment_disk_params(a, b, center, radius) {
        Some((lo, hi)) => (hi - lo).max(0.0) * a.dist(b),
        None => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use approx::assert_relative_eq;

    #[test]
    fn disk_clipping() {
        let w = Window::disk(Vec2::ZERO, 1.0).unwrap();
        // Diameter of the unit disk along the x-axis.
        let len = w.clip_segment_len(Vec2::new(-2.0, 0.0), Vec2::new(2.0, 0.0));
        assert_relative_eq!(len, 2.0);
        // Chord at height 0.6: half-width 0.8.
        let len = w.clip_segment_len(Vec2::new(-2.0, 0.6), Vec2::new(2.0, 0.6));
        assert_relative_eq!(len, 1.6, epsilon = 1e-12);
        // Missing segment.
        assert_eq!(
            w.clip_segment_len(Vec2::new(-2.0, 1.5), Vec2::new(2.0, 1.5)),
            0.0
        );
    }

    #[test]
    fn polygon_window_counts_on_boundary_edges_fully() {
        let w = Window::convex_polygon(vec![
            Vec2::new(-1.0, -1.0),
            Vec2::new(1.0, -1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(-1.0, 1.0),
        ])
        .unwrap();
        // Segment lying exactly on the top window edge.
        let len = w.clip_segment_len(Vec2::new(-3.0, 1.0), Vec2::new(3.0, 1.0));
        assert_relative_eq!(len, 2.0);
        // Segment outside.
        assert_eq!(
            w.clip_segment_len(Vec2::new(-3.0, 1.5), Vec2::new(3.0, 1.5)),
            0.0
        );
    }

    #[test]
    fn cw_polygon_is_reoriented() {
        let w = Window::convex_polygon(vec![
            Vec2::new(-1.0, -1.0),
            Vec2::new(-1.0, 1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(1.0, -1.0),
        ])
        .unwrap();
        assert!(w.contains(Vec2::ZERO));
        assert!(!w.contains(Vec2::new(2.0, 0.0)));
        assert_relative_eq!(w.interior_distance(Vec2::ZERO), 1.0);
    }

    #[test]
    fn nonconvex_polygon_rejected() {
        let r = Window::convex_polygon(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(1.0, 0.5),
            Vec2::new(2.0, 2.0),
        ]);
        assert!(r.is_err());
    }

    #[test]
    fn closure_containment_is_strict() {
        let w = Window::disk(Vec2::ZERO, 2.0).unwrap();
        let inside = Loop::new(vec![
            Vec2::new(-1.0, -1.0),
            Vec2::new(1.0, -1.0),
            Vec2::new(0.0, 1.0),
        ]);
        assert!(w.contains_loop_closure(&inside));
        let touching = Loop::new(vec![
            Vec2::new(-1.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 2.0),
        ]);
        assert!(!w.contains_loop_closure(&touching));
    }
}
