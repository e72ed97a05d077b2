//! Polygonal sets of locally finite perimeter.
//!
//! A [`PolygonalSet`] is bounded by a disjoint union of simple polygonal
//! loops. Orientation is encoded in the winding: positively oriented
//! (counterclockwise) loops bound material on their inside, negatively
//! oriented loops are holes. The outward unit normal of an edge traversed in
//! loop order is the -90 degree rotation of its direction, which points away
//! from the material side for both windings.
//!
//! All values are immutable; operations return new sets.

pub mod arc;
pub mod gauss_green;
pub mod region;
pub(crate) mod seg;
pub mod setops;
pub mod window;

use alloc::vec::Vec;

use crate::error::GeometryError;
use crate::tol::Tolerances;
use crate::vec2::Vec2;

pub use arc::{net_normal, shorten_chord, Arc, Chord};
pub use gauss_green::{check_gauss_green_identities, GaussGreenReport};
pub use region::{classify_region, enclosed_region, interior_point, RegionSide};
pub use setops::{set_difference, set_union};
pub use window::Window;

/// Winding of a loop: positive loops bound material, negative loops are holes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Positive,
    Negative,
}

/// A closed polygonal loop. The edge from the last vertex back to the first
/// is implicit.
#[derive(Clone, Debug, PartialEq)]
pub struct Loop {
    vertices: Vec<Vec2>,
}

impl Loop {
    pub fn new(vertices: Vec<Vec2>) -> Self {
        Loop { vertices }
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Vec2 {
        self.vertices[i % self.vertices.len()]
    }

    /// Endpoints of edge `i`, from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> (Vec2, Vec2) {
        let n = self.vertices.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    pub fn edge_vector(&self, i: usize) -> Vec2 {
        let (a, b) = self.edge(i);
        b - a
    }

    pub fn edge_len(&self, i: usize) -> f64 {
        self.edge_vector(i).norm()
    }

    /// Outward unit normal of edge `i` (rotation of the direction by -90
    /// degrees). Returns `None` for a zero-length edge.
    pub fn edge_normal(&self, i: usize) -> Option<Vec2> {
        self.edge_vector(i).rot_cw().normalized()
    }

    /// Signed shoelace area: positive for counterclockwise winding.
    pub fn signed_area(&self) -> f64 {
        let n = self.vertices.len();
        if n < 3 {
            return 0.0;
        }
        let mut acc = 0.0;
        for i in 0..n {
            let (a, b) = self.edge(i);
            acc += a.cross(b);
        }
        0.5 * acc
    }

    pub fn orientation(&self) -> Orientation {
        if self.signed_area() >= 0.0 {
            Orientation::Positive
        } else {
            Orientation::Negative
        }
    }

    pub fn perimeter(&self) -> f64 {
        (0..self.vertices.len()).map(|i| self.edge_len(i)).sum()
    }

    pub fn reversed(&self) -> Loop {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Loop { vertices }
    }

    /// Even-odd crossing count parity for the ray to the right of `p`.
    /// Undefined for points on the boundary; callers check distance first.
    pub fn winding_contains(&self, p: Vec2) -> bool {
        let mut crossings = 0usize;
        let n = self.vertices.len();
        for i in 0..n {
            let (a, b) = self.edge(i);
            let (y_min, y_max) = if a.y < b.y { (a.y, b.y) } else { (b.y, a.y) };
            if a.y == b.y || p.y < y_min || p.y >= y_max {
                continue;
            }
            let t = (p.y - a.y) / (b.y - a.y);
            if a.x + t * (b.x - a.x) > p.x {
                crossings += 1;
            }
        }
        crossings % 2 == 1
    }

    /// Distance from `p` to the loop's boundary polyline.
    pub fn distance_to(&self, p: Vec2) -> f64 {
        (0..self.vertices.len())
            .map(|i| {
                let (a, b) = self.edge(i);
                seg::point_segment_dist(p, a, b)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Locates `p` on the loop: the edge index and parameter of the closest
    /// boundary point, provided it is within `eps`.
    pub fn locate(&self, p: Vec2, eps: f64) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64, f64)> = None;
        for i in 0..self.vertices.len() {
            let (a, b) = self.edge(i);
            let d = seg::point_segment_dist(p, a, b);
            if d <= eps && best.map_or(true, |(_, _, bd)| d < bd) {
                let t = seg::project_param(p, a, b).clamp(0.0, 1.0);
                best = Some((i, t, d));
            }
        }
        best.map(|(i, t, _)| (i, t))
    }

    /// The point at loop position `(edge, t)`.
    pub fn point_at(&self, edge: usize, t: f64) -> Vec2 {
        let (a, b) = self.edge(edge);
        a.lerp(b, t)
    }

    fn bbox(&self) -> (Vec2, Vec2) {
        let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            lo.x = lo.x.min(v.x);
            lo.y = lo.y.min(v.y);
            hi.x = hi.x.max(v.x);
            hi.y = hi.y.max(v.y);
        }
        (lo, hi)
    }
}

/// A set of locally finite perimeter bounded by simple, pairwise
/// non-crossing polygonal loops.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct PolygonalSet {
    loops: Vec<Loop>,
}

impl PolygonalSet {
    /// Normalizes and validates. The result has no zero-length edges, no
    /// collinear-redundant vertices, no degenerate loops, and a simple,
    /// non-crossing boundary.
    pub fn new(loops: Vec<Loop>, tol: &Tolerances) -> Result<Self, GeometryError> {
        // Proper crossings are rejected on the raw input: normalization may
        // only clean up measure-zero debris, not hide a crossing boundary
        // (a bowtie has zero area but is still invalid).
        let raw = PolygonalSet { loops };
        if !proper_crossings(&raw).is_empty() {
            return Err(GeometryError::CrossingBoundary);
        }
        let set = raw.normalized(tol);
        set.validate(tol)?;
        Ok(set)
    }

    /// Wraps loops without normalization or validation. Used by diagnostics
    /// that must accept invalid boundaries (e.g. crossing detection).
    pub fn from_loops_unchecked(loops: Vec<Loop>) -> Self {
        PolygonalSet { loops }
    }

    /// The empty set.
    pub fn empty() -> Self {
        PolygonalSet { loops: Vec::new() }
    }

    pub fn loops(&self) -> &[Loop] {
        &self.loops
    }

    pub fn is_empty(&self) -> bool {
        self.loops.is_empty()
    }

    /// Total area (holes contribute negatively via their winding).
    pub fn area(&self) -> f64 {
        self.loops.iter().map(Loop::signed_area).sum()
    }

    /// Total boundary length.
    pub fn perimeter(&self) -> f64 {
        self.loops.iter().map(Loop::perimeter).sum()
    }

    /// Even-odd material test over all loops. Valid nesting (holes inside
    /// material, islands inside holes) makes parity the material indicator.
    pub fn contains(&self, p: Vec2) -> bool {
        let inside = self
            .loops
            .iter()
            .filter(|l| l.winding_contains(p))
            .count();
        inside % 2 == 1
    }

    /// Distance from `p` to the nearest boundary point.
    pub fn distance_to_boundary(&self, p: Vec2) -> f64 {
        self.loops
            .iter()
            .map(|l| l.distance_to(p))
            .fold(f64::INFINITY, f64::min)
    }

    /// Merges near-coincident vertices, removes collinear-redundant vertices
    /// and drops degenerate loops.
    pub fn normalized(&self, tol: &Tolerances) -> Self {
        let loops = self
            .loops
            .iter()
            .filter_map(|l| normalize_loop(l, tol))
            .collect();
        PolygonalSet { loops }
    }

    /// Checks every structural invariant: enough vertices, no zero edges, no
    /// collinear-redundant vertices, simple loops, no crossings or overlaps
    /// between loops, nonzero areas.
    pub fn validate(&self, tol: &Tolerances) -> Result<(), GeometryError> {
        for (li, l) in self.loops.iter().enumerate() {
            if l.len() < 3 {
                return Err(GeometryError::TooFewVertices { loop_index: li });
            }
            for i in 0..l.len() {
                if l.edge_len(i) <= tol.merge_dist {
                    return Err(GeometryError::DegenerateEdge {
                        loop_index: li,
                        edge_index: i,
                    });
                }
            }
            for i in 0..l.len() {
                let incoming = l.edge_vector((i + l.len() - 1) % l.len());
                let outgoing = l.edge_vector(i);
                if incoming.cross(outgoing).abs() <= tol.collinear_cross
                    && incoming.dot(outgoing) < 0.0
                {
                    // Fold-back spike: the boundary retraces itself.
                    return Err(GeometryError::CrossingBoundary);
                }
            }
            if l.signed_area().abs() <= 0.5 * tol.merge_dist * l.perimeter() {
                return Err(GeometryError::ZeroAreaLoop { loop_index: li });
            }
            // Non-adjacent edges of the same loop must not touch at all.
            let n = l.len();
            for i in 0..n {
                for j in (i + 1)..n {
                    if j == i + 1 || (i == 0 && j == n - 1) {
                        continue;
                    }
                    let (p, q) = l.edge(i);
                    let (a, b) = l.edge(j);
                    if seg::segment_hit(p, q, a, b, tol.on_boundary) != seg::SegHit::None {
                        return Err(GeometryError::CrossingBoundary);
                    }
                }
            }
        }
        // Distinct loops: no crossings, no positive-length overlaps.
        // Isolated touch points are tolerated.
        for li in 0..self.loops.len() {
            for lj in (li + 1)..self.loops.len() {
                let (la, lb) = (&self.loops[li], &self.loops[lj]);
                let (alo, ahi) = la.bbox();
                let (blo, bhi) = lb.bbox();
                let m = tol.on_boundary;
                if ahi.x + m < blo.x || bhi.x + m < alo.x || ahi.y + m < blo.y || bhi.y + m < alo.y
                {
                    continue;
                }
                for i in 0..la.len() {
                    let (p, q) = la.edge(i);
                    for j in 0..lb.len() {
                        let (a, b) = lb.edge(j);
                        if seg::segments_cross_properly(p, q, a, b).is_some() {
                            return Err(GeometryError::CrossingBoundary);
                        }
                        if seg::segment_hit(p, q, a, b, tol.on_boundary) == seg::SegHit::Overlap {
                            return Err(GeometryError::CrossingBoundary);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Returns `self` without loop `index`.
    pub fn without_loop(&self, index: usize) -> Self {
        let mut loops = self.loops.clone();
        loops.remove(index);
        PolygonalSet { loops }
    }

    /// Returns `self` with an extra loop appended (unvalidated).
    pub(crate) fn with_loop(&self, l: Loop) -> Self {
        let mut loops = self.loops.clone();
        loops.push(l);
        PolygonalSet { loops }
    }

    pub(crate) fn replace_loop(&self, index: usize, l: Option<Loop>) -> Self {
        let mut loops = self.loops.clone();
        match l {
            Some(l) => loops[index] = l,
            None => {
                loops.remove(index);
            }
        }
        PolygonalSet { loops }
    }
}

/// All transversal crossing points: self-intersections within a loop
/// (non-adjacent edges) and crossings between distinct loops.
pub fn proper_crossings(set: &PolygonalSet) -> Vec<Vec2> {
    let mut out = Vec::new();
    let loops = set.loops();
    for li in 0..loops.len() {
        let la = &loops[li];
        let n = la.len();
        for i in 0..n {
            let (p, q) = la.edge(i);
            // Within the same loop, skip adjacent edges.
            for j in (i + 1)..n {
                if n > 0 && (j == i + 1 || (i == 0 && j == n - 1)) {
                    continue;
                }
                let (a, b) = la.edge(j);
                if let Some(x) = seg::segments_cross_properly(p, q, a, b) {
                    out.push(x);
                }
            }
            for lb in loops.iter().skip(li + 1) {
                for j in 0..lb.len() {
                    let (a, b) = lb.edge(j);
                    if let Some(x) = seg::segments_cross_properly(p, q, a, b) {
                        out.push(x);
                    }
                }
            }
        }
    }
    out
}

/// Per-edge outward unit normals, one list per loop.
pub fn outward_normals(set: &PolygonalSet) -> Result<Vec<Vec<Vec2>>, GeometryError> {
    set.loops
        .iter()
        .enumerate()
        .map(|(li, l)| {
            (0..l.len())
                .map(|i| {
                    l.edge_normal(i).ok_or(GeometryError::DegenerateEdge {
                        loop_index: li,
                        edge_index: i,
                    })
                })
                .collect()
        })
        .collect()
}

fn normalize_loop(l: &Loop, tol: &Tolerances) -> Option<Loop> {
    let mut vertices: Vec<Vec2> = l.vertices.clone();

    // Alternate merge and collinear-removal passes until stable; removing a
    // straight-through vertex can expose a new near-duplicate and vice versa.
    loop {
        let before = vertices.len();

        let mut merged: Vec<Vec2> = Vec::with_capacity(vertices.len());
        for &v in &vertices {
            if merged.last().map_or(true, |&u| u.dist(v) > tol.merge_dist) {
                merged.push(v);
            }
        }
        while merged.len() > 1
            && merged[0].dist(*merged.last().unwrap()) <= tol.merge_dist
        {
            merged.pop();
        }
        vertices = merged;
        if vertices.len() < 3 {
            return None;
        }

        let n = vertices.len();
        let keep: Vec<Vec2> = (0..n)
            .filter(|&i| {
                let prev = vertices[(i + n - 1) % n];
                let here = vertices[i];
                let next = vertices[(i + 1) % n];
                let incoming = here - prev;
                let outgoing = next - here;
                // Keep genuine corners and fold-back spikes (the latter are a
                // validation error, not something normalization may erase).
                incoming.cross(outgoing).abs() > tol.collinear_cross
                    || incoming.dot(outgoing) < 0.0
            })
            .map(|i| vertices[i])
            .collect();
        vertices = keep;
        if vertices.len() < 3 {
            return None;
        }
        if vertices.len() == before {
            break;
        }
    }

    let out = Loop { vertices };
    if out.signed_area().abs() <= 0.5 * tol.merge_dist * out.perimeter() {
        return None;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    pub(crate) fn unit_square() -> Loop {
        Loop::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
        ])
    }

    #[test]
    fn square_normals_point_outward() {
        let set = PolygonalSet::new(vec![unit_square()], &Tolerances::default()).unwrap();
        let normals = outward_normals(&set).unwrap();
        assert_eq!(normals[0][0], Vec2::new(0.0, -1.0)); // bottom
        assert_eq!(normals[0][1], Vec2::new(1.0, 0.0)); // right
        assert_eq!(normals[0][2], Vec2::new(0.0, 1.0)); // top
        assert_eq!(normals[0][3], Vec2::new(-1.0, 0.0)); // left
    }

    #[test]
    fn hole_normals_point_into_hole() {
        // Clockwise inner square: a hole. Its outward-of-material normals
        // point into the hole.
        let outer = Loop::new(vec![
            Vec2::new(-2.0, -2.0),
            Vec2::new(2.0, -2.0),
            Vec2::new(2.0, 2.0),
            Vec2::new(-2.0, 2.0),
        ]);
        let hole = Loop::new(vec![
            Vec2::new(-1.0, -1.0),
            Vec2::new(-1.0, 1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(1.0, -1.0),
        ]);
        assert_eq!(hole.orientation(), Orientation::Negative);
        let set = PolygonalSet::new(vec![outer, hole], &Tolerances::default()).unwrap();
        let normals = outward_normals(&set).unwrap();
        // First hole edge runs (-1,-1) -> (-1,1); rot_cw(0,1) = (1,0) points
        // toward the hole center.
        assert_eq!(normals[1][0], Vec2::new(1.0, 0.0));
        assert!(set.contains(Vec2::new(-1.5, 0.0)));
        assert!(!set.contains(Vec2::new(0.0, 0.0)));
    }

    #[test]
    fn closed_loop_normal_sum_vanishes() {
        let l = unit_square();
        let mut acc = Vec2::ZERO;
        for i in 0..l.len() {
            acc += l.edge_normal(i).unwrap() * l.edge_len(i);
        }
        assert!(acc.norm() <= 1e-12 * l.perimeter());
    }

    #[test]
    fn normalization_merges_and_straightens() {
        let l = Loop::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(0.5, 0.0), // collinear
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1e-14), // near-duplicate of previous
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
        ]);
        let set = PolygonalSet::new(vec![l], &Tolerances::default()).unwrap();
        assert_eq!(set.loops()[0].len(), 4);
        assert!((set.area() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn self_crossing_rejected() {
        let bowtie = Loop::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
        ]);
        assert_eq!(
            PolygonalSet::new(vec![bowtie], &Tolerances::default()),
            Err(GeometryError::CrossingBoundary)
        );
    }

    #[test]
    fn overlapping_loops_rejected() {
        let a = unit_square();
        let b = Loop::new(vec![
            Vec2::new(0.5, 0.5),
            Vec2::new(1.5, 0.5),
            Vec2::new(1.5, 1.5),
            Vec2::new(0.5, 1.5),
        ]);
        assert_eq!(
            PolygonalSet::new(vec![a, b], &Tolerances::default()),
            Err(GeometryError::CrossingBoundary)
        );
    }

    #[test]
    fn even_odd_contains() {
        let set = PolygonalSet::new(vec![unit_square()], &Tolerances::default()).unwrap();
        assert!(set.contains(Vec2::new(0.5, 0.5)));
        assert!(!set.contains(Vec2::new(1.5, 0.5)));
    }
}
