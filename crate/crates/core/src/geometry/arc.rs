//! Boundary arcs and their chords.
//!
//! An [`Arc`] is a contiguous run along one loop, materialized as a polyline
//! in loop-traversal order. Endpoints may sit mid-edge: chord shortening and
//! window trimming both cut edges at interior points. Each endpoint keeps its
//! loop position (edge index plus parameter) so splicing stays exact.

use alloc::vec::Vec;

use crate::error::GeometryError;
use crate::tol::Tolerances;
use crate::vec2::Vec2;

use super::seg::{self, SegHit};
use super::{Loop, PolygonalSet};

/// Position on a loop: edge index plus parameter in [0, 1) along that edge.
/// Canonical form snaps parameters at the far end of an edge to the start of
/// the next one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LoopPos {
    pub edge: usize,
    pub t: f64,
}

impl LoopPos {
    /// Snaps near-vertex parameters so that `t` is never within `merge_dist`
    /// of 1 (such positions move to the start of the following edge).
    pub fn canonical(self, l: &Loop, merge_dist: f64) -> LoopPos {
        let len = l.edge_len(self.edge);
        if self.t * len <= merge_dist {
            LoopPos {
                edge: self.edge % l.len(),
                t: 0.0,
            }
        } else if (1.0 - self.t) * len <= merge_dist {
            LoopPos {
                edge: (self.edge + 1) % l.len(),
                t: 0.0,
            }
        } else {
            LoopPos {
                edge: self.edge % l.len(),
                t: self.t,
            }
        }
    }
}

/// A contiguous boundary run with endpoints `x1 = points()[0]` and
/// `x2 = points().last()`. Endpoints are distinct (closed runs are handled by
/// the island move, not by arcs).
#[derive(Clone, Debug, PartialEq)]
pub struct Arc {
    loop_index: usize,
    start: LoopPos,
    end: LoopPos,
    points: Vec<Vec2>,
}

impl Arc {
    /// A standalone polyline arc not attached to any set. Used for direct
    /// energy evaluation; it cannot be spliced.
    pub fn from_points(points: Vec<Vec2>) -> Result<Self, GeometryError> {
        Self::with_positions(
            0,
            LoopPos { edge: 0, t: 0.0 },
            LoopPos { edge: 0, t: 0.0 },
            points,
        )
    }

    /// The arc covering `n_edges` whole edges of loop `loop_index`, starting
    /// at vertex `start_edge`.
    pub fn on_loop(
        set: &PolygonalSet,
        loop_index: usize,
        start_edge: usize,
        n_edges: usize,
    ) -> Result<Self, GeometryError> {
        let l = &set.loops()[loop_index];
        let n = l.len();
        if n_edges == 0 || n_edges >= n {
            return Err(GeometryError::InvalidArc("edge count out of range"));
        }
        let mut points = Vec::with_capacity(n_edges + 1);
        for k in 0..=n_edges {
            points.push(l.vertex(start_edge + k));
        }
        Self::with_positions(
            loop_index,
            LoopPos {
                edge: start_edge % n,
                t: 0.0,
            },
            LoopPos {
                edge: (start_edge + n_edges) % n,
                t: 0.0,
            },
            points,
        )
    }

    /// The arc from loop position `start` forward (in loop order) to `end`.
    /// Either position may cut an edge at an interior point.
    pub fn on_loop_trimmed(
        set: &PolygonalSet,
        loop_index: usize,
        start: LoopPos,
        end: LoopPos,
        tol: &Tolerances,
    ) -> Result<Self, GeometryError> {
        let l = &set.loops()[loop_index];
        let n = l.len();
        let start = start.canonical(l, tol.merge_dist);
        let end = end.canonical(l, tol.merge_dist);
        let x1 = l.point_at(start.edge, start.t);
        let x2 = l.point_at(end.edge, end.t);

        let mut points = Vec::new();
        points.push(x1);
        let mut edge = start.edge;
        let mut steps = 0usize;
        loop {
            let at_end = edge == end.edge && (steps > 0 || start.edge != end.edge || end.t >= start.t);
            if at_end {
                break;
            }
            let next_vertex = l.vertex(edge + 1);
            if points.last().unwrap().dist(next_vertex) > tol.merge_dist {
                points.push(next_vertex);
            }
            edge = (edge + 1) % n;
            steps += 1;
            if steps > n {
                return Err(GeometryError::InvalidArc("trimmed arc wraps whole loop"));
            }
        }
        if points.last().unwrap().dist(x2) > tol.merge_dist {
            points.push(x2);
        }
        Self::with_positions(loop_index, start, end, points)
    }

    fn with_positions(
        loop_index: usize,
        start: LoopPos,
        end: LoopPos,
        points: Vec<Vec2>,
    ) -> Result<Self, GeometryError> {
        if points.len() < 2 {
            return Err(GeometryError::InvalidArc("fewer than two points"));
        }
        for w in points.windows(2) {
            if w[0].dist(w[1]) == 0.0 {
                return Err(GeometryError::InvalidArc("repeated consecutive point"));
            }
        }
        if points[0] == *points.last().unwrap() {
            return Err(GeometryError::InvalidArc("closed arc (x1 == x2)"));
        }
        Ok(Arc {
            loop_index,
            start,
            end,
            points,
        })
    }

    pub fn loop_index(&self) -> usize {
        self.loop_index
    }

    pub fn start_pos(&self) -> LoopPos {
        self.start
    }

    pub fn end_pos(&self) -> LoopPos {
        self.end
    }

    pub fn points(&self) -> &[Vec2] {
        &self.points
    }

    pub fn x1(&self) -> Vec2 {
        self.points[0]
    }

    pub fn x2(&self) -> Vec2 {
        *self.points.last().unwrap()
    }

    pub fn edge_count(&self) -> usize {
        self.points.len() - 1
    }

    /// Arc length.
    pub fn length(&self) -> f64 {
        self.points.windows(2).map(|w| w[0].dist(w[1])).sum()
    }

    /// Per-edge (start, end, outward unit normal, length) in traversal order.
    pub fn edges(&self) -> impl Iterator<Item = (Vec2, Vec2, Vec2, f64)> + '_ {
        self.points.windows(2).map(|w| {
            let d = w[1] - w[0];
            let len = d.norm();
            (w[0], w[1], d.rot_cw() / len, len)
        })
    }

    /// Largest pairwise angle between edge normals, in [0, pi].
    pub fn normal_spread(&self) -> f64 {
        let normals: Vec<Vec2> = self.edges().map(|(_, _, n, _)| n).collect();
        let mut spread: f64 = 0.0;
        for i in 0..normals.len() {
            for j in (i + 1)..normals.len() {
                spread = spread.max(normals[i].angle_between(normals[j]));
            }
        }
        spread
    }
}

/// The straight segment replacing an arc, carrying the constant outward unit
/// normal the competitor's boundary has there.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Chord {
    pub start: Vec2,
    pub end: Vec2,
    pub normal: Vec2,
    pub length: f64,
}

impl Chord {
    /// Chord from `x1` to `x2`, traversed in arc order; the normal is the
    /// -90 degree rotation of the direction, matching the loop convention.
    pub fn between(x1: Vec2, x2: Vec2) -> Result<Self, GeometryError> {
        let d = x2 - x1;
        let length = d.norm();
        if length == 0.0 {
            return Err(GeometryError::InvalidArc("chord endpoints coincide"));
        }
        Ok(Chord {
            start: x1,
            end: x2,
            normal: d.rot_cw() / length,
            length,
        })
    }
}

/// The vector integral of the outward normal along the arc.
///
/// Equals the -90 degree rotation of `x2 - x1` by linearity; the identity is
/// asserted in debug builds.
pub fn net_normal(arc: &Arc) -> Vec2 {
    let mut acc = Vec2::ZERO;
    for (_, _, normal, len) in arc.edges() {
        acc += normal * len;
    }
    debug_assert!(
        (acc - (arc.x2() - arc.x1()).rot_cw()).norm() <= 1e-9 * (1.0 + arc.length()),
        "net normal must be the rotated endpoint displacement"
    );
    acc
}

/// Shortens the chord of `arc` so it meets `boundary` only at its endpoints.
///
/// If the open segment x1-x2 meets the boundary at interior points
/// (tangential touches count), the chord is cut at the first such point
/// measured from x1 and the arc is cut at the same point, so the pair still
/// bounds a Jordan curve. Returns `None` when the arc has to be rejected:
/// the chord overlaps a boundary edge over positive length (degenerate
/// chord), the first cut does not land on this arc, or the cut arc
/// degenerates.
pub fn shorten_chord(
    arc: &Arc,
    boundary: &PolygonalSet,
    tol: &Tolerances,
) -> Option<(Arc, Chord)> {
    let x1 = arc.x1();
    let x2 = arc.x2();
    let seg_len = x1.dist(x2);
    if seg_len <= tol.merge_dist {
        return None;
    }
    let t_eps = (tol.on_boundary / seg_len).min(0.25);

    let mut hits: Vec<f64> = Vec::new();
    for l in boundary.loops() {
        for i in 0..l.len() {
            let (a, b) = l.edge(i);
            match seg::segment_hit(x1, x2, a, b, tol.on_boundary) {
                SegHit::Overlap => return None,
                SegHit::At(t) => {
                    if t > t_eps && t < 1.0 - t_eps {
                        hits.push(t);
                    }
                }
                SegHit::None => {}
            }
        }
    }

    if hits.is_empty() {
        let chord = Chord::between(x1, x2).ok()?;
        return Some((arc.clone(), chord));
    }

    hits.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let cut = x1.lerp(x2, hits[0]);

    // The cut point must lie on this arc for the sub-arc to be well defined.
    let mut found: Option<(usize, f64)> = None;
    for (i, w) in arc.points.windows(2).enumerate() {
        if seg::point_segment_dist(cut, w[0], w[1]) <= tol.on_boundary {
            found = Some((i, seg::project_param(cut, w[0], w[1]).clamp(0.0, 1.0)));
            break;
        }
    }
    let (arc_edge, u) = found?;

    let mut points: Vec<Vec2> = arc.points[..=arc_edge].to_vec();
    if cut.dist(*points.last().unwrap()) > tol.merge_dist {
        points.push(cut);
    }
    if points.len() < 2 || points[0].dist(*points.last().unwrap()) <= tol.merge_dist {
        return None;
    }

    let end_pos = cut_position(arc, boundary, arc_edge, u, tol)?;
    let shortened = Arc::with_positions(arc.loop_index, arc.start, end_pos, points).ok()?;
    let chord = Chord::between(shortened.x1(), shortened.x2()).ok()?;
    Some((shortened, chord))
}

/// Loop position of a point sitting on arc edge `arc_edge` at parameter `u`.
///
/// Arc edges align with loop edges one-for-one from the (canonical) start
/// position, whether or not the first edge is partial.
fn cut_position(
    arc: &Arc,
    boundary: &PolygonalSet,
    arc_edge: usize,
    u: f64,
    tol: &Tolerances,
) -> Option<LoopPos> {
    let l = boundary.loops().get(arc.loop_index)?;
    let n = l.len();
    let loop_edge = (arc.start.edge + arc_edge) % n;
    let (a, b) = l.edge(loop_edge);
    let p = arc.points[arc_edge].lerp(arc.points[arc_edge + 1], u);
    if seg::point_segment_dist(p, a, b) > 4.0 * tol.on_boundary {
        return None;
    }
    let t = seg::project_param(p, a, b).clamp(0.0, 1.0);
    Some(LoopPos { edge: loop_edge, t }.canonical(l, tol.merge_dist))
}

/// Locates the loop whose boundary carries `p`, with its position.
pub(crate) fn locate_on_set(set: &PolygonalSet, p: Vec2, eps: f64) -> Option<(usize, usize, f64)> {
    for (li, l) in set.loops().iter().enumerate() {
        if let Some((edge, t)) = l.locate(p, eps) {
            return Some((li, edge, t));
        }
    }
    None
}
