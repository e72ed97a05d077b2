//! The Jordan region bounded by an arc and its chord, and its classification
//! against the ambient set.

use alloc::vec::Vec;

use crate::error::GeometryError;
use crate::tol::Tolerances;
use crate::vec2::Vec2;

use super::{Arc, Chord, Loop, PolygonalSet};

/// Which side of the ambient set a region lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionSide {
    InsideE,
    OutsideE,
}

/// The bounded open region enclosed by `arc` and `chord`, as a positively
/// oriented simple polygon.
///
/// The pair must form a Jordan curve (guaranteed after chord shortening);
/// violations surface as [`GeometryError::NotJordan`].
pub fn enclosed_region(arc: &Arc, chord: &Chord, tol: &Tolerances) -> Result<Loop, GeometryError> {
    if arc.x1().dist(chord.start) > tol.on_boundary || arc.x2().dist(chord.end) > tol.on_boundary {
        return Err(GeometryError::NotJordan);
    }
    // Closing the arc polyline with the implicit last-to-first edge yields
    // exactly arc + chord.
    let candidate = Loop::new(arc.points().to_vec());
    let region = PolygonalSet::new(alloc::vec![candidate], tol)
        .map_err(|_| GeometryError::NotJordan)?;
    let l = region
        .loops()
        .first()
        .cloned()
        .ok_or(GeometryError::NotJordan)?;
    Ok(match l.orientation() {
        super::Orientation::Positive => l,
        super::Orientation::Negative => l.reversed(),
    })
}

/// An interior point of a simple polygon, placed away from the boundary.
///
/// Scans horizontal lines between consecutive distinct vertex heights and
/// returns the midpoint of the widest inside interval found.
pub fn interior_point(region: &Loop) -> Result<Vec2, GeometryError> {
    let mut ys: Vec<f64> = region.vertices().iter().map(|v| v.y).collect();
    ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ys.dedup();
    if ys.len() < 2 {
        return Err(GeometryError::DegenerateRegion);
    }

    let mut best: Option<(Vec2, f64)> = None;
    for pair in ys.windows(2) {
        let y = 0.5 * (pair[0] + pair[1]);
        let mut xs = xs_at_y(region, y);
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for k in (0..xs.len().saturating_sub(1)).step_by(2) {
            let width = xs[k + 1] - xs[k];
            let p = Vec2::new(0.5 * (xs[k] + xs[k + 1]), y);
            let clearance = width.min(pair[1] - pair[0]);
            if best.map_or(true, |(_, c)| clearance > c) {
                best = Some((p, clearance));
            }
        }
    }
    best.map(|(p, _)| p).ok_or(GeometryError::DegenerateRegion)
}

fn xs_at_y(region: &Loop, y: f64) -> Vec<f64> {
    let mut xs = Vec::new();
    for i in 0..region.len() {
        let (a, b) = region.edge(i);
        if a.y == b.y {
            continue;
        }
        let (y_min, y_max) = if a.y < b.y { (a.y, b.y) } else { (b.y, a.y) };
        if y < y_min || y >= y_max {
            continue;
        }
        let t = (y - a.y) / (b.y - a.y);
        xs.push(a.x + t * (b.x - a.x));
    }
    xs
}

/// Classifies the enclosed region against the ambient set by a point-in-set
/// test at an interior sample point kept clear of both boundaries.
///
/// The region interior must not meet the ambient boundary (true by
/// construction after shortening); a region too thin to sample reliably is
/// reported as degenerate.
pub fn classify_region(
    region: &Loop,
    ambient: &PolygonalSet,
    tol: &Tolerances,
) -> Result<RegionSide, GeometryError> {
    let clearance = tol.on_boundary;
    let candidates = sample_candidates(region);
    for p in candidates {
        if region.distance_to(p) > clearance
            && region.winding_contains(p)
            && ambient.distance_to_boundary(p) > clearance
        {
            return Ok(if ambient.contains(p) {
                RegionSide::InsideE
            } else {
                RegionSide::OutsideE
            });
        }
    }
    Err(GeometryError::DegenerateRegion)
}

/// Interior sample candidates, best first: widest-interval scanline points
/// at several heights.
fn sample_candidates(region: &Loop) -> Vec<Vec2> {
    let mut out = Vec::new();
    if let Ok(p) = interior_point(region) {
        out.push(p);
    }
    let mut ys: Vec<f64> = region.vertices().iter().map(|v| v.y).collect();
    ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ys.dedup();
    for pair in ys.windows(2) {
        for f in [0.5, 0.25, 0.75] {
            let y = pair[0] + f * (pair[1] - pair[0]);
            let mut xs = xs_at_y(region, y);
            xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for k in (0..xs.len().saturating_sub(1)).step_by(2) {
                out.push(Vec2::new(0.5 * (xs[k] + xs[k + 1]), y));
            }
        }
    }
    out
}
