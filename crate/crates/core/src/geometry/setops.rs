//! Boolean-style set operations restricted to the shapes descent produces.
//!
//! The operations assume the region's boundary decomposes into a sub-arc
//! shared with the ambient set and a replacement polyline meeting the set
//! only at the arc endpoints (the chord, after shortening). Under that
//! precondition both difference and union are the same boundary surgery:
//! cut the shared arc out of its loop and stitch in the replacement.

use alloc::vec::Vec;

use crate::error::GeometryError;
use crate::tol::Tolerances;
use crate::vec2::Vec2;

use super::arc::{locate_on_set, Arc, LoopPos};
use super::region::{classify_region, interior_point, RegionSide};
use super::seg::{self, SegHit};
use super::{Loop, PolygonalSet};

/// Replaces the boundary run `[start, end]` of one loop by `replacement`
/// (a polyline from the point at `start` to the point at `end`, endpoints
/// included). The result is normalized and fully validated.
pub(crate) fn splice(
    set: &PolygonalSet,
    loop_index: usize,
    start: LoopPos,
    end: LoopPos,
    replacement: &[Vec2],
    tol: &Tolerances,
) -> Result<PolygonalSet, GeometryError> {
    if replacement.len() < 2 {
        return Err(GeometryError::SetOperation("replacement needs 2+ points"));
    }
    // Complement run from the arc end back to the arc start, in loop order.
    let complement = Arc::on_loop_trimmed(set, loop_index, end, start, tol)?;
    let mut vertices = complement.points().to_vec();
    for &p in &replacement[1..replacement.len() - 1] {
        vertices.push(p);
    }
    let new_loop = Loop::new(vertices);
    let out = set.replace_loop(loop_index, Some(new_loop)).normalized(tol);
    out.validate(tol)?;
    Ok(out)
}

/// F = E \ G for a region `G` classified inside `E`.
///
/// Handles the shared-arc surgery, removal of a whole loop coinciding with
/// the region, and interior regions (hole punch). See [`set_union`] for the
/// mirrored cases.
pub fn set_difference(
    set: &PolygonalSet,
    region: &Loop,
    tol: &Tolerances,
) -> Result<PolygonalSet, GeometryError> {
    apply_region_op(set, region, RegionSide::InsideE, tol)
}

/// F = E ∪ G for a region `G` classified outside `E`.
pub fn set_union(
    set: &PolygonalSet,
    region: &Loop,
    tol: &Tolerances,
) -> Result<PolygonalSet, GeometryError> {
    apply_region_op(set, region, RegionSide::OutsideE, tol)
}

fn apply_region_op(
    set: &PolygonalSet,
    region: &Loop,
    side: RegionSide,
    tol: &Tolerances,
) -> Result<PolygonalSet, GeometryError> {
    // Empty region: identity for both operations.
    if region.len() < 3 || region.signed_area().abs() <= 0.5 * tol.merge_dist * region.perimeter()
    {
        return Ok(set.clone());
    }
    let region = match region.orientation() {
        super::Orientation::Positive => region.clone(),
        super::Orientation::Negative => region.reversed(),
    };

    let on: Vec<bool> = (0..region.len())
        .map(|i| {
            let (a, b) = region.edge(i);
            let m = a.midpoint(b);
            set.distance_to_boundary(a) <= tol.on_boundary
                && set.distance_to_boundary(b) <= tol.on_boundary
                && set.distance_to_boundary(m) <= tol.on_boundary
        })
        .collect();

    if on.iter().all(|&b| b) {
        return remove_matching_loop(set, &region, side, tol);
    }
    if on.iter().all(|&b| !b) {
        return detached_region_op(set, &region, side, tol);
    }

    // Shared-arc case: the on-run must be a single contiguous cyclic block.
    let n = region.len();
    let run_start = (0..n)
        .find(|&i| on[i] && !on[(i + n - 1) % n])
        .ok_or(GeometryError::SetOperation("shared arc is not contiguous"))?;
    let mut run_len = 0;
    while run_len < n && on[(run_start + run_len) % n] {
        run_len += 1;
    }
    if (0..n).filter(|&i| on[i]).count() != run_len {
        return Err(GeometryError::SetOperation("shared arc is not contiguous"));
    }

    // Shared polyline gamma in region order, and the replacement polyline.
    let gamma: Vec<Vec2> = (0..=run_len)
        .map(|k| region.vertex(run_start + k))
        .collect();
    let ell: Vec<Vec2> = (0..=(n - run_len))
        .map(|k| region.vertex(run_start + run_len + k))
        .collect();
    let x_a = gamma[0];
    let x_b = *gamma.last().unwrap();

    let (loop_a, edge_a, t_a) = locate_on_set(set, x_a, tol.on_boundary)
        .ok_or(GeometryError::SetOperation("arc endpoint not on boundary"))?;
    let (loop_b, edge_b, t_b) = locate_on_set(set, x_b, tol.on_boundary)
        .ok_or(GeometryError::SetOperation("arc endpoint not on boundary"))?;
    if loop_a != loop_b {
        return Err(GeometryError::SetOperation("shared arc spans two loops"));
    }
    let pos_a = LoopPos {
        edge: edge_a,
        t: t_a,
    };
    let pos_b = LoopPos {
        edge: edge_b,
        t: t_b,
    };

    // The shared run sits on the loop either forward (x_a before x_b) or
    // backward; pick the candidate arc matching gamma's geometry.
    let forward = Arc::on_loop_trimmed(set, loop_a, pos_a, pos_b, tol);
    let backward = Arc::on_loop_trimmed(set, loop_a, pos_b, pos_a, tol);
    let gamma_len: f64 = gamma.windows(2).map(|w| w[0].dist(w[1])).sum();
    let gamma_mid = polyline_point_at(&gamma, 0.5 * gamma_len);

    let pick = |arc: &Arc| -> bool {
        (arc.length() - gamma_len).abs() <= tol.on_boundary * 8.0 + 1e-9 * gamma_len
            && polyline_distance(arc.points(), gamma_mid) <= 8.0 * tol.on_boundary
    };

    let (arc, reverse_ell) = match (forward, backward) {
        (Ok(f), _) if pick(&f) => (f, true),
        (_, Ok(b)) if pick(&b) => (b, false),
        _ => return Err(GeometryError::SetOperation("shared arc not found on loop")),
    };

    verify_side(set, &region, side, tol)?;

    // Replacement runs from arc.x1 to arc.x2. In region order, ell runs from
    // x_b back to x_a; reverse when the loop arc runs x_a -> x_b.
    let replacement: Vec<Vec2> = if reverse_ell {
        ell.iter().rev().copied().collect()
    } else {
        ell
    };
    splice(set, loop_a, arc.start_pos(), arc.end_pos(), &replacement, tol)
}

/// Handles a region coinciding with one whole loop of the set. Difference
/// removes a material island; union fills a hole. The mirrored pairings
/// (difference with a hole region, union with material) are identities.
fn remove_matching_loop(
    set: &PolygonalSet,
    region: &Loop,
    side: RegionSide,
    tol: &Tolerances,
) -> Result<PolygonalSet, GeometryError> {
    let probe = region.vertex(0);
    for (li, l) in set.loops().iter().enumerate() {
        if l.distance_to(probe) <= tol.on_boundary {
            let len_match =
                (l.perimeter() - region.perimeter()).abs() <= 1e-9 * (1.0 + l.perimeter());
            let all_on = region
                .vertices()
                .iter()
                .all(|&v| l.distance_to(v) <= tol.on_boundary);
            if len_match && all_on {
                let loop_is_material = l.orientation() == super::Orientation::Positive;
                let removes = match side {
                    RegionSide::InsideE => loop_is_material,
                    RegionSide::OutsideE => !loop_is_material,
                };
                if !removes {
                    return Ok(set.clone());
                }
                let out = set.without_loop(li);
                out.validate(tol)?;
                return Ok(out);
            }
        }
    }
    Err(GeometryError::SetOperation(
        "region boundary lies on the set but matches no single loop",
    ))
}

/// Difference/union with a region whose boundary does not meet the set's.
fn detached_region_op(
    set: &PolygonalSet,
    region: &Loop,
    side: RegionSide,
    tol: &Tolerances,
) -> Result<PolygonalSet, GeometryError> {
    // Transversal crossings would violate the precondition.
    for l in set.loops() {
        for i in 0..l.len() {
            let (p, q) = l.edge(i);
            for j in 0..region.len() {
                let (a, b) = region.edge(j);
                if seg::segment_hit(p, q, a, b, tol.on_boundary) != SegHit::None {
                    return Err(GeometryError::SetOperation(
                        "region boundary crosses the set boundary",
                    ));
                }
            }
        }
    }
    let sample = interior_point(region)?;
    let inside = set.contains(sample);

    // Loops of the set swallowed by the region disappear in both operations.
    let kept: Vec<Loop> = set
        .loops()
        .iter()
        .filter(|l| !region.winding_contains(l.vertex(0)))
        .cloned()
        .collect();

    let out = match side {
        RegionSide::InsideE => {
            if !inside {
                // E \ G with G exterior to E: identity apart from swallowed
                // islands (there are none if G is genuinely inside E).
                return Err(GeometryError::SetOperation(
                    "difference region is not inside the set",
                ));
            }
            // Punch a hole.
            let mut loops = kept;
            loops.push(region.reversed());
            PolygonalSet::from_loops_unchecked(loops)
        }
        RegionSide::OutsideE => {
            if inside {
                return Err(GeometryError::SetOperation(
                    "union region is not outside the set",
                ));
            }
            let mut loops = kept;
            loops.push(region.clone());
            PolygonalSet::from_loops_unchecked(loops)
        }
    }
    .normalized(tol);
    out.validate(tol)?;
    Ok(out)
}

fn verify_side(
    set: &PolygonalSet,
    region: &Loop,
    side: RegionSide,
    tol: &Tolerances,
) -> Result<(), GeometryError> {
    let found = classify_region(region, set, tol)?;
    if found != side {
        return Err(GeometryError::SetOperation(
            "region lies on the wrong side for this operation",
        ));
    }
    Ok(())
}

fn polyline_point_at(points: &[Vec2], arclen: f64) -> Vec2 {
    let mut remaining = arclen;
    for w in points.windows(2) {
        let l = w[0].dist(w[1]);
        if remaining <= l {
            return w[0].lerp(w[1], if l > 0.0 { remaining / l } else { 0.0 });
        }
        remaining -= l;
    }
    *points.last().unwrap()
}

fn polyline_distance(points: &[Vec2], p: Vec2) -> f64 {
    points
        .windows(2)
        .map(|w| seg::point_segment_dist(p, w[0], w[1]))
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use approx::assert_relative_eq;

    fn square(side: f64) -> Loop {
        Loop::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(side, 0.0),
            Vec2::new(side, side),
            Vec2::new(0.0, side),
        ])
    }

    #[test]
    fn corner_notch_difference_gives_pentagon() {
        let tol = Tolerances::default();
        let set = PolygonalSet::new(vec![square(1.0)], &tol).unwrap();
        // Triangle covering the corner at the origin.
        let g = Loop::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(0.3, 0.0),
            Vec2::new(0.0, 0.3),
        ]);
        let f = set_difference(&set, &g, &tol).unwrap();
        assert_eq!(f.loops()[0].len(), 5);
        assert_relative_eq!(f.area(), 1.0 - 0.045, epsilon = 1e-12);
        // H1(dF) = H1(dE) - H1(gamma) + H1(ell).
        let hyp = (0.3f64 * 0.3 + 0.3 * 0.3).sqrt();
        assert_relative_eq!(f.perimeter(), 4.0 - 0.6 + hyp, epsilon = 1e-12);
    }

    #[test]
    fn dent_union_fills_notch() {
        let tol = Tolerances::default();
        // Square with a triangular dent in the top edge.
        let set = PolygonalSet::new(
            vec![Loop::new(vec![
                Vec2::new(0.0, 0.0),
                Vec2::new(4.0, 0.0),
                Vec2::new(4.0, 4.0),
                Vec2::new(3.0, 4.0),
                Vec2::new(2.0, 3.0),
                Vec2::new(1.0, 4.0),
                Vec2::new(0.0, 4.0),
            ])],
            &tol,
        )
        .unwrap();
        let g = Loop::new(vec![
            Vec2::new(3.0, 4.0),
            Vec2::new(1.0, 4.0),
            Vec2::new(2.0, 3.0),
        ]);
        let f = set_union(&set, &g, &tol).unwrap();
        // The filled square: the chord merges with the adjacent top edges.
        assert_eq!(f.loops()[0].len(), 4);
        assert_relative_eq!(f.area(), 16.0, epsilon = 1e-12);
    }

    #[test]
    fn empty_region_is_identity() {
        let tol = Tolerances::default();
        let set = PolygonalSet::new(vec![square(1.0)], &tol).unwrap();
        let tiny = Loop::new(vec![
            Vec2::new(0.4, 0.4),
            Vec2::new(0.4 + 1e-15, 0.4),
            Vec2::new(0.4, 0.4 + 1e-15),
        ]);
        let f = set_difference(&set, &tiny, &tol).unwrap();
        assert_eq!(f, set);
    }

    #[test]
    fn disjoint_union_appends_loop() {
        let tol = Tolerances::default();
        let set = PolygonalSet::new(vec![square(1.0)], &tol).unwrap();
        let g = Loop::new(vec![
            Vec2::new(3.0, 0.0),
            Vec2::new(4.0, 0.0),
            Vec2::new(4.0, 1.0),
            Vec2::new(3.0, 1.0),
        ]);
        let f = set_union(&set, &g, &tol).unwrap();
        assert_eq!(f.loops().len(), 2);
        assert_relative_eq!(f.area(), set.area() + 1.0, epsilon = 1e-12);
    }

    #[test]
    fn interior_difference_punches_hole() {
        let tol = Tolerances::default();
        let set = PolygonalSet::new(vec![square(4.0)], &tol).unwrap();
        let g = Loop::new(vec![
            Vec2::new(1.0, 1.0),
            Vec2::new(2.0, 1.0),
            Vec2::new(2.0, 2.0),
            Vec2::new(1.0, 2.0),
        ]);
        let f = set_difference(&set, &g, &tol).unwrap();
        assert_eq!(f.loops().len(), 2);
        assert_relative_eq!(f.area(), 15.0, epsilon = 1e-12);
        assert!(!f.contains(Vec2::new(1.5, 1.5)));
        assert!(f.contains(Vec2::new(0.5, 0.5)));
    }

    #[test]
    fn whole_island_removed() {
        let tol = Tolerances::default();
        let island = Loop::new(vec![
            Vec2::new(6.0, 6.0),
            Vec2::new(7.0, 6.0),
            Vec2::new(7.0, 7.0),
            Vec2::new(6.0, 7.0),
        ]);
        let set = PolygonalSet::new(vec![square(1.0), island.clone()], &tol).unwrap();
        let f = set_difference(&set, &island, &tol).unwrap();
        assert_eq!(f.loops().len(), 1);
        assert_relative_eq!(f.area(), 1.0);
    }

    #[test]
    fn area_is_conserved_by_difference() {
        let tol = Tolerances::default();
        let set = PolygonalSet::new(vec![square(2.0)], &tol).unwrap();
        let g = Loop::new(vec![
            Vec2::new(2.0, 1.5),
            Vec2::new(1.2, 1.1),
            Vec2::new(2.0, 0.5),
        ]);
        // Shared arc: the sub-segment of the right edge between (2,0.5)
        // and (2,1.5); both region endpoints sit mid-edge.
        let f = set_difference(&set, &g, &tol).unwrap();
        assert_relative_eq!(f.area(), 4.0 - g.signed_area(), epsilon = 1e-12);
    }
}
