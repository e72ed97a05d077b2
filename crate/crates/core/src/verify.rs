//! Independent diagnostics: flatness measurement, boundary density ratios,
//! crossing detection, and a brute-force competitor search used as a test
//! oracle on tiny instances.

use alloc::vec::Vec;

use crate::energy::phi;
use crate::error::GeometryError;
use crate::geometry::window::segment_disk_clip_len;
use crate::geometry::{
    classify_region, enclosed_region, proper_crossings, shorten_chord, Arc, PolygonalSet,
    RegionSide, Window,
};
use crate::minimize::{enumerate_arcs, DescentParams};
use crate::norms::Integrand;
use crate::tol::Tolerances;
use crate::vec2::Vec2;

/// Flatness of one loop: its decomposition into maximal straight runs.
///
/// A run is a maximal chain of consecutive edges whose adjacent normals
/// differ by at most the tolerance; its spread is the accumulated turning
/// along the chain, so a polygonal approximation of a circle shows up as one
/// run of spread about 2π rather than many "straight" pieces.
#[derive(Clone, Debug)]
pub struct LoopFlatness {
    /// Number of maximal straight runs.
    pub runs: usize,
    /// Largest accumulated normal turning within a run.
    pub max_spread: f64,
    /// Largest deviation of a run's interior vertices from its chord.
    pub max_sagitta: f64,
}

#[derive(Clone, Debug)]
pub struct FlatnessReport {
    pub per_loop: Vec<LoopFlatness>,
    pub max_spread: f64,
    pub max_sagitta: f64,
    /// True iff every run's spread stays within the tolerance.
    pub is_union_of_segments: bool,
}

/// Decomposes every loop into maximal straight runs at tolerance `tol_angle`
/// and reports spreads and sagittas.
pub fn flatness(set: &PolygonalSet, tol_angle: f64) -> FlatnessReport {
    let mut per_loop = Vec::new();
    let mut max_spread: f64 = 0.0;
    let mut max_sagitta: f64 = 0.0;
    for l in set.loops() {
        let n = l.len();
        let normals: Vec<Vec2> = (0..n)
            .map(|i| l.edge_normal(i).expect("validated loop"))
            .collect();
        let turn: Vec<f64> = (0..n)
            .map(|i| normals[i].angle_between(normals[(i + 1) % n]))
            .collect();
        // Corners split runs. A loop with no corner is one circular run.
        let corners: Vec<usize> = (0..n).filter(|&i| turn[i] > tol_angle).collect();

        let mut loop_spread: f64 = 0.0;
        let mut loop_sagitta: f64 = 0.0;
        let runs;
        if corners.is_empty() {
            runs = 1;
            loop_spread = turn.iter().sum();
            loop_sagitta = circular_run_sagitta(l);
        } else {
            runs = corners.len();
            for w in 0..corners.len() {
                // Run starts after corner w and ends at the next corner.
                let start = (corners[w] + 1) % n;
                let end = corners[(w + 1) % corners.len()];
                let mut spread = 0.0;
                let mut e = start;
                while e != end {
                    spread += turn[e];
                    e = (e + 1) % n;
                }
                loop_spread = loop_spread.max(spread);
                loop_sagitta = loop_sagitta.max(run_sagitta(l, start, end));
            }
        }
        max_spread = max_spread.max(loop_spread);
        max_sagitta = max_sagitta.max(loop_sagitta);
        per_loop.push(LoopFlatness {
            runs,
            max_spread: loop_spread,
            max_sagitta: loop_sagitta,
        });
    }
    FlatnessReport {
        per_loop,
        max_spread,
        max_sagitta,
        is_union_of_segments: max_spread <= tol_angle,
    }
}

/// Deviation of the run's vertices from the chord between its endpoints.
/// The run covers edges start..end (exclusive end, cyclic).
fn run_sagitta(l: &crate::geometry::Loop, start: usize, end: usize) -> f64 {
    let n = l.len();
    let a = l.vertex(start);
    let b = l.vertex((end + 1) % n);
    let chord = b - a;
    let len = chord.norm();
    if len == 0.0 {
        return 0.0;
    }
    let mut sagitta: f64 = 0.0;
    let mut v = start;
    loop {
        sagitta = sagitta.max(chord.cross(l.vertex(v) - a).abs() / len);
        if v == (end + 1) % n {
            break;
        }
        v = (v + 1) % n;
    }
    sagitta
}

/// Width of a loop that forms a single circular run: deviation from the
/// chord between its two most distant vertices.
fn circular_run_sagitta(l: &crate::geometry::Loop) -> f64 {
    let n = l.len();
    let mut best = (0usize, 1usize, 0.0f64);
    for i in 0..n {
        for j in (i + 1)..n {
            let d = l.vertex(i).dist(l.vertex(j));
            if d > best.2 {
                best = (i, j, d);
            }
        }
    }
    let a = l.vertex(best.0);
    let chord = l.vertex(best.1) - a;
    let len = chord.norm();
    if len == 0.0 {
        return 0.0;
    }
    (0..n)
        .map(|v| chord.cross(l.vertex(v) - a).abs() / len)
        .fold(0.0f64, f64::max)
}

/// H1(boundary ∩ B(x, r)) / r by exact segment-circle clipping.
///
/// `x` must lie within the boundary tolerance of the set's boundary.
pub fn density_ratio(
    set: &PolygonalSet,
    x: Vec2,
    r: f64,
    tol: &Tolerances,
) -> Result<f64, GeometryError> {
    if !(r > 0.0) {
        return Err(GeometryError::InvalidWindow("radius must be positive"));
    }
    if set.distance_to_boundary(x) > tol.on_boundary {
        return Err(GeometryError::NotOnBoundary);
    }
    let mut total = 0.0;
    for l in set.loops() {
        for i in 0..l.len() {
            let (a, b) = l.edge(i);
            total += segment_disk_clip_len(a, b, x, r);
        }
    }
    Ok(total / r)
}

/// All transversal self-intersections and inter-loop crossings. Empty for
/// valid sets. Accepts unvalidated input.
pub fn detect_crossings(set: &PolygonalSet) -> Vec<Vec2> {
    proper_crossings(set)
}

/// Largest normal spread over the arcs descent would still be allowed to
/// replace: admissible candidate arcs (shortened chord, Jordan region
/// compactly inside the window, classifiable side). Zero when nothing in the
/// window is replaceable.
pub fn max_replaceable_spread(
    set: &PolygonalSet,
    window: &Window,
    params: &DescentParams,
    tol: &Tolerances,
) -> f64 {
    let mut worst: f64 = 0.0;
    for li in 0..set.loops().len() {
        for arc in enumerate_arcs(set, li, window, params, tol) {
            let Some((arc, chord)) = shorten_chord(&arc, set, tol) else {
                continue;
            };
            let Ok(region) = enclosed_region(&arc, &chord, tol) else {
                continue;
            };
            if !window.contains_loop_closure(&region) {
                continue;
            }
            if classify_region(&region, set, tol).is_err() {
                continue;
            }
            worst = worst.max(arc.normal_spread());
        }
    }
    worst
}

/// Exhaustively searches competitors reachable by chord replacements and
/// island removals, up to `vertex_budget` removed vertices, and returns the
/// smallest energy found (including the unmodified set).
///
/// A test oracle for tiny instances: it never calls the descent driver, only
/// the geometric primitives.
pub fn brute_force_best_competitor(
    set: &PolygonalSet,
    window: &Window,
    integrand: &Integrand,
    vertex_budget: usize,
    tol: &Tolerances,
) -> Result<f64, GeometryError> {
    if vertex_budget > 6 {
        return Err(GeometryError::SetOperation("vertex budget capped at 6"));
    }
    let inside_count: usize = set
        .loops()
        .iter()
        .map(|l| {
            l.vertices()
                .iter()
                .filter(|&&v| window.contains(v))
                .count()
        })
        .sum();
    if inside_count > 8 {
        return Err(GeometryError::SetOperation(
            "oracle limited to 8 boundary vertices inside the window",
        ));
    }
    let mut best = phi(set, window, integrand).total;
    search(set, window, integrand, vertex_budget, tol, &mut best);
    Ok(best)
}

fn search(
    set: &PolygonalSet,
    window: &Window,
    integrand: &Integrand,
    budget: usize,
    tol: &Tolerances,
    best: &mut f64,
) {
    if budget == 0 {
        return;
    }
    for li in 0..set.loops().len() {
        let l = &set.loops()[li];
        let n = l.len();
        if window.contains_loop_closure(l) && n <= budget {
            let next = set.without_loop(li);
            if next.validate(tol).is_ok() {
                let e = phi(&next, window, integrand).total;
                if e < *best {
                    *best = e;
                }
                search(&next, window, integrand, budget - n, tol, best);
            }
        }
        for start in 0..n {
            for len in 2..=(n - 1).min(budget + 1) {
                let Ok(arc) = Arc::on_loop(set, li, start, len) else {
                    continue;
                };
                if arc
                    .points()
                    .iter()
                    .any(|&p| window.interior_distance(p) <= 0.0)
                {
                    continue;
                }
                let Some((arc, chord)) = shorten_chord(&arc, set, tol) else {
                    continue;
                };
                let Ok(region) = enclosed_region(&arc, &chord, tol) else {
                    continue;
                };
                if !window.contains_loop_closure(&region) {
                    continue;
                }
                let Ok(side) = classify_region(&region, set, tol) else {
                    continue;
                };
                let next = match side {
                    RegionSide::InsideE => {
                        crate::geometry::set_difference(set, &region, tol)
                    }
                    RegionSide::OutsideE => crate::geometry::set_union(set, &region, tol),
                };
                let Ok(next) = next else { continue };
                let e = phi(&next, window, integrand).total;
                if e < *best {
                    *best = e;
                }
                let removed = len.saturating_sub(1);
                if removed <= budget {
                    search(&next, window, integrand, budget - removed, tol, best);
                }
            }
        }
    }
}
