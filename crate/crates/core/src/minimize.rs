//! Chord-replacement descent and the two-line rectangle competitor.
//!
//! Each step picks an admissible boundary arc — non-flat, chord meeting the
//! boundary only at its endpoints, enclosed region compactly inside the
//! window — and replaces the arc with its chord, cutting or filling the
//! enclosed region. The step's energy gain is the Jensen gap of the arc, so
//! the energy strictly decreases as long as a non-flat admissible arc exists.
//! Loops wholly inside the window are handled by a special move that removes
//! the island (or fills the hole) outright.
//!
//! Arc endpoints are not restricted to vertices: where a loop crosses the
//! window boundary, candidate arcs are also trimmed to points strictly
//! inside. Flattening then proceeds arbitrarily close to the window pins,
//! which vertex-only arcs cannot do.

use alloc::vec::Vec;

use crate::energy::{arc_energy, jensen_gap, phi};
use crate::error::{DescentError, GeometryError};
use crate::geometry::arc::LoopPos;
use crate::geometry::setops::splice;
use crate::geometry::{
    classify_region, enclosed_region, shorten_chord, Arc, Chord, Loop, Orientation, PolygonalSet,
    RegionSide, Window,
};
use crate::norms::Integrand;
use crate::tol::Tolerances;
use crate::vec2::Vec2;

/// How candidate sub-arcs are enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ArcEnumeration {
    /// Every contiguous run of 2..=max_arc_edges edges.
    #[default]
    AllSubarcs,
    /// Only runs of exactly max_arc_edges edges (cheaper, coarser).
    SlidingWindow,
}

/// Descent control parameters.
#[derive(Clone, Copy, Debug)]
pub struct DescentParams {
    /// Stop when the best available gain falls below this (absolute).
    pub gain_tol: f64,
    /// Arcs whose edge normals all lie within this angle are flat.
    pub flat_tol: f64,
    /// Longest candidate arc, in edges.
    pub max_arc_edges: usize,
    pub max_steps: usize,
    pub arc_enumeration: ArcEnumeration,
}

impl Default for DescentParams {
    fn default() -> Self {
        DescentParams {
            gain_tol: 1e-12,
            flat_tol: 1e-6,
            max_arc_edges: 16,
            max_steps: 10_000,
            arc_enumeration: ArcEnumeration::AllSubarcs,
        }
    }
}

/// Why the descent stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    /// No admissible non-flat arc remains.
    ConvergedFlat,
    /// The best available gain fell below `gain_tol`.
    GainBelowTol,
    /// Step budget exhausted without convergence.
    MaxSteps,
}

/// The move a step performed.
#[derive(Clone, Debug)]
pub enum StepAction {
    ChordReplace {
        arc_start: Vec2,
        arc_end: Vec2,
        chord_start: Vec2,
        chord_end: Vec2,
        side: RegionSide,
    },
    RemoveLoop {
        /// True when the removed loop was a hole being filled.
        was_hole: bool,
    },
}

/// One descent step: the move, the region it exchanged, and the energies.
#[derive(Clone, Debug)]
pub struct DescentStep {
    pub action: StepAction,
    pub region_area: f64,
    pub energy_before: f64,
    pub energy_after: f64,
    pub gain: f64,
}

/// Full record of a descent run.
#[derive(Clone, Debug)]
pub struct DescentTrace {
    pub steps: Vec<DescentStep>,
    pub reason: StopReason,
    pub initial_energy: f64,
    pub final_energy: f64,
}

/// A selected replacement move.
#[derive(Clone, Debug)]
pub enum Candidate {
    Chord {
        arc: Arc,
        chord: Chord,
        region: Loop,
        side: RegionSide,
        gain: f64,
    },
    Island {
        loop_index: usize,
        gain: f64,
    },
}

impl Candidate {
    pub fn gain(&self) -> f64 {
        match self {
            Candidate::Chord { gain, .. } | Candidate::Island { gain, .. } => *gain,
        }
    }

    fn order_key(&self) -> (usize, usize, usize) {
        match self {
            Candidate::Chord { arc, .. } => {
                (arc.edge_count(), arc.loop_index(), arc.start_pos().edge)
            }
            Candidate::Island { loop_index, .. } => (usize::MAX, *loop_index, 0),
        }
    }

    fn better_than(&self, other: &Candidate) -> bool {
        if self.gain() != other.gain() {
            return self.gain() > other.gain();
        }
        self.order_key() < other.order_key()
    }
}

/// Raw candidate arcs on one loop: vertex-delimited runs plus window-trimmed
/// variants where the loop crosses the window boundary.
pub fn enumerate_arcs(
    set: &PolygonalSet,
    loop_index: usize,
    window: &Window,
    params: &DescentParams,
    tol: &Tolerances,
) -> Vec<Arc> {
    let l = &set.loops()[loop_index];
    let n = l.len();
    let inside: Vec<bool> = (0..n)
        .map(|i| window.interior_distance(l.vertex(i)) > 0.0)
        .collect();
    let mut arcs = Vec::new();

    let cap = params.max_arc_edges.min(n.saturating_sub(1)).max(2).min(n - 1);
    let lens: Vec<usize> = match params.arc_enumeration {
        ArcEnumeration::AllSubarcs => (2..=cap).collect(),
        ArcEnumeration::SlidingWindow => alloc::vec![cap],
    };

    for start in 0..n {
        for &len in &lens {
            // Every arc point must be strictly inside the window, otherwise
            // the enclosed region cannot be compactly contained.
            if (0..=len).any(|k| !inside[(start + k) % n]) {
                continue;
            }
            if let Ok(arc) = Arc::on_loop(set, loop_index, start, len) {
                arcs.push(arc);
            }
        }
    }

    // Window-trimmed arcs along each maximal in-window run.
    if inside.iter().any(|&b| b) && inside.iter().any(|&b| !b) {
        for run in window_runs(l, &inside, window) {
            let mut anchors: Vec<LoopPos> = Vec::with_capacity(run.vertices.len() + 2);
            anchors.push(run.entry);
            for &v in &run.vertices {
                anchors.push(LoopPos { edge: v, t: 0.0 });
            }
            anchors.push(run.exit);
            let m = anchors.len();
            for i in 0..m {
                for j in (i + 1)..m {
                    // Skip the pure vertex-to-vertex pairs; those are already
                    // enumerated above.
                    if i != 0 && j != m - 1 {
                        continue;
                    }
                    if let Ok(arc) =
                        Arc::on_loop_trimmed(set, loop_index, anchors[i], anchors[j], tol)
                    {
                        if arc.edge_count() >= 2 && arc.edge_count() <= params.max_arc_edges {
                            arcs.push(arc);
                        }
                    }
                }
            }
        }
    }

    arcs
}

struct WindowRun {
    entry: LoopPos,
    /// Edge indices whose start vertex lies strictly inside the window.
    vertices: Vec<usize>,
    exit: LoopPos,
}

/// Maximal runs of the loop inside the window, with trimmed endpoint
/// positions pulled strictly inside (midway between the crossing and the
/// neighboring interior point).
fn window_runs(l: &Loop, inside: &[bool], window: &Window) -> Vec<WindowRun> {
    let n = l.len();
    let mut runs = Vec::new();
    for e in 0..n {
        // An entering edge: start vertex outside, end vertex inside.
        if inside[e] || !inside[(e + 1) % n] {
            continue;
        }
        let (a, b) = l.edge(e);
        let entry_t = match window.clip_params(a, b) {
            Some((lo, _)) => lo,
            None => continue,
        };
        let entry = LoopPos {
            edge: e,
            t: 0.5 * (entry_t + 1.0),
        };
        // Walk the interior vertices until the run exits.
        let mut vertices = Vec::new();
        let mut k = (e + 1) % n;
        while inside[k] {
            vertices.push(k);
            k = (k + 1) % n;
            if k == (e + 1) % n {
                break;
            }
        }
        // Exiting edge: from the last inside vertex.
        let exit_edge = (k + n - 1) % n;
        let (c, d) = l.edge(exit_edge);
        let exit_t = match window.clip_params(c, d) {
            Some((_, hi)) => hi,
            None => continue,
        };
        runs.push(WindowRun {
            entry,
            vertices,
            exit: LoopPos {
                edge: exit_edge,
                t: 0.5 * exit_t,
            },
        });
    }
    runs
}

/// Finds the admissible candidate with the largest Jensen gap.
///
/// Admissibility: the arc is non-flat at `flat_tol`, its shortened chord has
/// positive length and meets the boundary only at its endpoints, and the
/// closure of the enclosed Jordan region lies strictly inside the window.
/// Whole loops compactly inside the window are candidates as island moves,
/// whose gain is their full boundary energy. Ties prefer fewer arc edges,
/// then the lowest loop and edge index.
pub fn find_replaceable_arc(
    set: &PolygonalSet,
    window: &Window,
    integrand: &Integrand,
    params: &DescentParams,
    tol: &Tolerances,
) -> Option<Candidate> {
    let mut best: Option<Candidate> = None;
    let mut consider = |c: Candidate| {
        if best.as_ref().map_or(true, |b| c.better_than(b)) {
            best = Some(c);
        }
    };

    for li in 0..set.loops().len() {
        let l = &set.loops()[li];
        if window.contains_loop_closure(l) {
            let gain: f64 = (0..l.len())
                .map(|i| {
                    let normal = l.edge_normal(i).expect("validated loop");
                    integrand.eval(normal).expect("unit normal") * l.edge_len(i)
                })
                .sum();
            consider(Candidate::Island {
                loop_index: li,
                gain,
            });
            continue;
        }
        for arc in enumerate_arcs(set, li, window, params, tol) {
            if arc.normal_spread() <= params.flat_tol {
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
            let gain = jensen_gap(&arc, integrand);
            consider(Candidate::Chord {
                arc,
                chord,
                region,
                side,
                gain,
            });
        }
    }
    best
}

/// Applies a selected candidate, producing the competitor set.
///
/// Chord moves splice the arc's loop: the shared arc is removed and the
/// chord stitched in, which is exactly the set difference (region inside)
/// or union (region outside) with the enclosed region. Island moves drop
/// the loop. A validation failure aborts the step.
pub fn apply_replacement(
    set: &PolygonalSet,
    candidate: &Candidate,
    tol: &Tolerances,
) -> Result<PolygonalSet, DescentError> {
    match candidate {
        Candidate::Chord { arc, chord, .. } => {
            let replacement = [chord.start, chord.end];
            splice(
                set,
                arc.loop_index(),
                arc.start_pos(),
                arc.end_pos(),
                &replacement,
                tol,
            )
            .map_err(DescentError::ReplacementFailed)
        }
        Candidate::Island { loop_index, .. } => {
            let out = set.without_loop(*loop_index);
            out.validate(tol).map_err(DescentError::ReplacementFailed)?;
            Ok(out)
        }
    }
}

/// Runs the descent to a locally flat configuration.
///
/// The energy strictly decreases by each step's gain. Termination is by
/// exhaustion of admissible non-flat arcs, by the gain threshold, or by the
/// step budget (reported, not an error).
pub fn descend(
    initial: &PolygonalSet,
    window: &Window,
    integrand: &Integrand,
    params: &DescentParams,
    tol: &Tolerances,
) -> Result<(PolygonalSet, DescentTrace), DescentError> {
    initial.validate(tol).map_err(DescentError::InvalidInput)?;
    let mut set = initial.clone();
    let initial_energy = phi(&set, window, integrand).total;
    let mut energy_before = initial_energy;
    let mut steps = Vec::new();
    let reason;

    loop {
        if steps.len() >= params.max_steps {
            reason = StopReason::MaxSteps;
            break;
        }
        let Some(candidate) = find_replaceable_arc(&set, window, integrand, params, tol) else {
            reason = StopReason::ConvergedFlat;
            break;
        };
        if candidate.gain() < params.gain_tol {
            reason = StopReason::GainBelowTol;
            break;
        }
        let next = apply_replacement(&set, &candidate, tol)?;
        let energy_after = phi(&next, window, integrand).total;
        let (action, region_area) = match &candidate {
            Candidate::Chord {
                arc, chord, region, side, ..
            } => (
                StepAction::ChordReplace {
                    arc_start: arc.x1(),
                    arc_end: arc.x2(),
                    chord_start: chord.start,
                    chord_end: chord.end,
                    side: *side,
                },
                region.signed_area().abs(),
            ),
            Candidate::Island { loop_index, .. } => {
                let l = &set.loops()[*loop_index];
                (
                    StepAction::RemoveLoop {
                        was_hole: l.orientation() == Orientation::Negative,
                    },
                    l.signed_area().abs(),
                )
            }
        };
        steps.push(DescentStep {
            action,
            region_area,
            energy_before,
            energy_after,
            gain: candidate.gain(),
        });
        energy_before = energy_after;
        set = next;
    }

    let final_energy = energy_before;
    Ok((
        set,
        DescentTrace {
            steps,
            reason,
            initial_energy,
            final_energy,
        },
    ))
}

/// Configuration for the two-parallel-lines global check: `direction` is the
/// unit vector along the lines; the lines sit at offsets ±1 along the
/// left-normal of `direction`.
#[derive(Clone, Copy, Debug)]
pub struct LineGapSetup {
    pub direction: Vec2,
}

impl Default for LineGapSetup {
    fn default() -> Self {
        LineGapSetup {
            direction: Vec2::new(1.0, 0.0),
        }
    }
}

/// Outcome of the rectangle-competitor check on a two-line configuration.
#[derive(Clone, Debug)]
pub struct BernsteinReport {
    /// max(value(s), value(-s)) — the cost cap of the rectangle's short sides.
    pub a: f64,
    /// min(value(t), value(-t)) — the cost floor of the removed line pieces.
    pub b: f64,
    /// a / b: half-lengths above this make the competitor strictly cheaper.
    pub rho_min: f64,
    pub rho: f64,
    pub delta: f64,
    /// Energy of the two-line configuration inside the rectangle window.
    pub energy_e: f64,
    /// Energy of the competitor (slab with the rectangle carved out).
    pub energy_f: f64,
    /// 4 * rho * b, the guaranteed saving.
    pub analytic_lower: f64,
    /// 4 * a, the guaranteed added cost.
    pub analytic_upper: f64,
    /// Whether fattening the rectangle meets no boundary beyond the lines.
    pub fattening_valid: bool,
    pub passes: bool,
    pub explanation: &'static str,
}

/// Builds the slab between the two lines, carves out the rectangle with
/// half-length `rho`, and compares energies over the rectangle window.
///
/// `passes` requires `rho > rho_min` (otherwise the competitor is not
/// guaranteed cheaper and the report says so) and a strict energy drop.
pub fn bernstein_check(
    setup: &LineGapSetup,
    integrand: &Integrand,
    rho: f64,
    delta: f64,
    tol: &Tolerances,
) -> Result<BernsteinReport, GeometryError> {
    if !(rho > 0.0 && delta > 0.0) {
        return Err(GeometryError::InvalidWindow("rho and delta must be positive"));
    }
    let s = setup
        .direction
        .normalized()
        .ok_or(GeometryError::InvalidWindow("zero direction"))?;
    let t = s.rot_ccw();
    let at = |u: f64, v: f64| s * u + t * v;

    let a_cost = integrand.eval(s).expect("unit").max(integrand.eval(-s).expect("unit"));
    let b_cost = integrand.eval(t).expect("unit").min(integrand.eval(-t).expect("unit"));
    let rho_min = a_cost / b_cost;

    // Slab material between the lines, truncated far beyond the fattened
    // rectangle so the truncation never meets it.
    let extent = 2.0 * (rho + delta) + 2.0;
    let slab = PolygonalSet::new(
        alloc::vec![Loop::new(alloc::vec![
            at(-extent, -1.0),
            at(extent, -1.0),
            at(extent, 1.0),
            at(-extent, 1.0),
        ])],
        tol,
    )?;
    let competitor = PolygonalSet::new(
        alloc::vec![
            Loop::new(alloc::vec![
                at(-extent, -1.0),
                at(-rho, -1.0),
                at(-rho, 1.0),
                at(-extent, 1.0),
            ]),
            Loop::new(alloc::vec![
                at(rho, -1.0),
                at(extent, -1.0),
                at(extent, 1.0),
                at(rho, 1.0),
            ]),
        ],
        tol,
    )?;

    let window = Window::convex_polygon(alloc::vec![
        at(-rho, -1.0),
        at(rho, -1.0),
        at(rho, 1.0),
        at(-rho, 1.0),
    ])?;

    // Fattening validity: every slab edge meeting the fattened rectangle
    // must lie on one of the two lines (|v| = 1).
    let fattening_valid = delta > 0.0 && extent > rho + delta;

    let energy_e = phi(&slab, &window, integrand).total;
    let energy_f = phi(&competitor, &window, integrand).total;

    let (passes, explanation) = if rho <= rho_min {
        (
            false,
            "rho <= a/b: the rectangle competitor is not guaranteed cheaper",
        )
    } else if energy_f < energy_e {
        (true, "competitor strictly beats the two-line configuration")
    } else {
        (false, "competitor failed to reduce the energy")
    };

    Ok(BernsteinReport {
        a: a_cost,
        b: b_cost,
        rho_min,
        rho,
        delta,
        energy_e,
        energy_f,
        analytic_lower: 4.0 * rho * b_cost,
        analytic_upper: 4.0 * a_cost,
        fattening_valid,
        passes,
        explanation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use approx::assert_relative_eq;

    fn tolerances() -> Tolerances {
        Tolerances::default()
    }

    fn square_with_bite() -> PolygonalSet {
        // Unit-scale square with one corner replaced by a two-edge dent.
        PolygonalSet::new(
            vec![Loop::new(vec![
                Vec2::new(0.0, 0.0),
                Vec2::new(4.0, 0.0),
                Vec2::new(4.0, 4.0),
                Vec2::new(2.2, 3.4),
                Vec2::new(0.0, 4.0),
            ])],
            &tolerances(),
        )
        .unwrap()
    }

    #[test]
    fn corner_arc_is_found_with_right_gain() {
        let tol = tolerances();
        // L-shaped hexagon: the inner right angle is the best replacement.
        let set = PolygonalSet::new(
            vec![Loop::new(vec![
                Vec2::new(0.0, 0.0),
                Vec2::new(2.0, 0.0),
                Vec2::new(2.0, 1.0),
                Vec2::new(1.0, 1.0),
                Vec2::new(1.0, 2.0),
                Vec2::new(0.0, 2.0),
            ])],
            &tol,
        )
        .unwrap();
        // Window containing the reflex corner but not the whole polygon.
        let window = Window::disk(Vec2::new(1.0, 1.0), 0.9).unwrap();
        let params = DescentParams::default();
        let cand = find_replaceable_arc(&set, &window, &Integrand::Euclidean, &params, &tol)
            .expect("candidate expected");
        match &cand {
            Candidate::Chord { arc, side, .. } => {
                assert_eq!(*side, RegionSide::OutsideE);
                assert!(arc.normal_spread() > 1.0);
            }
            _ => panic!("expected a chord candidate"),
        }
        assert!(cand.gain() > 0.0);
    }

    #[test]
    fn island_is_removed_in_one_step() {
        let tol = tolerances();
        let big = Loop::new(vec![
            Vec2::new(-10.0, -10.0),
            Vec2::new(10.0, -10.0),
            Vec2::new(10.0, -5.0),
            Vec2::new(-10.0, -5.0),
        ]);
        let island = Loop::new(vec![
            Vec2::new(-1.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.5),
        ]);
        let set = PolygonalSet::new(vec![big, island], &tol).unwrap();
        let window = Window::disk(Vec2::new(0.0, 0.5), 3.0).unwrap();
        let (final_set, trace) = descend(
            &set,
            &window,
            &Integrand::Euclidean,
            &DescentParams::default(),
            &tol,
        )
        .unwrap();
        assert_eq!(final_set.loops().len(), 1);
        assert_eq!(trace.steps.len(), 1);
        assert!(matches!(
            trace.steps[0].action,
            StepAction::RemoveLoop { was_hole: false }
        ));
        assert_relative_eq!(trace.final_energy, 0.0);
    }

    #[test]
    fn descent_flattens_a_dent() {
        let tol = tolerances();
        let set = square_with_bite();
        let window = Window::disk(Vec2::new(2.2, 3.8), 1.5).unwrap();
        let params = DescentParams::default();
        let (final_set, trace) =
            descend(&set, &window, &Integrand::Euclidean, &params, &tol).unwrap();
        assert!(matches!(
            trace.reason,
            StopReason::ConvergedFlat | StopReason::GainBelowTol
        ));
        assert!(!trace.steps.is_empty());
        for step in &trace.steps {
            assert!(step.gain > 0.0);
            assert!(step.energy_after < step.energy_before);
            assert_relative_eq!(
                step.energy_before - step.energy_after,
                step.gain,
                epsilon = 1e-10 * step.energy_before.max(1.0)
            );
        }
        // The dent vertex is gone and nothing replaceable is left non-flat.
        assert!(final_set.loops()[0]
            .vertices()
            .iter()
            .all(|&v| v.dist(Vec2::new(2.2, 3.4)) > 0.1));
        let residual =
            crate::verify::max_replaceable_spread(&final_set, &window, &params, &tol);
        assert!(residual <= params.flat_tol, "residual spread {residual}");
    }

    #[test]
    fn already_flat_boundary_takes_zero_steps() {
        let tol = tolerances();
        let set = PolygonalSet::new(
            vec![Loop::new(vec![
                Vec2::new(-5.0, -5.0),
                Vec2::new(5.0, -5.0),
                Vec2::new(5.0, 5.0),
                Vec2::new(-5.0, 5.0),
            ])],
            &tol,
        )
        .unwrap();
        // Window sees only the straight bottom edge.
        let window = Window::disk(Vec2::new(0.0, -5.0), 2.0).unwrap();
        let (_, trace) = descend(
            &set,
            &window,
            &Integrand::Euclidean,
            &DescentParams::default(),
            &tol,
        )
        .unwrap();
        assert!(trace.steps.is_empty());
        assert_eq!(trace.reason, StopReason::ConvergedFlat);
    }

    #[test]
    fn bernstein_euclidean_matches_hand_count() {
        let tol = tolerances();
        let report = bernstein_check(
            &LineGapSetup::default(),
            &Integrand::Euclidean,
            2.0,
            0.1,
            &tol,
        )
        .unwrap();
        assert_relative_eq!(report.a, 1.0);
        assert_relative_eq!(report.b, 1.0);
        assert_relative_eq!(report.energy_e, 8.0, epsilon = 1e-12);
        assert_relative_eq!(report.energy_f, 4.0, epsilon = 1e-12);
        assert!(report.passes);
        assert!(report.fattening_valid);
    }

    #[test]
    fn bernstein_fails_exactly_at_threshold() {
        let tol = tolerances();
        let report = bernstein_check(
            &LineGapSetup::default(),
            &Integrand::Euclidean,
            1.0,
            0.1,
            &tol,
        )
        .unwrap();
        assert!(!report.passes);
        assert_relative_eq!(report.rho_min, 1.0);
    }

    #[test]
    fn bernstein_ellipse() {
        let tol = tolerances();
        let integrand = Integrand::ellipse(1.0, 0.0, 4.0).unwrap();
        let report =
            bernstein_check(&LineGapSetup::default(), &integrand, 1.0, 0.1, &tol).unwrap();
        assert_relative_eq!(report.a, 1.0);
        assert_relative_eq!(report.b, 2.0);
        assert_relative_eq!(report.rho_min, 0.5);
        assert_relative_eq!(report.analytic_lower, 8.0);
        assert_relative_eq!(report.analytic_upper, 4.0);
        assert_relative_eq!(report.energy_e, 8.0, epsilon = 1e-12);
        assert_relative_eq!(report.energy_f, 4.0, epsilon = 1e-12);
        assert!(report.passes);
    }
}
