//! The anisotropic surface energy and the arc/chord quantities behind the
//! descent step.
//!
//! The energy of a set inside a window is the integrand evaluated on each
//! edge's outward normal, weighted by the edge length clipped to the window.
//! For an arc, the energy of the replacing chord equals the integrand at the
//! arc's net normal vector: the chord's normal is constant and its weighted
//! length vector must cancel the arc's by the divergence theorem. The
//! difference between arc energy and chord energy is the Jensen gap; strict
//! convexity makes it positive exactly on non-flat arcs.

use alloc::vec::Vec;

use crate::geometry::{net_normal, Arc, PolygonalSet, Window};
use crate::norms::Integrand;
use crate::vec2::Vec2;

/// Per-edge energy contributions and their total.
#[derive(Clone, Debug)]
pub struct EnergyBreakdown {
    pub total: f64,
    /// One total per loop, in loop order.
    pub per_loop: Vec<f64>,
    pub per_edge: Vec<EdgeContribution>,
}

#[derive(Clone, Copy, Debug)]
pub struct EdgeContribution {
    pub loop_index: usize,
    pub edge_index: usize,
    pub normal: Vec2,
    /// Edge length inside the window (edges on the window boundary count
    /// in full).
    pub clipped_len: f64,
    /// Integrand value on the outward unit normal.
    pub value: f64,
    pub contribution: f64,
}

/// Energy of `set` inside `window` under `integrand`.
pub fn phi(set: &PolygonalSet, window: &Window, integrand: &Integrand) -> EnergyBreakdown {
    let mut per_edge = Vec::new();
    let mut per_loop = Vec::with_capacity(set.loops().len());
    let mut total = 0.0;
    for (li, l) in set.loops().iter().enumerate() {
        let mut loop_total = 0.0;
        for i in 0..l.len() {
            let (a, b) = l.edge(i);
            let normal = l
                .edge_normal(i)
                .expect("validated sets have no zero-length edges");
            let clipped_len = window.clip_segment_len(a, b);
            let value = integrand
                .eval(normal)
                .expect("unit normals are nonzero");
            let contribution = value * clipped_len;
            loop_total += contribution;
            per_edge.push(EdgeContribution {
                loop_index: li,
                edge_index: i,
                normal,
                clipped_len,
                value,
                contribution,
            });
        }
        per_loop.push(loop_total);
        total += loop_total;
    }
    EnergyBreakdown {
        total,
        per_loop,
        per_edge,
    }
}

/// Integral of the integrand over the arc's normals.
pub fn arc_energy(arc: &Arc, integrand: &Integrand) -> f64 {
    arc.edges()
        .map(|(_, _, normal, len)| {
            integrand.eval(normal).expect("arc normals are unit vectors") * len
        })
        .sum()
}

/// Energy of the chord replacing the arc.
///
/// Evaluated on the arc's net normal; arcs have distinct endpoints by
/// construction, so the net normal is nonzero and the closed-arc domain
/// error cannot arise here.
pub fn chord_energy(arc: &Arc, integrand: &Integrand) -> f64 {
    integrand
        .eval(net_normal(arc))
        .expect("open arcs have nonzero net normal")
}

/// Arc energy minus chord energy. Nonnegative for convex integrands and
/// strictly positive on non-flat arcs under strictly convex ones.
pub fn jensen_gap(arc: &Arc, integrand: &Integrand) -> f64 {
    arc_energy(arc, integrand) - chord_energy(arc, integrand)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Loop;
    use crate::tol::Tolerances;
    use alloc::vec;
    use approx::assert_relative_eq;

    fn unit_square() -> PolygonalSet {
        PolygonalSet::new(
            vec![Loop::new(vec![
                Vec2::new(0.0, 0.0),
                Vec2::new(1.0, 0.0),
                Vec2::new(1.0, 1.0),
                Vec2::new(0.0, 1.0),
            ])],
            &Tolerances::default(),
        )
        .unwrap()
    }

    fn right_angle_arc() -> Arc {
        Arc::from_points(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn square_euclidean_energy_is_perimeter() {
        let w = Window::disk(Vec2::new(0.5, 0.5), 10.0).unwrap();
        let b = phi(&unit_square(), &w, &Integrand::Euclidean);
        assert_relative_eq!(b.total, 4.0);
        let sum: f64 = b.per_edge.iter().map(|e| e.contribution).sum();
        assert_relative_eq!(b.total, sum, epsilon = 1e-12);
    }

    #[test]
    fn square_ellipse_energy_weighs_axes() {
        let w = Window::disk(Vec2::new(0.5, 0.5), 10.0).unwrap();
        let i = Integrand::ellipse(1.0, 0.0, 4.0).unwrap();
        let b = phi(&unit_square(), &w, &i);
        // Horizontal normals contribute 1 each, vertical normals 2 each.
        assert_relative_eq!(b.total, 6.0);
    }

    #[test]
    fn half_plane_window_clips_half_the_square() {
        // Window covering x <= 0.5 as a big convex polygon.
        let w = Window::convex_polygon(vec![
            Vec2::new(-10.0, -10.0),
            Vec2::new(0.5, -10.0),
            Vec2::new(0.5, 10.0),
            Vec2::new(-10.0, 10.0),
        ])
        .unwrap();
        let b = phi(&unit_square(), &w, &Integrand::Euclidean);
        // Two half sides plus one full side.
        assert_relative_eq!(b.total, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn right_angle_arc_energies() {
        let arc = right_angle_arc();
        assert_relative_eq!(arc_energy(&arc, &Integrand::Euclidean), 2.0);
        assert_relative_eq!(
            chord_energy(&arc, &Integrand::Euclidean),
            2f64.sqrt()
        );
        assert_relative_eq!(
            jensen_gap(&arc, &Integrand::Euclidean),
            2.0 - 2f64.sqrt()
        );
        // Faceting: crystalline l1 sees no gap on axis normals.
        assert_relative_eq!(arc_energy(&arc, &Integrand::CrystallineL1), 2.0);
        assert_relative_eq!(chord_energy(&arc, &Integrand::CrystallineL1), 2.0);
        assert_relative_eq!(jensen_gap(&arc, &Integrand::CrystallineL1), 0.0);
    }

    #[test]
    fn flat_arc_has_no_gap() {
        let arc = Arc::from_points(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(2.5, 0.0),
        ])
        .unwrap();
        for i in [
            Integrand::Euclidean,
            Integrand::CrystallineLinf,
            Integrand::asymmetric_shift(Vec2::new(0.3, 0.2)).unwrap(),
        ] {
            assert_relative_eq!(jensen_gap(&arc, &i), 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn two_edge_arc_euclidean_gap_matches_closed_form() {
        // Two unit edges whose normals differ by angle theta:
        // gap = 2 - 2 cos(theta/2) = arc_energy * (1 - cos(theta/2)).
        for k in 1..12 {
            let theta = 0.25 * k as f64;
            let p0 = Vec2::ZERO;
            let p1 = Vec2::new(1.0, 0.0);
            let p2 = p1 + Vec2::from_angle(theta);
            let arc = Arc::from_points(vec![p0, p1, p2]).unwrap();
            let gap = jensen_gap(&arc, &Integrand::Euclidean);
            let expected = 2.0 * (1.0 - (0.5 * theta).cos());
            assert_relative_eq!(gap, expected, epsilon = 1e-12);
        }
    }
}
