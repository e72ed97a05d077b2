//! Segment-level predicates shared by the geometry operations.

use crate::vec2::Vec2;

/// Distance from `p` to the closed segment `[a, b]`.
pub fn point_segment_dist(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let d = b - a;
    let len_sq = d.norm_sq();
    if len_sq == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(d) / len_sq).clamp(0.0, 1.0);
    p.dist(a + d * t)
}

/// Parameter of the orthogonal projection of `p` onto the line through `a, b`.
pub fn project_param(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let d = b - a;
    let len_sq = d.norm_sq();
    if len_sq == 0.0 {
        0.0
    } else {
        (p - a).dot(d) / len_sq
    }
}

/// How a segment meets an edge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SegHit {
    /// No contact.
    None,
    /// Contact at an isolated point, at parameter `t` along the query segment.
    /// Transversal crossings and tangential touches are not distinguished;
    /// both split a chord.
    At(f64),
    /// Collinear overlap of positive length.
    Overlap,
}

/// Intersects the query segment `[p, q]` with the edge `[a, b]`.
///
/// `eps` is a distance tolerance: points within `eps` of the edge count as
/// touching, and near-parallel segments within `eps` of each other over
/// positive length count as overlapping.
pub fn segment_hit(p: Vec2, q: Vec2, a: Vec2, b: Vec2, eps: f64) -> SegHit {
    let r = q - p;
    let s = b - a;
    let r_len = r.norm();
    let s_len = s.norm();
    if r_len == 0.0 || s_len == 0.0 {
        return SegHit::None;
    }
    let denom = r.cross(s);

    // Near-parallel: either a collinear overlap or no contact.
    if denom.abs() <= eps * r_len.max(s_len) {
        // Distances from the edge endpoints to the query *line*; for a true
        // overlap both must hug it even when they project beyond the segment.
        let line_da = r.cross(a - p).abs() / r_len;
        let line_db = r.cross(b - p).abs() / r_len;
        if line_da <= eps && line_db <= eps {
            let ta = project_param(a, p, q);
            let tb = project_param(b, p, q);
            let (lo, hi) = if ta <= tb { (ta, tb) } else { (tb, ta) };
            let overlap = hi.min(1.0) - lo.max(0.0);
            if overlap * r_len > eps.max(1e-15) {
                return SegHit::Overlap;
            }
            // Intervals meet at most in a point: an endpoint touch.
            let slack = eps / r_len;
            if overlap >= -slack {
                let t = 0.5 * (lo.max(0.0) + hi.min(1.0));
                return SegHit::At(t.clamp(0.0, 1.0));
            }
        }
        return SegHit::None;
    }

    // General position: solve p + t r = a + u s.
    let t = (a - p).cross(s) / denom;
    let u = (a - p).cross(r) / denom;
    let t_slack = eps / r_len;
    let u_slack = eps / s_len;
    if (-t_slack..=1.0 + t_slack).contains(&t) && (-u_slack..=1.0 + u_slack).contains(&u) {
        SegHit::At(t.clamp(0.0, 1.0))
    } else {
        SegHit::None
    }
}

/// Strict transversal crossing test (interiors cross with sign changes on
/// both sides). Touches and overlaps do not count.
pub fn segments_cross_properly(p: Vec2, q: Vec2, a: Vec2, b: Vec2) -> Option<Vec2> {
    let d1 = (q - p).cross(a - p);
    let d2 = (q - p).cross(b - p);
    let d3 = (b - a).cross(p - a);
    let d4 = (b - a).cross(q - a);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        let t = d3 / (d3 - d4);
        Some(p.lerp(q, t))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_hit() {
        let hit = segment_hit(
            Vec2::new(0.0, -1.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(-1.0, 0.0),
            Vec2::new(1.0, 0.0),
            1e-9,
        );
        assert_eq!(hit, SegHit::At(0.5));
    }

    #[test]
    fn touch_at_vertex_counts() {
        let hit = segment_hit(
            Vec2::new(-1.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 0.0),
            Vec2::new(0.0, 1.0),
            1e-9,
        );
        assert_eq!(hit, SegHit::At(0.5));
    }

    #[test]
    fn collinear_overlap_detected() {
        let hit = segment_hit(
            Vec2::new(0.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(3.0, 0.0),
            1e-9,
        );
        assert_eq!(hit, SegHit::Overlap);
    }

    #[test]
    fn collinear_disjoint_is_none() {
        let hit = segment_hit(
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(3.0, 0.0),
            1e-9,
        );
        assert_eq!(hit, SegHit::None);
    }

    #[test]
    fn parallel_offset_is_none() {
        let hit = segment_hit(
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 0.5),
            Vec2::new(1.0, 0.5),
            1e-9,
        );
        assert_eq!(hit, SegHit::None);
    }

    #[test]
    fn proper_crossing_point() {
        let x = segments_cross_properly(
            Vec2::new(0.0, 0.0),
            Vec2::new(2.0, 2.0),
            Vec2::new(0.0, 2.0),
            Vec2::new(2.0, 0.0),
        )
        .unwrap();
        assert!(x.dist(Vec2::new(1.0, 1.0)) < 1e-12);
    }
}
