//! Centralized geometric tolerances.
//!
//! Every epsilon used by a geometric predicate lives here; no module invents
//! its own magic numbers. Values are in scene units (coordinates are expected
//! at desk scale, roughly [-100, 100]).

/// Tolerance configuration shared by all geometric predicates.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    /// Vertices closer than this are merged during normalization.
    pub merge_dist: f64,
    /// A vertex is collinear-redundant when the cross product of its adjacent
    /// edge vectors falls below this value.
    pub collinear_cross: f64,
    /// Point-on-segment and point-on-boundary decisions.
    pub on_boundary: f64,
    /// Angular separation below which two directions count as parallel.
    pub parallel_angle: f64,
    /// Relative gain below which a candidate's Jensen gap is considered
    /// numerical noise rather than a genuine improvement.
    pub gain_noise_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            merge_dist: 1e-12,
            collinear_cross: 1e-12,
            on_boundary: 1e-9,
            parallel_angle: 1e-6,
            gain_noise_rel: 1e-14,
        }
    }
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        merge_dist: 1e-12,
        collinear_cross: 1e-12,
        on_boundary: 1e-9,
        parallel_angle: 1e-6,
        gain_noise_rel: 1e-14,
    };
}
