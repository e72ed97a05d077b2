//! Anisotropic integrands: positive 1-homogeneous weights on normal directions.
//!
//! An [`Integrand`] assigns to every nonzero plane vector the price of boundary
//! per unit length with that outward normal. Evaluation is structured as
//! `|v| * value(v/|v|)` so 1-homogeneity holds by construction. Asymmetric
//! integrands (`value(v) != value(-v)`) are first-class; nothing downstream
//! may assume symmetry.

use alloc::vec::Vec;

use crate::error::NormError;
use crate::math;
use crate::vec2::Vec2;

const TAU: f64 = core::f64::consts::TAU;

/// A positive 1-homogeneous integrand on the plane.
///
/// Built-in families cover the strictly convex cases (Euclidean, ellipse,
/// p-norm, Euclidean plus a linear shift) and the faceted counterexamples
/// (l1, l-infinity). `Tabulated` interpolates values linearly in angle.
#[derive(Clone, Debug, PartialEq)]
pub enum Integrand {
    Euclidean,
    /// sqrt(v . M v) for a symmetric positive-definite M, stored as
    /// [m00, m01, m11].
    Ellipse { m: [f64; 3] },
    /// (|x|^p + |y|^p)^(1/p) applied to the normal vector, 1 < p < inf.
    PNorm { p: f64 },
    /// |v| + c . v with |c| < 1 (positive but not symmetric).
    AsymmetricShift { c: Vec2 },
    /// |x| + |y|: faceted, convex but not strictly convex.
    CrystallineL1,
    /// max(|x|, |y|): faceted, convex but not strictly convex.
    CrystallineLinf,
    /// Piecewise-linear-in-angle interpolation of (angle, value) samples.
    /// Angles are radians in [0, 2pi), strictly increasing; values positive.
    Tabulated { samples: Vec<(f64, f64)> },
}

impl Integrand {
    pub fn ellipse(m00: f64, m01: f64, m11: f64) -> Result<Self, NormError> {
        // Symmetric 2x2 is positive definite iff m00 > 0 and det > 0.
        if !(m00 > 0.0 && m00 * m11 - m01 * m01 > 0.0) {
            return Err(NormError::InvalidParameter(
                "ellipse matrix must be symmetric positive-definite",
            ));
        }
        Ok(Integrand::Ellipse { m: [m00, m01, m11] })
    }

    pub fn p_norm(p: f64) -> Result<Self, NormError> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(NormError::InvalidParameter("p must satisfy 1 < p < inf"));
        }
        Ok(Integrand::PNorm { p })
    }

    pub fn asymmetric_shift(c: Vec2) -> Result<Self, NormError> {
        if !(c.norm() < 1.0) {
            return Err(NormError::InvalidParameter("shift must satisfy |c| < 1"));
        }
        Ok(Integrand::AsymmetricShift { c })
    }

    pub fn tabulated(samples: Vec<(f64, f64)>) -> Result<Self, NormError> {
        if samples.len() < 2 {
            return Err(NormError::InvalidParameter(
                "tabulated integrand needs at least 2 samples",
            ));
        }
        for (i, &(angle, value)) in samples.iter().enumerate() {
            if !(value > 0.0 && value.is_finite()) {
                return Err(NormError::InvalidParameter(
                    "tabulated values must be positive and finite",
                ));
            }
            if !(0.0..TAU).contains(&angle) {
                return Err(NormError::InvalidParameter(
                    "tabulated angles must lie in [0, 2pi)",
                ));
            }
            if i > 0 && angle <= samples[i - 1].0 {
                return Err(NormError::InvalidParameter(
                    "tabulated angles must be strictly increasing",
                ));
            }
        }
        Ok(Integrand::Tabulated { samples })
    }

    /// 1-homogeneous evaluation: `|v| * value(v/|v|)`.
    pub fn eval(&self, v: Vec2) -> Result<f64, NormError> {
        let n = v.norm();
        if !(n > 0.0) {
            return Err(NormError::ZeroVector);
        }
        Ok(n * self.unit_value(v / n))
    }

    /// Value on a unit vector. Callers are responsible for normalization.
    fn unit_value(&self, u: Vec2) -> f64 {
        match self {
            Integrand::Euclidean => 1.0,
            Integrand::Ellipse { m } => {
                math::sqrt(m[0] * u.x * u.x + 2.0 * m[1] * u.x * u.y + m[2] * u.y * u.y)
            }
            Integrand::PNorm { p } => {
                math::powf(math::powf(u.x.abs(), *p) + math::powf(u.y.abs(), *p), 1.0 / p)
            }
            Integrand::AsymmetricShift { c } => 1.0 + c.dot(u),
            Integrand::CrystallineL1 => u.x.abs() + u.y.abs(),
            Integrand::CrystallineLinf => u.x.abs().max(u.y.abs()),
            Integrand::Tabulated { samples } => {
                let mut angle = u.angle();
                if angle < 0.0 {
                    angle += TAU;
                }
                interpolate_angular(samples, angle)
            }
        }
    }

    /// Whether the family is strictly convex by construction.
    /// `None` for tabulated data, where only sampling can tell.
    pub fn strictly_convex_declared(&self) -> Option<bool> {
        match self {
            Integrand::Euclidean
            | Integrand::Ellipse { .. }
            | Integrand::PNorm { .. }
            | Integrand::AsymmetricShift { .. } => Some(true),
            Integrand::CrystallineL1 | Integrand::CrystallineLinf => Some(false),
            Integrand::Tabulated { .. } => None,
        }
    }

    /// Whether `value(v) == value(-v)` for all v. Decided structurally where
    /// possible; tabulated data is probed at its own sample angles.
    pub fn is_symmetric(&self) -> bool {
        match self {
            Integrand::Euclidean
            | Integrand::Ellipse { .. }
            | Integrand::PNorm { .. }
            | Integrand::CrystallineL1
            | Integrand::CrystallineLinf => true,
            Integrand::AsymmetricShift { c } => *c == Vec2::ZERO,
            Integrand::Tabulated { samples } => samples.iter().all(|&(angle, value)| {
                let opposite = interpolate_angular(samples, (angle + 0.5 * TAU) % TAU);
                (opposite - value).abs() <= 1e-12 * value.max(opposite)
            }),
        }
    }
}

/// Piecewise-linear interpolation in angle, wrapping around 2pi.
fn interpolate_angular(samples: &[(f64, f64)], angle: f64) -> f64 {
    debug_assert!(!samples.is_empty());
    let n = samples.len();
    // Find the last sample with sample_angle <= angle; wrap if before the first.
    let idx = match samples.binary_search_by(|&(a, _)| a.partial_cmp(&angle).unwrap()) {
        Ok(i) => return samples[i].1,
        Err(0) => n - 1,
        Err(i) => i - 1,
    };
    let (a0, v0) = samples[idx];
    let (a1, v1) = samples[(idx + 1) % n];
    let mut span = a1 - a0;
    if span <= 0.0 {
        span += TAU;
    }
    let mut offset = angle - a0;
    if offset < 0.0 {
        offset += TAU;
    }
    v0 + (v1 - v0) * (offset / span)
}

/// Two-sided comparability constants: `c_lower |v| <= value(v) <= c_upper |v|`
/// over the sampled unit directions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComparabilityBounds {
    pub c_lower: f64,
    pub c_upper: f64,
}

/// Outcome of the sampled strict-convexity certificate.
#[derive(Clone, Debug)]
pub struct ConvexityReport {
    /// True iff the triangle-inequality slack exceeded the margin for every
    /// sampled non-parallel pair. A sampling certificate, not a proof.
    pub is_strict: bool,
    /// The sampled pair realizing the worst slack.
    pub worst_pair: (Vec2, Vec2),
    /// The minimal slack `value(u) + value(v) - value(u + v)` observed.
    pub worst_slack: f64,
}

/// Samples `n_samples` evenly spaced unit directions and tests the strict
/// triangle inequality on every pair with angular separation above
/// `parallel_tol` radians.
///
/// Pairs closer than the tolerance are vacuous by homogeneity and skipped.
/// Near-antiparallel pairs whose sum underflows to (numerically) zero cannot
/// violate strictness and are treated as slack `value(u) + value(v)`.
pub fn strict_convexity_check(
    integrand: &Integrand,
    n_samples: usize,
    margin_tol: f64,
    parallel_tol: f64,
) -> Result<ConvexityReport, NormError> {
    if n_samples < 8 {
        return Err(NormError::InvalidParameter("n_samples must be >= 8"));
    }
    let dirs: Vec<Vec2> = (0..n_samples)
        .map(|k| Vec2::from_angle(TAU * k as f64 / n_samples as f64))
        .collect();

    let mut worst_slack = f64::INFINITY;
    let mut worst_pair = (dirs[0], dirs[0]);
    for i in 0..n_samples {
        let u = dirs[i];
        let vu = integrand.eval(u)?;
        for &v in &dirs[i + 1..] {
            if u.angle_between(v) <= parallel_tol {
                continue;
            }
            let vv = integrand.eval(v)?;
            let sum = u + v;
            let slack = if sum.norm() > 1e-12 {
                vu + vv - integrand.eval(sum)?
            } else {
                vu + vv
            };
            if slack < worst_slack {
                worst_slack = slack;
                worst_pair = (u, v);
            }
        }
    }
    Ok(ConvexityReport {
        is_strict: worst_slack > margin_tol,
        worst_pair,
        worst_slack,
    })
}

/// Min/max of the integrand over `n_samples` evenly spaced unit directions.
pub fn comparability_bounds(
    integrand: &Integrand,
    n_samples: usize,
) -> Result<ComparabilityBounds, NormError> {
    if n_samples < 8 {
        return Err(NormError::InvalidParameter("n_samples must be >= 8"));
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for k in 0..n_samples {
        let value = integrand.eval(Vec2::from_angle(TAU * k as f64 / n_samples as f64))?;
        lo = lo.min(value);
        hi = hi.max(value);
    }
    Ok(ComparabilityBounds {
        c_lower: lo,
        c_upper: hi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn builtins() -> Vec<Integrand> {
        alloc::vec![
            Integrand::Euclidean,
            Integrand::ellipse(1.0, 0.0, 4.0).unwrap(),
            Integrand::p_norm(1.5).unwrap(),
            Integrand::p_norm(3.0).unwrap(),
            Integrand::asymmetric_shift(Vec2::new(0.5, 0.0)).unwrap(),
            Integrand::CrystallineL1,
            Integrand::CrystallineLinf,
        ]
    }

    #[test]
    fn euclidean_is_length() {
        let i = Integrand::Euclidean;
        assert_relative_eq!(i.eval(Vec2::new(3.0, 4.0)).unwrap(), 5.0);
    }

    #[test]
    fn ellipse_axis_values() {
        let i = Integrand::ellipse(1.0, 0.0, 4.0).unwrap();
        assert_relative_eq!(i.eval(Vec2::new(0.0, 1.0)).unwrap(), 2.0);
        assert_relative_eq!(i.eval(Vec2::new(1.0, 0.0)).unwrap(), 1.0);
    }

    #[test]
    fn asymmetric_shift_values() {
        let i = Integrand::asymmetric_shift(Vec2::new(0.5, 0.0)).unwrap();
        assert_relative_eq!(i.eval(Vec2::new(1.0, 0.0)).unwrap(), 1.5);
        assert_relative_eq!(i.eval(Vec2::new(-1.0, 0.0)).unwrap(), 0.5);
        assert!(!i.is_symmetric());
    }

    #[test]
    fn zero_vector_is_domain_error() {
        assert_eq!(
            Integrand::Euclidean.eval(Vec2::ZERO),
            Err(NormError::ZeroVector)
        );
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(Integrand::ellipse(1.0, 2.0, 1.0).is_err());
        assert!(Integrand::p_norm(1.0).is_err());
        assert!(Integrand::asymmetric_shift(Vec2::new(1.0, 0.0)).is_err());
        assert!(Integrand::tabulated(alloc::vec![(0.0, 1.0), (0.0, 2.0)]).is_err());
        assert!(Integrand::tabulated(alloc::vec![(0.0, 1.0), (1.0, -2.0)]).is_err());
    }

    #[test]
    fn homogeneity_holds_to_machine_precision() {
        for i in builtins() {
            for k in 0..64 {
                let v = Vec2::from_angle(0.1 + TAU * k as f64 / 64.0) * (0.3 + k as f64);
                for t in [0.25, 1.0, 3.0, 9.75] {
                    let lhs = i.eval(v * t).unwrap();
                    let rhs = t * i.eval(v).unwrap();
                    assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(rhs.abs()));
                }
            }
        }
    }

    #[test]
    fn crystalline_l1_axis_pair_has_zero_slack() {
        let i = Integrand::CrystallineL1;
        let u = Vec2::new(1.0, 0.0);
        let v = Vec2::new(0.0, 1.0);
        let slack = i.eval(u).unwrap() + i.eval(v).unwrap() - i.eval(u + v).unwrap();
        assert_relative_eq!(slack, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn strictness_dichotomy_at_360_samples() {
        let tol = crate::Tolerances::default();
        for i in builtins() {
            let report = strict_convexity_check(&i, 360, 1e-9, tol.parallel_angle).unwrap();
            assert_eq!(
                report.is_strict,
                i.strictly_convex_declared().unwrap(),
                "strictness certificate disagrees for {i:?}, worst slack {}",
                report.worst_slack
            );
        }
    }

    #[test]
    fn comparability_examples() {
        let b = comparability_bounds(&Integrand::Euclidean, 360).unwrap();
        assert_relative_eq!(b.c_lower, 1.0, epsilon = 1e-12);
        assert_relative_eq!(b.c_upper, 1.0, epsilon = 1e-12);

        let b = comparability_bounds(&Integrand::ellipse(1.0, 0.0, 4.0).unwrap(), 360).unwrap();
        assert_relative_eq!(b.c_lower, 1.0, epsilon = 1e-12);
        assert_relative_eq!(b.c_upper, 2.0, epsilon = 1e-12);

        let asym = Integrand::asymmetric_shift(Vec2::new(0.5, 0.0)).unwrap();
        let b = comparability_bounds(&asym, 360).unwrap();
        assert_relative_eq!(b.c_lower, 0.5, epsilon = 1e-12);
        assert_relative_eq!(b.c_upper, 1.5, epsilon = 1e-12);
    }

    #[test]
    fn tabulated_interpolates_and_wraps() {
        let quarter = core::f64::consts::FRAC_PI_2;
        let i = Integrand::tabulated(alloc::vec![
            (0.0, 1.0),
            (quarter, 2.0),
            (2.0 * quarter, 1.0),
            (3.0 * quarter, 2.0),
        ])
        .unwrap();
        assert_relative_eq!(i.eval(Vec2::new(1.0, 0.0)).unwrap(), 1.0);
        assert_relative_eq!(i.eval(Vec2::new(0.0, 1.0)).unwrap(), 2.0);
        // Halfway between 3pi/2 (value 2) and 0 (value 1), wrapping.
        let mid = Vec2::from_angle(3.5 * quarter);
        assert_relative_eq!(i.eval(mid).unwrap(), 1.5, epsilon = 1e-12);
    }

    #[test]
    fn nonstrict_convexity_of_all_builtins() {
        for i in builtins() {
            for a in 0..24 {
                for b in 0..24 {
                    let u = Vec2::from_angle(TAU * a as f64 / 24.0 + 0.03);
                    let v = Vec2::from_angle(TAU * b as f64 / 24.0 + 0.05);
                    let sum = u + v;
                    if sum.norm() < 1e-9 {
                        continue;
                    }
                    let lhs = i.eval(sum).unwrap();
                    let rhs = i.eval(u).unwrap() + i.eval(v).unwrap();
                    assert!(lhs <= rhs + 1e-12, "convexity violated for {i:?}");
                }
            }
        }
    }
}
