//! Error types.

use core::fmt;

/// Errors from integrand construction and evaluation.
#[derive(Clone, Debug, PartialEq)]
pub enum NormError {
    /// Evaluation at the zero vector is undefined.
    ZeroVector,
    /// A family parameter violates its constraint.
    InvalidParameter(&'static str),
}

impl fmt::Display for NormError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormError::ZeroVector => write!(f, "integrand evaluated at the zero vector"),
            NormError::InvalidParameter(what) => write!(f, "invalid integrand parameter: {what}"),
        }
    }
}

/// Errors from polygonal-set construction and geometric operations.
#[derive(Clone, Debug, PartialEq)]
pub enum GeometryError {
    /// A loop has fewer than three vertices.
    TooFewVertices { loop_index: usize },
    /// Two consecutive vertices coincide (zero-length edge).
    DegenerateEdge { loop_index: usize, edge_index: usize },
    /// A loop crosses itself or another loop.
    CrossingBoundary,
    /// A loop has zero signed area.
    ZeroAreaLoop { loop_index: usize },
    /// Arc/chord pair does not bound a Jordan curve.
    NotJordan,
    /// No interior sample point clear of the boundary could be found.
    DegenerateRegion,
    /// The queried point is not on the boundary.
    NotOnBoundary,
    /// Window is empty or malformed.
    InvalidWindow(&'static str),
    /// Inputs violate a set-operation precondition.
    SetOperation(&'static str),
    /// An arc has invalid structure (closed, empty, off-loop points).
    InvalidArc(&'static str),
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::TooFewVertices { loop_index } => {
                write!(f, "loop {loop_index} has fewer than 3 vertices")
            }
            GeometryError::DegenerateEdge {
                loop_index,
                edge_index,
            } => write!(f, "zero-length edge {edge_index} in loop {loop_index}"),
            GeometryError::CrossingBoundary => write!(f, "boundary loops cross"),
            GeometryError::ZeroAreaLoop { loop_index } => {
                write!(f, "loop {loop_index} has zero area")
            }
            GeometryError::NotJordan => write!(f, "arc and chord do not bound a Jordan curve"),
            GeometryError::DegenerateRegion => {
                write!(f, "no interior sample point clear of the boundary")
            }
            GeometryError::NotOnBoundary => write!(f, "point is not on the boundary"),
            GeometryError::InvalidWindow(what) => write!(f, "invalid window: {what}"),
            GeometryError::SetOperation(what) => write!(f, "set operation: {what}"),
            GeometryError::InvalidArc(what) => write!(f, "invalid arc: {what}"),
        }
    }
}

/// Errors surfaced by the descent driver.
#[derive(Clone, Debug, PartialEq)]
pub enum DescentError {
    /// Applying a selected replacement produced an invalid set. The step is
    /// aborted rather than silently skipped.
    ReplacementFailed(GeometryError),
    /// Input set or window failed validation.
    InvalidInput(GeometryError),
}

impl fmt::Display for DescentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DescentError::ReplacementFailed(e) => write!(f, "replacement failed: {e}"),
            DescentError::InvalidInput(e) => write!(f, "invalid descent input: {e}"),
        }
    }
}

impl From<GeometryError> for DescentError {
    fn from(e: GeometryError) -> Self {
        DescentError::ReplacementFailed(e)
    }
}

#[cfg(feature = "std")]
mod std_impls {
    use super::*;
    impl std::error::Error for NormError {}
    impl std::error::Error for GeometryError {}
    impl std::error::Error for DescentError {}
}
