use thiserror::Error;

/// Which of the two frame angles tripped a degeneracy guard.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Angle {
    Contact,
    Holomorphic,
}

impl std::fmt::Display for Angle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Angle::Contact => write!(f, "contact angle"),
            Angle::Holomorphic => write!(f, "holomorphic angle"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("stencil at ({u}, {v}) with step {h} leaves the chart domain")]
    BoundaryTooClose { u: f64, v: f64, h: f64 },

    #[error("tangent plane contains the Reeb direction (contact angle 0 or pi)")]
    DegenerateTangent,

    #[error("metric determinant {det:e} is below the immersion threshold")]
    DegenerateMetric { det: f64 },

    #[error("{which} {value} has sine below the degeneracy threshold")]
    DegenerateAngle { which: Angle, value: f64 },

    #[error("frame vector e{index} flips sign inside the stencil")]
    FrameDiscontinuity { index: usize },

    #[error("trigonometric factor {factor} is singular (|value| = {value:e})")]
    SingularTrig { factor: &'static str, value: f64 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("degenerate torus spec: {0}")]
    DegenerateSpec(String),

    #[error("invalid chart: {0}")]
    InvalidChart(String),
}

impl GeometryError {
    /// Errors that mark a point as skipped rather than a hard failure.
    pub fn is_skip(&self) -> bool {
        matches!(
            self,
            GeometryError::BoundaryTooClose { .. }
                | GeometryError::DegenerateTangent
                | GeometryError::DegenerateMetric { .. }
                | GeometryError::DegenerateAngle { .. }
                | GeometryError::SingularTrig { .. }
        )
    }
}

impl GeometryError {
    /// Short stable identifier used for skip accounting.
    pub fn kind(&self) -> &'static str {
        match self {
            GeometryError::BoundaryTooClose { .. } => "boundary",
            GeometryError::DegenerateTangent => "degenerate-tangent",
            GeometryError::DegenerateMetric { .. } => "degenerate-metric",
            GeometryError::DegenerateAngle { which: Angle::Contact, .. } => "degenerate-contact-angle",
            GeometryError::DegenerateAngle { which: Angle::Holomorphic, .. } => "degenerate-holomorphic-angle",
            GeometryError::FrameDiscontinuity { .. } => "frame-discontinuity",
            GeometryError::SingularTrig { factor, .. } => factor,
            GeometryError::HypothesisViolated(_) => "hypothesis",
            GeometryError::DegenerateSpec(_) => "degenerate-spec",
            GeometryError::InvalidChart(_) => "invalid-chart",
        }
    }
}

pub type Result<T> = std::result::Result<T, GeometryError>;
