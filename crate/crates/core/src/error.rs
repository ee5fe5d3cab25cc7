use std::fmt;

use thiserror::Error;

/// The prospect-theory property a rejected parameter set violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    /// Gain-side curvature must give a concave value function (0 < α₁ < 1).
    Concavity,
    /// Loss-side curvature must give a convex value function (0 < α₂ < 1),
    /// and the two curvatures must agree.
    Convexity,
    /// Losses must loom larger than gains (λ₁ < λ₂).
    LossAversion,
    /// Reference points must be strictly positive.
    Reference,
    /// Probability weighting parameters out of range.
    Weighting,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Constraint::Concavity => "concavity",
            Constraint::Convexity => "convexity",
            Constraint::LossAversion => "loss_aversion",
            Constraint::Reference => "reference",
            Constraint::Weighting => "weighting",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("constraint violation ({constraint}): {detail}")]
    ConstraintViolation {
        constraint: Constraint,
        detail: String,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "tolerance not met: error estimate {achieved:.3e} exceeds {requested:.3e} after {evaluations} evaluations"
    )]
    ToleranceNotMet {
        achieved: f64,
        requested: f64,
        evaluations: usize,
    },

    #[error("invalid scenario: {0}")]
    Scenario(String),

    #[error("grid point {axis} = {value}: {source}")]
    AtGridPoint {
        axis: String,
        value: f64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn violation(constraint: Constraint, detail: impl Into<String>) -> Self {
        Error::ConstraintViolation {
            constraint,
            detail: detail.into(),
        }
    }

    pub(crate) fn domain(detail: impl Into<String>) -> Self {
        Error::Domain(detail.into())
    }

    /// Strips grid-point context and returns the underlying error.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtGridPoint { source, .. } => source.root(),
            other => other,
        }
    }

    /// Process exit code for the command-line front end:
    /// 2 validation, 3 numerical tolerance, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self.root() {
            Error::ConstraintViolation { .. }
            | Error::Domain(_)
            | Error::Scenario(_)
            | Error::Json(_) => 2,
            Error::ToleranceNotMet { .. } => 3,
            Error::Io(_) => 4,
            Error::AtGridPoint { .. } => unreachable!("root() unwraps grid context"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
