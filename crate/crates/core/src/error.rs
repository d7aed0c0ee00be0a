use thiserror::Error;

use crate::body::Finding;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("duplicate hyperplane at positions {0} and {1}")]
    DuplicateHyperplane(usize, usize),

    #[error("hyperplane {0} is parallel to or coincides with the restricting hyperplane")]
    DegenerateRestriction(usize),

    #[error("instance is not in general position ({} finding(s))", .0.len())]
    GeneralPosition(Vec<Finding>),

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("perturbation failed after {rounds} rounds ({} finding(s) remain)", .findings.len())]
    Perturbation {
        rounds: usize,
        findings: Vec<Finding>,
    },

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
