use thiserror::Error;

use crate::moments::Region;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum CubatureError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("region {0} is not supported by this operation")]
    UnsupportedRegion(Region),

    #[error("Moller's bound is defined for odd degree only (got {0})")]
    EvenDegree(u32),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("sum of weights is zero")]
    ZeroWeightSum,

    #[error("matrix is singular or rank deficient")]
    RankDeficient,

    #[error("shell is not a regular simplex: {0}")]
    NotRegularSimplex(String),

    #[error("point {0} lies at the origin and has no radial direction")]
    PointAtOrigin(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("refinement diverged after {iterations} iterations (max residual {max_residual:e})")]
    Divergence { iterations: usize, max_residual: f64 },

    #[error("unknown catalog table `{0}`")]
    UnknownTable(String),

    #[error("table {table} was not published for region {region}")]
    UnpublishedCombination { table: String, region: Region },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = CubatureError> = std::result::Result<T, E>;
