use thiserror::Error;

/// Errors produced by geometric operations and the CLI layer.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("coordinates must be finite")]
    NonFiniteCoordinate,

    #[error("a vector must have dimension >= 1")]
    ZeroDimension,

    #[error("a point set must contain at least one point")]
    EmptyPointSet,

    #[error("operation needs at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("expected exactly {expected} points, got {got}")]
    CardinalityMismatch { expected: usize, got: usize },

    #[error("expected a unit vector, got norm {norm}")]
    NotUnitLength { norm: f64 },

    #[error("origin is not in the relative interior of the convex hull")]
    OriginNotInRelativeInterior,

    #[error("target point is not in the convex hull")]
    TargetNotInHull,

    #[error("all points coincide; the enclosing ball has radius zero")]
    AllPointsCoincident,

    #[error("invalid tolerance: require 0 < eps_geom <= eps_cert < 1")]
    InvalidTolerance,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("configuration mismatch: {0}")]
    ConfigMismatch(String),

    #[error("failed to read {path}: {message}")]
    Io { path: String, message: String },

    #[error("malformed document: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
