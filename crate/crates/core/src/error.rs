use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("weight mismatch: {left} vs {right}")]
    WeightMismatch { left: String, right: String },

    #[error("axis projection ({i},{j}) undefined: both coordinates are zero")]
    UndefinedPoint { i: usize, j: usize },

    #[error("{path}: {message}")]
    Format { path: String, message: String },

    #[error("invalid rational '{0}'")]
    ParseRational(String),

    #[error("point '{name}': zero vector")]
    ZeroVector { name: String },

    #[error("point '{name}': expected {expected} coordinates, found {found}")]
    DimensionMismatch {
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("duplicate point name '{0}'")]
    DuplicatePoint(String),

    #[error("colors[{color}][{index}]: unknown point name '{name}'")]
    UnknownPoint {
        name: String,
        color: usize,
        index: usize,
    },

    #[error("colors[{color}][{index}]: expected {expected} members, found {found}")]
    ArityMismatch {
        color: usize,
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("arity {arity} exceeds dim + 1 = {max}")]
    ArityTooLarge { arity: usize, max: usize },

    #[error("expected {expected} color lists (one per weight part), found {found}")]
    ColorCount { expected: usize, found: usize },

    #[error("colors[{color}]: length {len} is not divisible by weight part {part}")]
    LengthNotDivisible { color: usize, len: usize, part: u32 },

    #[error("colors[{color}]: implies ell = {found}, but colors[0] implies ell = {expected}")]
    InconsistentEll {
        color: usize,
        expected: usize,
        found: usize,
    },

    #[error("ell = 0: every color list is empty")]
    ZeroEll,

    #[error("colors[{color}][{index}]: dependent r-tuple")]
    DependentTuple { color: usize, index: usize },

    #[error("not an h-configuration: {0}")]
    NotHConfiguration(String),

    #[error("invalid basis choice: {0}")]
    InvalidChoice(String),

    #[error("morphism invalid: {0}")]
    MorphismInvalid(String),

    #[error("point outside the affine chart x0 != 0: {0}")]
    OutsideChart(String),

    #[error("points are not collinear")]
    NotCollinear,

    #[error("oracle bookkeeping failed: {0}")]
    OracleInconsistent(String),
}
