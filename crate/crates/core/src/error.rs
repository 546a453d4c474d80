use thiserror::Error;

/// Errors shared across the crate.
///
/// Every variant carries enough context to reconstruct the offending input
/// (indices are positions into the space's point list). `code()` returns the
/// stable machine-readable name used in CLI error objects.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("distance matrix is not symmetric at ({i},{j}): {a} vs {b}")]
    AsymmetricMatrix { i: usize, j: usize, a: f64, b: f64 },

    #[error(
        "triangle inequality violated: d({i},{k}) = {direct} > d({i},{j}) + d({j},{k}) = {via}"
    )]
    TriangleViolation {
        i: usize,
        j: usize,
        k: usize,
        direct: f64,
        via: f64,
    },

    #[error("off-diagonal distance is zero at ({i},{j}); points must be distinct")]
    ZeroOffDiagonal { i: usize, j: usize },

    #[error("negative entry {value} at ({i},{j})")]
    NegativeEntry { i: usize, j: usize, value: f64 },

    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("alpha = {0} out of range {1}")]
    AlphaOutOfRange(f64, &'static str),

    #[error("s = {0} out of range {1}")]
    SOutOfRange(f64, &'static str),

    #[error("p = {0} out of range {1}")]
    POutOfRange(f64, &'static str),

    #[error("empty space: at least {0} point(s) required")]
    EmptySpace(usize),

    #[error("value vector has {got} entries but the space has {expected} points")]
    SpaceMismatch { got: usize, expected: usize },

    #[error("weight at point {index} is {value}; weights must be strictly positive")]
    NonPositiveWeight { index: usize, value: f64 },

    #[error("no positive radius realized; cannot fit a lower mass bound")]
    DegenerateFit,

    #[error("measure is not balanced: total mass {total} exceeds tolerance {tol}")]
    NotBalanced { total: f64, tol: f64 },

    #[error("linear program is infeasible (phase-1 residual {0})")]
    Infeasible(f64),

    #[error("linear program is unbounded (entering column {0})")]
    Unbounded(usize),

    #[error("simplex iteration limit {0} reached")]
    IterationLimit(usize),

    #[error("delta schedule must be nonempty, positive and strictly decreasing")]
    EmptySchedule,

    #[error("operator family undefined on a space of diameter zero")]
    DegenerateDiameter,

    #[error("Lipschitz constant {given} is below the restriction's constant {required}")]
    ConstantTooSmall { given: f64, required: f64 },

    #[error("unknown point id `{0}`")]
    UnknownPoint(String),

    #[error("decomposition does not reconstruct the measure: max abs error {0}")]
    ReconstructionMismatch(f64),

    #[error("exponent condition violated: p = {p} must exceed Q/s = {bound}")]
    ExponentViolation { p: f64, bound: f64 },

    #[error("C = {0} out of range; require C > 1")]
    COutOfRange(f64),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable error code, used in CLI error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::AsymmetricMatrix { .. } => "AsymmetricMatrix",
            Error::TriangleViolation { .. } => "TriangleViolation",
            Error::ZeroOffDiagonal { .. } => "ZeroOffDiagonal",
            Error::NegativeEntry { .. } => "NegativeEntry",
            Error::NotSquare { .. } => "NotSquare",
            Error::AlphaOutOfRange(..) => "AlphaOutOfRange",
            Error::SOutOfRange(..) => "SOutOfRange",
            Error::POutOfRange(..) => "POutOfRange",
            Error::EmptySpace(..) => "EmptySpace",
            Error::SpaceMismatch { .. } => "SpaceMismatch",
            Error::NonPositiveWeight { .. } => "NonPositiveWeight",
            Error::DegenerateFit => "DegenerateFit",
            Error::NotBalanced { .. } => "NotBalanced",
            Error::Infeasible(..) => "Infeasible",
            Error::Unbounded(..) => "Unbounded",
            Error::IterationLimit(..) => "IterationLimit",
            Error::EmptySchedule => "EmptySchedule",
            Error::DegenerateDiameter => "DegenerateDiameter",
            Error::ConstantTooSmall { .. } => "ConstantTooSmall",
            Error::UnknownPoint(..) => "UnknownPoint",
            Error::ReconstructionMismatch(..) => "ReconstructionMismatch",
            Error::ExponentViolation { .. } => "ExponentViolation",
            Error::COutOfRange(..) => "COutOfRange",
            Error::InvalidInput(..) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
