use thiserror::Error;

/// Misuse of the exact-algebra API.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("series over {left} and {right} variables per block cannot be combined")]
    MismatchedVariables { left: usize, right: usize },
    #[error("series has a nonzero constant term; the composition is undefined")]
    NonZeroConstant,
    #[error("division by the zero form")]
    ZeroDivisor,
    #[error("divisor must be a homogeneous polynomial")]
    NonHomogeneousDivisor,
    #[error("numerator known only to degree {cap}, below the divisor degree {degree}")]
    InsufficientPrecision { cap: u32, degree: u32 },
    #[error("variable index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("bilinear form needs distinct indices, got ({0}, {0})")]
    DegenerateForm(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinatoricsError {
    #[error("n must be at least 1")]
    EmptyGroundSet,
    #[error("{0:?} is not a permutation of 1..=n")]
    NotAPermutation(Vec<usize>),
    #[error("cycle C_{m} is undefined on {n} points (need 2 <= m <= n)")]
    CycleOutOfRange { m: usize, n: usize },
    #[error("permutations act on different ground sets ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("index sets must partition 2..={n}")]
    NotAPartition { n: usize },
    #[error("coincident evaluation points make u_{{{j}{k}}} vanish")]
    CoincidentPoints { j: usize, k: usize },
    #[error("expected {expected} evaluation points, got {got}")]
    WrongPointCount { expected: usize, got: usize },
}

/// Failure of an identity that the mathematics guarantees; always fatal.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConsistencyError {
    #[error("{pipeline}: numerator not divisible by {divisor} (P_n must be a power series)")]
    NonZeroRemainder { pipeline: &'static str, divisor: String },
    #[error("n = 2: grade-0 part of the moment series is {found}, expected 1")]
    UnstableMismatch { found: String },
    #[error("n >= 3: moment series has constant term {found}")]
    UnexpectedConstant { found: String },
    #[error("P_n is defined here for n >= 2 (got {0})")]
    PointCount(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericError {
    #[error("all arguments must be positive, got {0}")]
    NonPositive(f64),
    #[error("{what} supports at most {max} points, got {got}")]
    TooManyPoints { what: &'static str, max: usize, got: usize },
    #[error("at least one point is required")]
    NoPoints,
    #[error("imaginary part {imag:e} exceeds the reporting threshold for a real quantity of size {value:e}")]
    ConvergenceFailure { value: f64, imag: f64 },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
}

/// Cache file problems.
#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache I/O: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("cached value for {key} is {cached}, recomputation gives {fresh}")]
    Corrupt { key: String, cached: String, fresh: String },
}
