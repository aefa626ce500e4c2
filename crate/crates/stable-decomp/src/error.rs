use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode of the crate.  Variants are grouped by the layer that
/// raises them; the CLI maps them onto its exit-code taxonomy (input errors
/// versus internal invariant breaches).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    // representation layer
    #[error("alpha must be a finite number in (0, 2), got {0}")]
    AlphaOutOfRange(f64),
    #[error("point {0:?} has non-positive weight {1}")]
    NonPositiveWeight(String, f64),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("point {0:?} carries an all-zero spectral column (full support required)")]
    ZeroColumn(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("time label sets differ")]
    TimesMismatch,
    #[error("stability indices differ: {0} vs {1}")]
    AlphaMismatch(f64, f64),
    #[error("{0} must not be empty")]
    EmptyInput(&'static str),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    // decomposition layer
    #[error("weight family violates the unit norm constraint at point {point:?} (sum {norm})")]
    WeightNormViolation { point: String, norm: f64 },
    #[error("component {0} has identically zero weights")]
    EmptyComponent(usize),
    #[error("candidate is not a component: offending direction {direction:?}")]
    NotAComponent { direction: Vec<f64> },
    #[error("increment data not monotone: {0}")]
    NonMonotone(String),

    // flow layer
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("generators {0} and {1} do not commute")]
    NonCommutingGenerators(usize, usize),
    #[error("generator {0} has order incompatible with its torus factor")]
    GeneratorOrder(usize),
    #[error("cocycle inconsistent: {0}")]
    CocycleInconsistent(String),
    #[error("point {0:?} is never reached by the kernel support (full support violated)")]
    FullSupportViolation(String),
    #[error("time labels do not enumerate the declared torus: {0}")]
    NotATorusIndex(String),
    #[error(
        "weight vector {component} is not constant on the invariant block starting at {orbit:?}"
    )]
    NotInvariant { component: usize, orbit: String },
    #[error("candidate component is not stationary under the declared torus")]
    NotStationary,
    #[error("flow does not preserve the control measure: {0}")]
    NotMeasurePreserving(String),
    #[error("kernel sheet {0} is identically zero")]
    ZeroKernelSheet(usize),

    // max-stable layer
    #[error("negative spectral entry at {label:?}: {value}")]
    NegativeEntry { label: String, value: f64 },
    #[error("threshold must be strictly positive, got {0}")]
    NonPositiveThreshold(f64),

    // simulation layer
    #[error("no samples supplied")]
    EmptySample,
    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),

    // cli layer
    #[error("schema error: {0}")]
    SchemaError(String),
    #[error("unresolved label {0:?}")]
    DanglingLabel(String),
    #[error("io error: {0}")]
    Io(String),

    // impossible-by-construction conditions; reaching one is a bug
    #[error("internal invariant breach: {0}")]
    TheoremBreach(String),
    #[error("recovered weights are not invariant: {0}")]
    InvarianceViolation(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
