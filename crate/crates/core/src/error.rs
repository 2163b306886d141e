use thiserror::Error;

/// Errors raised by the algebra engine, gate library and game solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QraError {
    #[error("algebra self-test failed: {0}")]
    SelfTest(String),

    #[error("dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("register width {0} is out of range (1..={max})", max = crate::multivector::MAX_QUBITS)]
    WidthOutOfRange(usize),

    #[error("qubit index {index} is out of range for a {width}-qubit register")]
    QubitOutOfRange { index: usize, width: usize },

    #[error("angle {angle} cannot be represented exactly in the {ring} ring")]
    UnrepresentableAngle { angle: String, ring: &'static str },

    #[error("constant {0} cannot be represented in the {1} ring")]
    UnrepresentableConstant(&'static str, &'static str),

    #[error("element is not local to qubits {qubits:?}: blade {blade} touches other generators")]
    NotLocal { qubits: Vec<usize>, blade: String },

    #[error("gate supports must be disjoint and adjacent: {left:?} then {right:?}")]
    BadParallelSupports { left: Vec<usize>, right: Vec<usize> },

    #[error("sign rule has no reassignment for marker product `{0}`")]
    UnlistedMarkers(String),

    #[error("sign-rule routes disagree: {0}")]
    SignRuleDivergence(String),

    #[error("matrix is not square or not a power-of-two size ({rows}x{cols})")]
    BadMatrixShape { rows: usize, cols: usize },

    #[error("matrix is not unitary (max deviation of U^dagger U from identity: {0:e})")]
    NotUnitary(f64),

    #[error("state is not normalized: total probability {0}")]
    NotNormalized(String),

    #[error("a circuit needs at least one gate")]
    EmptyCircuit,

    #[error("invalid three-qubit entangler flag {0} (expected 0 or 1)")]
    BadEntanglerFlag(u8),

    #[error("value function is not binary at coalition {0:?}")]
    NonBinary(Vec<usize>),

    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("empty coalition cannot be used here")]
    EmptyCoalition,

    #[error("unknown sweep parameter `{0}`")]
    UnknownParameter(String),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
}

pub type Result<T, E = QraError> = std::result::Result<T, E>;
