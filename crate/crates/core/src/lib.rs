//! Quantum register algebra (QRA) engine for quantized cooperative games.
//!
//! The crate builds qubit states and gates as elements of the real Clifford
//! algebra G(2n) with pseudo-complex coefficients, evaluates the two- and
//! three-player quantization protocols, computes quantum Shapley values and
//! proves circuit identities symbolically. A dense matrix simulator is kept
//! alongside as an independent oracle.

pub mod crosscheck;
pub mod equivalence;
pub mod error;
pub mod game;
pub mod gates;
pub mod matrix;
pub mod multivector;
pub mod oracle;
pub mod quantum;
pub mod register;
pub mod scalar;
pub mod witt;

pub use error::{QraError, Result};
pub use game::{Allocation, Coalition, ValueFunction, WeightedMajoritySpec};
pub use gates::GateElement;
pub use multivector::{blade_product, linear_combine, Blade, Multivector, PseudoComplex};
pub use register::{BitString, ProbabilityTable, RegisterState};
pub use scalar::{Angle, QSqrt2, Scalar, TrigPoly, ZERO_TOL};
