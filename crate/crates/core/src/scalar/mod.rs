//! Scalar rings carried by multivector coefficients.
//!
//! Three rings are provided: `f64` for numeric sweeps, [`QSqrt2`] for exact
//! golden tests (rationals extended by `sqrt(2)`, enough for the Hadamard gate
//! and every angle on the `pi/4` lattice) and [`TrigPoly`] for symbolic proofs.
//! Mixing rings inside one multivector is impossible by construction: every
//! algebra type is generic over exactly one `Scalar`.

mod angle;
mod qsqrt2;
mod trig;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{QraError, Result};

pub use angle::Angle;
pub use qsqrt2::QSqrt2;
pub use trig::{trig_canonicalize, AngleVar, TrigPoly};

/// Absolute tolerance used by every float zero test in the crate.
pub const ZERO_TOL: f64 = 1e-10;

/// A commutative ring usable as the real part (and iota part) of a coefficient.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Short ring name used in diagnostics.
    const RING: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &BigRational) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(v.into()))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&BigRational::new(num.into(), den.into()))
    }

    /// Canonical zero test: exact for exact rings, `|x| <= ZERO_TOL` for floats.
    fn is_zero(&self) -> bool;

    /// Whether a stored coefficient may be dropped from a sparse map.
    fn is_prunable(&self) -> bool {
        self.is_zero()
    }

    /// Numeric value, if the element is a constant.
    fn to_f64(&self) -> Option<f64>;

    fn frac_1_sqrt2() -> Result<Self>;

    fn cos(angle: &Angle) -> Result<Self>;

    fn sin(angle: &Angle) -> Result<Self>;
}

impl Scalar for f64 {
    const RING: &'static str = "float";

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_rational(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn is_zero(&self) -> bool {
        self.abs() <= ZERO_TOL
    }

    fn is_prunable(&self) -> bool {
        *self == 0.0
    }

    fn to_f64(&self) -> Option<f64> {
        Some(*self)
    }

    fn frac_1_sqrt2() -> Result<Self> {
        Ok(std::f64::consts::FRAC_1_SQRT_2)
    }

    fn cos(angle: &Angle) -> Result<Self> {
        numeric(angle).map(f64::cos)
    }

    fn sin(angle: &Angle) -> Result<Self> {
        numeric(angle).map(f64::sin)
    }
}

fn numeric(angle: &Angle) -> Result<f64> {
    angle.to_radians().ok_or_else(|| QraError::UnrepresentableAngle {
        angle: angle.to_string(),
        ring: f64::RING,
    })
}

/// Squared modulus helper shared by probability extraction.
pub(crate) fn norm_sqr<S: Scalar>(re: &S, im: &S) -> S {
    re.clone() * re.clone() + im.clone() * im.clone()
}
