use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Angle, Scalar};
use crate::error::{QraError, Result};

/// Exact element `a + b*sqrt(2)` with rational `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QSqrt2 {
    pub a: BigRational,
    pub b: BigRational,
}

impl QSqrt2 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QSqrt2 { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        QSqrt2 {
            a,
            b: BigRational::zero(),
        }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(num.into(), den.into()))
    }

    pub fn sqrt2() -> Self {
        QSqrt2 {
            a: BigRational::zero(),
            b: BigRational::one(),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Values of cos and sin at `k * pi/4`.
    fn octant(k: i64) -> (Self, Self) {
        let h = QSqrt2::new(BigRational::zero(), BigRational::new(1.into(), 2.into()));
        let z = QSqrt2::zero();
        let o = QSqrt2::one();
        match k.rem_euclid(8) {
            0 => (o, z),
            1 => (h.clone(), h),
            2 => (z, o),
            3 => (-h.clone(), h),
            4 => (-o, z),
            5 => (-h.clone(), -h),
            6 => (z, -o),
            _ => (h.clone(), -h),
        }
    }

    fn trig(angle: &Angle) -> Result<(Self, Self)> {
        let unrepresentable = || QraError::UnrepresentableAngle {
            angle: angle.to_string(),
            ring: Self::RING,
        };
        match angle {
            Angle::PiMultiple(r) => {
                let quarters: Rational64 = r * Rational64::from_integer(4);
                if quarters.is_integer() {
                    Ok(Self::octant(quarters.to_integer()))
                } else {
                    Err(unrepresentable())
                }
            }
            Angle::Radians(v) if *v == 0.0 => Ok(Self::octant(0)),
            _ => Err(unrepresentable()),
        }
    }
}

impl Add for QSqrt2 {
    type Output = QSqrt2;
    fn add(self, o: QSqrt2) -> QSqrt2 {
        QSqrt2::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, o: QSqrt2) -> QSqrt2 {
        QSqrt2::new(self.a - o.a, self.b - o.b)
    }
}

impl Mul for QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, o: QSqrt2) -> QSqrt2 {
        let two = BigRational::from_integer(BigInt::from(2));
        QSqrt2::new(
            &self.a * &o.a + two * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
        )
    }
}

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.a, -self.b)
    }
}

impl Scalar for QSqrt2 {
    const RING: &'static str = "exact";

    fn zero() -> Self {
        QSqrt2::rational(BigRational::zero())
    }

    fn one() -> Self {
        QSqrt2::rational(BigRational::one())
    }

    fn from_rational(r: &BigRational) -> Self {
        QSqrt2::rational(r.clone())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn to_f64(&self) -> Option<f64> {
        Some(self.a.to_f64()? + self.b.to_f64()? * std::f64::consts::SQRT_2)
    }

    fn frac_1_sqrt2() -> Result<Self> {
        Ok(QSqrt2::new(
            BigRational::zero(),
            BigRational::new(1.into(), 2.into()),
        ))
    }

    fn cos(angle: &Angle) -> Result<Self> {
        Self::trig(angle).map(|(c, _)| c)
    }

    fn sin(angle: &Angle) -> Result<Self> {
        Self::trig(angle).map(|(_, s)| s)
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt2", self.b),
            (false, false) => {
                let sign = if self.b.is_negative() { '-' } else { '+' };
                write!(f, "{} {} {}*sqrt2", self.a, sign, self.b.abs())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_squares_to_two() {
        assert_eq!(QSqrt2::sqrt2() * QSqrt2::sqrt2(), QSqrt2::ratio(2, 1));
        let h = QSqrt2::frac_1_sqrt2().unwrap();
        assert_eq!(h.clone() * h, QSqrt2::ratio(1, 2));
    }

    #[test]
    fn exact_octant_values() {
        let c = QSqrt2::cos(&Angle::pi(1, 4)).unwrap();
        assert_eq!(c, QSqrt2::frac_1_sqrt2().unwrap());
        assert_eq!(QSqrt2::sin(&Angle::pi(1, 2)).unwrap(), QSqrt2::one());
        assert_eq!(QSqrt2::cos(&Angle::pi(3, 4)).unwrap(), -c);
        assert!(QSqrt2::cos(&Angle::pi(1, 8)).is_err());
        assert!(QSqrt2::cos(&Angle::radians(0.3)).is_err());
    }
}
