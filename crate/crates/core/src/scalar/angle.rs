use std::f64::consts::PI;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A gate angle: a plain float, an exact multiple of pi, or a named symbol
/// (optionally scaled, e.g. `g12/2` inside an entangler).
#[derive(Debug, Clone, PartialEq)]
pub enum Angle {
    Radians(f64),
    PiMultiple(Rational64),
    Symbol { name: String, scale: Rational64 },
}

impl Angle {
    pub fn radians(value: f64) -> Self {
        Angle::Radians(value)
    }

    /// `num/den * pi`.
    pub fn pi(num: i64, den: i64) -> Self {
        Angle::PiMultiple(Rational64::new(num, den))
    }

    pub fn symbol(name: impl Into<String>) -> Self {
        Angle::Symbol {
            name: name.into(),
            scale: Rational64::one(),
        }
    }

    pub fn scaled(&self, factor: Rational64) -> Self {
        match self {
            Angle::Radians(v) => Angle::Radians(v * factor.to_f64().unwrap_or(f64::NAN)),
            Angle::PiMultiple(r) => Angle::PiMultiple(r * factor),
            Angle::Symbol { name, scale } => Angle::Symbol {
                name: name.clone(),
                scale: scale * factor,
            },
        }
    }

    pub fn half(&self) -> Self {
        self.scaled(Rational64::new(1, 2))
    }

    /// Numeric value in radians; `None` for symbols.
    pub fn to_radians(&self) -> Option<f64> {
        match self {
            Angle::Radians(v) => Some(*v),
            Angle::PiMultiple(r) => Some(r.to_f64()? * PI),
            Angle::Symbol { .. } => None,
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, Angle::Symbol { .. })
    }

    /// Whether a numeric angle lies in the protocol domain `[0, pi/2]`.
    /// Symbols are always accepted.
    pub fn in_protocol_range(&self) -> bool {
        match self {
            Angle::PiMultiple(r) => !r.is_negative() && *r <= Rational64::new(1, 2),
            _ => match self.to_radians() {
                Some(v) => (-1e-12..=PI / 2.0 + 1e-12).contains(&v),
                None => true,
            },
        }
    }
}

impl From<f64> for Angle {
    fn from(v: f64) -> Self {
        Angle::Radians(v)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Radians(v) => write!(f, "{v}"),
            Angle::PiMultiple(r) => {
                if r.is_zero() {
                    return write!(f, "0");
                }
                let (n, d) = (*r.numer(), *r.denom());
                match (n, d) {
                    (1, 1) => write!(f, "pi"),
                    (-1, 1) => write!(f, "-pi"),
                    (1, d) => write!(f, "pi/{d}"),
                    (-1, d) => write!(f, "-pi/{d}"),
                    (n, 1) => write!(f, "{n}pi"),
                    (n, d) => write!(f, "{n}pi/{d}"),
                }
            }
            Angle::Symbol { name, scale } => {
                let (n, d) = (*scale.numer(), *scale.denom());
                match (n, d) {
                    (1, 1) => write!(f, "{name}"),
                    (-1, 1) => write!(f, "-{name}"),
                    (1, d) => write!(f, "{name}/{d}"),
                    (n, 1) => write!(f, "{n}*{name}"),
                    (n, d) => write!(f, "{n}*{name}/{d}"),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(Angle::pi(3, 8).to_string(), "3pi/8");
        assert_eq!(Angle::pi(1, 2).to_string(), "pi/2");
        assert_eq!(Angle::pi(0, 1).to_string(), "0");
        assert_eq!(Angle::symbol("g12").half().to_string(), "g12/2");
    }

    #[test]
    fn protocol_range() {
        assert!(Angle::pi(1, 2).in_protocol_range());
        assert!(!Angle::pi(3, 4).in_protocol_range());
        assert!(!Angle::radians(-0.1).in_protocol_range());
        assert!(Angle::symbol("g").in_protocol_range());
    }
}
