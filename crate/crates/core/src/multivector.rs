//! Sparse multivectors of the real Clifford algebra G(2n) with pseudo-complex
//! coefficients `a + b*iota`.
//!
//! All 2n generators square to `+1`. The pseudo-scalar unit `iota` is carried
//! inside the coefficient and never appears as a blade, so the blade space is
//! exactly `2^(2n)`-dimensional.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{QraError, Result};
use crate::scalar::Scalar;

/// Largest supported register width (2n generators must fit a `u32` mask).
pub const MAX_QUBITS: usize = 12;

/// Basis blade stored as a bitmask over generators `e1..e2n` (bit `i-1` is `e_i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Blade(pub u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    /// Single generator `e_i`, 1-based.
    pub fn generator(i: usize) -> Blade {
        debug_assert!((1..=2 * MAX_QUBITS).contains(&i));
        Blade(1 << (i - 1))
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    /// Generator indices in ascending order.
    pub fn generators(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    pub fn fits(self, n: usize) -> bool {
        (self.0 >> (2 * n)) == 0
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        for g in self.generators() {
            write!(f, "e{g}")?;
        }
        Ok(())
    }
}

/// Product of two basis blades: `(sign, x XOR y)`.
///
/// The sign counts the transpositions needed to sort the concatenated
/// generator list; repeated generators contract to `+1`.
pub fn blade_product(x: Blade, y: Blade) -> (i8, Blade) {
    let mut a = x.0 >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & y.0).count_ones();
        a >>= 1;
    }
    let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
    (sign, Blade(x.0 ^ y.0))
}

/// Reversion sign `(-1)^(k(k-1)/2)` for a grade-k blade.
fn reversion_sign(b: Blade) -> bool {
    let k = b.grade();
    (k * k.saturating_sub(1) / 2) % 2 == 1
}

/// Coefficient `re + im*iota` with `iota^2 = -1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoComplex<S> {
    pub re: S,
    pub im: S,
}

impl<S: Scalar> PseudoComplex<S> {
    pub fn new(re: S, im: S) -> Self {
        PseudoComplex { re, im }
    }

    pub fn real(re: S) -> Self {
        PseudoComplex { re, im: S::zero() }
    }

    pub fn iota(im: S) -> Self {
        PseudoComplex { re: S::zero(), im }
    }

    pub fn zero() -> Self {
        Self::real(S::zero())
    }

    pub fn one() -> Self {
        Self::real(S::one())
    }

    pub fn i() -> Self {
        Self::iota(S::one())
    }

    pub fn from_i64(v: i64) -> Self {
        Self::real(S::from_i64(v))
    }

    pub fn conj(&self) -> Self {
        PseudoComplex::new(self.re.clone(), -self.im.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn is_prunable(&self) -> bool {
        self.re.is_prunable() && self.im.is_prunable()
    }

    pub fn scale(&self, k: &S) -> Self {
        PseudoComplex::new(self.re.clone() * k.clone(), self.im.clone() * k.clone())
    }

    pub fn norm_sqr(&self) -> S {
        crate::scalar::norm_sqr(&self.re, &self.im)
    }

    pub fn to_complex(&self) -> Option<Complex64> {
        Some(Complex64::new(self.re.to_f64()?, self.im.to_f64()?))
    }
}

impl<S: Scalar> Add for PseudoComplex<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        PseudoComplex::new(self.re + o.re, self.im + o.im)
    }
}

impl<S: Scalar> Sub for PseudoComplex<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        PseudoComplex::new(self.re - o.re, self.im - o.im)
    }
}

impl<S: Scalar> Neg for PseudoComplex<S> {
    type Output = Self;
    fn neg(self) -> Self {
        PseudoComplex::new(-self.re, -self.im)
    }
}

impl<S: Scalar> Mul for PseudoComplex<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let re = self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone();
        let im = self.re * o.im + self.im * o.re;
        PseudoComplex::new(re, im)
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for PseudoComplex<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "i*({})", self.im),
            (false, false) => write!(f, "({}) + i*({})", self.re, self.im),
        }
    }
}

/// Element of QRA(n): a sparse map from blades of G(2n) to coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Multivector<S> {
    dim: usize,
    terms: BTreeMap<Blade, PseudoComplex<S>>,
}

impl<S: Scalar> Multivector<S> {
    pub fn zero(dim: usize) -> Self {
        Multivector {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, c: PseudoComplex<S>) -> Self {
        let mut m = Self::zero(dim);
        m.accumulate(Blade::SCALAR, c);
        m
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, PseudoComplex::one())
    }

    /// Generator `e_i` (1-based, `i <= 2n`).
    pub fn generator(dim: usize, i: usize) -> Result<Self> {
        if i == 0 || i > 2 * dim {
            return Err(QraError::QubitOutOfRange {
                index: i,
                width: 2 * dim,
            });
        }
        let mut m = Self::zero(dim);
        m.accumulate(Blade::generator(i), PseudoComplex::one());
        Ok(m)
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Blade, PseudoComplex<S>)>,
    {
        let mut m = Self::zero(dim);
        for (b, c) in terms {
            if !b.fits(dim) {
                return Err(QraError::NotLocal {
                    qubits: (1..=dim).collect(),
                    blade: b.to_string(),
                });
            }
            m.accumulate(b, c);
        }
        Ok(m)
    }

    /// Register width n (the algebra is G(2n)).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &PseudoComplex<S>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, b: Blade) -> PseudoComplex<S> {
        self.terms.get(&b).cloned().unwrap_or_else(PseudoComplex::zero)
    }

    pub fn scalar_part(&self) -> PseudoComplex<S> {
        self.coefficient(Blade::SCALAR)
    }

    /// True iff every coefficient is zero in the ring's canonical sense.
    pub fn is_zero(&self) -> bool {
        self.terms.values().all(PseudoComplex::is_zero)
    }

    fn accumulate(&mut self, b: Blade, c: PseudoComplex<S>) {
        if c.is_prunable() {
            return;
        }
        match self.terms.entry(b) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_prunable() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(QraError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    /// Geometric product.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim);
        for (ba, ca) in &self.terms {
            for (bb, cb) in &other.terms {
                let (sign, b) = blade_product(*ba, *bb);
                let c = ca.clone() * cb.clone();
                out.accumulate(b, if sign < 0 { -c } else { c });
            }
        }
        Ok(out)
    }

    /// Scalar coefficient of `self * other`, without forming the full product.
    pub fn scalar_of_product(&self, other: &Self) -> Result<PseudoComplex<S>> {
        self.check_dim(other)?;
        let mut acc = PseudoComplex::zero();
        for (b, ca) in &self.terms {
            if let Some(cb) = other.terms.get(b) {
                let (sign, _) = blade_product(*b, *b);
                let c = ca.clone() * cb.clone();
                acc = if sign < 0 { acc - c } else { acc + c };
            }
        }
        Ok(acc)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.accumulate(*b, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.accumulate(*b, -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &PseudoComplex<S>) -> Self {
        let mut out = Self::zero(self.dim);
        for (b, c) in &self.terms {
            out.accumulate(*b, c.clone() * k.clone());
        }
        out
    }

    pub fn scale_real(&self, k: &S) -> Self {
        self.scale(&PseudoComplex::real(k.clone()))
    }

    /// QRA conjugation: reverses every blade and conjugates every coefficient.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (b, c) in &self.terms {
            let c = c.conj();
            out.accumulate(*b, if reversion_sign(*b) { -c } else { c });
        }
        out
    }

    /// Maps every coefficient through `f` into another ring.
    pub fn map_coefficients<T: Scalar, F>(&self, mut f: F) -> Option<Multivector<T>>
    where
        F: FnMut(&S) -> Option<T>,
    {
        let mut out = Multivector::zero(self.dim);
        for (b, c) in &self.terms {
            out.accumulate(*b, PseudoComplex::new(f(&c.re)?, f(&c.im)?));
        }
        Some(out)
    }

    /// Numeric copy of this element, if every coefficient is a constant.
    pub fn to_float(&self) -> Option<Multivector<f64>> {
        self.map_coefficients(Scalar::to_f64)
    }

    /// Largest coefficient modulus; `None` for non-constant coefficients.
    pub fn max_abs(&self) -> Option<f64> {
        let mut m: f64 = 0.0;
        for c in self.terms.values() {
            m = m.max(c.to_complex()?.norm());
        }
        Some(m)
    }

    /// Re-embeds into a wider register; generator `e_{i+n}` moves to `e_{i+m}`.
    pub fn widen(&self, new_dim: usize) -> Result<Self> {
        if new_dim < self.dim {
            return Err(QraError::DimensionMismatch {
                left: self.dim,
                right: new_dim,
            });
        }
        let n = self.dim as u32;
        let low_mask = (1u32 << n) - 1;
        let mut out = Self::zero(new_dim);
        for (b, c) in &self.terms {
            let low = b.0 & low_mask;
            let high = (b.0 >> n) & low_mask;
            out.accumulate(Blade(low | (high << new_dim as u32)), c.clone());
        }
        Ok(out)
    }
}

/// Coefficient-wise sum of scaled multivectors.
pub fn linear_combine<S: Scalar>(
    dim: usize,
    terms: &[(PseudoComplex<S>, Multivector<S>)],
) -> Result<Multivector<S>> {
    let mut out = Multivector::zero(dim);
    for (k, m) in terms {
        out = out.try_add(&m.scale(k))?;
    }
    Ok(out)
}

impl<S: Scalar> Mul for &Multivector<S> {
    type Output = Multivector<S>;
    fn mul(self, rhs: &Multivector<S>) -> Multivector<S> {
        self.product(rhs).expect("multivector dimension mismatch")
    }
}

impl<S: Scalar> Add for &Multivector<S> {
    type Output = Multivector<S>;
    fn add(self, rhs: &Multivector<S>) -> Multivector<S> {
        self.try_add(rhs).expect("multivector dimension mismatch")
    }
}

impl<S: Scalar> Sub for &Multivector<S> {
    type Output = Multivector<S>;
    fn sub(self, rhs: &Multivector<S>) -> Multivector<S> {
        self.try_sub(rhs).expect("multivector dimension mismatch")
    }
}

impl<S: Scalar> Neg for &Multivector<S> {
    type Output = Multivector<S>;
    fn neg(self) -> Multivector<S> {
        self.scale(&-PseudoComplex::one())
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]{b}")?;
        }
        Ok(())
    }
}
