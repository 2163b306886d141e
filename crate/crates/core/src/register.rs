//! Qubit registers on top of QRA(n): Witt generators, the base idempotent,
//! bra/ket identification and measurement.
//!
//! Indexing convention (used everywhere in the crate): qubit 1 is the leftmost
//! character of a bit string and the most significant bit of its integer index.

use std::fmt;
use std::str::FromStr;

use crate::error::{QraError, Result};
use crate::multivector::{Multivector, PseudoComplex, MAX_QUBITS};
use crate::scalar::Scalar;

fn check_width(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(QraError::WidthOutOfRange(n));
    }
    Ok(())
}

fn check_qubit(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(QraError::QubitOutOfRange { index: i, width: n });
    }
    Ok(())
}

fn half_pair<S: Scalar>(n: usize, i: usize, iota_sign: i64) -> Result<Multivector<S>> {
    check_width(n)?;
    check_qubit(i, n)?;
    let half = S::from_ratio(1, 2);
    let ei = Multivector::generator(n, i)?;
    let ein = Multivector::generator(n, i + n)?;
    let m = ei.try_add(&ein.scale(&PseudoComplex::iota(S::from_i64(iota_sign))))?;
    Ok(m.scale_real(&half))
}

/// Witt element `f_i = (e_i + iota e_{i+n}) / 2`.
pub fn witt_f<S: Scalar>(n: usize, i: usize) -> Result<Multivector<S>> {
    half_pair(n, i, 1)
}

/// Witt element `f_i^dagger = (e_i - iota e_{i+n}) / 2`.
pub fn witt_fd<S: Scalar>(n: usize, i: usize) -> Result<Multivector<S>> {
    half_pair(n, i, -1)
}

/// `(f_1..f_n, f_1^dagger..f_n^dagger)`.
pub type WittGenerators<S> = (Vec<Multivector<S>>, Vec<Multivector<S>>);

/// All Witt generators.
pub fn witt_generators<S: Scalar>(n: usize) -> Result<WittGenerators<S>> {
    let f = (1..=n).map(|i| witt_f(n, i)).collect::<Result<Vec<_>>>()?;
    let fd = (1..=n).map(|i| witt_fd(n, i)).collect::<Result<Vec<_>>>()?;
    Ok((f, fd))
}

/// Checks the relations the register model relies on under the `+1`
/// signature: `f_i^2 = 0`, `f_i f_j^dagger + f_j^dagger f_i = delta_ij`, and
/// distinct Witt elements anticommute.
pub fn signature_self_test(n: usize) -> Result<()> {
    let (f, fd) = witt_generators::<f64>(n)?;
    let fail = |what: String| Err(QraError::SelfTest(what));
    for i in 0..n {
        for j in 0..n {
            let anti = |a: &Multivector<f64>, b: &Multivector<f64>| -> Result<Multivector<f64>> {
                a.product(b)?.try_add(&b.product(a)?)
            };
            let expected = if i == j { Multivector::one(n) } else { Multivector::zero(n) };
            if !anti(&f[i], &fd[j])?.try_sub(&expected)?.is_zero() {
                return fail(format!("{{f{}, f{}^dagger}} != {}", i + 1, j + 1, u8::from(i == j)));
            }
            if !anti(&f[i], &f[j])?.is_zero() || !anti(&fd[i], &fd[j])?.is_zero() {
                return fail(format!("f{} and f{} do not anticommute", i + 1, j + 1));
            }
        }
    }
    Ok(())
}

/// `I = f_1 f_1^dagger ... f_n f_n^dagger`, the image of `|0...0>`.
pub fn base_idempotent<S: Scalar>(n: usize) -> Result<Multivector<S>> {
    let mut acc = Multivector::one(n);
    for i in 1..=n {
        acc = acc.product(&witt_f(n, i)?)?.product(&witt_fd(n, i)?)?;
    }
    Ok(acc)
}

/// Computational basis label `a_1 ... a_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    index: u32,
    width: usize,
}

impl BitString {
    pub fn from_index(index: usize, width: usize) -> Result<Self> {
        check_width(width)?;
        if index >= 1 << width {
            return Err(QraError::QubitOutOfRange { index, width });
        }
        Ok(BitString {
            index: index as u32,
            width,
        })
    }

    pub fn zeros(width: usize) -> Result<Self> {
        Self::from_index(0, width)
    }

    /// Every bit string of the given width, in index order.
    pub fn all(width: usize) -> impl Iterator<Item = BitString> {
        (0..1u32 << width).map(move |index| BitString { index, width })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Integer index with qubit 1 as the most significant bit.
    pub fn index(&self) -> usize {
        self.index as usize
    }

    /// Bit of qubit `i` (1-based).
    pub fn bit(&self, i: usize) -> bool {
        debug_assert!(i >= 1 && i <= self.width);
        self.index >> (self.width - i) & 1 == 1
    }

    pub fn ones(&self) -> u32 {
        self.index.count_ones()
    }

    /// Players present in the coalition encoded by this string, as a mask
    /// with bit `i-1` for player `i`.
    pub fn to_player_mask(&self) -> u32 {
        (1..=self.width)
            .filter(|&i| self.bit(i))
            .fold(0, |m, i| m | 1 << (i - 1))
    }

    pub fn from_player_mask(mask: u32, width: usize) -> Result<Self> {
        let index = (1..=width)
            .filter(|&i| mask & (1 << (i - 1)) != 0)
            .fold(0usize, |acc, i| acc | 1 << (width - i));
        Self::from_index(index, width)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.width {
            write!(f, "{}", if self.bit(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = QraError;

    fn from_str(s: &str) -> Result<Self> {
        let width = s.len();
        check_width(width)?;
        let mut index = 0usize;
        for (pos, ch) in s.chars().enumerate() {
            index <<= 1;
            match ch {
                '0' => {}
                '1' => index |= 1,
                _ => {
                    return Err(QraError::QubitOutOfRange {
                        index: pos + 1,
                        width,
                    })
                }
            }
        }
        Self::from_index(index, width)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    Ket,
    Bra,
}

/// `|a> = (f_1^dagger)^a_1 ... (f_n^dagger)^a_n I`, and `<a| = I f_n^a_n ... f_1^a_1`.
pub fn basis_element<S: Scalar>(bits: BitString, kind: BasisKind) -> Result<Multivector<S>> {
    let n = bits.width();
    let idem = base_idempotent(n)?;
    match kind {
        BasisKind::Ket => {
            let mut acc = Multivector::one(n);
            for i in (1..=n).filter(|&i| bits.bit(i)) {
                acc = acc.product(&witt_fd(n, i)?)?;
            }
            acc.product(&idem)
        }
        BasisKind::Bra => {
            let mut acc = idem;
            for i in (1..=n).rev().filter(|&i| bits.bit(i)) {
                acc = acc.product(&witt_f(n, i)?)?;
            }
            Ok(acc)
        }
    }
}

pub fn ket<S: Scalar>(bits: BitString) -> Result<Multivector<S>> {
    basis_element(bits, BasisKind::Ket)
}

pub fn bra<S: Scalar>(bits: BitString) -> Result<Multivector<S>> {
    basis_element(bits, BasisKind::Bra)
}

/// A state living in the left ideal generated by `I`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegisterState<S> {
    pub psi: Multivector<S>,
}

impl<S: Scalar> RegisterState<S> {
    pub fn new(psi: Multivector<S>) -> Self {
        RegisterState { psi }
    }

    /// `|0...0>`.
    pub fn ground(n: usize) -> Result<Self> {
        Ok(RegisterState::new(base_idempotent(n)?))
    }

    pub fn basis(bits: BitString) -> Result<Self> {
        Ok(RegisterState::new(ket(bits)?))
    }

    pub fn width(&self) -> usize {
        self.psi.dim()
    }
}

/// Precomputed bras for repeated measurement of one register width.
#[derive(Debug, Clone)]
pub struct Measurement<S> {
    width: usize,
    bras: Vec<Multivector<S>>,
    scale: S,
}

impl<S: Scalar> Measurement<S> {
    pub fn new(width: usize) -> Result<Self> {
        let bras = BitString::all(width)
            .map(bra::<S>)
            .collect::<Result<Vec<_>>>()?;
        Ok(Measurement {
            width,
            bras,
            scale: S::from_i64(1 << width),
        })
    }

    /// `<bits|psi> = 2^n * scalar part of (bra(bits) psi)`.
    pub fn amplitude(&self, bits: BitString, state: &RegisterState<S>) -> Result<PseudoComplex<S>> {
        if bits.width() != self.width || state.width() != self.width {
            return Err(QraError::DimensionMismatch {
                left: bits.width(),
                right: state.width(),
            });
        }
        let s = self.bras[bits.index()].scalar_of_product(&state.psi)?;
        Ok(s.scale(&self.scale))
    }

    pub fn amplitudes(&self, state: &RegisterState<S>) -> Result<Vec<PseudoComplex<S>>> {
        BitString::all(self.width)
            .map(|b| self.amplitude(b, state))
            .collect()
    }

    pub fn probabilities(&self, state: &RegisterState<S>) -> Result<ProbabilityTable<S>> {
        let entries = self
            .amplitudes(state)?
            .iter()
            .map(PseudoComplex::norm_sqr)
            .collect();
        let table = ProbabilityTable {
            width: self.width,
            entries,
        };
        table.check_normalized()?;
        Ok(table)
    }
}

pub fn amplitude<S: Scalar>(bits: BitString, state: &RegisterState<S>) -> Result<PseudoComplex<S>> {
    if bits.width() != state.width() {
        return Err(QraError::DimensionMismatch {
            left: bits.width(),
            right: state.width(),
        });
    }
    let s = bra::<S>(bits)?.scalar_of_product(&state.psi)?;
    Ok(s.scale(&S::from_i64(1 << bits.width())))
}

pub fn probabilities<S: Scalar>(state: &RegisterState<S>) -> Result<ProbabilityTable<S>> {
    Measurement::new(state.width())?.probabilities(state)
}

/// Outcome probabilities, one entry per bit string in index order.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityTable<S> {
    width: usize,
    entries: Vec<S>,
}

impl<S: Scalar> ProbabilityTable<S> {
    pub fn from_entries(width: usize, entries: Vec<S>) -> Result<Self> {
        if entries.len() != 1 << width {
            return Err(QraError::DimensionMismatch {
                left: width,
                right: entries.len(),
            });
        }
        Ok(ProbabilityTable { width, entries })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, bits: BitString) -> &S {
        &self.entries[bits.index()]
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (BitString, &S)> {
        BitString::all(self.width).zip(self.entries.iter())
    }

    pub fn total(&self) -> S {
        self.entries.iter().cloned().fold(S::zero(), |a, b| a + b)
    }

    /// Rejects tables whose total deviates from one by more than `1e-6`
    /// (exactly, for exact rings).
    pub fn check_normalized(&self) -> Result<()> {
        let total = self.total();
        let ok = match (total.clone() - S::one()).to_f64() {
            Some(d) => d.abs() <= 1e-6,
            None => false,
        };
        if ok {
            Ok(())
        } else {
            Err(QraError::NotNormalized(format!("{total:?}")))
        }
    }

    pub fn to_float(&self) -> Option<ProbabilityTable<f64>> {
        Some(ProbabilityTable {
            width: self.width,
            entries: self
                .entries
                .iter()
                .map(Scalar::to_f64)
                .collect::<Option<Vec<_>>>()?,
        })
    }
}
