//! Witt-monomial normal form.
//!
//! Over a fixed list of qubits, every element of QRA(n) that only touches
//! those qubits' generators is a unique combination of products
//! `x_{q1} x_{q2} ...` (ascending qubits) where each `x_q` is one of
//! `f f^dagger`, `f^dagger f`, `f` or `f^dagger`. Gate formulas are written in
//! this form, and the tensor sign rules operate on it.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{QraError, Result};
use crate::multivector::{blade_product, Blade, Multivector, PseudoComplex};
use crate::register::{witt_f, witt_fd};
use crate::scalar::Scalar;

/// Single-qubit Witt factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WittFactor {
    /// `f f^dagger`, projector onto `|0>`.
    Vac,
    /// `f^dagger f`, projector onto `|1>`.
    Occ,
    /// `f`, maps `|1>` to `|0>`.
    Lower,
    /// `f^dagger`, maps `|0>` to `|1>`.
    Raise,
}

impl WittFactor {
    pub const ALL: [WittFactor; 4] = [
        WittFactor::Vac,
        WittFactor::Occ,
        WittFactor::Lower,
        WittFactor::Raise,
    ];

    /// Odd number of Witt letters (`f` or `f^dagger`).
    pub fn is_odd(self) -> bool {
        matches!(self, WittFactor::Lower | WittFactor::Raise)
    }

    /// Of type `f` or `f^dagger f`: the factors that pick up a sign when a
    /// parity string passes them.
    pub fn is_lower_or_occ(self) -> bool {
        matches!(self, WittFactor::Lower | WittFactor::Occ)
    }

    /// The local `(row, column)` bit of the dyad `|row><column|` this factor
    /// represents.
    pub fn dyad(self) -> (bool, bool) {
        match self {
            WittFactor::Vac => (false, false),
            WittFactor::Occ => (true, true),
            WittFactor::Lower => (false, true),
            WittFactor::Raise => (true, false),
        }
    }

    pub fn from_dyad(row: bool, col: bool) -> Self {
        match (row, col) {
            (false, false) => WittFactor::Vac,
            (true, true) => WittFactor::Occ,
            (false, true) => WittFactor::Lower,
            (true, false) => WittFactor::Raise,
        }
    }

    pub fn to_multivector<S: Scalar>(self, n: usize, qubit: usize) -> Result<Multivector<S>> {
        let f = witt_f(n, qubit)?;
        let fd = witt_fd(n, qubit)?;
        Ok(match self {
            WittFactor::Vac => &f * &fd,
            WittFactor::Occ => &fd * &f,
            WittFactor::Lower => f,
            WittFactor::Raise => fd,
        })
    }

    fn symbol(self, q: usize) -> String {
        match self {
            WittFactor::Vac => format!("f{q}f{q}T"),
            WittFactor::Occ => format!("f{q}Tf{q}"),
            WittFactor::Lower => format!("f{q}"),
            WittFactor::Raise => format!("f{q}T"),
        }
    }
}

/// Sum of Witt monomials over an ascending list of qubits. Each monomial holds
/// exactly one factor per listed qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct WittPoly<S> {
    qubits: Vec<usize>,
    terms: BTreeMap<Vec<WittFactor>, PseudoComplex<S>>,
}

impl<S: Scalar> WittPoly<S> {
    pub fn new(qubits: Vec<usize>) -> Self {
        debug_assert!(qubits.windows(2).all(|w| w[0] < w[1]));
        WittPoly {
            qubits,
            terms: BTreeMap::new(),
        }
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<WittFactor>, &PseudoComplex<S>)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, factors: Vec<WittFactor>, c: PseudoComplex<S>) {
        debug_assert_eq!(factors.len(), self.qubits.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(factors) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Evaluates the polynomial as an element of QRA(n).
    pub fn to_multivector(&self, n: usize) -> Result<Multivector<S>> {
        let mut out = Multivector::zero(n);
        let mut cache: BTreeMap<(usize, WittFactor), Multivector<S>> = BTreeMap::new();
        for (factors, c) in &self.terms {
            let mut m = Multivector::scalar(n, c.clone());
            for (&q, &x) in self.qubits.iter().zip(factors) {
                let fm = match cache.entry((q, x)) {
                    Entry::Occupied(e) => e.into_mut(),
                    Entry::Vacant(e) => e.insert(x.to_multivector(n, q)?),
                };
                m = m.product(fm)?;
            }
            out = out.try_add(&m)?;
        }
        Ok(out)
    }

    /// Decomposes `m` over `qubits`. Fails if a blade touches a generator
    /// of any other qubit.
    pub fn from_multivector(m: &Multivector<S>, qubits: &[usize]) -> Result<Self> {
        let n = m.dim();
        let mut allowed = 0u32;
        for &q in qubits {
            if q == 0 || q > n {
                return Err(QraError::QubitOutOfRange { index: q, width: n });
            }
            allowed |= 1 << (q - 1) | 1 << (q + n - 1);
        }
        let mut out = WittPoly::new(qubits.to_vec());
        let i = PseudoComplex::<S>::i();
        let one = PseudoComplex::<S>::one();
        for (blade, coef) in m.terms() {
            if blade.0 & !allowed != 0 {
                return Err(QraError::NotLocal {
                    qubits: qubits.to_vec(),
                    blade: blade.to_string(),
                });
            }
            // blade = sign * prod_q g_q with g_q in {1, e_q, e_{q+n}, e_q e_{q+n}}
            let mut sign = 1i8;
            let mut acc = Blade::SCALAR;
            let mut local: Vec<Vec<(WittFactor, PseudoComplex<S>)>> = Vec::with_capacity(qubits.len());
            for &q in qubits {
                let lo = blade.0 & (1 << (q - 1)) != 0;
                let hi = blade.0 & (1 << (q + n - 1)) != 0;
                let g = Blade(
                    if lo { 1 << (q - 1) } else { 0 } | if hi { 1 << (q + n - 1) } else { 0 },
                );
                let (s, b) = blade_product(acc, g);
                sign *= s;
                acc = b;
                local.push(match (lo, hi) {
                    (false, false) => vec![(WittFactor::Vac, one.clone()), (WittFactor::Occ, one.clone())],
                    (true, false) => vec![(WittFactor::Lower, one.clone()), (WittFactor::Raise, one.clone())],
                    // e_{q+n} = -iota (f - f^dagger)
                    (false, true) => vec![(WittFactor::Lower, -i.clone()), (WittFactor::Raise, i.clone())],
                    // e_q e_{q+n} = iota (f f^dagger - f^dagger f)
                    (true, true) => vec![(WittFactor::Vac, i.clone()), (WittFactor::Occ, -i.clone())],
                });
            }
            debug_assert_eq!(acc, *blade);
            let base = if sign < 0 { -coef.clone() } else { coef.clone() };
            let mut partial: Vec<(Vec<WittFactor>, PseudoComplex<S>)> = vec![(Vec::new(), base)];
            for options in &local {
                let mut next = Vec::with_capacity(partial.len() * 2);
                for (fs, c) in &partial {
                    for (x, k) in options {
                        let mut fs2 = fs.clone();
                        fs2.push(*x);
                        next.push((fs2, c.clone() * k.clone()));
                    }
                }
                partial = next;
            }
            for (fs, c) in partial {
                out.add_term(fs, c);
            }
        }
        Ok(out)
    }

    /// Re-labels the qubits (same length, ascending).
    pub fn relabel(&self, qubits: Vec<usize>) -> Self {
        assert_eq!(qubits.len(), self.qubits.len());
        WittPoly {
            qubits,
            terms: self.terms.clone(),
        }
    }

    /// Places a bare local polynomial into an n-qubit register. Odd monomials
    /// receive the parity string `prod_{j < first} (f_j f_j^dagger - f_j^dagger f_j)`
    /// so that the result acts as `Id (x) local (x) Id` on basis kets.
    pub fn embed(&self, n: usize) -> Result<Multivector<S>> {
        let first = match self.qubits.first() {
            Some(&q) => q,
            None => return Ok(Multivector::zero(n)),
        };
        let mut even = WittPoly::new(self.qubits.clone());
        let mut odd = WittPoly::new(self.qubits.clone());
        for (fs, c) in &self.terms {
            let parity = fs.iter().filter(|x| x.is_odd()).count() % 2;
            if parity == 0 {
                even.add_term(fs.clone(), c.clone());
            } else {
                odd.add_term(fs.clone(), c.clone());
            }
        }
        let mut out = even.to_multivector(n)?;
        if !odd.is_empty() {
            let mut string = Multivector::one(n);
            for j in 1..first {
                let p = WittFactor::Vac
                    .to_multivector::<S>(n, j)?
                    .try_sub(&WittFactor::Occ.to_multivector(n, j)?)?;
                string = string.product(&p)?;
            }
            out = out.try_add(&string.product(&odd.to_multivector(n)?)?)?;
        }
        Ok(out)
    }

    /// Numeric copy, if all coefficients are constants.
    pub fn to_float(&self) -> Option<WittPoly<f64>> {
        let mut out = WittPoly::new(self.qubits.clone());
        for (fs, c) in &self.terms {
            let z = c.to_complex()?;
            out.add_term(fs.clone(), PseudoComplex::new(z.re, z.im));
        }
        Some(out)
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for WittPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (fs, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = self.qubits.iter().zip(fs).map(|(&q, x)| x.symbol(q)).collect();
            write!(f, "[{c}]{}", mono.join("*"))?;
        }
        Ok(())
    }
}
