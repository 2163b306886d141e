//! Small dense matrices over a pseudo-complex scalar ring.
//!
//! Used to state gates as explicit matrices in any ring (exact included) and
//! to define the tensor semantics that the QRA sign rules are checked against.

use crate::error::{QraError, Result};
use crate::multivector::PseudoComplex;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<S> {
    dim: usize,
    entries: Vec<PseudoComplex<S>>,
}

impl<S: Scalar> CMatrix<S> {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            entries: vec![PseudoComplex::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, PseudoComplex::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<PseudoComplex<S>>>) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(QraError::BadMatrixShape {
                rows: dim,
                cols: bad.len(),
            });
        }
        Ok(CMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Real-valued matrix from integer ratios `(num, den)`.
    pub fn from_real_ratios(rows: &[&[(i64, i64)]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&(n, d)| PseudoComplex::real(S::from_ratio(n, d)))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of qubits, if the dimension is a power of two.
    pub fn qubits(&self) -> Option<usize> {
        (self.dim.is_power_of_two() && self.dim > 0).then(|| self.dim.trailing_zeros() as usize)
    }

    pub fn get(&self, r: usize, c: usize) -> &PseudoComplex<S> {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: PseudoComplex<S>) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.dim != o.dim {
            return Err(QraError::DimensionMismatch {
                left: self.dim,
                right: o.dim,
            });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = out.get(r, c).clone() + a.clone() * o.get(k, c).clone();
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn kron(&self, o: &Self) -> Self {
        let n = self.dim * o.dim;
        let mut out = Self::zeros(n);
        for r1 in 0..self.dim {
            for c1 in 0..self.dim {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..o.dim {
                    for c2 in 0..o.dim {
                        out.set(r1 * o.dim + r2, c1 * o.dim + c2, a.clone() * o.get(r2, c2).clone());
                    }
                }
            }
        }
        out
    }

    /// Kronecker product of a sequence, leftmost factor on the most significant qubits.
    pub fn kron_all(ops: &[Self]) -> Self {
        ops.iter()
            .fold(Self::identity(1), |acc, m| acc.kron(m))
    }

    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    /// Whether `U^dagger U = 1` in the ring's zero test. On failure reports
    /// the numeric deviation when it is computable.
    pub fn check_unitary(&self) -> Result<()> {
        let prod = self.dagger().mul(self)?;
        let id = Self::identity(self.dim);
        let mut worst = 0.0f64;
        let mut ok = true;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let d = prod.get(r, c).clone() - id.get(r, c).clone();
                if !d.is_zero() {
                    ok = false;
                    worst = worst.max(d.to_complex().map_or(f64::NAN, |z| z.norm()));
                }
            }
        }
        if ok {
            Ok(())
        } else {
            Err(QraError::NotUnitary(worst))
        }
    }

    pub fn to_float(&self) -> Option<CMatrix<f64>> {
        Some(CMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|z| z.to_complex().map(|c| PseudoComplex::new(c.re, c.im)))
                .collect::<Option<Vec<_>>>()?,
        })
    }

    /// Maximum entrywise modulus of `self - o`, numerically.
    pub fn max_abs_diff(&self, o: &Self) -> Option<f64> {
        if self.dim != o.dim {
            return None;
        }
        let mut m: f64 = 0.0;
        for (a, b) in self.entries.iter().zip(&o.entries) {
            m = m.max((a.clone() - b.clone()).to_complex()?.norm());
        }
        Some(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QSqrt2;

    #[test]
    fn kron_of_identities() {
        let i2 = CMatrix::<QSqrt2>::identity(2);
        assert_eq!(i2.kron(&i2), CMatrix::identity(4));
    }

    #[test]
    fn non_unitary_detected() {
        let m = CMatrix::<QSqrt2>::from_real_ratios(&[&[(1, 1), (1, 1)], &[(0, 1), (1, 1)]]).unwrap();
        assert!(matches!(m.check_unitary(), Err(QraError::NotUnitary(_))));
        assert!(CMatrix::<QSqrt2>::identity(4).check_unitary().is_ok());
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows = vec![vec![PseudoComplex::<f64>::one()], vec![]];
        assert!(CMatrix::from_rows(rows).is_err());
    }
}
