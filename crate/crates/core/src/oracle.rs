//! Dense complex matrix / state-vector simulator.
//!
//! Nothing here touches the Clifford engine except [`qra_to_matrix`], which
//! reads a gate element back as a matrix. Indices follow the repo-wide
//! convention: qubit 1 is the most significant bit.

use num_complex::Complex64;

use crate::error::{QraError, Result};
use crate::gates::GateElement;
use crate::register::{BitString, Measurement, RegisterState};
use crate::scalar::Scalar;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DenseOperator {
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        if !dim.is_power_of_two() {
            return Err(QraError::BadMatrixShape { rows: dim, cols: dim });
        }
        if let Some(r) = rows.iter().find(|r| r.len() != dim) {
            return Err(QraError::BadMatrixShape {
                rows: dim,
                cols: r.len(),
            });
        }
        Ok(DenseOperator {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    fn from_real(rows: &[&[f64]]) -> Self {
        DenseOperator {
            dim: rows.len(),
            entries: rows.iter().flat_map(|r| r.iter().map(|&x| c(x))).collect(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Complex64::default(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = c(1.0);
        }
        DenseOperator { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    pub fn get(&self, r: usize, col: usize) -> Complex64 {
        self.entries[r * self.dim + col]
    }

    /// `self * o`: apply `o` first.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.dim != o.dim {
            return Err(QraError::DimensionMismatch {
                left: self.qubits(),
                right: o.qubits(),
            });
        }
        let n = self.dim;
        let mut entries = vec![Complex64::default(); n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                for col in 0..n {
                    entries[r * n + col] += a * o.get(k, col);
                }
            }
        }
        Ok(DenseOperator { dim: n, entries })
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        if self.dim != v.amps.len() {
            return Err(QraError::DimensionMismatch {
                left: self.qubits(),
                right: v.width(),
            });
        }
        let amps = (0..self.dim)
            .map(|r| (0..self.dim).map(|k| self.get(r, k) * v.amps[k]).sum())
            .collect();
        Ok(StateVector { amps })
    }

    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let mut entries = vec![Complex64::default(); n * n];
        for r in 0..n {
            for col in 0..n {
                entries[col * n + r] = self.get(r, col).conj();
            }
        }
        DenseOperator { dim: n, entries }
    }

    /// Largest entry of `|U^dagger U - 1|`.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.dagger().mul(self).expect("same dimension");
        let id = Self::identity(self.dim);
        p.max_abs_diff(&id).expect("same dimension")
    }

    pub fn max_abs_diff(&self, o: &Self) -> Option<f64> {
        (self.dim == o.dim).then(|| {
            self.entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max)
        })
    }
}

/// Kronecker product; the leftmost factor acts on qubit 1.
pub fn tensor(ops: &[DenseOperator]) -> DenseOperator {
    ops.iter().fold(DenseOperator::identity(1), |acc, b| {
        let n = acc.dim * b.dim;
        let mut entries = vec![Complex64::default(); n * n];
        for r1 in 0..acc.dim {
            for c1 in 0..acc.dim {
                let a = acc.get(r1, c1);
                for r2 in 0..b.dim {
                    for c2 in 0..b.dim {
                        entries[(r1 * b.dim + r2) * n + c1 * b.dim + c2] = a * b.get(r2, c2);
                    }
                }
            }
        }
        DenseOperator { dim: n, entries }
    })
}

/// `Id (x) op (x) Id` with `op` starting at qubit `first`.
pub fn embed(op: &DenseOperator, first: usize, n: usize) -> Result<DenseOperator> {
    let k = op.qubits();
    if first == 0 || first + k - 1 > n {
        return Err(QraError::QubitOutOfRange { index: first, width: n });
    }
    Ok(tensor(&[
        DenseOperator::identity(1 << (first - 1)),
        op.clone(),
        DenseOperator::identity(1 << (n + 1 - first - k)),
    ]))
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn ground(n: usize) -> Self {
        Self::basis(0, n)
    }

    pub fn basis(index: usize, n: usize) -> Self {
        let mut amps = vec![Complex64::default(); 1 << n];
        amps[index] = c(1.0);
        StateVector { amps }
    }

    pub fn width(&self) -> usize {
        self.amps.len().trailing_zeros() as usize
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Applies `circuit[0]`, then `circuit[1]`, ... to `|0...0>`.
pub fn simulate_reference(circuit: &[DenseOperator], n: usize) -> Result<StateVector> {
    circuit
        .iter()
        .try_fold(StateVector::ground(n), |v, op| op.apply(&v))
}

/// Matrix of a QRA gate: column `y` holds the amplitudes of `g * ket(y)`.
pub fn qra_to_matrix<S: Scalar>(g: &GateElement<S>) -> Result<DenseOperator> {
    let n = g.width();
    let dim = 1usize << n;
    let meas = Measurement::<S>::new(n)?;
    let mut entries = vec![Complex64::default(); dim * dim];
    for y in BitString::all(n) {
        let out = g.apply(&RegisterState::basis(y)?)?;
        for (x, a) in meas.amplitudes(&out)?.into_iter().enumerate() {
            entries[x * dim + y.index()] = a
                .to_complex()
                .ok_or(QraError::UnrepresentableConstant("symbolic amplitude", "float"))?;
        }
    }
    Ok(DenseOperator { dim, entries })
}

/// Amplitude vector of a QRA state, numerically.
pub fn qra_state_vector<S: Scalar>(state: &RegisterState<S>) -> Result<StateVector> {
    let meas = Measurement::<S>::new(state.width())?;
    let amps = meas
        .amplitudes(state)?
        .into_iter()
        .map(|a| {
            a.to_complex()
                .ok_or(QraError::UnrepresentableConstant("symbolic amplitude", "float"))
        })
        .collect::<Result<_>>()?;
    Ok(StateVector { amps })
}

pub fn id_matrix() -> DenseOperator {
    DenseOperator::identity(2)
}

pub fn j_matrix(gamma: f64) -> DenseOperator {
    let (s, co) = (gamma / 2.0).sin_cos();
    let z = Complex64::default();
    let (cc, is) = (c(co), I * s);
    DenseOperator {
        dim: 4,
        entries: vec![
            cc, z, z, is, //
            z, cc, -is, z, //
            z, -is, cc, z, //
            is, z, z, cc,
        ],
    }
}

pub fn u_matrix(p: f64) -> DenseOperator {
    let (s, co) = p.sin_cos();
    DenseOperator::from_real(&[&[co, s], &[-s, co]])
}

pub fn h_matrix() -> DenseOperator {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    DenseOperator::from_real(&[&[h, h], &[h, -h]])
}

pub fn cnot_matrix() -> DenseOperator {
    DenseOperator::from_real(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
        &[0.0, 0.0, 1.0, 0.0],
    ])
}

pub fn swap_matrix() -> DenseOperator {
    DenseOperator::from_real(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
    ])
}

/// Permutation matrix exchanging qubits `s` and `t` of an n-qubit register.
pub fn swap_permutation(s: usize, t: usize, n: usize) -> Result<DenseOperator> {
    for q in [s, t] {
        if q == 0 || q > n {
            return Err(QraError::QubitOutOfRange { index: q, width: n });
        }
    }
    let dim = 1usize << n;
    let (bs, bt) = (n - s, n - t);
    let mut entries = vec![Complex64::default(); dim * dim];
    for y in 0..dim {
        let (a, b) = (y >> bs & 1, y >> bt & 1);
        let x = y & !(1 << bs) & !(1 << bt) | a << bt | b << bs;
        entries[x * dim + y] = c(1.0);
    }
    Ok(DenseOperator { dim, entries })
}

/// `(U(p1) (x) U(p2)) J(gamma) |00>`.
pub fn protocol2(gamma: f64, p1: f64, p2: f64) -> StateVector {
    simulate_reference(&[j_matrix(gamma), tensor(&[u_matrix(p1), u_matrix(p2)])], 2)
        .expect("4x4 operators")
}

/// `(U1 (x) U2 (x) U3) J3(flag) J2(g12, g13, g23) |000>`.
pub fn protocol3(flag: u8, g12: f64, g13: f64, g23: f64, p: [f64; 3]) -> Result<StateVector> {
    let id = id_matrix();
    let sw = tensor(&[swap_matrix(), id.clone()]);
    let mut circuit = vec![
        tensor(&[j_matrix(g12), id.clone()]),
        tensor(&[id.clone(), j_matrix(g23)]),
        sw.clone(),
        tensor(&[id.clone(), j_matrix(g13)]),
        sw,
    ];
    match flag {
        0 => {}
        1 => circuit.extend([
            tensor(&[h_matrix(), id.clone(), id.clone()]),
            tensor(&[cnot_matrix(), id.clone()]),
            tensor(&[id, cnot_matrix()]),
        ]),
        other => return Err(QraError::BadEntanglerFlag(other)),
    }
    circuit.push(tensor(&[u_matrix(p[0]), u_matrix(p[1]), u_matrix(p[2])]));
    simulate_reference(&circuit, 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn kron_convention() {
        let v = tensor(&[h_matrix(), id_matrix()]).apply(&StateVector::ground(2)).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(&v.probabilities(), &[0.5, 0.0, 0.5, 0.0]));
        assert!((v.amplitudes()[2].re - h).abs() < 1e-15);
        assert_eq!(tensor(&[id_matrix(), id_matrix()]), DenseOperator::identity(4));
    }

    #[test]
    fn bell_column() {
        let v = simulate_reference(&[j_matrix(std::f64::consts::FRAC_PI_2)], 2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((v.amplitudes()[0] - c(h)).norm() < 1e-15);
        assert!((v.amplitudes()[3] - I * h).norm() < 1e-15);
        assert_eq!(simulate_reference(&[], 3).unwrap(), StateVector::ground(3));
    }

    #[test]
    fn swap_permutation_matches_swap_matrix() {
        assert_eq!(swap_permutation(1, 2, 2).unwrap(), swap_matrix());
        let s13 = swap_permutation(1, 3, 3).unwrap();
        let v = s13.apply(&StateVector::basis(0b100, 3)).unwrap();
        assert_eq!(v, StateVector::basis(0b001, 3));
    }

    #[test]
    fn ghz_reference() {
        let v = protocol3(1, 0.0, 0.0, 0.0, [0.0; 3]).unwrap();
        assert!(close(&v.probabilities(), &[0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5]));
    }

    #[test]
    fn strategy_point_probabilities() {
        use std::f64::consts::PI;
        let p = protocol2(0.0, 3.0 * PI / 8.0, PI / 8.0).probabilities();
        // index order |00>, |01> = {2}, |10> = {1}, |11>
        let expect = [0.1250, 0.0214, 0.7286, 0.1250];
        assert!(p.iter().zip(expect).all(|(a, b)| (a - b).abs() < 5e-5), "{p:?}");
    }

    #[test]
    fn dimension_mismatch() {
        assert!(simulate_reference(&[j_matrix(0.1)], 3).is_err());
        assert!(DenseOperator::from_rows(vec![vec![c(1.0)]; 3]).is_err());
    }
}
