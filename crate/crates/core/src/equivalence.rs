//! Symbolic circuit equivalence over the trigonometric polynomial ring.
//!
//! Two gates are equal when their difference reduces to the zero element.
//! Every coefficient is kept canonical, so a zero residual is a proof. When
//! the residual is non-zero, numeric points are searched for a witness.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::gates::{entangler_blocks, j_entangler, serial, swap_adjacent, GateElement};
use crate::multivector::Multivector;
use crate::register::RegisterState;
use crate::scalar::{trig_canonicalize, Angle, TrigPoly, ZERO_TOL};

/// Seed of the witness search.
pub const WITNESS_SEED: u64 = 0x5EED;
/// Random points tried after the all-`pi/2` point.
pub const WITNESS_TRIES: usize = 50;

pub type Point = BTreeMap<String, f64>;

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    pub equal: bool,
    /// Canonical `g1 - g2`.
    pub residual: Multivector<TrigPoly>,
    /// Parameter values at which the two sides differ numerically.
    pub witness: Option<Point>,
}

fn symbols(m: &Multivector<TrigPoly>) -> BTreeSet<String> {
    m.terms()
        .flat_map(|(_, c)| c.re.symbol_names().into_iter().chain(c.im.symbol_names()))
        .collect()
}

/// Largest coefficient modulus of `m` with symbols bound by `point`.
pub fn evaluate_max(m: &Multivector<TrigPoly>, point: &Point) -> Option<f64> {
    let bind = |name: &str| point.get(name).copied();
    let mut worst: f64 = 0.0;
    for (_, c) in m.terms() {
        let re = c.re.eval(bind)?;
        let im = c.im.eval(bind)?;
        worst = worst.max(re.hypot(im));
    }
    Some(worst)
}

fn canonical(m: &Multivector<TrigPoly>) -> Multivector<TrigPoly> {
    m.map_coefficients(|p| Some(trig_canonicalize(p)))
        .expect("canonicalization is total")
}

fn find_witness(residual: &Multivector<TrigPoly>) -> Option<Point> {
    let names = symbols(residual);
    let differs = |p: &Point| evaluate_max(residual, p).is_some_and(|d| d > ZERO_TOL);
    let corner: Point = names.iter().map(|n| (n.clone(), FRAC_PI_2)).collect();
    if differs(&corner) {
        return Some(corner);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(WITNESS_SEED);
    (0..WITNESS_TRIES)
        .map(|_| {
            names
                .iter()
                .map(|n| (n.clone(), rng.gen_range(0.0..=FRAC_PI_2)))
                .collect::<Point>()
        })
        .find(differs)
}

/// Decides `g1 == g2` as operators.
pub fn symbolic_equal(
    g1: &GateElement<TrigPoly>,
    g2: &GateElement<TrigPoly>,
) -> Result<EquivalenceReport> {
    let residual = canonical(&g1.element().try_sub(g2.element())?);
    if residual.is_zero() {
        return Ok(EquivalenceReport {
            equal: true,
            residual,
            witness: None,
        });
    }
    let witness = find_witness(&residual);
    Ok(EquivalenceReport {
        equal: false,
        residual,
        witness,
    })
}

/// Operator-level and state-level comparison of every ordering of three blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderingProof {
    /// Block labels in application order, one entry per ordering.
    pub orderings: Vec<[char; 3]>,
    /// Each ordering's product against the reference ordering `A, B, C`.
    pub operator_reports: Vec<EquivalenceReport>,
    /// Same comparison after applying both products to `|000>`.
    pub state_reports: Vec<EquivalenceReport>,
}

impl OrderingProof {
    pub fn operator_equal_count(&self) -> usize {
        self.operator_reports.iter().filter(|r| r.equal).count()
    }

    pub fn state_equal_count(&self) -> usize {
        self.state_reports.iter().filter(|r| r.equal).count()
    }

    pub fn all_equal(&self) -> bool {
        self.operator_equal_count() == self.orderings.len()
            && self.state_equal_count() == self.orderings.len()
    }
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Compares the products of all six orderings of `blocks` with the first.
pub fn prove_ordering_invariance(blocks: &[GateElement<TrigPoly>; 3]) -> Result<OrderingProof> {
    let labels = ['A', 'B', 'C'];
    let n = blocks[0].width();
    let ground = RegisterState::<TrigPoly>::ground(n)?;
    let products = PERMUTATIONS
        .iter()
        .map(|p| serial(&[blocks[p[0]].clone(), blocks[p[1]].clone(), blocks[p[2]].clone()]))
        .collect::<Result<Vec<_>>>()?;
    let reference = &products[0];
    let ref_state = GateElement::new(reference.apply(&ground)?.psi, Vec::new())?;
    let mut operator_reports = Vec::new();
    let mut state_reports = Vec::new();
    for g in &products {
        operator_reports.push(symbolic_equal(g, reference)?);
        let state = GateElement::new(g.apply(&ground)?.psi, Vec::new())?;
        state_reports.push(symbolic_equal(&state, &ref_state)?);
    }
    Ok(OrderingProof {
        orderings: PERMUTATIONS
            .iter()
            .map(|p| [labels[p[0]], labels[p[1]], labels[p[2]]])
            .collect(),
        operator_reports,
        state_reports,
    })
}

/// The three pairwise entangler blocks with symbolic angles `g12`, `g13`, `g23`.
pub fn symbolic_blocks() -> Result<[GateElement<TrigPoly>; 3]> {
    entangler_blocks(
        &Angle::symbol("g12"),
        &Angle::symbol("g13"),
        &Angle::symbol("g23"),
    )
}

/// All orderings of the pairwise entangler blocks yield one element.
pub fn prove_j2_ordering_invariance() -> Result<OrderingProof> {
    prove_ordering_invariance(&symbolic_blocks()?)
}

/// Blocks where the third entangler is written on qubits 2 and 3 with its own
/// symbol and without the surrounding swaps, a common transcription slip.
pub fn misplaced_third_block() -> Result<[GateElement<TrigPoly>; 3]> {
    let [a, b, _] = symbolic_blocks()?;
    Ok([a, b, j_entangler(&Angle::symbol("h13"), 2, 3)?])
}

/// Blocks with every angle set to the same symbol `g`.
pub fn degenerate_blocks() -> Result<[GateElement<TrigPoly>; 3]> {
    let g = Angle::symbol("g");
    entangler_blocks(&g, &g, &g)
}

/// `SWAP(1,3)` against `SWAP(2,3) SWAP(1,2) SWAP(2,3)` on three qubits.
pub fn prove_swap13(general: &GateElement<TrigPoly>) -> Result<EquivalenceReport> {
    let s23 = swap_adjacent(2, 3)?;
    let composed = serial(&[s23.clone(), swap_adjacent(1, 3)?, s23])?;
    symbolic_equal(general, &composed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{id_gate, swap_general, swap_general_as_printed};

    #[test]
    fn reflexive() {
        let j = j_entangler::<TrigPoly>(&Angle::symbol("g"), 1, 2).unwrap();
        let r = symbolic_equal(&j, &j).unwrap();
        assert!(r.equal && r.residual.is_zero() && r.witness.is_none());
    }

    #[test]
    fn entangler_is_not_identity() {
        let j = j_entangler::<TrigPoly>(&Angle::symbol("g"), 1, 2).unwrap();
        let id = id_gate(1, 2).unwrap();
        let r = symbolic_equal(&j, &id).unwrap();
        assert!(!r.equal);
        assert_eq!(r.witness.unwrap()["g"], FRAC_PI_2);
    }

    #[test]
    fn two_blocks_commute() {
        let [a, b, _] = symbolic_blocks().unwrap();
        let ab = serial(&[a.clone(), b.clone()]).unwrap();
        let ba = serial(&[b, a]).unwrap();
        assert!(symbolic_equal(&ab, &ba).unwrap().equal);
    }

    #[test]
    fn swap13_theorem() {
        assert!(prove_swap13(&swap_general(1, 3, 3).unwrap()).unwrap().equal);
        let printed = prove_swap13(&swap_general_as_printed(1, 3, 3).unwrap()).unwrap();
        assert!(!printed.equal);
    }
}
