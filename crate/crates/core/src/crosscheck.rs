//! Batch comparisons of QRA constructions against the dense oracle and
//! against matrix-defined tensor products.

use std::collections::BTreeSet;
use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::gates::{
    cnot_adjacent, gate_from_matrix, hadamard_on, id_gate, j2_block, j3_gate, j_entangler,
    j_entangler_cs, parallel2, parallel3, rotation_on, strategy_u_on, swap_adjacent, swap_by_adjacent,
    swap_general, three_gate_rule_audit, GateElement, MarkerAudit,
};
use crate::matrix::CMatrix;
use crate::multivector::PseudoComplex;
use crate::oracle::{
    cnot_matrix, embed, h_matrix, id_matrix, j_matrix, protocol2, protocol3, qra_to_matrix,
    swap_matrix, swap_permutation, tensor, u_matrix, DenseOperator,
};
use crate::quantum::{final_state_2p, final_state_3p, ThreePlayerConfig, TwoPlayerConfig};
use crate::register::{ket, BitString, Measurement, RegisterState};
use crate::scalar::{Angle, QSqrt2, Scalar};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5EED;

/// Worst deviation seen for one family of comparisons.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub max_deviation: f64,
}

impl Check {
    fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            cases: 0,
            max_deviation: 0.0,
        }
    }

    fn record(&mut self, deviation: f64) {
        self.cases += 1;
        if deviation.is_nan() || deviation > self.max_deviation {
            self.max_deviation = deviation;
        }
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_deviation <= tol
    }
}

fn deviation(g: &GateElement<f64>, expected: &DenseOperator) -> Result<f64> {
    Ok(qra_to_matrix(g)?.max_abs_diff(expected).unwrap_or(f64::NAN))
}

fn angle(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(0.0..=FRAC_PI_2)
}

/// Every gate constructor against its oracle matrix, on registers of width
/// 1 to 3 and `draws` random parameters; the unitarity defect of each
/// matrix image is tracked alongside.
pub fn gate_suite(draws: usize, seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = [
        "Id", "H", "U", "J", "CNOT", "SWAP adjacent", "SWAP general", "J2", "J3", "unitarity",
    ];
    let mut checks: Vec<Check> = names.iter().map(|n| Check::new(*n)).collect();
    let mut push = |k: usize, g: GateElement<f64>, m: DenseOperator| -> Result<()> {
        checks[k].record(deviation(&g, &m)?);
        checks[9].record(qra_to_matrix(&g)?.unitarity_defect());
        Ok(())
    };
    for n in 1..=3 {
        for q in 1..=n {
            push(0, id_gate(q, n)?, embed(&id_matrix(), q, n)?)?;
            push(1, hadamard_on(q, n)?, embed(&h_matrix(), q, n)?)?;
        }
        for s in 1..n {
            push(4, cnot_adjacent(s, n)?, embed(&cnot_matrix(), s, n)?)?;
            push(5, swap_adjacent(s, n)?, embed(&swap_matrix(), s, n)?)?;
        }
        for s in 1..=n {
            for t in s + 1..=n {
                push(6, swap_general(s, t, n)?, swap_permutation(s, t, n)?)?;
            }
        }
    }
    push(8, j3_gate(0)?, DenseOperator::identity(8))?;
    let ghz = tensor(&[id_matrix(), cnot_matrix()])
        .mul(&tensor(&[cnot_matrix(), id_matrix()]))?
        .mul(&tensor(&[h_matrix(), id_matrix(), id_matrix()]))?;
    push(8, j3_gate(1)?, ghz)?;
    for _ in 0..draws {
        let n = rng.gen_range(1..=3);
        let q = rng.gen_range(1..=n);
        let p = angle(&mut rng);
        push(2, strategy_u_on(q, &Angle::radians(p), n)?, embed(&u_matrix(p), q, n)?)?;
        let n = rng.gen_range(2..=3);
        let s = rng.gen_range(1..n);
        let g = angle(&mut rng);
        push(3, j_entangler(&Angle::radians(g), s, n)?, embed(&j_matrix(g), s, n)?)?;
        let (g12, g13, g23) = (angle(&mut rng), angle(&mut rng), angle(&mut rng));
        let sw = tensor(&[swap_matrix(), id_matrix()]);
        let expected = sw
            .mul(&tensor(&[id_matrix(), j_matrix(g13)]))?
            .mul(&sw)?
            .mul(&tensor(&[id_matrix(), j_matrix(g23)]))?
            .mul(&tensor(&[j_matrix(g12), id_matrix()]))?;
        let j2 = j2_block(&Angle::radians(g12), &Angle::radians(g13), &Angle::radians(g23))?;
        push(7, j2, expected)?;
    }
    Ok(checks)
}

/// Probability tables of both protocols: QRA backend against the oracle.
pub fn protocol_suite(draws: usize, seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut two = Check::new("two-player probabilities");
    let mut three = Check::new("three-player probabilities");
    let m2 = Measurement::<f64>::new(2)?;
    let m3 = Measurement::<f64>::new(3)?;
    for _ in 0..draws {
        let (g, p1, p2) = (angle(&mut rng), angle(&mut rng), angle(&mut rng));
        let cfg = TwoPlayerConfig::new(Angle::radians(g), Angle::radians(p1), Angle::radians(p2));
        let qra = m2.probabilities(&final_state_2p::<f64>(&cfg)?)?;
        let reference = protocol2(g, p1, p2).probabilities();
        two.record(max_diff(qra.entries(), &reference));

        let flag = rng.gen_range(0..=1u8);
        let xs: Vec<f64> = (0..6).map(|_| angle(&mut rng)).collect();
        let cfg = ThreePlayerConfig {
            gamma123: flag,
            gamma12: Angle::radians(xs[0]),
            gamma13: Angle::radians(xs[1]),
            gamma23: Angle::radians(xs[2]),
            p1: Angle::radians(xs[3]),
            p2: Angle::radians(xs[4]),
            p3: Angle::radians(xs[5]),
        };
        let qra = m3.probabilities(&final_state_3p::<f64>(&cfg)?)?;
        let reference = protocol3(flag, xs[0], xs[1], xs[2], [xs[3], xs[4], xs[5]])?.probabilities();
        three.record(max_diff(qra.entries(), &reference));
    }
    Ok(vec![two, three])
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// A random rational point on the unit circle, `(cos, sin)`, from a
/// Pythagorean triple.
pub fn rational_rotation(rng: &mut impl Rng) -> (QSqrt2, QSqrt2) {
    let m: i64 = rng.gen_range(2..=12);
    let k: i64 = rng.gen_range(1..m);
    let h = m * m + k * k;
    let (mut c, mut s) = (QSqrt2::ratio(m * m - k * k, h), QSqrt2::ratio(2 * m * k, h));
    if rng.gen_bool(0.5) {
        std::mem::swap(&mut c, &mut s);
    }
    if rng.gen_bool(0.5) {
        s = -s;
    }
    (c, s)
}

fn rotation_matrix(c: &QSqrt2, s: &QSqrt2) -> Result<CMatrix<QSqrt2>> {
    let re = |x: &QSqrt2| PseudoComplex::real(x.clone());
    CMatrix::from_rows(vec![vec![re(c), re(s)], vec![re(&-s.clone()), re(c)]])
}

fn entangler_matrix(c: &QSqrt2, s: &QSqrt2) -> Result<CMatrix<QSqrt2>> {
    let z = PseudoComplex::zero;
    let cc = || PseudoComplex::real(c.clone());
    let is = || PseudoComplex::iota(s.clone());
    CMatrix::from_rows(vec![
        vec![cc(), z(), z(), is()],
        vec![z(), cc(), -is(), z()],
        vec![z(), -is(), cc(), z()],
        vec![is(), z(), z(), cc()],
    ])
}

fn exact_matrix(name: &str) -> Result<CMatrix<QSqrt2>> {
    let h = QSqrt2::frac_1_sqrt2()?;
    let r = |x: i64| PseudoComplex::real(QSqrt2::from_i64(x));
    Ok(match name {
        "H" => CMatrix::from_rows(vec![
            vec![PseudoComplex::real(h.clone()), PseudoComplex::real(h.clone())],
            vec![PseudoComplex::real(h.clone()), PseudoComplex::real(-h)],
        ])?,
        "Id" => CMatrix::identity(2),
        _ => CMatrix::from_rows(vec![
            vec![r(1), r(0), r(0), r(0)],
            vec![r(0), r(1), r(0), r(0)],
            vec![r(0), r(0), r(0), r(1)],
            vec![r(0), r(0), r(1), r(0)],
        ])?,
    })
}

/// Outcome of the exact tensor-rule comparison.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TensorRuleReport {
    pub parallel2_cases: usize,
    pub parallel2_mismatches: usize,
    pub parallel3_cases: usize,
    pub parallel3_mismatches: usize,
}

impl TensorRuleReport {
    pub fn passes(&self) -> bool {
        self.parallel2_mismatches == 0 && self.parallel3_mismatches == 0
    }
}

/// `parallel2` / `parallel3` against `gate_from_matrix` of the Kronecker
/// product, exactly, on rational rotations and the fixed gates.
pub fn tensor_rule_suite(draws: usize, seed: u64) -> Result<TensorRuleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = TensorRuleReport::default();
    // fixed pairs from the protocols
    for (a, b) in [("Id", "CNOT"), ("CNOT", "Id"), ("H", "CNOT"), ("CNOT", "H"), ("H", "Id"), ("Id", "H")] {
        let gate = |name: &str, q: usize| -> Result<GateElement<QSqrt2>> {
            match name {
                "Id" => id_gate(q, 3),
                "H" => hadamard_on(q, 3),
                _ => cnot_adjacent(q, 3),
            }
        };
        let left = gate(a, 1)?;
        let right = gate(b, left.support().len() + 1)?;
        let m = exact_matrix(a)?.kron(&exact_matrix(b)?);
        rep.parallel2_cases += 1;
        rep.parallel2_mismatches += usize::from(!parallel2_agrees(&left, &right, &m)?);
    }
    let points: Vec<[(QSqrt2, QSqrt2); 4]> = (0..draws)
        .map(|_| std::array::from_fn(|_| rational_rotation(&mut rng)))
        .collect();
    let outcomes = points
        .par_iter()
        .map(random_tensor_case)
        .collect::<Result<Vec<_>>>()?;
    for (p2_bad, p3_bad) in outcomes {
        rep.parallel2_cases += 3;
        rep.parallel2_mismatches += p2_bad;
        rep.parallel3_cases += 1;
        rep.parallel3_mismatches += usize::from(p3_bad);
    }
    Ok(rep)
}

fn parallel2_agrees(l: &GateElement<QSqrt2>, r: &GateElement<QSqrt2>, m: &CMatrix<QSqrt2>) -> Result<bool> {
    let want = gate_from_matrix(m, l.support()[0], l.width())?;
    parallel2(l, r)?.same_operator(&want)
}

/// Three `parallel2` cases and one `parallel3` case for one random draw;
/// returns the number of `parallel2` mismatches and whether `parallel3` failed.
fn random_tensor_case(draw: &[(QSqrt2, QSqrt2); 4]) -> Result<(usize, bool)> {
    let [(c1, s1), (c2, s2), (c3, s3), (cj, sj)] = draw.clone();
    let m1 = rotation_matrix(&c1, &s1)?;
    let m2 = rotation_matrix(&c2, &s2)?;
    let m3 = rotation_matrix(&c3, &s3)?;
    let mj = entangler_matrix(&cj, &sj)?;
    let cases = [
        (
            rotation_on(1, c1.clone(), s1.clone(), 2)?,
            rotation_on(2, c2.clone(), s2.clone(), 2)?,
            m1.kron(&m2),
        ),
        // two-qubit entangler next to a rotation, both orders
        (
            rotation_on(1, c3.clone(), s3.clone(), 3)?,
            j_entangler_cs(cj.clone(), sj.clone(), 2, 3)?,
            m3.kron(&mj),
        ),
        (
            j_entangler_cs(cj, sj, 1, 3)?,
            rotation_on(3, c3.clone(), s3.clone(), 3)?,
            mj.kron(&m3),
        ),
    ];
    let mut bad = 0;
    for (l, r, m) in &cases {
        bad += usize::from(!parallel2_agrees(l, r, m)?);
    }
    let got = parallel3(
        &rotation_on(1, c1, s1, 3)?,
        &rotation_on(2, c2, s2, 3)?,
        &rotation_on(3, c3, s3, 3)?,
    )?;
    let want = gate_from_matrix(&CMatrix::kron_all(&[m1, m2, m3]), 1, 3)?;
    Ok((bad, !got.same_operator(&want)?))
}

/// Exact comparison of a general-swap constructor with the adjacent chain.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SwapTheoremReport {
    /// `(s, t, n, ket)` combinations checked.
    pub cases: usize,
    /// Failing combinations as `"SWAP(s,t) n=.. |x>"`.
    pub mismatches: Vec<String>,
}

impl SwapTheoremReport {
    pub fn passes(&self) -> bool {
        self.cases > 0 && self.mismatches.is_empty()
    }
}

/// For every `1 <= s < t <= n <= max_n` and every basis ket, checks that the
/// general swap, the adjacent chain and the bit-swapped ket coincide exactly.
pub fn swap_theorem_suite<F>(max_n: usize, general: F) -> Result<SwapTheoremReport>
where
    F: Fn(usize, usize, usize) -> Result<GateElement<QSqrt2>> + Sync,
{
    let triples: Vec<(usize, usize, usize)> = (2..=max_n)
        .flat_map(|n| (1..n).flat_map(move |s| (s + 1..=n).map(move |t| (s, t, n))))
        .collect();
    let per_triple = triples
        .par_iter()
        .map(|&(s, t, n)| -> Result<(usize, Vec<String>)> {
            let g = general(s, t, n)?;
            let chain = swap_by_adjacent::<QSqrt2>(s, t, n)?;
            let mut bad = Vec::new();
            for x in BitString::all(n) {
                let state = RegisterState::basis(x)?;
                let want = ket::<QSqrt2>(swap_bits(x, s, t)?)?;
                if g.apply(&state)?.psi != want || chain.apply(&state)?.psi != want {
                    bad.push(format!("SWAP({s},{t}) n={n} |{x}>"));
                }
            }
            Ok((1 << n, bad))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rep = SwapTheoremReport::default();
    for (cases, bad) in per_triple {
        rep.cases += cases;
        rep.mismatches.extend(bad);
    }
    Ok(rep)
}

fn swap_bits(x: BitString, s: usize, t: usize) -> Result<BitString> {
    let n = x.width();
    let mut idx = x.index();
    if x.bit(s) != x.bit(t) {
        idx ^= (1 << (n - s)) | (1 << (n - t));
    }
    BitString::from_index(idx, n)
}

/// Marker products listed in a waiver file: one per line, `#` starts a comment.
pub fn parse_waivers(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(String::from)
        .collect()
}

/// Result of auditing the three-gate table against a waiver list.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SignRuleAudit {
    pub marker_products: usize,
    /// Divergent products with no waiver.
    pub unwaived: Vec<MarkerAudit>,
    /// Waivers naming a product that does not diverge.
    pub stale_waivers: Vec<String>,
}

impl SignRuleAudit {
    pub fn passes(&self) -> bool {
        self.unwaived.is_empty() && self.stale_waivers.is_empty()
    }
}

pub fn sign_rule_audit(waivers: &BTreeSet<String>) -> Result<SignRuleAudit> {
    let audit = three_gate_rule_audit()?;
    let divergent: BTreeSet<String> = audit
        .iter()
        .filter(|a| a.diverges())
        .map(|a| a.markers.clone())
        .collect();
    Ok(SignRuleAudit {
        marker_products: audit.len(),
        unwaived: audit
            .into_iter()
            .filter(|a| a.diverges() && !waivers.contains(&a.markers))
            .collect(),
        stale_waivers: waivers.difference(&divergent).cloned().collect(),
    })
}
