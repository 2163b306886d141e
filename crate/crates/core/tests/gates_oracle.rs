use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qra_coop::crosscheck::{gate_suite, swap_theorem_suite, tensor_rule_suite, DEFAULT_SEED};
use qra_coop::gates::{
    cnot_adjacent, gate_from_matrix, hadamard_on, j2_block, j3_gate, j_entangler, serial,
    strategy_u_on, swap_adjacent, swap_general, GateElement,
};
use qra_coop::oracle::{
    embed, j_matrix, qra_state_vector, qra_to_matrix, simulate_reference, u_matrix, DenseOperator,
};
use qra_coop::register::Measurement;
use qra_coop::{Angle, BitString, QSqrt2, RegisterState, Scalar};

#[test]
fn swap_theorem_up_to_five_qubits() {
    let rep = swap_theorem_suite(5, swap_general).unwrap();
    assert!(rep.passes(), "{:?}", rep.mismatches);
    // sum over n of C(n,2) 2^n for n = 2..5
    assert_eq!(rep.cases, 4 + 24 + 96 + 320);
}

/// Random float circuit of single-qubit strategies and adjacent entanglers,
/// together with its matrix image.
fn random_circuit(rng: &mut impl Rng, n: usize) -> (Vec<GateElement<f64>>, Vec<DenseOperator>) {
    let mut gates = Vec::new();
    let mut ops = Vec::new();
    for _ in 0..4 {
        let angle = rng.gen_range(0.0..std::f64::consts::PI);
        if n >= 2 && rng.gen_bool(0.5) {
            let s = rng.gen_range(1..n);
            gates.push(j_entangler(&Angle::radians(angle), s, n).unwrap());
            ops.push(embed(&j_matrix(angle), s, n).unwrap());
        } else {
            let q = rng.gen_range(1..=n);
            gates.push(strategy_u_on(q, &Angle::radians(angle), n).unwrap());
            ops.push(embed(&u_matrix(angle), q, n).unwrap());
        }
    }
    (gates, ops)
}

#[test]
fn amplitudes_agree_with_matrix_simulation() {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for k in 0..100 {
        let n = 1 + k % 3;
        let (gates, ops) = random_circuit(&mut rng, n);
        let state = serial(&gates)
            .unwrap()
            .apply(&RegisterState::ground(n).unwrap())
            .unwrap();
        let got = qra_state_vector(&state).unwrap();
        let want = simulate_reference(&ops, n).unwrap();
        for (a, b) in got.amplitudes().iter().zip(want.amplitudes()) {
            assert!((a - b).norm() <= 1e-12, "draw {k}: {a} vs {b}");
        }
    }
}

#[test]
fn basis_images_stay_normalized() {
    let n = 3;
    let gates: Vec<GateElement<QSqrt2>> = vec![
        hadamard_on(2, n).unwrap(),
        cnot_adjacent(1, n).unwrap(),
        swap_general(1, 3, n).unwrap(),
        j_entangler(&Angle::pi(1, 2), 2, n).unwrap(),
        strategy_u_on(3, &Angle::pi(1, 4), n).unwrap(),
        j2_block(&Angle::pi(1, 2), &Angle::pi(1, 2), &Angle::pi(1, 2)).unwrap(),
        j3_gate(1).unwrap(),
    ];
    let meas = Measurement::new(n).unwrap();
    for g in &gates {
        for x in BitString::all(n) {
            let out = g.apply(&RegisterState::basis(x).unwrap()).unwrap();
            let table = meas.probabilities(&out).unwrap();
            assert_eq!(table.total(), QSqrt2::one());
        }
    }
}

#[test]
fn dagger_inverts_gates() {
    let n = 3;
    let gates: Vec<GateElement<QSqrt2>> = vec![
        hadamard_on(1, n).unwrap(),
        cnot_adjacent(2, n).unwrap(),
        swap_adjacent(1, n).unwrap(),
        swap_general(1, 3, n).unwrap(),
        j_entangler(&Angle::pi(1, 2), 1, n).unwrap(),
        j3_gate(1).unwrap(),
    ];
    for g in &gates {
        let id = GateElement::identity(n);
        assert!(g.then(&g.dagger()).unwrap().same_operator(&id).unwrap());
        assert!(g.dagger().then(g).unwrap().same_operator(&id).unwrap());
    }
}

#[test]
fn serial_composition_matches_matrix_product() {
    let n = 3;
    let a = hadamard_on::<QSqrt2>(1, n).unwrap();
    let b = cnot_adjacent(1, n).unwrap();
    let c = swap_general(1, 3, n).unwrap();
    let got = qra_to_matrix(&serial(&[a.clone(), b.clone(), c.clone()]).unwrap()).unwrap();
    let want = qra_to_matrix(&c)
        .unwrap()
        .mul(&qra_to_matrix(&b).unwrap().mul(&qra_to_matrix(&a).unwrap()).unwrap())
        .unwrap();
    assert!(got.max_abs_diff(&want).unwrap() < 1e-12);
}

#[test]
fn matrix_images_round_trip() {
    let n = 3;
    for g in [
        cnot_adjacent::<QSqrt2>(2, n).unwrap(),
        hadamard_on(3, n).unwrap(),
        j_entangler(&Angle::pi(1, 2), 1, n).unwrap(),
    ] {
        let full = g.to_matrix().unwrap();
        let back = gate_from_matrix(&full, 1, n).unwrap();
        assert!(back.same_operator(&g).unwrap());
    }
}

#[test]
fn oracle_suites_pass() {
    for c in gate_suite(20, DEFAULT_SEED).unwrap() {
        assert!(c.passes(1e-10), "{c:?}");
    }
    assert!(tensor_rule_suite(10, DEFAULT_SEED).unwrap().passes());
}

#[test]
fn j_entangler_first_column() {
    let g = j_entangler::<f64>(&Angle::pi(1, 2), 1, 2).unwrap();
    let m = qra_to_matrix(&g).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!((m.get(0, 0) - Complex64::new(h, 0.0)).norm() < 1e-12);
    assert!((m.get(3, 0) - Complex64::new(0.0, h)).norm() < 1e-12);
    assert!(m.max_abs_diff(&j_matrix(std::f64::consts::FRAC_PI_2)).unwrap() < 1e-12);
}
