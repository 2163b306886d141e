use num_rational::{BigRational, Rational64};
use proptest::prelude::*;
use qra_coop::register::{bra, ket, witt_f, witt_fd, Measurement};
use qra_coop::scalar::{trig_canonicalize, AngleVar};
use qra_coop::{
    blade_product, linear_combine, BitString, Blade, Multivector, PseudoComplex, QSqrt2,
    RegisterState, Scalar, TrigPoly,
};

/// Sign of a blade product by explicit bubble sort of the generator list.
fn sort_sign(x: Blade, y: Blade) -> (i8, Blade) {
    let gens = |b: Blade| (0..32).filter(move |i| b.0 >> i & 1 == 1);
    let mut list: Vec<u32> = gens(x).chain(gens(y)).collect();
    let mut sign = 1i8;
    for i in 0..list.len() {
        for j in 0..list.len() - 1 - i {
            if list[j] > list[j + 1] {
                list.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    let mut out = Vec::new();
    for g in list {
        if out.last() == Some(&g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    (sign, Blade(out.iter().map(|g| 1u32 << g).sum()))
}

fn q(num: i64, den: i64) -> QSqrt2 {
    QSqrt2::ratio(num, den)
}

fn coeff() -> impl Strategy<Value = PseudoComplex<QSqrt2>> {
    (-4i64..=4, -4i64..=4, 1i64..=3).prop_map(|(a, b, d)| PseudoComplex::new(q(a, d), q(b, d)))
}

/// Sparse exact multivector on `n` qubits.
fn element(n: usize) -> impl Strategy<Value = Multivector<QSqrt2>> {
    prop::collection::vec((0u32..(1 << (2 * n)), coeff()), 0..5).prop_map(move |terms| {
        Multivector::from_terms(n, terms.into_iter().map(|(b, c)| (Blade(b), c))).unwrap()
    })
}

fn triple() -> impl Strategy<Value = (Multivector<QSqrt2>, Multivector<QSqrt2>, Multivector<QSqrt2>)> {
    (1usize..=3).prop_flat_map(|n| (element(n), element(n), element(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn blade_product_matches_sorting(x in 0u32..256, y in 0u32..256) {
        prop_assert_eq!(blade_product(Blade(x), Blade(y)), sort_sign(Blade(x), Blade(y)));
    }

    #[test]
    fn product_is_associative((a, b, c) in triple()) {
        let left = (&(&a * &b)) * &c;
        let right = &a * &(&b * &c);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_distributes((a, b, c) in triple()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn dagger_reverses_products((a, b, _) in triple()) {
        prop_assert_eq!((&a * &b).dagger(), &b.dagger() * &a.dagger());
        prop_assert_eq!(a.dagger().dagger(), a);
    }

    #[test]
    fn sum_with_negation_is_zero((a, _, _) in triple()) {
        let terms = [(PseudoComplex::one(), a.clone()), (PseudoComplex::from_i64(-1), a.clone())];
        let z = linear_combine(a.dim(), &terms).unwrap();
        prop_assert!(z.is_zero());
    }

    #[test]
    fn trig_ring_is_canonical_and_evaluates_homomorphically(
        p in trig_poly(), r in trig_poly(), x in 0.0f64..1.6, y in 0.0f64..1.6,
    ) {
        let bind = |name: &str| match name { "x" => Some(x), _ => Some(y) };
        let prod = p.clone() * r.clone();
        let sum = p.clone() + r.clone();
        prop_assert!(prod.is_canonical() && sum.is_canonical());
        prop_assert_eq!(trig_canonicalize(&prod), prod.clone());
        let (pv, rv) = (p.eval(bind).unwrap(), r.eval(bind).unwrap());
        prop_assert!((prod.eval(bind).unwrap() - pv * rv).abs() < 1e-9);
        prop_assert!((sum.eval(bind).unwrap() - (pv + rv)).abs() < 1e-9);
        prop_assert_eq!(p.clone() * r.clone(), r * p);
    }
}

fn trig_poly() -> impl Strategy<Value = TrigPoly> {
    let var = prop_oneof![Just("x"), Just("y")];
    let mono = prop::collection::vec((var, 0u32..3, 0u32..4), 0..3);
    prop::collection::vec((mono, -3i64..=3), 0..4).prop_map(|terms| {
        TrigPoly::from_raw_terms(terms.into_iter().map(|(m, c)| {
            let m = m
                .into_iter()
                .map(|(v, cp, sp)| (AngleVar::new(v, Rational64::from_integer(1)), cp, sp))
                .collect();
            (m, QSqrt2::ratio(c, 1))
        }))
    })
}

#[test]
fn witt_rules_hold_up_to_four_qubits() {
    for n in 1..=4 {
        let f: Vec<_> = (1..=n).map(|i| witt_f::<QSqrt2>(n, i).unwrap()).collect();
        let fd: Vec<_> = (1..=n).map(|i| witt_fd::<QSqrt2>(n, i).unwrap()).collect();
        for i in 0..n {
            assert!((&f[i] * &f[i]).is_zero());
            assert!((&fd[i] * &fd[i]).is_zero());
            assert_eq!(&(&f[i] * &fd[i]) * &f[i], f[i]);
            assert_eq!(&(&fd[i] * &f[i]) * &fd[i], fd[i]);
            assert_eq!(f[i].dagger(), fd[i]);
            for j in 0..n {
                let anti = |a: &Multivector<QSqrt2>, b: &Multivector<QSqrt2>| &(a * b) + &(b * a);
                let expect = if i == j {
                    Multivector::one(n)
                } else {
                    Multivector::zero(n)
                };
                assert_eq!(anti(&f[i], &fd[j]), expect, "n={n} i={i} j={j}");
                assert!(anti(&f[i], &f[j]).is_zero() || i == j);
                assert!(anti(&fd[i], &fd[j]).is_zero() || i == j);
                if i != j {
                    assert_eq!(&fd[i] * &f[j], -&(&f[j] * &fd[i]));
                }
            }
        }
    }
}

#[test]
fn kets_and_bras_are_orthonormal() {
    for n in 1..=3 {
        let m = Measurement::<QSqrt2>::new(n).unwrap();
        for y in BitString::all(n) {
            let state = RegisterState::basis(y).unwrap();
            assert_eq!(bra::<QSqrt2>(y).unwrap(), ket::<QSqrt2>(y).unwrap().dagger());
            for x in BitString::all(n) {
                let expect = if x == y {
                    PseudoComplex::one()
                } else {
                    PseudoComplex::zero()
                };
                assert_eq!(m.amplitude(x, &state).unwrap(), expect);
            }
        }
    }
}

#[test]
fn idempotent_has_expected_scalar_part() {
    for n in 1..=3 {
        let i = ket::<QSqrt2>(BitString::zeros(n).unwrap()).unwrap();
        assert_eq!(&i * &i, i);
        let expect = QSqrt2::rational(BigRational::new(1.into(), (1i64 << n).into()));
        assert_eq!(i.scalar_part(), PseudoComplex::real(expect));
        assert_eq!(i.scalar_part().im, QSqrt2::zero());
    }
}
