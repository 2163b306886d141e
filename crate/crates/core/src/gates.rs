//! QRA representations of the protocol gates and the serial / parallel
//! composition rules.
//!
//! Every constructor returns the element that acts as the intended operator on
//! the whole register, so gates can be multiplied directly. Gates on later
//! qubits with odd Witt monomials carry a parity string over the earlier qubits;
//! [`parallel2`] and [`parallel3`] reproduce those signs through the marker
//! procedures, and [`gate_from_matrix`] gives the reference tensor semantics.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{QraError, Result};
use crate::matrix::CMatrix;
use crate::multivector::{Multivector, PseudoComplex};
use crate::register::{base_idempotent, bra, ket, witt_generators, BitString, Measurement, RegisterState};
use crate::scalar::{Angle, Scalar};
use crate::witt::{WittFactor, WittPoly};

use WittFactor::{Lower, Occ, Raise, Vac};

/// A gate as an element of QRA(n) acting by left multiplication.
#[derive(Debug, Clone, PartialEq)]
pub struct GateElement<S> {
    element: Multivector<S>,
    support: Vec<usize>,
}

impl<S: Scalar> GateElement<S> {
    pub fn new(element: Multivector<S>, mut support: Vec<usize>) -> Result<Self> {
        let n = element.dim();
        support.sort_unstable();
        support.dedup();
        if let Some(&q) = support.iter().find(|&&q| q == 0 || q > n) {
            return Err(QraError::QubitOutOfRange { index: q, width: n });
        }
        Ok(GateElement { element, support })
    }

    /// Identity on every qubit of an n-qubit register.
    pub fn identity(n: usize) -> Self {
        GateElement {
            element: Multivector::one(n),
            support: Vec::new(),
        }
    }

    fn from_local(poly: WittPoly<S>, n: usize) -> Result<Self> {
        let element = poly.embed(n)?;
        GateElement::new(element, poly.qubits().to_vec())
    }

    pub fn width(&self) -> usize {
        self.element.dim()
    }

    pub fn element(&self) -> &Multivector<S> {
        &self.element
    }

    pub fn into_element(self) -> Multivector<S> {
        self.element
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn apply(&self, state: &RegisterState<S>) -> Result<RegisterState<S>> {
        Ok(RegisterState::new(self.element.product(&state.psi)?))
    }

    /// `next` applied after `self`, i.e. the product `next * self`.
    pub fn then(&self, next: &Self) -> Result<Self> {
        serial(&[self.clone(), next.clone()])
    }

    pub fn dagger(&self) -> Self {
        GateElement {
            element: self.element.dagger(),
            support: self.support.clone(),
        }
    }

    /// Operator equality (the element of an operator is unique).
    pub fn same_operator(&self, other: &Self) -> Result<bool> {
        Ok(self.element.try_sub(&other.element)?.is_zero())
    }

    /// Bare Witt polynomial over the support: the gate as it would be written
    /// on a register that starts at its first qubit, without parity strings.
    pub fn local_poly(&self) -> Result<WittPoly<S>> {
        let n = self.width();
        let all: Vec<usize> = (1..=n).collect();
        let full = WittPoly::from_multivector(&self.element, &all)?;
        let mut out = WittPoly::new(self.support.clone());
        for (fs, c) in full.terms() {
            let outside_vacuum = all
                .iter()
                .zip(fs)
                .all(|(q, x)| self.support.contains(q) || *x == Vac);
            if outside_vacuum {
                let local: Vec<WittFactor> = all
                    .iter()
                    .zip(fs)
                    .filter(|(q, _)| self.support.contains(q))
                    .map(|(_, x)| *x)
                    .collect();
                out.add_term(local, c.clone());
            }
        }
        Ok(out)
    }

    /// Matrix image: column `y` holds the amplitudes of `G |y>`.
    pub fn to_matrix(&self) -> Result<CMatrix<S>> {
        let n = self.width();
        let meas = Measurement::<S>::new(n)?;
        let mut m = CMatrix::zeros(1 << n);
        for y in BitString::all(n) {
            let out = self.apply(&RegisterState::basis(y)?)?;
            for (x, amp) in BitString::all(n).zip(meas.amplitudes(&out)?) {
                m.set(x.index(), y.index(), amp);
            }
        }
        Ok(m)
    }
}

fn check_qubit(q: usize, n: usize) -> Result<()> {
    if q == 0 || q > n {
        return Err(QraError::QubitOutOfRange { index: q, width: n });
    }
    Ok(())
}

fn poly1<S: Scalar>(q: usize, terms: Vec<(WittFactor, PseudoComplex<S>)>) -> WittPoly<S> {
    let mut p = WittPoly::new(vec![q]);
    for (x, c) in terms {
        p.add_term(vec![x], c);
    }
    p
}

fn poly2<S: Scalar>(s: usize, terms: Vec<([WittFactor; 2], PseudoComplex<S>)>) -> WittPoly<S> {
    let mut p = WittPoly::new(vec![s, s + 1]);
    for (x, c) in terms {
        p.add_term(x.to_vec(), c);
    }
    p
}

fn re<S: Scalar>(v: S) -> PseudoComplex<S> {
    PseudoComplex::real(v)
}

fn int<S: Scalar>(v: i64) -> PseudoComplex<S> {
    PseudoComplex::from_i64(v)
}

/// `Id(i) = f_i f_i^dagger + f_i^dagger f_i`.
pub fn id_gate<S: Scalar>(i: usize, n: usize) -> Result<GateElement<S>> {
    check_qubit(i, n)?;
    GateElement::from_local(poly1(i, vec![(Vac, int(1)), (Occ, int(1))]), n)
}

/// `H = (f f^dagger + f + f^dagger - f^dagger f) / sqrt(2)` on qubit 1.
pub fn hadamard<S: Scalar>(n: usize) -> Result<GateElement<S>> {
    hadamard_on(1, n)
}

/// Hadamard on any qubit (parity string supplied by the embedding).
pub fn hadamard_on<S: Scalar>(q: usize, n: usize) -> Result<GateElement<S>> {
    check_qubit(q, n)?;
    let h = re(S::frac_1_sqrt2()?);
    let poly = poly1(
        q,
        vec![
            (Vac, h.clone()),
            (Lower, h.clone()),
            (Raise, h.clone()),
            (Occ, -h),
        ],
    );
    GateElement::from_local(poly, n)
}

/// Strategy rotation `U(p)` on a single-qubit register.
pub fn strategy_u<S: Scalar>(p: &Angle) -> Result<GateElement<S>> {
    strategy_u_on(1, p, 1)
}

/// `U(p) = sin p (f - f^dagger) + cos p (f f^dagger + f^dagger f)` on qubit `q`.
pub fn strategy_u_on<S: Scalar>(q: usize, p: &Angle, n: usize) -> Result<GateElement<S>> {
    rotation_on(q, S::cos(p)?, S::sin(p)?, n)
}

/// `U` given directly by its cosine and sine (e.g. a rational Pythagorean pair).
pub fn rotation_on<S: Scalar>(q: usize, cos: S, sin: S, n: usize) -> Result<GateElement<S>> {
    check_qubit(q, n)?;
    let poly = poly1(
        q,
        vec![
            (Lower, re(sin.clone())),
            (Raise, re(-sin)),
            (Vac, re(cos.clone())),
            (Occ, re(cos)),
        ],
    );
    GateElement::from_local(poly, n)
}

/// Entangler `J(gamma)` on adjacent qubits `(s, s+1)`.
pub fn j_entangler<S: Scalar>(gamma: &Angle, s: usize, n: usize) -> Result<GateElement<S>> {
    let half = gamma.half();
    j_entangler_cs(S::cos(&half)?, S::sin(&half)?, s, n)
}

/// `J` from `cos(gamma/2)` and `sin(gamma/2)`.
pub fn j_entangler_cs<S: Scalar>(c: S, s_: S, s: usize, n: usize) -> Result<GateElement<S>> {
    check_qubit(s, n)?;
    check_qubit(s + 1, n)?;
    let c = re(c);
    let is = PseudoComplex::iota(s_);
    let poly = poly2(
        s,
        vec![
            ([Vac, Vac], c.clone()),
            ([Occ, Vac], c.clone()),
            ([Vac, Occ], c.clone()),
            ([Occ, Occ], c),
            ([Lower, Lower], -is.clone()),
            ([Lower, Raise], is.clone()),
            ([Raise, Lower], -is.clone()),
            ([Raise, Raise], is),
        ],
    );
    GateElement::from_local(poly, n)
}

/// `CNOT(c, c+1) = f f^dagger (x) 1 - f^dagger f (x) (f + f^dagger)` in Witt form.
pub fn cnot_adjacent<S: Scalar>(c: usize, n: usize) -> Result<GateElement<S>> {
    check_qubit(c, n)?;
    check_qubit(c + 1, n)?;
    let poly = poly2(
        c,
        vec![
            ([Vac, Vac], int(1)),
            ([Vac, Occ], int(1)),
            ([Occ, Lower], int(-1)),
            ([Occ, Raise], int(-1)),
        ],
    );
    GateElement::from_local(poly, n)
}

/// Adjacent swap `SWAP(s, s+1)`.
pub fn swap_adjacent<S: Scalar>(s: usize, n: usize) -> Result<GateElement<S>> {
    check_qubit(s, n)?;
    check_qubit(s + 1, n)?;
    GateElement::from_local(poly2(s, swap_ends(SwapBranch::Even)), n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SwapBranch {
    Even,
    Odd,
    OddAsPrinted,
}

/// End factors `(x_s, x_t)` of one branch of the general swap.
fn swap_ends<S: Scalar>(branch: SwapBranch) -> Vec<([WittFactor; 2], PseudoComplex<S>)> {
    let (raise_lower, lower_raise, occ_occ) = match branch {
        SwapBranch::Even => (1, -1, 1),
        SwapBranch::Odd => (-1, 1, 1),
        SwapBranch::OddAsPrinted => (-1, -1, -1),
    };
    vec![
        ([Vac, Vac], int(1)),
        ([Raise, Lower], int(raise_lower)),
        ([Lower, Raise], int(lower_raise)),
        ([Occ, Occ], int(occ_occ)),
    ]
}

fn swap_general_with<S: Scalar>(s: usize, t: usize, n: usize, odd: SwapBranch) -> Result<GateElement<S>> {
    check_qubit(s, n)?;
    check_qubit(t, n)?;
    if s >= t {
        return Err(QraError::QubitOutOfRange { index: s, width: t });
    }
    let qubits: Vec<usize> = (s..=t).collect();
    let middle = t - s - 1;
    let mut poly = WittPoly::new(qubits);
    for mask in 0u32..1 << middle {
        let branch = if mask.count_ones() % 2 == 1 { odd } else { SwapBranch::Even };
        let mids: Vec<WittFactor> = (0..middle)
            .map(|k| if mask >> k & 1 == 1 { Occ } else { Vac })
            .collect();
        for ([xs, xt], c) in swap_ends::<S>(branch) {
            let mut fs = Vec::with_capacity(middle + 2);
            fs.push(xs);
            fs.extend_from_slice(&mids);
            fs.push(xt);
            poly.add_term(fs, c);
        }
    }
    GateElement::from_local(poly, n)
}

/// General `SWAP(s, t)`, `s < t`: the end-qubit swap paired with projectors on
/// the qubits strictly between. When an odd number of middle qubits is
/// occupied the two hopping terms change sign.
pub fn swap_general<S: Scalar>(s: usize, t: usize, n: usize) -> Result<GateElement<S>> {
    swap_general_with(s, t, n, SwapBranch::Odd)
}

/// The general swap with odd-branch end terms
/// `- f_s^dagger f_t - f_s f_t^dagger - f_s^dagger f_s f_t^dagger f_t`.
/// Kept for comparison: it is not a swap once the odd branch is active.
pub fn swap_general_as_printed<S: Scalar>(s: usize, t: usize, n: usize) -> Result<GateElement<S>> {
    swap_general_with(s, t, n, SwapBranch::OddAsPrinted)
}

/// `SWAP(s, t)` as a chain of adjacent swaps: `s, s+1, ..., t-1` then back
/// down to `s`.
pub fn swap_by_adjacent<S: Scalar>(s: usize, t: usize, n: usize) -> Result<GateElement<S>> {
    if s >= t {
        return Err(QraError::QubitOutOfRange { index: s, width: t });
    }
    let chain = (s..t)
        .chain((s..t - 1).rev())
        .map(|k| swap_adjacent(k, n))
        .collect::<Result<Vec<_>>>()?;
    serial(&chain)
}

/// Serial circuit; `gates[0]` is applied first, so it sits rightmost in the product.
pub fn serial<S: Scalar>(gates: &[GateElement<S>]) -> Result<GateElement<S>> {
    let first = gates.first().ok_or(QraError::EmptyCircuit)?;
    let mut element = first.element.clone();
    let mut support = first.support.clone();
    for g in &gates[1..] {
        element = g.element.product(&element)?;
        support.extend_from_slice(&g.support);
    }
    GateElement::new(element, support)
}

fn is_contiguous(q: &[usize]) -> bool {
    !q.is_empty() && q.windows(2).all(|w| w[1] == w[0] + 1)
}

/// Two-gate sign rule on bare Witt polynomials: right monomials with an odd
/// number of Witt letters are marked `b`, left monomials with an odd number of
/// `f_i` / `f_i^dagger f_i` factors are marked `a`; after multiplying,
/// `ab -> -1` and `a, b -> 1`.
pub fn two_gate_sign_rule<S: Scalar>(left: &WittPoly<S>, right: &WittPoly<S>) -> WittPoly<S> {
    let mut qubits = left.qubits().to_vec();
    qubits.extend_from_slice(right.qubits());
    let mut out = WittPoly::new(qubits);
    for (fa, ca) in left.terms() {
        let a = fa.iter().filter(|x| x.is_lower_or_occ()).count() % 2 == 1;
        for (fb, cb) in right.terms() {
            let b = fb.iter().filter(|x| x.is_odd()).count() % 2 == 1;
            let mut fs = fa.clone();
            fs.extend_from_slice(fb);
            let c = ca.clone() * cb.clone();
            out.add_term(fs, if a && b { -c } else { c });
        }
    }
    out
}

/// Tensor product of a gate on qubits `s..=k` and a gate on `k+1..=t`,
/// computed with the two-gate sign rule.
pub fn parallel2<S: Scalar>(left: &GateElement<S>, right: &GateElement<S>) -> Result<GateElement<S>> {
    if left.width() != right.width() {
        return Err(QraError::DimensionMismatch {
            left: left.width(),
            right: right.width(),
        });
    }
    let ok = is_contiguous(&left.support)
        && is_contiguous(&right.support)
        && left.support.last().map(|q| q + 1) == right.support.first().copied();
    if !ok {
        return Err(QraError::BadParallelSupports {
            left: left.support.clone(),
            right: right.support.clone(),
        });
    }
    let prod = two_gate_sign_rule(&left.local_poly()?, &right.local_poly()?);
    GateElement::from_local(prod, left.width())
}

/// Markers of the three-gate rule for one monomial triple.
///
/// Left: `a` for an odd count of `f` / `f^dagger f`. Middle: `b` for odd
/// letters only, `d` for odd `f` / `f^dagger f` only, `c` for both. Right: `e`
/// for odd letters.
pub fn three_gate_markers(left: &[WittFactor], middle: &[WittFactor], right: &[WittFactor]) -> String {
    let odd = |fs: &[WittFactor]| fs.iter().filter(|x| x.is_odd()).count() % 2 == 1;
    let lo = |fs: &[WittFactor]| fs.iter().filter(|x| x.is_lower_or_occ()).count() % 2 == 1;
    let mut m = String::new();
    if lo(left) {
        m.push('a');
    }
    match (odd(middle), lo(middle)) {
        (true, false) => m.push('b'),
        (true, true) => m.push('c'),
        (false, true) => m.push('d'),
        (false, false) => {}
    }
    if odd(right) {
        m.push('e');
    }
    m
}

/// Reassignment table of the three-gate rule.
pub const THREE_GATE_POSITIVE: [&str; 9] = ["a", "b", "c", "d", "e", "ad", "be", "abe", "ade"];
pub const THREE_GATE_NEGATIVE: [&str; 6] = ["ab", "ac", "ae", "ce", "de", "ace"];

pub fn three_gate_sign(markers: &str) -> Result<i8> {
    if markers.is_empty() || THREE_GATE_POSITIVE.contains(&markers) {
        Ok(1)
    } else if THREE_GATE_NEGATIVE.contains(&markers) {
        Ok(-1)
    } else {
        Err(QraError::UnlistedMarkers(markers.to_string()))
    }
}

/// Three-gate sign rule on bare single-qubit polynomials.
pub fn three_gate_sign_rule<S: Scalar>(
    left: &WittPoly<S>,
    middle: &WittPoly<S>,
    right: &WittPoly<S>,
) -> Result<WittPoly<S>> {
    let mut qubits = left.qubits().to_vec();
    qubits.extend_from_slice(middle.qubits());
    qubits.extend_from_slice(right.qubits());
    let mut out = WittPoly::new(qubits);
    for (fa, ca) in left.terms() {
        for (fb, cb) in middle.terms() {
            for (fc, cc) in right.terms() {
                let sign = three_gate_sign(&three_gate_markers(fa, fb, fc))?;
                let mut fs = fa.clone();
                fs.extend_from_slice(fb);
                fs.extend_from_slice(fc);
                let c = ca.clone() * cb.clone() * cc.clone();
                out.add_term(fs, if sign < 0 { -c } else { c });
            }
        }
    }
    Ok(out)
}

/// Signs the three-gate rule assigns to one marker product, against the signs
/// required by the tensor product, over all single-qubit monomial triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkerAudit {
    pub markers: String,
    /// Sign from the reassignment table, `None` if the product is unlisted.
    pub table: Option<i8>,
    /// Signs needed for the product to equal the tensor product.
    pub required: BTreeSet<i8>,
}

impl MarkerAudit {
    pub fn diverges(&self) -> bool {
        match self.table {
            Some(t) => self.required.iter().any(|&r| r != t),
            None => true,
        }
    }
}

/// Audits the three-gate table: for every triple `x1 x2 x3` of Witt factors
/// the bare product is compared with the dyad `|r1 r2 r3><c1 c2 c3|`.
pub fn three_gate_rule_audit() -> Result<Vec<MarkerAudit>> {
    type Q = crate::scalar::QSqrt2;
    let mut found: BTreeMap<String, BTreeSet<i8>> = BTreeMap::new();
    for &x1 in &WittFactor::ALL {
        for &x2 in &WittFactor::ALL {
            for &x3 in &WittFactor::ALL {
                let xs = [x1, x2, x3];
                let mut bare = WittPoly::<Q>::new(vec![1, 2, 3]);
                bare.add_term(xs.to_vec(), PseudoComplex::one());
                let bare = bare.to_multivector(3)?;
                let (mut row, mut col) = (0usize, 0usize);
                for x in xs {
                    let (r, c) = x.dyad();
                    row = row << 1 | usize::from(r);
                    col = col << 1 | usize::from(c);
                }
                let dyad = ket::<Q>(BitString::from_index(row, 3)?)?
                    .product(&bra(BitString::from_index(col, 3)?)?)?;
                let required = if dyad == bare {
                    1
                } else if dyad == -&bare {
                    -1
                } else {
                    return Err(QraError::SignRuleDivergence(format!(
                        "monomial {xs:?} is not a signed dyad"
                    )));
                };
                found
                    .entry(three_gate_markers(&[x1], &[x2], &[x3]))
                    .or_default()
                    .insert(required);
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|(markers, required)| MarkerAudit {
            table: three_gate_sign(&markers).ok(),
            markers,
            required,
        })
        .collect())
}

fn check_three_singles<S: Scalar>(gates: [&GateElement<S>; 3]) -> Result<()> {
    for (k, g) in gates.iter().enumerate() {
        if g.width() != 3 || g.support != [k + 1] {
            return Err(QraError::BadParallelSupports {
                left: vec![k + 1],
                right: g.support.clone(),
            });
        }
    }
    Ok(())
}

/// Three single-qubit gates on qubits 1, 2, 3 via the five-marker rule.
pub fn parallel3_markers<S: Scalar>(
    a: &GateElement<S>,
    b: &GateElement<S>,
    c: &GateElement<S>,
) -> Result<GateElement<S>> {
    check_three_singles([a, b, c])?;
    let prod = three_gate_sign_rule(&a.local_poly()?, &b.local_poly()?, &c.local_poly()?)?;
    GateElement::from_local(prod, 3)
}

/// Three single-qubit gates via the two-gate rule applied pairwise.
pub fn parallel3_iterated<S: Scalar>(
    a: &GateElement<S>,
    b: &GateElement<S>,
    c: &GateElement<S>,
) -> Result<GateElement<S>> {
    check_three_singles([a, b, c])?;
    parallel2(&parallel2(a, b)?, c)
}

/// `A (x) B (x) C` for single-qubit gates on qubits 1, 2, 3. Both the
/// five-marker route and the pairwise route are evaluated and must agree.
pub fn parallel3<S: Scalar>(
    a: &GateElement<S>,
    b: &GateElement<S>,
    c: &GateElement<S>,
) -> Result<GateElement<S>> {
    let marked = parallel3_markers(a, b, c)?;
    let iterated = parallel3_iterated(a, b, c)?;
    if !marked.same_operator(&iterated)? {
        return Err(QraError::SignRuleDivergence(
            "five-marker product differs from pairwise product".into(),
        ));
    }
    Ok(marked)
}

/// Element of the operator `Id (x) U (x) Id` with `U` placed on qubits
/// `first..first+k-1`, built from the dyads `|x><y| = ket(x) bra(y)`.
pub fn gate_from_matrix<S: Scalar>(u: &CMatrix<S>, first: usize, n: usize) -> Result<GateElement<S>> {
    let k = u.qubits().ok_or(QraError::BadMatrixShape {
        rows: u.dim(),
        cols: u.dim(),
    })?;
    check_qubit(first, n)?;
    if k == 0 {
        return Err(QraError::BadMatrixShape { rows: 1, cols: 1 });
    }
    check_qubit(first + k - 1, n)?;
    u.check_unitary()?;
    let full = CMatrix::kron_all(&[
        CMatrix::identity(1 << (first - 1)),
        u.clone(),
        CMatrix::identity(1 << (n + 1 - first - k)),
    ]);
    GateElement::new(operator_from_matrix(&full)?, (first..first + k).collect())
}

/// `sum_{x,y} M_xy ket(x) bra(y)` for any `2^n x 2^n` matrix.
pub fn operator_from_matrix<S: Scalar>(m: &CMatrix<S>) -> Result<Multivector<S>> {
    let n = m.qubits().ok_or(QraError::BadMatrixShape {
        rows: m.dim(),
        cols: m.dim(),
    })?;
    // |x><y| = (f^dagger)^x I f^y, with I computed once
    let idem = base_idempotent::<S>(n)?;
    let (f, fd) = witt_generators::<S>(n)?;
    let mut raised = Vec::with_capacity(1 << n);
    let mut lowered = Vec::with_capacity(1 << n);
    for bits in BitString::all(n) {
        let mut up = Multivector::one(n);
        let mut down = Multivector::one(n);
        for i in (1..=n).filter(|&i| bits.bit(i)) {
            up = up.product(&fd[i - 1])?;
        }
        for i in (1..=n).rev().filter(|&i| bits.bit(i)) {
            down = down.product(&f[i - 1])?;
        }
        raised.push(up.product(&idem)?);
        lowered.push(down);
    }
    let mut element = Multivector::zero(n);
    for (x, kx) in raised.iter().enumerate() {
        for (y, fy) in lowered.iter().enumerate() {
            let c = m.get(x, y);
            if !c.is_zero() {
                element = element.try_add(&kx.product(fy)?.scale(c))?;
            }
        }
    }
    Ok(element)
}

/// Two-qubit gate on an arbitrary ordered pair `(a, b)`, built from its
/// adjacent form on `(s, s+1)` by swap conjugation.
pub fn on_pair<S, F>(a: usize, b: usize, n: usize, adjacent: F) -> Result<GateElement<S>>
where
    S: Scalar,
    F: Fn(usize) -> Result<GateElement<S>>,
{
    check_qubit(a, n)?;
    check_qubit(b, n)?;
    if a == b {
        return Err(QraError::BadParallelSupports {
            left: vec![a],
            right: vec![b],
        });
    }
    if b == a + 1 {
        return adjacent(a);
    }
    if a < b {
        let sw = swap_general(a + 1, b, n)?;
        return serial(&[sw.clone(), adjacent(a)?, sw]);
    }
    let sw = swap_general(b, a, n)?;
    let inner = on_pair(b, a, n, adjacent)?;
    serial(&[sw.clone(), inner, sw])
}

/// The three commuting blocks of the pairwise entangler on three qubits:
/// `J(g12) (x) Id`, `Id (x) J(g23)` and `J(g13)` realised as
/// `(SWAP (x) Id)(Id (x) J(g13))(SWAP (x) Id)`.
pub fn entangler_blocks<S: Scalar>(
    g12: &Angle,
    g13: &Angle,
    g23: &Angle,
) -> Result<[GateElement<S>; 3]> {
    let a = j_entangler(g12, 1, 3)?;
    let b = j_entangler(g23, 2, 3)?;
    let sw = swap_adjacent(1, 3)?;
    let c = serial(&[sw.clone(), j_entangler(g13, 2, 3)?, sw])?;
    Ok([a, b, c])
}

/// `J2(g12, g13, g23) = (SWAP(x)Id)(Id(x)J(g13))(SWAP(x)Id)(Id(x)J(g23))(J(g12)(x)Id)`.
pub fn j2_block<S: Scalar>(g12: &Angle, g13: &Angle, g23: &Angle) -> Result<GateElement<S>> {
    let a = j_entangler(g12, 1, 3)?;
    let b = j_entangler(g23, 2, 3)?;
    let sw = swap_adjacent(1, 3)?;
    let c = j_entangler(g13, 2, 3)?;
    serial(&[a, b, sw.clone(), c, sw])
}

/// Three-qubit entangler: identity for flag 0, the GHZ circuit
/// `(Id(x)CNOT)(CNOT(x)Id)(H(x)Id(x)Id)` for flag 1.
pub fn j3_gate<S: Scalar>(flag: u8) -> Result<GateElement<S>> {
    match flag {
        0 => parallel3(&id_gate(1, 3)?, &id_gate(2, 3)?, &id_gate(3, 3)?),
        1 => serial(&[hadamard(3)?, cnot_adjacent(1, 3)?, cnot_adjacent(2, 3)?]),
        other => Err(QraError::BadEntanglerFlag(other)),
    }
}

/// `U(p1) (x) U(p2)` on a two-qubit register.
pub fn strategies2<S: Scalar>(p1: &Angle, p2: &Angle) -> Result<GateElement<S>> {
    parallel2(&strategy_u_on(1, p1, 2)?, &strategy_u_on(2, p2, 2)?)
}

/// `U(p1) (x) U(p2) (x) U(p3)` on a three-qubit register.
pub fn strategies3<S: Scalar>(p1: &Angle, p2: &Angle, p3: &Angle) -> Result<GateElement<S>> {
    parallel3(
        &strategy_u_on(1, p1, 3)?,
        &strategy_u_on(2, p2, 3)?,
        &strategy_u_on(3, p3, 3)?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::register::amplitude;
    use crate::scalar::QSqrt2;

    type Q = QSqrt2;

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn apply_to(g: &GateElement<Q>, s: &str) -> Vec<PseudoComplex<Q>> {
        let out = g.apply(&RegisterState::basis(bits(s)).unwrap()).unwrap();
        BitString::all(s.len()).map(|b| amplitude(b, &out).unwrap()).collect()
    }

    fn basis_vec(s: &str) -> Vec<PseudoComplex<Q>> {
        let b = bits(s);
        BitString::all(s.len())
            .map(|x| if x == b { PseudoComplex::one() } else { PseudoComplex::zero() })
            .collect()
    }

    #[test]
    fn identity_fixes_kets() {
        for n in 1..=3 {
            for i in 1..=n {
                let g = id_gate::<Q>(i, n).unwrap();
                assert_eq!(g.element(), &Multivector::one(n));
            }
        }
    }

    #[test]
    fn hadamard_on_ground() {
        let h = hadamard::<Q>(1).unwrap();
        let r = re(Q::frac_1_sqrt2().unwrap());
        assert_eq!(apply_to(&h, "0"), vec![r.clone(), r]);
        assert!(serial(&[h.clone(), h]).unwrap().element() == &Multivector::one(1));
    }

    #[test]
    fn strategy_at_quarter_turn() {
        let u = strategy_u::<Q>(&Angle::pi(1, 2)).unwrap();
        assert_eq!(apply_to(&u, "0"), vec![PseudoComplex::zero(), int(-1)]);
        let u0 = strategy_u::<Q>(&Angle::pi(0, 1)).unwrap();
        assert_eq!(u0.element(), &Multivector::one(1));
    }

    #[test]
    fn entangler_identity_and_bell() {
        let j0 = j_entangler::<Q>(&Angle::pi(0, 1), 1, 2).unwrap();
        assert_eq!(j0.element(), &Multivector::one(2));
        let j = j_entangler::<Q>(&Angle::pi(1, 2), 1, 2).unwrap();
        let h = Q::frac_1_sqrt2().unwrap();
        assert_eq!(
            apply_to(&j, "00"),
            vec![re(h.clone()), PseudoComplex::zero(), PseudoComplex::zero(), PseudoComplex::iota(h)]
        );
    }

    #[test]
    fn cnot_and_swap_on_kets() {
        let cx = cnot_adjacent::<Q>(1, 2).unwrap();
        assert_eq!(apply_to(&cx, "00"), basis_vec("00"));
        assert_eq!(apply_to(&cx, "10"), basis_vec("11"));
        let sw = swap_adjacent::<Q>(1, 2).unwrap();
        assert_eq!(apply_to(&sw, "01"), basis_vec("10"));
        assert_eq!(apply_to(&sw, "10"), basis_vec("01"));
        assert_eq!(apply_to(&sw, "11"), basis_vec("11"));
        let sw23 = swap_adjacent::<Q>(2, 3).unwrap();
        assert_eq!(apply_to(&sw23, "010"), basis_vec("001"));
    }

    #[test]
    fn general_swap_examples() {
        assert_eq!(
            swap_general::<Q>(2, 3, 4).unwrap(),
            swap_adjacent::<Q>(2, 4).unwrap()
        );
        let s13 = swap_general::<Q>(1, 3, 3).unwrap();
        assert_eq!(apply_to(&s13, "100"), basis_vec("001"));
        assert_eq!(apply_to(&s13, "110"), basis_vec("011"));
        assert_eq!(apply_to(&s13, "111"), basis_vec("111"));
    }

    #[test]
    fn printed_general_swap_sign_defect() {
        let printed = swap_general_as_printed::<Q>(1, 3, 3).unwrap();
        // odd middle parity, both ends occupied: the printed form flips the sign
        let mut minus = basis_vec("111");
        minus.iter_mut().for_each(|z| *z = -z.clone());
        assert_eq!(apply_to(&printed, "111"), minus);
        // even middle parity is unaffected
        assert_eq!(apply_to(&printed, "100"), basis_vec("001"));
    }

    #[test]
    fn serial_single_is_identity_op() {
        let h = hadamard::<Q>(2).unwrap();
        assert_eq!(serial(std::slice::from_ref(&h)).unwrap(), h);
        assert!(matches!(serial::<Q>(&[]), Err(QraError::EmptyCircuit)));
    }

    #[test]
    fn parallel_with_right_identity_is_plain_product() {
        let j = j_entangler::<Q>(&Angle::pi(1, 2), 2, 3).unwrap();
        let p = parallel2(&id_gate(1, 3).unwrap(), &j).unwrap();
        assert_eq!(p.element(), j.element());
    }

    #[test]
    fn id_cnot_matches_worked_expansion() {
        // Id(1) (x) CNOT(2,3): the f1^dagger f1 half flips the odd terms.
        let p = parallel2(&id_gate::<Q>(1, 3).unwrap(), &cnot_adjacent::<Q>(2, 3).unwrap()).unwrap();
        let mut expected = WittPoly::new(vec![1, 2, 3]);
        for (fs, c) in [
            ([Vac, Vac, Vac], 1),
            ([Vac, Vac, Occ], 1),
            ([Vac, Occ, Lower], -1),
            ([Vac, Occ, Raise], -1),
            ([Occ, Vac, Vac], 1),
            ([Occ, Vac, Occ], 1),
            ([Occ, Occ, Lower], 1),
            ([Occ, Occ, Raise], 1),
        ] {
            expected.add_term(fs.to_vec(), int(c));
        }
        assert_eq!(p.element(), &expected.to_multivector(3).unwrap());
        assert_eq!(p.element(), cnot_adjacent::<Q>(2, 3).unwrap().element());
    }

    #[test]
    fn j3_identity_expansion() {
        let j30 = j3_gate::<Q>(0).unwrap();
        let mut expected = WittPoly::new(vec![1, 2, 3]);
        for a in [Vac, Occ] {
            for b in [Vac, Occ] {
                for c in [Vac, Occ] {
                    expected.add_term(vec![a, b, c], int(1));
                }
            }
        }
        assert_eq!(j30.element(), &expected.to_multivector(3).unwrap());
        assert!(matches!(j3_gate::<Q>(2), Err(QraError::BadEntanglerFlag(2))));
    }

    #[test]
    fn ghz_from_j3() {
        let g = j3_gate::<Q>(1).unwrap();
        let h = re(Q::frac_1_sqrt2().unwrap());
        let amps = apply_to(&g, "000");
        assert_eq!(amps[0], h);
        assert_eq!(amps[7], h);
        assert!(amps[1..7].iter().all(PseudoComplex::is_zero));
    }

    #[test]
    fn three_gate_table_matches_dyads() {
        let audit = three_gate_rule_audit().unwrap();
        assert_eq!(audit.len(), 16);
        assert!(audit.iter().all(|a| !a.diverges()), "{audit:?}");
    }

    #[test]
    fn unlisted_markers_error() {
        assert!(matches!(three_gate_sign("bd"), Err(QraError::UnlistedMarkers(_))));
        assert_eq!(three_gate_sign("ace").unwrap(), -1);
        assert_eq!(three_gate_sign("").unwrap(), 1);
    }

    #[test]
    fn parallel_rejects_bad_supports() {
        let a = id_gate::<Q>(1, 3).unwrap();
        let c = id_gate::<Q>(3, 3).unwrap();
        assert!(matches!(parallel2(&a, &c), Err(QraError::BadParallelSupports { .. })));
        assert!(matches!(parallel2(&c, &a), Err(QraError::BadParallelSupports { .. })));
    }

    #[test]
    fn gate_from_matrix_rejects_bad_input() {
        let m = CMatrix::<Q>::from_real_ratios(&[&[(1, 1), (1, 1)], &[(0, 1), (1, 1)]]).unwrap();
        assert!(matches!(gate_from_matrix(&m, 1, 1), Err(QraError::NotUnitary(_))));
        let m3 = CMatrix::<Q>::identity(3);
        assert!(matches!(gate_from_matrix(&m3, 1, 2), Err(QraError::BadMatrixShape { .. })));
        assert!(gate_from_matrix(&CMatrix::<Q>::identity(4), 2, 2).is_err());
    }
}
