use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::{BigRational, Rational64};
use num_traits::ToPrimitive;

use super::{Angle, QSqrt2, Scalar};
use crate::error::{QraError, Result};

/// A scaled named angle, e.g. `g12/2`. Each distinct `AngleVar` owns its own
/// pair of indeterminates `c = cos(var)` and `s = sin(var)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AngleVar {
    pub name: String,
    pub scale: Rational64,
}

impl AngleVar {
    pub fn new(name: impl Into<String>, scale: Rational64) -> Self {
        AngleVar {
            name: name.into(),
            scale,
        }
    }

    fn value(&self, bound: f64) -> f64 {
        self.scale.to_f64().unwrap_or(f64::NAN) * bound
    }
}

impl fmt::Display for AngleVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let angle = Angle::Symbol {
            name: self.name.clone(),
            scale: self.scale,
        };
        write!(f, "{angle}")
    }
}

/// `(var, cos power, sin power)`, sorted by var with no zero-power entries.
type Monomial = Vec<(AngleVar, u32, u32)>;

/// Polynomial in `cos`/`sin` indeterminates with exact coefficients.
///
/// Canonical form: every sin power is at most one (rewritten through
/// `s^2 = 1 - c^2`), no zero coefficients stored. Every arithmetic operation
/// returns a canonical polynomial, so `is_zero` is an exact identity test.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TrigPoly {
    terms: BTreeMap<Monomial, QSqrt2>,
}

impl TrigPoly {
    pub fn constant(c: QSqrt2) -> Self {
        let mut p = TrigPoly::default();
        p.accumulate(Vec::new(), c);
        p
    }

    pub fn cos_of(var: AngleVar) -> Self {
        Self::single(var, 1, 0)
    }

    pub fn sin_of(var: AngleVar) -> Self {
        Self::single(var, 0, 1)
    }

    fn single(var: AngleVar, c: u32, s: u32) -> Self {
        let mut p = TrigPoly::default();
        p.accumulate(vec![(var, c, s)], QSqrt2::one());
        p
    }

    /// Builds a polynomial from arbitrary `(var, cos power, sin power)` products,
    /// then canonicalizes it.
    pub fn from_raw_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<(AngleVar, u32, u32)>, QSqrt2)>,
    {
        let mut raw = TrigPoly::default();
        for (mono, coef) in terms {
            let mut merged: BTreeMap<AngleVar, (u32, u32)> = BTreeMap::new();
            for (v, c, s) in mono {
                let e = merged.entry(v).or_insert((0, 0));
                e.0 += c;
                e.1 += s;
            }
            let mono: Monomial = merged
                .into_iter()
                .filter(|(_, (c, s))| *c + *s > 0)
                .map(|(v, (c, s))| (v, c, s))
                .collect();
            raw.accumulate(mono, coef);
        }
        trig_canonicalize(&raw)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn vars(&self) -> BTreeSet<AngleVar> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _, _)| v.clone()))
            .collect()
    }

    /// Names of the underlying (unscaled) symbols.
    pub fn symbol_names(&self) -> BTreeSet<String> {
        self.vars().into_iter().map(|v| v.name).collect()
    }

    pub fn is_canonical(&self) -> bool {
        self.terms
            .iter()
            .all(|(m, c)| !c.is_zero() && m.iter().all(|(_, cp, sp)| *sp <= 1 && cp + sp > 0))
    }

    /// Numeric evaluation with every symbol bound by `binding(name)`.
    pub fn eval<F>(&self, binding: F) -> Option<f64>
    where
        F: Fn(&str) -> Option<f64>,
    {
        let mut total = 0.0;
        for (mono, coef) in &self.terms {
            let mut term = coef.to_f64()?;
            for (var, c, s) in mono {
                let x = var.value(binding(&var.name)?);
                term *= x.cos().powi(*c as i32) * x.sin().powi(*s as i32);
            }
            total += term;
        }
        Some(total)
    }

    fn accumulate(&mut self, mono: Monomial, coef: QSqrt2) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coef;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }
}

fn multiply_monomials(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0.clone(), a[i].1 + b[j].1, a[i].2 + b[j].2));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * i64::from(n - i) / i64::from(i + 1))
}

/// Rewrites one monomial into canonical monomials (sin power <= 1) with
/// integer multiplicities.
fn reduce_monomial(mono: &Monomial) -> Vec<(Monomial, i64)> {
    let mut acc: Vec<(Monomial, i64)> = vec![(Vec::new(), 1)];
    for (var, c, s) in mono {
        let q = s / 2;
        let s_left = s % 2;
        let mut next = Vec::with_capacity(acc.len() * (q as usize + 1));
        for (m, k) in &acc {
            // s^(2q) = (1 - c^2)^q = sum_j C(q,j) (-1)^j c^(2j)
            for j in 0..=q {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                let cp = c + 2 * j;
                let mut m2 = m.clone();
                if cp + s_left > 0 {
                    m2.push((var.clone(), cp, s_left));
                }
                next.push((m2, k * sign * binomial(q, j)));
            }
        }
        acc = next;
    }
    acc
}

/// Canonical form: every `sin^k` with `k >= 2` rewritten through the
/// Pythagorean identity, like terms merged, zero terms dropped.
pub fn trig_canonicalize(p: &TrigPoly) -> TrigPoly {
    let mut out = TrigPoly::default();
    for (mono, coef) in &p.terms {
        for (m, k) in reduce_monomial(mono) {
            out.accumulate(m, coef.clone() * QSqrt2::ratio(k, 1));
        }
    }
    out
}

impl TrigPoly {
    pub fn canonicalize(&self) -> TrigPoly {
        trig_canonicalize(self)
    }
}

impl Add for TrigPoly {
    type Output = TrigPoly;
    fn add(mut self, o: TrigPoly) -> TrigPoly {
        for (m, c) in o.terms {
            self.accumulate(m, c);
        }
        self
    }
}

impl Sub for TrigPoly {
    type Output = TrigPoly;
    fn sub(self, o: TrigPoly) -> TrigPoly {
        self + (-o)
    }
}

impl Neg for TrigPoly {
    type Output = TrigPoly;
    fn neg(self) -> TrigPoly {
        TrigPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for TrigPoly {
    type Output = TrigPoly;
    fn mul(self, o: TrigPoly) -> TrigPoly {
        let mut out = TrigPoly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let prod = multiply_monomials(ma, mb);
                let coef = ca.clone() * cb.clone();
                if prod.iter().all(|(_, _, s)| *s <= 1) {
                    out.accumulate(prod, coef);
                } else {
                    for (m, k) in reduce_monomial(&prod) {
                        out.accumulate(m, coef.clone() * QSqrt2::ratio(k, 1));
                    }
                }
            }
        }
        out
    }
}

impl Scalar for TrigPoly {
    const RING: &'static str = "symbolic";

    fn zero() -> Self {
        TrigPoly::default()
    }

    fn one() -> Self {
        TrigPoly::constant(QSqrt2::one())
    }

    fn from_rational(r: &BigRational) -> Self {
        TrigPoly::constant(QSqrt2::rational(r.clone()))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn to_f64(&self) -> Option<f64> {
        match self.terms.len() {
            0 => Some(0.0),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                if m.is_empty() {
                    c.to_f64()
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    fn frac_1_sqrt2() -> Result<Self> {
        QSqrt2::frac_1_sqrt2().map(TrigPoly::constant)
    }

    fn cos(angle: &Angle) -> Result<Self> {
        match angle {
            Angle::Symbol { name, scale } => Ok(TrigPoly::cos_of(AngleVar::new(name.clone(), *scale))),
            _ => QSqrt2::cos(angle).map(TrigPoly::constant).map_err(relabel),
        }
    }

    fn sin(angle: &Angle) -> Result<Self> {
        match angle {
            Angle::Symbol { name, scale } => Ok(TrigPoly::sin_of(AngleVar::new(name.clone(), *scale))),
            _ => QSqrt2::sin(angle).map(TrigPoly::constant).map_err(relabel),
        }
    }
}

fn relabel(e: QraError) -> QraError {
    match e {
        QraError::UnrepresentableAngle { angle, .. } => QraError::UnrepresentableAngle {
            angle,
            ring: TrigPoly::RING,
        },
        other => other,
    }
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (mono, coef)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if mono.is_empty() || *coef != QSqrt2::one() {
                factors.push(format!("({coef})"));
            }
            for (var, c, s) in mono {
                match c {
                    0 => {}
                    1 => factors.push(format!("cos({var})")),
                    c => factors.push(format!("cos({var})^{c}")),
                }
                if *s == 1 {
                    factors.push(format!("sin({var})"));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
