//! The two- and three-player quantization protocols, quantum Shapley values,
//! the two-player closed form and parameter sweeps.

use std::fmt::Write as _;
use std::io;

use num_rational::{BigRational, Rational64};
use rayon::prelude::*;

use crate::error::{QraError, Result};
use crate::game::{restrict, shapley, Coalition, ValueFunction};
use crate::gates::{entangler_blocks, j3_gate, j_entangler, serial, strategies2, strategies3};
use crate::register::{BitString, Measurement, ProbabilityTable, RegisterState};
use crate::scalar::{Angle, Scalar};

fn range_warning(name: &str, a: &Angle) -> Option<String> {
    (!a.in_protocol_range()).then(|| format!("{name} = {a} lies outside [0, pi/2]"))
}

/// `(N, v, gamma, p1, p2)` protocol parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPlayerConfig {
    pub gamma: Angle,
    pub p1: Angle,
    pub p2: Angle,
}

impl TwoPlayerConfig {
    pub fn new(gamma: Angle, p1: Angle, p2: Angle) -> Self {
        TwoPlayerConfig { gamma, p1, p2 }
    }

    pub fn range_warnings(&self) -> Vec<String> {
        [("gamma", &self.gamma), ("p1", &self.p1), ("p2", &self.p2)]
            .into_iter()
            .filter_map(|(n, a)| range_warning(n, a))
            .collect()
    }
}

/// `(N, v, gamma123, gamma12, gamma13, gamma23, p1, p2, p3)` protocol parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreePlayerConfig {
    pub gamma123: u8,
    pub gamma12: Angle,
    pub gamma13: Angle,
    pub gamma23: Angle,
    pub p1: Angle,
    pub p2: Angle,
    pub p3: Angle,
}

impl ThreePlayerConfig {
    /// All pairwise entanglement and strategies zero.
    pub fn zero(gamma123: u8) -> Self {
        let z = Angle::pi(0, 1);
        ThreePlayerConfig {
            gamma123,
            gamma12: z.clone(),
            gamma13: z.clone(),
            gamma23: z.clone(),
            p1: z.clone(),
            p2: z.clone(),
            p3: z,
        }
    }

    fn named(&self) -> [(&'static str, &Angle); 6] {
        [
            ("gamma12", &self.gamma12),
            ("gamma13", &self.gamma13),
            ("gamma23", &self.gamma23),
            ("p1", &self.p1),
            ("p2", &self.p2),
            ("p3", &self.p3),
        ]
    }

    pub fn range_warnings(&self) -> Vec<String> {
        self.named()
            .into_iter()
            .filter_map(|(n, a)| range_warning(n, a))
            .collect()
    }
}

/// `J(gamma) |00>`.
pub fn entangled_state_2p<S: Scalar>(gamma: &Angle) -> Result<RegisterState<S>> {
    j_entangler(gamma, 1, 2)?.apply(&RegisterState::ground(2)?)
}

/// `(U(p1) (x) U(p2)) J(gamma) |00>`.
pub fn final_state_2p<S: Scalar>(cfg: &TwoPlayerConfig) -> Result<RegisterState<S>> {
    strategies2(&cfg.p1, &cfg.p2)?.apply(&entangled_state_2p(&cfg.gamma)?)
}

/// `J3(gamma123) J2(gamma12, gamma13, gamma23) |000>`.
pub fn entangled_state_3p<S: Scalar>(cfg: &ThreePlayerConfig) -> Result<RegisterState<S>> {
    let j3 = j3_gate(cfg.gamma123)?;
    let mut psi = RegisterState::ground(3)?;
    // the three blocks in circuit order: J12, then J23, then the swapped J13
    let [a, b, c] = entangler_blocks(&cfg.gamma12, &cfg.gamma13, &cfg.gamma23)?;
    for g in [a, b, c, j3] {
        psi = g.apply(&psi)?;
    }
    Ok(psi)
}

/// `(U(p1) (x) U(p2) (x) U(p3)) J3 J2 |000>`.
pub fn final_state_3p<S: Scalar>(cfg: &ThreePlayerConfig) -> Result<RegisterState<S>> {
    strategies3(&cfg.p1, &cfg.p2, &cfg.p3)?.apply(&entangled_state_3p(cfg)?)
}

/// Whole protocol as a single gate element (used for oracle comparisons).
pub fn protocol_gate_3p<S: Scalar>(cfg: &ThreePlayerConfig) -> Result<crate::gates::GateElement<S>> {
    let [a, b, c] = entangler_blocks(&cfg.gamma12, &cfg.gamma13, &cfg.gamma23)?;
    serial(&[a, b, c, j3_gate(cfg.gamma123)?, strategies3(&cfg.p1, &cfg.p2, &cfg.p3)?])
}

/// `phi_i(S, v_S)` for every coalition `S` and player `i`, in original labels
/// (zero when `i` is not in `S`).
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedShapley {
    players: usize,
    table: Vec<Vec<BigRational>>,
}

impl RestrictedShapley {
    pub fn new(v: &ValueFunction) -> Result<Self> {
        let n = v.players();
        let mut table = vec![vec![BigRational::default(); n]; 1 << n];
        for s in Coalition::all(n).filter(|s| !s.is_empty()) {
            let r = restrict(v, s)?;
            for (k, x) in shapley(&r.game).payoffs().iter().enumerate() {
                table[s.0 as usize][r.members[k] - 1] = x.clone();
            }
        }
        Ok(RestrictedShapley { players: n, table })
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn value(&self, s: Coalition, player: usize) -> &BigRational {
        &self.table[s.0 as usize][player - 1]
    }

    /// `phi~_i = sum_{S containing i} p(S) phi_i(S, v_S)`.
    pub fn apply<S: Scalar>(&self, probs: &ProbabilityTable<S>) -> Result<Vec<S>> {
        if probs.width() != self.players {
            return Err(QraError::DimensionMismatch {
                left: self.players,
                right: probs.width(),
            });
        }
        let mut out = vec![S::zero(); self.players];
        for (bits, p) in probs.iter() {
            let row = &self.table[bits.to_player_mask() as usize];
            for (acc, x) in out.iter_mut().zip(row) {
                if *x != BigRational::default() {
                    *acc = acc.clone() + p.clone() * S::from_rational(x);
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumShapleyResult<S> {
    pub probabilities: ProbabilityTable<S>,
    /// `phi~_i`, index 0 is player 1.
    pub allocation: Vec<S>,
}

impl<S: Scalar> QuantumShapleyResult<S> {
    pub fn total(&self) -> S {
        self.allocation.iter().cloned().fold(S::zero(), |a, b| a + b)
    }

    /// `sum_S p(S) v(S)`.
    pub fn expected_worth(&self, v: &ValueFunction) -> S {
        self.probabilities.iter().fold(S::zero(), |acc, (bits, p)| {
            let w = v.worth(Coalition(bits.to_player_mask()));
            acc + p.clone() * S::from_rational(w)
        })
    }
}

/// Quantum Shapley value from measured coalition probabilities.
pub fn quantum_shapley<S: Scalar>(
    v: &ValueFunction,
    probs: ProbabilityTable<S>,
) -> Result<QuantumShapleyResult<S>> {
    let allocation = RestrictedShapley::new(v)?.apply(&probs)?;
    Ok(QuantumShapleyResult {
        probabilities: probs,
        allocation,
    })
}

/// Runs the two-player protocol and evaluates `phi~`.
pub fn evaluate_2p<S: Scalar>(v: &ValueFunction, cfg: &TwoPlayerConfig) -> Result<QuantumShapleyResult<S>> {
    check_players(v, 2)?;
    let psi = final_state_2p::<S>(cfg)?;
    quantum_shapley(v, Measurement::new(2)?.probabilities(&psi)?)
}

/// Runs the three-player protocol and evaluates `phi~`.
pub fn evaluate_3p<S: Scalar>(v: &ValueFunction, cfg: &ThreePlayerConfig) -> Result<QuantumShapleyResult<S>> {
    check_players(v, 3)?;
    let psi = final_state_3p::<S>(cfg)?;
    quantum_shapley(v, Measurement::new(3)?.probabilities(&psi)?)
}

fn check_players(v: &ValueFunction, n: usize) -> Result<()> {
    if v.players() != n {
        return Err(QraError::DimensionMismatch {
            left: n,
            right: v.players(),
        });
    }
    Ok(())
}

fn cos_sq<S: Scalar>(a: &Angle) -> Result<S> {
    // cos^2 x = (1 + cos 2x) / 2, exact wherever 2x is
    Ok(S::from_ratio(1, 2) * (S::one() + S::cos(&a.scaled(Rational64::from_integer(2)))?))
}

fn sin_sq<S: Scalar>(a: &Angle) -> Result<S> {
    Ok(S::from_ratio(1, 2) * (S::one() - S::cos(&a.scaled(Rational64::from_integer(2)))?))
}

/// Coefficients of the two-player closed form: `phi~_i = alpha_i v({i}) + beta phi_i(N, v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormCoefficients<S> {
    pub alpha1: S,
    pub alpha2: S,
    pub beta: S,
}

pub fn closed_form_coefficients<S: Scalar>(cfg: &TwoPlayerConfig) -> Result<ClosedFormCoefficients<S>> {
    let half = cfg.gamma.half();
    let (cg, sg) = (cos_sq::<S>(&half)?, sin_sq::<S>(&half)?);
    let (c1, s1) = (cos_sq::<S>(&cfg.p1)?, sin_sq::<S>(&cfg.p1)?);
    let (c2, s2) = (cos_sq::<S>(&cfg.p2)?, sin_sq::<S>(&cfg.p2)?);
    Ok(ClosedFormCoefficients {
        alpha1: cg.clone() * s1.clone() * c2.clone() + sg.clone() * c1.clone() * s2.clone(),
        alpha2: cg.clone() * c1.clone() * s2.clone() + sg.clone() * s1.clone() * c2.clone(),
        beta: cg * s1 * s2 + sg * c1 * c2,
    })
}

/// `phi_i(N, v) = v({i})/2 + (v(N) - v(N \ {i}))/2` for two players.
pub fn two_player_shapley(v: &ValueFunction, i: usize) -> BigRational {
    let n = Coalition::grand(2);
    let half = BigRational::new(1.into(), 2.into());
    (v.worth(Coalition::EMPTY.with(i)) + v.worth(n) - v.worth(n.without(i))) * half
}

/// Two-player quantum Shapley value from the closed-form expressions.
pub fn closed_form_2p<S: Scalar>(v: &ValueFunction, cfg: &TwoPlayerConfig) -> Result<Vec<S>> {
    check_players(v, 2)?;
    let k = closed_form_coefficients::<S>(cfg)?;
    let term = |alpha: S, i: usize| {
        alpha * S::from_rational(v.worth(Coalition::EMPTY.with(i)))
            + k.beta.clone() * S::from_rational(&two_player_shapley(v, i))
    };
    Ok(vec![term(k.alpha1.clone(), 1), term(k.alpha2.clone(), 2)])
}

/// Base configuration of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub enum ProtocolConfig {
    Two(TwoPlayerConfig),
    Three(ThreePlayerConfig),
}

impl ProtocolConfig {
    pub fn players(&self) -> usize {
        match self {
            ProtocolConfig::Two(_) => 2,
            ProtocolConfig::Three(_) => 3,
        }
    }

    pub fn parameter_names(&self) -> &'static [&'static str] {
        match self {
            ProtocolConfig::Two(_) => &["gamma", "p1", "p2"],
            ProtocolConfig::Three(_) => &["gamma12", "gamma13", "gamma23", "p1", "p2", "p3"],
        }
    }

    fn slot(&mut self, name: &str) -> Result<&mut Angle> {
        Ok(match (self, name) {
            (ProtocolConfig::Two(c), "gamma") => &mut c.gamma,
            (ProtocolConfig::Two(c), "p1") => &mut c.p1,
            (ProtocolConfig::Two(c), "p2") => &mut c.p2,
            (ProtocolConfig::Three(c), "gamma12") => &mut c.gamma12,
            (ProtocolConfig::Three(c), "gamma13") => &mut c.gamma13,
            (ProtocolConfig::Three(c), "gamma23") => &mut c.gamma23,
            (ProtocolConfig::Three(c), "p1") => &mut c.p1,
            (ProtocolConfig::Three(c), "p2") => &mut c.p2,
            (ProtocolConfig::Three(c), "p3") => &mut c.p3,
            _ => return Err(QraError::UnknownParameter(name.to_string())),
        })
    }

    pub fn set(&mut self, name: &str, value: Angle) -> Result<()> {
        *self.slot(name)? = value;
        Ok(())
    }

    pub fn range_warnings(&self) -> Vec<String> {
        match self {
            ProtocolConfig::Two(c) => c.range_warnings(),
            ProtocolConfig::Three(c) => c.range_warnings(),
        }
    }

    pub fn evaluate<S: Scalar>(&self, v: &ValueFunction) -> Result<QuantumShapleyResult<S>> {
        match self {
            ProtocolConfig::Two(c) => evaluate_2p(v, c),
            ProtocolConfig::Three(c) => evaluate_3p(v, c),
        }
    }
}

/// Grid sweep request: `grid` evenly spaced points over `[0, pi/2]` per axis.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: ProtocolConfig,
    pub axes: Vec<String>,
    pub grid: usize,
}

/// Default points per axis.
pub const DEFAULT_GRID: usize = 101;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub params: Vec<f64>,
    pub probabilities: Vec<f64>,
    pub payoffs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub axes: Vec<String>,
    pub players: usize,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn header(&self) -> String {
        let mut cols: Vec<String> = self.axes.clone();
        cols.extend(BitString::all(self.players).map(|b| format!("p_{b}")));
        cols.extend((1..=self.players).map(|i| format!("phi{i}")));
        cols.join(",")
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header();
        s.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r
                .params
                .iter()
                .chain(&r.probabilities)
                .chain(&r.payoffs)
                .map(|x| format!("{x}"))
                .collect();
            let _ = writeln!(s, "{}", cells.join(","));
        }
        s
    }

    pub fn write_csv(&self, out: &mut impl io::Write) -> io::Result<()> {
        out.write_all(self.to_csv().as_bytes())
    }
}

/// The `k`-th of `grid` points on `[0, pi/2]`, as an exact multiple of pi.
pub fn grid_angle(k: usize, grid: usize) -> Angle {
    Angle::pi(k as i64, 2 * (grid as i64 - 1))
}

/// Evaluates the protocol on every grid point (row-major in axis order) in
/// the float ring. Rows are computed in parallel and returned in order.
pub fn sweep(spec: &SweepSpec, v: &ValueFunction) -> Result<SweepTable> {
    if spec.axes.is_empty() || spec.axes.len() > 2 {
        return Err(QraError::InvalidSweep("one or two axes are required".into()));
    }
    if spec.axes.len() == 2 && spec.axes[0] == spec.axes[1] {
        return Err(QraError::InvalidSweep("axes must differ".into()));
    }
    if spec.grid < 2 {
        return Err(QraError::InvalidSweep("grid needs at least 2 points".into()));
    }
    let n = spec.base.players();
    check_players(v, n)?;
    for a in &spec.axes {
        spec.base.clone().set(a, Angle::pi(0, 1))?;
    }
    let table = RestrictedShapley::new(v)?;
    let meas = Measurement::<f64>::new(n)?;
    let strategies_only = spec.axes.iter().all(|a| a.starts_with('p'));
    let fixed = if strategies_only {
        Some(match &spec.base {
            ProtocolConfig::Two(c) => entangled_state_2p::<f64>(&c.gamma)?,
            ProtocolConfig::Three(c) => entangled_state_3p::<f64>(c)?,
        })
    } else {
        None
    };
    let points = spec.grid.pow(spec.axes.len() as u32);
    let rows = (0..points)
        .into_par_iter()
        .map(|idx| {
            let mut cfg = spec.base.clone();
            let mut params = Vec::with_capacity(spec.axes.len());
            let mut rest = idx;
            let mut ks = vec![0; spec.axes.len()];
            for slot in ks.iter_mut().rev() {
                *slot = rest % spec.grid;
                rest /= spec.grid;
            }
            for (a, &k) in spec.axes.iter().zip(&ks) {
                let angle = grid_angle(k, spec.grid);
                params.push(angle.to_radians().unwrap_or(f64::NAN));
                cfg.set(a, angle)?;
            }
            let psi = match (&cfg, &fixed) {
                (ProtocolConfig::Two(c), Some(e)) => strategies2(&c.p1, &c.p2)?.apply(e)?,
                (ProtocolConfig::Three(c), Some(e)) => strategies3(&c.p1, &c.p2, &c.p3)?.apply(e)?,
                (ProtocolConfig::Two(c), None) => final_state_2p(c)?,
                (ProtocolConfig::Three(c), None) => final_state_3p(c)?,
            };
            let probs = meas.probabilities(&psi)?;
            let payoffs = table.apply(&probs)?;
            Ok(SweepRow {
                params,
                probabilities: probs.entries().to_vec(),
                payoffs,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable {
        axes: spec.axes.clone(),
        players: n,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{weighted_majority, WeightedMajoritySpec};
    use crate::scalar::QSqrt2;

    fn example1() -> ValueFunction {
        weighted_majority(&WeightedMajoritySpec::from_integers(1, &[1, 1]).unwrap())
    }

    fn example2() -> ValueFunction {
        weighted_majority(&WeightedMajoritySpec::from_integers(2, &[1, 2, 1]).unwrap())
    }

    fn cfg2(g: (i64, i64), p1: (i64, i64), p2: (i64, i64)) -> TwoPlayerConfig {
        TwoPlayerConfig::new(Angle::pi(g.0, g.1), Angle::pi(p1.0, p1.1), Angle::pi(p2.0, p2.1))
    }

    #[test]
    fn trivial_two_player_state() {
        let r = evaluate_2p::<QSqrt2>(&example1(), &cfg2((0, 1), (0, 1), (0, 1))).unwrap();
        assert_eq!(r.probabilities.entries()[0], QSqrt2::one());
        assert_eq!(r.allocation, vec![QSqrt2::zero(), QSqrt2::zero()]);
    }

    #[test]
    fn bell_probabilities() {
        let r = evaluate_2p::<QSqrt2>(&example1(), &cfg2((1, 2), (0, 1), (0, 1))).unwrap();
        let h = QSqrt2::ratio(1, 2);
        let z = QSqrt2::zero();
        assert_eq!(r.probabilities.entries(), &[h.clone(), z.clone(), z, h]);
    }

    #[test]
    fn classical_recovery() {
        let r = evaluate_2p::<QSqrt2>(&example1(), &cfg2((0, 1), (1, 2), (1, 2))).unwrap();
        assert_eq!(r.allocation, vec![QSqrt2::ratio(1, 2), QSqrt2::ratio(1, 2)]);
    }

    #[test]
    fn ghz_game_value() {
        let r = evaluate_3p::<QSqrt2>(&example2(), &ThreePlayerConfig::zero(1)).unwrap();
        assert_eq!(r.allocation[1], QSqrt2::ratio(1, 3));
        assert_eq!(r.total(), r.expected_worth(&example2()));
    }

    #[test]
    fn closed_form_quarter_cell() {
        let k = closed_form_coefficients::<QSqrt2>(&cfg2((0, 1), (1, 4), (1, 4))).unwrap();
        assert_eq!(k.alpha1, QSqrt2::ratio(1, 4));
        assert_eq!(k.beta, QSqrt2::ratio(1, 4));
    }

    #[test]
    fn sweep_shape_and_errors() {
        let spec = SweepSpec {
            base: ProtocolConfig::Three(ThreePlayerConfig::zero(0)),
            axes: vec!["p1".into()],
            grid: 2,
        };
        let t = sweep(&spec, &example2()).unwrap();
        assert_eq!(t.rows.len(), 2);
        assert_eq!(
            t.header(),
            "p1,p_000,p_001,p_010,p_011,p_100,p_101,p_110,p_111,phi1,phi2,phi3"
        );
        let bad = SweepSpec {
            axes: vec!["q9".into()],
            ..spec.clone()
        };
        assert_eq!(
            sweep(&bad, &example2()).unwrap_err(),
            QraError::UnknownParameter("q9".into())
        );
        let short = SweepSpec { grid: 1, ..spec };
        assert!(matches!(sweep(&short, &example2()), Err(QraError::InvalidSweep(_))));
    }

    #[test]
    fn warnings_for_out_of_range() {
        let mut c = ThreePlayerConfig::zero(0);
        c.gamma13 = Angle::pi(3, 4);
        let w = c.range_warnings();
        assert_eq!(w.len(), 1);
        assert!(w[0].contains("gamma13"));
    }
}
