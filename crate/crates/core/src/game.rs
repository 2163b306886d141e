//! Classical TU games: weighted majority games, simple-game checks, the
//! Shapley value and restrictions to sub-coalitions.
//!
//! Worths are exact rationals. The Shapley-Shubik index is [`shapley`] applied
//! to a 0/1 game.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{QraError, Result};

/// Largest player count accepted by the solvers.
pub const MAX_PLAYERS: usize = 16;

/// Set of players; bit `i - 1` is player `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coalition(pub u32);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub fn grand(n: usize) -> Self {
        Coalition(((1u64 << n) - 1) as u32)
    }

    pub fn from_players(players: &[usize], n: usize) -> Result<Self> {
        let mut m = 0;
        for &p in players {
            if p == 0 || p > n {
                return Err(QraError::InvalidGame(format!("player {p} outside 1..={n}")));
            }
            m |= 1 << (p - 1);
        }
        Ok(Coalition(m))
    }

    pub fn contains(self, player: usize) -> bool {
        self.0 >> (player - 1) & 1 == 1
    }

    pub fn with(self, player: usize) -> Self {
        Coalition(self.0 | 1 << (player - 1))
    }

    pub fn without(self, player: usize) -> Self {
        Coalition(self.0 & !(1 << (player - 1)))
    }

    pub fn size(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn members(self) -> Vec<usize> {
        (1..=32).filter(|&i| self.contains(i)).collect()
    }

    /// All coalitions of `n` players in mask order.
    pub fn all(n: usize) -> impl Iterator<Item = Coalition> {
        (0..1u32 << n).map(Coalition)
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.members().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", m.join(","))
    }
}

/// Characteristic function `v` of a TU game, `v(empty) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueFunction {
    players: usize,
    worth: Vec<BigRational>,
}

fn check_players(n: usize) -> Result<()> {
    if n == 0 || n > MAX_PLAYERS {
        return Err(QraError::InvalidGame(format!(
            "player count {n} outside 1..={MAX_PLAYERS}"
        )));
    }
    Ok(())
}

impl ValueFunction {
    /// `worth[mask]` is the worth of the coalition with that player mask.
    pub fn new(players: usize, worth: Vec<BigRational>) -> Result<Self> {
        check_players(players)?;
        if worth.len() != 1 << players {
            return Err(QraError::InvalidGame(format!(
                "expected {} worths, got {}",
                1 << players,
                worth.len()
            )));
        }
        if !worth[0].is_zero() {
            return Err(QraError::InvalidGame("v(empty) must be 0".into()));
        }
        Ok(ValueFunction { players, worth })
    }

    pub fn from_fn(players: usize, f: impl Fn(Coalition) -> BigRational) -> Result<Self> {
        check_players(players)?;
        Self::new(players, Coalition::all(players).map(f).collect())
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn worth(&self, s: Coalition) -> &BigRational {
        &self.worth[s.0 as usize]
    }

    pub fn grand_worth(&self) -> &BigRational {
        self.worth(Coalition::grand(self.players))
    }
}

/// Quota and weights of a weighted majority game.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedMajoritySpec {
    quota: BigRational,
    weights: Vec<BigRational>,
}

impl WeightedMajoritySpec {
    pub fn new(quota: BigRational, weights: Vec<BigRational>) -> Result<Self> {
        check_players(weights.len())?;
        if !quota.is_positive() {
            return Err(QraError::InvalidGame("quota must be positive".into()));
        }
        if weights.iter().any(Signed::is_negative) {
            return Err(QraError::InvalidGame("weights must be non-negative".into()));
        }
        let total: BigRational = weights.iter().sum();
        if total < quota {
            return Err(QraError::InvalidGame(format!(
                "total weight {total} is below the quota {quota}, so the grand coalition loses"
            )));
        }
        Ok(WeightedMajoritySpec { quota, weights })
    }

    pub fn from_integers(quota: i64, weights: &[i64]) -> Result<Self> {
        Self::new(
            BigRational::from_integer(quota.into()),
            weights.iter().map(|&w| BigRational::from_integer(w.into())).collect(),
        )
    }

    pub fn quota(&self) -> &BigRational {
        &self.quota
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }
}

/// `v(S) = 1` iff the weights in `S` reach the quota.
pub fn weighted_majority(spec: &WeightedMajoritySpec) -> ValueFunction {
    let n = spec.weights.len();
    ValueFunction::from_fn(n, |s| {
        let w: BigRational = s.members().iter().map(|&i| &spec.weights[i - 1]).sum();
        if w >= spec.quota {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    })
    .expect("spec is validated")
}

/// A failed simple-game property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    GrandCoalitionLoses,
    EmptyCoalitionWins,
    NotMonotone { winning: Coalition, losing_superset: Coalition },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::GrandCoalitionLoses => write!(f, "N is not winning"),
            Violation::EmptyCoalitionWins => write!(f, "the empty coalition is winning"),
            Violation::NotMonotone {
                winning,
                losing_superset,
            } => write!(f, "{winning} wins but its superset {losing_superset} loses"),
        }
    }
}

/// Checks the three simple-game properties of a 0/1 game.
pub fn validate_simple(v: &ValueFunction) -> Result<Vec<Violation>> {
    let n = v.players;
    let wins = |s: Coalition| v.worth(s).is_one();
    if let Some(s) = Coalition::all(n).find(|&s| {
        let w = v.worth(s);
        !w.is_zero() && !w.is_one()
    }) {
        return Err(QraError::NonBinary(s.members()));
    }
    let mut out = Vec::new();
    if !wins(Coalition::grand(n)) {
        out.push(Violation::GrandCoalitionLoses);
    }
    if wins(Coalition::EMPTY) {
        out.push(Violation::EmptyCoalitionWins);
    }
    for s in Coalition::all(n).filter(|&s| wins(s)) {
        for i in 1..=n {
            let t = s.with(i);
            if t != s && !wins(t) {
                out.push(Violation::NotMonotone {
                    winning: s,
                    losing_superset: t,
                });
            }
        }
    }
    Ok(out)
}

/// Payoff per player (index 0 is player 1).
#[derive(Debug, Clone, PartialEq)]
pub struct Allocation {
    payoffs: Vec<BigRational>,
}

impl Allocation {
    pub fn new(payoffs: Vec<BigRational>) -> Self {
        Allocation { payoffs }
    }

    pub fn players(&self) -> usize {
        self.payoffs.len()
    }

    pub fn get(&self, player: usize) -> &BigRational {
        &self.payoffs[player - 1]
    }

    pub fn payoffs(&self) -> &[BigRational] {
        &self.payoffs
    }

    pub fn total(&self) -> BigRational {
        self.payoffs.iter().sum()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.payoffs.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

fn factorial(k: usize) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

/// Shapley value by the subset formula
/// `sum_{S not containing i} |S|! (n-|S|-1)! / n! * (v(S+i) - v(S))`.
pub fn shapley(v: &ValueFunction) -> Allocation {
    let n = v.players;
    let n_fact = factorial(n);
    let weights: Vec<BigRational> = (0..n)
        .map(|s| BigRational::new(factorial(s) * factorial(n - s - 1), n_fact.clone()))
        .collect();
    let payoffs = (1..=n)
        .map(|i| {
            Coalition::all(n)
                .filter(|s| !s.contains(i))
                .map(|s| &weights[s.size()] * (v.worth(s.with(i)) - v.worth(s)))
                .sum()
        })
        .collect();
    Allocation { payoffs }
}

/// Shapley value as the average marginal contribution over all `n!` arrival
/// orders. Exponential; meant for cross-checking small games.
pub fn shapley_by_permutations(v: &ValueFunction) -> Allocation {
    let n = v.players;
    let mut totals = vec![BigRational::zero(); n];
    let mut order: Vec<usize> = (1..=n).collect();
    let mut count = 0u64;
    permute(&mut order, 0, &mut |perm| {
        count += 1;
        let mut s = Coalition::EMPTY;
        for &p in perm {
            let t = s.with(p);
            totals[p - 1] += v.worth(t) - v.worth(s);
            s = t;
        }
    });
    let count = BigRational::from_integer(count.into());
    Allocation {
        payoffs: totals.into_iter().map(|x| x / &count).collect(),
    }
}

fn permute(xs: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == xs.len() {
        visit(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, visit);
        xs.swap(k, i);
    }
}

/// Game restricted to the players of a coalition.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedGame {
    pub game: ValueFunction,
    /// Original label of each restricted player, ascending.
    pub members: Vec<usize>,
}

/// `v_S`: the game on the members of `s` with inherited worths. Restricted
/// player `k` is the `k`-th smallest member of `s`.
pub fn restrict(v: &ValueFunction, s: Coalition) -> Result<RestrictedGame> {
    if s.is_empty() {
        return Err(QraError::EmptyCoalition);
    }
    if !s.is_subset_of(Coalition::grand(v.players)) {
        return Err(QraError::InvalidGame(format!("{s} is not a coalition of this game")));
    }
    let members = s.members();
    let game = ValueFunction::from_fn(members.len(), |sub| {
        let orig = sub
            .members()
            .iter()
            .fold(Coalition::EMPTY, |acc, &k| acc.with(members[k - 1]));
        v.worth(orig).clone()
    })?;
    Ok(RestrictedGame { game, members })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn example1() -> ValueFunction {
        weighted_majority(&WeightedMajoritySpec::from_integers(1, &[1, 1]).unwrap())
    }

    fn example2() -> ValueFunction {
        weighted_majority(&WeightedMajoritySpec::from_integers(2, &[1, 2, 1]).unwrap())
    }

    #[test]
    fn example_worths() {
        let v = example1();
        assert_eq!(v.worth(Coalition(0b01)), &r(1, 1));
        assert_eq!(v.worth(Coalition(0b10)), &r(1, 1));
        assert_eq!(v.worth(Coalition(0b11)), &r(1, 1));
        let v = example2();
        assert_eq!(v.worth(Coalition(0b001)), &r(0, 1));
        assert_eq!(v.worth(Coalition(0b010)), &r(1, 1));
        assert_eq!(v.worth(Coalition(0b101)), &r(1, 1));
        assert!(v.worth(Coalition::EMPTY).is_zero());
    }

    #[test]
    fn examples_are_simple() {
        assert!(validate_simple(&example1()).unwrap().is_empty());
        assert!(validate_simple(&example2()).unwrap().is_empty());
    }

    #[test]
    fn violations_reported() {
        let v = ValueFunction::new(2, vec![r(0, 1), r(1, 1), r(0, 1), r(0, 1)]).unwrap();
        let found = validate_simple(&v).unwrap();
        assert!(found.contains(&Violation::GrandCoalitionLoses));
        assert!(found.contains(&Violation::NotMonotone {
            winning: Coalition(0b01),
            losing_superset: Coalition(0b11)
        }));
        let half = ValueFunction::new(1, vec![r(0, 1), r(1, 2)]).unwrap();
        assert_eq!(validate_simple(&half), Err(QraError::NonBinary(vec![1])));
    }

    #[test]
    fn shapley_examples() {
        assert_eq!(shapley(&example1()).payoffs(), &[r(1, 2), r(1, 2)]);
        assert_eq!(shapley(&example2()).payoffs(), &[r(1, 6), r(2, 3), r(1, 6)]);
        let solo = ValueFunction::new(1, vec![r(0, 1), r(7, 3)]).unwrap();
        assert_eq!(shapley(&solo).payoffs(), &[r(7, 3)]);
    }

    #[test]
    fn restriction() {
        let v = example2();
        let r2 = restrict(&v, Coalition(0b010)).unwrap();
        assert_eq!(r2.members, vec![2]);
        assert_eq!(r2.game.worth(Coalition(1)), &r(1, 1));
        let r13 = restrict(&v, Coalition(0b101)).unwrap();
        assert_eq!(r13.members, vec![1, 3]);
        assert_eq!(shapley(&r13.game).payoffs(), &[r(1, 2), r(1, 2)]);
        assert_eq!(restrict(&v, Coalition::grand(3)).unwrap().game, v);
        assert_eq!(restrict(&v, Coalition::EMPTY), Err(QraError::EmptyCoalition));
    }

    #[test]
    fn spec_validation() {
        assert!(WeightedMajoritySpec::from_integers(0, &[1]).is_err());
        assert!(WeightedMajoritySpec::from_integers(5, &[1, 2]).is_err());
        assert!(ValueFunction::new(1, vec![r(1, 1), r(1, 1)]).is_err());
    }
}
