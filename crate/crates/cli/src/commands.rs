use std::collections::BTreeSet;
use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use num_rational::BigRational;
use qra_coop::crosscheck::{
    gate_suite, parse_waivers, protocol_suite, sign_rule_audit, swap_theorem_suite, tensor_rule_suite,
};
use qra_coop::equivalence::{
    misplaced_third_block, prove_j2_ordering_invariance, prove_ordering_invariance, prove_swap13,
    symbolic_blocks, symbolic_equal, OrderingProof,
};
use qra_coop::game::{shapley, weighted_majority};
use qra_coop::gates::{swap_general, swap_general_as_printed};
use qra_coop::quantum::{
    evaluate_2p, evaluate_3p, sweep as run_sweep, ProtocolConfig, QuantumShapleyResult, SweepSpec,
    ThreePlayerConfig, TwoPlayerConfig,
};
use qra_coop::register::Measurement;
use qra_coop::{
    Angle, BitString, Coalition, QSqrt2, RegisterState, Scalar, TrigPoly, ValueFunction,
    WeightedMajoritySpec,
};

use crate::circuit::parse_circuit;
use crate::{CliError, Ring, SweepArgs, Theorem};

const TOLERANCE: f64 = 1e-10;

fn game(weights: &[BigRational], quota: &BigRational, players: usize) -> Result<ValueFunction, CliError> {
    if weights.len() != players {
        return Err(CliError::Usage(format!(
            "this game needs {players} weights, got {}",
            weights.len()
        )));
    }
    let spec = WeightedMajoritySpec::new(quota.clone(), weights.to_vec())?;
    Ok(weighted_majority(&spec))
}

fn warn(err: &mut dyn Write, warnings: Vec<String>) -> Result<(), CliError> {
    for w in warnings {
        writeln!(err, "warning: {w}")?;
    }
    Ok(())
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn classic(weights: &[BigRational], quota: &BigRational, out: &mut dyn Write) -> Result<(), CliError> {
    let v = game(weights, quota, weights.len())?;
    let phi = shapley(&v);
    let exact: Vec<String> = phi.payoffs().iter().map(ToString::to_string).collect();
    let percent: Vec<String> = phi.to_f64().iter().map(|x| format!("{:.4}%", 100.0 * x)).collect();
    writeln!(out, "{}", exact.join(" "))?;
    writeln!(out, "{}", percent.join(" "))?;
    Ok(())
}

fn report<S: Scalar + Display>(
    players: usize,
    res: &QuantumShapleyResult<S>,
    exact: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let cell = |x: &S| {
        let f = format!("{:.4}", x.to_f64().unwrap_or(f64::NAN));
        if exact {
            format!("{f}  {x}")
        } else {
            f
        }
    };
    writeln!(out, "coalition   ket{}  probability", " ".repeat(players - 1))?;
    for mask in 0u32..1 << players {
        let bits = BitString::from_player_mask(mask, players)?;
        let name = Coalition(mask).to_string();
        writeln!(out, "{name:<11} |{bits}>  {}", cell(res.probabilities.get(bits)))?;
    }
    writeln!(out, "player  quantum_shapley")?;
    for (i, a) in res.allocation.iter().enumerate() {
        writeln!(out, "{:<7} {}", i + 1, cell(a))?;
    }
    Ok(())
}

pub fn game2(
    weights: &[BigRational],
    quota: &BigRational,
    cfg: &TwoPlayerConfig,
    ring: Ring,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let v = game(weights, quota, 2)?;
    warn(err, cfg.range_warnings())?;
    match ring {
        Ring::Float => report(2, &evaluate_2p::<f64>(&v, cfg)?, false, out),
        Ring::Exact => report(2, &evaluate_2p::<QSqrt2>(&v, cfg)?, true, out),
        Ring::Symbolic => Err(symbolic_game()),
    }
}

pub fn game3(
    weights: &[BigRational],
    quota: &BigRational,
    cfg: &ThreePlayerConfig,
    ring: Ring,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let v = game(weights, quota, 3)?;
    warn(err, cfg.range_warnings())?;
    match ring {
        Ring::Float => report(3, &evaluate_3p::<f64>(&v, cfg)?, false, out),
        Ring::Exact => report(3, &evaluate_3p::<QSqrt2>(&v, cfg)?, true, out),
        Ring::Symbolic => Err(symbolic_game()),
    }
}

fn symbolic_game() -> CliError {
    CliError::Usage("games are evaluated with `--ring float` or `--ring exact`".into())
}

fn reject(flags: &[(&str, bool)], players: usize) -> Result<(), CliError> {
    match flags.iter().find(|(_, given)| *given) {
        Some((name, _)) => Err(CliError::Usage(format!(
            "`--{name}` does not apply to a {players}-player game"
        ))),
        None => Ok(()),
    }
}

pub fn sweep(a: SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let players = a.game.weights.len();
    let zero = || Angle::pi(0, 1);
    let base = match players {
        2 => {
            reject(
                &[
                    ("gamma123", a.gamma123.is_some()),
                    ("gamma12", a.gamma12.is_some()),
                    ("gamma13", a.gamma13.is_some()),
                    ("gamma23", a.gamma23.is_some()),
                    ("p3", a.p3.is_some()),
                ],
                2,
            )?;
            ProtocolConfig::Two(TwoPlayerConfig::new(
                a.gamma.unwrap_or_else(zero),
                a.p1.unwrap_or_else(zero),
                a.p2.unwrap_or_else(zero),
            ))
        }
        3 => {
            reject(&[("gamma", a.gamma.is_some())], 3)?;
            ProtocolConfig::Three(ThreePlayerConfig {
                gamma123: a.gamma123.unwrap_or(0),
                gamma12: a.gamma12.unwrap_or_else(zero),
                gamma13: a.gamma13.unwrap_or_else(zero),
                gamma23: a.gamma23.unwrap_or_else(zero),
                p1: a.p1.unwrap_or_else(zero),
                p2: a.p2.unwrap_or_else(zero),
                p3: a.p3.unwrap_or_else(zero),
            })
        }
        n => {
            return Err(CliError::Usage(format!(
                "the quantum protocols are defined for 2 or 3 players, got {n} weights"
            )))
        }
    };
    let v = game(&a.game.weights, &a.game.quota, players)?;
    warn(err, base.range_warnings())?;
    let spec = SweepSpec {
        base,
        axes: a.vary,
        grid: a.grid,
    };
    let table = run_sweep(&spec, &v)?;
    match a.out {
        Some(path) => {
            fs::write(&path, table.to_csv())?;
            writeln!(out, "wrote {} rows to {}", table.rows.len(), path.display())?;
        }
        None => out.write_all(table.to_csv().as_bytes())?,
    }
    Ok(())
}

fn ordering_lines(proof: &OrderingProof, out: &mut dyn Write) -> Result<(), CliError> {
    let rows = proof
        .orderings
        .iter()
        .zip(proof.operator_reports.iter().zip(&proof.state_reports));
    for (ord, (op, st)) in rows {
        let residual = |equal: bool| if equal { "zero" } else { "non-zero" };
        writeln!(
            out,
            "  {} {} {}  operator residual {}, state residual {}",
            ord[0],
            ord[1],
            ord[2],
            residual(op.equal),
            residual(st.equal)
        )?;
    }
    Ok(())
}

pub fn prove(theorem: Theorem, max_qubits: usize, out: &mut dyn Write) -> Result<(), CliError> {
    match theorem {
        Theorem::J2Orderings => {
            let proof = prove_j2_ordering_invariance()?;
            let total = proof.orderings.len();
            writeln!(out, "orderings of A = J(g12) on (1,2), B = J(g23) on (2,3), C = J(g13) on (1,3):")?;
            ordering_lines(&proof, out)?;
            let ops = proof.operator_equal_count();
            let states = proof.state_equal_count();
            writeln!(out, "{} {ops}/{total} orderings identical", pass(ops == total))?;
            writeln!(out, "{} {states}/{total} entangled states identical", pass(states == total))?;
            if !proof.all_equal() {
                return Err(CliError::Failed("ordering invariance does not hold".into()));
            }
        }
        Theorem::Swap => {
            if !(2..=8).contains(&max_qubits) {
                return Err(CliError::Usage("--max-qubits must lie in 2..=8".into()));
            }
            let rep = swap_theorem_suite(max_qubits, swap_general)?;
            let printed = swap_theorem_suite(max_qubits, swap_general_as_printed)?;
            let symbolic = prove_swap13(&swap_general(1, 3, 3)?)?;
            writeln!(
                out,
                "{} SWAP(s,t) equals the adjacent-swap chain on {} basis kets (n <= {max_qubits})",
                pass(rep.passes()),
                rep.cases
            )?;
            for m in &rep.mismatches {
                writeln!(out, "  mismatch: {m}")?;
            }
            writeln!(
                out,
                "{} SWAP(1,3) = SWAP(2,3) SWAP(1,2) SWAP(2,3) as symbolic elements",
                pass(symbolic.equal)
            )?;
            writeln!(
                out,
                "note: with the odd-parity signs as printed the general swap fails on {} of {} kets",
                printed.mismatches.len(),
                printed.cases
            )?;
            if !rep.passes() || !symbolic.equal {
                return Err(CliError::Failed("swap theorem does not hold".into()));
            }
        }
        Theorem::MisplacedBlock => {
            let blocks = misplaced_third_block()?;
            let proof = prove_ordering_invariance(&blocks)?;
            let total = proof.orderings.len();
            writeln!(out, "orderings of A, B and C' = J(h13) on (2,3) without swaps:")?;
            ordering_lines(&proof, out)?;
            writeln!(
                out,
                "{} {}/{total} orderings identical",
                pass(proof.all_equal()),
                proof.operator_equal_count()
            )?;
            let intended = symbolic_equal(&symbolic_blocks()?[2], &blocks[2])?;
            if let Some(w) = &intended.witness {
                let point: Vec<String> = w.iter().map(|(k, v)| format!("{k}={v:.4}")).collect();
                writeln!(
                    out,
                    "note: C' differs from the intended C = J(g13) on (1,3), e.g. at {}",
                    point.join(", ")
                )?;
            }
            if !proof.all_equal() {
                return Err(CliError::Failed("ordering invariance does not hold".into()));
            }
        }
    }
    Ok(())
}

pub fn oracle_check(
    draws: usize,
    seed: u64,
    waivers: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let mut failed = 0;
    for c in gate_suite(draws, seed)?.into_iter().chain(protocol_suite(draws, seed)?) {
        let ok = c.passes(TOLERANCE);
        failed += usize::from(!ok);
        writeln!(
            out,
            "{} {:<27} {:>6} cases  max deviation {:.1e}",
            pass(ok),
            c.name,
            c.cases,
            c.max_deviation
        )?;
    }
    let t = tensor_rule_suite(draws, seed)?;
    failed += usize::from(!t.passes());
    writeln!(
        out,
        "{} tensor sign rules              parallel2 {}/{} exact, parallel3 {}/{} exact",
        pass(t.passes()),
        t.parallel2_cases - t.parallel2_mismatches,
        t.parallel2_cases,
        t.parallel3_cases - t.parallel3_mismatches,
        t.parallel3_cases
    )?;
    let waived = match waivers {
        Some(path) => parse_waivers(&fs::read_to_string(path)?),
        None => BTreeSet::new(),
    };
    let audit = sign_rule_audit(&waived)?;
    failed += usize::from(!audit.passes());
    writeln!(
        out,
        "{} three-gate sign table           {} marker products, {} unwaived divergences, {} stale waivers",
        pass(audit.passes()),
        audit.marker_products,
        audit.unwaived.len(),
        audit.stale_waivers.len()
    )?;
    for a in &audit.unwaived {
        writeln!(out, "  `{}`: table {:?}, tensor product needs {:?}", a.markers, a.table, a.required)?;
    }
    if failed > 0 {
        return Err(CliError::Failed(format!("{failed} checks failed")));
    }
    Ok(())
}

pub fn circuit(expr: &str, width: Option<usize>, ring: Ring, out: &mut dyn Write) -> Result<(), CliError> {
    let c = parse_circuit(expr, width).map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(out, "circuit: {c}")?;
    writeln!(out, "width: {}", c.width)?;
    match ring {
        Ring::Float => {
            let psi = c.build::<f64>()?.apply(&RegisterState::ground(c.width)?)?;
            let amps = Measurement::new(c.width)?.amplitudes(&psi)?;
            for (bits, a) in BitString::all(c.width).zip(amps) {
                if !a.is_zero() {
                    let p = a.norm_sqr();
                    writeln!(out, "|{bits}>  {:.4}{:+.4}i  p={p:.4}", a.re, a.im)?;
                }
            }
            Ok(())
        }
        Ring::Exact => exact_amplitudes::<QSqrt2>(&c, out),
        Ring::Symbolic => exact_amplitudes::<TrigPoly>(&c, out),
    }
}

fn exact_amplitudes<S: Scalar + Display>(c: &crate::circuit::Circuit, out: &mut dyn Write) -> Result<(), CliError> {
    let psi = c.build::<S>()?.apply(&RegisterState::ground(c.width)?)?;
    let amps = Measurement::new(c.width)?.amplitudes(&psi)?;
    for (bits, a) in BitString::all(c.width).zip(amps) {
        if !a.is_zero() {
            writeln!(out, "|{bits}>  {a}  p={}", a.norm_sqr())?;
        }
    }
    Ok(())
}
