//! Circuit expressions.
//!
//! ```text
//! expr  := stage (';' stage)*
//! stage := gate ('|' gate)*
//! gate  := NAME '(' arg (',' arg)* ')'
//! ```
//!
//! Stages run left to right in time; gates inside a stage act on disjoint
//! qubits. Gates: `Id(q)`, `H(q)`, `U(q, p)`, `J(a, b, gamma)`,
//! `CNOT(control, target)`, `SWAP(a, b)`.

use std::fmt;

use qra_coop::gates::{
    cnot_adjacent, hadamard_on, id_gate, j_entangler, on_pair, serial, strategy_u_on,
    swap_adjacent, swap_general,
};
use qra_coop::{Angle, GateElement, Scalar};
use thiserror::Error;

use crate::angle::parse_angle;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateName {
    Id,
    H,
    U,
    J,
    Cnot,
    Swap,
}

impl GateName {
    pub const ALL: [GateName; 6] = [
        GateName::Id,
        GateName::H,
        GateName::U,
        GateName::J,
        GateName::Cnot,
        GateName::Swap,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GateName::Id => "Id",
            GateName::H => "H",
            GateName::U => "U",
            GateName::J => "J",
            GateName::Cnot => "CNOT",
            GateName::Swap => "SWAP",
        }
    }

    fn lookup(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|g| g.as_str() == s)
    }

    pub fn qubits(self) -> usize {
        match self {
            GateName::Id | GateName::H | GateName::U => 1,
            GateName::J | GateName::Cnot | GateName::Swap => 2,
        }
    }

    pub fn takes_angle(self) -> bool {
        matches!(self, GateName::U | GateName::J)
    }

    fn arity(self) -> usize {
        self.qubits() + usize::from(self.takes_angle())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GateCall {
    pub name: GateName,
    pub qubits: Vec<usize>,
    pub angle: Option<Angle>,
}

impl fmt::Display for GateCall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.name.as_str())?;
        let mut args: Vec<String> = self.qubits.iter().map(ToString::to_string).collect();
        args.extend(self.angle.iter().map(ToString::to_string));
        write!(f, "{})", args.join(","))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub width: usize,
    pub stages: Vec<Vec<GateCall>>,
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let stages: Vec<String> = self
            .stages
            .iter()
            .map(|s| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(" | "))
            .collect();
        write!(f, "{}", stages.join("; "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Parses `text`. With `width` unset the register is as wide as the largest
/// qubit index used.
pub fn parse_circuit(text: &str, width: Option<usize>) -> Result<Circuit, ParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        i: 0,
        width,
    };
    let mut stages = vec![p.stage()?];
    loop {
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(';') => {
                p.i += 1;
                stages.push(p.stage()?);
            }
            Some(c) => return Err(p.error_at(p.i, format!("expected `;`, `|` or end of input, found `{c}`"))),
        }
    }
    let used = stages
        .iter()
        .flatten()
        .flat_map(|g| g.qubits.iter().copied())
        .max()
        .unwrap_or(1);
    Ok(Circuit {
        width: width.unwrap_or(used),
        stages,
    })
}

struct Parser {
    chars: Vec<char>,
    i: usize,
    width: Option<usize>,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.i += 1;
        }
    }

    fn error_at(&self, at: usize, message: impl Into<String>) -> ParseError {
        let (mut line, mut column) = (1, 1);
        for &c in &self.chars[..at.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.i += 1;
                Ok(())
            }
            Some(c) => Err(self.error_at(self.i, format!("expected `{want}`, found `{c}`"))),
            None => Err(self.error_at(self.i, format!("expected `{want}`, found end of input"))),
        }
    }

    fn stage(&mut self) -> Result<Vec<GateCall>, ParseError> {
        let mut gates: Vec<GateCall> = Vec::new();
        loop {
            self.skip_ws();
            let start = self.i;
            let g = self.gate()?;
            if let Some(q) = g
                .qubits
                .iter()
                .find(|q| gates.iter().any(|o| o.qubits.contains(q)))
            {
                return Err(self.error_at(start, format!("qubit {q} is used twice in one parallel stage")));
            }
            gates.push(g);
            self.skip_ws();
            if self.peek() == Some('|') {
                self.i += 1;
            } else {
                return Ok(gates);
            }
        }
    }

    fn gate(&mut self) -> Result<GateCall, ParseError> {
        self.skip_ws();
        let start = self.i;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.i += 1;
        }
        let word: String = self.chars[start..self.i].iter().collect();
        if word.is_empty() {
            return Err(self.error_at(start, "expected a gate name"));
        }
        let known = || GateName::ALL.map(GateName::as_str).join(", ");
        let name = GateName::lookup(&word)
            .ok_or_else(|| self.error_at(start, format!("unknown gate `{word}` (known: {})", known())))?;
        self.expect('(')?;
        let mut args: Vec<(usize, String)> = Vec::new();
        loop {
            self.skip_ws();
            let at = self.i;
            while self.peek().is_some_and(|c| c != ',' && c != ')' && c != ';' && c != '|') {
                self.i += 1;
            }
            let text: String = self.chars[at..self.i].iter().collect();
            if text.trim().is_empty() {
                return Err(self.error_at(at, "expected an argument"));
            }
            args.push((at, text.trim().to_string()));
            match self.peek() {
                Some(',') => self.i += 1,
                _ => break,
            }
        }
        self.expect(')')?;
        if args.len() != name.arity() {
            return Err(self.error_at(
                start,
                format!("{} takes {} arguments, found {}", name.as_str(), name.arity(), args.len()),
            ));
        }
        let mut qubits = Vec::new();
        for (at, text) in &args[..name.qubits()] {
            let q = match text.parse::<usize>() {
                Ok(q) if q >= 1 => q,
                _ => return Err(self.error_at(*at, format!("`{text}` is not a qubit index (1, 2, ...)"))),
            };
            if let Some(w) = self.width.filter(|&w| q > w) {
                return Err(self.error_at(*at, format!("qubit {q} is outside the {w}-qubit register")));
            }
            if qubits.contains(&q) {
                return Err(self.error_at(*at, format!("qubit {q} is repeated")));
            }
            qubits.push(q);
        }
        let angle = match args.get(name.qubits()) {
            Some((at, text)) => Some(parse_angle(text).map_err(|m| self.error_at(*at, m))?),
            None => None,
        };
        Ok(GateCall { name, qubits, angle })
    }
}

impl GateCall {
    pub fn build<S: Scalar>(&self, n: usize) -> qra_coop::Result<GateElement<S>> {
        let q = &self.qubits;
        let angle = || self.angle.clone().unwrap_or(Angle::pi(0, 1));
        match self.name {
            GateName::Id => id_gate(q[0], n),
            GateName::H => hadamard_on(q[0], n),
            GateName::U => strategy_u_on(q[0], &angle(), n),
            GateName::J => {
                let g = angle();
                on_pair(q[0], q[1], n, |s| j_entangler(&g, s, n))
            }
            GateName::Cnot => on_pair(q[0], q[1], n, |s| cnot_adjacent(s, n)),
            GateName::Swap => {
                let (a, b) = (q[0].min(q[1]), q[0].max(q[1]));
                if b == a + 1 {
                    swap_adjacent(a, n)
                } else {
                    swap_general(a, b, n)
                }
            }
        }
    }
}

impl Circuit {
    /// Operator of the whole circuit.
    pub fn build<S: Scalar>(&self) -> qra_coop::Result<GateElement<S>> {
        let gates = self
            .stages
            .iter()
            .flatten()
            .map(|g| g.build(self.width))
            .collect::<qra_coop::Result<Vec<_>>>()?;
        serial(&gates)
    }
}
