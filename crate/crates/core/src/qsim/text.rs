//! Plain-text gate-list format.
//!
//! ```text
//! # comment
//! qubits 3
//! x 2
//! cnot 2 0
//! measure 0 1
//! ```
//!
//! `qubits` comes first, gates follow in order, and an optional `measure`
//! line closes the circuit.

use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::{Circuit, Gate};

const UNSUPPORTED: &[&str] = &["h", "y", "z", "s", "sdg", "t", "tdg", "rx", "ry", "rz", "cz", "swap"];

pub fn to_text(circuit: &Circuit) -> String {
    let mut out = String::new();
    writeln!(out, "qubits {}", circuit.num_qubits()).unwrap();
    for g in circuit.gates() {
        match *g {
            Gate::X { target } => writeln!(out, "x {target}").unwrap(),
            Gate::Cnot { control, target } => writeln!(out, "cnot {control} {target}").unwrap(),
        }
    }
    if circuit.num_measured() > 0 {
        out.push_str("measure");
        for q in circuit.measured_qubits() {
            write!(out, " {q}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn index(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} {tok:?}")))
}

fn no_trailing<'a>(mut toks: impl Iterator<Item = &'a str>, line: usize) -> Result<()> {
    match toks.next() {
        Some(t) => Err(Error::parse(line, format!("unexpected token {t:?}"))),
        None => Ok(()),
    }
}

/// Parses the gate-list format. Structural problems are parse errors;
/// gate-validity problems (range, control = target) keep their own kinds.
pub fn parse(src: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut toks = content.split_whitespace();
        let op = toks.next().expect("non-empty line").to_ascii_lowercase();

        if op == "qubits" {
            if circuit.is_some() {
                return Err(Error::parse(line, "duplicate qubits declaration"));
            }
            let n = index(toks.next(), line, "qubit count")?;
            no_trailing(toks, line)?;
            circuit = Some(Circuit::new(n)?);
            continue;
        }

        let c = circuit
            .as_mut()
            .ok_or_else(|| Error::parse(line, "`qubits N` must come first"))?;
        match op.as_str() {
            "x" => {
                let t = index(toks.next(), line, "target")?;
                no_trailing(toks, line)?;
                c.x(t)?;
            }
            "cnot" | "cx" => {
                let ctl = index(toks.next(), line, "control")?;
                let t = index(toks.next(), line, "target")?;
                no_trailing(toks, line)?;
                c.cnot(ctl, t)?;
            }
            "measure" => {
                let qs = toks
                    .map(|t| index(Some(t), line, "qubit"))
                    .collect::<Result<Vec<_>>>()?;
                if qs.is_empty() {
                    return Err(Error::parse(line, "measure needs at least one qubit"));
                }
                c.measure(qs)?;
            }
            other if UNSUPPORTED.contains(&other) => {
                return Err(Error::UnsupportedGate(format!("{other} (line {line})")));
            }
            other => return Err(Error::parse(line, format!("unknown instruction {other:?}"))),
        }
    }
    circuit.ok_or_else(|| Error::parse(0, "no `qubits N` declaration"))
}

impl std::fmt::Display for Circuit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&to_text(self))
    }
}

impl std::str::FromStr for Circuit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}
