//! Matrix (`.mat`) and circuit (`.circ`) text formats.
//!
//! A matrix file is `dim N` followed by `N` rows of `N` whitespace-separated
//! complex literals (`a`, `bi`, `a+bi`, `a-bi`, decimal or scientific). Row
//! `i`, column `k` holds `⟨i|U|k⟩`.
//!
//! A circuit file lists one gate per line (or `;`-separated), either a named
//! gate `H 0`, `CNOT 0 1` or a matrix file `@path.mat 0 1`, followed by the
//! target wires. `--` starts a comment.

use crate::scalar::Scalar;
use crate::surface::scalar_to_string;

use super::compile::PlacedGate;
use super::matrix::{gate, GateMatrix};
use super::FrontendError;

fn syntax(line: usize, message: impl Into<String>) -> FrontendError {
    FrontendError::Syntax { line, message: message.into() }
}

fn parse_real(s: &str) -> Option<f64> {
    let ok = !s.is_empty() && s.chars().all(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-'));
    if ok {
        s.parse().ok()
    } else {
        None
    }
}

/// Parses `a`, `bi`, `a+bi` or `a-bi`.
pub fn parse_complex(s: &str) -> Option<Scalar> {
    if let Some(body) = s.strip_suffix('i') {
        // split at the last sign that is not leading and not an exponent sign
        let bytes = body.as_bytes();
        let split =
            (1..bytes.len()).rev().find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
        return match split {
            Some(i) => Some(Scalar::new(parse_real(&body[..i])?, parse_real(&body[i..])?)),
            None => Some(Scalar::new(0.0, parse_real(body)?)),
        };
    }
    parse_real(s).map(|re| Scalar::new(re, 0.0))
}

pub fn parse_matrix(text: &str) -> Result<GateMatrix, FrontendError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split("--").next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first, header) = lines.next().ok_or_else(|| syntax(1, "empty matrix file"))?;
    let dim: usize = header
        .strip_prefix("dim")
        .and_then(|rest| rest.trim().parse().ok())
        .ok_or_else(|| syntax(first, "expected `dim N`"))?;
    let mut rows = Vec::with_capacity(dim);
    for (line, text) in lines {
        let row = text
            .split_whitespace()
            .map(|tok| parse_complex(tok).ok_or_else(|| syntax(line, format!("bad complex literal `{tok}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != dim {
            return Err(syntax(line, format!("expected {dim} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != dim {
        return Err(syntax(first, format!("expected {dim} rows, found {}", rows.len())));
    }
    GateMatrix::from_rows(rows)
}

pub fn print_matrix(m: &GateMatrix) -> String {
    let mut out = format!("dim {}\n", m.dim());
    for i in 0..m.dim() {
        let row: Vec<String> = (0..m.dim())
            .map(|k| scalar_to_string(m.get(i, k)).trim_matches(|c| c == '(' || c == ')').to_string())
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a circuit; `load` resolves `@path` references to matrices.
pub fn parse_circuit(
    text: &str,
    mut load: impl FnMut(&str) -> Result<GateMatrix, FrontendError>,
) -> Result<Vec<PlacedGate>, FrontendError> {
    let mut gates = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let code = raw.split("--").next().unwrap_or("");
        for stmt in code.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let mut words = stmt.split_whitespace();
            let head = words.next().expect("non-empty statement");
            let targets = words
                .map(|w| w.parse::<usize>().map_err(|_| syntax(line, format!("bad wire `{w}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            let matrix = match head.strip_prefix('@') {
                Some(path) => load(path)?,
                None => gate(head)?,
            };
            if targets.len() != matrix.qubits() {
                return Err(syntax(
                    line,
                    format!("`{head}` acts on {} wires, {} given", matrix.qubits(), targets.len()),
                ));
            }
            gates.push(PlacedGate { matrix, targets });
        }
    }
    Ok(gates)
}
