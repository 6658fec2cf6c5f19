//! Dense square matrices over 2^n dimensional registers, and the gate library.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use crate::scalar::{approx_eq, Scalar};

use super::state::{qubits_for_dim, StateVector};
use super::FrontendError;

/// A `2^n × 2^n` complex matrix. Entry `(i, k)` is `⟨i|U|k⟩`, so column `k`
/// is the image of basis state `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct GateMatrix {
    dim: usize,
    qubits: usize,
    // row-major
    entries: Vec<Scalar>,
}

fn c(re: f64, im: f64) -> Scalar {
    Scalar::new(re, im)
}

impl GateMatrix {
    /// Builds a matrix from its rows.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<GateMatrix, FrontendError> {
        let dim = rows.len();
        let qubits = qubits_for_dim(dim)?;
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(FrontendError::DimensionMismatch { expected: dim, found: bad.len() });
        }
        Ok(GateMatrix { dim, qubits, entries: rows.into_iter().flatten().collect() })
    }

    pub fn identity(qubits: usize) -> GateMatrix {
        let dim = 1 << qubits;
        let mut entries = vec![c(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = c(1.0, 0.0);
        }
        GateMatrix { dim, qubits, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn get(&self, i: usize, k: usize) -> Scalar {
        self.entries[i * self.dim + k]
    }

    pub fn column(&self, k: usize) -> Vec<Scalar> {
        (0..self.dim).map(|i| self.get(i, k)).collect()
    }

    pub fn adjoint(&self) -> GateMatrix {
        let n = self.dim;
        let entries = (0..n * n).map(|idx| self.get(idx % n, idx / n).conj()).collect();
        GateMatrix { entries, ..*self }
    }

    /// `self · other`.
    pub fn mul(&self, other: &GateMatrix) -> Result<GateMatrix, FrontendError> {
        if self.dim != other.dim {
            return Err(FrontendError::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let n = self.dim;
        let mut entries = vec![c(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if a == c(0.0, 0.0) {
                    continue;
                }
                for k in 0..n {
                    entries[i * n + k] += a * other.get(j, k);
                }
            }
        }
        Ok(GateMatrix { entries, ..*self })
    }

    /// `self ⊗ other`, with `self` acting on the leading qubits.
    pub fn kron(&self, other: &GateMatrix) -> GateMatrix {
        let (a, b) = (self.dim, other.dim);
        let dim = a * b;
        let mut entries = vec![c(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for k in 0..dim {
                entries[i * dim + k] = self.get(i / b, k / b) * other.get(i % b, k % b);
            }
        }
        GateMatrix { dim, qubits: self.qubits + other.qubits, entries }
    }

    /// `M†M = I` within ε, entrywise.
    pub fn is_isometry(&self) -> bool {
        let n = self.dim;
        (0..n).all(|k| {
            (k..n).all(|l| {
                let dot: Scalar = (0..n).map(|i| self.get(i, k).conj() * self.get(i, l)).sum();
                approx_eq(dot, if k == l { c(1.0, 0.0) } else { c(0.0, 0.0) })
            })
        })
    }

    /// Places a `k`-qubit gate on the listed wires of an `n`-qubit register.
    /// `targets[0]` receives the gate's most significant qubit.
    pub fn embed(&self, targets: &[usize], qubits: usize) -> Result<GateMatrix, FrontendError> {
        if targets.len() != self.qubits {
            return Err(FrontendError::WrongArity { expected: self.qubits, found: targets.len() });
        }
        for (i, &q) in targets.iter().enumerate() {
            if q >= qubits {
                return Err(FrontendError::QubitOutOfRange { qubit: q, width: qubits });
            }
            if targets[..i].contains(&q) {
                return Err(FrontendError::RepeatedQubit(q));
            }
        }
        let dim = 1usize << qubits;
        let bit = |idx: usize, q: usize| (idx >> (qubits - 1 - q)) & 1;
        let sub = |idx: usize| targets.iter().fold(0, |acc, &q| (acc << 1) | bit(idx, q));
        let mask: usize = targets.iter().map(|&q| 1usize << (qubits - 1 - q)).sum();
        let mut entries = vec![c(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for k in 0..dim {
                if i & !mask == k & !mask {
                    entries[i * dim + k] = self.get(sub(i), sub(k));
                }
            }
        }
        Ok(GateMatrix { dim, qubits, entries })
    }
}

/// Dense matrix-vector product, without renormalization.
pub fn matrix_apply(m: &GateMatrix, v: &StateVector) -> Result<StateVector, FrontendError> {
    if m.dim() != v.dim() {
        return Err(FrontendError::DimensionMismatch { expected: m.dim(), found: v.dim() });
    }
    let out = (0..m.dim()).map(|i| (0..m.dim()).map(|k| m.get(i, k) * v.amplitudes()[k]).sum()).collect();
    StateVector::unchecked(out)
}

pub const GATE_NAMES: [&str; 10] = ["I", "X", "Y", "Z", "H", "S", "T", "CNOT", "CZ", "SWAP"];

/// The standard matrix of a named gate. Two-qubit gates take their control
/// on the first wire.
pub fn gate(name: &str) -> Result<GateMatrix, FrontendError> {
    let (o, z, h) = (c(1.0, 0.0), c(0.0, 0.0), c(FRAC_1_SQRT_2, 0.0));
    let rows = match name.to_ascii_uppercase().as_str() {
        "I" => vec![vec![o, z], vec![z, o]],
        "X" => vec![vec![z, o], vec![o, z]],
        "Y" => vec![vec![z, c(0.0, -1.0)], vec![c(0.0, 1.0), z]],
        "Z" => vec![vec![o, z], vec![z, -o]],
        "H" => vec![vec![h, h], vec![h, -h]],
        "S" => vec![vec![o, z], vec![z, c(0.0, 1.0)]],
        "T" => vec![vec![o, z], vec![z, Scalar::from_polar(1.0, FRAC_PI_4)]],
        "CNOT" | "CX" => vec![vec![o, z, z, z], vec![z, o, z, z], vec![z, z, z, o], vec![z, z, o, z]],
        "CZ" => vec![vec![o, z, z, z], vec![z, o, z, z], vec![z, z, o, z], vec![z, z, z, -o]],
        "SWAP" => vec![vec![o, z, z, z], vec![z, z, o, z], vec![z, o, z, z], vec![z, z, z, o]],
        _ => return Err(FrontendError::UnknownGate(name.to_string())),
    };
    GateMatrix::from_rows(rows)
}
