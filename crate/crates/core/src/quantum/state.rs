//! Qubit state vectors and their encoding as value distributions.
//!
//! Basis state `k` of an `n`-qubit register is the right-nested pair
//! `(b0, (b1, (..., b(n-1))))` of its binary digits, most significant first,
//! with `0 = inl *` and `1 = inr *`.

use crate::scalar::{approx_eq_f64, Scalar};
use crate::syntax::{Dist, Term};

use super::FrontendError;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Scalar>,
    qubits: usize,
}

/// `n` with `2^n = dim`, when `dim` is a power of two of at least 2.
pub fn qubits_for_dim(dim: usize) -> Result<usize, FrontendError> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(FrontendError::DimensionNotPowerOfTwo(dim));
    }
    Ok(dim.trailing_zeros() as usize)
}

impl StateVector {
    /// Requires a power-of-two length and unit norm within ε.
    pub fn new(amplitudes: Vec<Scalar>) -> Result<StateVector, FrontendError> {
        let v = StateVector::unchecked(amplitudes)?;
        let norm = v.norm();
        if !approx_eq_f64(norm, 1.0) {
            return Err(FrontendError::NormViolation(norm));
        }
        Ok(v)
    }

    /// Skips the norm check, still requires a power-of-two length.
    pub fn unchecked(amplitudes: Vec<Scalar>) -> Result<StateVector, FrontendError> {
        let qubits = qubits_for_dim(amplitudes.len())?;
        Ok(StateVector { amplitudes, qubits })
    }

    pub fn basis(qubits: usize, k: usize) -> StateVector {
        let dim = 1usize << qubits;
        assert!(qubits >= 1 && k < dim, "basis index out of range");
        let mut amplitudes = vec![Scalar::new(0.0, 0.0); dim];
        amplitudes[k] = Scalar::new(1.0, 0.0);
        StateVector { amplitudes, qubits }
    }

    pub fn amplitudes(&self) -> &[Scalar] {
        &self.amplitudes
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of the difference.
    pub fn max_deviation(&self, other: &StateVector) -> f64 {
        assert_eq!(self.dim(), other.dim(), "comparing registers of different width");
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// `k̂` for an `n`-qubit register.
pub fn basis_term(qubits: usize, k: usize) -> Term {
    let bit = |q: usize| {
        if (k >> (qubits - 1 - q)) & 1 == 0 {
            Term::zero()
        } else {
            Term::one()
        }
    };
    let mut t = bit(qubits - 1);
    for q in (0..qubits - 1).rev() {
        t = Term::pair(bit(q), t);
    }
    t
}

/// `Σ aₖ·k̂` over the nonzero amplitudes, canonical. The zero vector has no
/// encoding.
pub fn encode_amplitudes(qubits: usize, amplitudes: &[Scalar]) -> Result<Dist, FrontendError> {
    let summands: Vec<(Scalar, Term)> = amplitudes
        .iter()
        .enumerate()
        .filter(|(_, a)| **a != Scalar::new(0.0, 0.0))
        .map(|(k, a)| (*a, basis_term(qubits, k)))
        .collect();
    Ok(Dist::new(summands).map_err(|_| FrontendError::NormViolation(0.0))?.canonicalize())
}

pub fn encode(v: &StateVector) -> Dist {
    encode_amplitudes(v.qubits, &v.amplitudes).expect("a unit vector has a nonzero amplitude")
}

fn bit_of(t: &Term) -> Option<usize> {
    match t {
        Term::Inl(u) if **u == Term::Void => Some(0),
        Term::Inr(u) if **u == Term::Void => Some(1),
        _ => None,
    }
}

/// The index `k` with `t = k̂`, if `t` encodes an `n`-qubit basis state.
pub fn basis_index(qubits: usize, t: &Term) -> Option<usize> {
    let mut k = 0;
    let mut rest = t;
    for _ in 0..qubits - 1 {
        let Term::Pair(b, tail) = rest else {
            return None;
        };
        k = (k << 1) | bit_of(b)?;
        rest = tail;
    }
    Some((k << 1) | bit_of(rest)?)
}

/// Reads the amplitudes of a value distribution over `n`-qubit encodings.
/// Absent basis states get amplitude 0. No norm check.
pub fn decode(d: &Dist, qubits: usize) -> Result<StateVector, FrontendError> {
    assert!(qubits >= 1, "a register has at least one qubit");
    let mut amplitudes = vec![Scalar::new(0.0, 0.0); 1 << qubits];
    for (c, t) in d.summands() {
        let k = basis_index(qubits, t).ok_or_else(|| FrontendError::MalformedEncoding(t.to_string()))?;
        amplitudes[k] += c;
    }
    StateVector::unchecked(amplitudes)
}
