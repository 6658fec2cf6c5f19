//! From isometry matrices to terms, and circuit execution.

use crate::eval::Engine;
use crate::syntax::{mk_app, Dist, Term};
use crate::types::Type;

use super::matrix::{matrix_apply, GateMatrix};
use super::state::{decode, encode, encode_amplitudes, StateVector};
use super::FrontendError;

/// `λz:#(B^n). case z of { k̂ ↦ images[k] }`.
///
/// One qubit is `match z { inl x -> x; images[0] | inr x -> x; images[1] }`.
/// Wider registers split the first qubit off with `let` and recurse on the
/// rest in each branch.
pub fn case_construct(qubits: usize, images: &[Dist]) -> Result<Term, FrontendError> {
    let expected = 1usize << qubits;
    if qubits == 0 || images.len() != expected {
        return Err(FrontendError::WrongImageCount { expected, found: images.len() });
    }
    Ok(Term::lam("z", Type::qubits(qubits), case_body("z", 0, qubits, images)))
}

fn case_body(var: &str, level: usize, qubits: usize, images: &[Dist]) -> Term {
    let arm = |bit: &str, image: Dist| Term::seq(Term::var(bit), image);
    let (lo, hi) = images.split_at(images.len() / 2);
    if qubits == 1 {
        let b = format!("b{level}");
        return Term::match_sum(Term::var(var), b.clone(), arm(&b, lo[0].clone()), b.clone(), arm(&b, hi[0].clone()));
    }
    let (x, y, b) = (format!("x{level}"), format!("y{level}"), format!("b{level}"));
    let left = case_body(&y, level + 1, qubits - 1, lo);
    let right = case_body(&y, level + 1, qubits - 1, hi);
    let split =
        Term::match_sum(Term::var(x.clone()), b.clone(), arm(&b, left.into()), b.clone(), arm(&b, right.into()));
    Term::let_pair(x, y, Term::var(var), split)
}

/// `Û = λx. case x of { k̂ ↦ Σᵢ βᵢₖ·î }`, dropping exactly-zero entries.
pub fn compile_isometry(m: &GateMatrix) -> Result<Term, FrontendError> {
    if !m.is_isometry() {
        return Err(FrontendError::NotAnIsometry);
    }
    let images = (0..m.dim()).map(|k| encode_amplitudes(m.qubits(), &m.column(k))).collect::<Result<Vec<_>, _>>()?;
    case_construct(m.qubits(), &images)
}

/// A gate placed on explicit wires of the register.
#[derive(Clone, Debug, PartialEq)]
pub struct PlacedGate {
    pub matrix: GateMatrix,
    pub targets: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CircuitRun {
    /// The value distribution the compiled terms reduce to.
    pub output: Dist,
    /// `output`, decoded.
    pub decoded: StateVector,
    /// The dense matrix-vector reference result.
    pub oracle: StateVector,
}

impl CircuitRun {
    pub fn max_deviation(&self) -> f64 {
        self.decoded.max_deviation(&self.oracle)
    }
}

/// Applies each gate, widened to the full register, both as a compiled term
/// (by application and normalization) and as a matrix.
pub fn run_circuit(
    gates: &[PlacedGate],
    input: &StateVector,
    engine: &mut Engine,
) -> Result<CircuitRun, FrontendError> {
    let n = input.qubits();
    let mut output = encode(input);
    let mut oracle = input.clone();
    for g in gates {
        let full = g.matrix.embed(&g.targets, n)?;
        let term = compile_isometry(&full)?;
        output = engine.normalize(&mk_app(&term, &output))?;
        oracle = matrix_apply(&full, &oracle)?;
    }
    let decoded = decode(&output, n)?;
    Ok(CircuitRun { output, decoded, oracle })
}
