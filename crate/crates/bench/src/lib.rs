//! Deterministic workloads shared by the benchmarks.

use lambda_s1::quantum::{basis_term, compile_isometry, gate, GateMatrix, PlacedGate};
use lambda_s1::{Dist, Term, Type};

/// `H ⊗ … ⊗ H` on `n` qubits.
pub fn hadamard_layer(n: usize) -> GateMatrix {
    let h = gate("H").unwrap();
    (1..n).fold(h.clone(), |m, _| m.kron(&h))
}

/// A compiled `n`-qubit gate applied to the encoded basis state `|0…0⟩`.
pub fn applied_layer(n: usize) -> Dist {
    let u = compile_isometry(&hadamard_layer(n)).unwrap();
    Dist::pure(Term::app(u, basis_term(n, 0)))
}

/// The GHZ preparation: `H 0; CNOT 0 1; …; CNOT (n-2) (n-1)`.
pub fn ghz_circuit(n: usize) -> Vec<PlacedGate> {
    let mut gates = vec![PlacedGate { matrix: gate("H").unwrap(), targets: vec![0] }];
    gates.extend((1..n).map(|k| PlacedGate { matrix: gate("CNOT").unwrap(), targets: vec![k - 1, k] }));
    gates
}

/// A tower of alternating arrows and sharps, `depth` levels deep.
pub fn nested_type(depth: usize) -> Type {
    (0..depth).fold(Type::qubits(1), |t, i| if i % 2 == 0 { Type::arrow(t.clone(), t) } else { Type::sharp(t) })
}
