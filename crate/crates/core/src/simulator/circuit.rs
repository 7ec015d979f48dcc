use serde::{Deserialize, Serialize};

use super::state::StateVector;
use crate::hamiltonian::PauliString;

/// e^{i·angle·P}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PauliRotation {
    pub pauli: PauliString,
    pub angle: f64,
}

/// Rotations applied in list order (first element acts first).
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Circuit {
    pub n_qubits: usize,
    pub gates: Vec<PauliRotation>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit { n_qubits, gates: Vec::new() }
    }

    pub fn push(&mut self, pauli: PauliString, angle: f64) {
        self.gates.push(PauliRotation { pauli, angle });
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn apply(&self, psi: &mut StateVector) {
        for g in &self.gates {
            psi.apply_pauli_exponential(&g.pauli, g.angle);
        }
    }

    pub fn inverse(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(|g| PauliRotation { pauli: g.pauli, angle: -g.angle }).collect(),
        }
    }
}

/// Shift every rotation up by `prefix` qubits; the prefix (core) block is
/// left untouched.
pub fn embed_unitary(circuit: &Circuit, prefix: usize) -> Circuit {
    Circuit {
        n_qubits: circuit.n_qubits + prefix,
        gates: circuit
            .gates
            .iter()
            .map(|g| PauliRotation { pauli: g.pauli.shifted(prefix), angle: g.angle })
            .collect(),
    }
}
