use crate::error::{Error, Result};
use crate::hamiltonian::PauliSum;
use crate::simulator::{Circuit, SparseOperator, StateVector};

use super::pool::OperatorPool;

/// Energy oracle for circuits acting on a fixed reference determinant.
#[derive(Debug, Clone)]
pub struct Evaluator {
    pub n_qubits: usize,
    pub hamiltonian: SparseOperator,
    pub reference: StateVector,
}

impl Evaluator {
    pub fn new(h: &PauliSum, hf_occupation: &[usize]) -> Result<Self> {
        let reference = StateVector::prepare_determinant(h.n_qubits, hf_occupation)?;
        Ok(Evaluator { n_qubits: h.n_qubits, hamiltonian: SparseOperator::from_pauli_sum(h), reference })
    }

    pub fn energy(&self, psi: &StateVector) -> f64 {
        self.hamiltonian.energy(psi)
    }

    pub fn reference_energy(&self) -> f64 {
        self.energy(&self.reference)
    }

    pub fn circuit_state(&self, circuit: &Circuit) -> StateVector {
        let mut psi = self.reference.clone();
        circuit.apply(&mut psi);
        psi
    }

    pub fn circuit_energy(&self, circuit: &Circuit) -> f64 {
        self.energy(&self.circuit_state(circuit))
    }

    /// ⟨Ψ(ℓ)|H|Ψ(ℓ)⟩ with ℓ₁ applied first.
    pub fn evaluate_tokens(&self, pool: &OperatorPool, tokens: &[usize]) -> Result<f64> {
        Ok(self.circuit_energy(&tokens_to_circuit(pool, tokens)?))
    }
}

pub fn check_tokens(pool: &OperatorPool, tokens: &[usize]) -> Result<()> {
    match tokens.iter().find(|&&t| t >= pool.len()) {
        Some(t) => Err(Error::invalid(format!("token {t} outside pool of size {}", pool.len()))),
        None => Ok(()),
    }
}

pub fn tokens_to_circuit(pool: &OperatorPool, tokens: &[usize]) -> Result<Circuit> {
    check_tokens(pool, tokens)?;
    let mut c = Circuit::new(pool.n_qubits);
    for &t in tokens {
        let (p, time) = pool.entry(t);
        c.push(p, time);
    }
    Ok(c)
}

/// One-shot evaluation from a Pauli Hamiltonian and HF occupation.
pub fn evaluate_tokens(pool: &OperatorPool, tokens: &[usize], h: &PauliSum, hf_occupation: &[usize]) -> Result<f64> {
    Evaluator::new(h, hf_occupation)?.evaluate_tokens(pool, tokens)
}
