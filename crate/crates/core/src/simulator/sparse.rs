//! Row-compressed matrix of a Pauli sum over the computational basis, for
//! repeated products with the same operator.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::state::StateVector;
use crate::error::{Error, Result};
use crate::hamiltonian::PauliSum;

const DROP_TOL: f64 = 1e-14;

#[derive(Debug, Clone)]
pub struct SparseOperator {
    pub n_qubits: usize,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<Complex64>,
}

impl SparseOperator {
    pub fn from_pauli_sum(op: &PauliSum) -> Self {
        let n = op.n_qubits;
        let dim = 1usize << n;
        let mut groups: BTreeMap<u64, Vec<(usize, Complex64)>> = BTreeMap::new();
        for (p, c) in op.iter() {
            groups
                .entry(p.x)
                .or_default()
                .push((p.z as usize, c * crate::hamiltonian::pauli::i_pow(p.y_count())));
        }
        let groups: Vec<(usize, Vec<(usize, Complex64)>)> = groups.into_iter().map(|(m, v)| (m as usize, v)).collect();
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for y in 0..dim {
            for (m, zs) in &groups {
                let x = y ^ m;
                let mut v = Complex64::new(0.0, 0.0);
                for &(z, c) in zs {
                    if (x & z).count_ones() & 1 == 0 {
                        v += c;
                    } else {
                        v -= c;
                    }
                }
                if v.norm() > DROP_TOL {
                    cols.push(x as u32);
                    vals.push(v);
                }
            }
            row_ptr.push(cols.len());
        }
        SparseOperator { n_qubits: n, row_ptr, cols, vals }
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let dim = self.row_ptr.len() - 1;
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for (y, o) in out.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in self.row_ptr[y]..self.row_ptr[y + 1] {
                acc += self.vals[k] * psi[self.cols[k] as usize];
            }
            *o = acc;
        }
        out
    }

    /// ⟨φ|O|ψ⟩.
    pub fn matrix_element(&self, phi: &[Complex64], psi: &[Complex64]) -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        for (y, p) in phi.iter().enumerate() {
            if *p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for k in self.row_ptr[y]..self.row_ptr[y + 1] {
                acc += self.vals[k] * psi[self.cols[k] as usize];
            }
            total += p.conj() * acc;
        }
        total
    }

    pub fn expectation(&self, psi: &StateVector) -> Result<Complex64> {
        if psi.n_qubits != self.n_qubits {
            return Err(Error::SizeMismatch { expected: self.n_qubits, got: psi.n_qubits });
        }
        Ok(self.matrix_element(&psi.amps, &psi.amps))
    }

    /// Real part of ⟨ψ|O|ψ⟩ for a Hermitian operator.
    pub fn energy(&self, psi: &StateVector) -> f64 {
        self.matrix_element(&psi.amps, &psi.amps).re
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::PauliString;

    #[test]
    fn matches_term_by_term() {
        let mut op = PauliSum::zero(3);
        op.add_term("X0 Y2".parse().unwrap(), Complex64::new(0.4, 0.0));
        op.add_term("Z1".parse().unwrap(), Complex64::new(-1.1, 0.0));
        op.add_term(PauliString::IDENTITY, Complex64::new(0.3, 0.0));
        op.add_term("Y0 Y1 Z2".parse().unwrap(), Complex64::new(0.0, 0.2));
        let sp = SparseOperator::from_pauli_sum(&op);
        let mut s = StateVector::basis(3, 3);
        s.apply_pauli_exponential(&"X1 Y2".parse().unwrap(), 0.4);
        s.apply_pauli_exponential(&"Y0".parse().unwrap(), 1.1);
        let a = sp.expectation(&s).unwrap();
        let b = s.expectation(&op).unwrap();
        assert!((a - b).norm() < 1e-14);
        let v1 = sp.apply(&s.amps);
        let v2 = s.apply_pauli_sum(&op).unwrap();
        for (x, y) in v1.iter().zip(&v2.amps) {
            assert!((x - y).norm() < 1e-14);
        }
    }
}
