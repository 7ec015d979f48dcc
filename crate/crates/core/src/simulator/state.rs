use std::io::{Read, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamiltonian::{PauliString, PauliSum};

/// Dense register state, little-endian (qubit 0 is the least significant
/// bit of the basis index).
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub n_qubits: usize,
    pub amps: Vec<Complex64>,
}

#[inline]
fn parity_sign(v: usize) -> f64 {
    if v.count_ones() & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl StateVector {
    pub fn zero_state(n_qubits: usize) -> Self {
        StateVector::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        StateVector { n_qubits, amps }
    }

    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 1 << n_qubits {
            return Err(Error::SizeMismatch { expected: 1 << n_qubits, got: amps.len() });
        }
        Ok(StateVector { n_qubits, amps })
    }

    /// Single determinant with the listed qubits occupied.
    pub fn prepare_determinant(n_qubits: usize, occupied: &[usize]) -> Result<Self> {
        let mut idx = 0usize;
        for &q in occupied {
            if q >= n_qubits {
                return Err(Error::invalid(format!("qubit {q} outside a {n_qubits}-qubit register")));
            }
            idx |= 1 << q;
        }
        Ok(StateVector::basis(n_qubits, idx))
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) {
        let n = self.norm();
        self.amps.iter_mut().for_each(|a| *a /= n);
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        inner(&self.amps, &other.amps)
    }

    /// ψ ← e^{iPt} ψ = cos t ψ + i sin t Pψ.
    pub fn apply_pauli_exponential(&mut self, p: &PauliString, t: f64) {
        let (c, s) = (t.cos(), t.sin());
        let x = p.x as usize;
        let z = p.z as usize;
        if x == 0 {
            let ep = Complex64::new(c, s);
            let em = Complex64::new(c, -s);
            for (k, a) in self.amps.iter_mut().enumerate() {
                *a *= if (k & z).count_ones() & 1 == 0 { ep } else { em };
            }
            return;
        }
        let f = Complex64::new(0.0, s) * crate::hamiltonian::pauli::i_pow(p.y_count());
        let h = 63 - x.leading_zeros() as usize;
        let low = (1usize << h) - 1;
        let half = self.amps.len() >> 1;
        let amps = &mut self.amps;
        for j in 0..half {
            let k = ((j & !low) << 1) | (j & low);
            let k2 = k ^ x;
            let a = amps[k];
            let b = amps[k2];
            amps[k] = a * c + f * b * parity_sign(k2 & z);
            amps[k2] = b * c + f * a * parity_sign(k & z);
        }
    }

    /// ψ ← Pψ.
    pub fn apply_pauli_string(&mut self, p: &PauliString) {
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (k, a) in self.amps.iter().enumerate() {
            let (j, ph) = p.act_on_basis(k);
            out[j] = ph * a;
        }
        self.amps = out;
    }

    /// Unnormalized O|ψ⟩.
    pub fn apply_pauli_sum(&self, op: &PauliSum) -> Result<StateVector> {
        self.check(op)?;
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (p, c) in op.iter() {
            for (k, a) in self.amps.iter().enumerate() {
                let (j, ph) = p.act_on_basis(k);
                out[j] += c * ph * a;
            }
        }
        Ok(StateVector { n_qubits: self.n_qubits, amps: out })
    }

    /// ⟨ψ|O|ψ⟩ term by term.
    pub fn expectation(&self, op: &PauliSum) -> Result<Complex64> {
        self.check(op)?;
        let mut total = Complex64::new(0.0, 0.0);
        for (p, c) in op.iter() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, a) in self.amps.iter().enumerate() {
                let (j, ph) = p.act_on_basis(k);
                acc += self.amps[j].conj() * ph * a;
            }
            total += c * acc;
        }
        Ok(total)
    }

    fn check(&self, op: &PauliSum) -> Result<()> {
        if op.n_qubits != self.n_qubits {
            return Err(Error::SizeMismatch { expected: self.n_qubits, got: op.n_qubits });
        }
        Ok(())
    }

    /// Raw dump: little-endian f64 (re, im) pairs.
    pub fn write_binary<W: Write>(&self, mut w: W) -> Result<()> {
        for a in &self.amps {
            w.write_all(&a.re.to_le_bytes())?;
            w.write_all(&a.im.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(n_qubits: usize, mut r: R) -> Result<Self> {
        let mut amps = Vec::with_capacity(1 << n_qubits);
        let mut buf = [0u8; 8];
        for _ in 0..1usize << n_qubits {
            r.read_exact(&mut buf)?;
            let re = f64::from_le_bytes(buf);
            r.read_exact(&mut buf)?;
            amps.push(Complex64::new(re, f64::from_le_bytes(buf)));
        }
        Ok(StateVector { n_qubits, amps })
    }
}

pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// ⟨φ|P|ψ⟩ without forming Pψ.
pub fn pauli_element(phi: &[Complex64], p: &PauliString, psi: &[Complex64]) -> Complex64 {
    let x = p.x as usize;
    let z = p.z as usize;
    let mut even = Complex64::new(0.0, 0.0);
    let mut odd = Complex64::new(0.0, 0.0);
    for (k, a) in psi.iter().enumerate() {
        let t = phi[k ^ x].conj() * a;
        if (k & z).count_ones() & 1 == 0 {
            even += t;
        } else {
            odd += t;
        }
    }
    crate::hamiltonian::pauli::i_pow(p.y_count()) * (even - odd)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_element_matches_explicit_product() {
        let p: PauliString = "X0 Y2 Z3".parse().unwrap();
        let phi: Vec<Complex64> = (0..16).map(|k| c((k as f64).sin(), (k as f64 * 0.7).cos())).collect();
        let psi: Vec<Complex64> = (0..16).map(|k| c((k as f64 * 1.3).cos(), (k as f64 * 0.2).sin())).collect();
        let mut ppsi = StateVector { n_qubits: 4, amps: psi.clone() };
        ppsi.apply_pauli_string(&p);
        assert!((pauli_element(&phi, &p, &psi) - inner(&phi, &ppsi.amps)).norm() < 1e-13);
    }

    #[test]
    fn determinants() {
        assert_eq!(StateVector::prepare_determinant(2, &[0]).unwrap().amps[1], c(1.0, 0.0));
        let hf12 = StateVector::prepare_determinant(12, &(0..8).collect::<Vec<_>>()).unwrap();
        assert_eq!(hf12.amps[255], c(1.0, 0.0));
        let hf14 = StateVector::prepare_determinant(14, &(0..10).collect::<Vec<_>>()).unwrap();
        assert_eq!(hf14.amps[1023], c(1.0, 0.0));
        assert!(StateVector::prepare_determinant(2, &[2]).is_err());
    }

    #[test]
    fn closed_forms() {
        let t = 0.3;
        let mut s = StateVector::zero_state(1);
        s.apply_pauli_exponential(&PauliString::x(0), t);
        assert!((s.amps[0] - c(t.cos(), 0.0)).norm() < 1e-15);
        assert!((s.amps[1] - c(0.0, t.sin())).norm() < 1e-15);

        let mut s = StateVector::basis(1, 1);
        s.apply_pauli_exponential(&PauliString::z(0), t);
        assert!((s.amps[1] - c(t.cos(), -t.sin())).norm() < 1e-15);

        let mut s = StateVector::basis(3, 5);
        let before = s.clone();
        s.apply_pauli_exponential(&"X0 Y2".parse().unwrap(), 0.0);
        assert_eq!(s, before);
    }

    #[test]
    fn expectation_basics() {
        let s = StateVector::zero_state(1);
        let z = PauliSum::term(1, PauliString::z(0), c(1.0, 0.0));
        assert_eq!(s.expectation(&z).unwrap(), c(1.0, 0.0));
        let id = PauliSum::identity(1, c(1.0, 0.0));
        assert_eq!(s.expectation(&id).unwrap(), c(1.0, 0.0));
        let plus = StateVector::from_amplitudes(1, vec![c(0.5f64.sqrt(), 0.0); 2]).unwrap();
        let zp = plus.apply_pauli_sum(&z).unwrap();
        assert!(plus.inner(&zp).norm() < 1e-15);
        assert!(s.expectation(&PauliSum::identity(2, c(1.0, 0.0))).is_err());
    }

    #[test]
    fn binary_dump_round_trip() {
        let mut s = StateVector::zero_state(3);
        s.apply_pauli_exponential(&"Y0 X1".parse().unwrap(), 0.4);
        let mut buf = Vec::new();
        s.write_binary(&mut buf).unwrap();
        assert_eq!(buf.len(), 8 * 16);
        assert_eq!(StateVector::read_binary(3, &buf[..]).unwrap(), s);
    }
}
