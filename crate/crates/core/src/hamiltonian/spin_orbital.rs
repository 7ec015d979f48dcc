use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::fermion::jordan_wigner;
use super::irrep::Irrep;
use super::pauli::{PauliString, PauliSum};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Alpha,
    Beta,
}

/// Interleaved ordering: α on even qubits, β on odd.
pub fn spin_orbital_index(p: usize, spin: Spin) -> usize {
    2 * p + if spin == Spin::Alpha { 0 } else { 1 }
}

pub fn spin_of(q: usize) -> Spin {
    if q % 2 == 0 {
        Spin::Alpha
    } else {
        Spin::Beta
    }
}

/// Spatial-orbital integrals of a (possibly active-space) Hamiltonian.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinOrbitalHamiltonian {
    pub n_spatial: usize,
    pub n_electrons: usize,
    /// h_pq, row-major.
    pub h: Vec<f64>,
    /// (pq|rs), index ((p n + q) n + r) n + s.
    pub g: Vec<f64>,
    pub e_core: f64,
    pub orbital_irreps: Vec<Irrep>,
    /// Spatial orbitals treated as core for CVS selection.
    pub core_spatial_indices: Vec<usize>,
}

impl SpinOrbitalHamiltonian {
    pub fn zeros(n_spatial: usize, n_electrons: usize, e_core: f64) -> Self {
        SpinOrbitalHamiltonian {
            n_spatial,
            n_electrons,
            h: vec![0.0; n_spatial * n_spatial],
            g: vec![0.0; n_spatial.pow(4)],
            e_core,
            orbital_irreps: vec![Irrep::A1; n_spatial],
            core_spatial_indices: Vec::new(),
        }
    }

    pub fn n_so(&self) -> usize {
        2 * self.n_spatial
    }

    #[inline]
    pub fn h(&self, p: usize, q: usize) -> f64 {
        self.h[p * self.n_spatial + q]
    }

    #[inline]
    pub fn g(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        let n = self.n_spatial;
        self.g[((p * n + q) * n + r) * n + s]
    }

    pub fn set_h(&mut self, p: usize, q: usize, v: f64) {
        let n = self.n_spatial;
        self.h[p * n + q] = v;
        self.h[q * n + p] = v;
    }

    /// Set (pq|rs) and its 8-fold images.
    pub fn set_g(&mut self, p: usize, q: usize, r: usize, s: usize, v: f64) {
        let n = self.n_spatial;
        for (a, b) in [(p, q), (q, p)] {
            for (c, d) in [(r, s), (s, r)] {
                self.g[((a * n + b) * n + c) * n + d] = v;
                self.g[((c * n + d) * n + a) * n + b] = v;
            }
        }
    }

    pub fn is_core(&self, spatial: usize) -> bool {
        self.core_spatial_indices.contains(&spatial)
    }

    /// Spin orbitals 0..N−1 (the lowest N/2 spatial orbitals doubly filled).
    pub fn hf_occupation(&self) -> Vec<usize> {
        (0..self.n_electrons).collect()
    }

    pub fn hf_bitstring(&self) -> u64 {
        (1u64 << self.n_electrons) - 1
    }

    /// Closed-shell determinant energy from the integrals.
    pub fn hf_energy(&self) -> f64 {
        let occ = self.n_electrons / 2;
        let mut e = self.e_core;
        for i in 0..occ {
            e += 2.0 * self.h(i, i);
            for j in 0..occ {
                e += 2.0 * self.g(i, i, j, j) - self.g(i, j, j, i);
            }
        }
        e
    }

    /// Largest violation of h symmetry and 8-fold ERI symmetry.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.n_spatial;
        let mut worst = 0.0f64;
        for p in 0..n {
            for q in 0..n {
                worst = worst.max((self.h(p, q) - self.h(q, p)).abs());
                for r in 0..n {
                    for s in 0..n {
                        let v = self.g(p, q, r, s);
                        worst = worst
                            .max((v - self.g(q, p, r, s)).abs())
                            .max((v - self.g(p, q, s, r)).abs())
                            .max((v - self.g(r, s, p, q)).abs());
                    }
                }
            }
        }
        worst
    }

    /// Largest integral that the supplied orbital irreps declare zero.
    pub fn irrep_violation(&self) -> f64 {
        let n = self.n_spatial;
        let ir = &self.orbital_irreps;
        let mut worst = 0.0f64;
        for p in 0..n {
            for q in 0..n {
                if ir[p] != ir[q] {
                    worst = worst.max(self.h(p, q).abs());
                }
                for r in 0..n {
                    for s in 0..n {
                        if ir[p].product(ir[q]).product(ir[r]).product(ir[s]) != Irrep::A1 {
                            worst = worst.max(self.g(p, q, r, s).abs());
                        }
                    }
                }
            }
        }
        worst
    }

    /// Jordan–Wigner image of the Hamiltonian on `n_qubits` (≥ 2·n_spatial;
    /// any extra high qubits are idle).
    pub fn to_pauli(&self, n_qubits: usize) -> Result<PauliSum> {
        hamiltonian_to_pauli(self, n_qubits)
    }
}

pub fn hamiltonian_to_pauli(ham: &SpinOrbitalHamiltonian, n_qubits: usize) -> Result<PauliSum> {
    let n = ham.n_spatial;
    if n_qubits < 2 * n {
        return Err(Error::invalid(format!(
            "register of {n_qubits} qubits too small for {n} spatial orbitals"
        )));
    }
    let one = |q: usize, dagger: bool| (q, dagger);
    let mut out = PauliSum::identity(n_qubits, Complex64::new(ham.e_core, 0.0));
    for p in 0..n {
        for q in 0..n {
            let v = ham.h(p, q);
            if v.abs() < 1e-14 {
                continue;
            }
            for s in 0..2 {
                let t = jordan_wigner(&[one(2 * p + s, true), one(2 * q + s, false)], n_qubits);
                out.add_scaled(&t, Complex64::new(v, 0.0));
            }
        }
    }
    // ½ Σ (pq|rs) a†_pσ a†_rτ a_sτ a_qσ
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let v = ham.g(p, q, r, s);
                    if v.abs() < 1e-14 {
                        continue;
                    }
                    for sig in 0..2 {
                        for tau in 0..2 {
                            let (a, b, c, d) = (2 * p + sig, 2 * r + tau, 2 * s + tau, 2 * q + sig);
                            if a == b || c == d {
                                continue;
                            }
                            let t = jordan_wigner(&[one(a, true), one(b, true), one(c, false), one(d, false)], n_qubits);
                            out.add_scaled(&t, Complex64::new(0.5 * v, 0.0));
                        }
                    }
                }
            }
        }
    }
    Ok(out.canonical())
}

fn sum_terms(n_qubits: usize, terms: &[(f64, Vec<(usize, bool)>)]) -> PauliSum {
    let mut s = PauliSum::zero(n_qubits);
    for (c, ops) in terms {
        s.add_scaled(&jordan_wigner(ops, n_qubits), Complex64::new(*c, 0.0));
    }
    s
}

/// Ŝ_z on an interleaved register.
pub fn sz_operator(n_qubits: usize) -> Result<PauliSum> {
    if n_qubits % 2 != 0 {
        return Err(Error::invalid("spin operators need an even register"));
    }
    let mut s = PauliSum::zero(n_qubits);
    for q in 0..n_qubits {
        let sign = if q % 2 == 0 { -0.25 } else { 0.25 };
        s.add_term(PauliString::z(q), Complex64::new(sign, 0.0));
    }
    Ok(s.canonical())
}

/// Ŝ² = Ŝ₋Ŝ₊ + Ŝ_z(Ŝ_z + 1).
pub fn s2_operator(n_qubits: usize) -> Result<PauliSum> {
    let sz = sz_operator(n_qubits)?;
    let n = n_qubits / 2;
    let s_plus = sum_terms(n_qubits, &(0..n).map(|p| (1.0, vec![(2 * p, true), (2 * p + 1, false)])).collect::<Vec<_>>());
    let s_minus = s_plus.adjoint();
    let sz1 = &sz + &PauliSum::identity(n_qubits, Complex64::new(1.0, 0.0));
    Ok((&(&s_minus * &s_plus) + &(&sz * &sz1)).canonical())
}

/// Total particle-number operator.
pub fn number_operator(n_qubits: usize) -> PauliSum {
    sum_terms(n_qubits, &(0..n_qubits).map(|q| (1.0, vec![(q, true), (q, false)])).collect::<Vec<_>>()).canonical()
}
