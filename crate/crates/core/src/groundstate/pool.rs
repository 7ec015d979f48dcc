use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::{spin_of, FermionOperator, PauliString};

/// Discrete evolution times ±2^k/160, k = −1..4, ascending.
pub fn time_set() -> Vec<f64> {
    let mut pos: Vec<f64> = (-1..=4).map(|k| 2f64.powi(k) / 160.0).collect();
    let mut all: Vec<f64> = pos.iter().rev().map(|t| -t).collect();
    all.append(&mut pos);
    all
}

/// Spin-orbital excitation a†_{c0} a†_{c1} … a_{a1} a_{a0}; `annihilations`
/// hold the occupied indices in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Excitation {
    pub creations: Vec<usize>,
    pub annihilations: Vec<usize>,
}

impl Excitation {
    /// T = a†_a … a_i with creations in ascending order followed by
    /// annihilations in descending order.
    pub fn operator(&self) -> FermionOperator {
        let mut ops: Vec<(usize, bool)> = self.creations.iter().map(|&q| (q, true)).collect();
        ops.extend(self.annihilations.iter().rev().map(|&q| (q, false)));
        FermionOperator::monomial(num_complex::Complex64::new(1.0, 0.0), ops)
    }

    /// Anti-Hermitian generator T − T†.
    pub fn generator(&self) -> FermionOperator {
        let t = self.operator();
        let mut g = t.clone();
        for (c, ops) in t.adjoint().terms {
            g.push(-c, ops);
        }
        g
    }

    pub fn rank(&self) -> usize {
        self.creations.len()
    }
}

/// Spin-orbital singles then Sz-conserving doubles, each in ascending
/// (occupied, virtual) index order.
pub fn uccsd_excitations(n_so: usize, n_electrons: usize) -> Result<Vec<Excitation>> {
    if n_so == 0 || n_electrons == 0 || n_electrons >= n_so {
        return Err(Error::invalid("UCCSD needs at least one occupied and one virtual spin orbital"));
    }
    let occ: Vec<usize> = (0..n_electrons).collect();
    let vir: Vec<usize> = (n_electrons..n_so).collect();
    let sz = |q: usize| if spin_of(q) == crate::hamiltonian::Spin::Alpha { 1i32 } else { -1 };
    let mut out = Vec::new();
    for &i in &occ {
        for &a in &vir {
            if sz(i) == sz(a) {
                out.push(Excitation { creations: vec![a], annihilations: vec![i] });
            }
        }
    }
    for (x, &i) in occ.iter().enumerate() {
        for &j in &occ[x + 1..] {
            for (y, &a) in vir.iter().enumerate() {
                for &b in &vir[y + 1..] {
                    if sz(i) + sz(j) == sz(a) + sz(b) {
                        out.push(Excitation { creations: vec![a, b], annihilations: vec![i, j] });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// JW image of each generator as Σ_k i·r_k P_k, returned as (P_k, r_k).
pub fn generator_strings(exc: &Excitation, n_qubits: usize) -> Vec<(PauliString, f64)> {
    let g = exc.generator().to_pauli(n_qubits);
    g.iter()
        .map(|(p, c)| {
            debug_assert!(c.re.abs() < 1e-12, "generator must be anti-Hermitian");
            (*p, c.im)
        })
        .collect()
}

/// Token vocabulary: unit-coefficient Pauli strings × discrete times.
/// Token ℓ = string_index · |times| + time_index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorPool {
    pub n_qubits: usize,
    pub strings: Vec<PauliString>,
    pub times: Vec<f64>,
}

impl OperatorPool {
    pub fn len(&self) -> usize {
        self.strings.len() * self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    pub fn entry(&self, token: usize) -> (PauliString, f64) {
        let nt = self.times.len();
        (self.strings[token / nt], self.times[token % nt])
    }

    pub fn token(&self, string_index: usize, time_index: usize) -> usize {
        string_index * self.times.len() + time_index
    }

    pub fn string_of(&self, token: usize) -> usize {
        token / self.times.len()
    }

    pub fn time_index_of(&self, token: usize) -> usize {
        token % self.times.len()
    }
}

/// Pool from the UCCSD generator strings (first-appearance order, no
/// duplicates) crossed with the discrete time set.
pub fn build_uccsd_pool(n_qubits: usize, n_electrons: usize) -> Result<(OperatorPool, Vec<Excitation>)> {
    let excitations = uccsd_excitations(n_qubits, n_electrons)?;
    let mut strings: Vec<PauliString> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for e in &excitations {
        for (p, _) in generator_strings(e, n_qubits) {
            if seen.insert(p) {
                strings.push(p);
            }
        }
    }
    Ok((OperatorPool { n_qubits, strings, times: time_set() }, excitations))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn time_values() {
        let t = time_set();
        assert_eq!(t.len(), 12);
        for v in [1.0 / 320.0, 1.0 / 160.0, 1.0 / 80.0, 1.0 / 40.0, 1.0 / 20.0, 1.0 / 10.0] {
            assert!(t.iter().any(|&x| (x - v).abs() < 1e-15));
            assert!(t.iter().any(|&x| (x + v).abs() < 1e-15));
        }
    }

    #[test]
    fn two_orbital_toy() {
        let (pool, exc) = build_uccsd_pool(4, 2).unwrap();
        // one single per spin, one αβ double
        assert_eq!(exc.len(), 3);
        assert_eq!(exc[2].creations, vec![2, 3]);
        assert_eq!(pool.strings.len(), 2 + 2 + 8);
        assert_eq!(pool.len(), pool.strings.len() * 12);
    }

    #[test]
    fn water_counts() {
        let (pool, exc) = build_uccsd_pool(12, 8).unwrap();
        let singles = exc.iter().filter(|e| e.rank() == 1).count();
        assert_eq!((singles, exc.len() - singles), (16, 76));
        assert_eq!(pool.strings.len(), 640);
        assert_eq!(pool.len(), 7680);
    }

    #[test]
    fn generator_strings_commute() {
        let e = Excitation { creations: vec![4, 7], annihilations: vec![0, 3] };
        let s = generator_strings(&e, 8);
        assert_eq!(s.len(), 8);
        for (a, _) in &s {
            for (b, _) in &s {
                assert!(a.commutes_with(b));
            }
        }
    }

    #[test]
    fn empty_active_space_rejected() {
        assert!(uccsd_excitations(0, 0).is_err());
        assert!(uccsd_excitations(4, 4).is_err());
    }
}
