//! Exact diagonalization in determinant sectors.

pub mod auger;

pub use auger::{fci_auger_reference, s2_expectation};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::{apply_monomial, operator_irrep, Irrep, SpinOrbitalHamiltonian};
use crate::linalg::sym_eigen;

pub const DEFAULT_DIMENSION_LIMIT: usize = 8000;
const DEGENERACY_TOL: f64 = 1e-9;

/// Determinant selection: electron count, 2·Sz, optional total irrep and
/// spin orbitals with pinned occupation (core-valence separation), and an
/// optional exact electron count over a set of spin orbitals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorSpec {
    pub n_electrons: usize,
    pub sz2: i32,
    pub irrep: Option<Irrep>,
    pub fixed: Vec<(usize, bool)>,
    #[serde(default)]
    pub counted: Option<(Vec<usize>, usize)>,
}

impl SectorSpec {
    pub fn new(n_electrons: usize, sz2: i32) -> Self {
        SectorSpec { n_electrons, sz2, irrep: None, fixed: Vec::new(), counted: None }
    }

    pub fn with_irrep(mut self, irrep: Irrep) -> Self {
        self.irrep = Some(irrep);
        self
    }

    pub fn with_fixed(mut self, q: usize, occupied: bool) -> Self {
        self.fixed.push((q, occupied));
        self
    }

    /// Keep determinants with exactly `count` electrons in `orbitals`.
    pub fn with_count(mut self, orbitals: Vec<usize>, count: usize) -> Self {
        self.counted = Some((orbitals, count));
        self
    }

    /// Core-excited sector: exactly one electron left in the core spatial
    /// orbitals.
    pub fn core_excited(n_electrons: usize, sz2: i32, core_spatial: &[usize]) -> Self {
        let so = core_spatial.iter().flat_map(|&c| [2 * c, 2 * c + 1]).collect();
        SectorSpec::new(n_electrons, sz2).with_count(so, 2 * core_spatial.len() - 1)
    }
}

fn det_sz2(det: u64) -> i32 {
    let alpha = (det & 0x5555_5555_5555_5555).count_ones() as i32;
    let beta = (det & 0xAAAA_AAAA_AAAA_AAAA).count_ones() as i32;
    alpha - beta
}

fn det_irrep(det: u64, irreps: &[Irrep]) -> Irrep {
    let occ: Vec<usize> = (0..64).filter(|q| det >> q & 1 == 1).collect();
    operator_irrep(&occ, irreps)
}

/// Ascending occupation bitstrings of the sector.
pub fn sector_determinants(ham: &SpinOrbitalHamiltonian, spec: &SectorSpec) -> Result<Vec<u64>> {
    let n_so = ham.n_so();
    if spec.n_electrons > n_so || n_so > 63 {
        return Err(Error::invalid(format!("{} electrons in {} spin orbitals", spec.n_electrons, n_so)));
    }
    if let Some(&(q, _)) = spec.fixed.iter().find(|(q, _)| *q >= n_so) {
        return Err(Error::invalid(format!("pinned spin orbital {q} outside {n_so}")));
    }
    let mut out = Vec::new();
    let keep = |d: u64| {
        det_sz2(d) == spec.sz2
            && spec.fixed.iter().all(|&(q, occ)| (d >> q & 1 == 1) == occ)
            && spec.irrep.map_or(true, |g| det_irrep(d, &ham.orbital_irreps) == g)
            && spec.counted.as_ref().map_or(true, |(qs, n)| qs.iter().filter(|&&q| d >> q & 1 == 1).count() == *n)
    };
    if spec.n_electrons == 0 {
        if keep(0) {
            out.push(0);
        }
        return Ok(out);
    }
    // Gosper's hack over fixed-popcount words
    let mut d: u64 = (1u64 << spec.n_electrons) - 1;
    let limit = 1u64 << n_so;
    while d < limit {
        if keep(d) {
            out.push(d);
        }
        let c = d & d.wrapping_neg();
        let r = d + c;
        d = (((r ^ d) >> 2) / c) | r;
    }
    Ok(out)
}

/// Dense sector matrix ⟨D_i|H|D_j⟩ in the given determinant order.
pub fn sector_matrix(ham: &SpinOrbitalHamiltonian, dets: &[u64]) -> DMatrix<f64> {
    let n = dets.len();
    let n_so = ham.n_so();
    let mut m = DMatrix::zeros(n, n);
    let index = |d: u64| dets.binary_search(&d).ok();
    for (j, &dj) in dets.iter().enumerate() {
        m[(j, j)] += ham.e_core;
        let occ: Vec<usize> = (0..n_so).filter(|&q| dj >> q & 1 == 1).collect();
        for &q in &occ {
            for p in (q % 2..n_so).step_by(2) {
                let v = ham.h(p / 2, q / 2);
                if v == 0.0 {
                    continue;
                }
                if let Some((d, s)) = apply_monomial(dj, &[(p, true), (q, false)]) {
                    if let Some(i) = index(d) {
                        m[(i, j)] += s * v;
                    }
                }
            }
        }
        for &q in &occ {
            for &s in &occ {
                if s == q {
                    continue;
                }
                for p in (q % 2..n_so).step_by(2) {
                    for r in (s % 2..n_so).step_by(2) {
                        let v = ham.g(p / 2, q / 2, r / 2, s / 2);
                        if v == 0.0 {
                            continue;
                        }
                        let ops = [(p, true), (r, true), (s, false), (q, false)];
                        if let Some((d, sg)) = apply_monomial(dj, &ops) {
                            if let Some(i) = index(d) {
                                m[(i, j)] += 0.5 * sg * v;
                            }
                        }
                    }
                }
            }
        }
    }
    m
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SectorSolution {
    pub spec: SectorSpec,
    pub determinants: Vec<u64>,
    pub energies: Vec<f64>,
    /// Column k is eigenvector k over `determinants`.
    pub vectors: DMatrix<f64>,
}

impl SectorSolution {
    pub fn dim(&self) -> usize {
        self.determinants.len()
    }

    /// Eigenvector k scattered into a 2^n register (JW ordering).
    pub fn state_amplitudes(&self, k: usize, n_qubits: usize) -> Vec<num_complex::Complex64> {
        let mut amps = vec![num_complex::Complex64::new(0.0, 0.0); 1 << n_qubits];
        for (i, &d) in self.determinants.iter().enumerate() {
            amps[d as usize] = self.vectors[(i, k)].into();
        }
        amps
    }

    /// ⟨n_q⟩ in eigenstate k.
    pub fn occupation(&self, k: usize, q: usize) -> f64 {
        self.determinants
            .iter()
            .enumerate()
            .filter(|(_, &d)| d >> q & 1 == 1)
            .map(|(i, _)| self.vectors[(i, k)].powi(2))
            .sum()
    }
}

pub fn sector_diagonalize(ham: &SpinOrbitalHamiltonian, spec: &SectorSpec) -> Result<SectorSolution> {
    sector_diagonalize_limited(ham, spec, DEFAULT_DIMENSION_LIMIT)
}

pub fn sector_diagonalize_limited(
    ham: &SpinOrbitalHamiltonian,
    spec: &SectorSpec,
    limit: usize,
) -> Result<SectorSolution> {
    let determinants = sector_determinants(ham, spec)?;
    if determinants.len() > limit {
        return Err(Error::SectorTooLarge { dim: determinants.len(), limit });
    }
    if determinants.is_empty() {
        return Err(Error::invalid("sector contains no determinants"));
    }
    let m = sector_matrix(ham, &determinants);
    let (energies, vectors) = sym_eigen(&m, DEGENERACY_TOL);
    Ok(SectorSolution { spec: spec.clone(), determinants, energies, vectors })
}

/// Ground energy of the neutral closed-shell sector.
pub fn ground_energy(ham: &SpinOrbitalHamiltonian) -> Result<f64> {
    Ok(sector_diagonalize(ham, &SectorSpec::new(ham.n_electrons, 0))?.energies[0])
}

/// Lowest N−1 eigenstate with a β hole in `core` (occupation below ½),
/// searched over the unrestricted N−1, ΔSz = +½ sector.
pub fn core_hole_state(ham: &SpinOrbitalHamiltonian, core: usize) -> Result<(SectorSolution, usize)> {
    let spec = SectorSpec::new(ham.n_electrons - 1, 1);
    let sol = sector_diagonalize(ham, &spec)?;
    let q = 2 * core + 1;
    let k = (0..sol.energies.len())
        .find(|&k| sol.occupation(k, q) < 0.5)
        .ok_or_else(|| Error::invalid("no core-hole state in the N-1 sector"))?;
    Ok((sol, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> SpinOrbitalHamiltonian {
        let mut h = SpinOrbitalHamiltonian::zeros(2, 2, 0.7);
        h.set_h(0, 0, -1.1);
        h.set_h(1, 1, -0.2);
        h.set_h(0, 1, 0.13);
        h.set_g(0, 0, 0, 0, 0.6);
        h.set_g(1, 1, 1, 1, 0.5);
        h.set_g(0, 0, 1, 1, 0.45);
        h.set_g(0, 1, 0, 1, 0.1);
        h.set_g(0, 0, 0, 1, 0.03);
        h
    }

    #[test]
    fn one_electron_sector_is_h() {
        let ham = toy();
        let sol = sector_diagonalize(&ham, &SectorSpec::new(1, 1)).unwrap();
        let hm = DMatrix::from_row_slice(2, 2, &[-1.1, 0.13, 0.13, -0.2]);
        let (e, _) = sym_eigen(&hm, 1e-12);
        for (a, b) in sol.energies.iter().zip(e) {
            assert!((a - (b + 0.7)).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_sector_is_core_energy() {
        let sol = sector_diagonalize(&toy(), &SectorSpec::new(0, 0)).unwrap();
        assert_eq!(sol.energies, vec![0.7]);
    }

    #[test]
    fn matches_dense_pauli_hamiltonian() {
        let ham = toy();
        let dense = ham.to_pauli(4).unwrap().to_dense();
        let sol = sector_diagonalize(&ham, &SectorSpec::new(2, 0)).unwrap();
        for (i, &di) in sol.determinants.iter().enumerate() {
            for (j, &dj) in sol.determinants.iter().enumerate() {
                let m = sector_matrix(&ham, &sol.determinants)[(i, j)];
                assert!((dense[(di as usize, dj as usize)].re - m).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn binomial_dimensions() {
        let ham = SpinOrbitalHamiltonian::zeros(7, 10, 0.0);
        let dims: Vec<usize> = [(10, 0), (9, 1), (8, 0), (8, 2)]
            .iter()
            .map(|&(n, s)| sector_determinants(&ham, &SectorSpec::new(n, s)).unwrap().len())
            .collect();
        assert_eq!(dims, vec![21 * 21, 21 * 35, 35 * 35, 21 * 35]);
    }

    #[test]
    fn pinned_and_irrep_filters() {
        let mut ham = SpinOrbitalHamiltonian::zeros(3, 2, 0.0);
        ham.orbital_irreps = vec![Irrep::A1, Irrep::B1, Irrep::B2];
        let spec = SectorSpec::new(2, 0).with_fixed(0, true).with_irrep(Irrep::B1);
        let d = sector_determinants(&ham, &spec).unwrap();
        assert_eq!(d, vec![0b001001]);
        assert!(sector_determinants(&ham, &SectorSpec::new(7, 0)).is_err());
    }

    #[test]
    fn core_excited_count() {
        let ham = SpinOrbitalHamiltonian::zeros(3, 2, 0.0);
        let d = sector_determinants(&ham, &SectorSpec::core_excited(2, 0, &[0])).unwrap();
        // one core electron, the other of opposite spin in orbital 1 or 2
        assert_eq!(d.len(), 4);
        assert!(d.iter().all(|&x| (x & 0b11).count_ones() == 1));
    }

    #[test]
    fn oversize_is_explicit() {
        let ham = SpinOrbitalHamiltonian::zeros(7, 10, 0.0);
        let e = sector_diagonalize_limited(&ham, &SectorSpec::new(8, 0), 100).unwrap_err();
        assert!(matches!(e, Error::SectorTooLarge { dim: 1225, limit: 100 }));
    }
}
