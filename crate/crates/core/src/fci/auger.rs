//! Auger reference from exact N−1 and N−2 sector states.

use std::collections::HashMap;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamiltonian::{apply_monomial, SpinOrbitalHamiltonian};
use crate::qsceom::{determinant_configuration, label_from_weights, spin_multiplicity};
use crate::spectra::{assemble_auger, AugerOptions, AugerSpectrum, FinalState, OcaModel};

use super::{core_hole_state, det_irrep, sector_diagonalize, SectorSolution, SectorSpec};

/// ⟨S²⟩ = ⟨S₋S₊⟩ + S_z(S_z + 1) for a determinant expansion.
pub fn s2_expectation(dets: &[u64], coeffs: &[f64], n_spatial: usize) -> f64 {
    let mut raised: HashMap<u64, f64> = HashMap::new();
    let mut sz = 0.0;
    for (&d, &c) in dets.iter().zip(coeffs) {
        let na = (0..n_spatial).filter(|p| d >> (2 * p) & 1 == 1).count() as f64;
        let nb = (0..n_spatial).filter(|p| d >> (2 * p + 1) & 1 == 1).count() as f64;
        sz += c * c * 0.5 * (na - nb);
        for p in 0..n_spatial {
            // S₊ = Σ_p a†_pα a_pβ
            if let Some((d2, s)) = apply_monomial(d, &[(2 * p, true), (2 * p + 1, false)]) {
                *raised.entry(d2).or_insert(0.0) += s * c;
            }
        }
    }
    raised.values().map(|x| x * x).sum::<f64>() + sz * (sz + 1.0)
}

/// T|I⟩ for T = a†_c a_s a_r, expressed over `target` determinants.
fn applied(
    sol: &SectorSolution,
    k: usize,
    ops: &[(usize, bool)],
    index: &HashMap<u64, usize>,
    n_target: usize,
) -> DVector<f64> {
    let mut w = DVector::zeros(n_target);
    for (i, &d) in sol.determinants.iter().enumerate() {
        if let Some((d2, s)) = apply_monomial(d, ops) {
            if let Some(&j) = index.get(&d2) {
                w[j] += s * sol.vectors[(i, k)];
            }
        }
    }
    w
}

/// Exact-state analogue of the q-sc-EOM Auger pipeline: the lowest N−1
/// state with a β hole in the core, every N−2 valence-ionized state (core
/// pinned doubly occupied) and the same OCA rates.
pub fn fci_auger_reference(
    ham: &SpinOrbitalHamiltonian,
    core_spatial: usize,
    model: &OcaModel,
    labels: &[String],
    opts: &AugerOptions,
) -> Result<AugerSpectrum> {
    if ham.n_electrons < 3 {
        return Err(Error::invalid("Auger decay needs at least three electrons"));
    }
    let (ion, ki) = core_hole_state(ham, core_spatial)?;
    let core = 2 * core_spatial + 1;
    let spec = SectorSpec::new(ham.n_electrons - 2, 0).with_fixed(2 * core_spatial, true).with_fixed(core, true);
    let fin = sector_diagonalize(ham, &spec)?;
    let index: HashMap<u64, usize> = fin.determinants.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let val: Vec<usize> = (0..ham.n_so()).filter(|&q| q / 2 != core_spatial).collect();
    let mut pairs = Vec::new();
    let mut images = Vec::new();
    for (i, &r) in val.iter().enumerate() {
        for &s in &val[i + 1..] {
            if r % 2 == s % 2 {
                continue;
            }
            pairs.push((r, s));
            images.push(applied(&ion, ki, &[(core, true), (s, false), (r, false)], &index, fin.dim()));
        }
    }
    let hf = ham.hf_bitstring();
    let mut finals = Vec::with_capacity(fin.dim());
    for k in 0..fin.dim() {
        let col: Vec<f64> = fin.vectors.column(k).iter().copied().collect();
        let rdm = pairs
            .iter()
            .zip(&images)
            .map(|(&p, w)| (p, Complex64::new(fin.vectors.column(k).dot(w), 0.0)))
            .collect();
        let weights = fin.determinants.iter().zip(&col).map(|(&d, &c)| (determinant_configuration(d, hf, labels), c * c));
        let dominant = fin.determinants[col.iter().enumerate().max_by(|a, b| a.1.abs().total_cmp(&b.1.abs())).map(|x| x.0).unwrap_or(0)];
        finals.push(FinalState {
            irrep: det_irrep(dominant, &ham.orbital_irreps),
            index: k,
            energy: fin.energies[k],
            multiplicity: spin_multiplicity(s2_expectation(&fin.determinants, &col, ham.n_spatial)),
            configuration: label_from_weights(weights),
            rdm,
        });
    }
    assemble_auger(ion.energies[ki], core, &finals, model, opts)
}
