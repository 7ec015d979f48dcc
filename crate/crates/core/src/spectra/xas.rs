use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::{FermionOperator, Irrep};
use crate::qsceom::{state_label, BlockStates, Channel, ChannelSolution, ElementEngine, EomSetup};
use crate::units::HARTREE_TO_EV;

use super::broaden::{broaden, Spectrum};

type C = Complex64;

pub const XAS_HWHM_EV: f64 = 0.4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XasTransition {
    pub irrep: Irrep,
    pub index: usize,
    pub energy: f64,
    pub excitation_ev: f64,
    pub dipole: [C; 3],
    pub oscillator_strength: f64,
    pub multiplicity: Option<u32>,
    pub configuration: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XasSpectrum {
    pub ground_energy: f64,
    /// Sorted by excitation energy.
    pub transitions: Vec<XasTransition>,
    pub spectrum: Spectrum,
    pub evaluations: usize,
}

/// γ^(n)_pq = ⟨n|a†_p a_q|0⟩ for every state n of one EE block, over
/// same-spin (p, q). Returned as one matrix per state (spin orbitals).
pub fn transition_one_rdm(
    engine: &mut ElementEngine,
    block_states: &BlockStates,
    vectors: &DMatrix<C>,
    reference: &BlockStates,
    n_so: usize,
) -> Vec<DMatrix<C>> {
    let mut gamma = vec![DMatrix::from_element(n_so, n_so, C::new(0.0, 0.0)); vectors.ncols()];
    for p in 0..n_so {
        for q in (p % 2..n_so).step_by(2) {
            let t = FermionOperator::monomial(C::new(1.0, 0.0), vec![(p, true), (q, false)]);
            let o = engine.transition_cross(&t, block_states, reference);
            let col = vectors.adjoint() * o;
            for (n, g) in gamma.iter_mut().enumerate() {
                g[(p, q)] = col[(n, 0)];
            }
        }
    }
    gamma
}

/// μ^α = Σ_pq γ_pq d^α_pq with spatial dipole integrals expanded over spin.
pub fn transition_dipole(gamma: &DMatrix<C>, dipole_mo: &[DMatrix<f64>; 3]) -> [C; 3] {
    let n_so = gamma.nrows();
    let mut mu = [C::new(0.0, 0.0); 3];
    for (a, d) in dipole_mo.iter().enumerate() {
        for p in 0..n_so {
            for q in (p % 2..n_so).step_by(2) {
                mu[a] += gamma[(p, q)] * d[(p / 2, q / 2)];
            }
        }
    }
    mu
}

/// f = (2/3) ΔE Σ_α |μ_α|².
pub fn oscillator_strength(delta_e: f64, mu: &[C; 3]) -> f64 {
    2.0 / 3.0 * delta_e * mu.iter().map(|m| m.norm_sqr()).sum::<f64>()
}

/// Core-excitation sticks (ΔE eV, f) from a CVS EE solution on the same
/// register and circuit as `setup`.
pub fn xas_spectrum(
    setup: &EomSetup,
    ee: &ChannelSolution,
    dipole_mo: &[DMatrix<f64>; 3],
    labels: &[String],
    hwhm: f64,
) -> Result<XasSpectrum> {
    if ee.channel != Channel::Ee {
        return Err(Error::invalid(format!("XAS needs the EE channel, got {}", ee.channel)));
    }
    let n_so = setup.ctx.n_spin_orbitals;
    if dipole_mo[0].nrows() * 2 != n_so {
        return Err(Error::SizeMismatch { expected: n_so / 2, got: dipole_mo[0].nrows() });
    }
    let reference = BlockStates::reference(setup.ctx.hf_determinant(), setup.circuit);
    let psi0 = &reference.states[0];
    let ground_energy = setup.hamiltonian.matrix_element(psi0, psi0).re;
    let mut engine = ElementEngine::new(setup.circuit, setup.mode);
    let mut transitions = Vec::new();
    for (block, states) in ee.blocks.iter().zip(&ee.states) {
        if block.is_empty() {
            continue;
        }
        let gamma = transition_one_rdm(&mut engine, states, &block.vectors, &reference, n_so);
        let ops = ee.basis.block(block.irrep);
        for (k, g) in gamma.iter().enumerate() {
            let de = block.energies[k] - ground_energy;
            let mu = transition_dipole(g, dipole_mo);
            transitions.push(XasTransition {
                irrep: block.irrep,
                index: k,
                energy: block.energies[k],
                excitation_ev: de * HARTREE_TO_EV,
                dipole: mu,
                oscillator_strength: oscillator_strength(de, &mu),
                multiplicity: block.multiplicity[k],
                configuration: state_label(ops, &block.vectors, k, labels),
            });
        }
    }
    transitions.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    let sticks: Vec<(f64, f64)> = transitions.iter().map(|t| (t.excitation_ev, t.oscillator_strength)).collect();
    let spectrum = broaden(&sticks, hwhm)?;
    Ok(XasSpectrum { ground_energy, transitions, spectrum, evaluations: engine.evaluations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strength_is_nonnegative_and_quadratic() {
        let mu = [C::new(0.1, 0.2), C::new(0.0, 0.0), C::new(-0.3, 0.0)];
        let f = oscillator_strength(2.0, &mu);
        assert!((f - 2.0 / 3.0 * 2.0 * 0.14).abs() < 1e-15);
        let mu2 = mu.map(|m| m * 2.0);
        assert!((oscillator_strength(2.0, &mu2) - 4.0 * f).abs() < 1e-14);
    }

    #[test]
    fn dipole_contraction_is_spin_diagonal() {
        let mut g = DMatrix::from_element(4, 4, C::new(0.0, 0.0));
        g[(0, 2)] = C::new(1.0, 0.0);
        g[(0, 3)] = C::new(5.0, 0.0);
        let d = [DMatrix::from_row_slice(2, 2, &[0.0, 0.7, 0.7, 0.0]), DMatrix::zeros(2, 2), DMatrix::zeros(2, 2)];
        let mu = transition_dipole(&g, &d);
        assert!((mu[0].re - 0.7).abs() < 1e-15);
    }
}
