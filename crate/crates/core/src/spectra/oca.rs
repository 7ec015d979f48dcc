use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::Irrep;
use crate::qsceom::{state_label, AugerTransitions, ChannelSolution};
use crate::units::HARTREE_TO_EV;

use super::broaden::{broaden, Spectrum};
use super::mbs::MbsProjection;
use super::table::AtomicIntegralTable;

type C = Complex64;

pub const AUGER_HWHM_EV: f64 = 1.0;
pub const REPORTING_FLOOR: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AugerOptions {
    pub hwhm: f64,
    /// Channels with Γ_rel below this are listed but not plotted.
    pub floor: f64,
}

impl Default for AugerOptions {
    fn default() -> Self {
        AugerOptions { hwhm: AUGER_HWHM_EV, floor: REPORTING_FLOOR }
    }
}

/// Spatial OCA integrals Q_lm[p, q] = Σ_νρ ⟨χ_Elm χ_core|χ_ν χ_ρ⟩ D_νp D_ρq
/// (times D_core,c) over MOs, in the orthonormalized MBS frame. ν and ρ run
/// over the valence functions; entries naming the core function are skipped.
#[derive(Debug, Clone)]
pub struct OcaModel {
    pub waves: Vec<(i32, i32)>,
    pub q: Vec<DMatrix<f64>>,
}

impl OcaModel {
    pub fn new(table: &AtomicIntegralTable, mbs: &MbsProjection, core_mo: usize) -> Result<Self> {
        let d = &mbs.orthonormal;
        if core_mo >= d.ncols() {
            return Err(Error::invalid(format!("core MO {core_mo} outside {} MOs", d.ncols())));
        }
        let core_factor = match mbs.row(&table.core) {
            Some(r) => d[(r, core_mo)],
            None if table.is_empty() => 1.0,
            None => return Err(Error::invalid(format!("core function `{}` not in the minimal basis", table.core))),
        };
        let waves = table.partial_waves();
        let mut q = Vec::with_capacity(waves.len());
        for &(l, m) in &waves {
            let mut t = DMatrix::zeros(d.nrows(), d.nrows());
            for ((l2, m2, nu, rho), &v) in table.entries.range((l, m, String::new(), String::new())..) {
                if (*l2, *m2) != (l, m) {
                    break;
                }
                if *nu == table.core || *rho == table.core {
                    continue;
                }
                match (mbs.row(nu), mbs.row(rho)) {
                    (Some(a), Some(b)) => t[(a, b)] = v,
                    _ => log::warn!("table function ({nu}, {rho}) is not in the minimal basis; ignored"),
                }
            }
            q.push(d.transpose() * t * d * core_factor);
        }
        Ok(OcaModel { waves, q })
    }

    /// B_lm per continuum spin (α, β) from R_{csr} = ⟨K|a†_c a_s a_r|I⟩
    /// given over pairs r < s. ⟨Elm c|r s⟩ is nonzero only for σ_r = σ_E
    /// and σ_s = σ_c; the (s, r) ordering enters with R_{crs} = −R_{csr}.
    pub fn amplitudes(&self, core: usize, rdm: &[((usize, usize), C)]) -> Vec<[C; 2]> {
        let zero = C::new(0.0, 0.0);
        let mut b = vec![[zero; 2]; self.waves.len()];
        for &((r, s), value) in rdm {
            for (w, q) in self.q.iter().enumerate() {
                if s % 2 == core % 2 {
                    b[w][r % 2] += value * q[(r / 2, s / 2)];
                }
                if r % 2 == core % 2 {
                    b[w][s % 2] -= value * q[(s / 2, r / 2)];
                }
            }
        }
        b
    }

    /// Γ = 2π Σ_{l,m,σ_E} |B|².
    pub fn rate(&self, core: usize, rdm: &[((usize, usize), C)]) -> f64 {
        let b = self.amplitudes(core, rdm);
        2.0 * std::f64::consts::PI * b.iter().flat_map(|x| x.iter()).map(|z| z.norm_sqr()).sum::<f64>()
    }
}

/// One final state with its transition density from the initial state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinalState {
    pub irrep: Irrep,
    pub index: usize,
    pub energy: f64,
    pub multiplicity: Option<u32>,
    pub configuration: String,
    pub rdm: Vec<((usize, usize), C)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AugerChannel {
    pub irrep: Irrep,
    pub index: usize,
    pub e_dip: f64,
    pub e_kin_ev: f64,
    pub gamma_au: f64,
    pub gamma_rel: f64,
    pub multiplicity: Option<u32>,
    pub configuration: String,
    pub reported: bool,
}

impl AugerChannel {
    pub fn multiplicity_symbol(&self) -> String {
        multiplicity_symbol(self.multiplicity)
    }
}

pub fn multiplicity_symbol(m: Option<u32>) -> String {
    match m {
        Some(1) => "S".into(),
        Some(2) => "D".into(),
        Some(3) => "T".into(),
        Some(4) => "Q".into(),
        Some(n) => n.to_string(),
        None => "?".into(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AugerSpectrum {
    pub initial_energy: f64,
    pub core: usize,
    /// Sorted by descending kinetic energy.
    pub channels: Vec<AugerChannel>,
    pub spectrum: Spectrum,
    pub floor: f64,
}

impl AugerSpectrum {
    pub fn strongest(&self) -> Option<&AugerChannel> {
        self.channels.iter().max_by(|a, b| a.gamma_au.total_cmp(&b.gamma_au))
    }

    pub fn find(&self, configuration: &str, multiplicity: u32) -> Option<&AugerChannel> {
        self.channels
            .iter()
            .filter(|c| c.configuration == configuration && c.multiplicity == Some(multiplicity))
            .max_by(|a, b| a.gamma_au.total_cmp(&b.gamma_au))
    }
}

/// E_kin = E_I − E_K, rates, Γ_rel normalized to 100 and the broadened
/// stick spectrum of the reported channels. Final states above the initial
/// state (negative kinetic energy) are closed and skipped.
pub fn assemble_auger(
    initial_energy: f64,
    core: usize,
    finals: &[FinalState],
    model: &OcaModel,
    opts: &AugerOptions,
) -> Result<AugerSpectrum> {
    if finals.is_empty() {
        return Err(Error::invalid("no final states for the Auger spectrum"));
    }
    let mut channels: Vec<AugerChannel> = finals
        .iter()
        .filter(|f| f.energy < initial_energy)
        .map(|f| AugerChannel {
            irrep: f.irrep,
            index: f.index,
            e_dip: f.energy,
            e_kin_ev: (initial_energy - f.energy) * HARTREE_TO_EV,
            gamma_au: model.rate(core, &f.rdm),
            gamma_rel: 0.0,
            multiplicity: f.multiplicity,
            configuration: f.configuration.clone(),
            reported: false,
        })
        .collect();
    if channels.is_empty() {
        return Err(Error::invalid("no energetically open Auger channels"));
    }
    let top = channels.iter().map(|c| c.gamma_au).fold(0.0, f64::max);
    for c in channels.iter_mut() {
        c.gamma_rel = if top > 0.0 { 100.0 * c.gamma_au / top } else { 0.0 };
        c.reported = top > 0.0 && c.gamma_rel >= opts.floor;
    }
    channels.sort_by(|a, b| b.e_kin_ev.total_cmp(&a.e_kin_ev).then(a.irrep.cmp(&b.irrep)).then(a.index.cmp(&b.index)));
    let sticks: Vec<(f64, f64)> = channels.iter().filter(|c| c.reported).map(|c| (c.e_kin_ev, c.gamma_rel)).collect();
    let spectrum = broaden(&sticks, opts.hwhm)?;
    Ok(AugerSpectrum { initial_energy, core, channels, spectrum, floor: opts.floor })
}

/// Final states of a DIP q-sc-EOM solution with their transition densities.
pub fn eom_final_states(dip: &ChannelSolution, transitions: &AugerTransitions, labels: &[String]) -> Vec<FinalState> {
    let mut out = Vec::new();
    for (block, rdm) in dip.blocks.iter().zip(&transitions.rdms) {
        let ops = dip.basis.block(block.irrep);
        for k in 0..block.len() {
            let values = rdm.pairs.iter().enumerate().map(|(j, &p)| (p, rdm.values[(k, j)])).collect();
            out.push(FinalState {
                irrep: block.irrep,
                index: k,
                energy: block.energies[k],
                multiplicity: block.multiplicity[k],
                configuration: state_label(ops, &block.vectors, k, labels),
                rdm: values,
            });
        }
    }
    out
}

pub fn auger_spectrum(
    dip: &ChannelSolution,
    transitions: &AugerTransitions,
    labels: &[String],
    model: &OcaModel,
    opts: &AugerOptions,
) -> Result<AugerSpectrum> {
    let finals = eom_final_states(dip, transitions, labels);
    assemble_auger(transitions.initial_energy, transitions.core, &finals, model, opts)
}
