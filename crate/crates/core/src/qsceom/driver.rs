use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::Irrep;
use crate::simulator::{Circuit, SparseOperator};

use super::operators::{enumerate_operators, Channel, ChannelBasis, ChannelContext};
use super::rdm::{auger_pairs, auger_rdm, TransitionRdm};
use super::solve::{s2_purify, solve_block, EigenBlock};
use super::superposition::{BlockStates, ElementEngine, Mode};
use super::workload::{workload_counts, WorkloadReport};

type C = Complex64;

/// Everything a channel calculation needs: register layout, operators on
/// the full register, and the ground-state circuit U.
pub struct EomSetup<'a> {
    pub ctx: ChannelContext,
    pub hamiltonian: &'a SparseOperator,
    pub s2: &'a SparseOperator,
    pub circuit: &'a Circuit,
    pub mode: Mode,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChannelSolution {
    pub channel: Channel,
    pub basis: ChannelBasis,
    #[serde(skip)]
    pub states: Vec<BlockStates>,
    pub m: Vec<DMatrix<C>>,
    pub s2: Vec<DMatrix<C>>,
    pub blocks: Vec<EigenBlock>,
    /// Expectation values spent on M (S² not included).
    pub m_evaluations: usize,
}

impl ChannelSolution {
    pub fn block_index(&self, irrep: Irrep) -> Option<usize> {
        self.blocks.iter().position(|b| b.irrep == irrep)
    }

    /// (irrep, state) of the lowest eigenvalue over all blocks.
    pub fn lowest(&self) -> Option<(Irrep, usize, f64)> {
        self.blocks
            .iter()
            .filter(|b| !b.is_empty())
            .map(|b| (b.irrep, 0, b.energies[0]))
            .min_by(|a, b| a.2.total_cmp(&b.2))
    }

    /// Rebuild the evolved basis states after deserialization.
    pub fn restore_states(&mut self, hf: u64, circuit: &Circuit) -> Result<()> {
        self.states = self
            .basis
            .blocks
            .iter()
            .map(|(g, ops)| BlockStates::prepare(*g, ops, hf, circuit))
            .collect::<Result<_>>()?;
        Ok(())
    }

    /// All (energy, irrep, index) sorted by energy.
    pub fn all_states(&self) -> Vec<(f64, Irrep, usize)> {
        let mut v: Vec<(f64, Irrep, usize)> =
            self.blocks.iter().flat_map(|b| b.energies.iter().enumerate().map(move |(k, &e)| (e, b.irrep, k))).collect();
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        v
    }
}

/// Enumerate, prepare U Ĝ_u|HF⟩, assemble M (and S²) per block, solve.
pub fn solve_channel(setup: &EomSetup, channel: Channel, cvs: bool, purify: bool) -> Result<ChannelSolution> {
    if setup.circuit.n_qubits != setup.ctx.n_spin_orbitals {
        return Err(Error::SizeMismatch { expected: setup.ctx.n_spin_orbitals, got: setup.circuit.n_qubits });
    }
    let basis = enumerate_operators(channel, &setup.ctx, cvs)?;
    let hf = setup.ctx.hf_determinant();
    let mut engine = ElementEngine::new(setup.circuit, setup.mode);
    let mut spin_engine = ElementEngine::new(setup.circuit, Mode::Cached);
    let mut states = Vec::new();
    let mut ms = Vec::new();
    let mut s2s = Vec::new();
    let mut blocks = Vec::new();
    for (irrep, ops) in &basis.blocks {
        let blk = BlockStates::prepare(*irrep, ops, hf, setup.circuit)?;
        let m = engine.hermitian_block(setup.hamiltonian, &blk);
        let s2 = spin_engine.hermitian_block(setup.s2, &blk);
        let sol = if purify { s2_purify(*irrep, &m, &s2)? } else { solve_block(*irrep, &m, Some(&s2))? };
        states.push(blk);
        ms.push(m);
        s2s.push(s2);
        blocks.push(sol);
    }
    Ok(ChannelSolution { channel, basis, states, m: ms, s2: s2s, blocks, m_evaluations: engine.evaluations })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AugerTransitions {
    pub initial_irrep: Irrep,
    pub initial_index: usize,
    pub initial_energy: f64,
    pub core: usize,
    pub rdms: Vec<TransitionRdm>,
    pub evaluations: usize,
}

/// Transition densities from the lowest IP state to every DIP state.
/// The core annihilator carries the spin removed by the IP channel (β).
pub fn auger_transitions(setup: &EomSetup, ip: &ChannelSolution, dip: &ChannelSolution) -> Result<AugerTransitions> {
    let (gi, ki, ei) = ip.lowest().ok_or_else(|| Error::invalid("IP channel has no states"))?;
    let core_spatial = *setup.ctx.core_spatial.first().ok_or_else(|| Error::invalid("no core orbital marked"))?;
    let core = 2 * core_spatial + 1;
    let bi = ip.block_index(gi).expect("block");
    let init_vec = ip.blocks[bi].vectors.column(ki).into_owned();
    let mut engine = ElementEngine::new(setup.circuit, setup.mode);
    let mut rdms = Vec::new();
    for (bk, block) in dip.blocks.iter().enumerate() {
        let pairs = auger_pairs(&setup.ctx, core, gi, block.irrep);
        if block.is_empty() {
            rdms.push(TransitionRdm { irrep: block.irrep, core, pairs, values: DMatrix::zeros(0, 0) });
            continue;
        }
        rdms.push(auger_rdm(&mut engine, &ip.states[bi], &init_vec, &dip.states[bk], block, core, &pairs));
    }
    Ok(AugerTransitions { initial_irrep: gi, initial_index: ki, initial_energy: ei, core, rdms, evaluations: engine.evaluations })
}

pub fn workload_for(ip: &ChannelSolution, dip: &ChannelSolution, auger: &AugerTransitions) -> WorkloadReport {
    let counts = |s: &ChannelSolution| s.basis.blocks.iter().map(|(g, v)| (*g, v.len())).collect::<Vec<_>>();
    let n_csr: Vec<(Irrep, usize)> = auger.rdms.iter().map(|r| (r.irrep, r.pairs.len())).collect();
    let n_sel = ip.basis.block(auger.initial_irrep).len();
    workload_counts(&counts(ip), &counts(dip), &n_csr, n_sel)
}
