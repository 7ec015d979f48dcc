use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::hamiltonian::{operator_irrep, FermionOperator, Irrep};

use super::operators::ChannelContext;
use super::solve::EigenBlock;
use super::superposition::{BlockStates, ElementEngine};

type C = Complex64;

/// Valence pairs (r < s) of opposite spin for T = a†_c a_s a_r that
/// connect an initial state of irrep `initial` to final irrep `final_`.
pub fn auger_pairs(ctx: &ChannelContext, core: usize, initial: Irrep, final_: Irrep) -> Vec<(usize, usize)> {
    let val: Vec<usize> = (0..ctx.n_spin_orbitals).filter(|&q| !ctx.is_core(q)).collect();
    let mut out = Vec::new();
    for (i, &r) in val.iter().enumerate() {
        for &s in &val[i + 1..] {
            if r % 2 == s % 2 {
                continue;
            }
            let g = operator_irrep(&[core, r, s], &ctx.orbital_irreps).product(initial);
            if g == final_ {
                out.push((r, s));
            }
        }
    }
    out
}

pub fn auger_operator(core: usize, r: usize, s: usize) -> FermionOperator {
    FermionOperator::monomial(C::new(1.0, 0.0), vec![(core, true), (s, false), (r, false)])
}

/// R_{K;csr} = ⟨K|a†_c a_s a_r|I⟩ for every final state K of one block.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransitionRdm {
    pub irrep: Irrep,
    pub core: usize,
    pub pairs: Vec<(usize, usize)>,
    /// Row K, column pair index.
    pub values: DMatrix<C>,
}

impl TransitionRdm {
    pub fn element(&self, k: usize, r: usize, s: usize) -> C {
        match self.pairs.iter().position(|&p| p == (r, s)) {
            Some(j) => self.values[(k, j)],
            None => {
                log::warn!("({}, {s}, {r}) is not an allowed component for {}", self.core, self.irrep);
                C::new(0.0, 0.0)
            }
        }
    }
}

/// Cross-block superposition elements contracted with the initial vector
/// and the final-state eigenvectors.
pub fn auger_rdm(
    engine: &mut ElementEngine,
    initial_states: &BlockStates,
    initial_vector: &DVector<C>,
    final_states: &BlockStates,
    final_block: &EigenBlock,
    core: usize,
    pairs: &[(usize, usize)],
) -> TransitionRdm {
    let nk = final_block.len();
    let mut values = DMatrix::from_element(nk, pairs.len(), C::new(0.0, 0.0));
    for (j, &(r, s)) in pairs.iter().enumerate() {
        let o = engine.transition_cross(&auger_operator(core, r, s), final_states, initial_states);
        let col = final_block.vectors.adjoint() * o * initial_vector;
        values.set_column(j, &col);
    }
    TransitionRdm { irrep: final_block.irrep, core, pairs: pairs.to_vec(), values }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn water_component_counts() {
        let ctx = ChannelContext {
            n_spin_orbitals: 14,
            n_electrons: 10,
            orbital_irreps: vec![Irrep::A1, Irrep::A1, Irrep::B2, Irrep::A1, Irrep::B1, Irrep::A1, Irrep::B2],
            core_spatial: vec![0],
        };
        let n: Vec<usize> = Irrep::ALL.iter().map(|&g| auger_pairs(&ctx, 1, Irrep::A1, g).len()).collect();
        assert_eq!(n, vec![14, 4, 6, 12]);
    }
}
