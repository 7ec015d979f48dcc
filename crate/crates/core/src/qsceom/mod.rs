//! Self-consistent equation-of-motion on top of a prepared ground state:
//! channel operators, subspace matrices by the superposition technique,
//! block solutions with spin purification, transition densities and
//! workload accounting.

pub mod driver;
pub mod labels;
pub mod operators;
pub mod rdm;
pub mod solve;
pub mod superposition;
pub mod workload;

pub use operators::{enumerate_operators, Channel, ChannelBasis, ChannelContext, ExcitationOperator};
pub use superposition::{apply_fermion, direct_matrix, BlockStates, ElementEngine, Mode, Observable};
pub use solve::{nearest_spin, spin_multiplicity, s2_purify, solve_block, solve_blocks, EigenBlock};
pub use labels::{configuration, determinant_configuration, label_from_weights, orbital_labels, state_label};
pub use rdm::{auger_pairs, auger_rdm, TransitionRdm};
pub use workload::{workload_counts, WorkloadReport};
pub use driver::{auger_transitions, solve_channel, workload_for, AugerTransitions, ChannelSolution, EomSetup};
