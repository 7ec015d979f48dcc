//! Spin-orbital Hamiltonians, Jordan–Wigner mapping, Pauli algebra and C2v
//! bookkeeping.

pub mod fermion;
pub mod irrep;
pub mod pauli;
pub mod spin_orbital;

pub use fermion::{apply_ladder, apply_monomial, jordan_wigner, FermionOperator, Ladder};
pub use irrep::{irrep_product, operator_irrep, Irrep};
pub use pauli::{PauliString, PauliSum};
pub use spin_orbital::{
    hamiltonian_to_pauli, number_operator, s2_operator, spin_of, spin_orbital_index, sz_operator, Spin,
    SpinOrbitalHamiltonian,
};
