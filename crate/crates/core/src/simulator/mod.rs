//! Noiseless statevector engine.

pub mod circuit;
pub mod sparse;
pub mod state;

pub use circuit::{embed_unitary, Circuit, PauliRotation};
pub use sparse::SparseOperator;
pub use state::{inner, pauli_element, StateVector};
