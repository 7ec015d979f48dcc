//! Geometry-to-spectrum engine for core-level spectroscopy on a simulated
//! quantum register: STO-3G Hartree–Fock, Jordan–Wigner Hamiltonians,
//! statevector ground-state circuits, q-sc-EOM excited states and
//! one-centre Auger / XAS spectra, with a determinant-basis FCI oracle.

pub mod error;
pub mod fci;
pub mod groundstate;
pub mod hamiltonian;
pub mod linalg;
pub mod molint;
pub mod qsceom;
pub mod simulator;
pub mod spectra;
pub mod units;

pub use error::{Error, Result};
pub use hamiltonian::{Irrep, PauliString, PauliSum, SpinOrbitalHamiltonian};
pub use simulator::{Circuit, PauliRotation, StateVector};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
