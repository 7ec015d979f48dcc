//! Shared fixtures for the benchmarks.

use auger_core::hamiltonian::{s2_operator, Irrep};
use auger_core::molint::{mo_transform, parse_xyz, scf_for, Geometry};
use auger_core::simulator::SparseOperator;
use auger_core::SpinOrbitalHamiltonian;

pub const WATER_XYZ: &str = "3\nwater\nH -0.7586 0.0 0.5870\nO 0.0 0.0 0.0\nH 0.7586 0.0 0.5870\n";
pub const WATER_IRREPS: [Irrep; 7] = [Irrep::A1, Irrep::A1, Irrep::B2, Irrep::A1, Irrep::B1, Irrep::A1, Irrep::B2];

pub fn water_geometry() -> Geometry {
    parse_xyz(WATER_XYZ).expect("water geometry")
}

pub struct Water {
    pub frozen_core: SpinOrbitalHamiltonian,
    pub all_electron: SpinOrbitalHamiltonian,
}

pub fn water() -> Water {
    let (_, scf) = scf_for(&water_geometry()).expect("scf");
    Water {
        frozen_core: mo_transform(&scf, &[0], &WATER_IRREPS).expect("frozen core"),
        all_electron: mo_transform(&scf, &[], &WATER_IRREPS).expect("all electron"),
    }
}

/// Hamiltonian and S² on the full register.
pub fn sparse_operators(ham: &SpinOrbitalHamiltonian) -> (SparseOperator, SparseOperator) {
    let n = ham.n_so();
    (
        SparseOperator::from_pauli_sum(&ham.to_pauli(n).expect("pauli")),
        SparseOperator::from_pauli_sum(&s2_operator(n).expect("s2")),
    )
}
