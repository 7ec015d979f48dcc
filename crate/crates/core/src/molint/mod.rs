//! STO-3G integrals, restricted Hartree–Fock and MO-basis transformation.

pub mod basis;
pub mod fcidump;
pub mod geometry;
pub mod integrals;
pub mod motransform;
pub mod scf;

pub use basis::{build_sto3g, expand, BasisFunction, BasisShell};
pub use fcidump::{read_fcidump, write_fcidump};
pub use geometry::{parse_xyz, Atom, Geometry};
pub use integrals::{compute_integrals, AoIntegrals};
pub use motransform::{mo_integrals, mo_transform};
pub use scf::{run_rhf, ScfOptions, ScfResult};

use crate::error::Result;

/// Geometry → converged closed-shell SCF in STO-3G.
pub fn scf_for(geom: &Geometry) -> Result<(Vec<BasisFunction>, ScfResult)> {
    let shells = build_sto3g(geom)?;
    let basis = expand(geom, &shells);
    let ints = compute_integrals(geom, &basis);
    let scf = run_rhf(&ints, geom.n_electrons(), &ScfOptions::default())?;
    Ok((basis, scf))
}
