use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::molint::{BasisFunction, ScfResult};

/// Molecular orbitals expanded in the emitter's minimal basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MbsProjection {
    pub emitter: usize,
    /// Function names without the element prefix ("1s", "2px", …).
    pub labels: Vec<String>,
    pub ao_indices: Vec<usize>,
    /// D = T⁻¹ U C (MBS function × MO).
    pub d: DMatrix<f64>,
    /// Lᵀ D with T = L Lᵀ: coefficients over the MBS orthonormalized in
    /// label order (2s Schmidt-orthogonal to 1s), the frame of the atomic
    /// integral table.
    pub orthonormal: DMatrix<f64>,
    /// max_μ |D_{μc} − δ_{μ,1s}| for the lowest MO.
    pub core_deviation: f64,
}

impl MbsProjection {
    pub fn row(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

fn short_label(f: &BasisFunction) -> String {
    f.label.split_whitespace().last().unwrap_or_default().to_string()
}

pub fn mbs_project(basis: &[BasisFunction], scf: &ScfResult, emitter: usize) -> Result<MbsProjection> {
    let s = &scf.ints.overlap;
    if basis.len() != s.nrows() {
        return Err(Error::SizeMismatch { expected: s.nrows(), got: basis.len() });
    }
    let ao_indices: Vec<usize> = (0..basis.len()).filter(|&i| basis[i].center == emitter).collect();
    if ao_indices.is_empty() {
        return Err(Error::invalid(format!("atom {emitter} carries no basis functions")));
    }
    let labels: Vec<String> = ao_indices.iter().map(|&i| short_label(&basis[i])).collect();
    let n = ao_indices.len();
    let t = DMatrix::from_fn(n, n, |a, b| s[(ao_indices[a], ao_indices[b])]);
    let u = DMatrix::from_fn(n, s.ncols(), |a, k| s[(ao_indices[a], k)]);
    let chol = t.clone().cholesky().expect("minimal-basis overlap is positive definite");
    let d = chol.solve(&(u * &scf.c));
    let orthonormal = chol.l().transpose() * &d;
    let core_row = labels.iter().position(|l| l == "1s").unwrap_or(0);
    let core_deviation = (0..n)
        .map(|mu| (d[(mu, 0)] - if mu == core_row { 1.0 } else { 0.0 }).abs())
        .fold(0.0, f64::max);
    Ok(MbsProjection { emitter, labels, ao_indices, d, orthonormal, core_deviation })
}
