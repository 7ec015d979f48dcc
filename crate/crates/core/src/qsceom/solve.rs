use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::Irrep;
use crate::linalg::{herm_eigen, hermiticity_defect};

type C = Complex64;

pub const HERMITICITY_TOL: f64 = 1e-10;
const DEGENERACY_TOL: f64 = 1e-9;
pub const SPIN_TOL: f64 = 0.05;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenBlock {
    pub irrep: Irrep,
    pub energies: Vec<f64>,
    /// Column n holds c⁽ⁿ⁾ over the block's basis states.
    pub vectors: DMatrix<C>,
    /// ⟨S²⟩ per state, when an S² matrix was supplied.
    pub s2: Vec<f64>,
    /// 2S+1 per state after purification.
    pub multiplicity: Vec<Option<u32>>,
    /// max_n ‖M c − E c‖.
    pub residual: f64,
}

impl EigenBlock {
    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    pub fn empty(irrep: Irrep) -> Self {
        EigenBlock {
            irrep,
            energies: Vec::new(),
            vectors: DMatrix::zeros(0, 0),
            s2: Vec::new(),
            multiplicity: Vec::new(),
            residual: 0.0,
        }
    }
}

fn expectation(m: &DMatrix<C>, c: &DMatrix<C>, n: usize) -> f64 {
    let col = c.column(n);
    (col.adjoint() * m * col)[(0, 0)].re
}

fn residual(m: &DMatrix<C>, energies: &[f64], vectors: &DMatrix<C>) -> f64 {
    (0..energies.len())
        .map(|n| {
            let col = vectors.column(n);
            (m * col - col * C::new(energies[n], 0.0)).norm()
        })
        .fold(0.0, f64::max)
}

fn check_hermitian(m: &DMatrix<C>) -> Result<()> {
    let d = hermiticity_defect(m);
    if d > HERMITICITY_TOL {
        return Err(Error::NotHermitian(d));
    }
    Ok(())
}

/// Dense Hermitian diagonalization of one block.
pub fn solve_block(irrep: Irrep, m: &DMatrix<C>, s2: Option<&DMatrix<C>>) -> Result<EigenBlock> {
    if m.nrows() == 0 {
        return Ok(EigenBlock::empty(irrep));
    }
    check_hermitian(m)?;
    let (energies, vectors) = herm_eigen(m, DEGENERACY_TOL);
    let s2v: Vec<f64> = s2.map(|s| (0..energies.len()).map(|n| expectation(s, &vectors, n)).collect()).unwrap_or_default();
    let residual = residual(m, &energies, &vectors);
    let multiplicity = if s2v.is_empty() { vec![None; energies.len()] } else { s2v.iter().map(|&x| spin_multiplicity(x)).collect() };
    Ok(EigenBlock { irrep, energies, vectors, s2: s2v, multiplicity, residual })
}

pub fn solve_blocks(blocks: &[(Irrep, DMatrix<C>)]) -> Result<Vec<EigenBlock>> {
    blocks.iter().map(|(g, m)| solve_block(*g, m, None)).collect()
}

/// 2S+1 when ⟨S²⟩ lies within `SPIN_TOL` of some S(S+1), integer or
/// half-integer S; None for spin-mixed states.
pub fn spin_multiplicity(s2: f64) -> Option<u32> {
    let m = (1.0 + 4.0 * s2.max(0.0)).sqrt().round().max(1.0);
    let s = (m - 1.0) / 2.0;
    ((s2 - s * (s + 1.0)).abs() < SPIN_TOL).then_some(m as u32)
}

/// Nearest S(S+1) for integer S; equidistant values go to the smaller S.
pub fn nearest_spin(s2: f64) -> u32 {
    let mut s = 0u32;
    loop {
        let here = (s * (s + 1)) as f64;
        let next = ((s + 1) * (s + 2)) as f64;
        let (dh, dn) = ((s2 - here).abs(), (s2 - next).abs());
        if dn < dh {
            s += 1;
            continue;
        }
        if (dn - dh).abs() < 1e-12 {
            log::warn!("<S^2> = {s2} equidistant from S = {s} and S = {}; assigned S = {s}", s + 1);
        }
        return s;
    }
}

/// Sort S² eigenvectors into integer-S sectors, diagonalize M projected
/// onto each sector, and merge the sector states by energy.
pub fn s2_purify(irrep: Irrep, m: &DMatrix<C>, s2: &DMatrix<C>) -> Result<EigenBlock> {
    let n = m.nrows();
    if n == 0 {
        return Ok(EigenBlock::empty(irrep));
    }
    check_hermitian(m)?;
    check_hermitian(s2)?;
    let (svals, svecs) = herm_eigen(s2, 1e-6);
    let spins: Vec<u32> = svals.iter().map(|&x| nearest_spin(x)).collect();
    let mut sectors: Vec<u32> = spins.clone();
    sectors.sort_unstable();
    sectors.dedup();
    let mut states: Vec<(f64, u32, nalgebra::DVector<C>)> = Vec::with_capacity(n);
    for s in sectors {
        let cols: Vec<_> = (0..n).filter(|&k| spins[k] == s).map(|k| svecs.column(k).into_owned()).collect();
        let v = DMatrix::from_columns(&cols);
        let ms = v.adjoint() * m * &v;
        let (e, y) = herm_eigen(&ms, DEGENERACY_TOL);
        let c = &v * y;
        for k in 0..e.len() {
            states.push((e[k], 2 * s + 1, c.column(k).into_owned()));
        }
    }
    states.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let energies: Vec<f64> = states.iter().map(|s| s.0).collect();
    let cols: Vec<_> = states.iter().map(|s| s.2.clone()).collect();
    let vectors = DMatrix::from_columns(&cols);
    let s2v = (0..n).map(|k| expectation(s2, &vectors, k)).collect();
    let multiplicity = states.iter().map(|s| Some(s.1)).collect();
    // residual against the projected problem is zero by construction;
    // report it against the full M, which measures spin mixing
    let residual = residual(m, &energies, &vectors);
    Ok(EigenBlock { irrep, energies, vectors, s2: s2v, multiplicity, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn herm(n: usize, seed: f64) -> DMatrix<C> {
        let a = DMatrix::from_fn(n, n, |i, j| C::new(((i * 7 + j * 3) as f64 + seed).sin(), ((i + 2 * j) as f64 * seed).cos()));
        (&a + a.adjoint()) * C::new(0.5, 0.0)
    }

    #[test]
    fn one_by_one() {
        let m = DMatrix::from_element(1, 1, C::new(-3.5, 0.0));
        let b = solve_block(Irrep::B1, &m, None).unwrap();
        assert_eq!(b.energies, vec![-3.5]);
    }

    #[test]
    fn residual_and_orthonormality() {
        let m = herm(9, 0.37);
        let b = solve_block(Irrep::A1, &m, None).unwrap();
        assert!(b.residual < 1e-12);
        let g = b.vectors.adjoint() * &b.vectors;
        assert!((g - DMatrix::<C>::identity(9, 9)).norm() < 1e-12);
        assert!(b.energies.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut m = herm(3, 0.1);
        m[(0, 1)] += C::new(1e-6, 0.0);
        assert!(matches!(solve_block(Irrep::A1, &m, None), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn multiplicity_from_expectation() {
        assert_eq!(spin_multiplicity(0.0), Some(1));
        assert_eq!(spin_multiplicity(0.75), Some(2));
        assert_eq!(spin_multiplicity(2.01), Some(3));
        assert_eq!(spin_multiplicity(1.0), None);
    }

    #[test]
    fn spin_rounding() {
        assert_eq!(nearest_spin(0.02), 0);
        assert_eq!(nearest_spin(1.9), 1);
        assert_eq!(nearest_spin(1.0), 0);
        assert_eq!(nearest_spin(6.3), 2);
    }

    #[test]
    fn exact_singlet_space_is_unchanged() {
        let m = herm(4, 0.9);
        let s2 = DMatrix::<C>::zeros(4, 4);
        let p = s2_purify(Irrep::A1, &m, &s2).unwrap();
        let d = solve_block(Irrep::A1, &m, None).unwrap();
        for (a, b) in p.energies.iter().zip(&d.energies) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(p.multiplicity.iter().all(|&x| x == Some(1)));
    }

    #[test]
    fn purification_separates_sectors() {
        // two singlets and a triplet component mixed by a small M coupling
        let s2 = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![C::new(0.0, 0.0), C::new(2.0, 0.0), C::new(0.0, 0.0)]));
        let mut m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![C::new(-1.0, 0.0), C::new(-0.9, 0.0), C::new(0.5, 0.0)]));
        m[(0, 1)] = C::new(0.01, 0.0);
        m[(1, 0)] = C::new(0.01, 0.0);
        m[(0, 2)] = C::new(0.2, 0.0);
        m[(2, 0)] = C::new(0.2, 0.0);
        let p = s2_purify(Irrep::A1, &m, &s2).unwrap();
        assert_eq!(p.multiplicity, vec![Some(1), Some(3), Some(1)]);
        assert!((p.energies[1] + 0.9).abs() < 1e-12);
        for (k, &x) in p.s2.iter().enumerate() {
            let s = (p.multiplicity[k].unwrap() - 1) / 2;
            assert!((x - (s * (s + 1)) as f64).abs() < 0.1);
        }
    }
}
