use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::integrals::AoIntegrals;
use crate::error::{Error, Result};
use crate::linalg::{inv_sqrt_sym, sym_eigen};

const DIIS_DEPTH: usize = 8;
const DEGENERACY_TOL: f64 = 1e-8;
const GRADIENT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ScfOptions {
    pub max_iterations: usize,
    pub density_tol: f64,
    pub energy_tol: f64,
    pub diis: bool,
}

impl Default for ScfOptions {
    fn default() -> Self {
        ScfOptions { max_iterations: 200, density_tol: 1e-10, energy_tol: 1e-12, diis: true }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScfResult {
    pub n_electrons: usize,
    /// AO × MO coefficients.
    pub c: DMatrix<f64>,
    pub orbital_energies: Vec<f64>,
    pub e_hf: f64,
    pub e_nuc: f64,
    pub iterations: usize,
    pub ints: AoIntegrals,
}

impl ScfResult {
    pub fn n_mo(&self) -> usize {
        self.c.ncols()
    }

    pub fn n_occupied(&self) -> usize {
        self.n_electrons / 2
    }

    /// Largest deviation of CᵀSC from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let m = self.c.transpose() * &self.ints.overlap * &self.c;
        (m - DMatrix::identity(self.n_mo(), self.n_mo())).amax()
    }

    /// MO-basis position integrals per axis.
    pub fn mo_dipole(&self) -> [DMatrix<f64>; 3] {
        self.ints.dipole.clone().map(|d| self.c.transpose() * d * &self.c)
    }
}

fn two_electron_part(ints: &AoIntegrals, p: &DMatrix<f64>) -> DMatrix<f64> {
    let n = ints.n_ao;
    let mut g = DMatrix::zeros(n, n);
    for mu in 0..n {
        for nu in 0..n {
            let mut acc = 0.0;
            for la in 0..n {
                for si in 0..n {
                    acc += p[(la, si)] * (ints.eri(mu, nu, la, si) - 0.5 * ints.eri(mu, la, nu, si));
                }
            }
            g[(mu, nu)] = acc;
        }
    }
    g
}

fn density(c: &DMatrix<f64>, n_occ: usize) -> DMatrix<f64> {
    let occ = c.columns(0, n_occ);
    occ * occ.transpose() * 2.0
}

fn diis_extrapolate(focks: &[DMatrix<f64>], errors: &[DMatrix<f64>]) -> Option<DMatrix<f64>> {
    let m = focks.len();
    let mut b = DMatrix::zeros(m + 1, m + 1);
    for i in 0..m {
        for j in 0..m {
            b[(i, j)] = errors[i].dot(&errors[j]);
        }
    }
    let scale = (0..m).map(|i| b[(i, i)]).fold(0.0, f64::max);
    if scale <= 0.0 {
        return None;
    }
    for i in 0..m {
        for j in 0..m {
            b[(i, j)] /= scale;
        }
        b[(i, m)] = -1.0;
        b[(m, i)] = -1.0;
    }
    let mut rhs = nalgebra::DVector::zeros(m + 1);
    rhs[m] = -1.0;
    let sol = b.lu().solve(&rhs)?;
    if sol.iter().take(m).any(|c| !c.is_finite() || c.abs() > 1e4) {
        return None;
    }
    let mut f = DMatrix::zeros(focks[0].nrows(), focks[0].ncols());
    for i in 0..m {
        f += &focks[i] * sol[i];
    }
    Some(f)
}

/// Closed-shell restricted Hartree–Fock from a core-Hamiltonian guess.
pub fn run_rhf(ints: &AoIntegrals, n_electrons: usize, opts: &ScfOptions) -> Result<ScfResult> {
    if n_electrons % 2 != 0 {
        return Err(Error::invalid(format!("RHF needs an even electron count, got {n_electrons}")));
    }
    let n_occ = n_electrons / 2;
    if n_occ > ints.n_ao {
        return Err(Error::invalid("more occupied orbitals than basis functions"));
    }
    let x = inv_sqrt_sym(&ints.overlap);
    let hcore = &ints.kinetic + &ints.nuclear;
    let diagonalize = |f: &DMatrix<f64>| {
        let fp = x.transpose() * f * &x;
        let (eps, cp) = sym_eigen(&fp, DEGENERACY_TOL);
        (eps, &x * cp)
    };

    let (_, c0) = diagonalize(&hcore);
    let mut p = density(&c0, n_occ);
    let mut p_prev: Option<DMatrix<f64>> = None;
    let mut e_old = f64::INFINITY;
    let mut focks: Vec<DMatrix<f64>> = Vec::new();
    let mut errs: Vec<DMatrix<f64>> = Vec::new();

    for iter in 1..=opts.max_iterations {
        let f = &hcore + two_electron_part(ints, &p);
        let e_elec = 0.5 * p.dot(&(&hcore + &f));
        let err = x.transpose() * (&f * &p * &ints.overlap - &ints.overlap * &p * &f) * &x;
        let grad = err.amax();
        let dp = p_prev.as_ref().map_or(f64::INFINITY, |q| (&p - q).amax());
        if dp < opts.density_tol && (e_elec - e_old).abs() < opts.energy_tol && grad < GRADIENT_TOL {
            let (eps, c) = diagonalize(&f);
            return Ok(ScfResult {
                n_electrons,
                c,
                orbital_energies: eps,
                e_hf: e_elec + ints.e_nuc,
                e_nuc: ints.e_nuc,
                iterations: iter,
                ints: ints.clone(),
            });
        }
        e_old = e_elec;
        let f_use = if opts.diis {
            focks.push(f.clone());
            errs.push(err);
            if focks.len() > DIIS_DEPTH {
                focks.remove(0);
                errs.remove(0);
            }
            match diis_extrapolate(&focks, &errs) {
                Some(fx) if focks.len() >= 2 => fx,
                Some(_) => f.clone(),
                None => {
                    focks.clear();
                    errs.clear();
                    f.clone()
                }
            }
        } else {
            f.clone()
        };
        let (_, c_new) = diagonalize(&f_use);
        p_prev = Some(std::mem::replace(&mut p, density(&c_new, n_occ)));
    }
    Err(Error::NotConverged { what: "RHF", iterations: opts.max_iterations })
}
