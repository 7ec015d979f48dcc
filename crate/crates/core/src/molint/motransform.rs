use nalgebra::DMatrix;

use super::scf::ScfResult;
use crate::error::{Error, Result};
use crate::hamiltonian::{Irrep, SpinOrbitalHamiltonian};

/// Full MO-basis one-electron matrix and (pq|rs) tensor.
pub fn mo_integrals(scf: &ScfResult) -> (DMatrix<f64>, Vec<f64>) {
    let c = &scf.c;
    let n = c.nrows();
    let m = c.ncols();
    let h = c.transpose() * (&scf.ints.kinetic + &scf.ints.nuclear) * c;
    // four quarter transformations
    let mut t1 = vec![0.0; m * n * n * n];
    for p in 0..m {
        for nu in 0..n {
            for la in 0..n {
                for si in 0..n {
                    let mut acc = 0.0;
                    for mu in 0..n {
                        acc += c[(mu, p)] * scf.ints.eri(mu, nu, la, si);
                    }
                    t1[((p * n + nu) * n + la) * n + si] = acc;
                }
            }
        }
    }
    let mut t2 = vec![0.0; m * m * n * n];
    for p in 0..m {
        for q in 0..m {
            for la in 0..n {
                for si in 0..n {
                    let mut acc = 0.0;
                    for nu in 0..n {
                        acc += c[(nu, q)] * t1[((p * n + nu) * n + la) * n + si];
                    }
                    t2[((p * m + q) * n + la) * n + si] = acc;
                }
            }
        }
    }
    let mut t3 = vec![0.0; m * m * m * n];
    for pq in 0..m * m {
        for r in 0..m {
            for si in 0..n {
                let mut acc = 0.0;
                for la in 0..n {
                    acc += c[(la, r)] * t2[(pq * n + la) * n + si];
                }
                t3[(pq * m + r) * n + si] = acc;
            }
        }
    }
    let mut g = vec![0.0; m * m * m * m];
    for pqr in 0..m * m * m {
        for s in 0..m {
            let mut acc = 0.0;
            for si in 0..n {
                acc += c[(si, s)] * t3[pqr * n + si];
            }
            g[pqr * m + s] = acc;
        }
    }
    // restore exact permutational symmetry lost to rounding
    let idx = |p: usize, q: usize, r: usize, s: usize| ((p * m + q) * m + r) * m + s;
    for p in 0..m {
        for q in 0..=p {
            for r in 0..m {
                for s in 0..=r {
                    if r * (r + 1) / 2 + s > p * (p + 1) / 2 + q {
                        continue;
                    }
                    let v = g[idx(p, q, r, s)];
                    for (a, b) in [(p, q), (q, p)] {
                        for (cc, d) in [(r, s), (s, r)] {
                            g[idx(a, b, cc, d)] = v;
                            g[idx(cc, d, a, b)] = v;
                        }
                    }
                }
            }
        }
    }
    let h = (&h + h.transpose()) * 0.5;
    (h, g)
}

/// Active-space Hamiltonian with `frozen` MOs folded into h and E_core.
/// `irreps` lists one label per MO (empty: all A1).
pub fn mo_transform(scf: &ScfResult, frozen: &[usize], irreps: &[Irrep]) -> Result<SpinOrbitalHamiltonian> {
    let m = scf.n_mo();
    let n_occ = scf.n_occupied();
    if !irreps.is_empty() && irreps.len() != m {
        return Err(Error::SizeMismatch { expected: m, got: irreps.len() });
    }
    for &f in frozen {
        if f >= m {
            return Err(Error::invalid(format!("frozen orbital {f} out of range (n_mo = {m})")));
        }
        if f >= n_occ {
            return Err(Error::invalid(format!("frozen orbital {f} is not occupied")));
        }
    }
    let mut frozen_sorted = frozen.to_vec();
    frozen_sorted.sort_unstable();
    frozen_sorted.dedup();
    let active: Vec<usize> = (0..m).filter(|p| !frozen_sorted.contains(p)).collect();
    let (h, g) = mo_integrals(scf);
    let gi = |p: usize, q: usize, r: usize, s: usize| g[((p * m + q) * m + r) * m + s];

    let mut e_core = scf.e_nuc;
    for &c in &frozen_sorted {
        e_core += 2.0 * h[(c, c)];
        for &d in &frozen_sorted {
            e_core += 2.0 * gi(c, c, d, d) - gi(c, d, d, c);
        }
    }
    let na = active.len();
    let mut ham = SpinOrbitalHamiltonian::zeros(na, scf.n_electrons - 2 * frozen_sorted.len(), e_core);
    for (i, &p) in active.iter().enumerate() {
        for (j, &q) in active.iter().enumerate() {
            let mut v = h[(p, q)];
            for &c in &frozen_sorted {
                v += 2.0 * gi(p, q, c, c) - gi(p, c, c, q);
            }
            ham.h[i * na + j] = v;
            for (k, &r) in active.iter().enumerate() {
                for (l, &s) in active.iter().enumerate() {
                    ham.g[((i * na + j) * na + k) * na + l] = gi(p, q, r, s);
                }
            }
        }
    }
    if !irreps.is_empty() {
        ham.orbital_irreps = active.iter().map(|&p| irreps[p]).collect();
    }
    Ok(ham)
}
