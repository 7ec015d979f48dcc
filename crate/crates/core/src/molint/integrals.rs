//! McMurchie–Davidson integrals over s and p Cartesian Gaussians.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::basis::BasisFunction;
use super::geometry::Geometry;

/// AO matrices and the two-electron tensor (chemists' notation).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AoIntegrals {
    pub n_ao: usize,
    pub overlap: DMatrix<f64>,
    pub kinetic: DMatrix<f64>,
    pub nuclear: DMatrix<f64>,
    /// Position integrals ⟨μ|r_α|ν⟩ per axis, origin at (0,0,0), bohr.
    pub dipole: [DMatrix<f64>; 3],
    /// Flattened (μν|λσ), index ((μ n + ν) n + λ) n + σ.
    pub eri: Vec<f64>,
    pub e_nuc: f64,
}

impl AoIntegrals {
    pub fn eri(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        let n = self.n_ao;
        self.eri[((p * n + q) * n + r) * n + s]
    }
}

/// Hermite expansion coefficient E_t^{ij} for one Cartesian direction;
/// `qx` is A_x − B_x.
fn hermite_e(i: i32, j: i32, t: i32, qx: f64, a: f64, b: f64) -> f64 {
    let p = a + b;
    let q = a * b / p;
    if t < 0 || t > i + j {
        0.0
    } else if i == 0 && j == 0 && t == 0 {
        (-q * qx * qx).exp()
    } else if j == 0 {
        hermite_e(i - 1, j, t - 1, qx, a, b) / (2.0 * p) - (q * qx / a) * hermite_e(i - 1, j, t, qx, a, b)
            + (t + 1) as f64 * hermite_e(i - 1, j, t + 1, qx, a, b)
    } else {
        hermite_e(i, j - 1, t - 1, qx, a, b) / (2.0 * p)
            + (q * qx / b) * hermite_e(i, j - 1, t, qx, a, b)
            + (t + 1) as f64 * hermite_e(i, j - 1, t + 1, qx, a, b)
    }
}

/// Boys function F_n(x).
pub fn boys(n: usize, x: f64) -> f64 {
    if x < 1e-13 {
        return 1.0 / (2 * n + 1) as f64;
    }
    if x > 40.0 {
        let mut df = 1.0;
        for k in 1..=n {
            df *= (2 * k - 1) as f64;
        }
        return df / 2f64.powi(n as i32 + 1) * (PI / x.powi(2 * n as i32 + 1)).sqrt();
    }
    // series for the highest order, downward recursion is stable
    let nmax = n + 8;
    let mut term = 1.0 / (2 * nmax + 1) as f64;
    let mut sum = term;
    let mut k = 1;
    loop {
        term *= 2.0 * x / (2 * nmax + 2 * k + 1) as f64;
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
        k += 1;
    }
    let ex = (-x).exp();
    let mut f = sum * ex;
    for m in (n..nmax).rev() {
        f = (2.0 * x * f + ex) / (2 * m + 1) as f64;
    }
    f
}

/// Hermite Coulomb integral R^n_{tuv}.
fn hermite_r(t: i32, u: i32, v: i32, n: usize, p: f64, pc: [f64; 3], rpc2: f64) -> f64 {
    if t < 0 || u < 0 || v < 0 {
        return 0.0;
    }
    if t == 0 && u == 0 && v == 0 {
        return (-2.0 * p).powi(n as i32) * boys(n, p * rpc2);
    }
    if t > 0 {
        (t - 1) as f64 * hermite_r(t - 2, u, v, n + 1, p, pc, rpc2) + pc[0] * hermite_r(t - 1, u, v, n + 1, p, pc, rpc2)
    } else if u > 0 {
        (u - 1) as f64 * hermite_r(t, u - 2, v, n + 1, p, pc, rpc2) + pc[1] * hermite_r(t, u - 1, v, n + 1, p, pc, rpc2)
    } else {
        (v - 1) as f64 * hermite_r(t, u, v - 2, n + 1, p, pc, rpc2) + pc[2] * hermite_r(t, u, v - 1, n + 1, p, pc, rpc2)
    }
}

fn gaussian_center(a: f64, ra: [f64; 3], b: f64, rb: [f64; 3]) -> [f64; 3] {
    let p = a + b;
    [0, 1, 2].map(|k| (a * ra[k] + b * rb[k]) / p)
}

pub fn primitive_overlap(a: f64, la: [u8; 3], ra: [f64; 3], b: f64, lb: [u8; 3], rb: [f64; 3]) -> f64 {
    let p = a + b;
    let mut s = (PI / p).powf(1.5);
    for k in 0..3 {
        s *= hermite_e(la[k] as i32, lb[k] as i32, 0, ra[k] - rb[k], a, b);
    }
    s
}

fn primitive_kinetic(a: f64, la: [u8; 3], ra: [f64; 3], b: f64, lb: [u8; 3], rb: [f64; 3]) -> f64 {
    let ltot = (lb[0] + lb[1] + lb[2]) as f64;
    let mut t = b * (2.0 * ltot + 3.0) * primitive_overlap(a, la, ra, b, lb, rb);
    for k in 0..3 {
        let mut up = lb;
        up[k] += 2;
        t -= 2.0 * b * b * primitive_overlap(a, la, ra, b, up, rb);
        if lb[k] >= 2 {
            let mut down = lb;
            down[k] -= 2;
            t -= 0.5 * (lb[k] as f64) * (lb[k] as f64 - 1.0) * primitive_overlap(a, la, ra, b, down, rb);
        }
    }
    t
}

fn primitive_nuclear(a: f64, la: [u8; 3], ra: [f64; 3], b: f64, lb: [u8; 3], rb: [f64; 3], rc: [f64; 3]) -> f64 {
    let p = a + b;
    let rp = gaussian_center(a, ra, b, rb);
    let pc = [rp[0] - rc[0], rp[1] - rc[1], rp[2] - rc[2]];
    let rpc2 = pc.iter().map(|x| x * x).sum();
    let mut v = 0.0;
    for t in 0..=(la[0] + lb[0]) as i32 {
        let ex = hermite_e(la[0] as i32, lb[0] as i32, t, ra[0] - rb[0], a, b);
        for u in 0..=(la[1] + lb[1]) as i32 {
            let ey = hermite_e(la[1] as i32, lb[1] as i32, u, ra[1] - rb[1], a, b);
            for w in 0..=(la[2] + lb[2]) as i32 {
                let ez = hermite_e(la[2] as i32, lb[2] as i32, w, ra[2] - rb[2], a, b);
                v += ex * ey * ez * hermite_r(t, u, w, 0, p, pc, rpc2);
            }
        }
    }
    2.0 * PI / p * v
}

fn primitive_position(a: f64, la: [u8; 3], ra: [f64; 3], b: f64, lb: [u8; 3], rb: [f64; 3], axis: usize) -> f64 {
    let p = a + b;
    let rp = gaussian_center(a, ra, b, rb);
    let mut m = (PI / p).powf(1.5);
    for k in 0..3 {
        let (i, j, q) = (la[k] as i32, lb[k] as i32, ra[k] - rb[k]);
        if k == axis {
            m *= hermite_e(i, j, 1, q, a, b) + rp[k] * hermite_e(i, j, 0, q, a, b);
        } else {
            m *= hermite_e(i, j, 0, q, a, b);
        }
    }
    m
}

#[allow(clippy::too_many_arguments)]
fn primitive_eri(
    a: f64, la: [u8; 3], ra: [f64; 3],
    b: f64, lb: [u8; 3], rb: [f64; 3],
    c: f64, lc: [u8; 3], rc: [f64; 3],
    d: f64, ld: [u8; 3], rd: [f64; 3],
) -> f64 {
    let p = a + b;
    let q = c + d;
    let alpha = p * q / (p + q);
    let rp = gaussian_center(a, ra, b, rb);
    let rq = gaussian_center(c, rc, d, rd);
    let pq = [rp[0] - rq[0], rp[1] - rq[1], rp[2] - rq[2]];
    let rpq2 = pq.iter().map(|x| x * x).sum();
    let e1: Vec<Vec<f64>> = (0..3)
        .map(|k| {
            (0..=(la[k] + lb[k]) as i32)
                .map(|t| hermite_e(la[k] as i32, lb[k] as i32, t, ra[k] - rb[k], a, b))
                .collect()
        })
        .collect();
    let e2: Vec<Vec<f64>> = (0..3)
        .map(|k| {
            (0..=(lc[k] + ld[k]) as i32)
                .map(|t| hermite_e(lc[k] as i32, ld[k] as i32, t, rc[k] - rd[k], c, d))
                .collect()
        })
        .collect();
    let mut val = 0.0;
    for (t, &et) in e1[0].iter().enumerate() {
        for (u, &eu) in e1[1].iter().enumerate() {
            for (v, &ev) in e1[2].iter().enumerate() {
                let left = et * eu * ev;
                if left == 0.0 {
                    continue;
                }
                for (tau, &ft) in e2[0].iter().enumerate() {
                    for (nu, &fu) in e2[1].iter().enumerate() {
                        for (phi, &fv) in e2[2].iter().enumerate() {
                            let sign = if (tau + nu + phi) % 2 == 0 { 1.0 } else { -1.0 };
                            val += left * ft * fu * fv * sign
                                * hermite_r((t + tau) as i32, (u + nu) as i32, (v + phi) as i32, 0, alpha, pq, rpq2);
                        }
                    }
                }
            }
        }
    }
    2.0 * PI.powf(2.5) / (p * q * (p + q).sqrt()) * val
}

fn contract2(f: &BasisFunction, g: &BasisFunction, prim: impl Fn(f64, f64) -> f64) -> f64 {
    let mut s = 0.0;
    for (&a, &ca) in f.exponents.iter().zip(&f.coefficients) {
        for (&b, &cb) in g.exponents.iter().zip(&g.coefficients) {
            s += ca * cb * prim(a, b);
        }
    }
    s
}

fn contracted_eri(f: &BasisFunction, g: &BasisFunction, h: &BasisFunction, k: &BasisFunction) -> f64 {
    let mut s = 0.0;
    for (&a, &ca) in f.exponents.iter().zip(&f.coefficients) {
        for (&b, &cb) in g.exponents.iter().zip(&g.coefficients) {
            for (&c, &cc) in h.exponents.iter().zip(&h.coefficients) {
                for (&d, &cd) in k.exponents.iter().zip(&k.coefficients) {
                    s += ca * cb * cc * cd
                        * primitive_eri(
                            a, f.powers, f.origin, b, g.powers, g.origin, c, h.powers, h.origin, d, k.powers, k.origin,
                        );
                }
            }
        }
    }
    s
}

pub fn compute_integrals(geom: &Geometry, basis: &[BasisFunction]) -> AoIntegrals {
    let n = basis.len();
    let mut s = DMatrix::zeros(n, n);
    let mut t = DMatrix::zeros(n, n);
    let mut v = DMatrix::zeros(n, n);
    let mut dip = [DMatrix::zeros(n, n), DMatrix::zeros(n, n), DMatrix::zeros(n, n)];
    for i in 0..n {
        for j in 0..=i {
            let (f, g) = (&basis[i], &basis[j]);
            let sij = contract2(f, g, |a, b| primitive_overlap(a, f.powers, f.origin, b, g.powers, g.origin));
            let tij = contract2(f, g, |a, b| primitive_kinetic(a, f.powers, f.origin, b, g.powers, g.origin));
            let mut vij = 0.0;
            for atom in &geom.atoms {
                let rc = atom.position_bohr();
                vij -= atom.z as f64
                    * contract2(f, g, |a, b| primitive_nuclear(a, f.powers, f.origin, b, g.powers, g.origin, rc));
            }
            for (axis, d) in dip.iter_mut().enumerate() {
                let x = contract2(f, g, |a, b| primitive_position(a, f.powers, f.origin, b, g.powers, g.origin, axis));
                d[(i, j)] = x;
                d[(j, i)] = x;
            }
            s[(i, j)] = sij;
            s[(j, i)] = sij;
            t[(i, j)] = tij;
            t[(j, i)] = tij;
            v[(i, j)] = vij;
            v[(j, i)] = vij;
        }
    }
    let mut eri = vec![0.0; n * n * n * n];
    let idx = |p: usize, q: usize, r: usize, s: usize| ((p * n + q) * n + r) * n + s;
    for p in 0..n {
        for q in 0..=p {
            let pq = p * (p + 1) / 2 + q;
            for r in 0..n {
                for s_ in 0..=r {
                    let rs = r * (r + 1) / 2 + s_;
                    if rs > pq {
                        continue;
                    }
                    let val = contracted_eri(&basis[p], &basis[q], &basis[r], &basis[s_]);
                    for (a, b) in [(p, q), (q, p)] {
                        for (c, d) in [(r, s_), (s_, r)] {
                            eri[idx(a, b, c, d)] = val;
                            eri[idx(c, d, a, b)] = val;
                        }
                    }
                }
            }
        }
    }
    AoIntegrals { n_ao: n, overlap: s, kinetic: t, nuclear: v, dipole: dip, eri, e_nuc: geom.nuclear_repulsion() }
}
