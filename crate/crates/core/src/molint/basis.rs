//! STO-3G shells for H–Ne and their expansion into normalized Cartesian
//! contracted functions. Exponents and contraction coefficients are the
//! standard Basis Set Exchange values.

use serde::{Deserialize, Serialize};

use super::geometry::Geometry;
use super::integrals::primitive_overlap;
use crate::error::{Error, Result};

const S1: [f64; 3] = [0.15432897, 0.53532814, 0.44463454];
const S2: [f64; 3] = [-0.09996723, 0.39951283, 0.70011547];
const P2: [f64; 3] = [0.15591627, 0.60768372, 0.39195739];

/// (1s exponents, 2sp exponents) per element, H..Ne.
const STO3G: [([f64; 3], Option<[f64; 3]>); 10] = [
    ([3.42525091, 0.62391373, 0.1688554], None),
    ([6.36242139, 1.158923, 0.31364979], None),
    ([16.119575, 2.9362007, 0.7946505], Some([0.6362897, 0.1478601, 0.0480887])),
    ([30.167871, 5.4951153, 1.4871927], Some([1.3148331, 0.3055389, 0.0993707])),
    ([48.791113, 8.8873622, 2.405267], Some([2.2369561, 0.5198205, 0.1690618])),
    ([71.616837, 13.045096, 3.5305122], Some([2.9412494, 0.6834831, 0.2222899])),
    ([99.106169, 18.052312, 4.8856602], Some([3.7804559, 0.8784966, 0.2857144])),
    ([130.70932, 23.808861, 6.4436083], Some([5.0331513, 1.1695961, 0.380389])),
    ([166.67913, 30.360812, 8.2168207], Some([6.4648032, 1.5022812, 0.4885885])),
    ([207.01561, 37.708151, 10.205297], Some([8.2463151, 1.9162662, 0.6232293])),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisShell {
    pub center: usize,
    pub l: u8,
    /// Principal shell label used for AO names (1 for 1s, 2 for 2s/2p).
    pub n: u8,
    pub exponents: Vec<f64>,
    pub coefficients: Vec<f64>,
}

/// One contracted Cartesian Gaussian with normalized primitive coefficients
/// folded into `coefficients`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisFunction {
    pub center: usize,
    pub origin: [f64; 3],
    pub powers: [u8; 3],
    pub exponents: Vec<f64>,
    pub coefficients: Vec<f64>,
    pub label: String,
}

pub fn build_sto3g(geom: &Geometry) -> Result<Vec<BasisShell>> {
    let mut shells = Vec::new();
    for (i, atom) in geom.atoms.iter().enumerate() {
        let (core, valence) = STO3G
            .get(atom.z as usize - 1)
            .ok_or_else(|| Error::MissingBasis(atom.symbol.clone()))?;
        shells.push(BasisShell { center: i, l: 0, n: 1, exponents: core.to_vec(), coefficients: S1.to_vec() });
        if let Some(v) = valence {
            shells.push(BasisShell { center: i, l: 0, n: 2, exponents: v.to_vec(), coefficients: S2.to_vec() });
            shells.push(BasisShell { center: i, l: 1, n: 2, exponents: v.to_vec(), coefficients: P2.to_vec() });
        }
    }
    Ok(shells)
}

fn primitive_norm(alpha: f64, l: u32) -> f64 {
    // (2l-1)!! = 1 for s and p
    (2.0 * alpha / std::f64::consts::PI).powf(0.75) * (4.0 * alpha).powf(l as f64 / 2.0)
}

/// Cartesian expansion, p functions in x, y, z order; each function has
/// unit self-overlap.
pub fn expand(geom: &Geometry, shells: &[BasisShell]) -> Vec<BasisFunction> {
    let mut out = Vec::new();
    for sh in shells {
        let atom = &geom.atoms[sh.center];
        let origin = atom.position_bohr();
        let comps: Vec<([u8; 3], &str)> = if sh.l == 0 {
            vec![([0, 0, 0], "s")]
        } else {
            vec![([1, 0, 0], "px"), ([0, 1, 0], "py"), ([0, 0, 1], "pz")]
        };
        for (powers, tag) in comps {
            let mut coefs: Vec<f64> = sh
                .exponents
                .iter()
                .zip(&sh.coefficients)
                .map(|(&a, &c)| c * primitive_norm(a, sh.l as u32))
                .collect();
            let mut s = 0.0;
            for (i, &a) in sh.exponents.iter().enumerate() {
                for (j, &b) in sh.exponents.iter().enumerate() {
                    s += coefs[i] * coefs[j] * primitive_overlap(a, powers, origin, b, powers, origin);
                }
            }
            let scale = 1.0 / s.sqrt();
            coefs.iter_mut().for_each(|c| *c *= scale);
            out.push(BasisFunction {
                center: sh.center,
                origin,
                powers,
                exponents: sh.exponents.clone(),
                coefficients: coefs,
                label: format!("{} {}{}", atom.symbol, sh.n, tag),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molint::geometry::parse_xyz;

    #[test]
    fn function_counts() {
        let h2o = parse_xyz("H -0.7586 0 0.587\nO 0 0 0\nH 0.7586 0 0.587").unwrap();
        let lih = parse_xyz("Li 0 0 0\nH 0 0 1.6").unwrap();
        let h = parse_xyz("H 0 0 0").unwrap();
        let n = |g: &Geometry| expand(g, &build_sto3g(g).unwrap()).len();
        assert_eq!(n(&h2o), 7);
        assert_eq!(n(&lih), 6);
        assert_eq!(n(&h), 1);
    }

    #[test]
    fn labels_follow_atom_order() {
        let g = parse_xyz("Li 0 0 0\nH 0 0 1.6").unwrap();
        let labels: Vec<String> = expand(&g, &build_sto3g(&g).unwrap()).into_iter().map(|f| f.label).collect();
        assert_eq!(labels, ["Li 1s", "Li 2s", "Li 2px", "Li 2py", "Li 2pz", "H 1s"]);
    }
}
