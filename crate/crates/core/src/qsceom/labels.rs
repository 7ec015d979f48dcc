use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::hamiltonian::Irrep;

use super::operators::ExcitationOperator;

/// Dominant-weight threshold for a single configuration label.
pub const DOMINANT_WEIGHT: f64 = 0.5;

/// Per-irrep running names: 1a1, 2a1, 1b2, …
pub fn orbital_labels(irreps: &[Irrep]) -> Vec<String> {
    let mut seen: BTreeMap<Irrep, usize> = BTreeMap::new();
    irreps
        .iter()
        .map(|&g| {
            let k = seen.entry(g).or_insert(0);
            *k += 1;
            format!("{k}{}", g.orbital_name())
        })
        .collect()
}

/// Spatial hole/particle pattern of Ĝ|HF⟩, e.g. "3a1^-1 1b1^-1" or
/// "1b1^-2"; spin variants share one label.
pub fn configuration(op: &ExcitationOperator, labels: &[String]) -> String {
    let mut holes: BTreeMap<usize, usize> = BTreeMap::new();
    let mut parts: BTreeMap<usize, usize> = BTreeMap::new();
    for &q in &op.annihilations {
        *holes.entry(q / 2).or_insert(0) += 1;
    }
    for &q in &op.creations {
        *parts.entry(q / 2).or_insert(0) += 1;
    }
    let mut out: Vec<String> = holes.iter().map(|(&p, &n)| format!("{}^-{n}", labels[p])).collect();
    out.extend(parts.iter().map(|(&p, &n)| format!("{}^{n}", labels[p])));
    out.join(" ")
}

/// Hole/particle pattern of a determinant relative to `reference`.
pub fn determinant_configuration(det: u64, reference: u64, labels: &[String]) -> String {
    let n = 2 * labels.len();
    let ops = ExcitationOperator {
        channel: super::operators::Channel::Ee,
        creations: (0..n).filter(|&q| det >> q & 1 == 1 && reference >> q & 1 == 0).collect(),
        annihilations: (0..n).filter(|&q| det >> q & 1 == 0 && reference >> q & 1 == 1).collect(),
        irrep: Irrep::A1,
    };
    configuration(&ops, labels)
}

/// Dominant label from spin-summed weights, or the two largest joined by
/// " + ".
pub fn label_from_weights(weights: impl IntoIterator<Item = (String, f64)>) -> String {
    let mut w: BTreeMap<String, f64> = BTreeMap::new();
    for (k, x) in weights {
        *w.entry(k).or_insert(0.0) += x;
    }
    let mut v: Vec<(String, f64)> = w.into_iter().collect();
    v.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    pick_label(&v)
}

fn pick_label(w: &[(String, f64)]) -> String {
    match w {
        [] => String::new(),
        [(a, x), ..] if *x > DOMINANT_WEIGHT => a.clone(),
        [(a, _)] => a.clone(),
        [(a, _), (b, _), ..] => format!("{a} + {b}"),
    }
}

/// Configuration weights Σ|c_u|² of one eigenvector, largest first.
pub fn configuration_weights(
    ops: &[ExcitationOperator],
    vectors: &DMatrix<Complex64>,
    state: usize,
    labels: &[String],
) -> Vec<(String, f64)> {
    let mut w: BTreeMap<String, f64> = BTreeMap::new();
    for (u, op) in ops.iter().enumerate() {
        *w.entry(configuration(op, labels)).or_insert(0.0) += vectors[(u, state)].norm_sqr();
    }
    let mut v: Vec<(String, f64)> = w.into_iter().collect();
    v.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    v
}

/// Dominant configuration, or the two largest joined by " + ".
pub fn state_label(ops: &[ExcitationOperator], vectors: &DMatrix<Complex64>, state: usize, labels: &[String]) -> String {
    pick_label(&configuration_weights(ops, vectors, state, labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsceom::operators::Channel;

    fn op(cr: Vec<usize>, an: Vec<usize>) -> ExcitationOperator {
        ExcitationOperator { channel: Channel::Dip, creations: cr, annihilations: an, irrep: Irrep::A1 }
    }

    #[test]
    fn water_names() {
        let l = orbital_labels(&[Irrep::A1, Irrep::A1, Irrep::B2, Irrep::A1, Irrep::B1, Irrep::A1, Irrep::B2]);
        assert_eq!(l, vec!["1a1", "2a1", "1b2", "3a1", "1b1", "4a1", "2b2"]);
        assert_eq!(configuration(&op(vec![], vec![8, 9]), &l), "1b1^-2");
        assert_eq!(configuration(&op(vec![10], vec![2, 7, 9]), &l), "2a1^-1 3a1^-1 1b1^-1 4a1^1");
    }

    #[test]
    fn dominant_and_mixed() {
        let l = orbital_labels(&[Irrep::A1; 4]);
        let ops = vec![op(vec![], vec![2, 5]), op(vec![], vec![3, 4]), op(vec![], vec![6, 7])];
        let v = DMatrix::from_column_slice(3, 2, &[0.6f64.sqrt(), 0.1f64.sqrt(), 0.3f64.sqrt(), 0.4f64.sqrt(), 0.0, 0.6f64.sqrt()])
            .map(|x| Complex64::new(x, 0.0));
        // spin variants of 2a1^-1 3a1^-1 add up
        assert_eq!(state_label(&ops, &v, 0, &l), "2a1^-1 3a1^-1");
        assert_eq!(state_label(&ops, &v, 1, &l), "4a1^-2");
    }

    #[test]
    fn determinant_names() {
        let l = orbital_labels(&[Irrep::A1, Irrep::A1, Irrep::B1]);
        assert_eq!(determinant_configuration(0b001111, 0b001111, &l), "");
        assert_eq!(determinant_configuration(0b010011, 0b001111, &l), "2a1^-2 1b1^1");
        let w = vec![("a".to_string(), 0.3), ("b".to_string(), 0.25), ("a".to_string(), 0.3)];
        assert_eq!(label_from_weights(w), "a");
    }
}
