//! Dense eigensolvers with a deterministic gauge: eigenvalues ascending,
//! degenerate subspaces re-expressed in a pivoted basis, and every vector's
//! leading component made real and positive.

use faer::complex_native::c64;
use faer::{Mat, Side};
use nalgebra::{ComplexField, DMatrix, DVector};
use num_complex::Complex64;

const PIVOT_TIE: f64 = 1e-10;

fn leading_index<T: ComplexField<RealField = f64>>(v: &DVector<T>) -> usize {
    let max = v.iter().map(|x| x.clone().modulus()).fold(0.0, f64::max);
    v.iter()
        .position(|x| x.clone().modulus() >= max - PIVOT_TIE)
        .unwrap_or(0)
}

fn fix_phase<T: ComplexField<RealField = f64>>(v: &mut DVector<T>, at: usize) {
    let c = v[at].clone();
    let m = c.clone().modulus();
    if m > 0.0 {
        let phase = c.conjugate().unscale(m);
        for x in v.iter_mut() {
            *x = x.clone() * phase.clone();
        }
    }
}

/// Replace the columns of `v` (orthonormal, spanning one degenerate
/// subspace) by a basis picked greedily from projected unit vectors.
fn canonicalize_subspace<T: ComplexField<RealField = f64>>(v: &DMatrix<T>) -> DMatrix<T> {
    let (n, k) = v.shape();
    if k == 1 {
        let mut col = v.column(0).into_owned();
        let at = leading_index(&col);
        fix_phase(&mut col, at);
        return DMatrix::from_columns(&[col]);
    }
    let mut chosen: Vec<DVector<T>> = Vec::with_capacity(k);
    let mut pivots = Vec::with_capacity(k);
    for _ in 0..k {
        let mut best: Option<(usize, f64, DVector<T>)> = None;
        for i in 0..n {
            if pivots.contains(&i) {
                continue;
            }
            let coeffs = v.row(i).adjoint();
            let mut w = v * coeffs;
            for c in &chosen {
                let ov = c.dotc(&w);
                w -= c * ov;
            }
            let norm = w.norm();
            let better = match &best {
                None => true,
                Some((_, b, _)) => norm > *b + PIVOT_TIE,
            };
            if better {
                best = Some((i, norm, w));
            }
        }
        let (i, norm, w) = best.expect("non-empty subspace");
        let mut w = w.unscale(norm);
        fix_phase(&mut w, i);
        pivots.push(i);
        chosen.push(w);
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&j| pivots[j]);
    let cols: Vec<DVector<T>> = order.into_iter().map(|j| chosen[j].clone()).collect();
    DMatrix::from_columns(&cols)
}

fn sorted_gauged<T: ComplexField<RealField = f64>>(
    values: Vec<f64>,
    vectors: DMatrix<T>,
    degeneracy_tol: f64,
) -> (Vec<f64>, DMatrix<T>) {
    let n = values.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
    let vals: Vec<f64> = idx.iter().map(|&i| values[i]).collect();
    let mut vecs = DMatrix::<T>::zeros(n, n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (vals[end] - vals[end - 1]).abs() < degeneracy_tol {
            end += 1;
        }
        let cols: Vec<DVector<T>> = idx[start..end].iter().map(|&i| vectors.column(i).into_owned()).collect();
        let block = canonicalize_subspace(&DMatrix::from_columns(&cols));
        for j in 0..(end - start) {
            vecs.set_column(start + j, &block.column(j));
        }
        start = end;
    }
    (vals, vecs)
}

/// Real symmetric eigendecomposition, eigenvalues ascending.
pub fn sym_eigen(m: &DMatrix<f64>, degeneracy_tol: f64) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    let a = Mat::<f64>::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)]));
    let e = a.selfadjoint_eigendecomposition(Side::Lower);
    let vals = (0..n).map(|i| e.s().column_vector().read(i)).collect();
    let vecs = DMatrix::from_fn(n, n, |i, j| e.u().read(i, j));
    sorted_gauged(vals, vecs, degeneracy_tol)
}

/// Complex Hermitian eigendecomposition, eigenvalues ascending.
pub fn herm_eigen(m: &DMatrix<Complex64>, degeneracy_tol: f64) -> (Vec<f64>, DMatrix<Complex64>) {
    let n = m.nrows();
    let a = Mat::<c64>::from_fn(n, n, |i, j| {
        let v = 0.5 * (m[(i, j)] + m[(j, i)].conj());
        c64::new(v.re, v.im)
    });
    let e = a.selfadjoint_eigendecomposition(Side::Lower);
    let vals = (0..n).map(|i| e.s().column_vector().read(i).re).collect();
    let vecs = DMatrix::from_fn(n, n, |i, j| {
        let v = e.u().read(i, j);
        Complex64::new(v.re, v.im)
    });
    sorted_gauged(vals, vecs, degeneracy_tol)
}

/// Largest |A - A†| entry.
pub fn hermiticity_defect(m: &DMatrix<Complex64>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// S^{-1/2} for a symmetric positive-definite matrix.
pub fn inv_sqrt_sym(s: &DMatrix<f64>) -> DMatrix<f64> {
    let (w, v) = sym_eigen(s, 0.0);
    let d = DMatrix::from_diagonal(&DVector::from_iterator(w.len(), w.iter().map(|x| 1.0 / x.sqrt())));
    &v * d * v.transpose()
}
