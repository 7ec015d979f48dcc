//! Fermionic ladder operators: Jordan–Wigner images and direct action on
//! occupation bitstrings with the same sign convention (parity of occupied
//! modes below the index).

use num_complex::Complex64;

use super::pauli::{PauliString, PauliSum};

/// (spin-orbital index, is creation).
pub type Ladder = (usize, bool);

fn ladder_jw(q: usize, dagger: bool, n_qubits: usize) -> PauliSum {
    let zs = PauliString::z_below(q);
    let (px, py) = (PauliString::x(q).mul(&zs), PauliString::y(q).mul(&zs));
    let mut s = PauliSum::zero(n_qubits);
    // Z_{<q} commutes past X_q / Y_q, so the products carry no phase
    debug_assert_eq!(px.0, Complex64::new(1.0, 0.0));
    s.add_term(px.1, Complex64::new(0.5, 0.0));
    let im = if dagger { -0.5 } else { 0.5 };
    s.add_term(py.1, py.0 * Complex64::new(0.0, im));
    s
}

/// Jordan–Wigner image of the ordered product `ops[0] ops[1] …`.
pub fn jordan_wigner(ops: &[Ladder], n_qubits: usize) -> PauliSum {
    let mut acc = PauliSum::identity(n_qubits, Complex64::new(1.0, 0.0));
    for &(q, dagger) in ops {
        acc = &acc * &ladder_jw(q, dagger, n_qubits);
    }
    acc.canonical()
}

/// Linear combination of ladder monomials.
#[derive(Debug, Clone, Default)]
pub struct FermionOperator {
    pub terms: Vec<(Complex64, Vec<Ladder>)>,
}

impl FermionOperator {
    pub fn new() -> Self {
        FermionOperator::default()
    }

    pub fn monomial(c: Complex64, ops: Vec<Ladder>) -> Self {
        FermionOperator { terms: vec![(c, ops)] }
    }

    pub fn push(&mut self, c: Complex64, ops: Vec<Ladder>) {
        self.terms.push((c, ops));
    }

    pub fn adjoint(&self) -> FermionOperator {
        let terms = self
            .terms
            .iter()
            .map(|(c, ops)| (c.conj(), ops.iter().rev().map(|&(q, d)| (q, !d)).collect()))
            .collect();
        FermionOperator { terms }
    }

    pub fn to_pauli(&self, n_qubits: usize) -> PauliSum {
        let mut s = PauliSum::zero(n_qubits);
        for (c, ops) in &self.terms {
            s.add_scaled(&jordan_wigner(ops, n_qubits), *c);
        }
        s.canonical()
    }

    /// Apply to a determinant; vanishing monomials are skipped.
    pub fn apply_to_determinant(&self, det: u64) -> Vec<(u64, Complex64)> {
        let mut out = Vec::new();
        for (c, ops) in &self.terms {
            if let Some((d, sign)) = apply_monomial(det, ops) {
                out.push((d, c * sign));
            }
        }
        out
    }
}

/// a_q or a_q† on an occupation bitstring.
#[inline]
pub fn apply_ladder(det: u64, q: usize, dagger: bool) -> Option<(u64, f64)> {
    let bit = 1u64 << q;
    let occupied = det & bit != 0;
    if occupied == dagger {
        return None;
    }
    let sign = if (det & (bit - 1)).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
    Some((det ^ bit, sign))
}

/// Ordered product applied right-to-left (the last factor acts first).
pub fn apply_monomial(det: u64, ops: &[Ladder]) -> Option<(u64, f64)> {
    let mut d = det;
    let mut sign = 1.0;
    for &(q, dagger) in ops.iter().rev() {
        let (nd, s) = apply_ladder(d, q, dagger)?;
        d = nd;
        sign *= s;
    }
    Some((d, sign))
}
