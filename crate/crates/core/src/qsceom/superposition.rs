//! Matrix elements from expectation values of two-state superpositions:
//! with |s_φ⟩ = (|ψ_u⟩ + e^{iφ}|ψ_v⟩)/√2 and a Hermitian observable A,
//! Re A_uv = E⁰ − ½(A_uu + A_vv) and Im A_uv = −E^{π/2} + ½(A_uu + A_vv).

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::{apply_monomial, FermionOperator, Irrep};
use crate::simulator::{inner, Circuit, SparseOperator, StateVector};

use super::operators::ExcitationOperator;

type C = Complex64;

/// How superposition states are formed before measuring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Two-determinant vector built first, then evolved by U.
    Evolve,
    /// Superposition of the already evolved basis states; A applied to it.
    Linear,
    /// As `Linear`, with Aψ precomputed per basis state.
    Cached,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "evolve" => Ok(Mode::Evolve),
            "linear" => Ok(Mode::Linear),
            "cached" => Ok(Mode::Cached),
            _ => Err(Error::invalid(format!("unknown superposition mode `{s}` (evolve, linear, cached)"))),
        }
    }
}

pub trait Observable {
    fn apply(&self, psi: &[C]) -> Vec<C>;
}

impl Observable for SparseOperator {
    fn apply(&self, psi: &[C]) -> Vec<C> {
        SparseOperator::apply(self, psi)
    }
}

impl Observable for FermionOperator {
    fn apply(&self, psi: &[C]) -> Vec<C> {
        apply_fermion(self, psi)
    }
}

/// Fermionic operator on a JW-ordered amplitude vector.
pub fn apply_fermion(op: &FermionOperator, psi: &[C]) -> Vec<C> {
    let mut out = vec![C::new(0.0, 0.0); psi.len()];
    for (k, a) in psi.iter().enumerate() {
        if a.re == 0.0 && a.im == 0.0 {
            continue;
        }
        for (c, ops) in &op.terms {
            if let Some((d, s)) = apply_monomial(k as u64, ops) {
                out[d as usize] += c * s * a;
            }
        }
    }
    out
}

/// (T + T†)/2 and (T − T†)/(2i).
pub fn hermitian_parts(t: &FermionOperator) -> (FermionOperator, FermionOperator) {
    let adj = t.adjoint();
    let mut re = FermionOperator::new();
    let mut im = FermionOperator::new();
    for (c, ops) in &t.terms {
        re.push(c * 0.5, ops.clone());
        im.push(c * C::new(0.0, -0.5), ops.clone());
    }
    for (c, ops) in adj.terms {
        re.push(c * 0.5, ops.clone());
        im.push(c * C::new(0.0, 0.5), ops);
    }
    (re, im)
}

/// Basis states ψ_u = U Ĝ_u|HF⟩ of one irrep block, with the pre-U
/// determinant data kept for the `Evolve` path.
#[derive(Debug, Clone)]
pub struct BlockStates {
    pub irrep: Irrep,
    pub operators: Vec<ExcitationOperator>,
    pub determinants: Vec<u64>,
    pub signs: Vec<f64>,
    pub states: Vec<Vec<C>>,
}

impl BlockStates {
    pub fn prepare(irrep: Irrep, operators: &[ExcitationOperator], hf: u64, circuit: &Circuit) -> Result<Self> {
        let mut determinants = Vec::with_capacity(operators.len());
        let mut signs = Vec::with_capacity(operators.len());
        let mut states = Vec::with_capacity(operators.len());
        for op in operators {
            let (d, s) = op.act(hf).ok_or_else(|| Error::invalid(format!("operator {op} annihilates the reference")))?;
            let mut psi = StateVector::basis(circuit.n_qubits, d as usize);
            psi.amps[d as usize] = C::new(s, 0.0);
            circuit.apply(&mut psi);
            determinants.push(d);
            signs.push(s);
            states.push(psi.amps);
        }
        Ok(BlockStates { irrep, operators: operators.to_vec(), determinants, signs, states })
    }

    /// The reference U|HF⟩ as a one-state block (Ĝ₀ = 1).
    pub fn reference(hf: u64, circuit: &Circuit) -> Self {
        let mut psi = StateVector::basis(circuit.n_qubits, hf as usize);
        circuit.apply(&mut psi);
        BlockStates { irrep: Irrep::A1, operators: Vec::new(), determinants: vec![hf], signs: vec![1.0], states: vec![psi.amps] }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Σ_u c_u ψ_u.
    pub fn combine(&self, coeffs: &[C]) -> Vec<C> {
        let mut out = vec![C::new(0.0, 0.0); self.states[0].len()];
        for (c, psi) in coeffs.iter().zip(&self.states) {
            for (o, a) in out.iter_mut().zip(psi) {
                *o += c * a;
            }
        }
        out
    }
}

/// Measures superposition expectations and counts every evaluation.
pub struct ElementEngine<'a> {
    pub circuit: &'a Circuit,
    pub mode: Mode,
    pub evaluations: usize,
}

impl<'a> ElementEngine<'a> {
    pub fn new(circuit: &'a Circuit, mode: Mode) -> Self {
        ElementEngine { circuit, mode, evaluations: 0 }
    }

    fn superposition(&self, a: &BlockStates, u: usize, b: &BlockStates, v: usize, phi: f64) -> Vec<C> {
        let ph = C::from_polar(FRAC_1_SQRT_2, phi);
        match self.mode {
            Mode::Evolve => {
                let mut psi = StateVector::zero_state(self.circuit.n_qubits);
                psi.amps[0] = C::new(0.0, 0.0);
                psi.amps[a.determinants[u] as usize] += FRAC_1_SQRT_2 * a.signs[u];
                psi.amps[b.determinants[v] as usize] += ph * b.signs[v];
                self.circuit.apply(&mut psi);
                psi.amps
            }
            Mode::Linear | Mode::Cached => {
                a.states[u].iter().zip(&b.states[v]).map(|(x, y)| x * FRAC_1_SQRT_2 + y * ph).collect()
            }
        }
    }

    fn measure(&mut self, obs: &dyn Observable, s: &[C]) -> f64 {
        self.evaluations += 1;
        inner(s, &obs.apply(s)).re
    }

    fn diagonals(&mut self, obs: &dyn Observable, blk: &BlockStates, cache: Option<&[Vec<C>]>) -> Vec<f64> {
        (0..blk.len())
            .map(|u| {
                self.evaluations += 1;
                match cache {
                    Some(c) => inner(&blk.states[u], &c[u]).re,
                    None => inner(&blk.states[u], &obs.apply(&blk.states[u])).re,
                }
            })
            .collect()
    }

    fn pair_energy(
        &mut self,
        obs: &dyn Observable,
        a: &BlockStates,
        u: usize,
        b: &BlockStates,
        v: usize,
        phi: f64,
        cache: Option<(&[Vec<C>], &[Vec<C>])>,
    ) -> f64 {
        match (self.mode, cache) {
            (Mode::Cached, Some((ca, cb))) => {
                self.evaluations += 1;
                let ph = C::from_polar(FRAC_1_SQRT_2, phi);
                let s: Vec<C> = a.states[u].iter().zip(&b.states[v]).map(|(x, y)| x * FRAC_1_SQRT_2 + y * ph).collect();
                let hs: Vec<C> = ca[u].iter().zip(&cb[v]).map(|(x, y)| x * FRAC_1_SQRT_2 + y * ph).collect();
                inner(&s, &hs).re
            }
            _ => {
                let s = self.superposition(a, u, b, v, phi);
                self.measure(obs, &s)
            }
        }
    }

    fn element(
        &mut self,
        obs: &dyn Observable,
        a: &BlockStates,
        u: usize,
        b: &BlockStates,
        v: usize,
        du: f64,
        dv: f64,
        cache: Option<(&[Vec<C>], &[Vec<C>])>,
    ) -> C {
        let e0 = self.pair_energy(obs, a, u, b, v, 0.0, cache);
        let e90 = self.pair_energy(obs, a, u, b, v, FRAC_PI_2, cache);
        let half = 0.5 * (du + dv);
        C::new(e0 - half, -e90 + half)
    }

    fn cache(&self, obs: &dyn Observable, blk: &BlockStates) -> Option<Vec<Vec<C>>> {
        (self.mode == Mode::Cached).then(|| blk.states.iter().map(|s| obs.apply(s)).collect())
    }

    /// Hermitian block ⟨ψ_u|A|ψ_v⟩: n diagonal plus 2·C(n,2) pair
    /// evaluations.
    pub fn hermitian_block(&mut self, obs: &dyn Observable, blk: &BlockStates) -> DMatrix<C> {
        let n = blk.len();
        let cache = self.cache(obs, blk);
        let d = self.diagonals(obs, blk, cache.as_deref());
        let mut m = DMatrix::from_element(n, n, C::new(0.0, 0.0));
        for u in 0..n {
            m[(u, u)] = C::new(d[u], 0.0);
            for v in u + 1..n {
                let c = cache.as_deref().map(|c| (c, c));
                let x = self.element(obs, blk, u, blk, v, d[u], d[v], c);
                m[(u, v)] = x;
                m[(v, u)] = x.conj();
            }
        }
        m
    }

    /// Cross-block ⟨ψ_u^bra|A|ψ_v^ket⟩ for Hermitian A.
    pub fn hermitian_cross(&mut self, obs: &dyn Observable, bra: &BlockStates, ket: &BlockStates) -> DMatrix<C> {
        let cb = self.cache(obs, bra);
        let ck = self.cache(obs, ket);
        let db = self.diagonals(obs, bra, cb.as_deref());
        let dk = self.diagonals(obs, ket, ck.as_deref());
        let mut m = DMatrix::from_element(bra.len(), ket.len(), C::new(0.0, 0.0));
        for u in 0..bra.len() {
            for v in 0..ket.len() {
                let c = cb.as_deref().zip(ck.as_deref());
                m[(u, v)] = self.element(obs, bra, u, ket, v, db[u], dk[v], c);
            }
        }
        m
    }

    /// ⟨ψ_u|T|ψ_v⟩ for a general T from its two Hermitian parts.
    pub fn transition_cross(&mut self, t: &FermionOperator, bra: &BlockStates, ket: &BlockStates) -> DMatrix<C> {
        let (re, im) = hermitian_parts(t);
        let a = self.hermitian_cross(&re, bra, ket);
        let b = self.hermitian_cross(&im, bra, ket);
        a + b * C::new(0.0, 1.0)
    }
}

/// Direct inner products ⟨ψ_u|A ψ_v⟩, the reference for the
/// reconstruction.
pub fn direct_matrix(obs: &dyn Observable, bra: &BlockStates, ket: &BlockStates) -> DMatrix<C> {
    let applied: Vec<Vec<C>> = ket.states.iter().map(|s| obs.apply(s)).collect();
    DMatrix::from_fn(bra.len(), ket.len(), |u, v| inner(&bra.states[u], &applied[v]))
}

/// Largest elementwise |a − b|.
pub fn max_deviation(a: &DMatrix<C>, b: &DMatrix<C>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Σ_uv (c_u^f)* O_uv c_v^n over eigenvector columns.
pub fn contract(bra_vecs: &DMatrix<C>, o: &DMatrix<C>, ket_vecs: &DMatrix<C>) -> DMatrix<C> {
    bra_vecs.adjoint() * o * ket_vecs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{PauliString, PauliSum, SpinOrbitalHamiltonian};
    use crate::qsceom::operators::{enumerate_operators, Channel, ChannelContext};

    fn toy() -> (SpinOrbitalHamiltonian, ChannelContext) {
        let mut h = SpinOrbitalHamiltonian::zeros(3, 4, 0.2);
        for (p, e) in [(0, -3.0), (1, -0.9), (2, 0.3)] {
            h.set_h(p, p, e);
        }
        h.set_h(1, 2, 0.07);
        h.set_g(0, 0, 0, 0, 1.1);
        h.set_g(1, 1, 1, 1, 0.6);
        h.set_g(2, 2, 2, 2, 0.5);
        h.set_g(0, 0, 1, 1, 0.5);
        h.set_g(1, 1, 2, 2, 0.4);
        h.set_g(0, 1, 0, 1, 0.08);
        h.set_g(1, 2, 1, 2, 0.11);
        h.set_g(0, 1, 1, 2, 0.02);
        let ctx = ChannelContext::from_hamiltonian(&h, &[0]).unwrap();
        (h, ctx)
    }

    fn circuit() -> Circuit {
        let mut c = Circuit::new(6);
        for (s, t) in [("X2 Y4", 0.3), ("Y3 X5", -0.2), ("X2 X3 X4 Y5", 0.15), ("Z2 Z5", 0.4)] {
            c.push(s.parse::<PauliString>().unwrap(), t);
        }
        c
    }

    #[test]
    fn all_modes_match_direct() {
        let (h, ctx) = toy();
        let hs = SparseOperator::from_pauli_sum(&h.to_pauli(6).unwrap());
        let c = circuit();
        for ch in [Channel::Ip, Channel::Dip, Channel::Ee] {
            let basis = enumerate_operators(ch, &ctx, true).unwrap();
            for (g, ops) in &basis.blocks {
                if ops.is_empty() {
                    continue;
                }
                let blk = BlockStates::prepare(*g, ops, ctx.hf_determinant(), &c).unwrap();
                let direct = direct_matrix(&hs, &blk, &blk);
                for mode in [Mode::Evolve, Mode::Linear, Mode::Cached] {
                    let mut eng = ElementEngine::new(&c, mode);
                    let m = eng.hermitian_block(&hs, &blk);
                    assert!(max_deviation(&m, &direct) < 1e-12, "{ch} {g} {mode:?}");
                    assert_eq!(eng.evaluations, blk.len() * blk.len());
                }
            }
        }
    }

    #[test]
    fn transition_cross_matches_direct() {
        let (_, ctx) = toy();
        let c = circuit();
        let ip = enumerate_operators(Channel::Ip, &ctx, true).unwrap();
        let dip = enumerate_operators(Channel::Dip, &ctx, true).unwrap();
        let ket = BlockStates::prepare(Irrep::A1, ip.block(Irrep::A1), ctx.hf_determinant(), &c).unwrap();
        let bra = BlockStates::prepare(Irrep::A1, dip.block(Irrep::A1), ctx.hf_determinant(), &c).unwrap();
        let t = FermionOperator::monomial(C::new(1.0, 0.0), vec![(1, true), (3, false), (2, false)]);
        let direct = direct_matrix(&t, &bra, &ket);
        for mode in [Mode::Linear, Mode::Cached, Mode::Evolve] {
            let mut eng = ElementEngine::new(&c, mode);
            let o = eng.transition_cross(&t, &bra, &ket);
            assert!(max_deviation(&o, &direct) < 1e-12);
            let (ni, nd) = (ket.len(), bra.len());
            assert_eq!(eng.evaluations, 2 * (ni + nd + 2 * ni * nd));
        }
    }

    #[test]
    fn identity_gives_orthonormality() {
        let (_, ctx) = toy();
        let c = circuit();
        let b = enumerate_operators(Channel::Dip, &ctx, true).unwrap();
        let blk = BlockStates::prepare(Irrep::A1, b.block(Irrep::A1), ctx.hf_determinant(), &c).unwrap();
        let id = SparseOperator::from_pauli_sum(&PauliSum::identity(6, C::new(1.0, 0.0)));
        let m = ElementEngine::new(&c, Mode::Linear).hermitian_block(&id, &blk);
        assert!(max_deviation(&m, &DMatrix::<C>::identity(blk.len(), blk.len())) < 1e-12);
    }
}
