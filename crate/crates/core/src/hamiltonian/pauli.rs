//! Phase-free Pauli strings in symplectic (x, z) bit form and weighted sums
//! of them. A string stands for i^{|x∧z|} X^x Z^z, so a qubit with both bits
//! set is Y.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const PRUNE_TOL: f64 = 1e-12;

const I_POW: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

pub fn i_pow(k: u32) -> Complex64 {
    I_POW[(k % 4) as usize]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PauliString {
    pub x: u64,
    pub z: u64,
}

impl PauliString {
    pub const IDENTITY: PauliString = PauliString { x: 0, z: 0 };

    pub fn new(x: u64, z: u64) -> Self {
        PauliString { x, z }
    }

    pub fn x(q: usize) -> Self {
        PauliString { x: 1 << q, z: 0 }
    }

    pub fn y(q: usize) -> Self {
        PauliString { x: 1 << q, z: 1 << q }
    }

    pub fn z(q: usize) -> Self {
        PauliString { x: 0, z: 1 << q }
    }

    /// Z on qubits 0..q (the Jordan–Wigner parity string below q).
    pub fn z_below(q: usize) -> Self {
        PauliString { x: 0, z: (1u64 << q) - 1 }
    }

    pub fn from_ops(ops: &[(usize, char)]) -> Result<Self> {
        let mut p = PauliString::IDENTITY;
        for &(q, c) in ops {
            if q >= 64 {
                return Err(Error::invalid(format!("qubit {q} out of range")));
            }
            let bit = 1u64 << q;
            if (p.x | p.z) & bit != 0 {
                return Err(Error::invalid(format!("qubit {q} repeated")));
            }
            match c {
                'X' => p.x |= bit,
                'Y' => {
                    p.x |= bit;
                    p.z |= bit
                }
                'Z' => p.z |= bit,
                'I' => {}
                _ => return Err(Error::invalid(format!("bad Pauli letter `{c}`"))),
            }
        }
        Ok(p)
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    pub fn x_count(&self) -> u32 {
        (self.x & !self.z).count_ones()
    }

    /// Highest qubit acted on, plus one.
    pub fn extent(&self) -> usize {
        64 - (self.x | self.z).leading_zeros() as usize
    }

    pub fn op(&self, q: usize) -> char {
        let b = 1u64 << q;
        match (self.x & b != 0, self.z & b != 0) {
            (false, false) => 'I',
            (true, false) => 'X',
            (true, true) => 'Y',
            (false, true) => 'Z',
        }
    }

    pub fn ops(&self) -> Vec<(usize, char)> {
        (0..self.extent()).filter(|&q| self.op(q) != 'I').map(|q| (q, self.op(q))).collect()
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones() % 2 == 0
    }

    /// self · other = phase · result.
    pub fn mul(&self, other: &PauliString) -> (Complex64, PauliString) {
        let r = PauliString { x: self.x ^ other.x, z: self.z ^ other.z };
        let k = (self.y_count() + other.y_count() + 2 * (self.z & other.x).count_ones()) as i64 - r.y_count() as i64;
        (i_pow(k.rem_euclid(4) as u32), r)
    }

    /// P|k⟩ = phase · |k ⊕ x⟩.
    #[inline]
    pub fn act_on_basis(&self, k: usize) -> (usize, Complex64) {
        let sign = ((k as u64 & self.z).count_ones() & 1) * 2;
        (k ^ self.x as usize, i_pow(self.y_count() + sign))
    }

    pub fn shifted(&self, by: usize) -> PauliString {
        PauliString { x: self.x << by, z: self.z << by }
    }

    pub fn to_dense(&self, n_qubits: usize) -> DMatrix<Complex64> {
        let dim = 1usize << n_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        for k in 0..dim {
            let (j, ph) = self.act_on_basis(k);
            m[(j, k)] = ph;
        }
        m
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("I");
        }
        let parts: Vec<String> = self.ops().iter().map(|(q, c)| format!("{c}{q}")).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for PauliString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "I" || s.is_empty() {
            return Ok(PauliString::IDENTITY);
        }
        let mut ops = Vec::new();
        for tok in s.split_whitespace() {
            let mut chars = tok.chars();
            let c = chars.next().unwrap();
            let q: usize = chars.as_str().parse().map_err(|_| Error::invalid(format!("bad Pauli token `{tok}`")))?;
            ops.push((q, c));
        }
        PauliString::from_ops(&ops)
    }
}

impl Serialize for PauliString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Canonically merged Σ c_k P_k on a fixed register.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PauliSum {
    pub n_qubits: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl PauliSum {
    pub fn zero(n_qubits: usize) -> Self {
        PauliSum { n_qubits, terms: BTreeMap::new() }
    }

    pub fn identity(n_qubits: usize, c: Complex64) -> Self {
        PauliSum::term(n_qubits, PauliString::IDENTITY, c)
    }

    pub fn term(n_qubits: usize, p: PauliString, c: Complex64) -> Self {
        let mut s = PauliSum::zero(n_qubits);
        s.add_term(p, c);
        s
    }

    pub fn add_term(&mut self, p: PauliString, c: Complex64) {
        debug_assert!(p.extent() <= self.n_qubits, "{p} outside {}-qubit register", self.n_qubits);
        *self.terms.entry(p).or_insert(Complex64::new(0.0, 0.0)) += c;
    }

    pub fn add_scaled(&mut self, other: &PauliSum, c: Complex64) {
        for (p, v) in &other.terms {
            self.add_term(*p, v * c);
        }
    }

    /// Drop terms with |c| below `tol`.
    pub fn prune(&mut self, tol: f64) {
        self.terms.retain(|_, c| c.norm() >= tol);
    }

    pub fn canonical(mut self) -> Self {
        self.prune(PRUNE_TOL);
        self
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &PauliString) -> Complex64 {
        self.terms.get(p).copied().unwrap_or_default()
    }

    pub fn scaled(&self, c: Complex64) -> PauliSum {
        let mut s = self.clone();
        s.terms.values_mut().for_each(|v| *v *= c);
        s
    }

    pub fn adjoint(&self) -> PauliSum {
        let mut s = self.clone();
        s.terms.values_mut().for_each(|v| *v = v.conj());
        s
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }

    pub fn max_imaginary(&self) -> f64 {
        self.terms.values().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn commutator(&self, other: &PauliSum) -> PauliSum {
        (self * other - other * self).canonical()
    }

    /// Hermitian parts A = (T + T†)/2 and B = −i(T − T†)/2 with T = A + iB.
    pub fn hermitian_split(&self) -> (PauliSum, PauliSum) {
        let adj = self.adjoint();
        let re = (self + &adj).scaled(Complex64::new(0.5, 0.0)).canonical();
        let im = (self - &adj).scaled(Complex64::new(0.0, -0.5)).canonical();
        (re, im)
    }

    pub fn shifted(&self, by: usize, n_qubits: usize) -> PauliSum {
        let mut s = PauliSum::zero(n_qubits);
        for (p, c) in &self.terms {
            s.add_term(p.shifted(by), *c);
        }
        s
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.n_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        for (p, c) in &self.terms {
            for k in 0..dim {
                let (j, ph) = p.act_on_basis(k);
                m[(j, k)] += c * ph;
            }
        }
        m
    }
}

impl Add for &PauliSum {
    type Output = PauliSum;
    fn add(self, rhs: &PauliSum) -> PauliSum {
        let mut s = self.clone();
        s.n_qubits = s.n_qubits.max(rhs.n_qubits);
        s.add_scaled(rhs, Complex64::new(1.0, 0.0));
        s
    }
}

impl Sub for &PauliSum {
    type Output = PauliSum;
    fn sub(self, rhs: &PauliSum) -> PauliSum {
        let mut s = self.clone();
        s.n_qubits = s.n_qubits.max(rhs.n_qubits);
        s.add_scaled(rhs, Complex64::new(-1.0, 0.0));
        s
    }
}

impl Sub for PauliSum {
    type Output = PauliSum;
    fn sub(self, rhs: PauliSum) -> PauliSum {
        &self - &rhs
    }
}

impl Mul for &PauliSum {
    type Output = PauliSum;
    fn mul(self, rhs: &PauliSum) -> PauliSum {
        let mut s = PauliSum::zero(self.n_qubits.max(rhs.n_qubits));
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let (ph, p) = a.mul(b);
                s.add_term(p, ca * cb * ph);
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_qubit_table() {
        let (x, y, z) = (PauliString::x(0), PauliString::y(0), PauliString::z(0));
        assert_eq!(x.mul(&y), (c(0.0, 1.0), z));
        assert_eq!(y.mul(&x), (c(0.0, -1.0), z));
        assert_eq!(z.mul(&x), (c(0.0, 1.0), y));
        assert_eq!(y.mul(&z), (c(0.0, 1.0), x));
        assert_eq!(y.mul(&y), (c(1.0, 0.0), PauliString::IDENTITY));
    }

    #[test]
    fn y_convention_on_basis() {
        let (j, ph) = PauliString::y(0).act_on_basis(0);
        assert_eq!((j, ph), (1, c(0.0, 1.0)));
        let (j, ph) = PauliString::y(0).act_on_basis(1);
        assert_eq!((j, ph), (0, c(0.0, -1.0)));
    }

    #[test]
    fn labels_round_trip() {
        let p: PauliString = "X0 Y3 Z11".parse().unwrap();
        assert_eq!(p.to_string(), "X0 Y3 Z11");
        assert_eq!(p.weight(), 3);
        assert_eq!("I".parse::<PauliString>().unwrap(), PauliString::IDENTITY);
        assert!("X0 Z0".parse::<PauliString>().is_err());
    }

    #[test]
    fn hermitian_split_reassembles() {
        let mut t = PauliSum::zero(2);
        t.add_term(PauliString::x(0), c(0.3, 0.7));
        t.add_term("Y0 Z1".parse().unwrap(), c(-1.0, 0.2));
        let (a, b) = t.hermitian_split();
        assert!(a.is_hermitian(1e-15) && b.is_hermitian(1e-15));
        let back = (&a + &b.scaled(c(0.0, 1.0))).canonical();
        assert!((back.to_dense() - t.to_dense()).norm() < 1e-14);
    }
}
