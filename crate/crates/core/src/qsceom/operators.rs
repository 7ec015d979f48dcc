use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::{apply_monomial, operator_irrep, FermionOperator, Irrep, Ladder, SpinOrbitalHamiltonian};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Channel {
    Ee,
    Ip,
    Dip,
}

impl Channel {
    /// Change of 2·Sz produced by the channel operators.
    pub fn sz2_change(self) -> i32 {
        match self {
            Channel::Ip => 1,
            Channel::Ee | Channel::Dip => 0,
        }
    }

    pub fn electron_change(self) -> i32 {
        match self {
            Channel::Ee => 0,
            Channel::Ip => -1,
            Channel::Dip => -2,
        }
    }
}

impl std::str::FromStr for Channel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "EE" => Ok(Channel::Ee),
            "IP" => Ok(Channel::Ip),
            "DIP" => Ok(Channel::Dip),
            _ => Err(Error::invalid(format!("unknown channel `{s}` (expected EE, IP or DIP)"))),
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Channel::Ee => "EE",
            Channel::Ip => "IP",
            Channel::Dip => "DIP",
        })
    }
}

/// Ĝ = a†_{c1} a†_{c2} … a_{a1} a_{a2} … with both index lists ascending;
/// the rightmost annihilator acts first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcitationOperator {
    pub channel: Channel,
    pub creations: Vec<usize>,
    pub annihilations: Vec<usize>,
    pub irrep: Irrep,
}

impl ExcitationOperator {
    pub fn ladders(&self) -> Vec<Ladder> {
        let mut ops: Vec<Ladder> = self.creations.iter().map(|&q| (q, true)).collect();
        ops.extend(self.annihilations.iter().map(|&q| (q, false)));
        ops
    }

    pub fn fermion(&self) -> FermionOperator {
        FermionOperator::monomial(1.0.into(), self.ladders())
    }

    /// Ĝ|D⟩ = sign |D'⟩, or None if Ĝ annihilates D.
    pub fn act(&self, det: u64) -> Option<(u64, f64)> {
        apply_monomial(det, &self.ladders())
    }

    pub fn rank(&self) -> usize {
        self.creations.len() + self.annihilations.len()
    }
}

impl fmt::Display for ExcitationOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.creations.iter().map(|q| format!("a+{q}")).collect();
        parts.extend(self.annihilations.iter().map(|q| format!("a{q}")));
        f.write_str(&parts.join(" "))
    }
}

/// Register layout needed for enumeration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelContext {
    pub n_spin_orbitals: usize,
    pub n_electrons: usize,
    pub orbital_irreps: Vec<Irrep>,
    pub core_spatial: Vec<usize>,
}

impl ChannelContext {
    pub fn from_hamiltonian(ham: &SpinOrbitalHamiltonian, core_spatial: &[usize]) -> Result<Self> {
        if let Some(&c) = core_spatial.iter().find(|&&c| 2 * c + 1 >= ham.n_electrons) {
            return Err(Error::invalid(format!("core orbital {c} is not doubly occupied in the reference")));
        }
        Ok(ChannelContext {
            n_spin_orbitals: ham.n_so(),
            n_electrons: ham.n_electrons,
            orbital_irreps: ham.orbital_irreps.clone(),
            core_spatial: core_spatial.to_vec(),
        })
    }

    pub fn hf_determinant(&self) -> u64 {
        (1u64 << self.n_electrons) - 1
    }

    pub fn is_core(&self, q: usize) -> bool {
        self.core_spatial.contains(&(q / 2))
    }

    fn occupied(&self, core: bool) -> Vec<usize> {
        (0..self.n_electrons).filter(|&q| self.is_core(q) == core).collect()
    }

    fn virtuals(&self) -> Vec<usize> {
        (self.n_electrons..self.n_spin_orbitals).filter(|&q| !self.is_core(q)).collect()
    }
}

fn sz(q: usize) -> i32 {
    if q % 2 == 0 {
        1
    } else {
        -1
    }
}

fn pairs(v: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &a) in v.iter().enumerate() {
        for &b in &v[i + 1..] {
            out.push((a, b));
        }
    }
    out
}

fn triples(v: &[usize]) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for (i, &a) in v.iter().enumerate() {
        for (j, &b) in v.iter().enumerate().skip(i + 1) {
            for &c in &v[j + 1..] {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Operators of one channel grouped into irrep blocks (order `Irrep::ALL`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelBasis {
    pub channel: Channel,
    pub blocks: Vec<(Irrep, Vec<ExcitationOperator>)>,
}

impl ChannelBasis {
    pub fn block(&self, irrep: Irrep) -> &[ExcitationOperator] {
        self.blocks.iter().find(|(g, _)| *g == irrep).map(|(_, v)| v.as_slice()).unwrap_or(&[])
    }

    pub fn counts(&self) -> Vec<usize> {
        self.blocks.iter().map(|(_, v)| v.len()).collect()
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|(_, v)| v.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// IP (ΔSz = +½): a_q and a†_a a_i a_j; DIP (ΔSz = 0): a_i a_j and
/// a†_a a_i a_j a_k over valence indices; EE (ΔSz = 0): a†_a a_i and
/// a†_a a†_b a_i a_j. With `cvs`, IP and EE keep exactly one core
/// annihilator; without it IP and EE are valence-only. DIP is always
/// valence-only.
pub fn enumerate_operators(channel: Channel, ctx: &ChannelContext, cvs: bool) -> Result<ChannelBasis> {
    if ctx.n_electrons == 0 || ctx.n_electrons > ctx.n_spin_orbitals {
        return Err(Error::invalid("reference must have between 1 and n_so electrons"));
    }
    let core = ctx.occupied(true);
    let val = ctx.occupied(false);
    let vir = ctx.virtuals();
    let mut ops: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let target = channel.sz2_change();
    // 2·Sz added minus 2·Sz removed
    let net = |cr: &[usize], an: &[usize]| cr.iter().map(|&q| sz(q)).sum::<i32>() - an.iter().map(|&q| sz(q)).sum::<i32>();
    let n_core = |an: &[usize]| an.iter().filter(|&&q| ctx.is_core(q)).count();
    let want_core = usize::from(cvs && channel != Channel::Dip);
    let mut annih_pool: Vec<usize> = if want_core == 1 { core.iter().chain(&val).copied().collect() } else { val.clone() };
    annih_pool.sort_unstable();
    match channel {
        Channel::Ip => {
            for &q in &annih_pool {
                ops.push((vec![], vec![q]));
            }
            for (i, j) in pairs(&annih_pool) {
                for &a in &vir {
                    ops.push((vec![a], vec![i, j]));
                }
            }
        }
        Channel::Dip => {
            for (i, j) in pairs(&val) {
                ops.push((vec![], vec![i, j]));
            }
            for t in triples(&val) {
                for &a in &vir {
                    ops.push((vec![a], t.to_vec()));
                }
            }
        }
        Channel::Ee => {
            for &i in &annih_pool {
                for &a in &vir {
                    ops.push((vec![a], vec![i]));
                }
            }
            for (i, j) in pairs(&annih_pool) {
                for (a, b) in pairs(&vir) {
                    ops.push((vec![a, b], vec![i, j]));
                }
            }
        }
    }
    ops.retain(|(cr, an)| net(cr, an) == target && n_core(an) == want_core);
    let hf = ctx.hf_determinant();
    let mut blocks: Vec<(Irrep, Vec<ExcitationOperator>)> = Irrep::ALL.iter().map(|&g| (g, Vec::new())).collect();
    for (cr, an) in ops {
        let idx: Vec<usize> = cr.iter().chain(&an).copied().collect();
        let irrep = operator_irrep(&idx, &ctx.orbital_irreps);
        let op = ExcitationOperator { channel, creations: cr, annihilations: an, irrep };
        if op.act(hf).is_none() {
            continue;
        }
        blocks.iter_mut().find(|(g, _)| *g == irrep).expect("irrep").1.push(op);
    }
    for (_, v) in blocks.iter_mut() {
        v.sort_by(|a, b| (a.rank(), &a.creations, &a.annihilations).cmp(&(b.rank(), &b.creations, &b.annihilations)));
    }
    Ok(ChannelBasis { channel, blocks })
}
