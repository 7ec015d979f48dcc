use serde::{Deserialize, Serialize};

use crate::hamiltonian::Irrep;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockWorkload {
    pub irrep: Irrep,
    pub n: usize,
    pub n_eval_m: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RdmWorkload {
    pub irrep: Irrep,
    pub n_csr: usize,
    pub n_eval_r: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkloadReport {
    pub ip: Vec<BlockWorkload>,
    pub dip: Vec<BlockWorkload>,
    /// Size of the IP block holding the initial state.
    pub n_ip_selected: usize,
    pub rdm: Vec<RdmWorkload>,
    pub total_m_ip: usize,
    pub total_m_dip: usize,
    pub total_m: usize,
    pub total_r: usize,
    pub total: usize,
}

/// n diagonal expectations plus two phases per unordered pair.
pub fn m_evaluations(n: usize) -> usize {
    n + 2 * (n * n.saturating_sub(1) / 2)
}

/// Two Hermitian parts, each needing the diagonals of both blocks and two
/// phases per cross pair.
pub fn r_evaluations(n_csr: usize, n_ip: usize, n_dip: usize) -> usize {
    n_csr * 2 * (n_ip + n_dip + 2 * n_ip * n_dip)
}

pub fn workload_counts(
    ip_counts: &[(Irrep, usize)],
    dip_counts: &[(Irrep, usize)],
    n_csr: &[(Irrep, usize)],
    n_ip_selected: usize,
) -> WorkloadReport {
    let block = |&(irrep, n): &(Irrep, usize)| BlockWorkload { irrep, n, n_eval_m: m_evaluations(n) };
    let ip: Vec<BlockWorkload> = ip_counts.iter().map(block).collect();
    let dip: Vec<BlockWorkload> = dip_counts.iter().map(block).collect();
    let rdm: Vec<RdmWorkload> = n_csr
        .iter()
        .map(|&(irrep, k)| {
            let n_dip = dip_counts.iter().find(|(g, _)| *g == irrep).map_or(0, |x| x.1);
            RdmWorkload { irrep, n_csr: k, n_eval_r: r_evaluations(k, n_ip_selected, n_dip) }
        })
        .collect();
    let total_m_ip = ip.iter().map(|b| b.n_eval_m).sum();
    let total_m_dip = dip.iter().map(|b| b.n_eval_m).sum();
    let total_r = rdm.iter().map(|r| r.n_eval_r).sum();
    WorkloadReport {
        ip,
        dip,
        n_ip_selected,
        rdm,
        total_m_ip,
        total_m_dip,
        total_m: total_m_ip + total_m_dip,
        total_r,
        total: total_m_ip + total_m_dip + total_r,
    }
}
