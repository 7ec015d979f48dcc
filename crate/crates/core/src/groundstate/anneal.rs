use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simulator::{inner, pauli_element, StateVector};

use super::evaluator::{check_tokens, Evaluator};
use super::pool::OperatorPool;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyRecord {
    pub tokens: Vec<usize>,
    pub energy: f64,
    pub step: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnnealOptions {
    pub depth: usize,
    /// Hard cap on Hamiltonian evaluations, construction included.
    pub max_evaluations: usize,
    pub calibration_moves: usize,
    pub target_acceptance: f64,
    /// Final temperature as a fraction of the calibrated initial one.
    pub final_temperature_ratio: f64,
    /// Zero disables the temperature (greedy descent).
    pub temperature_scale: f64,
    /// Candidates per greedy construction step, ranked by energy slope.
    pub greedy_candidates: usize,
    pub seed: u64,
}

impl Default for AnnealOptions {
    fn default() -> Self {
        AnnealOptions {
            depth: 60,
            max_evaluations: 100_000,
            calibration_moves: 100,
            target_acceptance: 0.5,
            final_temperature_ratio: 1e-4,
            temperature_scale: 1.0,
            greedy_candidates: 24,
            seed: 2024,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnnealResult {
    pub best: EnergyRecord,
    /// Every improvement of the best energy, in order.
    pub trace: Vec<EnergyRecord>,
    pub evaluations: usize,
    pub accepted_moves: usize,
}

/// Sequence plus cached states: `states[i]` is the state before token i.
struct Chain<'a> {
    ev: &'a Evaluator,
    pool: &'a OperatorPool,
    tokens: Vec<usize>,
    states: Vec<StateVector>,
    energy: f64,
}

impl<'a> Chain<'a> {
    fn new(ev: &'a Evaluator, pool: &'a OperatorPool, tokens: Vec<usize>) -> Self {
        let mut c = Chain { ev, pool, states: Vec::with_capacity(tokens.len() + 1), tokens, energy: 0.0 };
        c.states.push(ev.reference.clone());
        c.energy = c.rebuild(0);
        c
    }

    fn rebuild(&mut self, from: usize) -> f64 {
        self.states.truncate(from + 1);
        let mut psi = self.states[from].clone();
        for &t in &self.tokens[from..] {
            let (p, time) = self.pool.entry(t);
            psi.apply_pauli_exponential(&p, time);
            self.states.push(psi.clone());
        }
        self.ev.energy(&psi)
    }

    fn trial(&self, tokens: &[usize], from: usize) -> f64 {
        let mut psi = self.states[from].clone();
        for &t in &tokens[from..] {
            let (p, time) = self.pool.entry(t);
            psi.apply_pauli_exponential(&p, time);
        }
        self.ev.energy(&psi)
    }

    fn accept(&mut self, tokens: Vec<usize>, from: usize, energy: f64) {
        self.tokens = tokens;
        self.rebuild(from);
        self.energy = energy;
    }
}

/// Appends tokens one at a time. Each step ranks every pool string by
/// |dE/dt| at t = 0, then picks the best (string, time) among the top
/// candidates using the exact single-rotation energy
/// E(t) = cos²t E + sin²t ⟨Pψ|H|Pψ⟩ − 2 sin t cos t Im⟨Hψ|Pψ⟩.
pub fn greedy_tokens(
    ev: &Evaluator,
    pool: &OperatorPool,
    depth: usize,
    candidates: usize,
) -> (Vec<usize>, f64, usize) {
    let mut psi = ev.reference.clone();
    let mut tokens = Vec::with_capacity(depth);
    let mut evals = 0;
    let mut hpsi = ev.hamiltonian.apply(&psi.amps);
    let mut e = inner(&psi.amps, &hpsi).re;
    evals += 1;
    for _ in 0..depth {
        let mut slopes: Vec<(f64, usize)> = pool
            .strings
            .iter()
            .enumerate()
            .map(|(i, p)| (pauli_element(&hpsi, p, &psi.amps).im.abs(), i))
            .collect();
        slopes.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut best = (f64::INFINITY, 0usize);
        for &(_, si) in slopes.iter().take(candidates.max(1)) {
            let p = pool.strings[si];
            let mut ppsi = psi.clone();
            ppsi.apply_pauli_string(&p);
            let ep = ev.hamiltonian.matrix_element(&ppsi.amps, &ppsi.amps).re;
            evals += 1;
            let m = pauli_element(&hpsi, &p, &psi.amps).im;
            for (ti, &t) in pool.times.iter().enumerate() {
                let (s, c) = t.sin_cos();
                let et = c * c * e + s * s * ep - 2.0 * s * c * m;
                if et < best.0 - 1e-15 {
                    best = (et, pool.token(si, ti));
                }
            }
        }
        let (p, t) = pool.entry(best.1);
        psi.apply_pauli_exponential(&p, t);
        tokens.push(best.1);
        hpsi = ev.hamiltonian.apply(&psi.amps);
        e = inner(&psi.amps, &hpsi).re;
        evals += 1;
    }
    (tokens, e, evals)
}

enum Move {
    Replace(usize, usize),
    Swap(usize, usize),
    Relocate(usize, usize, usize),
}

fn propose(rng: &mut ChaCha8Rng, pool: &OperatorPool, tokens: &[usize]) -> (Vec<usize>, usize) {
    let d = tokens.len();
    let nt = pool.times.len();
    let mv = match rng.gen_range(0..10) {
        0..=3 => {
            // new time on the same string
            let i = rng.gen_range(0..d);
            let s = pool.string_of(tokens[i]);
            Move::Replace(i, pool.token(s, rng.gen_range(0..nt)))
        }
        4..=5 => Move::Replace(rng.gen_range(0..d), rng.gen_range(0..pool.len())),
        6..=7 if d > 1 => Move::Swap(rng.gen_range(0..d), rng.gen_range(0..d)),
        _ => Move::Relocate(rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..pool.len())),
    };
    let mut out = tokens.to_vec();
    let from = match mv {
        Move::Replace(i, t) => {
            out[i] = t;
            i
        }
        Move::Swap(i, j) => {
            out.swap(i, j);
            i.min(j)
        }
        Move::Relocate(i, j, t) => {
            // drop position i, insert a fresh token at j
            out.remove(i);
            out.insert(j.min(out.len()), t);
            i.min(j)
        }
    };
    (out, from)
}

/// Simulated annealing over fixed-depth token sequences, started from the
/// greedy construction. Geometric cooling from a temperature calibrated so
/// that uphill moves in the first `calibration_moves` steps are accepted
/// with the target probability.
pub fn anneal_tokens(ev: &Evaluator, pool: &OperatorPool, opts: &AnnealOptions) -> Result<AnnealResult> {
    if opts.depth == 0 {
        return Err(Error::invalid("annealing depth must be at least 1"));
    }
    let (tokens, _, evals) = greedy_tokens(ev, pool, opts.depth, opts.greedy_candidates);
    anneal_from(ev, pool, tokens, evals, opts)
}

/// Annealing from a given starting sequence; `spent` evaluations are
/// already charged to the budget.
pub fn anneal_from(
    ev: &Evaluator,
    pool: &OperatorPool,
    start: Vec<usize>,
    spent: usize,
    opts: &AnnealOptions,
) -> Result<AnnealResult> {
    check_tokens(pool, &start)?;
    if start.is_empty() {
        return Err(Error::invalid("annealing needs a non-empty start sequence"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut chain = Chain::new(ev, pool, start);
    let mut evals = spent + 1;
    let mut best = EnergyRecord { tokens: chain.tokens.clone(), energy: chain.energy, step: evals };
    let mut trace = vec![best.clone()];
    let mut accepted = 0;

    let mut uphill = Vec::new();
    for _ in 0..opts.calibration_moves {
        if evals >= opts.max_evaluations {
            break;
        }
        let (cand, from) = propose(&mut rng, pool, &chain.tokens);
        let e = chain.trial(&cand, from);
        evals += 1;
        if e > chain.energy {
            uphill.push(e - chain.energy);
        }
    }
    let mean_up = if uphill.is_empty() { 1e-6 } else { uphill.iter().sum::<f64>() / uphill.len() as f64 };
    let t0 = opts.temperature_scale * mean_up / -opts.target_acceptance.ln();
    let remaining = opts.max_evaluations.saturating_sub(evals).max(1);
    let cool = opts.final_temperature_ratio.powf(1.0 / remaining as f64);
    let mut temp = t0;

    while evals < opts.max_evaluations {
        let (cand, from) = propose(&mut rng, pool, &chain.tokens);
        let e = chain.trial(&cand, from);
        evals += 1;
        let de = e - chain.energy;
        let take = de < 0.0 || (temp > 0.0 && rng.gen::<f64>() < (-de / temp).exp());
        if take {
            accepted += 1;
            chain.accept(cand, from, e);
            if e < best.energy {
                best = EnergyRecord { tokens: chain.tokens.clone(), energy: e, step: evals };
                trace.push(best.clone());
            }
        }
        temp *= cool;
    }
    Ok(AnnealResult { best, trace, evaluations: evals, accepted_moves: accepted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groundstate::pool::build_uccsd_pool;
    use crate::hamiltonian::{hamiltonian_to_pauli, SpinOrbitalHamiltonian};

    fn setup() -> (Evaluator, OperatorPool) {
        let mut h = SpinOrbitalHamiltonian::zeros(2, 2, 0.3);
        h.set_h(0, 0, -1.2);
        h.set_h(1, 1, -0.4);
        h.set_h(0, 1, 0.05);
        h.set_g(0, 0, 0, 0, 0.6);
        h.set_g(1, 1, 1, 1, 0.55);
        h.set_g(0, 0, 1, 1, 0.5);
        h.set_g(0, 1, 0, 1, 0.15);
        let ev = Evaluator::new(&hamiltonian_to_pauli(&h, 4).unwrap(), &h.hf_occupation()).unwrap();
        (ev, build_uccsd_pool(4, 2).unwrap().0)
    }

    fn opts(depth: usize, budget: usize) -> AnnealOptions {
        AnnealOptions { depth, max_evaluations: budget, greedy_candidates: 4, ..AnnealOptions::default() }
    }

    #[test]
    fn seeded_runs_repeat() {
        let (ev, pool) = setup();
        let a = anneal_tokens(&ev, &pool, &opts(4, 600)).unwrap();
        let b = anneal_tokens(&ev, &pool, &opts(4, 600)).unwrap();
        assert_eq!(a.trace, b.trace);
        assert!(a.evaluations <= 600);
    }

    #[test]
    fn trace_is_monotone_and_ends_at_best() {
        let (ev, pool) = setup();
        let r = anneal_tokens(&ev, &pool, &opts(5, 800)).unwrap();
        assert!(r.trace.windows(2).all(|w| w[1].energy < w[0].energy));
        assert_eq!(r.trace.last().unwrap(), &r.best);
        let e = ev.evaluate_tokens(&pool, &r.best.tokens).unwrap();
        assert!((e - r.best.energy).abs() < 1e-12);
        assert!(r.best.energy <= ev.reference_energy());
    }

    #[test]
    fn zero_temperature_keeps_local_minimum() {
        let (ev, pool) = setup();
        // the best single token is a minimum for every depth-1 move
        let best = (0..pool.len())
            .map(|t| (ev.evaluate_tokens(&pool, &[t]).unwrap(), t))
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .unwrap();
        let o = AnnealOptions { temperature_scale: 0.0, ..opts(1, 300) };
        let r = anneal_from(&ev, &pool, vec![best.1], 0, &o).unwrap();
        assert_eq!(r.best.tokens, vec![best.1]);
        assert_eq!(r.trace.len(), 1);
    }

    #[test]
    fn zero_depth_rejected() {
        let (ev, pool) = setup();
        assert!(anneal_tokens(&ev, &pool, &opts(0, 10)).is_err());
    }
}
