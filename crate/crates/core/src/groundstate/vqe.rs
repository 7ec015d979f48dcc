use std::f64::consts::FRAC_PI_4;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hamiltonian::PauliString;
use crate::simulator::{pauli_element, Circuit};

use super::evaluator::Evaluator;
use super::pool::{generator_strings, Excitation};

/// First-order Trotterized UCCSD: exp(θ_k G_k) = Π_j e^{iθ_k r_kj P_kj},
/// excitations in canonical order.
#[derive(Debug, Clone)]
pub struct UccsdAnsatz {
    pub n_qubits: usize,
    pub excitations: Vec<Excitation>,
    pub terms: Vec<Vec<(PauliString, f64)>>,
}

impl UccsdAnsatz {
    pub fn new(n_qubits: usize, excitations: Vec<Excitation>) -> Self {
        let terms = excitations.iter().map(|e| generator_strings(e, n_qubits)).collect();
        UccsdAnsatz { n_qubits, excitations, terms }
    }

    pub fn n_params(&self) -> usize {
        self.terms.len()
    }

    pub fn circuit(&self, theta: &[f64]) -> Circuit {
        let mut c = Circuit::new(self.n_qubits);
        for (strings, &t) in self.terms.iter().zip(theta) {
            for &(p, r) in strings {
                c.push(p, t * r);
            }
        }
        c
    }

    fn gate_owner(&self) -> Vec<(usize, f64)> {
        self.terms.iter().enumerate().flat_map(|(k, s)| s.iter().map(move |&(_, r)| (k, r))).collect()
    }
}

pub fn ansatz_energy(ev: &Evaluator, ansatz: &UccsdAnsatz, theta: &[f64]) -> f64 {
    ev.circuit_energy(&ansatz.circuit(theta))
}

/// Shift rule per rotation, E(φ+π/4) − E(φ−π/4), chained through φ = θ·r.
pub fn gradient_parameter_shift(ev: &Evaluator, ansatz: &UccsdAnsatz, theta: &[f64]) -> Vec<f64> {
    let base = ansatz.circuit(theta);
    let mut grad = vec![0.0; ansatz.n_params()];
    for (g, (k, r)) in ansatz.gate_owner().into_iter().enumerate() {
        let mut plus = base.clone();
        plus.gates[g].angle += FRAC_PI_4;
        let mut minus = base.clone();
        minus.gates[g].angle -= FRAC_PI_4;
        grad[k] += r * (ev.circuit_energy(&plus) - ev.circuit_energy(&minus));
    }
    grad
}

/// Same quantity as [`gradient_parameter_shift`], evaluated in one reverse
/// sweep: dE/dφ_g = −2 Im⟨λ_g|P_g|ψ_g⟩ with λ = U_{>g}† H ψ.
pub fn energy_and_gradient(ev: &Evaluator, ansatz: &UccsdAnsatz, theta: &[f64]) -> (f64, Vec<f64>) {
    let circuit = ansatz.circuit(theta);
    let mut psi = ev.circuit_state(&circuit);
    let mut lam = psi.clone();
    lam.amps = ev.hamiltonian.apply(&psi.amps);
    let energy = crate::simulator::inner(&psi.amps, &lam.amps).re;
    let owner = ansatz.gate_owner();
    let mut grad = vec![0.0; ansatz.n_params()];
    for (g, gate) in circuit.gates.iter().enumerate().rev() {
        let d = -2.0 * pauli_element(&lam.amps, &gate.pauli, &psi.amps).im;
        let (k, r) = owner[g];
        grad[k] += r * d;
        psi.apply_pauli_exponential(&gate.pauli, -gate.angle);
        lam.apply_pauli_exponential(&gate.pauli, -gate.angle);
    }
    (energy, grad)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VqeOptions {
    pub gtol: f64,
    pub max_iterations: usize,
    pub max_restarts: usize,
    pub restart_scale: f64,
    pub seed: u64,
}

impl Default for VqeOptions {
    fn default() -> Self {
        VqeOptions { gtol: 1e-8, max_iterations: 2000, max_restarts: 8, restart_scale: 1e-4, seed: 7 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VqeResult {
    pub params: Vec<f64>,
    pub energy: f64,
    pub circuit: Circuit,
    pub iterations: usize,
    pub restarts: usize,
    pub gradient_norm: f64,
    pub converged: bool,
    pub energy_evaluations: usize,
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// BFGS with backtracking line search on the analytic shift-rule gradient,
/// restarting from a perturbed best point when the search stalls.
pub fn vqe_uccsd(ev: &Evaluator, ansatz: &UccsdAnsatz, opts: &VqeOptions) -> Result<VqeResult> {
    let n = ansatz.n_params();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut x = vec![0.0; n];
    let (mut f, mut g) = energy_and_gradient(ev, ansatz, &x);
    let mut evals = 1;
    let mut hinv = identity(n);
    let mut restarts = 0;
    let mut stalled = 0;
    let mut iterations = 0;
    // rounding floor for energy comparisons
    let eps_f = 1e-13 * f.abs().max(1.0);
    while iterations < opts.max_iterations && inf_norm(&g) >= opts.gtol {
        iterations += 1;
        let mut d: Vec<f64> = (0..n).map(|i| -dot(&hinv[i], &g)).collect();
        let mut gd = dot(&g, &d);
        if gd >= 0.0 {
            hinv = identity(n);
            d = g.iter().map(|v| -v).collect();
            gd = dot(&g, &d);
        }
        let mut alpha = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let xn: Vec<f64> = x.iter().zip(&d).map(|(a, b)| a + alpha * b).collect();
            let (fn_, gn) = energy_and_gradient(ev, ansatz, &xn);
            evals += 1;
            let armijo = fn_ <= f + 1e-4 * alpha * gd + eps_f;
            if armijo && (fn_ < f || inf_norm(&gn) < inf_norm(&g)) {
                accepted = Some((xn, fn_, gn));
                break;
            }
            alpha *= 0.5;
        }
        match accepted {
            Some((xn, fn_, gn)) => {
                let s: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
                let y: Vec<f64> = gn.iter().zip(&g).map(|(a, b)| a - b).collect();
                let sy = dot(&s, &y);
                if sy > 1e-18 {
                    bfgs_update(&mut hinv, &s, &y, sy);
                }
                x = xn;
                f = fn_;
                g = gn;
                stalled = 0;
            }
            None => {
                stalled += 1;
                hinv = identity(n);
                if stalled > 1 {
                    if restarts >= opts.max_restarts {
                        break;
                    }
                    restarts += 1;
                    log::warn!("VQE line search stalled at |g|={:.3e}; perturbed restart {restarts}", inf_norm(&g));
                    let trial: Vec<f64> =
                        x.iter().map(|v| v + opts.restart_scale * (rng.gen::<f64>() - 0.5)).collect();
                    let (ft, gt) = energy_and_gradient(ev, ansatz, &trial);
                    evals += 1;
                    if ft < f + opts.restart_scale {
                        x = trial;
                        f = ft;
                        g = gt;
                    }
                    stalled = 0;
                }
            }
        }
    }
    let gradient_norm = inf_norm(&g);
    let converged = gradient_norm < opts.gtol;
    if !converged {
        log::warn!("VQE stopped without reaching gtol: |g|={gradient_norm:.3e}, best E={f:.10}");
    }
    Ok(VqeResult {
        circuit: ansatz.circuit(&x),
        params: x,
        energy: f,
        iterations,
        restarts,
        gradient_norm,
        converged,
        energy_evaluations: evals,
    })
}

fn identity(n: usize) -> Vec<Vec<f64>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect()
}

fn bfgs_update(h: &mut [Vec<f64>], s: &[f64], y: &[f64], sy: f64) {
    let n = s.len();
    let rho = 1.0 / sy;
    let hy: Vec<f64> = (0..n).map(|i| dot(&h[i], y)).collect();
    let yhy = dot(y, &hy);
    for i in 0..n {
        for j in 0..n {
            h[i][j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) + (rho * rho * yhy + rho) * s[i] * s[j];
        }
    }
}
