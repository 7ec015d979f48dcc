//! Operator pool, token circuits, UCCSD-VQE and annealing baselines, gate
//! accounting and the proposer wire service.

pub mod anneal;
pub mod buffer;
pub mod evaluator;
pub mod gates;
pub mod pool;
pub mod service;
pub mod vqe;

pub use anneal::{anneal_from, anneal_tokens, greedy_tokens, AnnealOptions, AnnealResult, EnergyRecord};
pub use buffer::TrainingBuffer;
pub use evaluator::{evaluate_tokens, tokens_to_circuit, Evaluator};
pub use gates::{gate_count_report, rotation_cost, GateCounts};
pub use pool::{build_uccsd_pool, time_set, uccsd_excitations, Excitation, OperatorPool};
pub use service::ProposerService;
pub use vqe::{energy_and_gradient, gradient_parameter_shift, vqe_uccsd, UccsdAnsatz, VqeOptions, VqeResult};
