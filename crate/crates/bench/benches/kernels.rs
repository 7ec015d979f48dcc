use std::hint::black_box;

use auger_bench::{sparse_operators, water, water_geometry};
use auger_core::groundstate::{build_uccsd_pool, vqe::ansatz_energy, Evaluator, UccsdAnsatz};
use auger_core::molint::scf_for;
use auger_core::qsceom::{enumerate_operators, solve_channel, Channel, ChannelContext, EomSetup, Mode};
use auger_core::simulator::{embed_unitary, Circuit};
use auger_core::{PauliString, StateVector};
use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

fn simulator(c: &mut Criterion) {
    let mut g = c.benchmark_group("simulator");
    let p = PauliString::new(0b1011_0110_1101, 0b0110_1100_1011);
    g.bench_function("pauli_exponential_14q", |b| {
        b.iter_batched_ref(|| StateVector::basis(14, 0b1111_1111), |psi| psi.apply_pauli_exponential(&p, 0.3), BatchSize::SmallInput)
    });
    let w = water();
    let (h, _) = sparse_operators(&w.all_electron);
    let psi = StateVector::basis(14, 0b11_1111_1111);
    g.bench_function("sparse_hamiltonian_apply_14q", |b| b.iter(|| h.apply(black_box(&psi.amps))));
    g.finish();
}

fn molint(c: &mut Criterion) {
    let geom = water_geometry();
    c.bench_function("water_sto3g_rhf", |b| b.iter(|| scf_for(black_box(&geom)).unwrap()));
}

fn groundstate(c: &mut Criterion) {
    let w = water();
    let ev = Evaluator::new(&w.frozen_core.to_pauli(12).unwrap(), &w.frozen_core.hf_occupation()).unwrap();
    let (_, exc) = build_uccsd_pool(12, 8).unwrap();
    let ansatz = UccsdAnsatz::new(12, exc);
    let theta = vec![0.01; ansatz.n_params()];
    c.bench_function("water_uccsd_energy", |b| b.iter(|| ansatz_energy(&ev, &ansatz, black_box(&theta))));
}

fn qsceom(c: &mut Criterion) {
    let w = water();
    let ctx = ChannelContext::from_hamiltonian(&w.all_electron, &[0]).unwrap();
    let mut g = c.benchmark_group("qsceom");
    g.bench_function("enumerate_ip_dip", |b| {
        b.iter(|| (enumerate_operators(Channel::Ip, &ctx, true).unwrap(), enumerate_operators(Channel::Dip, &ctx, true).unwrap()))
    });
    let (h, s2) = sparse_operators(&w.all_electron);
    // identity circuit on the frozen-core register: HF reference
    let u = embed_unitary(&Circuit::new(12), 2);
    let setup = EomSetup { ctx, hamiltonian: &h, s2: &s2, circuit: &u, mode: Mode::Cached };
    g.sample_size(10);
    g.bench_function("ip_subspace_cached", |b| b.iter(|| solve_channel(&setup, Channel::Ip, true, false).unwrap()));
    g.finish();
}

criterion_group!(benches, simulator, molint, groundstate, qsceom);
criterion_main!(benches);
