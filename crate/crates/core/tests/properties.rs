use auger_core::groundstate::vqe::ansatz_energy;
use auger_core::groundstate::{build_uccsd_pool, gradient_parameter_shift, EnergyRecord, Evaluator, TrainingBuffer, UccsdAnsatz};
use auger_core::hamiltonian::{apply_monomial, jordan_wigner, Ladder};
use auger_core::molint::{mo_transform, parse_xyz, scf_for};
use auger_core::simulator::{Circuit, StateVector};
use auger_core::{PauliString, PauliSum};
use nalgebra::DMatrix;
use num_complex::Complex64 as C;
use proptest::prelude::*;

fn close(a: &DMatrix<C>, b: &DMatrix<C>, tol: f64) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| (x - y).norm() < tol)
}

fn pauli(n: usize) -> impl Strategy<Value = PauliString> {
    let mask = (1u64 << n) - 1;
    (any::<u64>(), any::<u64>()).prop_map(move |(x, z)| PauliString::new(x & mask, z & mask))
}

fn state(n: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n).prop_filter_map("zero vector", move |v| {
        let amps: Vec<C> = v.into_iter().map(|(a, b)| C::new(a, b)).collect();
        let mut s = StateVector::from_amplitudes(n, amps).ok()?;
        (s.norm() > 1e-3).then(|| {
            s.normalize();
            s
        })
    })
}

fn anticommutator(a: &[Ladder], b: &[Ladder], n: usize) -> DMatrix<C> {
    let ab: Vec<Ladder> = a.iter().chain(b).copied().collect();
    let ba: Vec<Ladder> = b.iter().chain(a).copied().collect();
    jordan_wigner(&ab, n).to_dense() + jordan_wigner(&ba, n).to_dense()
}

#[test]
fn jw_canonical_anticommutation_four_qubits() {
    let n = 4;
    let id = DMatrix::<C>::identity(1 << n, 1 << n);
    let zero = DMatrix::<C>::zeros(1 << n, 1 << n);
    for p in 0..n {
        for q in 0..n {
            let a = anticommutator(&[(p, false)], &[(q, true)], n);
            assert!(close(&a, if p == q { &id } else { &zero }, 1e-14), "{{a_{p}, a†_{q}}}");
            assert!(close(&anticommutator(&[(p, false)], &[(q, false)], n), &zero, 1e-14));
            assert!(close(&anticommutator(&[(p, true)], &[(q, true)], n), &zero, 1e-14));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pauli_product_matches_dense((n, a, b) in (1usize..=8).prop_flat_map(|n| (Just(n), pauli(n), pauli(n)))) {
        let (ph, r) = a.mul(&b);
        let lhs = a.to_dense(n) * b.to_dense(n);
        prop_assert!(close(&lhs, &(r.to_dense(n) * ph), 1e-14));
        let ab = &lhs - b.to_dense(n) * a.to_dense(n);
        prop_assert_eq!(a.commutes_with(&b), ab.iter().all(|x| x.norm() < 1e-14));
    }

    #[test]
    fn pauli_pair_algebra(a in pauli(6), b in pauli(6)) {
        let n = 6;
        let (ph, r) = a.mul(&b);
        prop_assert!(close(&(a.to_dense(n) * b.to_dense(n)), &(r.to_dense(n) * ph), 1e-14));
        let sq = a.mul(&a);
        prop_assert!(sq.1.is_identity() && (sq.0 - C::new(1.0, 0.0)).norm() < 1e-15);
        let dense = a.to_dense(n);
        prop_assert!(close(&dense.adjoint(), &dense, 1e-15));
    }

    #[test]
    fn pauli_sum_product_and_commutator(
        ta in prop::collection::vec((pauli(5), -1.0f64..1.0, -1.0f64..1.0), 1..6),
        tb in prop::collection::vec((pauli(5), -1.0f64..1.0, -1.0f64..1.0), 1..6),
    ) {
        let n = 5;
        let mut a = PauliSum::zero(n);
        let mut b = PauliSum::zero(n);
        for (p, re, im) in ta { a.add_term(p, C::new(re, im)); }
        for (p, re, im) in tb { b.add_term(p, C::new(re, im)); }
        let (da, db) = (a.to_dense(), b.to_dense());
        prop_assert!(close(&(&a * &b).to_dense(), &(&da * &db), 1e-12));
        prop_assert!(close(&(&a + &b).to_dense(), &(&da + &db), 1e-12));
        prop_assert!(close(&a.commutator(&b).to_dense(), &(&da * &db - &db * &da), 1e-12));
        prop_assert!(close(&a.adjoint().to_dense(), &da.adjoint(), 1e-14));
    }

    #[test]
    fn pauli_action_matches_dense(p in pauli(5), psi in state(5)) {
        let mut s = psi.clone();
        s.apply_pauli_string(&p);
        let v = p.to_dense(5) * nalgebra::DVector::from_vec(psi.amps.clone());
        prop_assert!(s.amps.iter().zip(v.iter()).all(|(x, y)| (x - y).norm() < 1e-14));
    }

    #[test]
    fn exponential_matches_dense(p in pauli(5), t in -3.0f64..3.0, psi in state(5)) {
        let mut s = psi.clone();
        s.apply_pauli_exponential(&p, t);
        let id = DMatrix::<C>::identity(32, 32);
        let u = id * C::new(t.cos(), 0.0) + p.to_dense(5) * C::new(0.0, t.sin());
        let v = u * nalgebra::DVector::from_vec(psi.amps.clone());
        prop_assert!(s.amps.iter().zip(v.iter()).all(|(x, y)| (x - y).norm() < 1e-13));
    }

    #[test]
    fn circuits_preserve_norm_and_invert(
        gates in prop::collection::vec((pauli(7), -4.0f64..4.0), 0..40),
        psi in state(7),
    ) {
        let mut c = Circuit::new(7);
        for (p, t) in gates { c.push(p, t); }
        let mut s = psi.clone();
        c.apply(&mut s);
        prop_assert!((s.norm() - 1.0).abs() < 1e-10);
        c.inverse().apply(&mut s);
        prop_assert!(s.amps.iter().zip(&psi.amps).all(|(x, y)| (x - y).norm() < 1e-10));
    }

    #[test]
    fn determinant_action_matches_jw(
        det in 0u64..16,
        ops in prop::collection::vec((0usize..4, any::<bool>()), 1..4),
    ) {
        let n = 4;
        let m = jordan_wigner(&ops, n).to_dense();
        let col = m.column(det as usize);
        match apply_monomial(det, &ops) {
            Some((d2, s)) => {
                for (k, x) in col.iter().enumerate() {
                    let want = if k == d2 as usize { s } else { 0.0 };
                    prop_assert!((x - C::new(want, 0.0)).norm() < 1e-14);
                }
            }
            None => prop_assert!(col.iter().all(|x| x.norm() < 1e-14)),
        }
    }

    #[test]
    fn buffer_stays_sorted_and_distinct(
        recs in prop::collection::vec((prop::collection::vec(0usize..5, 0..4), -2.0f64..2.0), 0..80),
        cap in 1usize..12,
    ) {
        let mut buf = TrainingBuffer::new(cap);
        for (step, (tokens, energy)) in recs.iter().cloned().enumerate() {
            buf.insert(EnergyRecord { tokens, energy, step });
        }
        let r = buf.records();
        prop_assert!(r.len() <= cap);
        prop_assert!(r.windows(2).all(|w| w[0].energy <= w[1].energy));
        for (i, a) in r.iter().enumerate() {
            prop_assert!(r[i + 1..].iter().all(|b| b.tokens != a.tokens));
        }
        // with distinct sequences the minimum always survives
        let distinct = recs.iter().enumerate().all(|(i, a)| recs[i + 1..].iter().all(|b| b.0 != a.0));
        if let (true, Some(min)) = (distinct, recs.iter().map(|x| x.1).min_by(f64::total_cmp)) {
            prop_assert_eq!(buf.best().unwrap().energy, min);
        }
    }
}

#[test]
fn buffer_ignores_non_finite() {
    let mut buf = TrainingBuffer::new(3);
    assert!(!buf.insert(EnergyRecord { tokens: vec![1], energy: f64::NAN, step: 0 }));
    assert!(buf.is_empty());
}

#[test]
fn parameter_shift_matches_finite_differences() {
    let (_, scf) = scf_for(&parse_xyz("Li 0 0 0\nH 0 0 1.6").unwrap()).unwrap();
    let h = mo_transform(&scf, &[0], &[]).unwrap();
    let ev = Evaluator::new(&h.to_pauli(10).unwrap(), &h.hf_occupation()).unwrap();
    let (_, exc) = build_uccsd_pool(10, 2).unwrap();
    let ansatz = UccsdAnsatz::new(10, exc);
    let theta: Vec<f64> = (0..ansatz.n_params()).map(|i| 0.05 * ((i as f64 * 1.7).sin())).collect();
    let g = gradient_parameter_shift(&ev, &ansatz, &theta);
    let step = 1e-5;
    for i in 0..theta.len() {
        let mut p = theta.clone();
        let mut m = theta.clone();
        p[i] += step;
        m[i] -= step;
        let fd = (ansatz_energy(&ev, &ansatz, &p) - ansatz_energy(&ev, &ansatz, &m)) / (2.0 * step);
        assert!((fd - g[i]).abs() < 1e-6, "parameter {i}: shift {} fd {fd}", g[i]);
    }
}
