use auger_core::hamiltonian::Irrep;
use auger_core::molint::{mo_transform, parse_xyz, scf_for};

const H2O: &str = "3\nwater\nH -0.7586 0.0 0.5870\nO 0.0 0.0 0.0\nH 0.7586 0.0 0.5870\n";
const LIH: &str = "2\nlithium hydride\nLi 0.0 0.0 0.0\nH 0.0 0.0 1.6\n";

// Reference SCF run with the same geometry and bohr conversion.
const H2O_E_HF: f64 = -74.9632007282;
const LIH_E_HF: f64 = -7.8618647736;
const H2O_MO: [f64; 7] = [-20.24195317, -1.26737028, -0.61690758, -0.45271712, -0.39110056, 0.60366272, 0.74008080];

#[test]
fn water_hf_energy_and_orbitals() {
    let (_, scf) = scf_for(&parse_xyz(H2O).unwrap()).unwrap();
    assert!((scf.e_hf - H2O_E_HF).abs() < 1e-9, "{:.10}", scf.e_hf);
    for (a, b) in scf.orbital_energies.iter().zip(H2O_MO) {
        assert!((a - b).abs() < 1e-7, "{a} {b}");
    }
    assert!(scf.orthonormality_defect() < 1e-10);
}

#[test]
fn lih_hf_energy() {
    let (_, scf) = scf_for(&parse_xyz(LIH).unwrap()).unwrap();
    assert!((scf.e_hf - LIH_E_HF).abs() < 1e-9, "{:.10}", scf.e_hf);
}

#[test]
fn mo_hamiltonian_reproduces_hf() {
    let (_, scf) = scf_for(&parse_xyz(H2O).unwrap()).unwrap();
    let full = mo_transform(&scf, &[], &[]).unwrap();
    assert!((full.e_core - scf.e_nuc).abs() < 1e-15);
    assert!((full.hf_energy() - scf.e_hf).abs() < 1e-9);
    let fc = mo_transform(&scf, &[0], &[]).unwrap();
    assert_eq!((fc.n_spatial, fc.n_electrons), (6, 8));
    assert!((fc.hf_energy() - scf.e_hf).abs() < 1e-9);
    assert!(fc.symmetry_defect() < 1e-12);

    let (_, lih) = scf_for(&parse_xyz(LIH).unwrap()).unwrap();
    let fc = mo_transform(&lih, &[0], &[]).unwrap();
    assert_eq!((fc.n_spatial, fc.n_electrons), (5, 2));
    assert!(mo_transform(&lih, &[3], &[]).is_err());
    assert!(mo_transform(&lih, &[9], &[]).is_err());
}

#[test]
fn supplied_irreps_are_consistent() {
    let (_, scf) = scf_for(&parse_xyz(H2O).unwrap()).unwrap();
    let irreps: Vec<Irrep> = ["A1", "A1", "B2", "A1", "B1", "A1", "B2"].iter().map(|s| s.parse().unwrap()).collect();
    let h = mo_transform(&scf, &[], &irreps).unwrap();
    assert!(h.irrep_violation() < 1e-10, "{}", h.irrep_violation());

    let (_, lih) = scf_for(&parse_xyz(LIH).unwrap()).unwrap();
    let irreps: Vec<Irrep> = ["A1", "A1", "A1", "B1", "B2", "A1"].iter().map(|s| s.parse().unwrap()).collect();
    let h = mo_transform(&lih, &[], &irreps).unwrap();
    assert!(h.irrep_violation() < 1e-10, "{}", h.irrep_violation());
}

#[test]
fn rigid_translation_invariance() {
    let g = parse_xyz(H2O).unwrap();
    let (_, a) = scf_for(&g).unwrap();
    let (_, b) = scf_for(&g.translated([0.37, -1.2, 2.5])).unwrap();
    assert!((a.e_hf - b.e_hf).abs() < 1e-9, "{:e}", a.e_hf - b.e_hf);
}
