use auger_core::fci::{ground_energy, sector_diagonalize, SectorSpec};
use auger_core::hamiltonian::SpinOrbitalHamiltonian;
use auger_core::molint::{mo_transform, parse_xyz, scf_for};
use rand::{Rng, SeedableRng};

const H2O: &str = "3\nwater\nH -0.7586 0.0 0.5870\nO 0.0 0.0 0.0\nH 0.7586 0.0 0.5870\n";
const LIH: &str = "2\nlithium hydride\nLi 0.0 0.0 0.0\nH 0.0 0.0 1.6\n";

// Independent reference FCI with the same geometry and bohr conversion.
const H2O_FCI_FROZEN: f64 = -75.0128491105;
const H2O_FCI_FULL: f64 = -75.0129270255;
const LIH_FCI_FROZEN: f64 = -7.8820966018;
const LIH_FCI_FULL: f64 = -7.8823243808;

fn ham(xyz: &str, frozen: &[usize]) -> SpinOrbitalHamiltonian {
    let (_, scf) = scf_for(&parse_xyz(xyz).unwrap()).unwrap();
    mo_transform(&scf, frozen, &[]).unwrap()
}

#[test]
fn water_fci() {
    assert!((ground_energy(&ham(H2O, &[0])).unwrap() - H2O_FCI_FROZEN).abs() < 1e-8);
    assert!((ground_energy(&ham(H2O, &[])).unwrap() - H2O_FCI_FULL).abs() < 1e-8);
}

#[test]
fn lih_fci() {
    assert!((ground_energy(&ham(LIH, &[0])).unwrap() - LIH_FCI_FROZEN).abs() < 1e-8);
    assert!((ground_energy(&ham(LIH, &[])).unwrap() - LIH_FCI_FULL).abs() < 1e-8);
}

#[test]
fn orbital_phase_flips_leave_spectrum_unchanged() {
    let h = ham(H2O, &[0]);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let signs: Vec<f64> = (0..h.n_spatial).map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 }).collect();
    let mut f = h.clone();
    let n = h.n_spatial;
    for p in 0..n {
        for q in 0..n {
            f.set_h(p, q, signs[p] * signs[q] * h.h(p, q));
            for r in 0..n {
                for s in 0..n {
                    f.g[((p * n + q) * n + r) * n + s] = signs[p] * signs[q] * signs[r] * signs[s] * h.g(p, q, r, s);
                }
            }
        }
    }
    for spec in [SectorSpec::new(8, 0), SectorSpec::new(7, 1), SectorSpec::new(6, 0)] {
        let a = sector_diagonalize(&h, &spec).unwrap();
        let b = sector_diagonalize(&f, &spec).unwrap();
        for (x, y) in a.energies.iter().zip(&b.energies) {
            assert!((x - y).abs() < 1e-10);
        }
    }
}
