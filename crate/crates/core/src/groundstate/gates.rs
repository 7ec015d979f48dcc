use serde::{Deserialize, Serialize};

use crate::hamiltonian::PauliString;
use crate::simulator::Circuit;

/// Staircase decomposition tallies.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub total: usize,
    pub cnot: usize,
    pub rz: usize,
    pub basis_changes: usize,
}

impl std::ops::Add for GateCounts {
    type Output = GateCounts;
    fn add(self, o: GateCounts) -> GateCounts {
        GateCounts {
            total: self.total + o.total,
            cnot: self.cnot + o.cnot,
            rz: self.rz + o.rz,
            basis_changes: self.basis_changes + o.basis_changes,
        }
    }
}

/// e^{iPt} for weight w: 2(w−1) CNOTs, one Rz, H on each side of every X,
/// two gates on each side of every Y. The identity costs nothing.
pub fn rotation_cost(p: &PauliString) -> GateCounts {
    let w = p.weight() as usize;
    if w == 0 {
        return GateCounts::default();
    }
    let ny = p.y_count() as usize;
    let nx = p.x_count() as usize;
    let cnot = 2 * (w - 1);
    let basis_changes = 2 * nx + 4 * ny;
    GateCounts { total: cnot + 1 + basis_changes, cnot, rz: 1, basis_changes }
}

pub fn gate_count_report(circuit: &Circuit) -> GateCounts {
    circuit.gates.iter().map(|g| rotation_cost(&g.pauli)).fold(GateCounts::default(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cost(s: &str) -> GateCounts {
        rotation_cost(&s.parse().unwrap())
    }

    #[test]
    fn single_z() {
        let c = cost("Z3");
        assert_eq!((c.cnot, c.total), (0, 1));
    }

    #[test]
    fn staircase_rule() {
        assert_eq!(cost("X0 Z1 Z2 Y3").cnot, 6);
        assert_eq!(cost("X0 Z1 Z2 Y3").total, 6 + 1 + 2 + 4);
        assert_eq!(cost("I"), GateCounts::default());
    }

    #[test]
    fn circuit_sum() {
        let mut c = Circuit::new(4);
        c.push("X0 Y1".parse().unwrap(), 0.1);
        c.push("Z2".parse().unwrap(), 0.2);
        let r = gate_count_report(&c);
        assert_eq!((r.cnot, r.rz, r.total), (2, 2, 2 + 1 + 6 + 1));
    }
}
