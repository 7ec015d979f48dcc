use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::BOHR_PER_ANGSTROM;

const ELEMENTS: [&str; 10] = ["H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne"];

pub fn atomic_number(symbol: &str) -> Option<u32> {
    ELEMENTS
        .iter()
        .position(|s| s.eq_ignore_ascii_case(symbol))
        .map(|i| i as u32 + 1)
}

pub fn element_symbol(z: u32) -> Option<&'static str> {
    ELEMENTS.get((z as usize).wrapping_sub(1)).copied()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub symbol: String,
    pub z: u32,
    /// Position in angstrom.
    pub position: [f64; 3],
}

impl Atom {
    pub fn position_bohr(&self) -> [f64; 3] {
        self.position.map(|x| x * BOHR_PER_ANGSTROM)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    pub atoms: Vec<Atom>,
}

impl Geometry {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::invalid("geometry has no atoms"));
        }
        for a in &atoms {
            if a.z == 0 || a.position.iter().any(|x| !x.is_finite()) {
                return Err(Error::invalid(format!("bad atom {}", a.symbol)));
            }
        }
        Ok(Geometry { atoms })
    }

    pub fn n_electrons(&self) -> usize {
        self.atoms.iter().map(|a| a.z as usize).sum()
    }

    pub fn nuclear_repulsion(&self) -> f64 {
        let mut e = 0.0;
        for (i, a) in self.atoms.iter().enumerate() {
            let ra = a.position_bohr();
            for b in &self.atoms[..i] {
                let rb = b.position_bohr();
                let d = ((ra[0] - rb[0]).powi(2) + (ra[1] - rb[1]).powi(2) + (ra[2] - rb[2]).powi(2)).sqrt();
                e += (a.z * b.z) as f64 / d;
            }
        }
        e
    }

    pub fn translated(&self, shift: [f64; 3]) -> Geometry {
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom {
                position: [a.position[0] + shift[0], a.position[1] + shift[1], a.position[2] + shift[2]],
                ..a.clone()
            })
            .collect();
        Geometry { atoms }
    }
}

/// Parse XYZ text (angstrom). The count and comment header lines are
/// optional; a bare list of `El x y z` lines is accepted too.
pub fn parse_xyz(text: &str) -> Result<Geometry> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .collect();
    let mut body: &[(usize, &str)] = &lines;
    let first = lines.iter().find(|(_, l)| !l.is_empty());
    let mut expected = None;
    if let Some((n, l)) = first {
        if let Ok(count) = l.parse::<usize>() {
            expected = Some(count);
            let start = lines.iter().position(|(m, _)| m == n).unwrap();
            body = lines.get(start + 2..).unwrap_or(&[]);
        }
    }
    let mut atoms = Vec::new();
    for &(lineno, line) in body {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 4 {
            return Err(Error::parse(lineno, "expected `symbol x y z`"));
        }
        let symbol = fields[0];
        let z = atomic_number(symbol).ok_or_else(|| Error::UnknownElement(symbol.to_string()))?;
        let mut pos = [0.0; 3];
        for k in 0..3 {
            pos[k] = fields[k + 1]
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad coordinate `{}`", fields[k + 1])))?;
        }
        atoms.push(Atom { symbol: element_symbol(z).unwrap().to_string(), z, position: pos });
        if expected == Some(atoms.len()) {
            break;
        }
    }
    if let Some(n) = expected {
        if atoms.len() != n {
            return Err(Error::parse(lines.len(), format!("header declares {n} atoms, found {}", atoms.len())));
        }
    }
    Geometry::new(atoms)
}

#[cfg(test)]
mod tests {
    use super::*;

    const H2O: &str = "3\nwater\nH -0.7586 0.0 0.5870\nO 0.0 0.0 0.0\nH 0.7586 0.0 0.5870\n";

    #[test]
    fn water_block() {
        let g = parse_xyz(H2O).unwrap();
        assert_eq!(g.atoms.len(), 3);
        assert_eq!(g.atoms[1].symbol, "O");
        assert_eq!(g.atoms[1].position, [0.0, 0.0, 0.0]);
        assert_eq!(g.n_electrons(), 10);
    }

    #[test]
    fn lih_distance() {
        let g = parse_xyz("Li 0 0 0\nH 0 0 1.6").unwrap();
        let d = g.atoms[1].position[2] - g.atoms[0].position[2];
        assert!((d - 1.6).abs() < 1e-15);
    }

    #[test]
    fn single_atom_no_repulsion() {
        let g = parse_xyz("H 0 0 0").unwrap();
        assert_eq!(g.nuclear_repulsion(), 0.0);
    }

    #[test]
    fn water_nuclear_repulsion() {
        // Pairwise Z_i Z_j / r_ij sum worked by hand: 9.17586...
        let g = parse_xyz(H2O).unwrap();
        let b = BOHR_PER_ANGSTROM;
        let r_oh = (0.7586f64.powi(2) + 0.5870f64.powi(2)).sqrt() * b;
        let r_hh = 2.0 * 0.7586 * b;
        let hand = 2.0 * 8.0 / r_oh + 1.0 / r_hh;
        assert!((g.nuclear_repulsion() - hand).abs() < 1e-12);
        assert!((g.nuclear_repulsion() - 9.1758660562).abs() < 1e-9);
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse_xyz("H 0 0 0\nXx 0 0 1") {
            Err(Error::UnknownElement(s)) => assert_eq!(s, "Xx"),
            other => panic!("{other:?}"),
        }
        match parse_xyz("H 0 0 0\nH 0 zero 1") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }
}
