use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// C2v irreducible representation stored as two bits; the direct product
/// is the bitwise XOR.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Irrep(u8);

impl Irrep {
    pub const A1: Irrep = Irrep(0b00);
    pub const B1: Irrep = Irrep(0b10);
    pub const B2: Irrep = Irrep(0b01);
    pub const A2: Irrep = Irrep(0b11);

    /// Reporting order used for per-irrep tables.
    pub const ALL: [Irrep; 4] = [Irrep::A1, Irrep::A2, Irrep::B1, Irrep::B2];

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn from_bits(b: u8) -> Irrep {
        Irrep(b & 0b11)
    }

    pub fn product(self, other: Irrep) -> Irrep {
        Irrep(self.0 ^ other.0)
    }

    pub fn name(self) -> &'static str {
        match self.0 {
            0b00 => "A1",
            0b10 => "B1",
            0b01 => "B2",
            _ => "A2",
        }
    }

    /// Lower-case Mulliken label for orbital names ("a1", "b2").
    pub fn orbital_name(self) -> String {
        self.name().to_ascii_lowercase()
    }
}

pub fn irrep_product(a: Irrep, b: Irrep) -> Irrep {
    a.product(b)
}

/// Product of the spatial irreps of all spin-orbital indices involved.
pub fn operator_irrep(spin_orbitals: &[usize], orbital_irreps: &[Irrep]) -> Irrep {
    spin_orbitals.iter().fold(Irrep::A1, |acc, &q| acc.product(orbital_irreps[q / 2]))
}

impl fmt::Display for Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Irrep {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "A1" => Ok(Irrep::A1),
            "A2" => Ok(Irrep::A2),
            "B1" => Ok(Irrep::B1),
            "B2" => Ok(Irrep::B2),
            _ => Err(Error::invalid(format!("unknown C2v irrep `{s}` (expected A1, A2, B1 or B2)"))),
        }
    }
}

impl Serialize for Irrep {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Irrep {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn character_table_products() {
        assert_eq!(Irrep::B1.product(Irrep::B2), Irrep::A2);
        for x in Irrep::ALL {
            assert_eq!(Irrep::A1.product(x), x);
            assert_eq!(x.product(x), Irrep::A1);
        }
    }

    #[test]
    fn self_excitation_is_totally_symmetric() {
        let irreps = [Irrep::A1, Irrep::B1];
        assert_eq!(operator_irrep(&[2, 2], &irreps), Irrep::A1);
        assert_eq!(operator_irrep(&[2, 3], &irreps), Irrep::A1);
        assert_eq!(operator_irrep(&[0, 3], &irreps), Irrep::B1);
    }

    #[test]
    fn string_round_trip() {
        for x in Irrep::ALL {
            assert_eq!(x.name().parse::<Irrep>().unwrap(), x);
        }
        assert!("E1".parse::<Irrep>().is_err());
    }
}
