use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Highest continuum partial wave expected for K-LL decay.
pub const DEFAULT_L_MAX: i32 = 2;

#[derive(Debug, Deserialize)]
struct Row {
    element: String,
    core: String,
    l: i32,
    m: i32,
    nu: String,
    rho: String,
    value: f64,
}

/// One-centre integrals ⟨χ_Elm χ_core|χ_ν χ_ρ⟩ keyed by (l, m, ν, ρ), with
/// ν and ρ named like the minimal-basis functions ("1s", "2px", …).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomicIntegralTable {
    pub element: String,
    pub core: String,
    pub provenance: String,
    pub entries: BTreeMap<(i32, i32, String, String), f64>,
}

impl AtomicIntegralTable {
    pub fn empty(element: &str, core: &str) -> Self {
        AtomicIntegralTable {
            element: element.to_string(),
            core: core.to_string(),
            provenance: String::new(),
            entries: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Tabulated value, or 0 with a warning for a key the table lacks.
    pub fn get(&self, l: i32, m: i32, nu: &str, rho: &str) -> f64 {
        match self.entries.get(&(l, m, nu.to_string(), rho.to_string())) {
            Some(&v) => v,
            None => {
                log::warn!("no atomic integral for (l={l}, m={m}, {nu}, {rho}); using 0");
                0.0
            }
        }
    }

    /// Distinct (l, m) partial waves present.
    pub fn partial_waves(&self) -> Vec<(i32, i32)> {
        let mut v: Vec<(i32, i32)> = self.entries.keys().map(|(l, m, _, _)| (*l, *m)).collect();
        v.dedup();
        v
    }

    /// Basis-function names appearing as ν or ρ.
    pub fn functions(&self) -> Vec<String> {
        let mut v: Vec<String> = self.entries.keys().flat_map(|(_, _, a, b)| [a.clone(), b.clone()]).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Parse the CSV schema `element,core,l,m,nu,rho,value`; lines starting
/// with `#` are provenance comments. Every row must name `element`.
pub fn parse_atomic_integrals(text: &str, element: &str) -> Result<AtomicIntegralTable> {
    let provenance: Vec<&str> =
        text.lines().filter_map(|l| l.trim_start().strip_prefix('#')).map(str::trim).collect();
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut table = AtomicIntegralTable::empty(element, "");
    table.provenance = provenance.join("\n");
    let headers = rdr.headers()?.clone();
    for field in ["element", "core", "l", "m", "nu", "rho", "value"] {
        if !headers.iter().any(|h| h == field) {
            return Err(Error::invalid(format!("atomic integral table lacks column `{field}`")));
        }
    }
    for (i, row) in rdr.deserialize::<Row>().enumerate() {
        let line = i + 2;
        let row = row.map_err(|e| Error::parse(line, e.to_string()))?;
        if !row.element.eq_ignore_ascii_case(element) {
            return Err(Error::invalid(format!(
                "atomic integral table is for element `{}` but the emitter is `{element}`",
                row.element
            )));
        }
        if table.core.is_empty() {
            table.core = row.core.clone();
        } else if table.core != row.core {
            return Err(Error::parse(line, format!("mixed core shells `{}` and `{}`", table.core, row.core)));
        }
        if row.l < 0 || row.m.abs() > row.l {
            return Err(Error::parse(line, format!("invalid partial wave l={} m={}", row.l, row.m)));
        }
        if row.l > DEFAULT_L_MAX {
            log::warn!("partial wave l={} above the usual K-LL cutoff {DEFAULT_L_MAX}", row.l);
        }
        if !row.value.is_finite() {
            return Err(Error::parse(line, "non-finite integral"));
        }
        if table.entries.insert((row.l, row.m, row.nu, row.rho), row.value).is_some() {
            return Err(Error::parse(line, "duplicate key"));
        }
    }
    Ok(table)
}

pub fn load_atomic_integrals(path: impl AsRef<Path>, element: &str) -> Result<AtomicIntegralTable> {
    let text = std::fs::read_to_string(path.as_ref())?;
    parse_atomic_integrals(&text, element)
}

#[cfg(test)]
mod tests {
    use super::*;

    const OXYGEN: &str = include_str!("../../../../data/oca/oxygen_k.csv");

    #[test]
    fn bundled_oxygen_table() {
        let t = parse_atomic_integrals(OXYGEN, "O").unwrap();
        let pairs = 5 * 5;
        let expected: usize = (0..=2).map(|l| (2 * l + 1) * pairs).sum();
        assert_eq!(t.len(), expected);
        assert_eq!(t.core, "1s");
        assert_eq!(t.partial_waves().len(), 9);
        assert!(t.provenance.contains("ANO-RCC"));
    }

    #[test]
    fn wrong_element_is_an_error() {
        let e = parse_atomic_integrals(OXYGEN, "N").unwrap_err();
        assert!(e.to_string().contains("emitter"));
    }

    #[test]
    fn header_only_table_is_empty() {
        let t = parse_atomic_integrals("element,core,l,m,nu,rho,value\n", "O").unwrap();
        assert!(t.is_empty());
        assert_eq!(t.get(0, 0, "2s", "2s"), 0.0);
    }

    #[test]
    fn schema_violations() {
        assert!(parse_atomic_integrals("element,l,m\nO,0,0\n", "O").is_err());
        let bad = "element,core,l,m,nu,rho,value\nO,1s,1,2,2s,2s,0.1\n";
        assert!(parse_atomic_integrals(bad, "O").is_err());
        let dup = "element,core,l,m,nu,rho,value\nO,1s,0,0,2s,2s,0.1\nO,1s,0,0,2s,2s,0.2\n";
        assert!(parse_atomic_integrals(dup, "O").is_err());
    }
}
