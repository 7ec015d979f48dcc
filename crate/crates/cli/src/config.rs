//! Run configuration: one JSON file, validated before any computation.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use auger_core::groundstate::{AnnealOptions, VqeOptions};
use auger_core::molint::{build_sto3g, expand, parse_xyz, Geometry};
use auger_core::qsceom::Mode;
use auger_core::Irrep;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroundMethod {
    Vqe,
    Anneal,
    ExternalProposer,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VqeSettings {
    pub gtol: f64,
    pub max_iterations: usize,
    pub max_restarts: usize,
    pub restart_scale: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnnealSettings {
    pub max_evaluations: usize,
    pub calibration_moves: usize,
    pub target_acceptance: f64,
    pub final_temperature_ratio: f64,
    pub temperature_scale: f64,
    pub greedy_candidates: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProposerSettings {
    pub batch: usize,
    pub buffer: usize,
    pub epochs: usize,
    pub listen: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroundConfig {
    pub method: GroundMethod,
    /// Token sequence length for the annealer and the proposer.
    pub depth: usize,
    pub vqe: VqeSettings,
    pub anneal: AnnealSettings,
    pub proposer: ProposerSettings,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EomConfig {
    pub mode: Mode,
    /// S² purification of the DIP and EE blocks.
    pub purify: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AugerConfig {
    pub table: PathBuf,
    pub hwhm_ev: f64,
    pub floor: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XasConfig {
    pub hwhm_ev: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub name: String,
    /// Relative paths resolve against the config file's directory.
    pub geometry: PathBuf,
    pub basis: String,
    /// Lowest MOs, removed from the ground-state register.
    pub frozen_core: Vec<usize>,
    pub irreps: Vec<Irrep>,
    pub core_orbital: usize,
    pub emitter_atom: usize,
    pub seed: u64,
    /// Artifact directory; `--out` replaces it.
    pub output_dir: PathBuf,
    pub ground: GroundConfig,
    pub eom: EomConfig,
    #[serde(default)]
    pub auger: Option<AugerConfig>,
    #[serde(default)]
    pub xas: Option<XasConfig>,
    #[serde(default)]
    pub svg: bool,
}

impl RunConfig {
    pub fn vqe_options(&self) -> VqeOptions {
        let v = &self.ground.vqe;
        VqeOptions {
            gtol: v.gtol,
            max_iterations: v.max_iterations,
            max_restarts: v.max_restarts,
            restart_scale: v.restart_scale,
            seed: self.seed,
        }
    }

    pub fn anneal_options(&self) -> AnnealOptions {
        let a = &self.ground.anneal;
        AnnealOptions {
            depth: self.ground.depth,
            max_evaluations: a.max_evaluations,
            calibration_moves: a.calibration_moves,
            target_acceptance: a.target_acceptance,
            final_temperature_ratio: a.final_temperature_ratio,
            temperature_scale: a.temperature_scale,
            greedy_candidates: a.greedy_candidates,
            seed: self.seed,
        }
    }

    /// Spin orbitals of the frozen prefix.
    pub fn frozen_qubits(&self) -> usize {
        2 * self.frozen_core.len()
    }

    /// SHA-256 of the effective configuration (overrides included, output
    /// directory and listen address excluded). Paths enter as written, not
    /// as resolved.
    pub fn hash(&self) -> String {
        let mut c = self.clone();
        c.output_dir = PathBuf::new();
        c.ground.proposer.listen.clear();
        let bytes = serde_json::to_vec(&c).expect("config serializes");
        sha256_hex(&bytes)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Validated configuration with its input files resolved and read.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub path: PathBuf,
    pub config: RunConfig,
    pub geometry: Geometry,
    pub geometry_path: PathBuf,
    pub table_path: Option<PathBuf>,
    pub out: PathBuf,
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

pub fn parse(text: &str) -> Result<RunConfig> {
    serde_json::from_str(text).context("config does not match the schema")
}

#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub table: Option<PathBuf>,
    pub svg: bool,
    pub listen: Option<String>,
}

/// Read, apply overrides, resolve paths and validate.
pub fn load(path: &Path, o: &Overrides) -> Result<Loaded> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
    let mut config = parse(&text).with_context(|| format!("in {}", path.display()))?;
    let base = path.parent().unwrap_or(Path::new("."));
    if let Some(s) = o.seed {
        config.seed = s;
    }
    if o.svg {
        config.svg = true;
    }
    if let Some(l) = &o.listen {
        config.ground.proposer.listen = l.clone();
    }
    let mut table_path = config.auger.as_ref().map(|a| resolve(base, &a.table));
    if let Some(t) = &o.table {
        match config.auger.as_mut() {
            Some(a) => a.table = t.clone(),
            None => bail!("--table given but the config has no `auger` section"),
        }
        table_path = Some(t.clone());
    }
    let out = match &o.out {
        Some(p) => p.clone(),
        None => resolve(base, &config.output_dir),
    };
    let geometry_path = resolve(base, &config.geometry);
    let geometry = validate(&config, &geometry_path)?;
    Ok(Loaded { path: path.to_path_buf(), config, geometry, geometry_path, table_path, out })
}

pub fn validate(c: &RunConfig, geometry_path: &Path) -> Result<Geometry> {
    if !c.basis.eq_ignore_ascii_case("sto-3g") {
        bail!("basis `{}` is not available; only sto-3g is supported", c.basis);
    }
    if c.ground.depth == 0 {
        bail!("ground.depth must be positive");
    }
    if c.ground.proposer.batch == 0 || c.ground.proposer.buffer == 0 {
        bail!("proposer batch and buffer sizes must be positive");
    }
    if let Some(a) = &c.auger {
        if a.hwhm_ev.is_nan() || a.hwhm_ev <= 0.0 || a.floor.is_nan() || a.floor < 0.0 {
            bail!("auger.hwhm_ev must be positive and auger.floor non-negative");
        }
    }
    if let Some(x) = &c.xas {
        if x.hwhm_ev.is_nan() || x.hwhm_ev <= 0.0 {
            bail!("xas.hwhm_ev must be positive");
        }
    }
    if c.frozen_core.iter().enumerate().any(|(i, &p)| p != i) {
        bail!("frozen_core must list the lowest orbitals in order (0, 1, ...)");
    }
    let text = std::fs::read_to_string(geometry_path)
        .with_context(|| format!("cannot read geometry {}", geometry_path.display()))?;
    let geometry = parse_xyz(&text)?;
    let n_mo = expand(&geometry, &build_sto3g(&geometry)?).len();
    if c.irreps.len() != n_mo {
        bail!("config lists {} irrep labels but the basis has {n_mo} orbitals", c.irreps.len());
    }
    if geometry.n_electrons() % 2 != 0 {
        bail!("closed-shell reference needs an even electron count");
    }
    let n_occ = geometry.n_electrons() / 2;
    if c.frozen_core.len() >= n_occ {
        bail!("freezing {} orbitals leaves no active electrons", c.frozen_core.len());
    }
    if c.core_orbital >= n_occ {
        bail!("core_orbital {} is not occupied ({n_occ} occupied orbitals)", c.core_orbital);
    }
    if c.emitter_atom >= geometry.atoms.len() {
        bail!("emitter_atom {} out of range ({} atoms)", c.emitter_atom, geometry.atoms.len());
    }
    Ok(geometry)
}

#[cfg(test)]
mod tests {
    use super::*;

    const H2O: &str = include_str!("../../../configs/h2o.json");

    #[test]
    fn shipped_config_parses() {
        let c = parse(H2O).unwrap();
        assert_eq!(c.irreps.len(), 7);
        assert_eq!(c.ground.depth, 60);
        assert_eq!(c.auger.as_ref().unwrap().hwhm_ev, 1.0);
    }

    #[test]
    fn bad_irrep_is_a_schema_error() {
        let text = H2O.replacen("\"B2\"", "\"E\"", 1);
        let err = format!("{:#}", parse(&text).unwrap_err());
        assert!(err.contains("schema"), "{err}");
    }

    #[test]
    fn unknown_field_rejected() {
        let text = H2O.replacen("\"seed\"", "\"sede\"", 1);
        assert!(parse(&text).is_err());
    }

    #[test]
    fn hash_tracks_overrides() {
        let a = parse(H2O).unwrap();
        let mut b = a.clone();
        b.seed += 1;
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.hash(), parse(H2O).unwrap().hash());
        let mut c = a.clone();
        c.output_dir = "elsewhere".into();
        c.ground.proposer.listen = "0.0.0.0:1".into();
        assert_eq!(a.hash(), c.hash());
    }
}
