//! Per-directory record of which stages ran, under which configuration,
//! and the digest of every artifact they wrote.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use crate::config::{sha256_hex, Loaded, RunConfig};

pub const FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    /// File name → SHA-256.
    pub artifacts: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub versions: BTreeMap<String, String>,
    pub config_hash: String,
    pub config: RunConfig,
    pub seeds: BTreeMap<String, u64>,
    /// Input file → SHA-256.
    pub inputs: BTreeMap<String, String>,
    pub stages: BTreeMap<String, StageRecord>,
}

fn digest_file(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(sha256_hex(&bytes))
}

impl Manifest {
    fn fresh(l: &Loaded) -> Result<Self> {
        let mut versions = BTreeMap::new();
        versions.insert("auger-core".to_string(), auger_core::VERSION.to_string());
        versions.insert("auger-cli".to_string(), env!("CARGO_PKG_VERSION").to_string());
        let mut seeds = BTreeMap::new();
        seeds.insert("vqe".to_string(), l.config.seed);
        seeds.insert("anneal".to_string(), l.config.seed);
        let mut inputs = BTreeMap::new();
        inputs.insert("geometry".to_string(), digest_file(&l.geometry_path)?);
        if let Some(t) = &l.table_path {
            inputs.insert("atomic_integral_table".to_string(), digest_file(t)?);
        }
        Ok(Manifest {
            versions,
            config_hash: l.config.hash(),
            config: l.config.clone(),
            seeds,
            inputs,
            stages: BTreeMap::new(),
        })
    }

    /// The directory's manifest when it was written for the same
    /// configuration and inputs, otherwise an empty one.
    pub fn open(l: &Loaded) -> Result<Self> {
        let fresh = Self::fresh(l)?;
        let path = l.out.join(FILE);
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(old) = serde_json::from_str::<Manifest>(&text) {
                if old.config_hash == fresh.config_hash && old.inputs == fresh.inputs && old.versions == fresh.versions {
                    return Ok(old);
                }
                log::info!("{} belongs to another configuration; starting over", path.display());
            }
        }
        Ok(fresh)
    }

    /// Whether `stage` ran under this configuration and its artifacts are
    /// still on disk unchanged.
    pub fn has(&self, out: &Path, stage: &str) -> bool {
        self.stages.get(stage).is_some_and(|r| {
            r.artifacts.iter().all(|(name, digest)| digest_file(&out.join(name)).is_ok_and(|d| &d == digest))
        })
    }

    pub fn record(&mut self, stage: &str, files: &[PathBuf]) -> Result<()> {
        let mut artifacts = BTreeMap::new();
        for f in files {
            let name = f.file_name().and_then(|n| n.to_str()).context("artifact name")?.to_string();
            artifacts.insert(name, digest_file(f)?);
        }
        self.stages.insert(stage.to_string(), StageRecord { artifacts });
        Ok(())
    }

    pub fn save(&self, out: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)? + "\n";
        std::fs::write(out.join(FILE), text).with_context(|| format!("cannot write {}", out.join(FILE).display()))
    }
}
