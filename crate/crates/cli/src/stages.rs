//! Pipeline stages. Each reads its upstream artifacts from the output
//! directory, writes its own and records them in the manifest.

use std::fmt::Write as _;
use std::net::TcpListener;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use auger_core::fci::{core_hole_state, fci_auger_reference, ground_energy, sector_diagonalize, SectorSpec};
use auger_core::groundstate::{
    anneal_tokens, build_uccsd_pool, gate_count_report, tokens_to_circuit, vqe_uccsd, EnergyRecord, Evaluator, GateCounts,
    ProposerService, TrainingBuffer, UccsdAnsatz,
};
use auger_core::hamiltonian::s2_operator;
use auger_core::molint::{mo_transform, scf_for, BasisFunction, Geometry, ScfResult};
use auger_core::qsceom::{
    auger_pairs, auger_transitions, enumerate_operators, orbital_labels, solve_channel, workload_counts, workload_for,
    AugerTransitions, Channel, ChannelContext, ChannelSolution, EomSetup, WorkloadReport,
};
use auger_core::simulator::{embed_unitary, SparseOperator};
use auger_core::spectra::{
    auger_spectrum, auger_sticks_csv, channel_table_json, curve_csv, load_atomic_integrals, mbs_project, svg_plot,
    xas_spectrum, xas_sticks_csv, AugerOptions, AugerSpectrum, OcaModel, Spectrum,
};
use auger_core::{Circuit, Irrep, SpinOrbitalHamiltonian};
use clap::ValueEnum;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::config::{GroundMethod, Loaded};
use crate::manifest::Manifest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Stage {
    Scf,
    Ground,
    Qsceom,
    Auger,
    Xas,
    FciRef,
    Workload,
    All,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Scf => "scf",
            Stage::Ground => "ground",
            Stage::Qsceom => "qsceom",
            Stage::Auger => "auger",
            Stage::Xas => "xas",
            Stage::FciRef => "fci-ref",
            Stage::Workload => "workload",
            Stage::All => "all",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScfArtifact {
    pub geometry: Geometry,
    pub basis: Vec<BasisFunction>,
    pub scf: ScfResult,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroundArtifact {
    pub method: GroundMethod,
    pub energy: f64,
    pub hf_energy: f64,
    /// Active register; the frozen prefix is prepended when embedding.
    pub n_qubits: usize,
    pub frozen_qubits: usize,
    pub circuit: Circuit,
    pub tokens: Option<Vec<usize>>,
    pub evaluations: usize,
    pub gate_counts: GateCounts,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QsceomArtifact {
    pub ip: ChannelSolution,
    pub dip: ChannelSolution,
    pub transitions: AugerTransitions,
    pub ee: Option<ChannelSolution>,
    pub workload: WorkloadReport,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SectorEnergies {
    pub irrep: Irrep,
    pub dimension: usize,
    pub energies: Vec<f64>,
}

/// Exact energies used as regression references.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FciReference {
    pub hf_energy: f64,
    pub ground_frozen_core: f64,
    pub ground_all_electron: f64,
    pub core_hole_energy: f64,
    /// N−2 with the core orbital doubly occupied.
    pub dip_pinned_core: Vec<SectorEnergies>,
    /// N-electron, exactly one core electron.
    pub ee_core_excited: Vec<SectorEnergies>,
}

pub struct Runner {
    pub l: Loaded,
    pub manifest: Manifest,
}

fn path_of(out: &Path, name: &str) -> PathBuf {
    out.join(name)
}

fn write(out: &Path, name: &str, text: &str, files: &mut Vec<PathBuf>) -> Result<()> {
    let p = path_of(out, name);
    std::fs::write(&p, text).with_context(|| format!("cannot write {}", p.display()))?;
    files.push(p);
    Ok(())
}

fn write_json<T: Serialize>(out: &Path, name: &str, value: &T, files: &mut Vec<PathBuf>) -> Result<()> {
    write(out, name, &(serde_json::to_string_pretty(value)? + "\n"), files)
}

fn sparse(ham: &SpinOrbitalHamiltonian) -> Result<(SparseOperator, SparseOperator)> {
    let n = ham.n_so();
    Ok((SparseOperator::from_pauli_sum(&ham.to_pauli(n)?), SparseOperator::from_pauli_sum(&s2_operator(n)?)))
}

fn spectrum_svg(s: &Spectrum, title: &str) -> String {
    svg_plot(s, title, "energy (eV)")
}

impl Runner {
    pub fn new(l: Loaded) -> Result<Self> {
        std::fs::create_dir_all(&l.out).with_context(|| format!("cannot create {}", l.out.display()))?;
        let manifest = Manifest::open(&l)?;
        Ok(Runner { l, manifest })
    }

    fn out(&self) -> &Path {
        &self.l.out
    }

    fn finish(&mut self, stage: Stage, files: &[PathBuf]) -> Result<()> {
        self.manifest.record(stage.name(), files)?;
        self.manifest.save(&self.l.out)
    }

    /// Loads an upstream artifact, or names the stage that produces it.
    fn upstream<T: DeserializeOwned>(&self, stage: Stage, file: &str) -> Result<T> {
        if !self.manifest.has(self.out(), stage.name()) {
            bail!(
                "{} has no `{file}` from the `{}` stage for this configuration; run `auger {} --config {}` first",
                self.out().display(),
                stage.name(),
                stage.name(),
                self.l.path.display()
            );
        }
        let p = path_of(self.out(), file);
        let text = std::fs::read_to_string(&p).with_context(|| format!("cannot read {}", p.display()))?;
        serde_json::from_str(&text).with_context(|| format!("malformed {}", p.display()))
    }

    pub fn run(&mut self, stage: Stage) -> Result<()> {
        let t = Instant::now();
        match stage {
            Stage::Scf => self.scf()?,
            Stage::Ground => self.ground()?,
            Stage::Qsceom => self.qsceom()?,
            Stage::Auger => self.auger()?,
            Stage::Xas => self.xas()?,
            Stage::FciRef => self.fci_ref()?,
            Stage::Workload => self.workload()?,
            Stage::All => {
                for s in [Stage::Scf, Stage::Ground, Stage::Qsceom] {
                    self.run(s)?;
                }
                if self.l.config.auger.is_some() {
                    self.run(Stage::Auger)?;
                }
                if self.l.config.xas.is_some() {
                    self.run(Stage::Xas)?;
                }
                self.run(Stage::Workload)?;
            }
        }
        log::info!("stage {} done in {:.2} s", stage.name(), t.elapsed().as_secs_f64());
        Ok(())
    }

    fn hamiltonians(&self, scf: &ScfResult) -> Result<(SpinOrbitalHamiltonian, SpinOrbitalHamiltonian)> {
        let c = &self.l.config;
        Ok((mo_transform(scf, &c.frozen_core, &c.irreps)?, mo_transform(scf, &[], &c.irreps)?))
    }

    fn scf(&mut self) -> Result<()> {
        let (basis, scf) = scf_for(&self.l.geometry)?;
        println!("E(RHF) = {:.10} Ha after {} iterations", scf.e_hf, scf.iterations);
        let mut files = Vec::new();
        let art = ScfArtifact { geometry: self.l.geometry.clone(), basis, scf };
        write_json(&self.l.out, "scf.json", &art, &mut files)?;
        self.finish(Stage::Scf, &files)
    }

    fn ground(&mut self) -> Result<()> {
        let art: ScfArtifact = self.upstream(Stage::Scf, "scf.json")?;
        let c = self.l.config.clone();
        let fc = mo_transform(&art.scf, &c.frozen_core, &c.irreps)?;
        let n_q = fc.n_so();
        let ev = Evaluator::new(&fc.to_pauli(n_q)?, &fc.hf_occupation())?;
        let (pool, exc) = build_uccsd_pool(n_q, fc.n_electrons)?;
        let mut files = Vec::new();
        let (energy, circuit, tokens, evaluations) = match c.ground.method {
            GroundMethod::Vqe => {
                let r = vqe_uccsd(&ev, &UccsdAnsatz::new(n_q, exc), &c.vqe_options())?;
                if !r.converged {
                    log::warn!("VQE stopped at gradient norm {:.2e} without converging", r.gradient_norm);
                }
                (r.energy, r.circuit, None, r.energy_evaluations)
            }
            GroundMethod::Anneal => {
                let r = anneal_tokens(&ev, &pool, &c.anneal_options())?;
                let mut csv = String::from("step,energy\n");
                for rec in &r.trace {
                    writeln!(csv, "{},{:.12}", rec.step, rec.energy)?;
                }
                write(&self.l.out, "anneal_trace.csv", &csv, &mut files)?;
                let circuit = tokens_to_circuit(&pool, &r.best.tokens)?;
                (r.best.energy, circuit, Some(r.best.tokens), r.evaluations)
            }
            GroundMethod::ExternalProposer => {
                let p = &c.ground.proposer;
                let listener = TcpListener::bind(&p.listen).with_context(|| format!("cannot listen on {}", p.listen))?;
                let mut svc = ProposerService::new(&ev, &pool, c.ground.depth);
                svc.max_batch = p.batch;
                svc.buffer = TrainingBuffer::new(p.buffer);
                eprintln!(
                    "proposer endpoint on {} (pool L = {}, depth {}, batch {}, {} epochs suggested)",
                    listener.local_addr()?,
                    pool.len(),
                    c.ground.depth,
                    p.batch,
                    p.epochs
                );
                svc.serve_tcp(listener)?;
                let best: EnergyRecord = svc.buffer.best().cloned().context("the proposer session evaluated no sequences")?;
                let circuit = tokens_to_circuit(&pool, &best.tokens)?;
                (best.energy, circuit, Some(best.tokens), svc.evaluations())
            }
        };
        let g = GroundArtifact {
            method: c.ground.method,
            energy,
            hf_energy: fc.hf_energy(),
            n_qubits: n_q,
            frozen_qubits: c.frozen_qubits(),
            gate_counts: gate_count_report(&circuit),
            circuit,
            tokens,
            evaluations,
        };
        println!(
            "E(ground) = {:.10} Ha ({:?}), {:.3} mHa below HF, {} CNOTs",
            g.energy,
            g.method,
            (g.hf_energy - g.energy) * 1e3,
            g.gate_counts.cnot
        );
        write_json(&self.l.out, "ground.json", &g, &mut files)?;
        self.finish(Stage::Ground, &files)
    }

    fn qsceom(&mut self) -> Result<()> {
        let art: ScfArtifact = self.upstream(Stage::Scf, "scf.json")?;
        let g: GroundArtifact = self.upstream(Stage::Ground, "ground.json")?;
        let c = self.l.config.clone();
        let (_, full) = self.hamiltonians(&art.scf)?;
        let u = embed_unitary(&g.circuit, g.frozen_qubits);
        let (h, s2) = sparse(&full)?;
        let setup =
            EomSetup { ctx: ChannelContext::from_hamiltonian(&full, &[c.core_orbital])?, hamiltonian: &h, s2: &s2, circuit: &u, mode: c.eom.mode };
        let ip = solve_channel(&setup, Channel::Ip, true, false)?;
        let dip = solve_channel(&setup, Channel::Dip, true, c.eom.purify)?;
        let transitions = auger_transitions(&setup, &ip, &dip)?;
        let workload = workload_for(&ip, &dip, &transitions);
        let ee = match c.xas {
            Some(_) => Some(solve_channel(&setup, Channel::Ee, true, c.eom.purify)?),
            None => None,
        };
        println!(
            "IP {:?}, DIP {:?}{}; core-hole state {} #{} at {:.8} Ha",
            ip.basis.counts(),
            dip.basis.counts(),
            ee.as_ref().map(|e| format!(", EE {:?}", e.basis.counts())).unwrap_or_default(),
            transitions.initial_irrep,
            transitions.initial_index,
            transitions.initial_energy
        );
        let mut files = Vec::new();
        write_json(&self.l.out, "qsceom.json", &QsceomArtifact { ip, dip, transitions, ee, workload }, &mut files)?;
        self.finish(Stage::Qsceom, &files)
    }

    fn oca_model(&self, art: &ScfArtifact) -> Result<OcaModel> {
        let c = &self.l.config;
        let table_path = self.l.table_path.as_ref().context("the config has no `auger` section")?;
        let element = &self.l.geometry.atoms[c.emitter_atom].symbol;
        let table = load_atomic_integrals(table_path, element)
            .with_context(|| format!("atomic integral table {}", table_path.display()))?;
        let mbs = mbs_project(&art.basis, &art.scf, c.emitter_atom)?;
        Ok(OcaModel::new(&table, &mbs, c.core_orbital)?)
    }

    fn write_auger(&self, s: &AugerSpectrum, prefix: &str, files: &mut Vec<PathBuf>) -> Result<()> {
        let out = &self.l.out;
        write(out, &format!("{prefix}_sticks.csv"), &auger_sticks_csv(s)?, files)?;
        write(out, &format!("{prefix}_curve.csv"), &curve_csv(&s.spectrum)?, files)?;
        write(out, &format!("{prefix}_channels.json"), &channel_table_json(s)?, files)?;
        if self.l.config.svg {
            let title = format!("{} Auger spectrum", self.l.config.name);
            write(out, &format!("{prefix}.svg"), &spectrum_svg(&s.spectrum, &title), files)?;
        }
        Ok(())
    }

    fn auger(&mut self) -> Result<()> {
        let c = self.l.config.clone();
        let opts = c.auger.as_ref().context("the config has no `auger` section; add one with the atomic integral table")?;
        let art: ScfArtifact = self.upstream(Stage::Scf, "scf.json")?;
        let q: QsceomArtifact = self.upstream(Stage::Qsceom, "qsceom.json")?;
        let model = self.oca_model(&art)?;
        let labels = orbital_labels(&c.irreps);
        let s = auger_spectrum(&q.dip, &q.transitions, &labels, &model, &AugerOptions { hwhm: opts.hwhm_ev, floor: opts.floor })?;
        if let Some(top) = s.strongest() {
            println!(
                "{} channels; strongest {} {} at {:.2} eV",
                s.channels.len(),
                top.configuration,
                top.multiplicity_symbol(),
                top.e_kin_ev
            );
        }
        let mut files = Vec::new();
        self.write_auger(&s, "auger", &mut files)?;
        self.finish(Stage::Auger, &files)
    }

    fn xas(&mut self) -> Result<()> {
        let c = self.l.config.clone();
        let opts = c.xas.as_ref().context("the config has no `xas` section")?;
        let art: ScfArtifact = self.upstream(Stage::Scf, "scf.json")?;
        let g: GroundArtifact = self.upstream(Stage::Ground, "ground.json")?;
        let q: QsceomArtifact = self.upstream(Stage::Qsceom, "qsceom.json")?;
        let mut ee = q.ee.context("qsceom.json has no EE solution; rerun `auger qsceom` with an `xas` section")?;
        let (_, full) = self.hamiltonians(&art.scf)?;
        let u = embed_unitary(&g.circuit, g.frozen_qubits);
        let (h, s2) = sparse(&full)?;
        let setup =
            EomSetup { ctx: ChannelContext::from_hamiltonian(&full, &[c.core_orbital])?, hamiltonian: &h, s2: &s2, circuit: &u, mode: c.eom.mode };
        ee.restore_states(setup.ctx.hf_determinant(), &u)?;
        let x = xas_spectrum(&setup, &ee, &art.scf.mo_dipole(), &orbital_labels(&c.irreps), opts.hwhm_ev)?;
        let bright = x.transitions.iter().filter(|t| t.oscillator_strength > 1e-3).count();
        println!("{} core-excited states, {bright} with f > 1e-3", x.transitions.len());
        let mut files = Vec::new();
        let out = self.l.out.clone();
        write(&out, "xas_sticks.csv", &xas_sticks_csv(&x)?, &mut files)?;
        write(&out, "xas_curve.csv", &curve_csv(&x.spectrum)?, &mut files)?;
        write_json(&out, "xas.json", &x, &mut files)?;
        if c.svg {
            write(&out, "xas.svg", &spectrum_svg(&x.spectrum, &format!("{} XAS", c.name)), &mut files)?;
        }
        self.finish(Stage::Xas, &files)
    }

    fn fci_ref(&mut self) -> Result<()> {
        let art: ScfArtifact = self.upstream(Stage::Scf, "scf.json")?;
        let c = self.l.config.clone();
        let (fc, full) = self.hamiltonians(&art.scf)?;
        let core = c.core_orbital;
        let (ion, k) = core_hole_state(&full, core)?;
        let mut dip_pinned_core = Vec::new();
        let mut ee_core_excited = Vec::new();
        for g in Irrep::ALL {
            let spec = SectorSpec::new(full.n_electrons - 2, 0).with_fixed(2 * core, true).with_fixed(2 * core + 1, true).with_irrep(g);
            if let Ok(s) = sector_diagonalize(&full, &spec) {
                dip_pinned_core.push(SectorEnergies { irrep: g, dimension: s.dim(), energies: s.energies });
            }
            if let Ok(s) = sector_diagonalize(&full, &SectorSpec::core_excited(full.n_electrons, 0, &[core]).with_irrep(g)) {
                ee_core_excited.push(SectorEnergies { irrep: g, dimension: s.dim(), energies: s.energies });
            }
        }
        let r = FciReference {
            hf_energy: art.scf.e_hf,
            ground_frozen_core: ground_energy(&fc)?,
            ground_all_electron: ground_energy(&full)?,
            core_hole_energy: ion.energies[k],
            dip_pinned_core,
            ee_core_excited,
        };
        println!(
            "E(FCI) = {:.10} Ha frozen core, {:.10} Ha all electron; core hole {:.8} Ha",
            r.ground_frozen_core, r.ground_all_electron, r.core_hole_energy
        );
        let mut files = Vec::new();
        write_json(&self.l.out, "fci_sectors.json", &r, &mut files)?;
        if let Some(opts) = &c.auger {
            let model = self.oca_model(&art)?;
            let s = fci_auger_reference(&full, core, &model, &orbital_labels(&c.irreps), &AugerOptions { hwhm: opts.hwhm_ev, floor: opts.floor })?;
            self.write_auger(&s, "fci_auger", &mut files)?;
        }
        self.finish(Stage::FciRef, &files)
    }

    /// Measurement counts follow from operator enumeration alone.
    fn workload(&mut self) -> Result<()> {
        let art: ScfArtifact = self.upstream(Stage::Scf, "scf.json")?;
        let c = self.l.config.clone();
        let (_, full) = self.hamiltonians(&art.scf)?;
        let ctx = ChannelContext::from_hamiltonian(&full, &[c.core_orbital])?;
        let ip = enumerate_operators(Channel::Ip, &ctx, true)?;
        let dip = enumerate_operators(Channel::Dip, &ctx, true)?;
        let initial = if self.manifest.has(self.out(), Stage::Qsceom.name()) {
            let q: QsceomArtifact = self.upstream(Stage::Qsceom, "qsceom.json")?;
            q.transitions.initial_irrep
        } else {
            c.irreps[c.core_orbital]
        };
        let core = 2 * c.core_orbital + 1;
        let counts = |b: &auger_core::qsceom::ChannelBasis| b.blocks.iter().map(|(g, v)| (*g, v.len())).collect::<Vec<_>>();
        let n_csr: Vec<(Irrep, usize)> = Irrep::ALL.iter().map(|&g| (g, auger_pairs(&ctx, core, initial, g).len())).collect();
        let w = workload_counts(&counts(&ip), &counts(&dip), &n_csr, ip.block(initial).len());
        let join = |v: Vec<usize>| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" + ");
        println!("N_eval,M = {} + {} = {}", w.total_m_ip, w.total_m_dip, w.total_m);
        println!("N_eval,R = {} = {}", join(w.rdm.iter().map(|r| r.n_eval_r).collect()), w.total_r);
        println!("N_eval = {}", w.total);
        let mut files = Vec::new();
        write_json(&self.l.out, "workload.json", &w, &mut files)?;
        self.finish(Stage::Workload, &files)
    }
}
