//! Newline-delimited JSON evaluation endpoint for an external proposer.
//!
//! Requests: `{"op":"pool_info"}`, `{"op":"evaluate","sequences":[[..],..]}`,
//! `{"op":"buffer"}`, `{"op":"shutdown"}`. Every reply is one line; failures
//! reply `{"error":"..."}` and the session continues.

use std::io::{BufRead, BufReader, Write};
use std::net::TcpListener;

use serde::Deserialize;

use crate::error::Result;

use super::anneal::EnergyRecord;
use super::buffer::TrainingBuffer;
use super::evaluator::{check_tokens, Evaluator};
use super::pool::OperatorPool;

pub const DEFAULT_MAX_BATCH: usize = 50;

#[derive(Debug, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
enum Request {
    PoolInfo,
    Evaluate { sequences: Vec<Vec<usize>> },
    Buffer,
    Shutdown,
}

/// 17 significant digits.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub struct ProposerService<'a> {
    pub evaluator: &'a Evaluator,
    pub pool: &'a OperatorPool,
    pub buffer: TrainingBuffer,
    pub depth_hint: usize,
    pub max_batch: usize,
    evaluations: usize,
}

impl<'a> ProposerService<'a> {
    pub fn new(evaluator: &'a Evaluator, pool: &'a OperatorPool, depth_hint: usize) -> Self {
        ProposerService {
            evaluator,
            pool,
            buffer: TrainingBuffer::default(),
            depth_hint,
            max_batch: DEFAULT_MAX_BATCH,
            evaluations: 0,
        }
    }

    /// Sequences evaluated so far.
    pub fn evaluations(&self) -> usize {
        self.evaluations
    }

    /// Reply line (without newline) and whether the session should end.
    pub fn handle(&mut self, line: &str) -> (String, bool) {
        let req: Request = match serde_json::from_str(line) {
            Ok(r) => r,
            Err(e) => return (error_reply(&format!("malformed request: {e}")), false),
        };
        match req {
            Request::PoolInfo => (
                format!(
                    "{{\"L\":{},\"depth_hint\":{},\"n_qubits\":{}}}",
                    self.pool.len(),
                    self.depth_hint,
                    self.pool.n_qubits
                ),
                false,
            ),
            Request::Evaluate { sequences } => (self.evaluate(sequences), false),
            Request::Buffer => {
                let recs: Vec<String> = self
                    .buffer
                    .records()
                    .iter()
                    .map(|r| format!("{{\"tokens\":{:?},\"energy\":{}}}", r.tokens, format_float(r.energy)))
                    .collect();
                (format!("{{\"records\":[{}]}}", recs.join(",")).replace(", ", ","), false)
            }
            Request::Shutdown => ("{\"ok\":true}".to_string(), true),
        }
    }

    fn evaluate(&mut self, sequences: Vec<Vec<usize>>) -> String {
        if sequences.len() > self.max_batch {
            return error_reply(&format!("batch of {} exceeds limit {}", sequences.len(), self.max_batch));
        }
        for (i, s) in sequences.iter().enumerate() {
            if let Err(e) = check_tokens(self.pool, s) {
                return error_reply(&format!("sequence {i}: {e}"));
            }
        }
        let mut out = Vec::with_capacity(sequences.len());
        for tokens in sequences {
            let energy = self.evaluator.evaluate_tokens(self.pool, &tokens).expect("tokens checked");
            self.evaluations += 1;
            self.buffer.insert(EnergyRecord { tokens, energy, step: self.evaluations });
            out.push(format_float(energy));
        }
        format!("{{\"energies\":[{}]}}", out.join(","))
    }

    /// Serve one stream until shutdown or end of input.
    pub fn serve<R: BufRead, W: Write>(&mut self, reader: R, mut writer: W) -> Result<bool> {
        for line in reader.lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let (reply, stop) = self.handle(&line);
            writeln!(writer, "{reply}")?;
            writer.flush()?;
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Accept clients one at a time until one sends shutdown.
    pub fn serve_tcp(&mut self, listener: TcpListener) -> Result<()> {
        for stream in listener.incoming() {
            let stream = stream?;
            let reader = BufReader::new(stream.try_clone()?);
            if self.serve(reader, stream)? {
                break;
            }
        }
        Ok(())
    }
}

fn error_reply(msg: &str) -> String {
    serde_json::json!({ "error": msg }).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groundstate::pool::build_uccsd_pool;
    use crate::hamiltonian::{hamiltonian_to_pauli, SpinOrbitalHamiltonian};

    fn setup() -> (Evaluator, OperatorPool) {
        let mut h = SpinOrbitalHamiltonian::zeros(2, 2, 0.0);
        h.set_h(0, 0, -1.0);
        h.set_h(1, 1, -0.3);
        h.set_g(0, 0, 1, 1, 0.4);
        h.set_g(0, 1, 0, 1, 0.1);
        let ev = Evaluator::new(&hamiltonian_to_pauli(&h, 4).unwrap(), &h.hf_occupation()).unwrap();
        (ev, build_uccsd_pool(4, 2).unwrap().0)
    }

    #[test]
    fn float_format_round_trips() {
        let x = -75.01176391234567_f64;
        let s = format_float(x);
        assert_eq!(s.parse::<f64>().unwrap(), x);
        assert_eq!(s.trim_start_matches('-').split('e').next().unwrap().replace('.', "").len(), 17);
    }

    #[test]
    fn errors_keep_session() {
        let (ev, pool) = setup();
        let mut svc = ProposerService::new(&ev, &pool, 4);
        let input = "not json\n{\"op\":\"frobnicate\"}\n{\"op\":\"evaluate\",\"sequences\":[[999999]]}\n{\"op\":\"pool_info\"}\n";
        let mut out = Vec::new();
        assert!(!svc.serve(input.as_bytes(), &mut out).unwrap());
        let lines: Vec<serde_json::Value> =
            String::from_utf8(out).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[..3].iter().all(|v| v.get("error").is_some()));
        assert_eq!(lines[3]["L"], pool.len());
    }

    #[test]
    fn oversized_batch_rejected() {
        let (ev, pool) = setup();
        let mut svc = ProposerService::new(&ev, &pool, 4);
        let seqs = vec![vec![0usize]; DEFAULT_MAX_BATCH + 1];
        let req = serde_json::json!({"op": "evaluate", "sequences": seqs}).to_string();
        let (reply, stop) = svc.handle(&req);
        assert!(!stop);
        assert!(reply.contains("error"));
        assert!(svc.buffer.is_empty());
    }
}
