//! The witness-producing search for a prime in a maximal ideal of `Z[X]`.

mod bench;
mod lemma;
mod maxzx;
mod pseudo;
mod search;

pub use bench::{run_bench, BenchConfig, BenchResult, Method};
pub use lemma::{find_nonconstant_member, max_to_prime, Branch};
pub use maxzx::{maxzx, maxzx_with, EngineConfig};
pub use pseudo::{geometric_expand, pseudo_division, PseudoDivResult};
pub use search::unbounded_search;

use thiserror::Error;

use crate::algebra::{AlgebraError, Poly};
use crate::evidence::TraceEntry;
use crate::oracle::Oracle;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Membership queries made through this are recorded in order.
pub struct Tracer<'a> {
    oracle: &'a Oracle,
    trace: Vec<TraceEntry>,
}

impl<'a> Tracer<'a> {
    pub fn new(oracle: &'a Oracle) -> Self {
        Tracer { oracle, trace: Vec::new() }
    }

    pub fn member(&mut self, f: &Poly) -> bool {
        let answer = self.oracle.membership(f);
        self.trace.push(TraceEntry { query: f.clone(), answer });
        answer
    }

    pub fn nu(&self, f: &Poly) -> Poly {
        self.oracle.nu_value(f)
    }

    pub fn trace(&self) -> &[TraceEntry] {
        &self.trace
    }

    pub fn into_trace(self) -> Vec<TraceEntry> {
        self.trace
    }
}
