//! Shared machinery for the basis engines: configuration, pair handling
//! with Buchberger's criteria, the temporary basis, the degree monitor,
//! traces, and the select/reduce/update loop both non-incremental engines
//! run on.

mod monitor;
mod pairs;
mod session;
pub mod trace;

use std::collections::BTreeMap;
use std::fmt;
use std::num::NonZeroUsize;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use monitor::{DegreeMonitor, Stage};
pub use pairs::{select_pairs, update, BasisIndex, CriticalPair, PairQueue, TemporaryBasis};
pub(crate) use session::{prepare_inputs, Round, RoundReducer, Session, SessionOptions};
pub use trace::{JsonLinesSink, MemorySink, NullSink, TraceSink};

use crate::gf::Elem;
use crate::mpoly::{Polynomial, PolyRing};
use crate::par::Execution;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("degree bound violated at {stage} stage: degree {degree} > {bound} in {poly}")]
    BoundViolation { stage: Stage, degree: u32, bound: u32, poly: String },
    #[error("pair queue is empty")]
    EmptyQueue,
    #[error("no pairs to preprocess")]
    EmptyBatch,
    #[error("polynomial from a different ring: {0}")]
    Ring(#[from] crate::mpoly::MpolyError),
    #[error("writing trace: {0}")]
    Trace(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineKind {
    Buchberger,
    F4,
    Incremental,
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EngineKind::Buchberger => "buchberger",
            EngineKind::F4 => "f4",
            EngineKind::Incremental => "incremental",
        })
    }
}

impl std::str::FromStr for EngineKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "buchberger" => Ok(EngineKind::Buchberger),
            "f4" => Ok(EngineKind::F4),
            "incremental" => Ok(EngineKind::Incremental),
            other => Err(format!("unknown engine `{other}`")),
        }
    }
}

/// Engine used for each step of the incremental frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InnerEngine {
    Buchberger,
    #[default]
    F4,
}

impl std::str::FromStr for InnerEngine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "buchberger" => Ok(InnerEngine::Buchberger),
            "f4" => Ok(InnerEngine::F4),
            other => Err(format!("unknown inner engine `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    pub engine: EngineKind,
    pub middle_solving: bool,
    pub adjoin_field_eqs: bool,
    /// Stop with [`Status::RoundLimit`] after this many rounds.
    pub max_rounds: Option<NonZeroUsize>,
    /// Buchberger's criteria and the Gebauer-Möller pruning. Off keeps every pair.
    pub criteria: bool,
    pub inner: InnerEngine,
    /// Incremental frame only: consume inputs last to first.
    pub reverse_input_order: bool,
    pub execution: Execution,
}

impl EngineConfig {
    pub fn new(engine: EngineKind) -> Self {
        EngineConfig {
            engine,
            middle_solving: true,
            adjoin_field_eqs: true,
            max_rounds: None,
            criteria: true,
            inner: InnerEngine::default(),
            reverse_input_order: false,
            execution: Execution::default(),
        }
    }

    pub fn middle_solving(mut self, on: bool) -> Self {
        self.middle_solving = on;
        self
    }

    pub fn adjoin_field_eqs(mut self, on: bool) -> Self {
        self.adjoin_field_eqs = on;
        self
    }

    pub fn max_rounds(mut self, limit: usize) -> Self {
        self.max_rounds = NonZeroUsize::new(limit);
        self
    }

    pub fn criteria(mut self, on: bool) -> Self {
        self.criteria = on;
        self
    }

    pub fn inner(mut self, inner: InnerEngine) -> Self {
        self.inner = inner;
        self
    }

    pub fn reverse_input_order(mut self, on: bool) -> Self {
        self.reverse_input_order = on;
        self
    }

    pub fn execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    GroebnerBasis,
    AllVariablesSolved,
    Inconsistent,
    RoundLimit,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::GroebnerBasis => "GroebnerBasis",
            Status::AllVariablesSolved => "AllVariablesSolved",
            Status::Inconsistent => "Inconsistent",
            Status::RoundLimit => "RoundLimit",
        })
    }
}

/// A variable fixed by a unique-root univariate member of the ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SolveEvent {
    pub round: usize,
    pub var: usize,
    pub value: Elem,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RoundTrace {
    pub round: usize,
    pub pairs_selected: usize,
    pub new_polys: usize,
    /// Macaulay matrix shape; F4 rounds only.
    pub matrix: Option<(usize, usize)>,
    pub max_degree: u32,
    pub zero_reductions: usize,
    pub events: Vec<SolveEvent>,
    pub inconsistent: bool,
    /// Variables solved so far, this round included.
    pub solved: usize,
}

/// Counters gathered by the degree monitor and the reducers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunStats {
    pub created_checks: u64,
    pub stored_checks: u64,
    pub max_created_degree: u32,
    pub max_stored_degree: u32,
    pub zero_reductions: u64,
}

impl RunStats {
    pub(crate) fn absorb(&mut self, other: &RunStats) {
        self.created_checks += other.created_checks;
        self.stored_checks += other.stored_checks;
        self.max_created_degree = self.max_created_degree.max(other.max_created_degree);
        self.max_stored_degree = self.max_stored_degree.max(other.max_stored_degree);
        self.zero_reductions += other.zero_reductions;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineReport {
    pub status: Status,
    /// Interreduced output; `{1}` when inconsistent.
    pub basis: Vec<Polynomial>,
    /// Solved variables; empty when inconsistent, since no point survives.
    /// The events that were emitted on the way are kept in `events`.
    pub assignments: BTreeMap<usize, Elem>,
    pub events: Vec<SolveEvent>,
    pub rounds: Vec<RoundTrace>,
    pub stats: RunStats,
}

impl EngineReport {
    pub fn total_rounds(&self) -> usize {
        self.rounds.len()
    }

    /// `(round, variables solved so far)` for every round that solved something.
    pub fn solve_tuples(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for (k, ev) in self.events.iter().enumerate() {
            match out.last_mut() {
                Some(last) if last.0 == ev.round => last.1 = k + 1,
                _ => out.push((ev.round, k + 1)),
            }
        }
        out
    }

    pub fn first_event_round(&self) -> Option<usize> {
        self.events.iter().map(|e| e.round).min()
    }
}

/// Vanishing polynomials of every variable appended to `inputs`, skipping
/// any already present.
pub fn adjoin_field_equations(ring: &PolyRing, inputs: &[Polynomial]) -> Vec<Polynomial> {
    let mut out = inputs.to_vec();
    for var in 0..ring.nvars() {
        let fp = ring.field_polynomial(var);
        if !out.contains(&fp) {
            out.push(fp);
        }
    }
    out
}

/// Run the configured engine on `inputs`, streaming the trace to `sink`.
pub fn run(
    ring: &PolyRing,
    inputs: &[Polynomial],
    config: &EngineConfig,
    sink: &mut dyn TraceSink,
) -> Result<EngineReport, EngineError> {
    for p in inputs {
        if let Some(t) = p.leading_term() {
            if t.mono.nvars() != ring.nvars() {
                return Err(crate::mpoly::MpolyError::LengthMismatch(t.mono.nvars(), ring.nvars()).into());
            }
        }
    }
    let report = match config.engine {
        EngineKind::Buchberger => crate::buchberger::buchberger_gb(ring, inputs, config, sink)?,
        EngineKind::F4 => crate::f4::f4_gb(ring, inputs, config, sink)?,
        EngineKind::Incremental => crate::incremental::incremental_gb(ring, inputs, config, sink)?,
    };
    sink.finish(ring, &report)?;
    Ok(report)
}
