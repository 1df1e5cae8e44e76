//! Line-delimited JSON traces.
//!
//! Every line is one object tagged by `record`: `event` lines are written
//! and flushed the moment a variable is solved, `round` lines close each
//! round, and a single `final` line closes the run. A run killed midway
//! leaves a prefix that still parses line by line.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{EngineReport, RoundTrace, SolveEvent, Status};
use crate::gf::Elem;
use crate::mpoly::PolyRing;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
    Solved,
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventRecord {
    pub kind: EventKind,
    pub round: usize,
    pub var: Option<String>,
    pub value: Option<Elem>,
}

impl EventRecord {
    pub fn solved(ring: &PolyRing, ev: &SolveEvent) -> Self {
        EventRecord {
            kind: EventKind::Solved,
            round: ev.round,
            var: Some(ring.var_name(ev.var).to_string()),
            value: Some(ev.value),
        }
    }

    pub fn inconsistent(round: usize) -> Self {
        EventRecord { kind: EventKind::Inconsistent, round, var: None, value: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub round: usize,
    pub pairs_selected: usize,
    pub new_polys: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_rows: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_cols: Option<usize>,
    pub max_degree: u32,
    pub zero_reductions: usize,
    pub events: Vec<EventRecord>,
    pub solved: usize,
}

impl RoundRecord {
    pub fn new(ring: &PolyRing, r: &RoundTrace) -> Self {
        let mut events: Vec<EventRecord> = r.events.iter().map(|e| EventRecord::solved(ring, e)).collect();
        if r.inconsistent {
            events.push(EventRecord::inconsistent(r.round));
        }
        RoundRecord {
            round: r.round,
            pairs_selected: r.pairs_selected,
            new_polys: r.new_polys,
            matrix_rows: r.matrix.map(|m| m.0),
            matrix_cols: r.matrix.map(|m| m.1),
            max_degree: r.max_degree,
            zero_reductions: r.zero_reductions,
            events,
            solved: r.solved,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentRecord {
    pub var: String,
    pub value: Elem,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinalRecord {
    pub status: Status,
    pub assignments: Vec<AssignmentRecord>,
    pub basis: Vec<String>,
    pub total_rounds: usize,
    pub solve_tuples: Vec<(usize, usize)>,
}

impl FinalRecord {
    pub fn new(ring: &PolyRing, report: &EngineReport) -> Self {
        FinalRecord {
            status: report.status,
            assignments: report
                .assignments
                .iter()
                .map(|(&v, &value)| AssignmentRecord { var: ring.var_name(v).to_string(), value })
                .collect(),
            basis: report.basis.iter().map(|p| ring.to_string(p)).collect(),
            total_rounds: report.total_rounds(),
            solve_tuples: report.solve_tuples(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "lowercase")]
pub enum TraceLine {
    Event(EventRecord),
    Round(RoundRecord),
    Final(FinalRecord),
}

/// Parse a trace, one record per non-empty line.
pub fn parse_trace(text: &str) -> Result<Vec<TraceLine>, serde_json::Error> {
    text.lines().filter(|l| !l.trim().is_empty()).map(serde_json::from_str).collect()
}

pub trait TraceSink {
    fn write(&mut self, line: &TraceLine) -> io::Result<()>;

    /// False when records are discarded; lets callers skip formatting.
    fn enabled(&self) -> bool {
        true
    }

    fn event(&mut self, ring: &PolyRing, ev: &SolveEvent) -> io::Result<()> {
        if !self.enabled() {
            return Ok(());
        }
        self.write(&TraceLine::Event(EventRecord::solved(ring, ev)))
    }

    fn inconsistent(&mut self, round: usize) -> io::Result<()> {
        if !self.enabled() {
            return Ok(());
        }
        self.write(&TraceLine::Event(EventRecord::inconsistent(round)))
    }

    fn round(&mut self, ring: &PolyRing, r: &RoundTrace) -> io::Result<()> {
        if !self.enabled() {
            return Ok(());
        }
        self.write(&TraceLine::Round(RoundRecord::new(ring, r)))
    }

    fn finish(&mut self, ring: &PolyRing, report: &EngineReport) -> io::Result<()> {
        if !self.enabled() {
            return Ok(());
        }
        self.write(&TraceLine::Final(FinalRecord::new(ring, report)))
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct NullSink;

impl TraceSink for NullSink {
    fn write(&mut self, _: &TraceLine) -> io::Result<()> {
        Ok(())
    }

    fn enabled(&self) -> bool {
        false
    }
}

/// Keeps the serialized lines in memory.
#[derive(Debug, Default, Clone)]
pub struct MemorySink {
    pub lines: Vec<String>,
}

impl MemorySink {
    pub fn text(&self) -> String {
        self.lines.iter().map(|l| format!("{l}\n")).collect()
    }
}

impl TraceSink for MemorySink {
    fn write(&mut self, line: &TraceLine) -> io::Result<()> {
        self.lines.push(serde_json::to_string(line)?);
        Ok(())
    }
}

/// Writes one JSON object per line and flushes after each.
pub struct JsonLinesSink<W: Write> {
    out: W,
}

impl<W: Write> JsonLinesSink<W> {
    pub fn new(out: W) -> Self {
        JsonLinesSink { out }
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

impl JsonLinesSink<BufWriter<File>> {
    pub fn create(path: impl AsRef<Path>) -> io::Result<Self> {
        Ok(JsonLinesSink::new(BufWriter::new(File::create(path)?)))
    }
}

impl<W: Write> TraceSink for JsonLinesSink<W> {
    fn write(&mut self, line: &TraceLine) -> io::Result<()> {
        serde_json::to_writer(&mut self.out, line)?;
        self.out.write_all(b"\n")?;
        self.out.flush()
    }
}
