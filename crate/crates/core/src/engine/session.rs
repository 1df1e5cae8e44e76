use std::collections::{BTreeMap, BTreeSet};
use std::num::NonZeroUsize;

use super::{
    select_pairs, update, CriticalPair, DegreeMonitor, EngineError, EngineReport, PairQueue, RoundTrace, RunStats,
    SolveEvent, Status, TemporaryBasis, TraceSink,
};
use crate::gf::Elem;
use crate::midsolve::{self, MidsolveError};
use crate::mpoly::{PolyRing, Polynomial};
use crate::par::Execution;

#[derive(Debug, Clone, Copy)]
pub(crate) struct SessionOptions {
    /// Work modulo the vanishing polynomials: eager field reduction and,
    /// with criteria on, the degree monitor.
    pub field_mode: bool,
    pub adjoin: bool,
    pub middle_solving: bool,
    pub criteria: bool,
    pub max_rounds: Option<NonZeroUsize>,
    /// Take every minimal-degree pair per round instead of one.
    pub batch: bool,
    pub execution: Execution,
}

/// What a reducer sees during one round.
pub(crate) struct Round<'a> {
    pub ring: &'a PolyRing,
    pub basis: &'a TemporaryBasis,
    pub monitor: &'a mut DegreeMonitor,
    pub field_mode: bool,
    pub execution: Execution,
    pub trace: &'a mut RoundTrace,
}

pub(crate) trait RoundReducer {
    /// Reduce the selected pairs. Returned polynomials are nonzero, monic,
    /// fully reduced against the active basis and field-reduced in field
    /// mode.
    fn reduce(&mut self, round: Round<'_>, pairs: &[CriticalPair]) -> Result<Vec<Polynomial>, EngineError>;
}

enum Flow {
    Continue,
    Stop(Status),
}

pub(crate) struct Session<'r> {
    ring: &'r PolyRing,
    opts: SessionOptions,
    basis: TemporaryBasis,
    queue: PairQueue,
    monitor: DegreeMonitor,
    assignments: BTreeMap<usize, Elem>,
    events: Vec<SolveEvent>,
    rounds: Vec<RoundTrace>,
    round: usize,
    zero_reductions: u64,
}

impl<'r> Session<'r> {
    pub fn new(ring: &'r PolyRing, opts: SessionOptions) -> Self {
        Session {
            ring,
            opts,
            basis: TemporaryBasis::new(),
            queue: PairQueue::new(),
            monitor: DegreeMonitor::new(ring, opts.field_mode && opts.criteria),
            assignments: BTreeMap::new(),
            events: Vec::new(),
            rounds: Vec::new(),
            round: 0,
            zero_reductions: 0,
        }
    }

    /// Prepare inputs and run to completion.
    pub fn run(
        mut self,
        inputs: &[Polynomial],
        reducer: &mut dyn RoundReducer,
        sink: &mut dyn TraceSink,
    ) -> Result<EngineReport, EngineError> {
        let Some(prepared) = prepare_inputs(self.ring, inputs, self.opts.field_mode, self.opts.adjoin) else {
            return Ok(self.finish(Status::Inconsistent));
        };
        for p in prepared {
            self.insert(p)?;
        }
        let status = self.main_loop(reducer, sink)?;
        Ok(self.finish(status))
    }

    fn insert(&mut self, p: Polynomial) -> Result<(), EngineError> {
        let is_field = self.opts.field_mode && self.ring.as_field_polynomial(&p).is_some();
        self.monitor.stored(self.ring, &p, is_field)?;
        update(&mut self.basis, &mut self.queue, p, is_field, self.opts.criteria)?;
        Ok(())
    }

    fn main_loop(&mut self, reducer: &mut dyn RoundReducer, sink: &mut dyn TraceSink) -> Result<Status, EngineError> {
        loop {
            while !self.queue.is_empty() {
                if self.opts.max_rounds.is_some_and(|limit| self.round >= limit.get()) {
                    return Ok(Status::RoundLimit);
                }
                self.round += 1;
                let pairs = select_pairs(self.ring, &mut self.queue, self.opts.batch)?;
                let mut trace = RoundTrace { round: self.round, pairs_selected: pairs.len(), ..Default::default() };
                let new = reducer.reduce(
                    Round {
                        ring: self.ring,
                        basis: &self.basis,
                        monitor: &mut self.monitor,
                        field_mode: self.opts.field_mode,
                        execution: self.opts.execution,
                        trace: &mut trace,
                    },
                    &pairs,
                )?;
                trace.new_polys = new.len();
                trace.max_degree = new.iter().map(|p| p.total_degree()).fold(trace.max_degree, u32::max);
                self.zero_reductions += trace.zero_reductions as u64;
                let flow = self.absorb(new, &mut trace, sink)?;
                trace.solved = self.assignments.len();
                sink.round(self.ring, &trace)?;
                self.rounds.push(trace);
                if let Flow::Stop(status) = flow {
                    return Ok(status);
                }
            }
            if !self.opts.middle_solving {
                return Ok(Status::GroebnerBasis);
            }
            // final screen of the completed basis
            let reduced = self.ring.interreduce(self.basis.active().cloned().collect());
            let mut scratch = RoundTrace { round: self.round, ..Default::default() };
            let flow = self.screen(reduced, Vec::new(), &mut scratch, sink)?;
            let solved_any = !scratch.events.is_empty();
            if let Some(last) = self.rounds.last_mut() {
                last.events.extend(scratch.events);
                last.inconsistent |= scratch.inconsistent;
                last.solved = self.assignments.len();
            }
            match flow {
                Flow::Stop(status) => return Ok(status),
                Flow::Continue if solved_any => continue,
                Flow::Continue => return Ok(Status::GroebnerBasis),
            }
        }
    }

    /// Take the reduced batch of a round into the basis.
    fn absorb(&mut self, new: Vec<Polynomial>, trace: &mut RoundTrace, sink: &mut dyn TraceSink) -> Result<Flow, EngineError> {
        if self.opts.middle_solving {
            if midsolve::inconsistency_check(&new) {
                return self.inconsistent(trace, sink);
            }
            match midsolve::find_unique_root_polys(&new, self.ring, self.round) {
                Err(MidsolveError::ConflictingRoots(_)) => return self.inconsistent(trace, sink),
                Err(MidsolveError::OrderNotLex) => unreachable!("not produced by root search"),
                Ok(found) if !found.is_empty() => {
                    self.record(found, trace, sink)?;
                    let pool: Vec<Polynomial> = self.basis.all().iter().cloned().chain(new).collect();
                    return self.renew(pool, trace, sink);
                }
                Ok(_) => {}
            }
        }
        for h in new {
            self.insert(h)?;
        }
        Ok(Flow::Continue)
    }

    /// Screen `polys` for unique roots; on success renew with `polys` and
    /// `pending` as the whole state.
    fn screen(
        &mut self,
        polys: Vec<Polynomial>,
        pending: Vec<Polynomial>,
        trace: &mut RoundTrace,
        sink: &mut dyn TraceSink,
    ) -> Result<Flow, EngineError> {
        match midsolve::find_unique_root_polys(&polys, self.ring, self.round) {
            Err(_) => self.inconsistent(trace, sink),
            Ok(found) if found.is_empty() => Ok(Flow::Continue),
            Ok(found) => {
                self.record(found, trace, sink)?;
                let mut pool: Vec<Polynomial> = polys;
                pool.extend(pending);
                pool.extend(self.basis.all().iter().filter(|p| self.ring.as_field_polynomial(p).is_some()).cloned());
                self.renew(pool, trace, sink)
            }
        }
    }

    fn record(&mut self, found: Vec<SolveEvent>, trace: &mut RoundTrace, sink: &mut dyn TraceSink) -> Result<(), EngineError> {
        for ev in found {
            debug_assert!(!self.assignments.contains_key(&ev.var));
            self.assignments.insert(ev.var, ev.value);
            sink.event(self.ring, &ev)?;
            trace.events.push(ev);
            self.events.push(ev);
        }
        Ok(())
    }

    fn inconsistent(&mut self, trace: &mut RoundTrace, sink: &mut dyn TraceSink) -> Result<Flow, EngineError> {
        trace.inconsistent = true;
        sink.inconsistent(self.round)?;
        Ok(Flow::Stop(Status::Inconsistent))
    }

    /// Substitute all assignments into `pool`, cascade on freshly exposed
    /// unique roots, then rebuild the basis and pair queue from scratch.
    fn renew(&mut self, mut pool: Vec<Polynomial>, trace: &mut RoundTrace, sink: &mut dyn TraceSink) -> Result<Flow, EngineError> {
        loop {
            let renewed = midsolve::renew(self.ring, pool, &self.assignments, self.opts.field_mode);
            if renewed.inconsistent {
                return self.inconsistent(trace, sink);
            }
            if self.assignments.len() == self.ring.nvars() {
                return Ok(Flow::Stop(Status::AllVariablesSolved));
            }
            match midsolve::find_unique_root_polys(&renewed.polys, self.ring, self.round) {
                Err(_) => return self.inconsistent(trace, sink),
                Ok(found) if !found.is_empty() => {
                    self.record(found, trace, sink)?;
                    pool = renewed.polys;
                }
                Ok(_) => {
                    self.basis = TemporaryBasis::new();
                    self.queue = PairQueue::new();
                    for p in renewed.polys {
                        self.insert(p)?;
                    }
                    return Ok(Flow::Continue);
                }
            }
        }
    }

    fn finish(self, status: Status) -> EngineReport {
        let ring = self.ring;
        let linear: Vec<Polynomial> = self.assignments.iter().map(|(&v, &a)| ring.linear(v, a)).collect();
        let basis = match status {
            Status::Inconsistent => vec![ring.one()],
            Status::AllVariablesSolved => ring.interreduce(linear),
            Status::GroebnerBasis | Status::RoundLimit => {
                ring.interreduce(self.basis.active().cloned().chain(linear).collect())
            }
        };
        let mut stats: RunStats = *self.monitor.stats();
        stats.zero_reductions = self.zero_reductions;
        EngineReport {
            status,
            basis,
            assignments: if status == Status::Inconsistent { BTreeMap::new() } else { self.assignments },
            events: self.events,
            rounds: self.rounds,
            stats,
        }
    }
}

/// Drop zeros, normalise, and append vanishing polynomials when asked.
/// `None` when some input is a nonzero constant.
pub(crate) fn prepare_inputs(
    ring: &PolyRing,
    inputs: &[Polynomial],
    field_mode: bool,
    adjoin: bool,
) -> Option<Vec<Polynomial>> {
    let mut out: Vec<Polynomial> = Vec::with_capacity(inputs.len() + ring.nvars());
    let mut field_vars = BTreeSet::new();
    for p in inputs {
        if field_mode {
            if let Some(v) = ring.as_field_polynomial(p) {
                if field_vars.insert(v) {
                    out.push(p.clone());
                }
                continue;
            }
        }
        let p = if field_mode { ring.field_reduce(p) } else { p.clone() };
        if p.is_zero() {
            continue;
        }
        if p.is_constant() {
            return None;
        }
        out.push(ring.monic(p));
    }
    if adjoin {
        for v in 0..ring.nvars() {
            if field_vars.insert(v) {
                out.push(ring.field_polynomial(v));
            }
        }
    }
    Some(out)
}
