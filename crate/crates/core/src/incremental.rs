//! Incremental frame: the reduced basis of the first `i` inputs is grown
//! into that of the first `i + 1`, one input per round, and every
//! intermediate basis is screened for unique-root univariates.

use std::collections::{BTreeMap, VecDeque};

use crate::buchberger::PairReducer;
use crate::engine::{
    prepare_inputs, EngineConfig, EngineError, EngineReport, InnerEngine, NullSink, RoundReducer, RoundTrace,
    RunStats, Session, SessionOptions, SolveEvent, Status, TraceSink,
};
use crate::f4::MatrixReducer;
use crate::gf::Elem;
use crate::midsolve;
use crate::mpoly::{PolyRing, Polynomial};

struct Frame<'a> {
    ring: &'a PolyRing,
    config: &'a EngineConfig,
    field_mode: bool,
    assignments: BTreeMap<usize, Elem>,
    events: Vec<SolveEvent>,
    rounds: Vec<RoundTrace>,
    stats: RunStats,
}

impl Frame<'_> {
    /// Reduced Gröbner basis of `polys` by the inner engine.
    fn inner(&mut self, polys: &[Polynomial], trace: &mut RoundTrace) -> Result<Vec<Polynomial>, EngineError> {
        let opts = SessionOptions {
            field_mode: self.field_mode,
            adjoin: false,
            middle_solving: false,
            criteria: self.config.criteria,
            max_rounds: None,
            batch: self.config.inner == InnerEngine::F4,
            execution: self.config.execution,
        };
        let mut reducer: Box<dyn RoundReducer> = match self.config.inner {
            InnerEngine::F4 => Box::new(MatrixReducer),
            InnerEngine::Buchberger => Box::new(PairReducer),
        };
        let rep = Session::new(self.ring, opts).run(polys, reducer.as_mut(), &mut NullSink)?;
        self.stats.absorb(&rep.stats);
        trace.pairs_selected += rep.rounds.iter().map(|r| r.pairs_selected).sum::<usize>();
        trace.zero_reductions += rep.rounds.iter().map(|r| r.zero_reductions).sum::<usize>();
        trace.max_degree = trace.max_degree.max(rep.stats.max_created_degree);
        Ok(rep.basis)
    }

    /// Screen `g`, substitute what is found into `g` and `pending`, and
    /// recompute until nothing new appears.
    fn screen(
        &mut self,
        g: &mut Vec<Polynomial>,
        pending: &mut VecDeque<Polynomial>,
        trace: &mut RoundTrace,
        sink: &mut dyn TraceSink,
    ) -> Result<Option<Status>, EngineError> {
        let ring = self.ring;
        loop {
            if midsolve::inconsistency_check(g) {
                return Ok(Some(Status::Inconsistent));
            }
            let found = match midsolve::find_unique_root_polys(g, ring, trace.round) {
                Err(_) => return Ok(Some(Status::Inconsistent)),
                Ok(found) if found.is_empty() => return Ok(None),
                Ok(found) => found,
            };
            for ev in found {
                self.assignments.insert(ev.var, ev.value);
                sink.event(ring, &ev)?;
                trace.events.push(ev);
                self.events.push(ev);
            }
            let renewed = midsolve::renew(ring, g.drain(..), &self.assignments, self.field_mode);
            if renewed.inconsistent {
                return Ok(Some(Status::Inconsistent));
            }
            let mut rest = VecDeque::with_capacity(pending.len());
            for f in pending.drain(..) {
                let s = self.assignments.iter().fold(f, |acc, (&v, &a)| ring.substitute(&acc, v, a));
                let s = if self.field_mode { ring.field_reduce(&s) } else { s };
                if s.is_constant() {
                    return Ok(Some(Status::Inconsistent));
                }
                if !s.is_zero() {
                    rest.push_back(ring.monic(s));
                }
            }
            *pending = rest;
            if self.assignments.len() == ring.nvars() {
                return Ok(Some(Status::AllVariablesSolved));
            }
            *g = self.inner(&renewed.polys, trace)?;
        }
    }
}

/// Gröbner basis built one input at a time.
pub fn incremental_gb(
    ring: &PolyRing,
    inputs: &[Polynomial],
    config: &EngineConfig,
    sink: &mut dyn TraceSink,
) -> Result<EngineReport, EngineError> {
    let field_mode = config.adjoin_field_eqs;
    let mut frame = Frame {
        ring,
        config,
        field_mode,
        assignments: BTreeMap::new(),
        events: Vec::new(),
        rounds: Vec::new(),
        stats: RunStats::default(),
    };
    let Some(prepared) = prepare_inputs(ring, inputs, field_mode, field_mode) else {
        return Ok(frame.finish(Status::Inconsistent, Vec::new()));
    };
    let (field_polys, mut own): (Vec<_>, Vec<_>) =
        prepared.into_iter().partition(|p| field_mode && ring.as_field_polynomial(p).is_some());
    if config.reverse_input_order {
        own.reverse();
    }
    let mut pending: VecDeque<Polynomial> = own.into();

    let mut g: Vec<Polynomial> = Vec::new();
    if pending.is_empty() {
        let mut scratch = RoundTrace::default();
        g = frame.inner(&field_polys, &mut scratch)?;
    }
    let mut started = false;
    let mut round = 0;
    while let Some(f) = pending.pop_front() {
        if config.max_rounds.is_some_and(|limit| round >= limit.get()) {
            pending.push_front(f);
            return Ok(frame.finish(Status::RoundLimit, g));
        }
        round += 1;
        let mut trace = RoundTrace { round, ..Default::default() };
        if !started {
            started = true;
            let mut start = vec![f];
            start.extend(field_polys.iter().cloned());
            g = frame.inner(&start, &mut trace)?;
            trace.new_polys = 1;
        } else {
            let r = ring.reduce_with(&f, |m| g.iter().find(|h| h.lm().divides(m)), field_mode);
            if r.is_zero() {
                trace.zero_reductions += 1;
            } else {
                let mut next = g.clone();
                next.push(ring.monic(r));
                g = frame.inner(&next, &mut trace)?;
                trace.new_polys = 1;
            }
        }
        let stop = if config.middle_solving { frame.screen(&mut g, &mut pending, &mut trace, sink)? } else { None };
        if stop == Some(Status::Inconsistent) {
            trace.inconsistent = true;
            sink.inconsistent(round)?;
        }
        trace.solved = frame.assignments.len();
        sink.round(ring, &trace)?;
        frame.rounds.push(trace);
        if let Some(status) = stop {
            return Ok(frame.finish(status, g));
        }
    }
    Ok(frame.finish(Status::GroebnerBasis, g))
}

impl Frame<'_> {
    fn finish(self, status: Status, g: Vec<Polynomial>) -> EngineReport {
        let ring = self.ring;
        let linear: Vec<Polynomial> = self.assignments.iter().map(|(&v, &a)| ring.linear(v, a)).collect();
        let basis = match status {
            Status::Inconsistent => vec![ring.one()],
            Status::AllVariablesSolved => ring.interreduce(linear),
            Status::GroebnerBasis | Status::RoundLimit => ring.interreduce(g.into_iter().chain(linear).collect()),
        };
        EngineReport {
            status,
            basis,
            assignments: if status == Status::Inconsistent { BTreeMap::new() } else { self.assignments },
            events: self.events,
            rounds: self.rounds,
            stats: self.stats,
        }
    }
}
