//! Pair-at-a-time Buchberger engine. Slow but simple; it doubles as the
//! reference the F4 engine is checked against.

use crate::engine::{
    CriticalPair, EngineConfig, EngineError, EngineReport, Round, RoundReducer, Session, SessionOptions, TraceSink,
};
use crate::mpoly::{PolyRing, Polynomial};

pub(crate) struct PairReducer;

impl RoundReducer for PairReducer {
    fn reduce(&mut self, round: Round<'_>, pairs: &[CriticalPair]) -> Result<Vec<Polynomial>, EngineError> {
        let Round { ring, basis, monitor, field_mode, trace, .. } = round;
        let mut new = Vec::with_capacity(pairs.len());
        for pair in pairs {
            let mut s = ring.spoly(basis.get(pair.left), basis.get(pair.right))?;
            if field_mode {
                s = ring.field_reduce(&s);
            }
            monitor.created(ring, &pair.lcm, &s)?;
            let mut top = pair.lcm.degree().max(s.total_degree());
            let mut lead_max = 0;
            let r = ring.reduce_with(
                &s,
                |m| {
                    let i = basis.find_reducer(m)?;
                    lead_max = lead_max.max(m.degree());
                    Some(basis.get(i))
                },
                field_mode,
            );
            if lead_max > 0 {
                monitor.created_degree(lead_max, || format!("reducer multiple while reducing {}", ring.to_string(&s)))?;
            }
            top = top.max(lead_max);
            trace.max_degree = trace.max_degree.max(top);
            if r.is_zero() {
                trace.zero_reductions += 1;
            } else {
                new.push(ring.monic(r));
            }
        }
        Ok(new)
    }
}

/// Gröbner basis by Buchberger's algorithm, one pair per round.
pub fn buchberger_gb(
    ring: &PolyRing,
    inputs: &[Polynomial],
    config: &EngineConfig,
    sink: &mut dyn TraceSink,
) -> Result<EngineReport, EngineError> {
    let opts = SessionOptions {
        field_mode: config.adjoin_field_eqs,
        adjoin: config.adjoin_field_eqs,
        middle_solving: config.middle_solving,
        criteria: config.criteria,
        max_rounds: config.max_rounds,
        batch: false,
        execution: config.execution,
    };
    Session::new(ring, opts).run(inputs, &mut PairReducer, sink)
}
