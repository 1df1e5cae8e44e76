//! F4: every minimal-degree pair of a round is reduced at once by Gaussian
//! elimination on a Macaulay matrix.
//!
//! With field equations adjoined every row is field-reduced when formed.
//! A row `m * g` whose leading monomial survives that reduction unchanged is
//! *genuine*; only genuine leading monomials count as already covered, so
//! the new polynomials of a round are the echelon rows whose pivot is not a
//! genuine leading monomial.

mod matrix;

use std::collections::{HashSet, VecDeque};

pub use matrix::MacaulayMatrix;

use crate::engine::{
    BasisIndex, CriticalPair, DegreeMonitor, EngineConfig, EngineError, EngineReport, Round, RoundReducer, Session,
    SessionOptions, TemporaryBasis, TraceSink,
};
use crate::mpoly::{Monomial, PolyRing, Polynomial};
use crate::par::Execution;

/// Rows of one round before elimination.
#[derive(Debug, Clone)]
pub struct Preprocessed {
    /// S-polynomial halves first, then reducer multiples in discovery order.
    pub rows: Vec<Polynomial>,
    /// Leading monomials of genuine rows.
    pub covered: HashSet<Monomial>,
    /// Products that vanished under field reduction.
    pub zero_rows: usize,
    pub max_degree: u32,
}

struct Builder<'a> {
    ring: &'a PolyRing,
    basis: &'a TemporaryBasis,
    monitor: &'a mut DegreeMonitor,
    field_mode: bool,
    seen: HashSet<(BasisIndex, Monomial)>,
    out: Preprocessed,
    todo: VecDeque<Monomial>,
}

impl Builder<'_> {
    fn add(&mut self, idx: BasisIndex, m: Monomial) -> Result<(), EngineError> {
        if !self.seen.insert((idx, m.clone())) {
            return Ok(());
        }
        let g = self.basis.get(idx);
        let lead = m.mul(g.lm());
        let inv = self.ring.field().inv(g.lc()).expect("nonzero");
        let mut row = self.ring.mul_term(g, inv, &m);
        if self.field_mode {
            row = self.ring.field_reduce(&row);
        }
        self.monitor.created(self.ring, &lead, &row)?;
        self.out.max_degree = self.out.max_degree.max(lead.degree()).max(row.total_degree());
        if row.is_zero() {
            self.out.zero_rows += 1;
            return Ok(());
        }
        if *row.lm() == lead {
            self.out.covered.insert(lead);
        }
        self.todo.extend(row.terms().iter().map(|t| t.mono.clone()));
        self.out.rows.push(row);
        Ok(())
    }
}

/// Build the rows for `pairs`: both halves of every S-polynomial, then one
/// reducer multiple for each reducible monomial not yet covered, until
/// closed. Reducers are the first active basis element, in insertion order,
/// whose leading monomial divides.
pub fn symbolic_preprocess(
    ring: &PolyRing,
    pairs: &[CriticalPair],
    basis: &TemporaryBasis,
    field_mode: bool,
) -> Result<Preprocessed, EngineError> {
    let mut monitor = DegreeMonitor::new(ring, false);
    preprocess(ring, pairs, basis, &mut monitor, field_mode)
}

fn preprocess(
    ring: &PolyRing,
    pairs: &[CriticalPair],
    basis: &TemporaryBasis,
    monitor: &mut DegreeMonitor,
    field_mode: bool,
) -> Result<Preprocessed, EngineError> {
    if pairs.is_empty() {
        return Err(EngineError::EmptyBatch);
    }
    let mut b = Builder {
        ring,
        basis,
        monitor,
        field_mode,
        seen: HashSet::new(),
        out: Preprocessed { rows: Vec::new(), covered: HashSet::new(), zero_rows: 0, max_degree: 0 },
        todo: VecDeque::new(),
    };
    for pair in pairs {
        for idx in [pair.left, pair.right] {
            let m = pair.lcm.divide(basis.get(idx).lm()).expect("lm divides lcm");
            b.add(idx, m)?;
        }
    }
    let mut done: HashSet<Monomial> = HashSet::new();
    while let Some(m) = b.todo.pop_front() {
        if b.out.covered.contains(&m) || !done.insert(m.clone()) {
            continue;
        }
        if let Some(i) = basis.find_reducer(&m) {
            let q = m.divide(basis.get(i).lm()).expect("reducer divides");
            b.add(i, q)?;
        }
    }
    Ok(b.out)
}

pub(crate) struct MatrixReducer;

impl RoundReducer for MatrixReducer {
    fn reduce(&mut self, round: Round<'_>, pairs: &[CriticalPair]) -> Result<Vec<Polynomial>, EngineError> {
        let Round { ring, basis, monitor, field_mode, execution, trace } = round;
        let pre = preprocess(ring, pairs, basis, monitor, field_mode)?;
        let (new, shape, zeros) = eliminate(ring, &pre, execution);
        trace.matrix = Some(shape);
        trace.zero_reductions += pre.zero_rows + zeros;
        trace.max_degree = trace.max_degree.max(pre.max_degree);
        Ok(new)
    }
}

/// Echelonise the preprocessed rows; returns the new polynomials, the
/// matrix shape and the number of rows that reduced to zero.
pub(crate) fn eliminate(ring: &PolyRing, pre: &Preprocessed, exec: Execution) -> (Vec<Polynomial>, (usize, usize), usize) {
    let mut m = MacaulayMatrix::from_polys(ring, &pre.rows);
    let shape = (m.nrows(), m.ncols());
    let pivots = m.reduce(exec);
    let new = pivots
        .iter()
        .filter(|(c, _)| !pre.covered.contains(&m.columns()[*c]))
        .map(|&(_, r)| m.row_poly(r))
        .collect();
    (new, shape, shape.0 - pivots.len())
}

/// Gröbner basis by F4, one minimal-degree batch per round.
pub fn f4_gb(
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
        batch: true,
        execution: config.execution,
    };
    Session::new(ring, opts).run(inputs, &mut MatrixReducer, sink)
}
