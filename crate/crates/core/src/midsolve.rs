//! Middle-Solving: spot univariate members with exactly one root in GF(q),
//! fix those variables, substitute them everywhere, and notice as early as
//! possible when the system has no solution.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::engine::SolveEvent;
use crate::gf::Elem;
use crate::mpoly::{MonomialOrder, PolyRing, Polynomial};

/// A solved variable; identical in shape to the event it is reported as.
pub type Assignment = SolveEvent;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MidsolveError {
    /// Two members force different values on one variable, so the ideal is
    /// the unit ideal.
    #[error("conflicting unique roots for variable {0}")]
    ConflictingRoots(usize),
    #[error("triangular shape is only defined for lex bases")]
    OrderNotLex,
}

/// Every member of `batch` that is univariate with a unique root yields an
/// assignment, in batch order, one per variable.
pub fn find_unique_root_polys(
    batch: &[Polynomial],
    ring: &PolyRing,
    round: usize,
) -> Result<Vec<Assignment>, MidsolveError> {
    let mut found: Vec<Assignment> = Vec::new();
    for p in batch {
        let Some(var) = p.is_univariate() else { continue };
        let roots = ring.univariate_roots(p, var).expect("univariate and nonzero");
        if let [value] = roots[..] {
            match found.iter().find(|a| a.var == var) {
                Some(a) if a.value != value => return Err(MidsolveError::ConflictingRoots(var)),
                Some(_) => {}
                None => found.push(Assignment { round, var, value }),
            }
        }
    }
    Ok(found)
}

/// True iff some member is a nonzero constant.
pub fn inconsistency_check(polys: &[Polynomial]) -> bool {
    polys.iter().any(|p| p.is_constant())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Renewed {
    /// Interreduced survivors, followed by the untouched vanishing
    /// polynomials of unsolved variables. `{1}` when inconsistent.
    pub polys: Vec<Polynomial>,
    pub inconsistent: bool,
}

/// Substitute every assignment into `polys`, drop what vanishes and
/// interreduce the rest. With `field_mode` reduction is taken modulo the
/// vanishing polynomials, which pass through unchanged unless their
/// variable has been solved.
pub fn renew(
    ring: &PolyRing,
    polys: impl IntoIterator<Item = Polynomial>,
    assignments: &BTreeMap<usize, Elem>,
    field_mode: bool,
) -> Renewed {
    let mut rest = Vec::new();
    let mut field_polys = Vec::new();
    for p in polys {
        if field_mode {
            if let Some(var) = ring.as_field_polynomial(&p) {
                if !assignments.contains_key(&var) && !field_polys.contains(&p) {
                    field_polys.push(p);
                }
                continue;
            }
        }
        let mut s = assignments.iter().fold(p, |acc, (&v, &a)| ring.substitute(&acc, v, a));
        if field_mode {
            s = ring.field_reduce(&s);
        }
        if s.is_zero() {
            continue;
        }
        if s.is_constant() {
            return Renewed { polys: vec![ring.one()], inconsistent: true };
        }
        rest.push(s);
    }
    let mut out = ring.interreduce_with(rest, field_mode);
    if inconsistency_check(&out) {
        return Renewed { polys: out, inconsistent: true };
    }
    out.extend(field_polys);
    Renewed { polys: out, inconsistent: false }
}

/// Whether a lex basis has the triangular shape
/// `g(x_n), ..., g(x_k, ..., x_n), ..., g(x_1, ..., x_n)`: every variable
/// leads some member with a pure power, and each member involves only its
/// leading variable and lesser ones. `{1}` counts as triangular.
pub fn triangular_shape_check(g: &[Polynomial], ring: &PolyRing) -> Result<bool, MidsolveError> {
    if ring.order() != MonomialOrder::Lex {
        return Err(MidsolveError::OrderNotLex);
    }
    if g.len() == 1 && g[0].is_constant() {
        return Ok(true);
    }
    if g.iter().any(|p| p.is_zero() || p.is_constant()) {
        return Ok(false);
    }
    let mut led = vec![false; ring.nvars()];
    for p in g {
        let lead = p.support()[0];
        if p.lm().exp(lead) == 0 {
            return Ok(false);
        }
        if let Some(v) = p.lm().pure_power_var() {
            led[v] = true;
        }
    }
    Ok(led.into_iter().all(|b| b))
}

/// The exact zero set of `g` in GF(q)^n, found by assigning variables from
/// the least (`x_n`) upwards and checking each member once all of its
/// variables are fixed. For a lex basis of a zero-dimensional ideal every
/// level prunes to the actual solutions.
pub fn variety_from_lex_basis(g: &[Polynomial], ring: &PolyRing) -> BTreeSet<Vec<Elem>> {
    let n = ring.nvars();
    let mut out = BTreeSet::new();
    if g.iter().any(|p| p.is_constant()) {
        return out;
    }
    // members grouped by their greatest variable
    let mut levels: Vec<Vec<&Polynomial>> = vec![Vec::new(); n];
    for p in g.iter().filter(|p| !p.is_zero()) {
        levels[p.support()[0]].push(p);
    }
    let mut point = vec![0; n];
    descend(ring, &levels, n, &mut point, &mut out);
    out
}

fn descend(
    ring: &PolyRing,
    levels: &[Vec<&Polynomial>],
    k: usize,
    point: &mut Vec<Elem>,
    out: &mut BTreeSet<Vec<Elem>>,
) {
    if k == 0 {
        out.insert(point.clone());
        return;
    }
    let var = k - 1;
    for a in ring.field().elements() {
        point[var] = a;
        if levels[var].iter().all(|p| ring.eval(p, point) == 0) {
            descend(ring, levels, var, point, out);
        }
    }
    point[var] = 0;
}
