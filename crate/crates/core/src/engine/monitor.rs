use std::fmt;

use serde::{Deserialize, Serialize};

use super::{EngineError, RunStats};
use crate::mpoly::{Monomial, PolyRing, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    /// S-polynomial halves and reducer multiples as they are formed.
    Created,
    /// Basis members after full reduction.
    Stored,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Created => "created",
            Stage::Stored => "stored",
        })
    }
}

/// Degree bounds that hold once the vanishing polynomials of GF(q) are in
/// the ideal: formed polynomials stay within `n(q-1)+1`, stored ones within
/// `n(q-1)` with no leading exponent above `q`.
///
/// A disabled monitor only tracks maxima.
#[derive(Debug, Clone)]
pub struct DegreeMonitor {
    enabled: bool,
    n: u32,
    q: u32,
    pub(crate) stats: RunStats,
}

impl DegreeMonitor {
    pub fn new(ring: &PolyRing, enabled: bool) -> Self {
        DegreeMonitor { enabled, n: ring.nvars() as u32, q: ring.field().q(), stats: RunStats::default() }
    }

    pub fn enabled(&self) -> bool {
        self.enabled
    }

    pub fn bound(&self, stage: Stage) -> u32 {
        match stage {
            Stage::Created => self.n * (self.q - 1) + 1,
            Stage::Stored => self.n * (self.q - 1),
        }
    }

    pub fn stats(&self) -> &RunStats {
        &self.stats
    }

    /// Check a polynomial as it is formed. `lead` is the product monomial
    /// `m * LM(g)` before field reduction; `p` is the row actually kept.
    pub fn created(&mut self, ring: &PolyRing, lead: &Monomial, p: &Polynomial) -> Result<(), EngineError> {
        let degree = lead.degree().max(p.total_degree());
        self.created_degree(degree, || ring.to_string(p))
    }

    /// Created-stage check when only the degree is at hand; `describe`
    /// renders the offender for the diagnostic.
    pub fn created_degree(&mut self, degree: u32, describe: impl FnOnce() -> String) -> Result<(), EngineError> {
        self.stats.created_checks += 1;
        self.stats.max_created_degree = self.stats.max_created_degree.max(degree);
        let bound = self.bound(Stage::Created);
        if self.enabled && degree > bound {
            return Err(EngineError::BoundViolation { stage: Stage::Created, degree, bound, poly: describe() });
        }
        Ok(())
    }

    /// Check a basis member about to be stored. Field polynomials are exempt
    /// from the total-degree bound but not from the exponent bound.
    pub fn stored(&mut self, ring: &PolyRing, p: &Polynomial, is_field_poly: bool) -> Result<(), EngineError> {
        if p.is_zero() {
            return Ok(());
        }
        self.stats.stored_checks += 1;
        let max_exp = p.lm().exps().iter().copied().max().unwrap_or(0);
        if self.enabled && max_exp > self.q {
            return Err(EngineError::BoundViolation {
                stage: Stage::Stored,
                degree: max_exp,
                bound: self.q,
                poly: ring.to_string(p),
            });
        }
        if is_field_poly {
            return Ok(());
        }
        let degree = p.total_degree();
        self.stats.max_stored_degree = self.stats.max_stored_degree.max(degree);
        self.enforce(ring, Stage::Stored, degree, p)
    }

    fn enforce(&self, ring: &PolyRing, stage: Stage, degree: u32, p: &Polynomial) -> Result<(), EngineError> {
        let bound = self.bound(stage);
        if self.enabled && degree > bound {
            return Err(EngineError::BoundViolation { stage, degree, bound, poly: ring.to_string(p) });
        }
        Ok(())
    }
}
