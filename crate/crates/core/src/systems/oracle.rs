//! Exhaustive search over GF(q)^n. Evaluation here is deliberately
//! self-contained (plain `u64` arithmetic, powers by repeated
//! multiplication) so it shares no code with the reduction machinery it
//! is used to check.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::gf::Elem;
use crate::mpoly::{PolyRing, Polynomial};
use crate::par::{self, Execution};

/// Largest search space enumerated.
pub const MAX_POINTS: u64 = 1 << 24;

const CHUNK: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search space {q}^{n} exceeds {MAX_POINTS} points")]
    TooLarge { q: u64, n: usize },
}

/// Number of points in GF(q)^n if enumerable.
pub fn search_space(q: u64, n: usize) -> Option<u64> {
    let mut total: u64 = 1;
    for _ in 0..n {
        total = total.checked_mul(q).filter(|&t| t <= MAX_POINTS)?;
    }
    Some(total)
}

struct Flat {
    q: u64,
    /// Per polynomial: `(coefficient, exponent vector)` terms.
    polys: Vec<Vec<(u64, Vec<u32>)>>,
}

impl Flat {
    fn vanishes_at(&self, point: &[u64]) -> bool {
        let q = self.q;
        self.polys.iter().all(|terms| {
            let mut acc = 0u64;
            for (c, exps) in terms {
                let mut v = *c % q;
                for (&x, &e) in point.iter().zip(exps) {
                    for _ in 0..e {
                        v = v * x % q;
                    }
                    if v == 0 {
                        break;
                    }
                }
                acc = (acc + v) % q;
            }
            acc == 0
        })
    }
}

/// Every common zero of `polys` in GF(q)^n, as value vectors indexed by
/// variable.
pub fn brute_force_solutions(
    polys: &[Polynomial],
    ring: &PolyRing,
    exec: Execution,
) -> Result<BTreeSet<Vec<Elem>>, OracleError> {
    let q = ring.field().q() as u64;
    let n = ring.nvars();
    let total = search_space(q, n).ok_or(OracleError::TooLarge { q, n })?;
    let flat = Flat {
        q,
        polys: polys
            .iter()
            .map(|p| p.terms().iter().map(|t| (t.coeff as u64, t.mono.exps().to_vec())).collect())
            .collect(),
    };
    let chunks = total.div_ceil(CHUNK) as usize;
    let found = par::map_range(exec, chunks, |k| {
        let start = k as u64 * CHUNK;
        let end = (start + CHUNK).min(total);
        let mut point = vec![0u64; n];
        let mut out = Vec::new();
        for idx in start..end {
            // x1 is the most significant digit
            let mut rest = idx;
            for slot in point.iter_mut().rev() {
                *slot = rest % q;
                rest /= q;
            }
            if flat.vanishes_at(&point) {
                out.push(point.iter().map(|&v| v as Elem).collect::<Vec<Elem>>());
            }
        }
        out
    });
    Ok(found.into_iter().flatten().collect())
}
