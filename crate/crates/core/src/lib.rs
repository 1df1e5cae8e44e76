//! Gröbner bases over prime fields GF(q) with Middle-Solving: while a
//! basis is being computed, univariate members with a single root are
//! solved and substituted back, and a nonzero constant ends the run early.
//!
//! Three engines share one loop: [`buchberger`] (one pair per round),
//! [`f4`] (one degree batch per round via Gaussian elimination) and
//! [`incremental`] (one input per round). [`systems`] holds benchmark
//! generators, the text format and a brute-force oracle.

pub mod buchberger;
pub mod cli;
pub mod engine;
pub mod f4;
pub mod gf;
pub mod incremental;
pub mod midsolve;
pub mod mpoly;
pub mod par;
pub mod systems;

pub use engine::{run, EngineConfig, EngineKind, EngineReport, Status};
pub use gf::Field;
pub use mpoly::{Monomial, MonomialOrder, PolyRing, Polynomial};
