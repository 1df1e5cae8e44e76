//! Benchmark systems, the text file format, and the exhaustive-search oracle.

mod generators;
mod oracle;
mod parse;

pub use generators::{gen_system, homogenize, BenchSpec, Family, GenError};
pub use oracle::{brute_force_solutions, search_space, OracleError, MAX_POINTS};
pub use parse::{parse_system, print_system, ParseError};
