//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always printed; exits nonzero if any
//! criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::{config, Case};
use gbsolve::cli::{self, Args};
use gbsolve::engine::trace::{parse_trace, EventKind, TraceLine};
use gbsolve::engine::{self, EngineError, EngineKind, MemorySink, Status};
use gbsolve::midsolve;
use gbsolve::mpoly::MonomialOrder;
use gbsolve::systems::{search_space, Family};

use clap::Parser;

/// Criterion 1 runtime budget.
const CORRECTNESS_BUDGET: Duration = Duration::from_secs(120);
/// Exhaustive comparison of zero sets is done up to this many points.
const ORACLE_POINTS: u64 = 1 << 20;
/// Degree-bound violations tolerated across the corpus.
const MAX_VIOLATIONS: usize = 0;
/// Eco sizes for the early-information and round-limit criteria.
const ECO_SIZES: std::ops::RangeInclusive<usize> = 6..=10;

const ENGINES: [EngineKind; 3] = [EngineKind::Buchberger, EngineKind::F4, EngineKind::Incremental];

type Verdict = Result<String, String>;
type Check<'a> = (&'a str, Box<dyn Fn() -> Verdict + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn groebner_correctness(corpus: &[Case]) -> Verdict {
    let start = Instant::now();
    let mut checked = 0;
    for case in corpus {
        for ms in [false, true] {
            let f4 = case.run(&config(EngineKind::F4, ms));
            let bb = case.run(&config(EngineKind::Buchberger, ms));
            for (name, rep) in [("f4", &f4), ("buchberger", &bb)] {
                ensure(common::is_groebner(&case.ring, &rep.basis), || {
                    format!("{}: {name} output fails the S-polynomial test (ms={ms})", case.name)
                })?;
                ensure(common::generates_inputs(&case.ring, &case.polys, &rep.basis), || {
                    format!("{}: an input does not reduce to zero by the {name} output (ms={ms})", case.name)
                })?;
            }
            let a = case.ring.interreduce(f4.basis.clone());
            let b = case.ring.interreduce(bb.basis.clone());
            ensure(a == b, || format!("{}: buchberger and f4 bases differ (ms={ms})", case.name))?;
            checked += 1;
        }
    }
    let spent = start.elapsed();
    ensure(spent <= CORRECTNESS_BUDGET, || format!("took {spent:.1?}, budget {CORRECTNESS_BUDGET:?}"))?;
    Ok(format!("{checked} system/strategy combinations, {spent:.1?}"))
}

fn oracle_equivalence(corpus: &[Case]) -> Verdict {
    let mut compared = 0;
    let mut unsat = 0;
    for case in corpus.iter().filter(|c| search_space(c.q(), c.n()).is_some_and(|s| s <= ORACLE_POINTS)) {
        let lex = case.with_order(MonomialOrder::Lex);
        let sols = lex.solutions();
        let rep = lex.run(&config(EngineKind::F4, false));
        let variety = midsolve::variety_from_lex_basis(&rep.basis, &lex.ring);
        ensure(variety == sols, || {
            format!("{}: lex basis has {} zeros, exhaustive search {}", case.name, variety.len(), sols.len())
        })?;
        compared += 1;
        if sols.is_empty() {
            unsat += 1;
            for kind in ENGINES {
                let rep = lex.run(&config(kind, true));
                ensure(rep.status == Status::Inconsistent, || {
                    format!("{}: unsatisfiable but {kind} returned {}", case.name, rep.status)
                })?;
            }
        }
    }
    Ok(format!("{compared} zero sets identical, {unsat} unsatisfiable systems reported Inconsistent"))
}

fn degree_bound(corpus: &[Case]) -> Verdict {
    let mut violations: Vec<String> = Vec::new();
    let mut runs = 0;
    let mut checks = 0;
    for case in corpus {
        let (n, q) = (case.n() as u32, case.q() as u32);
        let created = n * (q - 1) + 1;
        let stored = n * (q - 1);
        for kind in ENGINES {
            for ms in [false, true] {
                runs += 1;
                let cfg = config(kind, ms);
                match engine::run(&case.ring, &case.polys, &cfg, &mut MemorySink::default()) {
                    Err(e @ EngineError::BoundViolation { .. }) => violations.push(format!("{}: {e}", case.name)),
                    Err(e) => return Err(format!("{}: {e}", case.name)),
                    Ok(rep) => {
                        checks += rep.stats.created_checks + rep.stats.stored_checks;
                        if rep.stats.max_created_degree > created {
                            violations.push(format!("{}: created degree {}", case.name, rep.stats.max_created_degree));
                        }
                        if rep.stats.max_stored_degree > stored {
                            violations.push(format!("{}: stored degree {}", case.name, rep.stats.max_stored_degree));
                        }
                        for p in rep.basis.iter().filter(|p| case.ring.as_field_polynomial(p).is_none()) {
                            if p.total_degree() > stored {
                                violations.push(format!("{}: output degree {}", case.name, p.total_degree()));
                            }
                        }
                    }
                }
            }
        }
    }
    ensure(violations.len() == MAX_VIOLATIONS, || {
        format!("{} violations, first: {}", violations.len(), violations[0])
    })?;
    Ok(format!("{runs} runs, {checks} checked polynomials, 0 violations"))
}

fn solve_soundness(cases: &[Case]) -> Verdict {
    let mut events = 0;
    let mut systems = 0;
    for case in cases.iter().filter(|c| c.q() == 2 && c.n() <= 12) {
        let sols = case.solutions();
        if sols.is_empty() {
            continue;
        }
        systems += 1;
        for kind in ENGINES {
            let rep = case.run(&config(kind, true));
            let mut seen = BTreeSet::new();
            for ev in &rep.events {
                ensure(seen.insert(ev.var), || format!("{}: {kind} solved variable {} twice", case.name, ev.var))?;
                ensure(sols.iter().all(|s| s[ev.var] == ev.value), || {
                    format!(
                        "{}: {kind} set {}={} at round {}, contradicted by a solution",
                        case.name,
                        case.ring.var_name(ev.var),
                        ev.value,
                        ev.round
                    )
                })?;
                events += 1;
            }
        }
    }
    Ok(format!("{events} events on {systems} satisfiable systems, all sound"))
}

fn early_information() -> Verdict {
    let mut rows = Vec::new();
    for n in ECO_SIZES {
        let case = common::generated(Family::Eco, n, 2);
        let on = case.run(&config(EngineKind::F4, true));
        let off = case.run(&config(EngineKind::F4, false));
        let first = on.first_event_round().ok_or_else(|| format!("eco-{n}: no solve event"))?;
        ensure(first < off.total_rounds(), || {
            format!("eco-{n}: first event at round {first}, plain F4 done in {}", off.total_rounds())
        })?;
        ensure(on.total_rounds() <= off.total_rounds(), || {
            format!("eco-{n}: {} rounds with the strategy, {} without", on.total_rounds(), off.total_rounds())
        })?;
        let tuples: Vec<String> = on.solve_tuples().iter().map(|(r, s)| format!("({r},{s})")).collect();
        rows.push(format!("eco{n} {}/{} {}", on.total_rounds(), off.total_rounds(), tuples.join("")));
    }
    Ok(rows.join("; "))
}

/// Run the command-line driver with a trace file; returns the status and
/// the trace text.
fn cli_run(line: &str, dir: &tempfile::TempDir, tag: &str) -> Result<(Status, String), String> {
    let path = dir.path().join(format!("{tag}.jsonl"));
    let argv = format!("gbsolve {line} --trace {}", path.display());
    let args = Args::try_parse_from(argv.split_whitespace()).map_err(|e| e.to_string())?;
    let status = cli::run_cli(&args, &mut std::io::sink()).map_err(|e| e.to_string())?;
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    Ok((status, text))
}

fn round_limit_leakage() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut leaked = 0;
    for n in ECO_SIZES {
        let case = common::generated(Family::Eco, n, 2);
        let plain = case.run(&config(EngineKind::F4, false)).total_rounds();
        let first = case.run(&config(EngineKind::F4, true)).first_event_round().unwrap_or(plain);
        for limit in [first, plain - 1] {
            ensure(limit < plain, || format!("eco-{n}: limit {limit} not below {plain}"))?;
            let base = format!("--gen eco --n {n} --field 2 --engine f4 --order grevlex --max-rounds {limit}");
            let (on_status, on_text) = cli_run(&format!("{base} --middle-solving"), &dir, &format!("on{n}-{limit}"))?;
            let (off_status, off_text) = cli_run(&format!("{base} --no-middle-solving"), &dir, &format!("off{n}-{limit}"))?;
            ensure(off_status == Status::RoundLimit, || format!("eco-{n}: plain run under limit {limit} ended {off_status}"))?;

            // a killed run leaves everything but the final record
            let lines: Vec<&str> = on_text.lines().collect();
            let partial = lines[..lines.len() - 1].join("\n");
            let parsed = parse_trace(&partial).map_err(|e| format!("eco-{n}: partial trace unparseable: {e}"))?;
            let solved = parsed
                .iter()
                .filter(|l| matches!(l, TraceLine::Event(e) if e.kind == EventKind::Solved))
                .count();
            ensure(solved > 0, || format!("eco-{n}: no solve events within {limit} rounds ({on_status})"))?;
            leaked += solved;

            let off = parse_trace(&off_text).map_err(|e| format!("eco-{n}: plain trace unparseable: {e}"))?;
            for line in &off {
                match line {
                    TraceLine::Event(_) => return Err(format!("eco-{n}: plain run emitted an event")),
                    TraceLine::Final(f) => ensure(f.assignments.is_empty(), || {
                        format!("eco-{n}: plain run reported {} assignments", f.assignments.len())
                    })?,
                    TraceLine::Round(_) => {}
                }
            }
        }
    }
    Ok(format!("{leaked} solve events recovered from truncated traces; plain runs leaked none"))
}

fn incremental_agreement(corpus: &[Case]) -> Verdict {
    let mut compared = 0;
    for case in corpus {
        for ms in [false, true] {
            let inc = case.run(&config(EngineKind::Incremental, ms));
            let f4 = case.run(&config(EngineKind::F4, ms));
            ensure(inc.status == f4.status, || {
                format!("{}: status {} vs {} (ms={ms})", case.name, inc.status, f4.status)
            })?;
            ensure(inc.assignments == f4.assignments, || format!("{}: assignments differ (ms={ms})", case.name))?;
            ensure(case.ring.interreduce(inc.basis) == case.ring.interreduce(f4.basis), || {
                format!("{}: bases differ (ms={ms})", case.name)
            })?;
            compared += 1;
        }
    }
    Ok(format!("{compared} system/strategy combinations agree"))
}

fn triangular_shape(corpus: &[Case]) -> Verdict {
    let mut checked = 0;
    for case in corpus {
        let lex = case.with_order(MonomialOrder::Lex);
        let rep = lex.run(&config(EngineKind::F4, false));
        if rep.basis.iter().any(|p| p.is_constant()) {
            continue;
        }
        let ok = midsolve::triangular_shape_check(&rep.basis, &lex.ring).map_err(|e| e.to_string())?;
        ensure(ok, || format!("{}: reduced lex basis is not triangular", case.name))?;
        checked += 1;
    }
    Ok(format!("{checked} satisfiable lex bases triangular"))
}

fn determinism(corpus: &[Case]) -> Verdict {
    let mut runs = 0;
    for case in corpus {
        for kind in ENGINES {
            for ms in [false, true] {
                let cfg = config(kind, ms);
                let (_, a) = case.run_traced(&cfg);
                let (_, b) = case.run_traced(&cfg);
                ensure(a == b, || format!("{}: {kind} traces differ between runs (ms={ms})", case.name))?;
                let (_, s) = case.run_traced(&cfg.clone().execution(gbsolve::par::Execution::Sequential));
                ensure(a == s, || format!("{}: {kind} sequential trace differs (ms={ms})", case.name))?;
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} configurations byte-identical across repeats and execution modes"))
}

fn main() {
    let corpus = common::corpus();
    let mut wide = corpus.clone();
    wide.extend(common::wide_binary());

    let criteria: Vec<Check> = vec![
        ("Groebner correctness", Box::new(|| groebner_correctness(&corpus))),
        ("oracle equivalence", Box::new(|| oracle_equivalence(&corpus))),
        ("degree bound", Box::new(|| degree_bound(&corpus))),
        ("solve-event soundness", Box::new(|| solve_soundness(&wide))),
        ("early information", Box::new(early_information)),
        ("round-limit leakage", Box::new(round_limit_leakage)),
        ("incremental agreement", Box::new(|| incremental_agreement(&corpus))),
        ("triangular shape", Box::new(|| triangular_shape(&corpus))),
        ("determinism", Box::new(|| determinism(&corpus))),
    ];
    println!("acceptance: {} corpus systems, {} with the wide set", corpus.len(), wide.len());
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let spent = start.elapsed();
        match verdict {
            Ok(detail) => println!("PASS {} {name}: {detail} [{spent:.1?}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} [{spent:.1?}]", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
