//! Shared corpus for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use gbsolve::engine::{self, EngineConfig, EngineKind, EngineReport, MemorySink};
use gbsolve::gf::{Elem, Field};
use gbsolve::mpoly::{Monomial, MonomialOrder, PolyRing, Polynomial, Term};
use gbsolve::par::Execution;
use gbsolve::systems::{brute_force_solutions, gen_system, BenchSpec, Family};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct Case {
    pub name: String,
    pub ring: PolyRing,
    pub polys: Vec<Polynomial>,
}

impl Case {
    pub fn n(&self) -> usize {
        self.ring.nvars()
    }

    pub fn q(&self) -> u64 {
        self.ring.field().q() as u64
    }

    pub fn with_order(&self, order: MonomialOrder) -> Case {
        let ring = self.ring.with_order(order);
        let polys = self.polys.iter().map(|p| ring.normalize(p.terms().to_vec())).collect();
        Case { name: self.name.clone(), ring, polys }
    }

    pub fn solutions(&self) -> BTreeSet<Vec<Elem>> {
        brute_force_solutions(&self.polys, &self.ring, Execution::Parallel).expect("small enough")
    }

    pub fn run(&self, config: &EngineConfig) -> EngineReport {
        engine::run(&self.ring, &self.polys, config, &mut MemorySink::default())
            .unwrap_or_else(|e| panic!("{}: {e}", self.name))
    }

    pub fn run_traced(&self, config: &EngineConfig) -> (EngineReport, String) {
        let mut sink = MemorySink::default();
        let rep = engine::run(&self.ring, &self.polys, config, &mut sink)
            .unwrap_or_else(|e| panic!("{}: {e}", self.name));
        (rep, sink.text())
    }
}

/// Random system in `n` variables. Monomials have total degree at most
/// `max_deg`; with `plant` the constant terms are adjusted so a random point
/// is a common zero.
pub fn random_system(seed: u64, q: u64, n: usize, m: usize, max_deg: u32, plant: bool) -> Case {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = Field::new(q).unwrap();
    let ring = PolyRing::with_indexed_vars(field, n, MonomialOrder::Grevlex);
    let point: Vec<u64> = (0..n).map(|_| rng.gen_range(0..q)).collect();
    let polys = (0..m)
        .map(|_| {
            let nterms = rng.gen_range(1..=5);
            let mut terms: Vec<Term> = (0..nterms)
                .map(|_| {
                    let deg = rng.gen_range(0..=max_deg);
                    let mut e = vec![0u32; n];
                    for _ in 0..deg {
                        e[rng.gen_range(0..n)] += 1;
                    }
                    Term::new(rng.gen_range(1..q) as Elem, Monomial::from_exps(e))
                })
                .collect();
            if plant {
                let v = terms.iter().fold(0u64, |acc, t| {
                    let mut x = t.coeff as u64;
                    for (i, &e) in t.mono.exps().iter().enumerate() {
                        for _ in 0..e {
                            x = x * point[i] % q;
                        }
                    }
                    (acc + x) % q
                });
                terms.push(Term::new(((q - v) % q) as Elem, Monomial::one(n)));
            }
            ring.normalize(terms)
        })
        .filter(|p| !p.is_zero())
        .collect();
    let name = format!("rand-q{q}-n{n}-m{m}-d{max_deg}-s{seed}{}", if plant { "-planted" } else { "" });
    Case { name, ring, polys }
}

pub fn generated(family: Family, n: usize, q: u64) -> Case {
    let spec = BenchSpec::new(family, n, q);
    let (ring, polys) = gen_system(&spec, MonomialOrder::Grevlex).unwrap();
    Case { name: format!("{family}-{n}-q{q}"), ring, polys }
}

/// 60 random GF(2) systems (n <= 6, m <= 8, degree <= 3), half with a
/// planted zero.
pub fn random_binary() -> Vec<Case> {
    (0..60u64)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(0x6172_0000 + i);
            let n = rng.gen_range(2..=6);
            let m = rng.gen_range(1..=8);
            let d = rng.gen_range(1..=3);
            random_system(1000 + i, 2, n, m, d, i % 2 == 0)
        })
        .collect()
}

/// Small random GF(3) and GF(5) systems.
pub fn random_odd() -> Vec<Case> {
    (0..16u64)
        .map(|i| {
            let q = if i % 4 == 3 { 5 } else { 3 };
            let n = 2 + (i as usize % 3);
            random_system(5000 + i, q, n, 2 + (i as usize % 3), 2, i % 2 == 0)
        })
        .collect()
}

/// Cyclic, Katsura and Eco with at most six variables over GF(2), plus a
/// few over GF(3).
pub fn benchmarks() -> Vec<Case> {
    let mut out = Vec::new();
    for n in 2..=6 {
        out.push(generated(Family::Cyclic, n, 2));
    }
    for n in 1..=5 {
        out.push(generated(Family::Katsura, n, 2));
    }
    for n in 3..=6 {
        out.push(generated(Family::Eco, n, 2));
    }
    out.push(generated(Family::Cyclic, 3, 3));
    out.push(generated(Family::Katsura, 2, 3));
    out.push(generated(Family::Eco, 3, 3));
    out.push(generated(Family::Eco, 4, 3));
    out
}

/// The full corpus.
pub fn corpus() -> Vec<Case> {
    let mut out = random_binary();
    out.extend(random_odd());
    out.extend(benchmarks());
    out
}

/// Larger GF(2) systems (up to 12 variables) for the solve-event checks.
pub fn wide_binary() -> Vec<Case> {
    let mut out: Vec<Case> = (7..=12).map(|n| generated(Family::Eco, n, 2)).collect();
    out.push(generated(Family::Cyclic, 7, 2));
    out.push(generated(Family::Katsura, 7, 2));
    for (k, n) in (7..=12).enumerate() {
        out.push(random_system(9000 + k as u64, 2, n, n + 2, 2, true));
    }
    out
}

pub fn config(kind: EngineKind, ms: bool) -> EngineConfig {
    EngineConfig::new(kind).middle_solving(ms)
}

/// Every S-polynomial of `g` reduces to zero modulo `g`.
pub fn is_groebner(ring: &PolyRing, g: &[Polynomial]) -> bool {
    g.iter().enumerate().all(|(i, a)| {
        g[i + 1..]
            .iter()
            .all(|b| ring.normal_form(&ring.spoly(a, b).expect("nonzero"), g).is_zero())
    })
}

/// Every input and every vanishing polynomial reduces to zero modulo `g`.
pub fn generates_inputs(ring: &PolyRing, inputs: &[Polynomial], g: &[Polynomial]) -> bool {
    engine::adjoin_field_equations(ring, inputs).iter().all(|p| ring.normal_form(p, g).is_zero())
}
