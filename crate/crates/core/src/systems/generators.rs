use std::fmt;

use thiserror::Error;

use crate::gf::{Field, FieldError};
use crate::mpoly::{Monomial, MonomialOrder, PolyRing, Polynomial, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Cyclic,
    Katsura,
    Eco,
}

impl Family {
    pub fn min_size(self) -> usize {
        match self {
            Family::Cyclic => 2,
            Family::Katsura => 1,
            Family::Eco => 3,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Cyclic => "cyclic",
            Family::Katsura => "katsura",
            Family::Eco => "eco",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cyclic" => Ok(Family::Cyclic),
            "katsura" => Ok(Family::Katsura),
            "eco" => Ok(Family::Eco),
            other => Err(format!("unknown benchmark family `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BenchSpec {
    pub family: Family,
    pub n: usize,
    pub q: u64,
}

impl BenchSpec {
    pub fn new(family: Family, n: usize, q: u64) -> Self {
        BenchSpec { family, n, q }
    }
}

impl fmt::Display for BenchSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{} over GF({})", self.family, self.n, self.q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("{family}-{n} is not defined; size must be at least {min}")]
    InvalidSize { family: Family, n: usize, min: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Builds a polynomial from integer-coefficient terms given as variable
/// index lists (repeats allowed).
struct Sum<'a> {
    ring: &'a PolyRing,
    terms: Vec<Term>,
}

impl<'a> Sum<'a> {
    fn new(ring: &'a PolyRing) -> Self {
        Sum { ring, terms: Vec::new() }
    }

    fn add(&mut self, coeff: i64, vars: &[usize]) {
        let mut e = vec![0; self.ring.nvars()];
        for &v in vars {
            e[v] += 1;
        }
        self.terms.push(Term::new(self.ring.field().from_i64(coeff), Monomial::from_exps(e)));
    }

    fn finish(self) -> Polynomial {
        self.ring.normalize(self.terms)
    }
}

/// The named benchmark system with coefficients reduced mod q.
///
/// * Cyclic-n in `x1..xn`: the cyclic elementary sums of window length
///   `k = 1..n-1`, and `x1*...*xn - 1`.
/// * Katsura-n in `u0..un`: `u0 + 2(u1 + ... + un) - 1`, and for
///   `k = 0..n-1`, `sum_{i=-n..n} u_|i| u_|k-i| - u_k` over `|k-i| <= n`.
/// * Eco-n in `x1..xn`: `xn (x_k + sum_{i=1..n-k-1} x_i x_{i+k}) - k` for
///   `k = 1..n-1`, and `x1 + ... + x_{n-1} + 1`.
pub fn gen_system(spec: &BenchSpec, order: MonomialOrder) -> Result<(PolyRing, Vec<Polynomial>), GenError> {
    let min = spec.family.min_size();
    if spec.n < min {
        return Err(GenError::InvalidSize { family: spec.family, n: spec.n, min });
    }
    let field = Field::new(spec.q)?;
    let n = spec.n;
    let names: Vec<String> = match spec.family {
        Family::Katsura => (0..=n).map(|i| format!("u{i}")).collect(),
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    };
    let ring = PolyRing::new(field, names, order).expect("generated names are distinct");
    let polys = match spec.family {
        Family::Cyclic => cyclic(&ring, n),
        Family::Katsura => katsura(&ring, n),
        Family::Eco => eco(&ring, n),
    };
    Ok((ring, polys))
}

fn cyclic(ring: &PolyRing, n: usize) -> Vec<Polynomial> {
    let mut out = Vec::with_capacity(n);
    for k in 1..n {
        let mut s = Sum::new(ring);
        for i in 0..n {
            let window: Vec<usize> = (0..k).map(|j| (i + j) % n).collect();
            s.add(1, &window);
        }
        out.push(s.finish());
    }
    let mut last = Sum::new(ring);
    last.add(1, &(0..n).collect::<Vec<_>>());
    last.add(-1, &[]);
    out.push(last.finish());
    out
}

fn katsura(ring: &PolyRing, n: usize) -> Vec<Polynomial> {
    let n = n as i64;
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut first = Sum::new(ring);
    first.add(1, &[0]);
    for i in 1..=n {
        first.add(2, &[i as usize]);
    }
    first.add(-1, &[]);
    out.push(first.finish());
    for k in 0..n {
        let mut s = Sum::new(ring);
        for i in -n..=n {
            if (k - i).abs() <= n {
                s.add(1, &[i.unsigned_abs() as usize, (k - i).unsigned_abs() as usize]);
            }
        }
        s.add(-1, &[k as usize]);
        out.push(s.finish());
    }
    out
}

fn eco(ring: &PolyRing, n: usize) -> Vec<Polynomial> {
    let last = n - 1;
    let mut out = Vec::with_capacity(n);
    for k in 1..n {
        let mut s = Sum::new(ring);
        s.add(1, &[last, k - 1]);
        for i in 1..n - k {
            s.add(1, &[last, i - 1, i + k - 1]);
        }
        s.add(-(k as i64), &[]);
        out.push(s.finish());
    }
    let mut lin = Sum::new(ring);
    for i in 0..last {
        lin.add(1, &[i]);
    }
    lin.add(1, &[]);
    out.push(lin.finish());
    out
}

/// Homogenize with a fresh least variable (`h`, or `h0`, `h1`, ... if taken):
/// every term is padded to the polynomial's total degree.
pub fn homogenize(ring: &PolyRing, polys: &[Polynomial]) -> (PolyRing, Vec<Polynomial>) {
    let mut name = "h".to_string();
    let mut k = 0;
    while ring.var_index(&name).is_some() {
        name = format!("h{k}");
        k += 1;
    }
    let mut names = ring.var_names().to_vec();
    names.push(name);
    let hr = PolyRing::new(ring.field(), names, ring.order()).expect("fresh name");
    let out = polys
        .iter()
        .map(|p| {
            let d = p.total_degree();
            hr.normalize(
                p.terms()
                    .iter()
                    .map(|t| {
                        let mut e = t.mono.exps().to_vec();
                        e.push(d - t.mono.degree());
                        Term::new(t.coeff, Monomial::from_exps(e))
                    })
                    .collect(),
            )
        })
        .collect();
    (hr, out)
}
