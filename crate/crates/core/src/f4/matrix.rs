use std::collections::HashMap;

use crate::gf::{Elem, Field};
use crate::mpoly::{Monomial, PolyRing, Polynomial, Term};
use crate::par::{self, Execution};

/// Below this many row words per pivot the sequential path is used even in
/// parallel mode; thread dispatch would dominate.
const PAR_MIN_WORK: usize = 1 << 15;

trait Row: Clone + Send + Sync {
    fn get(&self, c: usize) -> Elem;
    fn scale_from(&mut self, f: Field, by: Elem, start: usize);
    /// `self -= by * pivot`, touching columns `start..` only.
    fn sub_scaled(&mut self, f: Field, by: Elem, pivot: &Self, start: usize);
    fn words(&self) -> usize;
}

/// GF(2) row packed 64 columns per word.
#[derive(Debug, Clone, PartialEq, Eq)]
struct BitRow(Vec<u64>);

impl Row for BitRow {
    #[inline]
    fn get(&self, c: usize) -> Elem {
        ((self.0[c >> 6] >> (c & 63)) & 1) as Elem
    }

    fn scale_from(&mut self, _: Field, _: Elem, _: usize) {}

    #[inline]
    fn sub_scaled(&mut self, _: Field, _: Elem, pivot: &Self, start: usize) {
        let w = start >> 6;
        for (a, b) in self.0[w..].iter_mut().zip(&pivot.0[w..]) {
            *a ^= b;
        }
    }

    fn words(&self) -> usize {
        self.0.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct DenseRow(Vec<Elem>);

impl Row for DenseRow {
    #[inline]
    fn get(&self, c: usize) -> Elem {
        self.0[c]
    }

    fn scale_from(&mut self, f: Field, by: Elem, start: usize) {
        for a in &mut self.0[start..] {
            if *a != 0 {
                *a = f.mul(*a, by);
            }
        }
    }

    fn sub_scaled(&mut self, f: Field, by: Elem, pivot: &Self, start: usize) {
        let neg = f.neg(by);
        for (a, &b) in self.0[start..].iter_mut().zip(&pivot.0[start..]) {
            if b != 0 {
                *a = f.add(*a, f.mul(neg, b));
            }
        }
    }

    fn words(&self) -> usize {
        self.0.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Rows {
    Bits(Vec<BitRow>),
    Dense(Vec<DenseRow>),
}

/// Coefficient matrix with one column per monomial, columns in descending
/// monomial order. Rows are bit-packed over GF(2) and dense otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MacaulayMatrix {
    field: Field,
    columns: Vec<Monomial>,
    rows: Rows,
}

impl MacaulayMatrix {
    /// Rows are the given polynomials in order; columns are every monomial
    /// occurring in them. Zero polynomials are skipped.
    pub fn from_polys(ring: &PolyRing, polys: &[Polynomial]) -> Self {
        let mut columns: Vec<Monomial> = polys.iter().flat_map(|p| p.terms().iter().map(|t| t.mono.clone())).collect();
        columns.sort_by(|a, b| ring.cmp(b, a));
        columns.dedup();
        let index: HashMap<&Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let live = polys.iter().filter(|p| !p.is_zero());
        let ncols = columns.len();
        let rows = if ring.field().q() == 2 {
            let words = ncols.div_ceil(64);
            Rows::Bits(
                live.map(|p| {
                    let mut row = vec![0u64; words];
                    for t in p.terms() {
                        let c = index[&t.mono];
                        row[c >> 6] |= 1 << (c & 63);
                    }
                    BitRow(row)
                })
                .collect(),
            )
        } else {
            Rows::Dense(
                live.map(|p| {
                    let mut row = vec![0; ncols];
                    for t in p.terms() {
                        row[index[&t.mono]] = t.coeff;
                    }
                    DenseRow(row)
                })
                .collect(),
            )
        };
        MacaulayMatrix { field: ring.field(), columns, rows }
    }

    pub fn nrows(&self) -> usize {
        match &self.rows {
            Rows::Bits(r) => r.len(),
            Rows::Dense(r) => r.len(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Monomial] {
        &self.columns
    }

    pub fn get(&self, row: usize, col: usize) -> Elem {
        match &self.rows {
            Rows::Bits(r) => r[row].get(col),
            Rows::Dense(r) => r[row].get(col),
        }
    }

    /// Reduced row echelon form in place. Columns are visited left to
    /// right; the pivot is the first not-yet-pivoted row with a nonzero
    /// entry, scaled to 1 and cleared from every other row. Returns
    /// `(column, row)` per pivot in column order; every other row ends up zero.
    pub fn reduce(&mut self, exec: Execution) -> Vec<(usize, usize)> {
        let ncols = self.ncols();
        let field = self.field;
        match &mut self.rows {
            Rows::Bits(r) => rref(field, r, ncols, exec),
            Rows::Dense(r) => rref(field, r, ncols, exec),
        }
    }

    /// Row `i` as a polynomial.
    pub fn row_poly(&self, i: usize) -> Polynomial {
        let terms = (0..self.ncols())
            .filter_map(|c| {
                let v = self.get(i, c);
                (v != 0).then(|| Term::new(v, self.columns[c].clone()))
            })
            .collect();
        Polynomial::from_sorted(terms)
    }

    /// All nonzero rows as polynomials, in row order.
    pub fn nonzero_rows(&self) -> Vec<Polynomial> {
        (0..self.nrows()).map(|i| self.row_poly(i)).filter(|p| !p.is_zero()).collect()
    }
}

fn rref<R: Row>(field: Field, rows: &mut [R], ncols: usize, exec: Execution) -> Vec<(usize, usize)> {
    let nrows = rows.len();
    let words = rows.first().map_or(0, |r| r.words());
    let exec = if nrows * words < PAR_MIN_WORK { Execution::Sequential } else { exec };
    let mut pivoted = vec![false; nrows];
    let mut pivots = Vec::new();
    for c in 0..ncols {
        let Some(p) = (0..nrows).find(|&i| !pivoted[i] && rows[i].get(c) != 0) else {
            continue;
        };
        pivoted[p] = true;
        let lead = rows[p].get(c);
        if lead != 1 {
            let inv = field.inv(lead).expect("nonzero pivot");
            rows[p].scale_from(field, inv, c);
        }
        let pivot = rows[p].clone();
        par::for_each_indexed(exec, rows, |i, row| {
            if i != p {
                let v = row.get(c);
                if v != 0 {
                    row.sub_scaled(field, v, &pivot, c);
                }
            }
        });
        pivots.push((c, p));
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::MonomialOrder;
    use proptest::prelude::*;

    fn ring(q: u64, n: usize) -> PolyRing {
        PolyRing::with_indexed_vars(Field::new(q).unwrap(), n, MonomialOrder::Grevlex)
    }

    #[test]
    fn elimination_examples() {
        let r = ring(2, 1);
        let mut m = MacaulayMatrix::from_polys(&r, &[r.poly(&[(1, &[1]), (1, &[0])]), r.var(0)]);
        assert_eq!(m.ncols(), 2);
        let piv = m.reduce(Execution::Sequential);
        assert_eq!(piv, vec![(0, 0), (1, 1)]);
        assert_eq!(m.row_poly(0), r.var(0));
        assert_eq!(m.row_poly(1), r.one());

        let r3 = ring(3, 1);
        let mut m = MacaulayMatrix::from_polys(&r3, &[r3.poly(&[(2, &[1]), (1, &[0])])]);
        m.reduce(Execution::Sequential);
        assert_eq!(m.row_poly(0), r3.poly(&[(1, &[1]), (2, &[0])]));

        let p = r.poly(&[(1, &[1]), (1, &[0])]);
        let mut m = MacaulayMatrix::from_polys(&r, &[p.clone(), p.clone()]);
        assert_eq!(m.reduce(Execution::Sequential).len(), 1);
        assert_eq!(m.nonzero_rows(), vec![p]);
    }

    fn in_span(ring: &PolyRing, basis: &[Polynomial], p: &Polynomial) -> bool {
        // basis is in reduced echelon form, so reduction by pivots decides membership
        let mut cur = p.clone();
        for b in basis {
            let c = cur.terms().iter().find(|t| t.mono == *b.lm()).map(|t| t.coeff);
            if let Some(c) = c {
                cur = ring.sub(&cur, &ring.scale(b, c));
            }
        }
        cur.is_zero()
    }

    fn arb_rows(q: u32) -> impl Strategy<Value = Vec<Vec<(u32, Vec<u32>)>>> {
        prop::collection::vec(prop::collection::vec((0..q, prop::collection::vec(0u32..3, 3)), 1..6), 1..8)
    }

    proptest! {
        #[test]
        fn row_space_preserved(q in prop_oneof![Just(2u64), Just(3u64), Just(5u64)], raw in arb_rows(5)) {
            let r = ring(q, 3);
            let polys: Vec<Polynomial> = raw
                .iter()
                .map(|row| r.normalize(row.iter().map(|(c, e)| Term::new(*c, Monomial::from_exps(e.clone()))).collect()))
                .collect();
            let mut m = MacaulayMatrix::from_polys(&r, &polys);
            let seq = {
                let mut s = m.clone();
                s.reduce(Execution::Sequential);
                s
            };
            let piv = m.reduce(Execution::Parallel);
            prop_assert_eq!(&m, &seq);
            let out: Vec<Polynomial> = piv.iter().map(|&(_, i)| m.row_poly(i)).collect();
            prop_assert_eq!(out.len(), m.nonzero_rows().len());
            for p in &polys {
                prop_assert!(in_span(&r, &out, p));
            }
            for (k, o) in out.iter().enumerate() {
                prop_assert_eq!(o.lc(), 1);
                for (j, other) in out.iter().enumerate() {
                    if j != k {
                        prop_assert!(o.terms().iter().all(|t| t.mono != *other.lm()));
                    }
                }
            }
        }
    }
}
