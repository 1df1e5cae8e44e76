use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use super::{Monomial, MonomialOrder, MpolyError, Polynomial, Term};
use crate::gf::{Elem, Field};

/// `GF(q)[x1, ..., xn]` with a fixed monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    field: Field,
    names: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: Field, names: Vec<String>, order: MonomialOrder) -> Result<Self, MpolyError> {
        if names.is_empty() {
            return Err(MpolyError::NoVariables);
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(MpolyError::DuplicateVariable(name.clone()));
            }
        }
        Ok(PolyRing { field, names, order })
    }

    /// Ring with variables named `x1..xn`.
    pub fn with_indexed_vars(field: Field, n: usize, order: MonomialOrder) -> Self {
        assert!(n >= 1, "a ring needs at least one variable");
        let names = (1..=n).map(|i| format!("x{i}")).collect();
        PolyRing { field, names, order }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Same variables and field, different order.
    pub fn with_order(&self, order: MonomialOrder) -> PolyRing {
        PolyRing { order, ..self.clone() }
    }

    pub fn var_names(&self) -> &[String] {
        &self.names
    }

    pub fn var_name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b)
    }

    // ---- construction -------------------------------------------------

    /// Merge duplicate monomials, drop zero coefficients, sort descending.
    pub fn normalize(&self, mut terms: Vec<Term>) -> Polynomial {
        let q = self.field.q();
        for t in terms.iter_mut() {
            t.coeff %= q;
        }
        terms.sort_by(|a, b| self.cmp(&b.mono, &a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => {
                    last.coeff = self.field.add(last.coeff, t.coeff);
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coeff != 0);
        Polynomial::from_sorted(out)
    }

    /// Build a polynomial from `(coefficient, exponents)` pairs; coefficients
    /// are reduced mod q.
    pub fn poly(&self, terms: &[(i64, &[u32])]) -> Polynomial {
        self.normalize(
            terms
                .iter()
                .map(|(c, e)| {
                    assert_eq!(e.len(), self.nvars(), "exponent vector length");
                    Term::new(self.field.from_i64(*c), Monomial::from_exps(e.to_vec()))
                })
                .collect(),
        )
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero()
    }

    pub fn one(&self) -> Polynomial {
        self.constant(1)
    }

    pub fn constant(&self, c: Elem) -> Polynomial {
        self.normalize(vec![Term::new(c, Monomial::one(self.nvars()))])
    }

    pub fn var(&self, var: usize) -> Polynomial {
        Polynomial::from_sorted(vec![Term::new(1, Monomial::var(self.nvars(), var, 1))])
    }

    /// `x_var - value`.
    pub fn linear(&self, var: usize, value: Elem) -> Polynomial {
        self.normalize(vec![
            Term::new(1, Monomial::var(self.nvars(), var, 1)),
            Term::new(self.field.neg(value), Monomial::one(self.nvars())),
        ])
    }

    /// The vanishing polynomial `x_var^q - x_var` of GF(q).
    pub fn field_polynomial(&self, var: usize) -> Polynomial {
        let n = self.nvars();
        let q = self.field.q();
        Polynomial::from_sorted(vec![
            Term::new(1, Monomial::var(n, var, q)),
            Term::new(self.field.neg(1), Monomial::var(n, var, 1)),
        ])
    }

    /// Which variable's vanishing polynomial `p` is, if any.
    pub fn as_field_polynomial(&self, p: &Polynomial) -> Option<usize> {
        if p.len() != 2 {
            return None;
        }
        let var = p.lm().pure_power_var()?;
        (*p == self.field_polynomial(var)).then_some(var)
    }

    // ---- arithmetic ---------------------------------------------------

    pub fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.merge(a.terms(), b.terms(), 1)
    }

    pub fn sub(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.merge(a.terms(), b.terms(), self.field.neg(1))
    }

    /// `a + c * b` by a single sorted merge.
    fn merge(&self, a: &[Term], b: &[Term], c: Elem) -> Polynomial {
        let f = self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.cmp(&a[i].mono, &b[j].mono) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let v = f.mul(c, b[j].coeff);
                    if v != 0 {
                        out.push(Term::new(v, b[j].mono.clone()));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.add(a[i].coeff, f.mul(c, b[j].coeff));
                    if v != 0 {
                        out.push(Term::new(v, a[i].mono.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let v = f.mul(c, t.coeff);
            if v != 0 {
                out.push(Term::new(v, t.mono.clone()));
            }
        }
        Polynomial::from_sorted(out)
    }

    pub fn scale(&self, p: &Polynomial, c: Elem) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial::from_sorted(
            p.terms().iter().map(|t| Term::new(self.field.mul(t.coeff, c), t.mono.clone())).collect(),
        )
    }

    /// `c * m * p`; order is preserved because the order is multiplicative.
    pub fn mul_term(&self, p: &Polynomial, c: Elem, m: &Monomial) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial::from_sorted(
            p.terms().iter().map(|t| Term::new(self.field.mul(t.coeff, c), t.mono.mul(m))).collect(),
        )
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        let mut terms = Vec::with_capacity(a.len() * b.len());
        for s in a.terms() {
            for t in b.terms() {
                terms.push(Term::new(self.field.mul(s.coeff, t.coeff), s.mono.mul(&t.mono)));
            }
        }
        self.normalize(terms)
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self, p: Polynomial) -> Polynomial {
        match p.leading_term() {
            None => p,
            Some(t) if t.coeff == 1 => p,
            Some(t) => {
                let inv = self.field.inv(t.coeff).expect("leading coefficient is nonzero");
                self.scale(&p, inv)
            }
        }
    }

    /// `(L / LT(f)) f - (L / LT(g)) g` with `L = lcm(LM(f), LM(g))`.
    pub fn spoly(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial, MpolyError> {
        if f.is_zero() || g.is_zero() {
            return Err(MpolyError::ZeroInput);
        }
        let l = f.lm().lcm(g.lm());
        let mf = l.divide(f.lm()).expect("lm divides lcm");
        let mg = l.divide(g.lm()).expect("lm divides lcm");
        let cf = self.field.inv(f.lc()).expect("nonzero");
        let cg = self.field.inv(g.lc()).expect("nonzero");
        Ok(self.sub(&self.mul_term(f, cf, &mf), &self.mul_term(g, cg, &mg)))
    }

    // ---- reduction ----------------------------------------------------

    /// Full reduction of `p` by `basis`: the result has no monomial divisible
    /// by any leading monomial of `basis`. Reducers are tried in slice order
    /// and the largest reducible monomial is always eliminated first.
    pub fn normal_form(&self, p: &Polynomial, basis: &[Polynomial]) -> Polynomial {
        self.reduce_with(p, |m| basis.iter().find(|g| !g.is_zero() && g.lm().divides(m)), false)
    }

    /// Reduction driver shared by the engines. `find` returns the reducer for
    /// a monomial, if any.
    ///
    /// With `modulo_field` the reducer multiples are field-reduced before
    /// subtraction whenever the monomial being eliminated is itself
    /// field-reduced; the result is then congruent to `p` modulo the basis
    /// together with the vanishing polynomials of GF(q).
    pub(crate) fn reduce_with<'a, F>(&self, p: &Polynomial, mut find: F, modulo_field: bool) -> Polynomial
    where
        F: FnMut(&Monomial) -> Option<&'a Polynomial>,
    {
        let f = self.field;
        let mut rem: Vec<Term> = Vec::new();
        let mut cur: Vec<Term> = p.terms().to_vec();
        let mut pos = 0;
        while pos < cur.len() {
            let t = &cur[pos];
            match find(&t.mono) {
                Some(g) => {
                    let m = t.mono.divide(g.lm()).expect("reducer divides");
                    let c = f.mul(t.coeff, f.inv(g.lc()).expect("nonzero"));
                    let mut mult = self.mul_term(g, c, &m);
                    if modulo_field && self.is_field_reduced_mono(&t.mono) {
                        mult = self.field_reduce(&mult);
                    }
                    cur = self.merge(&cur[pos..], mult.terms(), f.neg(1)).into_terms();
                    pos = 0;
                }
                None => {
                    rem.push(cur[pos].clone());
                    pos += 1;
                }
            }
        }
        Polynomial::from_sorted(rem)
    }

    /// Monic, pairwise fully reduced generators of the same ideal, sorted by
    /// ascending leading monomial. Applied to a Gröbner basis this yields the
    /// unique reduced Gröbner basis.
    pub fn interreduce(&self, polys: Vec<Polynomial>) -> Vec<Polynomial> {
        self.interreduce_with(polys, false)
    }

    /// [`PolyRing::interreduce`] with reduction taken modulo the vanishing
    /// polynomials of GF(q) (see [`PolyRing::reduce_with`]). Inputs should be
    /// field-reduced; the output then is too.
    pub fn interreduce_with(&self, polys: Vec<Polynomial>, modulo_field: bool) -> Vec<Polynomial> {
        let mut g: Vec<Polynomial> = polys.into_iter().filter(|p| !p.is_zero()).map(|p| self.monic(p)).collect();
        if g.iter().any(|p| p.is_constant()) {
            return vec![self.one()];
        }
        // drop or replace members whose leading monomial is divisible by another's
        loop {
            let hit = (0..g.len()).find(|&i| (0..g.len()).any(|j| j != i && g[j].lm().divides(g[i].lm())));
            let Some(i) = hit else { break };
            let p = g.remove(i);
            let r = self.reduce_with(&p, |m| g.iter().find(|h| h.lm().divides(m)), modulo_field);
            if !r.is_zero() {
                if r.is_constant() {
                    return vec![self.one()];
                }
                g.push(self.monic(r));
            }
        }
        for i in 0..g.len() {
            let r = self.reduce_with(
                &g[i],
                |m| g.iter().enumerate().find(|(j, h)| *j != i && h.lm().divides(m)).map(|(_, h)| h),
                modulo_field,
            );
            g[i] = r;
        }
        g.sort_by(|a, b| self.cmp(a.lm(), b.lm()));
        g
    }

    // ---- field equations ----------------------------------------------

    #[inline]
    pub fn is_field_reduced_mono(&self, m: &Monomial) -> bool {
        let q = self.field.q();
        m.exps().iter().all(|&e| e < q)
    }

    pub fn is_field_reduced(&self, p: &Polynomial) -> bool {
        p.terms().iter().all(|t| self.is_field_reduced_mono(&t.mono))
    }

    /// Rewrite with `x^q = x`: every exponent `e >= q` becomes
    /// `((e - 1) mod (q - 1)) + 1`.
    pub fn field_reduce(&self, p: &Polynomial) -> Polynomial {
        if self.is_field_reduced(p) {
            return p.clone();
        }
        let q = self.field.q();
        let terms = p
            .terms()
            .iter()
            .map(|t| {
                let exps = t
                    .mono
                    .exps()
                    .iter()
                    .map(|&e| if e >= q { (e - 1) % (q - 1) + 1 } else { e })
                    .collect();
                Term::new(t.coeff, Monomial::from_exps(exps))
            })
            .collect();
        self.normalize(terms)
    }

    // ---- evaluation and substitution ----------------------------------

    pub fn eval(&self, p: &Polynomial, point: &[Elem]) -> Elem {
        let f = self.field;
        p.terms().iter().fold(0, |acc, t| {
            let v = t
                .mono
                .exps()
                .iter()
                .zip(point)
                .fold(t.coeff, |v, (&e, &x)| if e == 0 { v } else { f.mul(v, f.pow(x, e as u64)) });
            f.add(acc, v)
        })
    }

    /// `p` with `x_var := value`.
    pub fn substitute(&self, p: &Polynomial, var: usize, value: Elem) -> Polynomial {
        if !p.mentions(var) {
            return p.clone();
        }
        let f = self.field;
        let terms = p
            .terms()
            .iter()
            .map(|t| {
                let e = t.mono.exp(var);
                let mut exps = t.mono.exps().to_vec();
                exps[var] = 0;
                Term::new(f.mul(t.coeff, f.pow(value, e as u64)), Monomial::from_exps(exps))
            })
            .collect();
        self.normalize(terms)
    }

    /// Dense coefficients of `p` as a polynomial in `x_var`, lowest degree first.
    pub fn univariate_coeffs(&self, p: &Polynomial, var: usize) -> Result<Vec<Elem>, MpolyError> {
        let mut coeffs = Vec::new();
        for t in p.terms() {
            if t.mono.exps().iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return Err(MpolyError::NotUnivariate(var));
            }
            let e = t.mono.exp(var) as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] = self.field.add(coeffs[e], t.coeff);
        }
        Ok(coeffs)
    }

    /// Every root of `p` in GF(q), found by Horner evaluation at each element.
    pub fn univariate_roots(&self, p: &Polynomial, var: usize) -> Result<Vec<Elem>, MpolyError> {
        if p.is_zero() {
            return Err(MpolyError::ZeroPolynomial);
        }
        let coeffs = self.univariate_coeffs(p, var)?;
        let f = self.field;
        Ok(f.elements()
            .filter(|&a| coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, a), c)) == 0)
            .collect())
    }

    // ---- printing -----------------------------------------------------

    pub fn display<'a>(&'a self, p: &'a Polynomial) -> PolyDisplay<'a> {
        PolyDisplay { ring: self, poly: p }
    }

    pub fn to_string(&self, p: &Polynomial) -> String {
        self.display(p).to_string()
    }

    fn write_mono(&self, f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
        let mut first = true;
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&self.names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sum-of-products rendering, e.g. `x1*x2^2 + 2*x3 + 1`; re-parseable by
/// the system file reader.
pub struct PolyDisplay<'a> {
    ring: &'a PolyRing,
    poly: &'a Polynomial,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (k, t) in self.poly.terms().iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if t.mono.is_one() {
                write!(f, "{}", t.coeff)?;
            } else {
                if t.coeff != 1 {
                    write!(f, "{}*", t.coeff)?;
                }
                self.ring.write_mono(f, &t.mono)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(q: u64, n: usize, order: MonomialOrder) -> PolyRing {
        PolyRing::with_indexed_vars(Field::new(q).unwrap(), n, order)
    }

    fn all_points(q: u32, n: usize) -> Vec<Vec<Elem>> {
        let mut pts = vec![vec![]];
        for _ in 0..n {
            pts = pts
                .into_iter()
                .flat_map(|p: Vec<Elem>| {
                    (0..q).map(move |a| {
                        let mut p = p.clone();
                        p.push(a);
                        p
                    })
                })
                .collect();
        }
        pts
    }

    #[test]
    fn normalize_examples() {
        let r = ring(2, 1, MonomialOrder::Lex);
        assert!(r.poly(&[(1, &[1]), (1, &[1])]).is_zero());
        let r2 = ring(2, 2, MonomialOrder::Lex);
        let p = r2.poly(&[(1, &[0, 1]), (1, &[1, 0])]);
        assert_eq!(p.lm(), &Monomial::from_exps(vec![1, 0]));
        let r3 = ring(3, 1, MonomialOrder::Lex);
        let p = r3.poly(&[(2, &[1]), (2, &[1])]);
        assert_eq!(p, r3.var(0));
    }

    #[test]
    fn spoly_examples() {
        // f = x*y + x, g = y^2 + 1 over GF(2), lex x > y.
        // By hand: y*f - x*g = (x*y^2 + x*y) - (x*y^2 + x) = x*y + x.
        let r = ring(2, 2, MonomialOrder::Lex);
        let f = r.poly(&[(1, &[1, 1]), (1, &[1, 0])]);
        let g = r.poly(&[(1, &[0, 2]), (1, &[0, 0])]);
        let s = r.spoly(&f, &g).unwrap();
        assert_eq!(s, r.poly(&[(1, &[1, 1]), (1, &[1, 0])]));
        // pointwise oracle: s(a) = a_y f(a) - a_x g(a)
        for pt in all_points(2, 2) {
            let rhs = r.field().sub(r.field().mul(pt[1], r.eval(&f, &pt)), r.field().mul(pt[0], r.eval(&g, &pt)));
            assert_eq!(r.eval(&s, &pt), rhs);
        }

        assert!(r.spoly(&f, &f).unwrap().is_zero());

        // f = x^2 + 1, g = y^2 + y: y^2 f - x^2 g = y^2 - x^2 y = x^2*y + y^2 over GF(2)
        let f = r.poly(&[(1, &[2, 0]), (1, &[0, 0])]);
        let g = r.poly(&[(1, &[0, 2]), (1, &[0, 1])]);
        let s = r.spoly(&f, &g).unwrap();
        assert_eq!(s, r.poly(&[(1, &[2, 1]), (1, &[0, 2])]));
        assert_eq!(r.cmp(s.lm(), &Monomial::from_exps(vec![2, 2])), Ordering::Less);

        assert_eq!(r.spoly(&f, &Polynomial::zero()), Err(MpolyError::ZeroInput));
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(2, 2, MonomialOrder::Lex);
        let p = r.poly(&[(1, &[2, 1])]);
        let g = vec![r.poly(&[(1, &[2, 0]), (1, &[1, 0])])];
        assert_eq!(r.normal_form(&p, &g), r.poly(&[(1, &[1, 1])]));
        assert_eq!(r.normal_form(&p, &[]), p);
        let x1 = r.poly(&[(1, &[1, 0]), (1, &[0, 0])]);
        assert!(r.normal_form(&x1, std::slice::from_ref(&x1)).is_zero());
    }

    #[test]
    fn interreduce_examples() {
        let r3 = ring(3, 2, MonomialOrder::Lex);
        let a = r3.poly(&[(1, &[1, 0]), (1, &[0, 1])]);
        let b = r3.poly(&[(2, &[1, 0]), (2, &[0, 1])]);
        assert_eq!(r3.interreduce(vec![a.clone(), b]), vec![a]);

        let r = ring(2, 2, MonomialOrder::Lex);
        let x1 = r.poly(&[(1, &[1, 0]), (1, &[0, 0])]);
        let xy = r.poly(&[(1, &[1, 0]), (1, &[0, 1])]);
        let y1 = r.poly(&[(1, &[0, 1]), (1, &[0, 0])]);
        let red = r.interreduce(vec![x1.clone(), xy.clone()]);
        assert_eq!(red, vec![y1, x1.clone()]);
        // both generating sets vanish exactly at (1, 1)
        for pt in all_points(2, 2) {
            let before = r.eval(&x1, &pt) == 0 && r.eval(&xy, &pt) == 0;
            let after = red.iter().all(|p| r.eval(p, &pt) == 0);
            assert_eq!(before, after);
        }

        assert_eq!(r.interreduce(vec![xy, r.one()]), vec![r.one()]);
    }

    #[test]
    fn field_reduce_examples() {
        let r = ring(2, 1, MonomialOrder::Lex);
        assert_eq!(r.field_reduce(&r.poly(&[(1, &[3])])), r.var(0));
        assert!(r.field_reduce(&r.field_polynomial(0)).is_zero());
        let r3 = ring(3, 1, MonomialOrder::Lex);
        let x4 = r3.poly(&[(1, &[4])]);
        let red = r3.field_reduce(&x4);
        assert_eq!(red, r3.poly(&[(1, &[2])]));
        for a in 0..3 {
            assert_eq!(r3.eval(&x4, &[a]), r3.eval(&red, &[a]));
        }
    }

    #[test]
    fn field_polynomial_shape() {
        let r = ring(3, 2, MonomialOrder::Grevlex);
        let fp = r.field_polynomial(0);
        assert_eq!(fp, r.poly(&[(1, &[3, 0]), (-1, &[1, 0])]));
        assert_eq!(r.to_string(&fp), "x1^3 + 2*x1");
        assert_eq!(r.as_field_polynomial(&fp), Some(0));
        assert_eq!(r.as_field_polynomial(&r.var(0)), None);
    }

    #[test]
    fn roots_examples() {
        let r = ring(2, 1, MonomialOrder::Lex);
        assert_eq!(r.univariate_roots(&r.poly(&[(1, &[1]), (1, &[0])]), 0), Ok(vec![1]));
        assert_eq!(r.univariate_roots(&r.field_polynomial(0), 0), Ok(vec![0, 1]));
        assert_eq!(r.univariate_roots(&r.poly(&[(1, &[2]), (1, &[1]), (1, &[0])]), 0), Ok(vec![]));
        assert_eq!(r.univariate_roots(&Polynomial::zero(), 0), Err(MpolyError::ZeroPolynomial));
        let r2 = ring(2, 2, MonomialOrder::Lex);
        assert_eq!(r2.univariate_roots(&r2.poly(&[(1, &[1, 1])]), 0), Err(MpolyError::NotUnivariate(0)));
    }

    #[test]
    fn substitute_examples() {
        let r = ring(2, 2, MonomialOrder::Lex);
        let p = r.poly(&[(1, &[1, 1]), (1, &[0, 1]), (1, &[0, 0])]);
        assert_eq!(r.substitute(&p, 0, 1), r.one());
        let q = r.poly(&[(1, &[0, 1]), (1, &[0, 0])]);
        assert_eq!(r.substitute(&q, 0, 1), q);
        let x1 = r.poly(&[(1, &[1, 0]), (1, &[0, 0])]);
        assert!(r.substitute(&x1, 0, 1).is_zero());
    }

    #[test]
    fn display_round_trips_through_names() {
        let r = ring(5, 3, MonomialOrder::Grevlex);
        let p = r.poly(&[(3, &[1, 2, 0]), (1, &[0, 0, 1]), (4, &[0, 0, 0])]);
        assert_eq!(r.to_string(&p), "3*x1*x2^2 + x3 + 4");
        assert_eq!(r.to_string(&Polynomial::zero()), "0");
    }

    // ---- properties ---------------------------------------------------

    fn arb_poly(q: u32, n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Vec<(u32, Vec<u32>)>> {
        prop::collection::vec((0..q, prop::collection::vec(0..=max_exp, n)), 0..=max_terms)
    }

    fn build(r: &PolyRing, raw: &[(u32, Vec<u32>)]) -> Polynomial {
        r.normalize(raw.iter().map(|(c, e)| Term::new(*c, Monomial::from_exps(e.clone()))).collect())
    }

    fn order() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![Just(MonomialOrder::Lex), Just(MonomialOrder::Grevlex)]
    }

    proptest! {
        #[test]
        fn normal_form_is_idempotent(o in order(), p in arb_poly(2, 3, 2, 6),
                                     gs in prop::collection::vec(arb_poly(2, 3, 2, 4), 1..4)) {
            let r = ring(2, 3, o);
            let p = build(&r, &p);
            let g: Vec<_> = gs.iter().map(|g| build(&r, g)).filter(|g| !g.is_zero()).collect();
            let nf = r.normal_form(&p, &g);
            prop_assert_eq!(r.normal_form(&nf, &g), nf.clone());
            for t in nf.terms() {
                prop_assert!(g.iter().all(|h| !h.lm().divides(&t.mono)));
            }
        }

        #[test]
        fn normal_form_preserves_values_on_common_zeros(o in order(), p in arb_poly(2, 4, 2, 6),
                                     gs in prop::collection::vec(arb_poly(2, 4, 2, 4), 1..4)) {
            let r = ring(2, 4, o);
            let p = build(&r, &p);
            let g: Vec<_> = gs.iter().map(|g| build(&r, g)).filter(|g| !g.is_zero()).collect();
            let nf = r.normal_form(&p, &g);
            for pt in all_points(2, 4) {
                if g.iter().all(|h| r.eval(h, &pt) == 0) {
                    prop_assert_eq!(r.eval(&nf, &pt), r.eval(&p, &pt));
                }
            }
        }

        #[test]
        fn spoly_cancels_leading_terms(o in order(), f in arb_poly(3, 3, 3, 5), g in arb_poly(3, 3, 3, 5)) {
            let r = ring(3, 3, o);
            let f = build(&r, &f);
            let g = build(&r, &g);
            prop_assume!(!f.is_zero() && !g.is_zero());
            let s = r.spoly(&f, &g).unwrap();
            if !s.is_zero() {
                prop_assert_eq!(r.cmp(s.lm(), &f.lm().lcm(g.lm())), Ordering::Less);
            }
        }

        #[test]
        fn field_reduce_preserves_values(q in prop_oneof![Just(2u64), Just(3u64)], p in arb_poly(3, 3, 7, 6)) {
            let r = ring(q, 3, MonomialOrder::Grevlex);
            let p = build(&r, &p);
            let red = r.field_reduce(&p);
            prop_assert!(r.is_field_reduced(&red));
            for pt in all_points(q as u32, 3) {
                prop_assert_eq!(r.eval(&red, &pt), r.eval(&p, &pt));
            }
        }

        #[test]
        fn roots_agree_with_termwise_evaluation(q in prop_oneof![Just(2u64), Just(3u64), Just(7u64)],
                                                coeffs in prop::collection::vec(0u32..7, 1..9)) {
            let r = ring(q, 2, MonomialOrder::Lex);
            let raw: Vec<_> = coeffs.iter().enumerate().map(|(e, &c)| (c, vec![0, e as u32])).collect();
            let p = build(&r, &raw);
            prop_assume!(!p.is_zero());
            let roots = r.univariate_roots(&p, 1).unwrap();
            let direct: Vec<Elem> = (0..q as u32).filter(|&a| r.eval(&p, &[0, a]) == 0).collect();
            prop_assert_eq!(roots, direct);
        }

        #[test]
        fn interreduce_keeps_zero_set(o in order(), gs in prop::collection::vec(arb_poly(2, 3, 2, 4), 1..5)) {
            let r = ring(2, 3, o);
            let g: Vec<_> = gs.iter().map(|g| build(&r, g)).collect();
            let red = r.interreduce(g.clone());
            for (i, a) in red.iter().enumerate() {
                prop_assert_eq!(a.lc(), 1);
                for (j, b) in red.iter().enumerate() {
                    if i != j {
                        prop_assert!(a.terms().iter().all(|t| !b.lm().divides(&t.mono)));
                    }
                }
            }
            for pt in all_points(2, 3) {
                let before = g.iter().all(|p| r.eval(p, &pt) == 0);
                let after = red.iter().all(|p| r.eval(p, &pt) == 0);
                prop_assert_eq!(before, after);
            }
        }
    }
}
