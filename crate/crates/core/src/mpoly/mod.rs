//! Multivariate polynomials over GF(q): monomial orders, canonical
//! normalisation, S-polynomials, normal forms, interreduction, field
//! reduction, substitution and univariate root finding.

mod monomial;
mod ring;

use thiserror::Error;

pub use monomial::{Monomial, MonomialOrder};
pub use ring::{PolyDisplay, PolyRing};

use crate::gf::Elem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MpolyError {
    #[error("exponent vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("operation requires nonzero polynomials")]
    ZeroInput,
    #[error("the zero polynomial has every field element as a root")]
    ZeroPolynomial,
    #[error("polynomial is not univariate in variable {0}")]
    NotUnivariate(usize),
    #[error("a ring needs at least one variable")]
    NoVariables,
    #[error("variable name `{0}` is used twice")]
    DuplicateVariable(String),
}

/// A nonzero coefficient times a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Elem,
    pub mono: Monomial,
}

impl Term {
    pub fn new(coeff: Elem, mono: Monomial) -> Self {
        Term { coeff, mono }
    }
}

/// Terms sorted strictly descending in the ring's order, with no zero
/// coefficients. The empty list is the zero polynomial.
///
/// Polynomials do not remember their ring; build and combine them through
/// [`PolyRing`], which keeps the canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    /// Caller guarantees canonical form.
    pub(crate) fn from_sorted(terms: Vec<Term>) -> Self {
        Polynomial { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    /// Number of terms; [`Polynomial::is_zero`] is the emptiness test.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Leading monomial. Panics on the zero polynomial.
    pub fn lm(&self) -> &Monomial {
        &self.terms[0].mono
    }

    /// Leading coefficient. Panics on the zero polynomial.
    pub fn lc(&self) -> Elem {
        self.terms[0].coeff
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.mono.degree()).max().unwrap_or(0)
    }

    /// Nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.terms[0].coeff == 1
    }

    /// Variables occurring in some term, ascending by index.
    pub fn support(&self) -> Vec<usize> {
        let Some(first) = self.terms.first() else {
            return Vec::new();
        };
        (0..first.mono.nvars())
            .filter(|&v| self.terms.iter().any(|t| t.mono.exp(v) > 0))
            .collect()
    }

    pub fn mentions(&self, var: usize) -> bool {
        self.terms.iter().any(|t| t.mono.exp(var) > 0)
    }

    /// The single variable this polynomial depends on. Constants and the
    /// zero polynomial are not univariate.
    pub fn is_univariate(&self) -> Option<usize> {
        let mut var = None;
        for t in &self.terms {
            for (i, &e) in t.mono.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match var {
                    None => var = Some(i),
                    Some(v) if v == i => {}
                    Some(_) => return None,
                }
            }
        }
        var
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    fn ring2() -> PolyRing {
        PolyRing::with_indexed_vars(Field::binary(), 2, MonomialOrder::Lex)
    }

    #[test]
    fn univariate_detection() {
        let r = ring2();
        let p = r.poly(&[(1, &[0, 2]), (1, &[0, 1]), (1, &[0, 0])]);
        assert_eq!(p.is_univariate(), Some(1));
        let q = r.poly(&[(1, &[1, 1]), (1, &[0, 0])]);
        assert_eq!(q.is_univariate(), None);
        assert_eq!(r.one().is_univariate(), None);
        assert_eq!(Polynomial::zero().is_univariate(), None);
    }

    #[test]
    fn support_lists_used_variables() {
        let r = PolyRing::with_indexed_vars(Field::binary(), 3, MonomialOrder::Grevlex);
        let p = r.poly(&[(1, &[1, 0, 0]), (1, &[0, 0, 2])]);
        assert_eq!(p.support(), vec![0, 2]);
        assert!(p.mentions(2));
        assert!(!p.mentions(1));
    }
}
