//! Arithmetic in prime fields GF(q).
//!
//! Elements are plain `u32` residues kept in canonical form `0 <= a < q`.
//! [`Field`] carries the modulus and performs every operation, so values
//! never need to know which field they belong to.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A canonical residue modulo the field size.
pub type Elem = u32;

/// Largest supported field size; products of two residues must fit in `u64`.
pub const MAX_FIELD_SIZE: u32 = (1 << 31) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("field size {0} is not prime")]
    NonPrime(u64),
    #[error("field size {0} exceeds the supported maximum {MAX_FIELD_SIZE}")]
    TooLarge(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
}

/// The prime field GF(q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Field {
    q: u32,
}

impl Field {
    pub fn new(q: u64) -> Result<Self, FieldError> {
        if q > MAX_FIELD_SIZE as u64 {
            return Err(FieldError::TooLarge(q));
        }
        if !is_prime(q) {
            return Err(FieldError::NonPrime(q));
        }
        Ok(Field { q: q as u32 })
    }

    /// GF(2), the field every benchmark in this crate defaults to.
    pub fn binary() -> Self {
        Field { q: 2 }
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let s = a as u64 + b as u64;
        let q = self.q as u64;
        (if s >= q { s - q } else { s }) as Elem
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.q as u64 - b as u64) as Elem
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        ((a as u64 * b as u64) % self.q as u64) as Elem
    }

    pub fn pow(&self, mut base: Elem, mut exp: u64) -> Elem {
        let mut acc = 1 % self.q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a == 0 {
            return Err(FieldError::ZeroInverse);
        }
        let (mut r0, mut r1) = (self.q as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let quot = r0 / r1;
            (r0, r1) = (r1, r0 - quot * r1);
            (t0, t1) = (t1, t0 - quot * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(t0.rem_euclid(self.q as i64) as Elem)
    }

    /// Canonical residue of an arbitrary signed integer.
    pub fn from_i64(&self, v: i64) -> Elem {
        v.rem_euclid(self.q as i64) as Elem
    }

    /// All field elements in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
