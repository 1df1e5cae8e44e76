use std::cmp::Ordering;
use std::collections::HashMap;

use super::EngineError;
use crate::mpoly::{Monomial, MpolyError, PolyRing, Polynomial};

/// Position of a polynomial in a [`TemporaryBasis`]; stable for the
/// lifetime of the basis.
pub type BasisIndex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CriticalPair {
    pub left: BasisIndex,
    pub right: BasisIndex,
    pub lcm: Monomial,
    pub degree: u32,
}

impl CriticalPair {
    fn new(left: BasisIndex, right: BasisIndex, lcm: Monomial) -> Self {
        debug_assert!(left < right);
        let degree = lcm.degree();
        CriticalPair { left, right, lcm, degree }
    }
}

/// Pending pairs. Only pairs surviving the criteria at insertion are kept.
#[derive(Debug, Clone, Default)]
pub struct PairQueue {
    pairs: Vec<CriticalPair>,
}

impl PairQueue {
    pub fn new() -> Self {
        PairQueue::default()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &CriticalPair> {
        self.pairs.iter()
    }
}

/// The evolving basis G. Every inserted polynomial stays addressable; an
/// element is deactivated once a later leading monomial divides its own, and
/// inactive elements neither form new pairs nor act as reducers.
#[derive(Debug, Clone, Default)]
pub struct TemporaryBasis {
    polys: Vec<Polynomial>,
    active: Vec<bool>,
    field: Vec<bool>,
    lm_index: HashMap<Monomial, BasisIndex>,
}

impl TemporaryBasis {
    pub fn new() -> Self {
        TemporaryBasis::default()
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn get(&self, i: BasisIndex) -> &Polynomial {
        &self.polys[i]
    }

    pub fn is_active(&self, i: BasisIndex) -> bool {
        self.active[i]
    }

    /// Whether element `i` is a vanishing polynomial `x^q - x` stored raw.
    pub fn is_field_poly(&self, i: BasisIndex) -> bool {
        self.field[i]
    }

    pub fn all(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn active_indices(&self) -> impl Iterator<Item = BasisIndex> + '_ {
        (0..self.polys.len()).filter(|&i| self.active[i])
    }

    pub fn active(&self) -> impl Iterator<Item = &Polynomial> + '_ {
        self.active_indices().map(|i| &self.polys[i])
    }

    /// Active element with exactly this leading monomial.
    pub fn by_lm(&self, m: &Monomial) -> Option<BasisIndex> {
        self.lm_index.get(m).copied()
    }

    /// First active element, in insertion order, whose leading monomial divides `m`.
    pub fn find_reducer(&self, m: &Monomial) -> Option<BasisIndex> {
        (0..self.polys.len()).find(|&i| self.active[i] && self.polys[i].lm().divides(m))
    }

    fn push(&mut self, p: Polynomial, is_field: bool) -> BasisIndex {
        let i = self.polys.len();
        self.lm_index.insert(p.lm().clone(), i);
        self.polys.push(p);
        self.active.push(true);
        self.field.push(is_field);
        i
    }

    fn deactivate(&mut self, i: BasisIndex) {
        if self.active[i] {
            self.active[i] = false;
            if self.lm_index.get(self.polys[i].lm()) == Some(&i) {
                self.lm_index.remove(self.polys[i].lm());
            }
        }
    }
}

/// Insert `h` into `basis` and refresh `queue` (Gebauer-Möller).
///
/// New pairs `(g, h)` are dropped when another new pair's lcm properly
/// divides theirs, or, after that pass, when the leading monomials are
/// coprime. An old pair `(a, b)` is dropped when `LM(h)` divides its lcm and
/// both `lcm(a, h)` and `lcm(b, h)` differ from it. Active elements whose
/// leading monomial `LM(h)` divides are deactivated.
///
/// With `criteria` off every pair with an earlier element is queued and
/// nothing is deactivated.
pub fn update(
    basis: &mut TemporaryBasis,
    queue: &mut PairQueue,
    h: Polynomial,
    is_field: bool,
    criteria: bool,
) -> Result<BasisIndex, EngineError> {
    if h.is_zero() {
        return Err(MpolyError::ZeroInput.into());
    }
    let hi = basis.len();
    let lh = h.lm().clone();

    if !criteria {
        for g in 0..hi {
            queue.pairs.push(CriticalPair::new(g, hi, basis.polys[g].lm().lcm(&lh)));
        }
        return Ok(basis.push(h, is_field));
    }

    let actives: Vec<BasisIndex> = basis.active_indices().collect();
    let candidates: Vec<(BasisIndex, Monomial)> =
        actives.iter().map(|&g| (g, basis.polys[g].lm().lcm(&lh))).collect();

    let mut kept: Vec<(BasisIndex, Monomial)> = Vec::with_capacity(candidates.len());
    for (k, (g, l)) in candidates.iter().enumerate() {
        let coprime = lh.is_coprime(basis.polys[*g].lm());
        let dominated = candidates[k + 1..].iter().chain(kept.iter()).any(|(_, other)| other.divides(l));
        if coprime || !dominated {
            kept.push((*g, l.clone()));
        }
    }

    queue.pairs.retain(|p| {
        !lh.divides(&p.lcm)
            || basis.polys[p.left].lm().lcm(&lh) == p.lcm
            || basis.polys[p.right].lm().lcm(&lh) == p.lcm
    });

    for (g, l) in kept {
        if !lh.is_coprime(basis.polys[g].lm()) {
            queue.pairs.push(CriticalPair::new(g, hi, l));
        }
    }

    for g in actives {
        if lh.divides(basis.polys[g].lm()) {
            basis.deactivate(g);
        }
    }
    Ok(basis.push(h, is_field))
}

fn pair_key(ring: &PolyRing, a: &CriticalPair, b: &CriticalPair) -> Ordering {
    a.degree
        .cmp(&b.degree)
        .then_with(|| ring.cmp(&a.lcm, &b.lcm))
        .then_with(|| (a.left, a.right).cmp(&(b.left, b.right)))
}

/// Remove the pairs of minimal lcm degree. In batch mode all of them are
/// returned, sorted by lcm then index; otherwise only the first.
pub fn select_pairs(ring: &PolyRing, queue: &mut PairQueue, batch: bool) -> Result<Vec<CriticalPair>, EngineError> {
    let min = queue.pairs.iter().map(|p| p.degree).min().ok_or(EngineError::EmptyQueue)?;
    if batch {
        let (mut chosen, rest): (Vec<_>, Vec<_>) = queue.pairs.drain(..).partition(|p| p.degree == min);
        queue.pairs = rest;
        chosen.sort_by(|a, b| pair_key(ring, a, b));
        Ok(chosen)
    } else {
        let (pos, _) = queue
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| pair_key(ring, a, b))
            .expect("nonempty");
        Ok(vec![queue.pairs.swap_remove(pos)])
    }
}
