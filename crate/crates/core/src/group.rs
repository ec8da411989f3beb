//! Finite abelian group machinery: spans, ambient free modules, subquotients.
//!
//! Elements of `R^d` are encoded as mixed-radix integers over the ring's
//! element indices, most significant coordinate first, so numeric order on
//! codes is lexicographic order on tuples.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::finring::FiniteRing;
use crate::limits;
use crate::Elem;

/// Largest code universe that gets a dense index table.
const DENSE_LIMIT: u128 = 1 << 16;

#[derive(Debug, Clone)]
enum Index {
    Dense(Vec<u32>),
    Sparse(FxHashMap<u64, u32>),
}

impl Index {
    fn with_universe(universe: u128) -> Self {
        if universe <= DENSE_LIMIT {
            Index::Dense(vec![u32::MAX; universe as usize])
        } else {
            Index::Sparse(FxHashMap::default())
        }
    }

    #[inline]
    fn get(&self, x: u64) -> Option<u32> {
        match self {
            Index::Dense(v) => v.get(x as usize).copied().filter(|&p| p != u32::MAX),
            Index::Sparse(m) => m.get(&x).copied(),
        }
    }

    #[inline]
    fn set(&mut self, x: u64, p: u32) {
        match self {
            Index::Dense(v) => v[x as usize] = p,
            Index::Sparse(m) => {
                m.insert(x, p);
            }
        }
    }
}

/// Additive span built one generator at a time.
///
/// Each element remembers the element it was reached from and the generator
/// used, so any member can be written as a combination of the generators.
#[derive(Debug, Clone)]
pub struct Span {
    index: Index,
    elems: Vec<u64>,
    parent: Vec<(u32, u32)>,
    gens: Vec<u64>,
}

impl Span {
    /// Empty span (just zero) inside a universe of `universe` codes.
    pub fn new(universe: usize) -> Self {
        Self::with_universe(universe as u128)
    }

    pub fn with_universe(universe: u128) -> Self {
        let mut index = Index::with_universe(universe);
        index.set(0, 0);
        Self {
            index,
            elems: vec![0],
            parent: vec![(0, u32::MAX)],
            gens: Vec::new(),
        }
    }

    #[inline]
    pub fn contains(&self, x: u64) -> bool {
        self.index.get(x).is_some()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[u64] {
        &self.elems
    }

    pub fn generators(&self) -> &[u64] {
        &self.gens
    }

    /// Adds `t` to the span. Returns false if it was already a member.
    pub fn extend(&mut self, t: u64, add: impl Fn(u64, u64) -> u64) -> bool {
        if self.contains(t) {
            return false;
        }
        let g = self.gens.len() as u32;
        self.gens.push(t);
        let old = self.elems.len();
        let mut multiple = t;
        let mut k = 1usize;
        while !self.contains(multiple) {
            for i in 0..old {
                let y = add(self.elems[i], multiple);
                let from = if k == 1 { i } else { old * (k - 1) + i };
                self.index.set(y, self.elems.len() as u32);
                self.elems.push(y);
                self.parent.push((from as u32, g));
            }
            multiple = add(multiple, t);
            k += 1;
        }
        true
    }

    pub fn extend_all(&mut self, ts: impl IntoIterator<Item = u64>, add: impl Fn(u64, u64) -> u64) {
        for t in ts {
            self.extend(t, &add);
        }
    }

    /// Coefficients `c` with `x = Σ c[g]·gens[g]`, if `x` is a member.
    pub fn witness(&self, x: u64) -> Option<Vec<u64>> {
        let mut pos = self.index.get(x)? as usize;
        let mut coeffs = vec![0u64; self.gens.len()];
        while pos != 0 {
            let (from, g) = self.parent[pos];
            coeffs[g as usize] += 1;
            pos = from as usize;
        }
        Some(coeffs)
    }
}

/// The free module `R^rank`, elements encoded as codes.
#[derive(Debug, Clone)]
pub struct Ambient {
    ring: Arc<FiniteRing>,
    rank: usize,
    q: u64,
}

impl Ambient {
    pub fn new(ring: &Arc<FiniteRing>, rank: usize) -> Result<Self> {
        let q = ring.size() as u64;
        let size = (q as u128).checked_pow(rank as u32);
        if size.is_none_or(|s| s > u64::MAX as u128) {
            return Err(Error::SizeCapExceeded {
                what: "ambient free module",
                size: u128::MAX,
                cap: u64::MAX as u128,
            });
        }
        Ok(Self {
            ring: ring.clone(),
            rank,
            q,
        })
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn universe(&self) -> u128 {
        (self.q as u128).pow(self.rank as u32)
    }

    pub fn encode(&self, xs: &[Elem]) -> u64 {
        debug_assert_eq!(xs.len(), self.rank);
        xs.iter().fold(0, |acc, &x| acc * self.q + x as u64)
    }

    pub fn decode(&self, mut code: u64) -> Vec<Elem> {
        let mut out = vec![0; self.rank];
        for slot in out.iter_mut().rev() {
            *slot = (code % self.q) as Elem;
            code /= self.q;
        }
        out
    }

    /// Code of the vector with `x` at coordinate `i` and zero elsewhere.
    pub fn unit(&self, i: usize, x: Elem) -> u64 {
        x as u64 * self.q.pow((self.rank - 1 - i) as u32)
    }

    #[inline]
    fn zip(&self, mut a: u64, mut b: u64, f: impl Fn(Elem, Elem) -> Elem) -> u64 {
        let mut out = 0;
        let mut p = 1;
        for _ in 0..self.rank {
            out += f((a % self.q) as Elem, (b % self.q) as Elem) as u64 * p;
            p *= self.q;
            a /= self.q;
            b /= self.q;
        }
        out
    }

    #[inline]
    fn map(&self, a: u64, f: impl Fn(Elem) -> Elem) -> u64 {
        self.zip(a, 0, |x, _| f(x))
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.zip(a, b, |x, y| self.ring.add(x, y))
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        self.map(a, |x| self.ring.neg(x))
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    /// Coordinatewise `x·r`.
    #[inline]
    pub fn mul_right(&self, a: u64, r: Elem) -> u64 {
        self.map(a, |x| self.ring.mul(x, r))
    }

    /// Coordinatewise `r·x`.
    #[inline]
    pub fn mul_left(&self, r: Elem, a: u64) -> u64 {
        self.map(a, |x| self.ring.mul(r, x))
    }

    pub fn span(&self) -> Span {
        Span::with_universe(self.universe())
    }

    pub fn adder(&self) -> impl Fn(u64, u64) -> u64 + '_ {
        move |a, b| self.add(a, b)
    }
}

/// A subquotient `N / K` of some `R^d`, with elements indexed canonically.
///
/// Element `i` is the coset whose smallest code is `reps[i]`; cosets are
/// numbered in increasing order of that code, so index 0 is zero.
#[derive(Debug, Clone)]
pub struct Subquotient {
    ambient: Ambient,
    reps: Vec<u64>,
    index: Index,
    numerator_gens: Vec<u64>,
    relation_gens: Vec<u64>,
}

impl Subquotient {
    /// Builds `numerator / relations`. The relations must lie in the
    /// numerator.
    pub fn new(ambient: Ambient, numerator: &Span, relations: &Span) -> Result<Self> {
        limits::check_module("subquotient numerator", numerator.len() as u128)?;
        let mut codes = numerator.elements().to_vec();
        codes.sort_unstable();
        let mut index = Index::with_universe(ambient.universe());
        let mut reps = Vec::with_capacity(codes.len() / relations.len());
        for &c in &codes {
            if index.get(c).is_some() {
                continue;
            }
            let class = reps.len() as u32;
            reps.push(c);
            for &k in relations.elements() {
                let y = ambient.add(c, k);
                debug_assert!(numerator.contains(y), "relations must lie in the numerator");
                index.set(y, class);
            }
        }
        Ok(Self {
            ambient,
            reps,
            index,
            numerator_gens: numerator.generators().to_vec(),
            relation_gens: relations.generators().to_vec(),
        })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    /// Canonical (smallest) code of element `i`.
    pub fn rep(&self, i: u32) -> u64 {
        self.reps[i as usize]
    }

    pub fn rep_tuple(&self, i: u32) -> Vec<Elem> {
        self.ambient.decode(self.rep(i))
    }

    /// Element containing `code`, or `None` if the code is outside the
    /// numerator.
    #[inline]
    pub fn class_of(&self, code: u64) -> Option<u32> {
        self.index.get(code)
    }

    #[inline]
    pub fn class(&self, code: u64) -> u32 {
        self.class_of(code).expect("code outside numerator")
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.class(self.ambient.add(self.rep(a), self.rep(b)))
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.class(self.ambient.neg(self.rep(a)))
    }

    pub fn numerator_generators(&self) -> &[u64] {
        &self.numerator_gens
    }

    pub fn relation_generators(&self) -> &[u64] {
        &self.relation_gens
    }

    /// Every code of the numerator.
    pub fn numerator_codes(&self) -> Vec<u64> {
        let mut s = self.ambient.span();
        s.extend_all(self.numerator_gens.iter().copied(), self.ambient.adder());
        s.elements().to_vec()
    }

    pub fn relation_span(&self) -> Span {
        let mut s = self.ambient.span();
        s.extend_all(self.relation_gens.iter().copied(), self.ambient.adder());
        s
    }

    /// Span of element indices under this group's addition.
    pub fn span_of(&self, gens: impl IntoIterator<Item = u32>) -> Span {
        let mut s = Span::new(self.order());
        for g in gens {
            s.extend(g as u64, |a, b| self.add(a as u32, b as u32) as u64);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::zn;

    #[test]
    fn span_of_cyclic_group() {
        let r = zn(12).unwrap();
        let mut s = Span::new(12);
        assert!(s.extend(8, |a, b| r.add(a as u32, b as u32) as u64));
        assert_eq!(s.len(), 3);
        assert!(s.extend(6, |a, b| r.add(a as u32, b as u32) as u64));
        assert_eq!(s.len(), 6);
        assert!(!s.extend(10, |a, b| r.add(a as u32, b as u32) as u64));
        let w = s.witness(10).unwrap();
        let back = (w[0] * 8 + w[1] * 6) % 12;
        assert_eq!(back, 10);
    }

    #[test]
    fn ambient_codes_are_lexicographic() {
        let r = zn(3).unwrap();
        let amb = Ambient::new(&r, 2).unwrap();
        assert_eq!(amb.encode(&[1, 2]), 5);
        assert_eq!(amb.decode(5), vec![1, 2]);
        assert_eq!(amb.add(5, 4), amb.encode(&[2, 0]));
        assert_eq!(amb.unit(0, 2), 6);
        assert_eq!(amb.mul_right(5, 2), amb.encode(&[2, 1]));
    }

    #[test]
    fn subquotient_z6_mod_3() {
        let r = zn(6).unwrap();
        let amb = Ambient::new(&r, 1).unwrap();
        let mut num = amb.span();
        num.extend(1, amb.adder());
        let mut rel = amb.span();
        rel.extend(3, amb.adder());
        let q = Subquotient::new(amb, &num, &rel).unwrap();
        assert_eq!(q.order(), 3);
        assert_eq!((0..3).map(|i| q.rep(i)).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(q.add(2, 2), 1);
        assert_eq!(q.class(5), 2);
    }
}
