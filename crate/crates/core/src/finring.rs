//! Finite unital rings given by full Cayley tables.

use std::fmt;
use std::sync::Arc;

use crate::construct::Encoding;
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::ideals::{Ideal, Side};
use crate::limits;
use crate::Elem;

/// Above this size the axioms are checked on random triples only.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 512;
const SAMPLED_TRIPLES: usize = 1_000_000;

/// Raw table description, before validation.
#[derive(Debug, Clone)]
pub struct RawTables {
    pub size: usize,
    pub zero: Elem,
    pub one: Elem,
    /// Row-major `size * size` addition table.
    pub add: Vec<Elem>,
    /// Row-major `size * size` multiplication table.
    pub mul: Vec<Elem>,
    pub label: String,
}

/// A validated finite unital ring. Index 0 is always the zero element.
#[derive(Clone)]
pub struct FiniteRing {
    size: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    one: Elem,
    label: String,
    encoding: Encoding,
}

/// An element together with the ring it belongs to.
#[derive(Clone, Copy)]
pub struct RingElement<'a> {
    pub ring: &'a FiniteRing,
    pub index: Elem,
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.one == other.one && self.add == other.add && self.mul == other.mul
    }
}

impl Eq for FiniteRing {}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("label", &self.label)
            .field("size", &self.size)
            .finish()
    }
}

impl fmt::Debug for RingElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.ring.label, self.index)
    }
}

/// Validates raw tables and returns the ring.
///
/// If the declared zero is not index 0, indices 0 and `zero` are swapped so
/// that the canonical zero sits at index 0.
pub fn build_ring(raw: RawTables) -> Result<Arc<FiniteRing>> {
    FiniteRing::from_raw(raw, Encoding::Plain).map(Arc::new)
}

impl FiniteRing {
    pub(crate) fn from_raw(raw: RawTables, encoding: Encoding) -> Result<Self> {
        let RawTables {
            size,
            zero,
            one,
            mut add,
            mut mul,
            label,
        } = raw;
        if size == 0 {
            return Err(Error::DimensionMismatch("ring must have at least one element".into()));
        }
        limits::check_module("ring", size as u128)?;
        let bytes = 2 * (size as u64).pow(2) * std::mem::size_of::<Elem>() as u64;
        let cap = limits::get().table_bytes;
        if bytes > cap {
            return Err(Error::SizeCapExceeded {
                what: "ring tables (bytes)",
                size: bytes as u128,
                cap: cap as u128,
            });
        }
        let n2 = size * size;
        if add.len() != n2 || mul.len() != n2 {
            return Err(Error::DimensionMismatch(format!(
                "expected {n2} table entries, got {} (add) and {} (mul)",
                add.len(),
                mul.len()
            )));
        }
        if zero as usize >= size || one as usize >= size {
            return Err(Error::DimensionMismatch(format!(
                "zero {zero} / one {one} out of range for size {size}"
            )));
        }
        if let Some(&bad) = add.iter().chain(&mul).find(|&&e| e as usize >= size) {
            return Err(Error::DimensionMismatch(format!("table entry {bad} out of range")));
        }
        let mut one = one;
        if zero != 0 {
            let swap = |x: Elem| match x {
                0 => zero,
                x if x == zero => 0,
                x => x,
            };
            let relabel = |t: &[Elem]| {
                let mut out = vec![0; n2];
                for a in 0..size as Elem {
                    for b in 0..size as Elem {
                        out[swap(a) as usize * size + swap(b) as usize] = swap(t[a as usize * size + b as usize]);
                    }
                }
                out
            };
            add = relabel(&add);
            mul = relabel(&mul);
            one = swap(one);
        }
        let mut ring = FiniteRing {
            size,
            add,
            mul,
            neg: Vec::new(),
            one,
            label,
            encoding,
        };
        ring.neg = ring.compute_negatives()?;
        ring.check_axioms()?;
        Ok(ring)
    }

    fn compute_negatives(&self) -> Result<Vec<Elem>> {
        let n = self.size as Elem;
        for a in 0..n {
            if self.add(0, a) != a || self.add(a, 0) != a {
                return Err(Error::AxiomViolation {
                    axiom: "additive identity",
                    witness: (a, 0, 0),
                });
            }
        }
        (0..n)
            .map(|a| {
                (0..n).find(|&b| self.add(a, b) == 0).ok_or(Error::AxiomViolation {
                    axiom: "additive inverse",
                    witness: (a, 0, 0),
                })
            })
            .collect()
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.size as Elem;
        for a in 0..n {
            if self.mul(self.one, a) != a || self.mul(a, self.one) != a {
                return Err(Error::AxiomViolation {
                    axiom: "multiplicative identity",
                    witness: (a, self.one, 0),
                });
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(Error::AxiomViolation {
                        axiom: "additive commutativity",
                        witness: (a, b, 0),
                    });
                }
            }
        }
        if self.size <= EXHAUSTIVE_AXIOM_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        self.check_triple(a, b, c)?;
                    }
                }
            }
        } else {
            // xorshift; deterministic so a failing sample is reproducible
            let mut state = 0x9E37_79B9_7F4A_7C15u64 ^ self.size as u64;
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % self.size as u64) as Elem
            };
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (next(), next(), next());
                self.check_triple(a, b, c)?;
            }
        }
        Ok(())
    }

    #[inline]
    fn check_triple(&self, a: Elem, b: Elem, c: Elem) -> Result<()> {
        let fail = |axiom| Err(Error::AxiomViolation { axiom, witness: (a, b, c) });
        if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
            return fail("additive associativity");
        }
        if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
            return fail("associativity");
        }
        if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
            return fail("left distributivity");
        }
        if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
            return fail("right distributivity");
        }
        Ok(())
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        0
    }

    #[inline]
    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn encoding(&self) -> &Encoding {
        &self.encoding
    }

    pub(crate) fn with_label(mut self, label: String) -> Self {
        self.label = label;
        self
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.size as Elem
    }

    pub fn element(&self, index: Elem) -> RingElement<'_> {
        assert!((index as usize) < self.size);
        RingElement { ring: self, index }
    }

    pub fn add_table(&self) -> &[Elem] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Elem] {
        &self.mul
    }

    /// Additive order of `a`.
    pub fn additive_order(&self, a: Elem) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    /// `k·a` for a natural number `k`.
    pub fn times(&self, k: u64, a: Elem) -> Elem {
        let k = k % self.additive_order(a) as u64;
        (0..k).fold(0, |acc, _| self.add(acc, a))
    }

    pub fn is_unit(&self, x: Elem) -> bool {
        self.inverse(x).is_some()
    }

    /// Two-sided inverse, if any.
    pub fn inverse(&self, x: Elem) -> Option<Elem> {
        self.elements()
            .find(|&y| self.mul(x, y) == self.one && self.mul(y, x) == self.one)
    }

    pub fn units(&self) -> ElemSet {
        ElemSet::from_iter(self.size, self.elements().filter(|&x| self.is_unit(x)))
    }

    pub fn is_idempotent(&self, e: Elem) -> bool {
        self.mul(e, e) == e
    }

    /// All `e` with `e·e = e`, in index order.
    pub fn idempotents(&self) -> Vec<Elem> {
        self.elements().filter(|&e| self.is_idempotent(e)).collect()
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|x| self.elements().all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn is_central(&self, x: Elem) -> bool {
        self.elements().all(|y| self.mul(x, y) == self.mul(y, x))
    }

    /// `{ x : 1 − r·x is a unit for every r }`.
    ///
    /// Panics if the result fails to be a nilpotent two-sided ideal, which
    /// would mean the tables are inconsistent.
    pub fn jacobson_radical(self: &Arc<Self>) -> Ideal {
        let units = self.units();
        let members = ElemSet::from_iter(
            self.size,
            self.elements().filter(|&x| {
                self.elements()
                    .all(|r| units.contains(self.sub(self.one, self.mul(r, x))))
            }),
        );
        let j = Ideal::from_members(self, Side::TwoSided, members)
            .expect("Jacobson radical must be a two-sided ideal");
        assert!(j.nilpotency_index().is_some(), "Jacobson radical must be nilpotent");
        j
    }

    /// Multiplicative order data: the smallest `k ≥ 1` with `x^k = 0`.
    pub fn nilpotency(&self, x: Elem) -> Option<usize> {
        let mut p = x;
        for k in 1..=self.size {
            if p == 0 {
                return Some(k);
            }
            p = self.mul(p, x);
        }
        None
    }

    /// A ring isomorphism `self → other` as an element map, if one exists.
    ///
    /// Backtracking over images of additive generators; every partial map is
    /// extended additively and checked against both tables.
    pub fn find_isomorphism(&self, other: &FiniteRing) -> Option<Vec<Elem>> {
        if self.size != other.size {
            return None;
        }
        let gens = additive_generators(self);
        search_iso(self, other, &gens, &mut Vec::new(), 0)
    }
}

impl RingElement<'_> {
    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(self.index)
    }

    pub fn is_idempotent(&self) -> bool {
        self.ring.is_idempotent(self.index)
    }
}

/// Greedy additive generating set in index order.
pub(crate) fn additive_generators(ring: &FiniteRing) -> Vec<Elem> {
    let mut span = crate::group::Span::new(ring.size());
    let mut gens = Vec::new();
    for x in ring.elements() {
        if span.extend(x as u64, |a, b| ring.add(a as Elem, b as Elem) as u64) {
            gens.push(x);
        }
    }
    gens
}

fn search_iso(
    src: &FiniteRing,
    dst: &FiniteRing,
    gens: &[Elem],
    images: &mut Vec<Elem>,
    depth: usize,
) -> Option<Vec<Elem>> {
    if depth == gens.len() {
        let map = partial_map(src, dst, gens, images)?;
        if map.contains(&UNSET) || map[src.one() as usize] != dst.one() {
            return None;
        }
        let mut seen = ElemSet::new(dst.size());
        return map.iter().all(|&y| seen.insert(y)).then_some(map);
    }
    let order = src.additive_order(gens[depth]);
    for y in dst.elements() {
        if dst.additive_order(y) != order {
            continue;
        }
        images.push(y);
        if partial_map(src, dst, &gens[..=depth], images).is_some() {
            if let Some(m) = search_iso(src, dst, gens, images, depth + 1) {
                return Some(m);
            }
        }
        images.pop();
    }
    None
}

const UNSET: Elem = Elem::MAX;

/// Extends generator images additively over their span and checks the
/// multiplication on every product that stays inside the span. Unreached
/// elements map to `UNSET`.
fn partial_map(src: &FiniteRing, dst: &FiniteRing, gens: &[Elem], images: &[Elem]) -> Option<Vec<Elem>> {
    let mut map = vec![UNSET; src.size()];
    map[0] = 0;
    let mut reached = vec![0 as Elem];
    for (&g, &img) in gens.iter().zip(images) {
        let mut frontier = reached.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &x in &frontier {
                let y = src.add(x, g);
                let fy = dst.add(map[x as usize], img);
                match map[y as usize] {
                    UNSET => {
                        map[y as usize] = fy;
                        reached.push(y);
                        next.push(y);
                    }
                    v if v != fy => return None,
                    _ => {}
                }
            }
            frontier = next;
        }
    }
    for &a in &reached {
        for &b in &reached {
            let p = map[src.mul(a, b) as usize];
            if p != UNSET && p != dst.mul(map[a as usize], map[b as usize]) {
                return None;
            }
        }
    }
    Some(map)
}
