//! Finite modules over a finite ring.
//!
//! A module is a subquotient `N / K` of a free module `R^d` together with a
//! generating sequence. Right modules are acted on coordinatewise from the
//! right, left modules from the left. Linear algebra is done by additive
//! span closure over the carrier; nothing here relies on normal forms.
//!
//! Purity of an epimorphism between finite modules is tested as splitness:
//! a pure epimorphism onto a finitely presented module is a retraction, and
//! every finite module over a finite ring is finitely presented.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::finring::{additive_generators, FiniteRing};
use crate::group::{Ambient, Span, Subquotient};
use crate::ideals::{enumerate_ideals, same_ring, Ideal, Side};
use crate::limits;
use crate::matrix::RMatrix;
use crate::Elem;

#[derive(Clone)]
pub struct FinModule {
    ring: Arc<FiniteRing>,
    side: Side,
    carrier: Subquotient,
    generators: Vec<u32>,
    presentation: OnceLock<RMatrix>,
    lifts: OnceLock<Vec<Vec<Elem>>>,
}

impl fmt::Debug for FinModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinModule")
            .field("ring", &self.ring.label())
            .field("side", &self.side)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

fn full_span(amb: &Ambient) -> Span {
    let gens = additive_generators(amb.ring());
    let mut s = amb.span();
    for i in 0..amb.rank() {
        for &g in &gens {
            s.extend(amb.unit(i, g), amb.adder());
        }
    }
    s
}

fn check_module_side(side: Side) -> Result<()> {
    if side == Side::TwoSided {
        return Err(Error::SideMismatch("a module is either left or right".into()));
    }
    Ok(())
}

/// Largest module for which a cyclic generator is searched for.
const CYCLIC_SEARCH_CAP: usize = 1024;

impl FinModule {
    fn from_parts(
        ring: &Arc<FiniteRing>,
        side: Side,
        carrier: Subquotient,
        generators: Option<Vec<u32>>,
        presentation: Option<RMatrix>,
    ) -> Self {
        let mut m = FinModule {
            ring: ring.clone(),
            side,
            carrier,
            generators: Vec::new(),
            presentation: OnceLock::new(),
            lifts: OnceLock::new(),
        };
        m.generators = match generators {
            Some(g) => g,
            None => m.greedy_generators(),
        };
        if let Some(p) = presentation {
            let _ = m.presentation.set(p);
        }
        m
    }

    /// `N / K` inside `R^rank`. Both spans must be submodules of the
    /// requested side; generators are chosen greedily when not given.
    pub fn from_spans(
        ring: &Arc<FiniteRing>,
        side: Side,
        rank: usize,
        numerator: &Span,
        relations: &Span,
        generators: Option<Vec<u32>>,
    ) -> Result<Self> {
        check_module_side(side)?;
        let amb = Ambient::new(ring, rank)?;
        let carrier = Subquotient::new(amb, numerator, relations)?;
        Ok(Self::from_parts(ring, side, carrier, generators, None))
    }

    /// `R^rank` as a left or right module.
    pub fn free(ring: &Arc<FiniteRing>, rank: usize, side: Side) -> Result<Self> {
        check_module_side(side)?;
        let amb = Ambient::new(ring, rank)?;
        limits::check_module("free module", amb.universe())?;
        let num = full_span(&amb);
        let rel = amb.span();
        let gens: Vec<u64> = (0..rank).map(|i| amb.unit(i, ring.one())).collect();
        let carrier = Subquotient::new(amb, &num, &rel)?;
        let gens = gens.into_iter().map(|c| carrier.class(c)).collect();
        let pres = RMatrix::zero(ring, if side == Side::Right { rank } else { 0 }, if side == Side::Right { 0 } else { rank });
        Ok(Self::from_parts(ring, side, carrier, Some(gens), Some(pres)))
    }

    /// `R / K` for a one-sided (or two-sided) ideal `K`, as a module of `side`.
    pub fn ring_quotient(k: &Ideal, side: Side) -> Result<Self> {
        check_module_side(side)?;
        let ok = if side == Side::Right { k.side().right_closed() } else { k.side().left_closed() };
        if !ok {
            return Err(Error::SideMismatch(format!("R/K as a {side} module needs K closed on the {side}")));
        }
        let ring = k.ring();
        let amb = Ambient::new(ring, 1)?;
        let num = full_span(&amb);
        let mut rel = amb.span();
        rel.extend_all(k.additive_generators().into_iter().map(u64::from), amb.adder());
        let carrier = Subquotient::new(amb, &num, &rel)?;
        let gen = carrier.class(ring.one() as u64);
        let gens = if gen == 0 { Vec::new() } else { vec![gen] };
        Ok(Self::from_parts(ring, side, carrier, Some(gens), None))
    }

    /// An ideal viewed as a module of `side`.
    pub fn ideal_module(ideal: &Ideal, side: Side) -> Result<Self> {
        check_module_side(side)?;
        let ok = if side == Side::Right { ideal.side().right_closed() } else { ideal.side().left_closed() };
        if !ok {
            return Err(Error::SideMismatch(format!("ideal is not closed on the {side}")));
        }
        let ring = ideal.ring();
        let amb = Ambient::new(ring, 1)?;
        let mut num = amb.span();
        num.extend_all(ideal.additive_generators().into_iter().map(u64::from), amb.adder());
        let rel = amb.span();
        let carrier = Subquotient::new(amb, &num, &rel)?;
        Ok(Self::from_parts(ring, side, carrier, None, None))
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn carrier(&self) -> &Subquotient {
        &self.carrier
    }

    pub fn order(&self) -> usize {
        self.carrier.order()
    }

    pub fn is_zero(&self) -> bool {
        self.order() == 1
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order() as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.carrier.add(a, b)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.carrier.neg(a)
    }

    /// `x·r` for right modules, `r·x` for left modules.
    #[inline]
    pub fn act(&self, x: u32, r: Elem) -> u32 {
        let amb = self.carrier.ambient();
        let code = self.carrier.rep(x);
        let y = match self.side {
            Side::Left => amb.mul_left(r, code),
            _ => amb.mul_right(code, r),
        };
        self.carrier.class(y)
    }

    pub fn sum(&self, xs: impl IntoIterator<Item = u32>) -> u32 {
        xs.into_iter().fold(0, |acc, x| self.add(acc, x))
    }

    /// Element `Σ g_i·r_i` (or `Σ r_i·g_i`) for coordinates `r`.
    pub fn combine(&self, coords: &[Elem]) -> u32 {
        self.sum(self.generators.iter().zip(coords).map(|(&g, &r)| self.act(g, r)))
    }

    /// The element of a rank-one module with no relations that corresponds
    /// to ring element `x`.
    pub fn ring_element(&self, x: u32) -> Elem {
        self.carrier.rep(x) as Elem
    }

    /// Additive generators of the carrier.
    pub fn additive_generators(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .carrier
            .numerator_generators()
            .iter()
            .map(|&c| self.carrier.class(c))
            .filter(|&x| x != 0)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Submodule generated by `xs`, as a set of element indices.
    pub fn submodule_generated(&self, xs: &[u32]) -> ElemSet {
        let rgens = additive_generators(&self.ring);
        let span = self.carrier.span_of(xs.iter().flat_map(|&x| rgens.iter().map(move |&r| self.act(x, r))));
        ElemSet::from_iter(self.order(), span.elements().iter().map(|&x| x as u32))
    }

    fn greedy_generators(&self) -> Vec<u32> {
        let rgens = additive_generators(&self.ring);
        // a single generator keeps presentations and section searches small
        if self.order() <= CYCLIC_SEARCH_CAP {
            if let Some(x) = self.elements().skip(1).find(|&x| self.submodule_generated(&[x]).count() == self.order()) {
                return vec![x];
            }
        }
        let mut span = Span::new(self.order());
        let add = |a: u64, b: u64| self.add(a as u32, b as u32) as u64;
        let mut gens = Vec::new();
        for x in self.elements() {
            if span.contains(x as u64) {
                continue;
            }
            gens.push(x);
            for &r in &rgens {
                span.extend(self.act(x, r) as u64, add);
            }
            if span.len() == self.order() {
                break;
            }
        }
        gens
    }

    /// Coordinates of every element over the generating sequence.
    pub fn lifts(&self) -> &[Vec<Elem>] {
        self.lifts.get_or_init(|| {
            let rgens = additive_generators(&self.ring);
            let add = |a: u64, b: u64| self.add(a as u32, b as u32) as u64;
            let mut span = Span::new(self.order());
            let mut origin = Vec::new();
            for (i, &g) in self.generators.iter().enumerate() {
                for &r in &rgens {
                    if span.extend(self.act(g, r) as u64, add) {
                        origin.push((i, r));
                    }
                }
            }
            assert_eq!(span.len(), self.order(), "generators do not generate the module");
            self.elements()
                .map(|x| {
                    let coeffs = span.witness(x as u64).expect("spanned");
                    let mut coords = vec![0; self.generators.len()];
                    for (c, &(i, r)) in coeffs.iter().zip(&origin) {
                        coords[i] = self.ring.add(coords[i], self.ring.times(*c, r));
                    }
                    coords
                })
                .collect()
        })
    }

    pub fn lift(&self, x: u32) -> &[Elem] {
        &self.lifts()[x as usize]
    }

    /// Relation matrix for the generating sequence.
    ///
    /// Right modules: `m × n` with `M ≅ R^m / A·R^n`. Left modules: `m × n`
    /// with `M ≅ R^{1×n} / R^{1×m}·A`.
    pub fn presentation(&self) -> Result<RMatrix> {
        if let Some(p) = self.presentation.get() {
            return Ok(p.clone());
        }
        let p = self.compute_presentation()?;
        let _ = self.presentation.set(p.clone());
        Ok(p)
    }

    fn compute_presentation(&self) -> Result<RMatrix> {
        let t = self.generators.len();
        let amb = Ambient::new(&self.ring, t)?;
        limits::check_module("presentation search space", amb.universe())?;
        let rgens = additive_generators(&self.ring);
        let mut kernel_span = amb.span();
        let mut relations: Vec<Vec<Elem>> = Vec::new();
        for code in 0..amb.universe() as u64 {
            if kernel_span.contains(code) {
                continue;
            }
            let coords = amb.decode(code);
            if self.combine(&coords) != 0 {
                continue;
            }
            for &r in &rgens {
                let c = match self.side {
                    Side::Left => amb.mul_left(r, code),
                    _ => amb.mul_right(code, r),
                };
                kernel_span.extend(c, amb.adder());
            }
            relations.push(coords);
        }
        let s = relations.len();
        let mut a = match self.side {
            Side::Left => RMatrix::zero(&self.ring, s, t),
            _ => RMatrix::zero(&self.ring, t, s),
        };
        for (j, rel) in relations.iter().enumerate() {
            for (i, &x) in rel.iter().enumerate() {
                match self.side {
                    Side::Left => a.set(j, i, x),
                    _ => a.set(i, j, x),
                }
            }
        }
        Ok(a)
    }

    /// Submodule spanned by a set of elements.
    pub fn submodule(&self, set: &ElemSet) -> Result<FinModule> {
        let amb = self.carrier.ambient().clone();
        let mut num = self.carrier.relation_span();
        num.extend_all(set.iter().map(|x| self.carrier.rep(x)), amb.adder());
        let rel = self.carrier.relation_span();
        FinModule::from_spans(&self.ring, self.side, amb.rank(), &num, &rel, None)
    }

    /// Quotient by the submodule spanned by a set of elements.
    pub fn quotient(&self, set: &ElemSet) -> Result<FinModule> {
        let amb = self.carrier.ambient().clone();
        let mut num = amb.span();
        num.extend_all(self.carrier.numerator_generators().iter().copied(), amb.adder());
        let mut rel = self.carrier.relation_span();
        rel.extend_all(set.iter().map(|x| self.carrier.rep(x)), amb.adder());
        let gens: Vec<u64> = self.generators.iter().map(|&g| self.carrier.rep(g)).collect();
        let m = FinModule::from_spans(&self.ring, self.side, amb.rank(), &num, &rel, None)?;
        let mapped: Vec<u32> = gens.into_iter().map(|c| m.carrier.class(c)).filter(|&x| x != 0).collect();
        Ok(FinModule::from_parts(&self.ring, self.side, m.carrier, Some(mapped), None))
    }

    /// `self ⊕ other`; generators are those of `self` followed by those of
    /// `other`.
    pub fn direct_sum(&self, other: &FinModule) -> Result<FinModule> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.side != other.side {
            return Err(Error::SideMismatch("direct sum of modules on different sides".into()));
        }
        let (a1, a2) = (self.carrier.ambient(), other.carrier.ambient());
        let rank = a1.rank() + a2.rank();
        let amb = Ambient::new(&self.ring, rank)?;
        let shift = (self.ring.size() as u64).pow(a2.rank() as u32);
        let hi = |c: u64| c * shift;
        let mut num = amb.span();
        num.extend_all(self.carrier.numerator_generators().iter().map(|&c| hi(c)), amb.adder());
        num.extend_all(other.carrier.numerator_generators().iter().copied(), amb.adder());
        let mut rel = amb.span();
        rel.extend_all(self.carrier.relation_generators().iter().map(|&c| hi(c)), amb.adder());
        rel.extend_all(other.carrier.relation_generators().iter().copied(), amb.adder());
        let carrier = Subquotient::new(amb, &num, &rel)?;
        let gens = self
            .generators
            .iter()
            .map(|&g| carrier.class(hi(self.carrier.rep(g))))
            .chain(other.generators.iter().map(|&g| carrier.class(other.carrier.rep(g))))
            .collect();
        Ok(FinModule::from_parts(&self.ring, self.side, carrier, Some(gens), None))
    }

    /// Exhaustive check of the module axioms on the carrier.
    pub fn check_axioms(&self) -> Result<()> {
        let r = &self.ring;
        let bad = |what: &str| Err(Error::Invalid(format!("module axiom fails: {what}")));
        for x in self.elements() {
            if self.act(x, r.one()) != x {
                return bad("unital");
            }
            for s in r.elements() {
                for t in r.elements() {
                    let (lhs, rhs) = match self.side {
                        Side::Left => (self.act(self.act(x, t), s), self.act(x, r.mul(s, t))),
                        _ => (self.act(self.act(x, s), t), self.act(x, r.mul(s, t))),
                    };
                    if lhs != rhs {
                        return bad("associative");
                    }
                    if self.act(x, r.add(s, t)) != self.add(self.act(x, s), self.act(x, t)) {
                        return bad("additive in the ring argument");
                    }
                }
                for y in self.elements() {
                    if self.act(self.add(x, y), s) != self.add(self.act(x, s), self.act(y, s)) {
                        return bad("additive in the module argument");
                    }
                }
            }
        }
        Ok(())
    }
}

/// Module with a given relation matrix. Right: `R^m / A·R^n`; left:
/// `R^{1×n} / R^{1×m}·A`. Elements are cosets indexed by their
/// lexicographically smallest tuple.
pub fn module_from_presentation(a: &RMatrix, side: Side) -> Result<FinModule> {
    check_module_side(side)?;
    let ring = a.ring();
    let rank = if side == Side::Right { a.rows() } else { a.cols() };
    let amb = Ambient::new(ring, rank)?;
    limits::check_module("presented module", amb.universe())?;
    let num = full_span(&amb);
    let rgens = additive_generators(ring);
    let mut rel = amb.span();
    match side {
        Side::Right => {
            for j in 0..a.cols() {
                let col = a.column(j);
                for &g in &rgens {
                    let v: Vec<Elem> = col.iter().map(|&x| ring.mul(x, g)).collect();
                    rel.extend(amb.encode(&v), amb.adder());
                }
            }
        }
        _ => {
            for i in 0..a.rows() {
                let row = a.row(i);
                for &g in &rgens {
                    let v: Vec<Elem> = row.iter().map(|&x| ring.mul(g, x)).collect();
                    rel.extend(amb.encode(&v), amb.adder());
                }
            }
        }
    }
    let units: Vec<u64> = (0..rank).map(|i| amb.unit(i, ring.one())).collect();
    let carrier = Subquotient::new(amb, &num, &rel)?;
    let gens = units.into_iter().map(|c| carrier.class(c)).collect();
    Ok(FinModule::from_parts(ring, side, carrier, Some(gens), Some(a.clone())))
}

fn require_right(m: &FinModule, what: &str) -> Result<()> {
    if m.side != Side::Right {
        return Err(Error::SideMismatch(format!("{what} needs a right module")));
    }
    Ok(())
}

fn require_two_sided(i: &Ideal, m: &FinModule) -> Result<()> {
    if i.side() != Side::TwoSided {
        return Err(Error::SideMismatch("ideal must be two-sided".into()));
    }
    if !same_ring(i.ring(), &m.ring) {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

/// `M·I`, the additive span of `{ m·x : m ∈ M, x ∈ I }`.
pub fn submodule_mi(m: &FinModule, i: &Ideal) -> Result<ElemSet> {
    require_right(m, "M·I")?;
    require_two_sided(i, m)?;
    let xs = i.additive_generators();
    let span = m
        .carrier
        .span_of(m.additive_generators().into_iter().flat_map(|g| xs.iter().map(move |&x| m.act(g, x))));
    Ok(ElemSet::from_iter(m.order(), span.elements().iter().map(|&x| x as u32)))
}

/// `r.ann_M(I) = { m : m·x = 0 for all x ∈ I }`.
pub fn right_annihilator(m: &FinModule, i: &Ideal) -> Result<ElemSet> {
    require_right(m, "r.ann")?;
    require_two_sided(i, m)?;
    let xs = i.additive_generators();
    Ok(ElemSet::from_iter(
        m.order(),
        m.elements().filter(|&v| xs.iter().all(|&x| m.act(v, x) == 0)),
    ))
}

/// An additive map between finite groups, as an element table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    pub source_order: usize,
    pub target_order: usize,
    pub table: Vec<u32>,
}

impl GroupHom {
    pub fn kernel_order(&self) -> usize {
        self.table.iter().filter(|&&y| y == 0).count()
    }

    pub fn image(&self) -> ElemSet {
        ElemSet::from_iter(self.target_order, self.table.iter().copied())
    }

    pub fn is_mono(&self) -> bool {
        self.kernel_order() == 1
    }

    pub fn is_epi(&self) -> bool {
        self.image().count() == self.target_order
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }
}

/// `M ⊗_R N` for a right module `M` and a left module `N`.
///
/// Computed as the cokernel of `N^s → N^t, Y ↦ A·Y` where `A` presents `M`.
/// Slot `i` of an element corresponds to `g_i ⊗ n_i` for the `i`-th
/// generator `g_i` of `M`.
pub struct Tensor<'a> {
    right: &'a FinModule,
    left: &'a FinModule,
    group: Subquotient,
    block: u64,
    slots: usize,
}

impl fmt::Debug for Tensor<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tensor").field("order", &self.order()).finish()
    }
}

pub fn tensor<'a>(m: &'a FinModule, n: &'a FinModule) -> Result<Tensor<'a>> {
    if !same_ring(&m.ring, &n.ring) {
        return Err(Error::RingMismatch);
    }
    if m.side != Side::Right || n.side != Side::Left {
        return Err(Error::SideMismatch("tensor needs a right module and a left module".into()));
    }
    let a = m.presentation()?;
    let t = a.rows();
    let namb = n.carrier.ambient();
    let k = namb.rank();
    let amb = Ambient::new(&m.ring, k * t)?;
    let block = (m.ring.size() as u64).pow(k as u32);
    let place = |i: usize, code: u64| code * block.pow((t - 1 - i) as u32);
    let rel_n = n.carrier.relation_span();
    let numerator_order = (n.order() as u128 * rel_n.len() as u128).pow(t as u32);
    limits::check_module("tensor numerator", numerator_order)?;
    let mut num = amb.span();
    let mut rel = amb.span();
    for i in 0..t {
        num.extend_all(n.carrier.numerator_generators().iter().map(|&c| place(i, c)), amb.adder());
        rel.extend_all(n.carrier.relation_generators().iter().map(|&c| place(i, c)), amb.adder());
    }
    for j in 0..a.cols() {
        for &y in n.carrier.numerator_generators() {
            let v = (0..t).fold(0, |acc, i| amb.add(acc, place(i, namb.mul_left(a.get(i, j), y))));
            rel.extend(v, amb.adder());
        }
    }
    let group = Subquotient::new(amb, &num, &rel)?;
    Ok(Tensor {
        right: m,
        left: n,
        group,
        block,
        slots: t,
    })
}

impl Tensor<'_> {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn group(&self) -> &Subquotient {
        &self.group
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.group.add(a, b)
    }

    fn place(&self, i: usize, code: u64) -> u64 {
        code * self.block.pow((self.slots - 1 - i) as u32)
    }

    /// `x ⊗ y`.
    pub fn pure(&self, x: u32, y: u32) -> u32 {
        let coords = self.right.lift(x);
        let amb = self.group.ambient();
        let code = coords.iter().enumerate().fold(0, |acc, (i, &r)| {
            let ny = self.left.act(y, r);
            amb.add(acc, self.place(i, self.left.carrier.rep(ny)))
        });
        self.group.class(code)
    }

    /// Slot values `n_i` of the canonical representative `Σ g_i ⊗ n_i`.
    pub fn slots(&self, e: u32) -> Vec<u32> {
        let mut code = self.group.rep(e);
        let mut out = vec![0; self.slots];
        for slot in out.iter_mut().rev() {
            *slot = self.left.carrier.class(code % self.block);
            code /= self.block;
        }
        out
    }

    /// Additive map out of the tensor product given by a balanced map on
    /// `(generator index, element of N)`.
    pub fn induced(&self, target_order: usize, target_add: impl Fn(u32, u32) -> u32, f: impl Fn(usize, u32) -> u32) -> GroupHom {
        let table = (0..self.order() as u32)
            .map(|e| {
                self.slots(e)
                    .into_iter()
                    .enumerate()
                    .fold(0, |acc, (i, n)| target_add(acc, f(i, n)))
            })
            .collect();
        GroupHom {
            source_order: self.order(),
            target_order,
            table,
        }
    }
}

/// The multiplication map `M ⊗ I → M` (right `M`) or `I ⊗ M → M` (left `M`).
pub fn multiplication_map(m: &FinModule, ideal: &Ideal) -> Result<GroupHom> {
    if !same_ring(ideal.ring(), &m.ring) {
        return Err(Error::RingMismatch);
    }
    match m.side {
        Side::Right => {
            let i = FinModule::ideal_module(ideal, Side::Left)?;
            let t = tensor(m, &i)?;
            Ok(t.induced(m.order(), |a, b| m.add(a, b), |k, y| m.act(m.generators[k], i.ring_element(y))))
        }
        _ => {
            let i = FinModule::ideal_module(ideal, Side::Right)?;
            let t = tensor(&i, m)?;
            Ok(t.induced(m.order(), |a, b| m.add(a, b), |k, y| m.act(y, i.ring_element(i.generators[k]))))
        }
    }
}

/// Whether `ρ_M : M ⊗ I → M` is an isomorphism.
pub fn is_in_x_i(m: &FinModule, ideal: &Ideal) -> Result<bool> {
    ideal.require_idempotent()?;
    require_right(m, "X_I membership")?;
    Ok(multiplication_map(m, ideal)?.is_iso())
}

/// Flatness: tensoring each inclusion `L → R` of one-sided ideals on the
/// opposite side stays injective.
pub fn is_flat(m: &FinModule) -> Result<bool> {
    let side = match m.side {
        Side::Right => Side::Left,
        _ => Side::Right,
    };
    for l in enumerate_ideals(&m.ring, side)? {
        if !multiplication_map(m, &l)?.is_mono() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The group `Hom_R(M, N)`, each map stored by its generator images.
#[derive(Debug, Clone)]
pub struct HomGroup {
    images: Vec<Vec<u32>>,
}

impl HomGroup {
    pub fn order(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Vec<u32>] {
        &self.images
    }

    /// Full element table of the `k`-th map.
    pub fn table(&self, k: usize, source: &FinModule, target: &FinModule) -> Vec<u32> {
        map_table(source, target, &self.images[k])
    }
}

fn map_table(source: &FinModule, target: &FinModule, images: &[u32]) -> Vec<u32> {
    source
        .elements()
        .map(|x| target.sum(images.iter().zip(source.lift(x)).map(|(&c, &r)| target.act(c, r))))
        .collect()
}

/// Whether generator images respect every relation of `source`.
fn respects_relations(source: &FinModule, target: &FinModule, a: &RMatrix, images: &[u32]) -> bool {
    match source.side {
        Side::Left => (0..a.rows()).all(|j| target.sum(images.iter().enumerate().map(|(i, &c)| target.act(c, a.get(j, i)))) == 0),
        _ => (0..a.cols()).all(|j| target.sum(images.iter().enumerate().map(|(i, &c)| target.act(c, a.get(i, j)))) == 0),
    }
}

/// All module maps `M → N`, enumerated by generator images and filtered by
/// the relations of `M`.
pub fn hom_group(m: &FinModule, n: &FinModule) -> Result<HomGroup> {
    if !same_ring(&m.ring, &n.ring) {
        return Err(Error::RingMismatch);
    }
    if m.side != n.side {
        return Err(Error::SideMismatch("Hom between modules on different sides".into()));
    }
    let a = m.presentation()?;
    let t = m.generators.len();
    let space = (n.order() as u128).checked_pow(t as u32).unwrap_or(u128::MAX);
    limits::check_module("hom candidate space", space)?;
    let mut images = Vec::new();
    let mut cur = vec![0u32; t];
    loop {
        if respects_relations(m, n, &a, &cur) {
            images.push(cur.clone());
        }
        let mut i = t;
        loop {
            if i == 0 {
                return Ok(HomGroup { images });
            }
            i -= 1;
            cur[i] += 1;
            if (cur[i] as usize) < n.order() {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// A module homomorphism, stored as a full element table.
#[derive(Debug, Clone)]
pub struct ModuleMap {
    source: Arc<FinModule>,
    target: Arc<FinModule>,
    table: Vec<u32>,
}

impl ModuleMap {
    /// Checks additivity and linearity exhaustively.
    pub fn new(source: Arc<FinModule>, target: Arc<FinModule>, table: Vec<u32>) -> Result<Self> {
        if table.len() != source.order() || table.iter().any(|&y| y as usize >= target.order()) {
            return Err(Error::DimensionMismatch("map table does not fit its modules".into()));
        }
        if source.side != target.side || !same_ring(&source.ring, &target.ring) {
            return Err(Error::SideMismatch("map between incompatible modules".into()));
        }
        let rgens = additive_generators(&source.ring);
        for x in source.elements() {
            for y in source.additive_generators() {
                if table[source.add(x, y) as usize] != target.add(table[x as usize], table[y as usize]) {
                    return Err(Error::Invalid("map is not additive".into()));
                }
            }
            for &r in rgens.iter().chain(std::iter::once(&source.ring.one())) {
                if table[source.act(x, r) as usize] != target.act(table[x as usize], r) {
                    return Err(Error::Invalid("map is not linear".into()));
                }
            }
        }
        Ok(Self { source, target, table })
    }

    pub fn from_generator_images(source: Arc<FinModule>, target: Arc<FinModule>, images: &[u32]) -> Result<Self> {
        let a = source.presentation()?;
        if images.len() != source.generators.len() || !respects_relations(&source, &target, &a, images) {
            return Err(Error::Invalid("generator images violate the relations".into()));
        }
        let table = map_table(&source, &target, images);
        Self::new(source, target, table)
    }

    /// `R^g → M` sending the standard basis to the generators of `M`.
    pub fn canonical_epi(m: &Arc<FinModule>) -> Result<Self> {
        let free = Arc::new(FinModule::free(&m.ring, m.generators.len(), m.side)?);
        let table = free.elements().map(|x| m.combine(free.lift(x))).collect();
        Ok(Self {
            source: free,
            target: m.clone(),
            table,
        })
    }

    pub fn source(&self) -> &Arc<FinModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinModule> {
        &self.target
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    pub fn is_epi(&self) -> bool {
        ElemSet::from_iter(self.target.order(), self.table.iter().copied()).count() == self.target.order()
    }

    /// A section `s` with `p∘s = id`, found by solving an additive equation
    /// system over the kernel of `p`.
    pub fn find_section(&self) -> Result<Option<ModuleMap>> {
        if !self.is_epi() {
            return Err(Error::NotEpi);
        }
        let (m, n) = (&*self.source, &*self.target);
        let a = n.presentation()?;
        let hs = &n.generators;
        let base: Vec<u32> = hs
            .iter()
            .map(|&h| self.table.iter().position(|&y| y == h).expect("epi") as u32)
            .collect();
        let ker: Vec<u32> = m.elements().filter(|&x| self.table[x as usize] == 0).collect();
        let ker_gens: Vec<u32> = m
            .carrier
            .span_of(ker.iter().copied())
            .generators()
            .iter()
            .map(|&x| x as u32)
            .collect();
        let (nrel, coeff): (usize, Box<dyn Fn(usize, usize) -> Elem>) = match n.side {
            Side::Left => (a.rows(), Box::new(|c, j| a.get(c, j))),
            _ => (a.cols(), Box::new(|c, j| a.get(j, c))),
        };
        let q = m.order() as u64;
        let universe = (q as u128).checked_pow(nrel as u32).unwrap_or(u128::MAX);
        if universe > u64::MAX as u128 {
            return Err(Error::SizeCapExceeded {
                what: "section equation system",
                size: universe,
                cap: u64::MAX as u128,
            });
        }
        let encode = |v: &[u32]| v.iter().fold(0u64, |acc, &x| acc * q + x as u64);
        let add = |mut x: u64, mut y: u64| {
            let (mut out, mut p) = (0u64, 1u64);
            for _ in 0..nrel {
                out += m.add((x % q) as u32, (y % q) as u32) as u64 * p;
                p *= q;
                x /= q;
                y /= q;
            }
            out
        };
        let relation_values = |images: &[u32]| -> Vec<u32> {
            (0..nrel)
                .map(|c| m.sum(images.iter().enumerate().map(|(j, &v)| m.act(v, coeff(c, j)))))
                .collect()
        };
        let target: Vec<u32> = relation_values(&base).into_iter().map(|x| m.neg(x)).collect();
        let mut span = Span::with_universe(universe);
        let mut origin = Vec::new();
        for j in 0..hs.len() {
            for &k in &ker_gens {
                let mut single = vec![0u32; hs.len()];
                single[j] = k;
                if span.extend(encode(&relation_values(&single)), add) {
                    origin.push((j, k));
                }
            }
        }
        let Some(coeffs) = span.witness(encode(&target)) else {
            return Ok(None);
        };
        let mut images = base;
        for (c, &(j, k)) in coeffs.iter().zip(&origin) {
            for _ in 0..*c {
                images[j] = m.add(images[j], k);
            }
        }
        let s = ModuleMap::from_generator_images(self.target.clone(), self.source.clone(), &images)?;
        assert!(
            n.elements().all(|y| self.apply(s.apply(y)) == y),
            "section search returned a non-section"
        );
        Ok(Some(s))
    }
}

/// Projectivity: the canonical epimorphism from a free module splits.
pub fn is_projective(m: &FinModule) -> Result<bool> {
    let m = Arc::new(m.clone());
    Ok(ModuleMap::canonical_epi(&m)?.find_section()?.is_some())
}

/// Purity of an epimorphism of finite modules, tested as splitness.
pub fn is_pure_epi(p: &ModuleMap) -> Result<bool> {
    Ok(p.find_section()?.is_some())
}

/// `Σ_{M ∈ S} Σ_{f : M → R} Im(f)` for right modules `M`.
pub fn trace_ideal(ring: &Arc<FiniteRing>, modules: &[FinModule]) -> Result<Ideal> {
    let r = FinModule::free(ring, 1, Side::Right)?;
    let mut gens = Vec::new();
    for m in modules {
        require_right(m, "trace")?;
        if !same_ring(&m.ring, ring) {
            return Err(Error::RingMismatch);
        }
        for images in hom_group(m, &r)?.images() {
            gens.extend(images.iter().map(|&c| r.ring_element(c)));
        }
    }
    gens.sort_unstable();
    gens.dedup();
    let right = Ideal::generated(ring, &gens, Side::Right);
    Ok(right
        .as_side(Side::TwoSided)
        .expect("a trace ideal is two-sided"))
}

/// Auslander–Bridger transpose: the cokernel of the dual presentation, a
/// module on the opposite side.
pub fn transpose(m: &FinModule) -> Result<FinModule> {
    let a = m.presentation()?;
    let side = match m.side {
        Side::Right => Side::Left,
        _ => Side::Right,
    };
    module_from_presentation(&a, side)
}

/// `Hom_R(M, N)` as a finite group.
pub fn hom(m: &FinModule, n: &FinModule) -> Result<HomGroup> {
    hom_group(m, n)
}
