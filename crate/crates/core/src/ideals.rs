//! One- and two-sided ideals as membership bitsets.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::finring::FiniteRing;
use crate::group::Span;
use crate::limits;
use crate::modcat::{self, FinModule};
use crate::Elem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

impl Side {
    /// Whether an ideal of this side is closed under left multiplication.
    pub fn left_closed(self) -> bool {
        matches!(self, Side::Left | Side::TwoSided)
    }

    pub fn right_closed(self) -> bool {
        matches!(self, Side::Right | Side::TwoSided)
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
            Side::TwoSided => Side::TwoSided,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::TwoSided => "two-sided",
        })
    }
}

#[derive(Clone)]
pub struct Ideal {
    ring: Arc<FiniteRing>,
    side: Side,
    members: ElemSet,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.side == other.side && self.members == other.members && same_ring(&self.ring, &other.ring)
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ideal {:?} of {}", self.side, self.members, self.ring.label())
    }
}

pub(crate) fn same_ring(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn ring_span(ring: &FiniteRing, gens: impl IntoIterator<Item = Elem>) -> Span {
    let mut span = Span::new(ring.size());
    span.extend_all(gens.into_iter().map(u64::from), |a, b| ring.add(a as Elem, b as Elem) as u64);
    span
}

fn span_set(ring: &FiniteRing, span: &Span) -> ElemSet {
    ElemSet::from_iter(ring.size(), span.elements().iter().map(|&x| x as Elem))
}

impl Ideal {
    /// Wraps a member set after checking every ideal axiom for `side`.
    pub fn from_members(ring: &Arc<FiniteRing>, side: Side, members: ElemSet) -> Result<Self> {
        if members.universe() != ring.size() {
            return Err(Error::InvalidIdeal("member set has the wrong universe".into()));
        }
        if !members.contains(0) {
            return Err(Error::InvalidIdeal("zero is not a member".into()));
        }
        for x in members.iter() {
            for y in members.iter() {
                if !members.contains(ring.add(x, y)) {
                    return Err(Error::InvalidIdeal(format!("{x} + {y} is not a member")));
                }
            }
            for r in ring.elements() {
                if side.left_closed() && !members.contains(ring.mul(r, x)) {
                    return Err(Error::InvalidIdeal(format!("{r}·{x} is not a member")));
                }
                if side.right_closed() && !members.contains(ring.mul(x, r)) {
                    return Err(Error::InvalidIdeal(format!("{x}·{r} is not a member")));
                }
            }
        }
        Ok(Self {
            ring: ring.clone(),
            side,
            members,
        })
    }

    pub(crate) fn from_members_unchecked(ring: &Arc<FiniteRing>, side: Side, members: ElemSet) -> Self {
        Self {
            ring: ring.clone(),
            side,
            members,
        }
    }

    pub fn zero(ring: &Arc<FiniteRing>) -> Self {
        Self::from_members_unchecked(ring, Side::TwoSided, ElemSet::from_iter(ring.size(), [0]))
    }

    pub fn full(ring: &Arc<FiniteRing>) -> Self {
        Self::from_members_unchecked(ring, Side::TwoSided, ElemSet::full(ring.size()))
    }

    /// Smallest ideal of `side` containing `gens`.
    pub fn generated(ring: &Arc<FiniteRing>, gens: &[Elem], side: Side) -> Self {
        let left: Vec<Elem> = if side.left_closed() {
            let span = ring_span(ring, gens.iter().flat_map(|&g| ring.elements().map(move |r| ring.mul(r, g))));
            span.elements().iter().map(|&x| x as Elem).collect()
        } else {
            gens.to_vec()
        };
        let span = if side.right_closed() {
            ring_span(ring, left.iter().flat_map(|&x| ring.elements().map(move |r| ring.mul(x, r))))
        } else {
            ring_span(ring, left)
        };
        Self::from_members_unchecked(ring, side, span_set(ring, &span))
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn elements(&self) -> Vec<Elem> {
        self.members.to_vec()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn order(&self) -> usize {
        self.members.count()
    }

    pub fn is_zero(&self) -> bool {
        self.order() == 1
    }

    pub fn is_full(&self) -> bool {
        self.order() == self.ring.size()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Same members, viewed as an ideal of another side. Fails if the
    /// members are not closed for that side.
    pub fn as_side(&self, side: Side) -> Result<Ideal> {
        if side == self.side {
            return Ok(self.clone());
        }
        Ideal::from_members(&self.ring, side, self.members.clone())
    }

    /// Short member listing, e.g. `{0,2,4}`.
    pub fn label(&self) -> String {
        let items: Vec<String> = self.members.iter().map(|x| x.to_string()).collect();
        format!("{{{}}}", items.join(","))
    }

    /// A greedy additive generating set.
    pub fn additive_generators(&self) -> Vec<Elem> {
        let span = ring_span(&self.ring, self.members.iter());
        span.generators().iter().map(|&x| x as Elem).collect()
    }

    /// Additive span of `{ x·y : x ∈ self, y ∈ other }`.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.side != Side::TwoSided || other.side != Side::TwoSided {
            return Err(Error::SideMismatch("ideal product needs two-sided ideals".into()));
        }
        let r = &self.ring;
        let ys = other.additive_generators();
        let span = ring_span(
            r,
            self.additive_generators()
                .into_iter()
                .flat_map(|x| ys.iter().map(move |&y| r.mul(x, y))),
        );
        Ok(Ideal::from_members_unchecked(r, Side::TwoSided, span_set(r, &span)))
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.side != other.side {
            return Err(Error::SideMismatch("cannot add ideals of different sides".into()));
        }
        let side = self.side;
        let span = ring_span(&self.ring, self.members.iter().chain(other.members.iter()));
        Ok(Ideal::from_members_unchecked(&self.ring, side, span_set(&self.ring, &span)))
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) || self.side != other.side {
            return Err(Error::RingMismatch);
        }
        let members = ElemSet::from_iter(self.ring.size(), self.members.iter().filter(|&x| other.contains(x)));
        Ok(Ideal::from_members_unchecked(&self.ring, self.side, members))
    }

    /// `I·I = I`.
    pub fn is_idempotent(&self) -> bool {
        self.side == Side::TwoSided && self.product(self).is_ok_and(|sq| sq == *self)
    }

    pub(crate) fn require_idempotent(&self) -> Result<()> {
        if self.is_idempotent() {
            Ok(())
        } else {
            Err(Error::NotIdempotent)
        }
    }

    /// Smallest `k ≥ 1` with `I^k = 0`, if any.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let two = self.as_side(Side::TwoSided).ok()?;
        let mut power = two.clone();
        for k in 1..=self.ring.size().max(1) {
            if power.is_zero() {
                return Some(k);
            }
            let next = power.product(&two).ok()?;
            if next == power {
                return None;
            }
            power = next;
        }
        None
    }

    /// The ideal generated by the idempotent elements of `self`. It always
    /// lies inside `self` and is idempotent; both are asserted.
    pub fn idempotent_element_closure(&self) -> Ideal {
        let idems: Vec<Elem> = self.members.iter().filter(|&e| self.ring.is_idempotent(e)).collect();
        let closure = Ideal::generated(&self.ring, &idems, Side::TwoSided);
        assert!(closure.is_subset(self), "idempotent closure escaped the ideal");
        assert!(closure.is_idempotent(), "ideal generated by idempotents must be idempotent");
        closure
    }

    /// TTF classifier data for an idempotent two-sided ideal.
    pub fn ttf_triple(&self) -> Result<TtfData> {
        self.require_idempotent()?;
        Ok(TtfData { ideal: self.clone() })
    }
}

/// All ideals of `side`, as the join closure of the principal ideals, in
/// canonical bitset order.
pub fn enumerate_ideals(ring: &Arc<FiniteRing>, side: Side) -> Result<Vec<Ideal>> {
    let cap = limits::get().ideal_cap;
    let mut principals: Vec<ElemSet> = ring
        .elements()
        .map(|x| Ideal::generated(ring, &[x], side).members)
        .collect();
    principals.sort();
    principals.dedup();
    let mut seen: BTreeSet<ElemSet> = principals.iter().cloned().collect();
    if seen.len() > cap {
        return Err(Error::EnumerationCapExceeded { what: "ideals", cap });
    }
    let mut queue: VecDeque<ElemSet> = seen.iter().cloned().collect();
    while let Some(j) = queue.pop_front() {
        for p in &principals {
            if p.is_subset(&j) {
                continue;
            }
            let span = ring_span(ring, j.iter().chain(p.iter()));
            let s = span_set(ring, &span);
            if seen.insert(s.clone()) {
                if seen.len() > cap {
                    return Err(Error::EnumerationCapExceeded { what: "ideals", cap });
                }
                queue.push_back(s);
            }
        }
    }
    Ok(seen
        .into_iter()
        .map(|m| Ideal::from_members_unchecked(ring, side, m))
        .collect())
}

pub fn enumerate_two_sided_ideals(ring: &Arc<FiniteRing>) -> Result<Vec<Ideal>> {
    enumerate_ideals(ring, Side::TwoSided)
}

pub fn enumerate_idempotent_ideals(ring: &Arc<FiniteRing>) -> Result<Vec<Ideal>> {
    Ok(enumerate_two_sided_ideals(ring)?
        .into_iter()
        .filter(Ideal::is_idempotent)
        .collect())
}

/// Membership of a right module in the three classes of the TTF triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TtfFlags {
    /// `M·I = M`
    pub in_c: bool,
    /// `M·I = 0`
    pub in_t: bool,
    /// `r.ann_M(I) = 0`
    pub in_f: bool,
}

/// Classifier for the TTF triple `(C_I, T_I, F_I)` of an idempotent ideal.
#[derive(Debug, Clone)]
pub struct TtfData {
    ideal: Ideal,
}

impl TtfData {
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn classify(&self, m: &FinModule) -> Result<TtfFlags> {
        let mi = modcat::submodule_mi(m, &self.ideal)?;
        let ann = modcat::right_annihilator(m, &self.ideal)?;
        Ok(TtfFlags {
            in_c: mi.count() == m.order(),
            in_t: mi.count() == 1,
            in_f: ann.count() == 1,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{gf, matrix, upper_triangular, zn};

    fn members(i: &Ideal) -> Vec<Elem> {
        i.elements()
    }

    #[test]
    fn generated_examples() {
        let z6 = zn(6).unwrap();
        assert_eq!(members(&Ideal::generated(&z6, &[4], Side::TwoSided)), vec![0, 2, 4]);
        assert_eq!(members(&Ideal::generated(&z6, &[], Side::TwoSided)), vec![0]);
        let t = upper_triangular(&gf(2).unwrap(), 2).unwrap();
        let e22 = t.encoding().matrix_unit(2, 2).unwrap();
        let e12 = t.encoding().matrix_unit(1, 2).unwrap();
        let i2 = Ideal::generated(&t, &[e22], Side::TwoSided);
        assert_eq!(members(&i2), vec![0, e22, e12, e12 + e22]);
    }

    #[test]
    fn product_examples() {
        let z4 = zn(4).unwrap();
        let j = Ideal::generated(&z4, &[2], Side::TwoSided);
        assert_eq!(members(&j.product(&j).unwrap()), vec![0]);
        assert!(!j.is_idempotent());
        let z6 = zn(6).unwrap();
        let i = Ideal::generated(&z6, &[2], Side::TwoSided);
        assert_eq!(i.product(&i).unwrap(), i);
        assert_eq!(i.product(&Ideal::full(&z6)).unwrap(), i);
        assert!(Ideal::zero(&z6).is_idempotent());
        assert!(Ideal::full(&z6).is_idempotent());
        assert_eq!(i.product(&Ideal::full(&z4)).unwrap_err(), Error::RingMismatch);
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_two_sided_ideals(&zn(4).unwrap()).unwrap().len(), 3);
        let t = upper_triangular(&gf(2).unwrap(), 2).unwrap();
        assert_eq!(enumerate_two_sided_ideals(&t).unwrap().len(), 5);
        assert_eq!(enumerate_idempotent_ideals(&t).unwrap().len(), 4);
        let m = matrix(&gf(2).unwrap(), 2).unwrap();
        assert_eq!(enumerate_two_sided_ideals(&m).unwrap().len(), 2);
        let z6 = zn(6).unwrap();
        let idem: Vec<Vec<Elem>> = enumerate_idempotent_ideals(&z6).unwrap().iter().map(members).collect();
        assert_eq!(idem.len(), 4);
        for want in [vec![0], vec![0, 2, 4], vec![0, 3], (0..6).collect()] {
            assert!(idem.contains(&want), "{want:?}");
        }
        let z4 = zn(4).unwrap();
        let idem4: Vec<Vec<Elem>> = enumerate_idempotent_ideals(&z4).unwrap().iter().map(members).collect();
        assert_eq!(idem4, vec![vec![0], vec![0, 1, 2, 3]]);
    }

    #[test]
    fn trivial_ring_has_one_ideal() {
        let z1 = zn(1).unwrap();
        let all = enumerate_two_sided_ideals(&z1).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_idempotent());
    }

    #[test]
    fn idempotent_closure_examples() {
        let z6 = zn(6).unwrap();
        let i = Ideal::generated(&z6, &[2], Side::TwoSided);
        assert_eq!(i.idempotent_element_closure(), i);
        let z4 = zn(4).unwrap();
        let j = z4.jacobson_radical();
        assert!(j.idempotent_element_closure().is_zero());
        let t = upper_triangular(&gf(2).unwrap(), 2).unwrap();
        let e22 = t.encoding().matrix_unit(2, 2).unwrap();
        let i2 = Ideal::generated(&t, &[e22], Side::TwoSided);
        assert_eq!(i2.idempotent_element_closure(), i2);
    }

    #[test]
    fn from_members_rejects_non_subgroup() {
        let z6 = zn(6).unwrap();
        let err = Ideal::from_members(&z6, Side::TwoSided, ElemSet::from_iter(6, [0, 1])).unwrap_err();
        assert!(matches!(err, Error::InvalidIdeal(_)));
    }

    #[test]
    fn ttf_requires_idempotent() {
        let z4 = zn(4).unwrap();
        assert_eq!(z4.jacobson_radical().ttf_triple().unwrap_err(), Error::NotIdempotent);
    }
}
