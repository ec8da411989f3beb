//! Finite commutative rings as products of local rings.
//!
//! Localizing a finite commutative ring at a prime is the same as projecting
//! onto the local factor that prime lives in, so the local data of an ideal
//! is read off factor by factor.

use std::sync::Arc;

use serde::Serialize;

use crate::construct::{coset_classes, Encoding};
use crate::error::{Error, Result};
use crate::finring::{FiniteRing, RawTables};
use crate::ideals::{Ideal, Side};
use crate::Elem;

#[derive(Debug, Clone)]
pub struct LocalDecomposition {
    /// Primitive orthogonal idempotents, in increasing index order.
    pub idempotents: Vec<Elem>,
    /// `e·R` for each idempotent, with `e` as identity.
    pub factors: Vec<Arc<FiniteRing>>,
    /// `x ↦ e·x`, as an index into the factor.
    pub projections: Vec<Vec<Elem>>,
}

fn require_commutative(ring: &FiniteRing) -> Result<()> {
    if ring.is_commutative() {
        Ok(())
    } else {
        Err(Error::NotCommutative)
    }
}

/// `3e² − 2e³`, repeated until stable.
fn lift_idempotent(ring: &FiniteRing, mut e: Elem, cap: usize) -> Elem {
    for _ in 0..=cap {
        if ring.is_idempotent(e) {
            return e;
        }
        let e2 = ring.mul(e, e);
        let e3 = ring.mul(e2, e);
        e = ring.sub(ring.times(3, e2), ring.times(2, e3));
    }
    assert!(ring.is_idempotent(e), "idempotent lifting did not converge");
    e
}

fn factor_ring(ring: &FiniteRing, e: Elem) -> Result<(Arc<FiniteRing>, Vec<Elem>)> {
    let mut members: Vec<Elem> = ring.elements().map(|x| ring.mul(e, x)).collect();
    members.sort_unstable();
    members.dedup();
    let mut index = vec![Elem::MAX; ring.size()];
    for (i, &x) in members.iter().enumerate() {
        index[x as usize] = i as Elem;
    }
    let n = members.len();
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for &x in &members {
        for &y in &members {
            add.push(index[ring.add(x, y) as usize]);
            mul.push(index[ring.mul(x, y) as usize]);
        }
    }
    let raw = RawTables {
        size: n,
        zero: 0,
        one: index[e as usize],
        add,
        mul,
        label: format!("{e}R"),
    };
    let factor = Arc::new(FiniteRing::from_raw(raw, Encoding::Plain)?);
    let projection = ring.elements().map(|x| index[ring.mul(e, x) as usize]).collect();
    Ok((factor, projection))
}

/// Splits a finite commutative ring along its primitive idempotents.
///
/// Idempotents of `R/J` are lifted to `R`; the minimal nonzero lifts are
/// the primitive ones.
pub fn decompose_local(ring: &Arc<FiniteRing>) -> Result<LocalDecomposition> {
    require_commutative(ring)?;
    let j = ring.jacobson_radical();
    let cap = j.nilpotency_index().expect("the radical is nilpotent");
    let (_, class, reps) = coset_classes(&j);
    let q = crate::construct::quotient(&j)?;
    let mut lifted: Vec<Elem> = q
        .idempotents()
        .into_iter()
        .map(|f| lift_idempotent(ring, reps[f as usize], cap))
        .collect();
    lifted.sort_unstable();
    lifted.dedup();
    for &e in &lifted {
        debug_assert!(q.is_idempotent(class[e as usize]));
    }
    let idempotents: Vec<Elem> = lifted
        .iter()
        .copied()
        .filter(|&e| e != 0 && lifted.iter().all(|&f| f == 0 || f == e || ring.mul(f, e) != f))
        .collect();
    let mut factors = Vec::new();
    let mut projections = Vec::new();
    for &e in &idempotents {
        let (f, p) = factor_ring(ring, e)?;
        factors.push(f);
        projections.push(p);
    }
    let total = idempotents.iter().fold(0, |acc, &e| ring.add(acc, e));
    assert!(ring.size() == 1 || total == ring.one(), "primitive idempotents do not sum to one");
    Ok(LocalDecomposition {
        idempotents,
        factors,
        projections,
    })
}

/// Factors on which the ideal projects to a nonzero ideal.
pub fn support(ideal: &Ideal) -> Result<Vec<usize>> {
    let d = decompose_local(ideal.ring())?;
    Ok(support_in(&d, ideal))
}

fn support_in(d: &LocalDecomposition, ideal: &Ideal) -> Vec<usize> {
    (0..d.idempotents.len())
        .filter(|&i| ideal.members().iter().any(|x| d.projections[i][x as usize] != 0))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutativeVerdict {
    pub holds: bool,
    pub idempotent_generator: Option<Elem>,
    pub factor_sizes: Vec<usize>,
    pub support: Vec<usize>,
}

/// Checks that the ideal is either zero or everything on each local factor,
/// and that it is then generated by the sum of the supported factor
/// identities.
pub fn check_commutative_theorem(ideal: &Ideal) -> Result<CommutativeVerdict> {
    let ring = ideal.ring();
    require_commutative(ring)?;
    ideal.require_idempotent()?;
    let d = decompose_local(ring)?;
    let support = support_in(&d, ideal);
    let holds = (0..d.factors.len()).all(|i| {
        let image: std::collections::BTreeSet<Elem> = ideal.members().iter().map(|x| d.projections[i][x as usize]).collect();
        image.len() == 1 || image.len() == d.factors[i].size()
    });
    let idempotent_generator = holds.then(|| support.iter().fold(0, |acc, &i| ring.add(acc, d.idempotents[i])));
    if let Some(e) = idempotent_generator {
        assert_eq!(
            Ideal::generated(ring, &[e], Side::TwoSided),
            *ideal,
            "supported idempotent does not generate the ideal"
        );
    }
    Ok(CommutativeVerdict {
        holds,
        idempotent_generator,
        factor_sizes: d.factors.iter().map(|f| f.size()).collect(),
        support,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{gf, upper_triangular, zn};

    #[test]
    fn decompositions() {
        let d = decompose_local(&zn(6).unwrap()).unwrap();
        assert_eq!(d.idempotents, vec![3, 4]);
        assert_eq!(d.factors.iter().map(|f| f.size()).collect::<Vec<_>>(), vec![2, 3]);
        let d = decompose_local(&zn(4).unwrap()).unwrap();
        assert_eq!(d.idempotents, vec![1]);
        assert_eq!(d.factors[0].size(), 4);
        assert_eq!(decompose_local(&gf(2).unwrap()).unwrap().factors.len(), 1);
        assert!(decompose_local(&zn(1).unwrap()).unwrap().factors.is_empty());
        let t = upper_triangular(&gf(2).unwrap(), 2).unwrap();
        assert_eq!(decompose_local(&t).unwrap_err(), Error::NotCommutative);
    }

    #[test]
    fn supports() {
        let z6 = zn(6).unwrap();
        assert_eq!(support(&Ideal::generated(&z6, &[2], Side::TwoSided)).unwrap(), vec![1]);
        assert_eq!(support(&Ideal::full(&z6)).unwrap(), vec![0, 1]);
        assert!(support(&Ideal::zero(&z6)).unwrap().is_empty());
    }

    #[test]
    fn theorem_instances() {
        let z6 = zn(6).unwrap();
        let v = check_commutative_theorem(&Ideal::generated(&z6, &[2], Side::TwoSided)).unwrap();
        assert!(v.holds);
        assert_eq!(v.idempotent_generator, Some(4));
        let v = check_commutative_theorem(&Ideal::generated(&z6, &[3], Side::TwoSided)).unwrap();
        assert_eq!(v.idempotent_generator, Some(3));
        assert_eq!(check_commutative_theorem(&Ideal::full(&z6)).unwrap().idempotent_generator, Some(1));
        let z4 = zn(4).unwrap();
        assert_eq!(
            check_commutative_theorem(&Ideal::generated(&z4, &[2], Side::TwoSided)).unwrap_err(),
            Error::NotIdempotent
        );
    }
}
