//! fp-detecting matrices, annihilator ideals and the Fix-closure search.

use std::sync::Arc;

use serde::Serialize;

use crate::construct::{coset_classes, quotient};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::finring::{additive_generators, FiniteRing};
use crate::group::{Ambient, Span};
use crate::ideals::{same_ring, Ideal, Side};
use crate::limits;
use crate::matrix::RMatrix;
use crate::modcat::{is_flat, multiplication_map, FinModule};
use crate::Elem;

fn row_space(ring: &Arc<FiniteRing>, m: usize) -> Result<Ambient> {
    let amb = Ambient::new(ring, m)?;
    limits::check_module("row vector space", amb.universe())?;
    Ok(amb)
}

/// `{ X ∈ R^{1×m} : X·A = 0 }`, in lexicographic order.
pub fn left_annihilator_rows(a: &RMatrix) -> Result<Vec<Vec<Elem>>> {
    let ring = a.ring();
    let amb = row_space(ring, a.rows())?;
    let rows: Vec<Vec<Elem>> = (0..amb.universe() as u64)
        .map(|c| amb.decode(c))
        .filter(|x| a.left_apply(x).iter().all(|&y| y == 0))
        .collect();
    let mut span = amb.span();
    span.extend_all(rows.iter().map(|x| amb.encode(x)), amb.adder());
    assert_eq!(span.len(), rows.len(), "annihilator not additive");
    for &g in span.generators() {
        for r in ring.elements() {
            assert!(a.left_apply(&amb.decode(amb.mul_left(r, g))).iter().all(|&y| y == 0), "annihilator not left closed");
        }
    }
    Ok(rows)
}

fn entry_ideal(ring: &Arc<FiniteRing>, rows: &[Vec<Elem>]) -> Ideal {
    let entries = ElemSet::from_iter(ring.size(), rows.iter().flatten().copied());
    Ideal::generated(ring, &entries.to_vec(), Side::TwoSided)
}

/// Two-sided ideal generated by the entries of the rows annihilating `A`
/// from the left.
pub fn ideal_i_a(a: &RMatrix) -> Result<Ideal> {
    Ok(entry_ideal(a.ring(), &left_annihilator_rows(a)?))
}

/// Two-sided ideal generated by the entries of the rows fixed by `E`.
pub fn fix_ideal(e: &RMatrix, ideal: &Ideal) -> Result<Ideal> {
    if e.rows() != e.cols() {
        return Err(Error::DimensionMismatch("Fix needs a square matrix".into()));
    }
    if !same_ring(e.ring(), ideal.ring()) {
        return Err(Error::RingMismatch);
    }
    if !e.entries_in(ideal) {
        return Err(Error::EntriesNotInIdeal);
    }
    let ring = e.ring();
    let amb = row_space(ring, e.rows())?;
    let fixed: Vec<Vec<Elem>> = (0..amb.universe() as u64)
        .map(|c| amb.decode(c))
        .filter(|x| e.left_apply(x) == *x)
        .collect();
    let fix = entry_ideal(ring, &fixed);
    debug_assert_eq!(fix, ideal_i_a(&e.one_minus()?)?);
    Ok(fix)
}

/// Some `B` with every entry of `1 − A·B` in `I`, found column by column
/// in `R/I`.
pub fn right_invertible_mod(a: &RMatrix, ideal: &Ideal) -> Result<Option<RMatrix>> {
    if ideal.side() != Side::TwoSided {
        return Err(Error::SideMismatch("right invertibility modulo a one-sided ideal".into()));
    }
    if !same_ring(a.ring(), ideal.ring()) {
        return Err(Error::RingMismatch);
    }
    let (m, n) = (a.rows(), a.cols());
    let q = quotient(ideal)?;
    let (ring, class, reps) = coset_classes(ideal);
    let abar: Vec<Elem> = a.entries().iter().map(|&x| class[x as usize]).collect();
    let abar = RMatrix::new(&q, m, n, abar)?;
    let amb = Ambient::new(&q, m)?;
    let mut span = amb.span();
    let mut origin = Vec::new();
    for j in 0..n {
        let col = abar.column(j);
        for g in additive_generators(&q) {
            let v: Vec<Elem> = col.iter().map(|&x| q.mul(x, g)).collect();
            if span.extend(amb.encode(&v), amb.adder()) {
                origin.push((j, g));
            }
        }
    }
    let mut b = RMatrix::zero(&ring, n, m);
    for i in 0..m {
        let Some(coeffs) = span.witness(amb.unit(i, q.one())) else {
            return Ok(None);
        };
        let mut x = vec![0; n];
        for (c, &(j, g)) in coeffs.iter().zip(&origin) {
            x[j] = q.add(x[j], q.times(*c, g));
        }
        for (j, &xj) in x.iter().enumerate() {
            b.set(j, i, reps[xj as usize]);
        }
    }
    let gap = RMatrix::identity(&ring, m).sub(&a.mul(&b)?)?;
    assert!(gap.entries_in(ideal), "lifted inverse is not an inverse modulo I");
    Ok(Some(b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpVerdict {
    pub detecting: bool,
    pub right_inverse_mod_i: Option<RMatrix>,
    /// A column `Y ∈ I^m ∩ A·R^n` outside `A·I^n`.
    pub purity_gap_witness: Option<Vec<Elem>>,
}

fn column_span(amb: &Ambient, a: &RMatrix, scalars: &[Elem]) -> Span {
    let ring = amb.ring();
    let mut span = amb.span();
    for j in 0..a.cols() {
        let col = a.column(j);
        for &g in scalars {
            let v: Vec<Elem> = col.iter().map(|&x| ring.mul(x, g)).collect();
            span.extend(amb.encode(&v), amb.adder());
        }
    }
    span
}

pub fn is_fp_detecting(a: &RMatrix, ideal: &Ideal) -> Result<FpVerdict> {
    ideal.require_idempotent()?;
    let right_inverse = right_invertible_mod(a, ideal)?;
    let amb = Ambient::new(a.ring(), a.rows())?;
    let image = column_span(&amb, a, &additive_generators(a.ring()));
    let image_i = column_span(&amb, a, &ideal.additive_generators());
    let mut in_i: Vec<u64> = image
        .elements()
        .iter()
        .copied()
        .filter(|&c| amb.decode(c).iter().all(|&x| ideal.contains(x)))
        .collect();
    in_i.sort_unstable();
    let gap = in_i.into_iter().find(|&c| !image_i.contains(c)).map(|c| amb.decode(c));
    Ok(FpVerdict {
        detecting: right_inverse.is_some() && gap.is_none(),
        right_inverse_mod_i: right_inverse,
        purity_gap_witness: gap,
    })
}

/// The ideal is generated by idempotent elements. On a finite ring this
/// decides local finite presentability of the quotient category.
pub fn locally_fp_via_idempotents(ideal: &Ideal) -> Result<bool> {
    ideal.require_idempotent()?;
    Ok(ideal.idempotent_element_closure() == *ideal)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum FixVerdict {
    /// The accumulated ideal reached `I` using matrices of size `k`.
    Certified { k: usize },
    Unknown,
}

#[derive(Debug, Clone)]
pub struct LfpReport {
    pub via_idempotents: bool,
    pub via_fix_closure: FixVerdict,
    pub k_max: usize,
    pub budget: u64,
    pub fix_closure_ideal: Ideal,
    pub idempotent_closure_ideal: Ideal,
    /// Sizes whose candidate count exceeded the budget.
    pub skipped: Vec<usize>,
    /// Each matrix that enlarged the accumulated ideal, in search order.
    pub witnesses: Vec<RMatrix>,
}

/// Accumulates `Σ Fix(E)` over `E ∈ M_k(I)` for `k = 1..=k_max`, stopping
/// once the sum reaches `I`.
pub fn locally_fp_via_fix(ideal: &Ideal, k_max: usize, budget: u64) -> Result<LfpReport> {
    ideal.require_idempotent()?;
    let ring = ideal.ring();
    let idempotent_closure = ideal.idempotent_element_closure();
    let mut acc = Ideal::zero(ring);
    let mut skipped = Vec::new();
    let mut witnesses = Vec::new();
    let mut verdict = if ideal.is_zero() { FixVerdict::Certified { k: 0 } } else { FixVerdict::Unknown };
    let pool = ideal.elements();
    for k in 1..=k_max {
        if verdict != FixVerdict::Unknown {
            break;
        }
        let count = (pool.len() as u128).checked_pow((k * k) as u32).unwrap_or(u128::MAX);
        if count > budget as u128 {
            skipped.push(k);
            continue;
        }
        for e in RMatrix::enumerate(ring, k, k, &pool) {
            let fix = fix_ideal(&e, ideal)?;
            assert!(fix.is_subset(ideal), "Fix(E) escaped the ideal");
            if !fix.is_subset(&acc) {
                acc = acc.sum(&fix)?;
                witnesses.push(e);
                if acc == *ideal {
                    verdict = FixVerdict::Certified { k };
                    break;
                }
            }
        }
    }
    assert!(idempotent_closure.is_subset(ideal));
    if verdict != FixVerdict::Unknown {
        assert!(idempotent_closure.is_subset(&acc), "idempotent closure not inside Fix closure");
    }
    Ok(LfpReport {
        via_idempotents: idempotent_closure == *ideal,
        via_fix_closure: verdict,
        k_max,
        budget,
        fix_closure_ideal: acc,
        idempotent_closure_ideal: idempotent_closure,
        skipped,
        witnesses,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    /// `I ⊗ I → I` is an isomorphism.
    pub cond_i: bool,
    /// `I` is pure as a left ideal, tested as flatness of `R/I`.
    pub cond_ii: bool,
    pub trace_of_projective: bool,
    pub genuine_counterexample: bool,
    pub note: &'static str,
}

pub fn counterexample_conditions(ideal: &Ideal) -> Result<CounterexampleReport> {
    ideal.require_idempotent()?;
    let as_right = FinModule::ideal_module(ideal, Side::Right)?;
    let cond_i = multiplication_map(&as_right, ideal)?.is_iso();
    let cond_ii = is_flat(&FinModule::ring_quotient(ideal, Side::Left)?)?;
    let trace_of_projective = locally_fp_via_idempotents(ideal)?;
    Ok(CounterexampleReport {
        cond_i,
        cond_ii,
        trace_of_projective,
        genuine_counterexample: (cond_i || cond_ii) && !trace_of_projective,
        note: "over a finite ring every idempotent ideal is the trace of a projective, so no counterexample can occur",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{gf, upper_triangular, zn};

    fn t2() -> (Arc<FiniteRing>, Elem, Elem, Elem) {
        let t = upper_triangular(&gf(2).unwrap(), 2).unwrap();
        let enc = t.encoding().clone();
        let (e11, e12, e22) = (
            enc.matrix_unit(1, 1).unwrap(),
            enc.matrix_unit(1, 2).unwrap(),
            enc.matrix_unit(2, 2).unwrap(),
        );
        (t, e11, e12, e22)
    }

    #[test]
    fn annihilator_rows() {
        let (t, e11, _, e22) = t2();
        let rows = left_annihilator_rows(&RMatrix::scalar(&t, e11)).unwrap();
        assert_eq!(rows.len(), 4);
        let i2 = Ideal::generated(&t, &[e22], Side::TwoSided);
        assert!(rows.iter().all(|r| i2.contains(r[0])));
        assert_eq!(left_annihilator_rows(&RMatrix::identity(&t, 2)).unwrap(), vec![vec![0, 0]]);
        assert_eq!(left_annihilator_rows(&RMatrix::scalar(&t, 0)).unwrap().len(), 8);
    }

    #[test]
    fn i_a_examples() {
        let z6 = zn(6).unwrap();
        assert_eq!(ideal_i_a(&RMatrix::scalar(&z6, 3)).unwrap().elements(), vec![0, 2, 4]);
        assert!(ideal_i_a(&RMatrix::identity(&z6, 2)).unwrap().is_zero());
        let (t, e11, _, e22) = t2();
        assert_eq!(
            ideal_i_a(&RMatrix::scalar(&t, e11)).unwrap(),
            Ideal::generated(&t, &[e22], Side::TwoSided)
        );
    }

    #[test]
    fn fix_examples() {
        let z6 = zn(6).unwrap();
        let i = Ideal::generated(&z6, &[2], Side::TwoSided);
        assert_eq!(fix_ideal(&RMatrix::scalar(&z6, 4), &i).unwrap(), i);
        assert!(fix_ideal(&RMatrix::scalar(&z6, 0), &i).unwrap().is_zero());
        assert_eq!(fix_ideal(&RMatrix::scalar(&z6, 3), &i).unwrap_err(), Error::EntriesNotInIdeal);
        let (t, _, _, e22) = t2();
        let i2 = Ideal::generated(&t, &[e22], Side::TwoSided);
        assert_eq!(fix_ideal(&RMatrix::scalar(&t, e22), &i2).unwrap(), i2);
    }

    #[test]
    fn right_inverse_examples() {
        let z6 = zn(6).unwrap();
        let i = Ideal::generated(&z6, &[2], Side::TwoSided);
        assert!(right_invertible_mod(&RMatrix::scalar(&z6, 3), &i).unwrap().is_some());
        assert!(right_invertible_mod(&RMatrix::scalar(&z6, 0), &i).unwrap().is_none());
        let (t, e11, _, e22) = t2();
        let i2 = Ideal::generated(&t, &[e22], Side::TwoSided);
        assert!(right_invertible_mod(&RMatrix::scalar(&t, e11), &i2).unwrap().is_some());
    }

    #[test]
    fn fp_detecting_examples() {
        let z6 = zn(6).unwrap();
        let i = Ideal::generated(&z6, &[2], Side::TwoSided);
        let v = is_fp_detecting(&RMatrix::scalar(&z6, 3), &i).unwrap();
        assert!(v.detecting && v.purity_gap_witness.is_none());
        let (t, e11, e12, e22) = t2();
        let i2 = Ideal::generated(&t, &[e22], Side::TwoSided);
        assert!(i2.contains(e12));
        assert!(is_fp_detecting(&RMatrix::scalar(&t, e11), &i2).unwrap().detecting);
        for eta in i2.elements() {
            let a = RMatrix::scalar(&t, eta).one_minus().unwrap();
            assert!(is_fp_detecting(&a, &i2).unwrap().detecting);
        }
        let nil = Ideal::generated(&t, &[e12], Side::TwoSided);
        assert_eq!(is_fp_detecting(&RMatrix::scalar(&t, 1), &nil).unwrap_err(), Error::NotIdempotent);
    }

    #[test]
    fn lfp_examples() {
        let z6 = zn(6).unwrap();
        let i = Ideal::generated(&z6, &[2], Side::TwoSided);
        assert!(locally_fp_via_idempotents(&i).unwrap());
        let rep = locally_fp_via_fix(&i, 1, 1 << 20).unwrap();
        assert_eq!(rep.via_fix_closure, FixVerdict::Certified { k: 1 });
        assert_eq!(rep.fix_closure_ideal, i);
        let zero = locally_fp_via_fix(&Ideal::zero(&z6), 2, 1 << 20).unwrap();
        assert_eq!(zero.via_fix_closure, FixVerdict::Certified { k: 0 });
        assert!(zero.witnesses.is_empty());
        let starved = locally_fp_via_fix(&i, 2, 1).unwrap();
        assert_eq!(starved.via_fix_closure, FixVerdict::Unknown);
        assert_eq!(starved.skipped, vec![1, 2]);
    }

    #[test]
    fn counterexample_examples() {
        let (t, _, _, e22) = t2();
        let i2 = Ideal::generated(&t, &[e22], Side::TwoSided);
        for i in [i2, Ideal::full(&t), Ideal::zero(&t)] {
            let rep = counterexample_conditions(&i).unwrap();
            assert!(rep.cond_i && rep.cond_ii && rep.trace_of_projective);
            assert!(!rep.genuine_counterexample);
        }
    }
}
