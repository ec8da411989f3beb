#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use ttfkit_core::construct::{gf, matrix, product, quotient, upper_triangular, zn};
use ttfkit_core::ideals::enumerate_ideals;
use ttfkit_core::{Elem, FinModule, FiniteRing, Ideal, RMatrix, Side};

/// Small rings of every flavour the constructors offer.
pub fn small_ring(pick: usize) -> Arc<FiniteRing> {
    let f2 = gf(2).unwrap();
    match pick % 12 {
        0 => zn(1 + pick / 12 % 16).unwrap(),
        1 => zn(4).unwrap(),
        2 => zn(6).unwrap(),
        3 => zn(12).unwrap(),
        4 => upper_triangular(&f2, 2).unwrap(),
        5 => matrix(&f2, 2).unwrap(),
        6 => product(&zn(2).unwrap(), &zn(4).unwrap()).unwrap(),
        7 => product(&f2, &upper_triangular(&f2, 2).unwrap()).unwrap(),
        8 => {
            let t = upper_triangular(&f2, 2).unwrap();
            quotient(&t.jacobson_radical()).unwrap()
        }
        9 => upper_triangular(&zn(4).unwrap(), 2).unwrap(),
        10 => gf(5).unwrap(),
        _ => {
            let z8 = zn(8).unwrap();
            quotient(&Ideal::generated(&z8, &[4], Side::TwoSided)).unwrap()
        }
    }
}

pub fn ring_strategy() -> impl Strategy<Value = Arc<FiniteRing>> {
    (0usize..12 * 16).prop_map(small_ring)
}

pub fn is_unit(r: &FiniteRing, x: Elem) -> bool {
    r.elements().any(|y| r.mul(x, y) == r.one() && r.mul(y, x) == r.one())
}

pub fn is_subgroup(r: &FiniteRing, s: &BTreeSet<Elem>) -> bool {
    s.contains(&0) && s.iter().all(|&a| s.iter().all(|&b| s.contains(&r.add(a, b))))
}

/// Every subset that is an additive subgroup; only for tiny rings.
pub fn subgroups_by_subsets(r: &FiniteRing) -> Vec<BTreeSet<Elem>> {
    let n = r.size();
    assert!(n <= 16);
    (0u32..1 << n)
        .filter(|mask| mask & 1 == 1)
        .map(|mask| (0..n as Elem).filter(|&i| mask >> i & 1 == 1).collect::<BTreeSet<_>>())
        .filter(|s| is_subgroup(r, s))
        .collect()
}

pub fn members(i: &Ideal) -> BTreeSet<Elem> {
    i.elements().into_iter().collect()
}

/// Rings small enough for module computations.
pub fn module_ring_strategy() -> impl Strategy<Value = Arc<FiniteRing>> {
    ring_strategy().prop_filter("ring too large", |r| r.size() <= 16)
}

/// Entries drawn from `pool` by index, reduced modulo its length.
pub fn matrix_from(r: &Arc<FiniteRing>, rows: usize, cols: usize, picks: &[usize], pool: &[Elem]) -> RMatrix {
    let entries = (0..rows * cols).map(|k| pool[picks[k % picks.len()] % pool.len()]).collect();
    RMatrix::new(r, rows, cols, entries).unwrap()
}

/// `R/K` for every right ideal `K`.
pub fn cyclic_right_modules(r: &Arc<FiniteRing>) -> Vec<FinModule> {
    enumerate_ideals(r, Side::Right)
        .unwrap()
        .iter()
        .map(|k| FinModule::ring_quotient(k, Side::Right).unwrap())
        .collect()
}
