//! Brute-force reference computations.
//!
//! Everything here works straight from the Cayley tables with naive
//! fixpoint loops and shares no code with the library algorithms it is
//! used to check.

use std::collections::BTreeSet;

use ttfkit_core::{Elem, FiniteRing};

pub type Set = BTreeSet<Elem>;

pub fn is_unit(r: &FiniteRing, x: Elem) -> bool {
    r.elements().any(|y| r.mul(x, y) == r.one() && r.mul(y, x) == r.one())
}

pub fn units(r: &FiniteRing) -> Set {
    r.elements().filter(|&x| is_unit(r, x)).collect()
}

pub fn idempotents(r: &FiniteRing) -> Set {
    r.elements().filter(|&x| r.mul(x, x) == x).collect()
}

pub fn is_commutative(r: &FiniteRing) -> bool {
    r.elements().all(|x| r.elements().all(|y| r.mul(x, y) == r.mul(y, x)))
}

/// Smallest additive subgroup containing `gens`, by repeated pairwise sums.
pub fn additive_closure(r: &FiniteRing, gens: impl IntoIterator<Item = Elem>) -> Set {
    let mut set: Set = gens.into_iter().collect();
    set.insert(0);
    loop {
        let sums: Vec<Elem> = set.iter().flat_map(|&a| set.iter().map(move |&b| r.add(a, b))).collect();
        let before = set.len();
        set.extend(sums);
        if set.len() == before {
            return set;
        }
    }
}

/// Smallest two-sided ideal containing `gens`.
pub fn two_sided_closure(r: &FiniteRing, gens: impl IntoIterator<Item = Elem>) -> Set {
    let mut set: Set = gens.into_iter().collect();
    set.insert(0);
    loop {
        let mut next = additive_closure(r, set.iter().copied());
        let products: Vec<Elem> = next
            .iter()
            .flat_map(|&x| r.elements().flat_map(move |a| [r.mul(a, x), r.mul(x, a)]))
            .collect();
        next.extend(products);
        if next == set {
            return set;
        }
        set = next;
    }
}

/// Every additive subgroup, found by extending known subgroups one
/// element at a time.
pub fn additive_subgroups(r: &FiniteRing) -> BTreeSet<Set> {
    let mut all: BTreeSet<Set> = BTreeSet::new();
    let mut frontier = vec![Set::from([0])];
    all.insert(Set::from([0]));
    while let Some(s) = frontier.pop() {
        for x in r.elements() {
            if s.contains(&x) {
                continue;
            }
            let t = additive_closure(r, s.iter().copied().chain([x]));
            if all.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    all
}

pub fn is_two_sided_ideal(r: &FiniteRing, s: &Set) -> bool {
    s.iter().all(|&x| r.elements().all(|a| s.contains(&r.mul(a, x)) && s.contains(&r.mul(x, a))))
}

pub fn is_right_ideal(r: &FiniteRing, s: &Set) -> bool {
    s.iter().all(|&x| r.elements().all(|a| s.contains(&r.mul(x, a))))
}

pub fn is_left_ideal(r: &FiniteRing, s: &Set) -> bool {
    s.iter().all(|&x| r.elements().all(|a| s.contains(&r.mul(a, x))))
}

/// Two-sided ideals as the subgroups closed under both multiplications.
pub fn two_sided_ideals(r: &FiniteRing) -> Vec<Set> {
    additive_subgroups(r).into_iter().filter(|s| is_two_sided_ideal(r, s)).collect()
}

pub fn right_ideals(r: &FiniteRing) -> Vec<Set> {
    additive_subgroups(r).into_iter().filter(|s| is_right_ideal(r, s)).collect()
}

pub fn left_ideals(r: &FiniteRing) -> Vec<Set> {
    additive_subgroups(r).into_iter().filter(|s| is_left_ideal(r, s)).collect()
}

pub fn product(r: &FiniteRing, i: &Set, j: &Set) -> Set {
    additive_closure(r, i.iter().flat_map(|&x| j.iter().map(move |&y| r.mul(x, y))))
}

pub fn is_idempotent_ideal(r: &FiniteRing, i: &Set) -> bool {
    product(r, i, i) == *i
}

/// `{ x : 1 − a·x is a unit for every a }`.
pub fn radical_left(r: &FiniteRing) -> Set {
    r.elements()
        .filter(|&x| r.elements().all(|a| is_unit(r, r.sub(r.one(), r.mul(a, x)))))
        .collect()
}

/// `{ x : 1 − x·a is a unit for every a }`.
pub fn radical_right(r: &FiniteRing) -> Set {
    r.elements()
        .filter(|&x| r.elements().all(|a| is_unit(r, r.sub(r.one(), r.mul(x, a)))))
        .collect()
}

/// `{ x : 1 − a·x·b is a unit for every a, b }`.
pub fn radical_two_sided(r: &FiniteRing) -> Set {
    let units = units(r);
    r.elements()
        .filter(|&x| {
            r.elements()
                .all(|a| r.elements().all(|b| units.contains(&r.sub(r.one(), r.mul(r.mul(a, x), b)))))
        })
        .collect()
}

pub fn is_nilpotent(r: &FiniteRing, x: Elem) -> bool {
    let mut p = x;
    for _ in 0..=r.size() {
        if p == 0 {
            return true;
        }
        p = r.mul(p, x);
    }
    false
}

/// `{ x : every element of the ideal generated by x is nilpotent }`.
pub fn radical_nil(r: &FiniteRing) -> Set {
    r.elements()
        .filter(|&x| two_sided_closure(r, [x]).iter().all(|&y| is_nilpotent(r, y)))
        .collect()
}

/// The ideal is generated by its idempotent elements.
pub fn generated_by_idempotents(r: &FiniteRing, i: &Set) -> bool {
    two_sided_closure(r, i.iter().copied().filter(|&e| r.mul(e, e) == e)) == *i
}

/// Smallest idempotent `e` with `e·R = I`, if any.
pub fn idempotent_generator(r: &FiniteRing, i: &Set) -> Option<Elem> {
    i.iter().copied().filter(|&e| r.mul(e, e) == e).find(|&e| {
        let er: Set = r.elements().map(|a| r.mul(e, a)).collect();
        er == *i
    })
}

/// `I_A` in its sum-of-products form: the additive span of `p·x·q` over
/// all entries `x` of rows `X` with `X·A = 0` and all `p, q`.
pub fn ideal_i_a_direct(r: &FiniteRing, rows: usize, cols: usize, a: &[Elem]) -> Set {
    let mut entries = Set::new();
    let mut x = vec![0 as Elem; rows];
    loop {
        let zero = (0..cols).all(|j| {
            (0..rows).fold(0, |acc, i| r.add(acc, r.mul(x[i], a[i * cols + j]))) == 0
        });
        if zero {
            entries.extend(x.iter().copied());
        }
        let mut k = rows;
        loop {
            if k == 0 {
                let products: Vec<Elem> = entries
                    .iter()
                    .flat_map(|&e| r.elements().flat_map(move |p| r.elements().map(move |q| r.mul(r.mul(p, e), q))))
                    .collect();
                return additive_closure(r, products);
            }
            k -= 1;
            x[k] += 1;
            if (x[k] as usize) < r.size() {
                break;
            }
            x[k] = 0;
        }
    }
}
