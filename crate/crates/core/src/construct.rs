//! Ring constructors with documented element encodings.
//!
//! * `zn(n)`: element `k` has index `k`.
//! * `matrix(R, k)`: entries row-major, base-ring index as digit, most
//!   significant digit first.
//! * `upper_triangular(R, k)`: the same, over the entries `(i, j)` with
//!   `i ≤ j`; `[[a, b], [0, c]]` over a ring of size `q` has index
//!   `a·q² + b·q + c`.
//! * `product(R, S)`: `(r, s)` has index `r·|S| + s`.
//! * `quotient(R, I)`: cosets ordered by their smallest member.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finring::{FiniteRing, RawTables};
use crate::ideals::{Ideal, Side};
use crate::limits;
use crate::Elem;

/// How element indices of a constructed ring decode.
#[derive(Debug, Clone, Default)]
pub enum Encoding {
    #[default]
    Plain,
    Zn(usize),
    Matrix { base: Arc<FiniteRing>, k: usize },
    UpperTriangular { base: Arc<FiniteRing>, k: usize },
    Product { left: Arc<FiniteRing>, right: Arc<FiniteRing> },
    Quotient { parent: Arc<FiniteRing>, class: Vec<Elem> },
}

impl Encoding {
    /// Index of the matrix unit `e(i, j)` (1-based), for matrix and
    /// triangular rings.
    pub fn matrix_unit(&self, i: usize, j: usize) -> Option<Elem> {
        let (base, k, upper) = match self {
            Encoding::Matrix { base, k } => (base, *k, false),
            Encoding::UpperTriangular { base, k } => (base, *k, true),
            Encoding::Quotient { parent, class } => {
                return parent.encoding().matrix_unit(i, j).map(|x| class[x as usize]);
            }
            _ => return None,
        };
        if i == 0 || j == 0 || i > k || j > k || (upper && i > j) {
            return None;
        }
        let positions = positions(k, upper);
        let mut digits = vec![0; positions.len()];
        let at = positions.iter().position(|&p| p == (i - 1, j - 1))?;
        digits[at] = base.one();
        Some(encode(&digits, base.size()))
    }

    /// Index of the pair `(a, b)` in a product ring.
    pub fn pair(&self, a: Elem, b: Elem) -> Option<Elem> {
        match self {
            Encoding::Product { left, right } if (a as usize) < left.size() && (b as usize) < right.size() => {
                Some(a * right.size() as Elem + b)
            }
            _ => None,
        }
    }
}

fn positions(k: usize, upper: bool) -> Vec<(usize, usize)> {
    (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .filter(|&(i, j)| !upper || i <= j)
        .collect()
}

fn encode(digits: &[Elem], q: usize) -> Elem {
    digits.iter().fold(0, |acc, &d| acc * q as Elem + d)
}

fn decode(mut x: usize, q: usize, len: usize) -> Vec<Elem> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = (x % q) as Elem;
        x /= q;
    }
    out
}

fn checked_size(q: usize, digits: usize) -> Result<usize> {
    let size = (q as u128).checked_pow(digits as u32).unwrap_or(u128::MAX);
    limits::check_module("constructed ring", size)?;
    Ok(size as usize)
}

fn tables(
    size: usize,
    add: impl Fn(usize, usize) -> Elem,
    mul: impl Fn(usize, usize) -> Elem,
) -> (Vec<Elem>, Vec<Elem>) {
    let mut a = Vec::with_capacity(size * size);
    let mut m = Vec::with_capacity(size * size);
    for x in 0..size {
        for y in 0..size {
            a.push(add(x, y));
            m.push(mul(x, y));
        }
    }
    (a, m)
}

fn finish(size: usize, one: Elem, t: (Vec<Elem>, Vec<Elem>), label: String, enc: Encoding) -> Result<Arc<FiniteRing>> {
    let raw = RawTables {
        size,
        zero: 0,
        one,
        add: t.0,
        mul: t.1,
        label,
    };
    FiniteRing::from_raw(raw, enc).map(Arc::new)
}

/// Integers modulo `n`; `zn(1)` is the trivial ring.
pub fn zn(n: usize) -> Result<Arc<FiniteRing>> {
    if n == 0 {
        return Err(Error::Invalid("zn(0) is not finite".into()));
    }
    limits::check_module("constructed ring", n as u128)?;
    let t = tables(n, |a, b| ((a + b) % n) as Elem, |a, b| ((a * b) % n) as Elem);
    finish(n, (1 % n) as Elem, t, format!("Z/{n}"), Encoding::Zn(n))
}

/// The prime field of order `p`.
pub fn gf(p: u64) -> Result<Arc<FiniteRing>> {
    let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    if !prime {
        return Err(Error::NotPrime(p));
    }
    let r = zn(p as usize)?;
    Ok(Arc::new((*r).clone().with_label(format!("GF({p})"))))
}

/// Full `k × k` matrix ring over `base`.
pub fn matrix(base: &Arc<FiniteRing>, k: usize) -> Result<Arc<FiniteRing>> {
    matrix_like(base, k, false)
}

/// Upper-triangular `k × k` matrices over `base`.
pub fn upper_triangular(base: &Arc<FiniteRing>, k: usize) -> Result<Arc<FiniteRing>> {
    matrix_like(base, k, true)
}

fn matrix_like(base: &Arc<FiniteRing>, k: usize, upper: bool) -> Result<Arc<FiniteRing>> {
    if k == 0 {
        return Err(Error::Invalid("matrix size must be positive".into()));
    }
    let pos = positions(k, upper);
    let q = base.size();
    let size = checked_size(q, pos.len())?;
    // dense position lookup: slot of (i, j), or None below the diagonal
    let mut slot = vec![None; k * k];
    for (s, &(i, j)) in pos.iter().enumerate() {
        slot[i * k + j] = Some(s);
    }
    let decoded: Vec<Vec<Elem>> = (0..size).map(|x| decode(x, q, pos.len())).collect();
    let entry = |d: &[Elem], i: usize, j: usize| slot[i * k + j].map_or(0, |s| d[s]);
    let add = |x: usize, y: usize| {
        let d: Vec<Elem> = decoded[x].iter().zip(&decoded[y]).map(|(&a, &b)| base.add(a, b)).collect();
        encode(&d, q)
    };
    let mul = |x: usize, y: usize| {
        let (a, b) = (&decoded[x], &decoded[y]);
        let d: Vec<Elem> = pos
            .iter()
            .map(|&(i, j)| {
                (0..k).fold(0, |acc, t| base.add(acc, base.mul(entry(a, i, t), entry(b, t, j))))
            })
            .collect();
        encode(&d, q)
    };
    let one_digits: Vec<Elem> = pos
        .iter()
        .map(|&(i, j)| if i == j { base.one() } else { 0 })
        .collect();
    let one = encode(&one_digits, q);
    let t = tables(size, add, mul);
    let (label, enc) = if upper {
        (format!("T{k}({})", base.label()), Encoding::UpperTriangular { base: base.clone(), k })
    } else {
        (format!("M{k}({})", base.label()), Encoding::Matrix { base: base.clone(), k })
    };
    finish(size, one, t, label, enc)
}

/// Direct product `R × S`.
pub fn product(r: &Arc<FiniteRing>, s: &Arc<FiniteRing>) -> Result<Arc<FiniteRing>> {
    let (p, q) = (r.size(), s.size());
    let size = (p as u128) * (q as u128);
    limits::check_module("constructed ring", size)?;
    let size = size as usize;
    let split = |x: usize| ((x / q) as Elem, (x % q) as Elem);
    let join = |a: Elem, b: Elem| a * q as Elem + b;
    let add = |x, y| {
        let ((a, b), (c, d)) = (split(x), split(y));
        join(r.add(a, c), s.add(b, d))
    };
    let mul = |x, y| {
        let ((a, b), (c, d)) = (split(x), split(y));
        join(r.mul(a, c), s.mul(b, d))
    };
    let t = tables(size, add, mul);
    let label = format!("{}x{}", r.label(), s.label());
    let enc = Encoding::Product {
        left: r.clone(),
        right: s.clone(),
    };
    finish(size, join(r.one(), s.one()), t, label, enc)
}

/// Quotient by a two-sided ideal.
pub fn quotient(ideal: &Ideal) -> Result<Arc<FiniteRing>> {
    if ideal.side() != Side::TwoSided {
        return Err(Error::SideMismatch("quotient needs a two-sided ideal".into()));
    }
    let (parent, class, reps) = coset_classes(ideal);
    let size = reps.len();
    let add = |x: usize, y: usize| class[parent.add(reps[x], reps[y]) as usize];
    let mul = |x: usize, y: usize| class[parent.mul(reps[x], reps[y]) as usize];
    let t = tables(size, add, mul);
    let one = class[parent.one() as usize];
    let label = format!("{}/{}", parent.label(), ideal.label());
    let enc = Encoding::Quotient {
        parent: parent.clone(),
        class: class.clone(),
    };
    finish(size, one, t, label, enc)
}

/// `(ring, class of each element, smallest representative of each class)`.
pub(crate) fn coset_classes(ideal: &Ideal) -> (Arc<FiniteRing>, Vec<Elem>, Vec<Elem>) {
    let ring = ideal.ring().clone();
    let members = ideal.members().to_vec();
    let mut class = vec![Elem::MAX; ring.size()];
    let mut reps = Vec::new();
    for x in ring.elements() {
        if class[x as usize] != Elem::MAX {
            continue;
        }
        let c = reps.len() as Elem;
        reps.push(x);
        for &m in &members {
            class[ring.add(x, m) as usize] = c;
        }
    }
    (ring, class, reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let f2 = gf(2).unwrap();
        assert_eq!(upper_triangular(&f2, 2).unwrap().size(), 8);
        assert_eq!(matrix(&f2, 2).unwrap().size(), 16);
        assert_eq!(upper_triangular(&gf(3).unwrap(), 2).unwrap().size(), 27);
        assert_eq!(product(&zn(2).unwrap(), &zn(3).unwrap()).unwrap().size(), 6);
    }

    #[test]
    fn triangular_encoding() {
        let t = upper_triangular(&gf(2).unwrap(), 2).unwrap();
        // [[a,b],[0,c]] -> 4a + 2b + c
        assert_eq!(t.one(), 0b101);
        assert_eq!(t.encoding().matrix_unit(1, 2), Some(0b010));
        assert_eq!(t.encoding().matrix_unit(2, 2), Some(0b001));
        assert_eq!(t.encoding().matrix_unit(2, 1), None);
        // e11 · e12 = e12, e12 · e11 = 0
        assert_eq!(t.mul(0b100, 0b010), 0b010);
        assert_eq!(t.mul(0b010, 0b100), 0);
        // [[1,1],[0,1]] is a unit
        assert!(t.is_unit(0b111));
    }

    #[test]
    fn matrix_noncommutative() {
        let m = matrix(&gf(2).unwrap(), 2).unwrap();
        let e12 = m.encoding().matrix_unit(1, 2).unwrap();
        let e21 = m.encoding().matrix_unit(2, 1).unwrap();
        assert_ne!(m.mul(e12, e21), m.mul(e21, e12));
        assert!(!m.is_commutative());
    }

    #[test]
    fn gf_rejects_composite() {
        assert_eq!(gf(4).unwrap_err(), Error::NotPrime(4));
        assert_eq!(gf(1).unwrap_err(), Error::NotPrime(1));
    }

    #[test]
    fn size_cap() {
        let z = zn(300).unwrap();
        assert!(matches!(matrix(&z, 2), Err(Error::SizeCapExceeded { .. })));
    }

    #[test]
    fn product_encoding() {
        let p = product(&zn(2).unwrap(), &zn(3).unwrap()).unwrap();
        assert_eq!(p.one(), 4);
        assert_eq!(p.encoding().pair(1, 2), Some(5));
    }
}
