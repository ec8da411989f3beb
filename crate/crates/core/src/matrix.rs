use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finring::FiniteRing;
use crate::ideals::Ideal;
use crate::Elem;

/// An `m × n` matrix over a finite ring, stored row-major.
#[derive(Clone)]
pub struct RMatrix {
    ring: Arc<FiniteRing>,
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

impl PartialEq for RMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl Eq for RMatrix {}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.row_vecs()).finish()
    }
}

impl RMatrix {
    pub fn new(ring: &Arc<FiniteRing>, rows: usize, cols: usize, entries: Vec<Elem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e as usize >= ring.size()) {
            return Err(Error::DimensionMismatch(format!("entry {bad} is not an element of {}", ring.label())));
        }
        Ok(Self {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(ring: &Arc<FiniteRing>, rows: &[Vec<Elem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Self::new(ring, rows.len(), cols, rows.concat())
    }

    pub fn zero(ring: &Arc<FiniteRing>, rows: usize, cols: usize) -> Self {
        Self::new(ring, rows, cols, vec![0; rows * cols]).expect("zero matrix")
    }

    pub fn identity(ring: &Arc<FiniteRing>, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn scalar(ring: &Arc<FiniteRing>, x: Elem) -> Self {
        Self::new(ring, 1, 1, vec![x]).expect("1x1 matrix")
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vec<Elem> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn mul(&self, other: &RMatrix) -> Result<RMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let r = &self.ring;
        let mut out = RMatrix::zero(r, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let v = (0..self.cols).fold(0, |acc, t| r.add(acc, r.mul(self.get(i, t), other.get(t, j))));
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &RMatrix) -> Result<RMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("matrix shapes differ".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.ring.sub(a, b))
            .collect();
        RMatrix::new(&self.ring, self.rows, self.cols, entries)
    }

    /// `1 − self` for a square matrix.
    pub fn one_minus(&self) -> Result<RMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("1 − E needs a square matrix".into()));
        }
        RMatrix::identity(&self.ring, self.rows).sub(self)
    }

    pub fn entries_in(&self, ideal: &Ideal) -> bool {
        self.entries.iter().all(|&x| ideal.contains(x))
    }

    /// Row vector times matrix: `x·A`.
    pub fn left_apply(&self, x: &[Elem]) -> Vec<Elem> {
        let r = &self.ring;
        (0..self.cols)
            .map(|j| (0..self.rows).fold(0, |acc, i| r.add(acc, r.mul(x[i], self.get(i, j)))))
            .collect()
    }

    /// Matrix times column vector: `A·x`.
    pub fn right_apply(&self, x: &[Elem]) -> Vec<Elem> {
        let r = &self.ring;
        (0..self.rows)
            .map(|i| (0..self.cols).fold(0, |acc, j| r.add(acc, r.mul(self.get(i, j), x[j]))))
            .collect()
    }

    /// Every `rows × cols` matrix with entries from `pool`, in
    /// lexicographic order of the row-major entry sequence.
    pub fn enumerate<'a>(
        ring: &'a Arc<FiniteRing>,
        rows: usize,
        cols: usize,
        pool: &'a [Elem],
    ) -> impl Iterator<Item = RMatrix> + 'a {
        let len = rows * cols;
        let mut digits = vec![0usize; len];
        let mut done = pool.is_empty() && len > 0;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let m = RMatrix {
                ring: ring.clone(),
                rows,
                cols,
                entries: digits.iter().map(|&d| pool[d]).collect(),
            };
            done = true;
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < pool.len() {
                    done = false;
                    break;
                }
                *d = 0;
            }
            Some(m)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::zn;

    #[test]
    fn product_and_identity() {
        let r = zn(6).unwrap();
        let a = RMatrix::from_rows(&r, &[vec![1, 2], vec![3, 4]]).unwrap();
        let i = RMatrix::identity(&r, 2);
        assert_eq!(a.mul(&i).unwrap(), a);
        let sq = a.mul(&a).unwrap();
        // [[1+6, 2+8], [3+12, 6+16]] mod 6
        assert_eq!(sq.entries(), &[1, 4, 3, 4]);
        assert_eq!(a.left_apply(&[1, 1]), vec![4, 0]);
        assert_eq!(a.right_apply(&[1, 1]), vec![3, 1]);
    }

    #[test]
    fn enumeration_counts_and_order() {
        let r = zn(3).unwrap();
        let pool = [0, 1, 2];
        let all: Vec<_> = RMatrix::enumerate(&r, 1, 2, &pool).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[1].entries(), &[0, 1]);
        assert_eq!(all[8].entries(), &[2, 2]);
    }

    #[test]
    fn one_minus() {
        let r = zn(6).unwrap();
        assert_eq!(RMatrix::scalar(&r, 4).one_minus().unwrap().entries(), &[3]);
    }
}
