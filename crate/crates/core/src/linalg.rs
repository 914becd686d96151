//! Row-reduced echelon bases over a finite field.

use crate::ffield::Field;

/// A subspace of `F_q^n` held as its unique reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn empty(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows<I>(field: &Field, ncols: usize, rows: I) -> Self
    where
        I: IntoIterator,
        I::Item: AsRef<[u32]>,
    {
        let mut e = Self::empty(ncols);
        for r in rows {
            e.insert(field, r.as_ref());
        }
        e
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after eliminating every pivot column.
    pub fn reduce(&self, field: &Field, v: &[u32]) -> Vec<u32> {
        debug_assert_eq!(v.len(), self.ncols);
        let mut r = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = r[pc];
            if c != 0 {
                let f = field.neg(c);
                for (x, &y) in r.iter_mut().zip(row) {
                    if y != 0 {
                        *x = field.add(*x, field.mul(f, y));
                    }
                }
            }
        }
        r
    }

    pub fn contains(&self, field: &Field, v: &[u32]) -> bool {
        self.reduce(field, v).iter().all(|&x| x == 0)
    }

    pub fn contains_all(&self, field: &Field, other: &Echelon) -> bool {
        other.rows.iter().all(|r| self.contains(field, r))
    }

    /// Adds `v` to the span, keeping the basis fully reduced. Returns false
    /// when `v` was already in the span.
    pub fn insert(&mut self, field: &Field, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ncols, "row length");
        let mut r = self.reduce(field, v);
        let Some(pc) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let lead_inv = field.inv(r[pc]).expect("nonzero pivot");
        for x in r.iter_mut() {
            *x = field.mul(*x, lead_inv);
        }
        for row in &mut self.rows {
            let c = row[pc];
            if c != 0 {
                let f = field.neg(c);
                for (x, &y) in row.iter_mut().zip(&r) {
                    if y != 0 {
                        *x = field.add(*x, field.mul(f, y));
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, r);
        true
    }

    /// Rank of the union of two row spaces.
    pub fn union_rank(&self, field: &Field, other: &Echelon) -> usize {
        let mut e = self.clone();
        for r in &other.rows {
            e.insert(field, r);
        }
        e.rank()
    }
}
