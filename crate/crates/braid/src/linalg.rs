//! Sparse matrices over a generic commutative ring, with the tensor-space
//! constructs needed for triple-space identities.
//!
//! Tensor index convention: the pair (i, j) on an N x N basis flattens to
//! N*i + j, zero-based. Entries iterate row-major, so every dump and product
//! is deterministic.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ring::{Field, Ring};

/// Placement of an N^2 x N^2 operator inside the N^3 space.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Leg {
    /// Acts on the first two factors: A tensor I.
    Left,
    /// Acts on the last two factors: I tensor A.
    Right,
}

#[derive(Clone, PartialEq, Debug)]
pub struct SparseMat<R: Ring> {
    nrows: usize,
    ncols: usize,
    entries: BTreeMap<(u32, u32), R>,
}

impl<R: Ring> SparseMat<R> {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        SparseMat { nrows, ncols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n);
        for i in 0..n as u32 {
            m.entries.insert((i, i), R::one());
        }
        m
    }

    /// Matrix unit E_ij of size n (zero-based indices).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::new(n, n);
        m.set(i, j, R::one());
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&R> {
        self.entries.get(&(i as u32, j as u32))
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        assert!(i < self.nrows && j < self.ncols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(i as u32, j as u32));
        } else {
            self.entries.insert((i as u32, j as u32), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &R) {
        assert!(i < self.nrows && j < self.ncols, "index out of range");
        let key = (i as u32, j as u32);
        match self.entries.get_mut(&key) {
            Some(prev) => {
                let sum = prev.add(v);
                if sum.is_zero() {
                    self.entries.remove(&key);
                } else {
                    *prev = sum;
                }
            }
            None => {
                if !v.is_zero() {
                    self.entries.insert(key, v.clone());
                }
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &R)> {
        self.entries.iter().map(|(&(i, j), v)| (i as usize, j as usize, v))
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, &R)> {
        let i = i as u32;
        self.entries
            .range((i, 0)..=(i, u32::MAX))
            .map(|(&(_, j), v)| (j as usize, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        let mut out = self.clone();
        for (i, j, v) in rhs.iter() {
            out.add_to(i, j, v);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        SparseMat {
            nrows: self.nrows,
            ncols: self.ncols,
            entries: self.entries.iter().map(|(k, v)| (*k, v.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Self::new(self.nrows, self.ncols);
        }
        let mut out = Self::new(self.nrows, self.ncols);
        for (i, j, v) in self.iter() {
            out.add_to(i, j, &v.mul(c));
        }
        out
    }

    /// Sparse row-by-row product with immediate zero pruning.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.ncols, rhs.nrows, "dimension mismatch in product");
        let mut out = Self::new(self.nrows, rhs.ncols);
        let mut acc: BTreeMap<u32, R> = BTreeMap::new();
        let mut cur_row = u32::MAX;
        let flush = |row: u32, acc: &mut BTreeMap<u32, R>, out: &mut Self| {
            for (j, v) in std::mem::take(acc) {
                if !v.is_zero() {
                    out.entries.insert((row, j), v);
                }
            }
        };
        for (&(i, k), a) in &self.entries {
            if i != cur_row {
                if cur_row != u32::MAX {
                    flush(cur_row, &mut acc, &mut out);
                }
                cur_row = i;
            }
            for (&(_, j), b) in rhs.entries.range((k, 0)..=(k, u32::MAX)) {
                let prod = a.mul(b);
                if prod.is_zero() {
                    continue;
                }
                match acc.get_mut(&j) {
                    Some(prev) => *prev = prev.add(&prod),
                    None => {
                        acc.insert(j, prod);
                    }
                }
            }
        }
        if cur_row != u32::MAX {
            flush(cur_row, &mut acc, &mut out);
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::new(self.ncols, self.nrows);
        for (i, j, v) in self.iter() {
            out.entries.insert((j as u32, i as u32), v.clone());
        }
        out
    }

    pub fn trace(&self) -> R {
        let mut t = R::zero();
        for (i, j, v) in self.iter() {
            if i == j {
                t = t.add(v);
            }
        }
        t
    }

    /// Kronecker product; (i,j) block structure follows the flat-index
    /// convention above.
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut out = Self::new(self.nrows * rhs.nrows, self.ncols * rhs.ncols);
        for (i, j, a) in self.iter() {
            for (k, l, b) in rhs.iter() {
                let v = a.mul(b);
                if !v.is_zero() {
                    out.entries
                        .insert(((i * rhs.nrows + k) as u32, (j * rhs.ncols + l) as u32), v);
                }
            }
        }
        out
    }

    /// Lift an N^2 x N^2 operator onto the N^3 space.
    pub fn lift(&self, leg: Leg, n: usize) -> Result<Self> {
        if self.nrows != n * n || self.ncols != n * n {
            return Err(Error::Dimension(format!(
                "lift expects {0}x{0}, got {1}x{2}",
                n * n,
                self.nrows,
                self.ncols
            )));
        }
        let id = Self::identity(n);
        Ok(match leg {
            Leg::Left => self.kron(&id),
            Leg::Right => id.kron(self),
        })
    }

    /// Horner evaluation of sum coeffs[i] * m^i.
    pub fn mat_poly(&self, coeffs: &[R]) -> Self {
        assert_eq!(self.nrows, self.ncols, "square matrix required");
        let n = self.nrows;
        let mut acc = Self::new(n, n);
        for c in coeffs.iter().rev() {
            acc = acc.matmul(self);
            for i in 0..n as u32 {
                if !c.is_zero() {
                    let key = (i, i);
                    match acc.entries.get_mut(&key) {
                        Some(prev) => {
                            let sum = prev.add(c);
                            if sum.is_zero() {
                                acc.entries.remove(&key);
                            } else {
                                *prev = sum;
                            }
                        }
                        None => {
                            acc.entries.insert(key, c.clone());
                        }
                    }
                }
            }
        }
        acc
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> SparseMat<S> {
        let mut out = SparseMat::new(self.nrows, self.ncols);
        for (i, j, v) in self.iter() {
            out.set(i, j, f(v));
        }
        out
    }

    /// Map entries through a fallible function (for evaluation maps).
    pub fn try_map<S: Ring, E>(
        &self,
        f: impl Fn(&R) -> std::result::Result<S, E>,
    ) -> std::result::Result<SparseMat<S>, E> {
        let mut out = SparseMat::new(self.nrows, self.ncols);
        for (i, j, v) in self.iter() {
            out.set(i, j, f(v)?);
        }
        Ok(out)
    }

    /// First nonzero entry, as a witness string for failed checks.
    pub fn witness(&self) -> Option<String> {
        self.iter().next().map(|(i, j, v)| format!("entry ({}, {}) = {}", i, j, v))
    }

    /// JSON dump with entries sorted row-major.
    pub fn dump_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .iter()
            .map(|(i, j, v)| serde_json::json!([i, j, v.to_string()]))
            .collect();
        serde_json::json!({
            "nrows": self.nrows,
            "ncols": self.ncols,
            "entries": entries,
        })
    }

    pub fn dump_text(&self) -> String {
        let mut s = String::new();
        for (i, j, v) in self.iter() {
            let _ = writeln!(s, "({}, {}) = {}", i, j, v);
        }
        s
    }
}

impl<R: Field> SparseMat<R> {
    /// Dense Gauss-Jordan inverse; intended for the small catalogue matrices.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.nrows, self.ncols);
        let n = self.nrows;
        let mut a: Vec<Vec<R>> = vec![vec![R::zero(); n]; n];
        for (i, j, v) in self.iter() {
            a[i][j] = v.clone();
        }
        let mut inv: Vec<Vec<R>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { R::one() } else { R::zero() }).collect())
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let pinv = a[col][col].inv()?;
            for j in 0..n {
                a[col][j] = a[col][j].mul(&pinv);
                inv[col][j] = inv[col][j].mul(&pinv);
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    a[r][j] = a[r][j].sub(&f.mul(&a[col][j]));
                    inv[r][j] = inv[r][j].sub(&f.mul(&inv[col][j]));
                }
            }
        }
        let mut out = Self::new(n, n);
        for (i, row) in inv.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Some(out)
    }

    /// Reduced row echelon form with deterministic pivot order; returns the
    /// nonzero rows.
    pub fn rref(&self) -> Vec<Vec<R>> {
        let n = self.ncols;
        let mut rows: Vec<Vec<R>> = (0..self.nrows)
            .map(|i| {
                let mut r = vec![R::zero(); n];
                for (j, v) in self.row(i) {
                    r[j] = v.clone();
                }
                r
            })
            .collect();
        let mut rank = 0usize;
        for col in 0..n {
            let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let pinv = rows[rank][col].inv().expect("nonzero pivot");
            for j in 0..n {
                rows[rank][j] = rows[rank][j].mul(&pinv);
            }
            for r in 0..rows.len() {
                if r == rank || rows[r][col].is_zero() {
                    continue;
                }
                let f = rows[r][col].clone();
                for j in 0..n {
                    rows[r][j] = rows[r][j].sub(&f.mul(&rows[rank][j]));
                }
            }
            rank += 1;
        }
        rows.truncate(rank);
        rows.retain(|r| r.iter().any(|v| !v.is_zero()));
        rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, Rat};
    use proptest::prelude::*;

    type M = SparseMat<Rat>;

    fn dense(rows: &[&[i64]]) -> M {
        let mut m = M::new(rows.len(), rows[0].len());
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, rat(*v, 1));
            }
        }
        m
    }

    #[test]
    fn kron_identities() {
        let i2 = M::identity(2);
        assert_eq!(i2.kron(&i2), M::identity(4));
    }

    #[test]
    fn kron_matrix_units() {
        // E12 (x) E21 of size 2: single entry at flat (0*2+1, 1*2+0) = (1, 2),
        // by expanding the 4x4 product by hand.
        let e12 = M::unit(2, 0, 1);
        let e21 = M::unit(2, 1, 0);
        let k = e12.kron(&e21);
        assert_eq!(k.nnz(), 1);
        assert_eq!(k.get(1, 2), Some(&rat(1, 1)));
    }

    #[test]
    fn lift_preserves_idempotence() {
        // any idempotent stays idempotent after lifting
        let p = dense(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
        assert_eq!(p.matmul(&p), p);
        let l = p.lift(Leg::Left, 2).unwrap();
        assert_eq!(l.matmul(&l), l);
        assert_eq!(M::identity(4).lift(Leg::Left, 2).unwrap(), M::identity(8));
        assert!(p.lift(Leg::Left, 3).is_err());
    }

    #[test]
    fn mat_poly_constant_is_identity_multiple() {
        let m = dense(&[&[1, 2], &[3, 4]]);
        assert_eq!(m.mat_poly(&[rat(1, 1)]), M::identity(2));
        // 2 + 3 m + m^2 by direct assembly
        let want = M::identity(2)
            .scale(&rat(2, 1))
            .add(&m.scale(&rat(3, 1)))
            .add(&m.matmul(&m));
        assert_eq!(m.mat_poly(&[rat(2, 1), rat(3, 1), rat(1, 1)]), want);
    }

    #[test]
    fn inverse_small() {
        let m = dense(&[&[1, 2], &[3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), M::identity(2));
        let sing = dense(&[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
    }

    fn arb_mat(n: usize) -> impl Strategy<Value = M> {
        proptest::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
            let mut m = M::new(n, n);
            for (k, c) in v.into_iter().enumerate() {
                m.set(k / n, k % n, rat(c, 1));
            }
            m
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn product_associativity_distributivity(
            a in arb_mat(3), b in arb_mat(3), c in arb_mat(3)
        ) {
            prop_assert_eq!(a.matmul(&b).matmul(&c), a.matmul(&b.matmul(&c)));
            prop_assert_eq!(a.matmul(&b.add(&c)), a.matmul(&b).add(&a.matmul(&c)));
        }

        #[test]
        fn kron_mixed_product(a in arb_mat(2), b in arb_mat(3), c in arb_mat(2), d in arb_mat(3)) {
            // kron(a,b) kron(c,d) = kron(ac, bd)
            prop_assert_eq!(
                a.kron(&b).matmul(&c.kron(&d)),
                a.matmul(&c).kron(&b.matmul(&d))
            );
        }

        #[test]
        fn transpose_antihomomorphism(a in arb_mat(3), b in arb_mat(3)) {
            prop_assert_eq!(a.matmul(&b).transpose(), b.transpose().matmul(&a.transpose()));
        }
    }
}
