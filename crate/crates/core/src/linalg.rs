//! Dense exact linear algebra over `F_p`.
//!
//! Every [`Subspace`] stores its basis in canonical reduced row-echelon
//! form, so two subspaces are equal exactly when their bases compare equal.

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Mat {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        let data = data.into_iter().map(|v| field.reduce(v)).collect();
        Self { field, rows, cols, data }
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row vectors; every row must have length `cols`.
    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&v| field.reduce(v)));
        }
        Self { field, rows: rows.len(), cols, data }
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = self.field.reduce(v);
    }
    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * c);
        head[lo * c..(lo + 1) * c].swap_with_slice(&mut tail[..c]);
    }

    /// In-place Gauss–Jordan elimination; returns the pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.get(r, c));
            for j in c..cols {
                let v = self.data[r * cols + j];
                self.data[r * cols + j] = f.mul(v, inv);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    let sub = f.mul(factor, self.data[r * cols + j]);
                    self.data[i * cols + j] = f.sub(self.data[i * cols + j], sub);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        rref(self).0
    }
}

/// Canonical reduced row-echelon form. The returned matrix has the same
/// shape as the input with the zero rows at the bottom.
pub fn rref(m: &Mat) -> (usize, Mat) {
    let mut r = m.clone();
    let rank = r.rref_in_place().len();
    (rank, r)
}

/// Basis of the null space `{v : m·v = 0}`.
pub fn kernel_basis(m: &Mat) -> Subspace {
    let f = m.field;
    let mut r = m.clone();
    let pivots = r.rref_in_place();
    let n = m.cols;
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(r.get(i, free));
        }
        basis.push(v);
    }
    Subspace::from_rows(f, n, &basis)
}

/// A linear subspace of `F_p^n`, kept in canonical RREF.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Mat,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: Mat::zeros(field, 0, ambient_dim) }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: Mat::identity(field, ambient_dim) }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn from_rows(field: Field, ambient_dim: usize, rows: &[Vec<u64>]) -> Self {
        Self::from_mat(&Mat::from_rows(field, ambient_dim, rows))
    }

    pub fn from_mat(m: &Mat) -> Self {
        let (rank, mut r) = rref(m);
        r.rows = rank;
        r.data.truncate(rank * r.cols);
        Self { ambient_dim: m.cols, basis: r }
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows
    }
    #[inline]
    pub fn basis(&self) -> &Mat {
        &self.basis
    }
    pub fn field(&self) -> Field {
        self.basis.field
    }
    pub fn vectors(&self) -> Vec<Vec<u64>> {
        self.basis.row_vecs()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(self.ambient_dim, other.ambient_dim));
        }
        Ok(())
    }

    pub fn span_sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::from_mat(&self.basis.vstack(&other.basis)))
    }

    /// Zassenhaus: reduce `[a | a ; b | 0]`; rows whose left half vanishes
    /// carry the intersection in their right half.
    pub fn span_intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient_dim;
        let f = self.field();
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for v in self.vectors() {
            let mut r = v.clone();
            r.extend_from_slice(&v);
            rows.push(r);
        }
        for v in other.vectors() {
            let mut r = v;
            r.extend(std::iter::repeat_n(0, n));
            rows.push(r);
        }
        let (rank, red) = rref(&Mat::from_rows(f, 2 * n, &rows));
        let inter: Vec<Vec<u64>> = (0..rank)
            .map(|i| red.row(i))
            .filter(|r| r[..n].iter().all(|&x| x == 0))
            .map(|r| r[n..].to_vec())
            .collect();
        Ok(Subspace::from_rows(f, n, &inter))
    }

    /// Residual of `v` after elimination against the basis.
    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let f = self.field();
        let mut w = v.iter().map(|&x| f.reduce(x)).collect::<Vec<_>>();
        for i in 0..self.dim() {
            let row = self.basis.row(i);
            let pc = row.iter().position(|&x| x != 0).expect("zero row in basis");
            let c = w[pc];
            if c != 0 {
                for (wj, &rj) in w.iter_mut().zip(row) {
                    *wj = f.sub(*wj, f.mul(c, rj));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u64]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch(self.ambient_dim, v.len()));
        }
        Ok(self.reduce(v).iter().all(|&x| x == 0))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        for v in self.vectors() {
            if !other.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Expresses vectors as combinations of a fixed list of independent rows.
#[derive(Clone, Debug)]
pub struct Solver {
    field: Field,
    n_rows: usize,
    reduced: Mat,
    pivots: Vec<usize>,
    /// `transform · original = reduced`
    transform: Mat,
}

impl Solver {
    /// `rows` must be linearly independent.
    pub fn new(field: Field, cols: usize, rows: &[Vec<u64>]) -> Result<Self> {
        let k = rows.len();
        let aug_rows: Vec<Vec<u64>> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut a = r.clone();
                a.extend((0..k).map(|j| u64::from(i == j)));
                a
            })
            .collect();
        let mut aug = Mat::from_rows(field, cols + k, &aug_rows);
        let pivots = aug.rref_in_place();
        let rank = pivots.iter().take_while(|&&c| c < cols).count();
        if rank != k {
            return Err(Error::Input("solver rows are linearly dependent".into()));
        }
        let mut reduced = Mat::zeros(field, k, cols);
        let mut transform = Mat::zeros(field, k, k);
        for i in 0..k {
            for c in 0..cols {
                reduced.data[i * cols + c] = aug.get(i, c);
            }
            for j in 0..k {
                transform.data[i * k + j] = aug.get(i, cols + j);
            }
        }
        Ok(Self { field, n_rows: k, reduced, pivots, transform })
    }

    /// Coefficients `c` with `Σ c_i · rows_i = target`, or `None` if the
    /// target is outside the row span.
    pub fn solve(&self, target: &[u64]) -> Option<Vec<u64>> {
        let f = self.field;
        let cols = self.reduced.cols;
        if target.len() != cols {
            return None;
        }
        let alpha: Vec<u64> = self.pivots.iter().map(|&pc| target[pc]).collect();
        // residual check
        for c in 0..cols {
            let mut s = 0;
            for (i, &a) in alpha.iter().enumerate() {
                s = f.add(s, f.mul(a, self.reduced.get(i, c)));
            }
            if s != f.reduce(target[c]) {
                return None;
            }
        }
        let mut out = vec![0u64; self.n_rows];
        for (i, &a) in alpha.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, self.transform.get(i, j)));
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fld(p: u64) -> Field {
        Field::new(p).unwrap()
    }

    /// All vectors of `F_p^n` (test oracle; only for tiny `p^n`).
    fn all_vectors(p: u64, n: usize) -> Vec<Vec<u64>> {
        let total = p.pow(n as u32);
        (0..total)
            .map(|mut k| {
                (0..n)
                    .map(|_| {
                        let d = k % p;
                        k /= p;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    /// Brute-force span: every combination of the generators.
    fn brute_span(f: Field, gens: &[Vec<u64>], n: usize) -> Vec<Vec<u64>> {
        let p = f.modulus();
        let mut out: Vec<Vec<u64>> = all_vectors(p, gens.len())
            .into_iter()
            .map(|coeffs| {
                let mut v = vec![0u64; n];
                for (c, g) in coeffs.iter().zip(gens) {
                    for j in 0..n {
                        v[j] = f.add(v[j], f.mul(*c, g[j]));
                    }
                }
                v
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn rref_identity_zero_and_dependent() {
        let f7 = fld(7);
        let id = Mat::identity(f7, 3);
        let (rank, r) = rref(&id);
        assert_eq!(rank, 3);
        assert_eq!(r, id);

        let z = Mat::zeros(f7, 2, 4);
        assert_eq!(rref(&z).0, 0);

        let f5 = fld(5);
        let m = Mat::from_rows(f5, 2, &[vec![1, 2], vec![2, 4]]);
        let (rank, r) = rref(&m);
        assert_eq!(rank, 1);
        assert_eq!(r.row(0), &[1, 2]);
        assert_eq!(r.row(1), &[0, 0]);
    }

    #[test]
    fn kernel_small_cases() {
        let f7 = fld(7);
        assert_eq!(kernel_basis(&Mat::identity(f7, 3)).dim(), 0);
        assert_eq!(kernel_basis(&Mat::zeros(f7, 2, 3)).dim(), 3);

        let m = Mat::from_rows(f7, 3, &[vec![1, 1, 0]]);
        let k = kernel_basis(&m);
        assert_eq!(k.dim(), 2);
        for v in k.vectors() {
            assert_eq!(f7.add(v[0], v[1]), 0);
        }
        // exhaustive: membership in the kernel <=> v0 + v1 = 0
        for v in all_vectors(7, 3) {
            assert_eq!(k.contains(&v).unwrap(), f7.add(v[0], v[1]) == 0);
        }
    }

    #[test]
    fn span_sum_cases() {
        let f5 = fld(5);
        let a = Subspace::from_rows(f5, 3, &[vec![1, 2, 0]]);
        assert_eq!(a.span_sum(&a).unwrap(), a);

        let b = Subspace::from_rows(f5, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(a.span_sum(&b).unwrap(), Subspace::full(f5, 3));

        // two distinct lines span a plane; compare with brute force
        let l1 = vec![1, 2, 3];
        let l2 = vec![0, 1, 4];
        let s = Subspace::from_rows(f5, 3, &[l1.clone()])
            .span_sum(&Subspace::from_rows(f5, 3, &[l2.clone()]))
            .unwrap();
        assert_eq!(s.dim(), 2);
        let brute = brute_span(f5, &[l1, l2], 3);
        assert_eq!(brute.len(), 25);
        for v in all_vectors(5, 3) {
            assert_eq!(s.contains(&v).unwrap(), brute.binary_search(&v).is_ok());
        }
    }

    #[test]
    fn span_intersect_cases() {
        let f5 = fld(5);
        let a = Subspace::from_rows(f5, 3, &[vec![1, 1, 0], vec![0, 1, 1]]);
        assert_eq!(a.span_intersect(&a).unwrap(), a);

        let line = Subspace::from_rows(f5, 3, &[vec![0, 0, 1]]);
        let plane = Subspace::from_rows(f5, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(line.span_intersect(&plane).unwrap().dim(), 0);

        // dim-3 ∩ dim-3 in F_5^5 with full sum: dim 1, checked by brute force
        let ga = vec![vec![1, 0, 0, 0, 0], vec![0, 1, 0, 0, 0], vec![0, 0, 1, 1, 0]];
        let gb = vec![vec![0, 0, 0, 1, 0], vec![0, 0, 0, 0, 1], vec![1, 1, 1, 0, 0]];
        let sa = Subspace::from_rows(f5, 5, &ga);
        let sb = Subspace::from_rows(f5, 5, &gb);
        assert_eq!(sa.span_sum(&sb).unwrap().dim(), 5);
        let inter = sa.span_intersect(&sb).unwrap();
        assert_eq!(inter.dim(), 1);
        let ba = brute_span(f5, &ga, 5);
        let bb = brute_span(f5, &gb, 5);
        let common: Vec<_> = ba.iter().filter(|v| bb.binary_search(v).is_ok()).collect();
        assert_eq!(common.len(), 5);
        for v in common {
            assert!(inter.contains(v).unwrap());
        }
    }

    #[test]
    fn contains_cases() {
        let f7 = fld(7);
        let gens = vec![vec![1, 3, 0, 2], vec![0, 1, 5, 6]];
        let s = Subspace::from_rows(f7, 4, &gens);
        assert!(s.contains(&[0, 0, 0, 0]).unwrap());
        for v in s.vectors() {
            assert!(s.contains(&v).unwrap());
        }
        let brute = brute_span(f7, &gens, 4);
        for v in all_vectors(7, 4) {
            assert_eq!(s.contains(&v).unwrap(), brute.binary_search(&v).is_ok());
        }
        assert!(matches!(s.contains(&[1, 2]), Err(Error::DimensionMismatch(4, 2))));
    }

    #[test]
    fn mismatched_ambient_errors() {
        let f7 = fld(7);
        let a = Subspace::full(f7, 3);
        let b = Subspace::full(f7, 4);
        assert!(a.span_sum(&b).is_err());
        assert!(a.span_intersect(&b).is_err());
    }

    #[test]
    fn solver_round_trip() {
        let f = fld(101);
        let rows = vec![vec![1, 2, 3, 4], vec![0, 5, 6, 7], vec![8, 0, 9, 1]];
        let s = Solver::new(f, 4, &rows).unwrap();
        let target: Vec<u64> = (0..4)
            .map(|j| f.add(f.mul(3, rows[0][j]), f.mul(7, rows[2][j])))
            .collect();
        assert_eq!(s.solve(&target), Some(vec![3, 0, 7]));
        assert_eq!(s.solve(&[0, 0, 0, 1]).is_some(), Subspace::from_rows(f, 4, &rows).contains(&[0, 0, 0, 1]).unwrap());
    }

    fn arb_mat(p: u64, r: usize, c: usize) -> impl Strategy<Value = Mat> {
        prop::collection::vec(0..p, r * c).prop_map(move |d| Mat::new(Field::new(p).unwrap(), r, c, d))
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in arb_mat(7, 5, 6)) {
            let (_, r1) = rref(&m);
            let (_, r2) = rref(&r1);
            prop_assert_eq!(r1, r2);
        }

        #[test]
        fn kernel_annihilates_with_rank_nullity(m in arb_mat(11, 4, 7)) {
            let k = kernel_basis(&m);
            prop_assert_eq!(k.dim() + m.rank(), 7);
            for v in k.vectors() {
                prop_assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn sum_intersection_dimension_identity(a in arb_mat(5, 3, 6), b in arb_mat(5, 4, 6)) {
            let sa = Subspace::from_mat(&a);
            let sb = Subspace::from_mat(&b);
            let sum = sa.span_sum(&sb).unwrap();
            let inter = sa.span_intersect(&sb).unwrap();
            prop_assert_eq!(sum.dim() + inter.dim(), sa.dim() + sb.dim());
            prop_assert!(inter.is_subspace_of(&sa).unwrap());
            prop_assert!(inter.is_subspace_of(&sb).unwrap());
        }
    }
}
