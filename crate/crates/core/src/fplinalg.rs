//! Exact dense linear algebra over a prime field F_p.
//!
//! Entries are stored row-major as `u8` residues and every multiply-add is
//! reduced on the spot, so a matrix never holds an out-of-range entry.
//! Vectors are rows and matrices act on the right: the image of `v` under
//! `a` is `v·a`.

use std::fmt;

use crate::error::{Error, Result};

/// The prime field F_p, together with the constants used for fast reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    p: u32,
    // ceil(2^16 / p); exact quotient estimate for values below 2^16 / p
    recip: u32,
}

impl Field {
    /// Builds F_p, rejecting anything that is not a prime below 256.
    pub fn new(p: u32) -> Result<Field> {
        if !(2..256).contains(&p) || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            return Err(Error::BadPrime(p));
        }
        Ok(Field {
            p,
            recip: (1u32 << 16).div_ceil(p),
        })
    }

    #[inline]
    #[must_use]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    #[must_use]
    pub fn reduce(self, v: u32) -> u8 {
        (v % self.p) as u8
    }

    #[inline]
    #[must_use]
    pub fn add(self, a: u8, b: u8) -> u8 {
        let s = a as u32 + b as u32;
        (if s >= self.p { s - self.p } else { s }) as u8
    }

    #[inline]
    #[must_use]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            (self.p - a as u32) as u8
        }
    }

    #[inline]
    #[must_use]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    #[must_use]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u32 * b as u32) % self.p) as u8
    }

    /// Multiplicative inverse.
    ///
    /// # Panics
    /// Panics if `a` is zero.
    #[must_use]
    pub fn inv(self, a: u8) -> u8 {
        assert!(a != 0, "zero has no inverse");
        self.pow(a, self.p - 2)
    }

    #[must_use]
    pub fn pow(self, a: u8, mut e: u32) -> u8 {
        let mut base = a as u32 % self.p;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc as u8
    }

    /// Reduces an integer that may be negative.
    #[must_use]
    pub fn from_i64(self, v: i64) -> u8 {
        v.rem_euclid(self.p as i64) as u8
    }

    /// `dst += f·src`, entrywise.
    #[inline]
    pub fn axpy(self, dst: &mut [u8], src: &[u8], f: u8) {
        debug_assert_eq!(dst.len(), src.len());
        if f == 0 {
            return;
        }
        if self.p == 2 {
            for (d, s) in dst.iter_mut().zip(src) {
                *d ^= *s;
            }
        } else if self.p <= 40 {
            let (p, m, f) = (self.p, self.recip, f as u32);
            for (d, s) in dst.iter_mut().zip(src) {
                let v = *d as u32 + f * *s as u32;
                *d = (v - ((v * m) >> 16) * p) as u8;
            }
        } else {
            let (p, f) = (self.p, f as u32);
            for (d, s) in dst.iter_mut().zip(src) {
                *d = ((*d as u32 + f * *s as u32) % p) as u8;
            }
        }
    }

    #[inline]
    pub fn scale(self, row: &mut [u8], f: u8) {
        if f == 1 {
            return;
        }
        for x in row.iter_mut() {
            *x = self.mul(*x, f);
        }
    }
}

/// A dense matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: FpMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

fn two_rows(data: &mut [u8], cols: usize, dst: usize, src: usize) -> (&mut [u8], &[u8]) {
    debug_assert_ne!(dst, src);
    if dst < src {
        let (a, b) = data.split_at_mut(src * cols);
        (&mut a[dst * cols..(dst + 1) * cols], &b[..cols])
    } else {
        let (a, b) = data.split_at_mut(dst * cols);
        (&mut b[..cols], &a[src * cols..(src + 1) * cols])
    }
}

impl FpMatrix {
    #[must_use]
    pub fn zeros(field: Field, rows: usize, cols: usize) -> FpMatrix {
        FpMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    #[must_use]
    pub fn identity(field: Field, n: usize) -> FpMatrix {
        let mut m = FpMatrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    ///
    /// # Panics
    /// Panics if the rows have different lengths.
    #[must_use]
    pub fn from_rows(field: Field, rows: &[Vec<i64>]) -> FpMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = FpMatrix::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.data[i * cols + j] = field.from_i64(v);
            }
        }
        m
    }

    /// Wraps already reduced row-major data.
    ///
    /// # Panics
    /// Panics if the length is wrong or an entry is not reduced.
    #[must_use]
    pub fn from_data(field: Field, rows: usize, cols: usize, data: Vec<u8>) -> FpMatrix {
        assert_eq!(data.len(), rows * cols);
        assert!(data.iter().all(|&x| (x as u32) < field.p()));
        FpMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Matrix whose rows are the given vectors (each of length `cols`).
    #[must_use]
    pub fn from_row_slices(field: Field, cols: usize, rows: &[&[u8]]) -> FpMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        FpMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    #[inline]
    #[must_use]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    #[must_use]
    pub fn p(&self) -> u32 {
        self.field.p()
    }

    #[inline]
    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        debug_assert!((v as u32) < self.p());
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    #[must_use]
    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u8] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[must_use]
    pub fn data(&self) -> &[u8] {
        &self.data
    }

    #[must_use]
    pub fn into_data(self) -> Vec<u8> {
        self.data
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    #[must_use]
    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u8::from(i == j)))
    }

    /// Appends a row.
    ///
    /// # Panics
    /// Panics on a length mismatch.
    pub fn push_row(&mut self, row: &[u8]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    #[must_use]
    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    /// Matrix product `self·other`.
    ///
    /// # Panics
    /// Panics if the inner dimensions disagree.
    #[must_use]
    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = FpMatrix::zeros(self.field, self.rows, other.cols);
        if other.cols == 0 {
            return out;
        }
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a != 0 {
                    self.field.axpy(dst, other.row(k), a);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    #[must_use]
    pub fn vec_mul(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a != 0 {
                self.field.axpy(&mut out, self.row(k), a);
            }
        }
        out
    }

    #[must_use]
    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        self.field.axpy(&mut out.data, &other.data, 1);
        out
    }

    #[must_use]
    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        self.field.axpy(&mut out.data, &other.data, self.field.neg(1));
        out
    }

    /// `self += f·other`.
    pub fn add_scaled(&mut self, other: &FpMatrix, f: u8) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.field.axpy(&mut self.data, &other.data, f);
    }

    #[must_use]
    pub fn scaled(&self, f: u8) -> FpMatrix {
        let mut out = self.clone();
        self.field.scale(&mut out.data, f);
        out
    }

    #[must_use]
    pub fn neg(&self) -> FpMatrix {
        self.scaled(self.field.neg(1))
    }

    /// `self − identity` for a square matrix.
    #[must_use]
    pub fn minus_identity(&self) -> FpMatrix {
        assert_eq!(self.rows, self.cols);
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = out.get(i, i);
            out.set(i, i, self.field.sub(v, 1));
        }
        out
    }

    #[must_use]
    pub fn pow(&self, mut e: u64) -> FpMatrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = FpMatrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Horizontal concatenation.
    #[must_use]
    pub fn hstack(field: Field, rows: usize, blocks: &[&FpMatrix]) -> FpMatrix {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = FpMatrix::zeros(field, rows, cols);
        for i in 0..rows {
            let mut off = 0;
            for b in blocks {
                assert_eq!(b.rows, rows);
                out.data[i * cols + off..i * cols + off + b.cols].copy_from_slice(b.row(i));
                off += b.cols;
            }
        }
        out
    }

    /// Vertical concatenation.
    #[must_use]
    pub fn vstack(field: Field, cols: usize, blocks: &[&FpMatrix]) -> FpMatrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        FpMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Block-diagonal matrix.
    #[must_use]
    pub fn block_diag(field: Field, blocks: &[&FpMatrix]) -> FpMatrix {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = FpMatrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Copies `b` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &FpMatrix) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols);
        for i in 0..b.rows {
            let start = (r0 + i) * self.cols + c0;
            self.data[start..start + b.cols].copy_from_slice(b.row(i));
        }
    }

    /// Adds `f·b` into the block with top-left corner `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, b: &FpMatrix, f: u8) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols);
        for i in 0..b.rows {
            let start = (r0 + i) * self.cols + c0;
            self.field
                .axpy(&mut self.data[start..start + b.cols], b.row(i), f);
        }
    }

    #[must_use]
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.field, rows, cols);
        for i in 0..rows {
            let s = (r0 + i) * self.cols + c0;
            out.row_mut(i).copy_from_slice(&self.data[s..s + cols]);
        }
        out
    }

    #[must_use]
    pub fn select_rows(&self, idx: &[usize]) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.field, idx.len(), self.cols);
        for (k, &i) in idx.iter().enumerate() {
            out.row_mut(k).copy_from_slice(self.row(i));
        }
        out
    }

    #[must_use]
    pub fn select_cols(&self, idx: &[usize]) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                out.data[i * idx.len() + k] = self.data[i * self.cols + j];
            }
        }
        out
    }

    /// Kronecker product: entry `((i, k), (j, l))` is `a[i][j]·b[k][l]`.
    #[must_use]
    pub fn kronecker(&self, other: &FpMatrix) -> FpMatrix {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = FpMatrix::zeros(self.field, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    let start = (i * other.rows + k) * c + j * other.cols;
                    self.field
                        .axpy(&mut out.data[start..start + other.cols], other.row(k), a);
                }
            }
        }
        out
    }

    /// Unique reduced row echelon form.
    #[must_use]
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivot_cols = m.rref_in_place(self.cols);
        Rref {
            rank: pivot_cols.len(),
            reduced: m,
            pivot_cols,
        }
    }

    /// Reduces in place, searching for pivots only among the first `limit`
    /// columns; row operations still act on the full rows. Returns pivots.
    pub fn rref_in_place(&mut self, limit: usize) -> Vec<usize> {
        let f = self.field;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit.min(cols) {
            if r == self.rows {
                break;
            }
            let Some(i) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if i != r {
                for j in c..cols {
                    self.data.swap(i * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            f.scale(&mut self.data[r * cols + c..(r + 1) * cols], inv);
            for i2 in 0..self.rows {
                if i2 == r {
                    continue;
                }
                let a = self.data[i2 * cols + c];
                if a != 0 {
                    let (dst, src) = two_rows(&mut self.data, cols, i2, r);
                    f.axpy(&mut dst[c..], &src[c..], f.neg(a));
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis (as rows) of the left kernel `{v : v·self = 0}`.
    #[must_use]
    pub fn kernel_basis(&self) -> FpMatrix {
        let f = self.field;
        let t = self.transpose().rref();
        let n = self.rows;
        let free: Vec<usize> = {
            let mut is_pivot = vec![false; n];
            for &c in &t.pivot_cols {
                is_pivot[c] = true;
            }
            (0..n).filter(|&c| !is_pivot[c]).collect()
        };
        let mut out = FpMatrix::zeros(f, free.len(), n);
        for (k, &j) in free.iter().enumerate() {
            out.set(k, j, 1);
            for (r, &pc) in t.pivot_cols.iter().enumerate() {
                out.set(k, pc, f.neg(t.reduced.get(r, j)));
            }
        }
        out
    }

    /// Some `x` with `x·self = b`, or `None` when the system is inconsistent.
    ///
    /// # Panics
    /// Panics if `self` and `b` have different column counts.
    #[must_use]
    pub fn solve(&self, b: &FpMatrix) -> Option<FpMatrix> {
        assert_eq!(self.cols, b.cols, "solve: column counts differ");
        let n = self.rows;
        let mut aug = FpMatrix::hstack(self.field, self.cols, &[&self.transpose(), &b.transpose()]);
        let pivots = aug.rref_in_place(n);
        let rank = pivots.len();
        for r in rank..aug.rows {
            if aug.row(r)[n..].iter().any(|&x| x != 0) {
                return None;
            }
        }
        let mut x = FpMatrix::zeros(self.field, b.rows, n);
        for (r, &pc) in pivots.iter().enumerate() {
            for s in 0..b.rows {
                x.set(s, pc, aug.get(r, n + s));
            }
        }
        Some(x)
    }

    /// Inverse of a square matrix, if it exists.
    #[must_use]
    pub fn inverse(&self) -> Option<FpMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = FpMatrix::hstack(self.field, n, &[self, &FpMatrix::identity(self.field, n)]);
        let pivots = aug.rref_in_place(n);
        if pivots.len() < n {
            return None;
        }
        Some(aug.block(0, n, n, n))
    }

    /// True when some power of the square matrix vanishes.
    #[must_use]
    pub fn is_nilpotent(&self) -> bool {
        let mut e = 1u64;
        while (e as usize) < self.rows.max(1) {
            e *= 2;
        }
        self.pow(e).is_zero()
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix(p={}, {}x{})", self.p(), self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// A subspace stored by its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSpace {
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl RowSpace {
    /// Span of the rows of `m`.
    #[must_use]
    pub fn span(m: &FpMatrix) -> RowSpace {
        let r = m.rref();
        RowSpace {
            basis: r.reduced.block(0, 0, r.rank, m.cols()),
            pivots: r.pivot_cols,
        }
    }

    #[must_use]
    pub fn zero(field: Field, ambient: usize) -> RowSpace {
        RowSpace {
            basis: FpMatrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    #[must_use]
    pub fn full(field: Field, ambient: usize) -> RowSpace {
        RowSpace {
            basis: FpMatrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    #[must_use]
    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    #[must_use]
    pub fn field(&self) -> Field {
        self.basis.field()
    }

    /// Echelon basis as matrix rows.
    #[must_use]
    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    #[must_use]
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the basis in place; the result is zero iff `v` was in the span.
    pub fn reduce(&self, v: &mut [u8]) {
        let f = self.field();
        for (r, &c) in self.pivots.iter().enumerate() {
            let a = v[c];
            if a != 0 {
                f.axpy(v, self.basis.row(r), f.neg(a));
            }
        }
    }

    #[must_use]
    pub fn contains(&self, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// True when every row of `m` lies in the subspace.
    #[must_use]
    pub fn contains_rows(&self, m: &FpMatrix) -> bool {
        (0..m.rows()).all(|i| self.contains(m.row(i)))
    }

    #[must_use]
    pub fn contains_space(&self, other: &RowSpace) -> bool {
        self.contains_rows(&other.basis)
    }

    /// Coordinates of a vector known to lie in the span, relative to the echelon basis.
    #[must_use]
    pub fn coords(&self, v: &[u8]) -> Vec<u8> {
        self.pivots.iter().map(|&c| v[c]).collect()
    }

    #[must_use]
    pub fn sum(&self, other: &RowSpace) -> RowSpace {
        RowSpace::span(&FpMatrix::vstack(
            self.field(),
            self.ambient(),
            &[&self.basis, &other.basis],
        ))
    }

    #[must_use]
    pub fn intersect(&self, other: &RowSpace) -> RowSpace {
        let stacked = FpMatrix::vstack(self.field(), self.ambient(), &[&self.basis, &other.basis]);
        let k = stacked.kernel_basis();
        let left = k.block(0, 0, k.rows(), self.dim());
        RowSpace::span(&left.mul(&self.basis))
    }

    /// Indices of the coordinates not used as pivots, which index a basis of the quotient.
    #[must_use]
    pub fn nonpivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient()];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient()).filter(|&c| !is_pivot[c]).collect()
    }

    /// Matrix of the projection onto `ambient / self`, in the basis given by
    /// the non-pivot coordinates.
    #[must_use]
    pub fn quotient_map(&self) -> FpMatrix {
        let f = self.field();
        let non = self.nonpivots();
        let mut pos = vec![usize::MAX; self.ambient()];
        for (k, &j) in non.iter().enumerate() {
            pos[j] = k;
        }
        let mut q = FpMatrix::zeros(f, self.ambient(), non.len());
        for &j in &non {
            q.set(j, pos[j], 1);
        }
        for (r, &pc) in self.pivots.iter().enumerate() {
            for &j in &non {
                q.set(pc, pos[j], f.neg(self.basis.get(r, j)));
            }
        }
        q
    }
}

/// Expresses vectors as combinations of a fixed list of generators.
///
/// Keeps an echelon form of the generators together with the transform that
/// produced it, so each query costs one reduction.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    echelon: Vec<Vec<u8>>,
    pivots: Vec<usize>,
    transform: Vec<Vec<u8>>,
    field: Field,
    ngens: usize,
    ambient: usize,
}

impl SpanSolver {
    #[must_use]
    pub fn new(field: Field, ambient: usize) -> SpanSolver {
        SpanSolver {
            echelon: Vec::new(),
            pivots: Vec::new(),
            transform: Vec::new(),
            field,
            ngens: 0,
            ambient,
        }
    }

    /// Solver for the rows of `m`.
    #[must_use]
    pub fn from_rows(m: &FpMatrix) -> SpanSolver {
        let mut s = SpanSolver::new(m.field(), m.cols());
        for i in 0..m.rows() {
            s.push(m.row(i));
        }
        s
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    #[must_use]
    pub fn generators(&self) -> usize {
        self.ngens
    }

    fn reduce_tracked(&self, v: &mut [u8]) -> Vec<u8> {
        let f = self.field;
        let mut combo = vec![0u8; self.ngens];
        for (r, &c) in self.pivots.iter().enumerate() {
            let a = v[c];
            if a != 0 {
                let na = f.neg(a);
                f.axpy(v, &self.echelon[r], na);
                let t = &self.transform[r];
                f.axpy(&mut combo[..t.len()], t, na);
            }
        }
        combo
    }

    /// Adds a generator; returns true when it enlarged the span.
    pub fn push(&mut self, v: &[u8]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let f = self.field;
        let mut w = v.to_vec();
        let mut combo = self.reduce_tracked(&mut w);
        let idx = self.ngens;
        self.ngens += 1;
        for t in &mut self.transform {
            t.resize(self.ngens, 0);
        }
        combo.resize(self.ngens, 0);
        let Some(c) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        // w = v + combo·gens, so w = (combo + e_idx)·gens
        combo[idx] = f.add(combo[idx], 1);
        let inv = f.inv(w[c]);
        f.scale(&mut w, inv);
        f.scale(&mut combo, inv);
        // keep the echelon reduced in column c
        for r in 0..self.echelon.len() {
            let a = self.echelon[r][c];
            if a != 0 {
                let na = f.neg(a);
                let (e, t) = (&mut self.echelon[r], &mut self.transform[r]);
                f.axpy(e, &w, na);
                f.axpy(t, &combo, na);
            }
        }
        self.echelon.push(w);
        self.transform.push(combo);
        self.pivots.push(c);
        true
    }

    /// Coefficients `x` with `x·gens = v`, if `v` is in the span.
    #[must_use]
    pub fn express(&self, v: &[u8]) -> Option<Vec<u8>> {
        let f = self.field;
        let mut w = v.to_vec();
        let combo = self.reduce_tracked(&mut w);
        if w.iter().any(|&x| x != 0) {
            return None;
        }
        Some(combo.iter().map(|&c| f.neg(c)).collect())
    }

    #[must_use]
    pub fn contains(&self, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        for (r, &c) in self.pivots.iter().enumerate() {
            let a = w[c];
            if a != 0 {
                self.field.axpy(&mut w, &self.echelon[r], self.field.neg(a));
            }
        }
        w.iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn rejects_non_primes() {
        assert!(Field::new(4).is_err());
        assert!(Field::new(1).is_err());
        assert!(Field::new(257).is_err());
        assert!(Field::new(251).is_ok());
    }

    #[test]
    fn empty_matrix_has_rank_zero() {
        let r = FpMatrix::zeros(f(2), 0, 0).rref();
        assert_eq!(r.rank, 0);
        assert!(r.pivot_cols.is_empty());
    }

    #[test]
    fn identity_rref() {
        let r = FpMatrix::identity(f(2), 3).rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_cols, vec![0, 1, 2]);
    }

    #[test]
    fn singular_two_by_two_over_f3() {
        // det = 1 - 4 = -3 = 0 mod 3; second row is twice the first
        let m = FpMatrix::from_rows(f(3), &[vec![1, 2], vec![2, 1]]);
        assert_eq!(m.rank(), 1);
        let mut seen_nonzero_kernel = 0;
        for a in 0..3 {
            for b in 0..3 {
                if (a, b) != (0, 0) && m.vec_mul(&[a, b]).iter().all(|&x| x == 0) {
                    seen_nonzero_kernel += 1;
                }
            }
        }
        // a one-dimensional kernel over F_3 has two nonzero vectors
        assert_eq!(seen_nonzero_kernel, 2);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(FpMatrix::identity(f(3), 4).kernel_basis().rows(), 0);
        assert_eq!(FpMatrix::zeros(f(2), 2, 3).kernel_basis().rows(), 2);
        let k = FpMatrix::from_rows(f(2), &[vec![1, 1], vec![1, 1]]).kernel_basis();
        assert_eq!(k, FpMatrix::from_rows(f(2), &[vec![1, 1]]));
    }

    #[test]
    fn solve_examples() {
        let b = FpMatrix::from_rows(f(5), &[vec![1, 4, 2], vec![0, 3, 3]]);
        assert_eq!(FpMatrix::identity(f(5), 3).solve(&b), Some(b.clone()));
        let z = FpMatrix::zeros(f(2), 2, 2);
        assert_eq!(z.solve(&FpMatrix::zeros(f(2), 1, 2)), Some(FpMatrix::zeros(f(2), 1, 2)));
        let a = FpMatrix::from_rows(f(2), &[vec![1, 0]]);
        assert_eq!(a.solve(&FpMatrix::from_rows(f(2), &[vec![0, 1]])), None);
    }

    #[test]
    fn quotient_map_kills_subspace() {
        let s = RowSpace::span(&FpMatrix::from_rows(f(3), &[vec![1, 2, 0, 1], vec![0, 0, 1, 2]]));
        let q = s.quotient_map();
        assert!(s.basis().mul(&q).is_zero());
        assert_eq!(q.rank(), 2);
    }

    #[test]
    fn span_solver_expresses_combinations() {
        let field = f(3);
        let g = FpMatrix::from_rows(field, &[vec![1, 1, 0], vec![2, 2, 0], vec![0, 1, 1]]);
        let s = SpanSolver::from_rows(&g);
        assert_eq!(s.rank(), 2);
        let v = [2, 1, 2];
        let x = s.express(&v).unwrap();
        let back = g.vec_mul(&x);
        assert_eq!(back, v.to_vec());
        assert!(s.express(&[0, 0, 1]).is_none());
    }

    #[test]
    fn intersection_of_planes() {
        let field = f(2);
        let a = RowSpace::span(&FpMatrix::from_rows(field, &[vec![1, 0, 0], vec![0, 1, 0]]));
        let b = RowSpace::span(&FpMatrix::from_rows(field, &[vec![0, 1, 0], vec![0, 0, 1]]));
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[0, 1, 0]));
    }

    #[test]
    fn barrett_reduction_matches_remainder() {
        for p in [3u32, 5, 7, 11, 13, 37] {
            let field = f(p);
            for a in 0..p as u8 {
                for s in 0..p as u8 {
                    for c in 0..p as u8 {
                        let mut d = [a];
                        field.axpy(&mut d, &[s], c);
                        assert_eq!(d[0] as u32, (a as u32 + c as u32 * s as u32) % p);
                    }
                }
            }
        }
    }
}
