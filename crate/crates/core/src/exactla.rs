//! Dense linear algebra over small prime fields.
//!
//! Every matrix carries its [`Field`]; entries are stored reduced in `0..p`.
//! Elimination always picks the leftmost nonzero column as the next pivot and
//! the first row (in current order) holding a nonzero entry there, so every
//! derived basis is reproducible.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("{0} is not a prime supported as a field modulus")]
    NotPrime(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrices over different fields (p = {0} and p = {1})")]
    FieldMismatch(u32, u32),
}

/// The prime field GF(p), with `p < 2^16` so products fit in a `u32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    p: u32,
}

impl Field {
    pub fn new(p: u32) -> Result<Self, LinAlgError> {
        if !(2..65536).contains(&p) || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(LinAlgError::NotPrime(p));
        }
        Ok(Field { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }

    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in GF({})", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn pow(self, mut a: u32, mut e: u32) -> u32 {
        let mut r = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn from_i64(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for printing.
    pub fn signed(self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    /// `y += c * x`
    #[inline]
    pub fn axpy(self, y: &mut [u32], c: u32, x: &[u32]) {
        if c == 0 {
            return;
        }
        let p = self.p;
        for (yi, &xi) in y.iter_mut().zip(x) {
            *yi = (*yi + c * xi) % p;
        }
    }

    pub fn scale(self, v: &mut [u32], c: u32) {
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    pub fn dot(self, a: &[u32], b: &[u32]) -> u32 {
        let p = self.p as u64;
        let mut acc: u64 = 0;
        for (&x, &y) in a.iter().zip(b) {
            acc += (x * y) as u64;
        }
        (acc % p) as u32
    }
}

pub fn is_zero_vec(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over GF({})", self.rows, self.cols, self.field.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Result of reduced row-echelon elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub reduced: Matrix,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p;
        }
        m
    }

    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self, LinAlgError> {
        if data.len() != rows * cols {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let p = field.p;
        Ok(Matrix { field, rows, cols, data: data.into_iter().map(|x| x % p).collect() })
    }

    pub fn from_i64_rows(field: Field, rows: &[Vec<i64>]) -> Result<Self, LinAlgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinAlgError::DimensionMismatch("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&x| field.from_i64(x)).collect();
        Ok(Matrix { field, rows: rows.len(), cols, data })
    }

    /// Matrix whose columns are the given vectors (all of length `len`).
    pub fn from_columns(field: Field, len: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, len, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), len);
            for (r, &x) in col.iter().enumerate() {
                m.data[r * m.cols + c] = x;
            }
        }
        m
    }

    pub fn from_rows(field: Field, len: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * len);
        for r in rows {
            assert_eq!(r.len(), len);
            data.extend_from_slice(r);
        }
        Matrix { field, rows: rows.len(), cols: len, data }
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
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: u32) {
        self.data[r * self.cols + c] = x % self.field.p;
    }
    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    fn check_field(&self, other: &Matrix) -> Result<(), LinAlgError> {
        if self.field != other.field {
            return Err(LinAlgError::FieldMismatch(self.field.p, other.field.p));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            let out_row = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a != 0 {
                    f.axpy(out_row, a, &other.data[k * other.cols..(k + 1) * other.cols]);
                }
            }
        }
        Ok(out)
    }

    /// Panicking product for internal use where shapes are known to agree.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.try_mul(other).expect("matrix product shape")
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape");
        (0..self.rows).map(|r| self.field.dot(self.row(r), v)).collect()
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinAlgError::DimensionMismatch("sum of differently shaped matrices".into()));
        }
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Matrix { field: f, rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.try_add(other).expect("matrix sum shape")
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scaled(self.field.neg(1)))
    }

    pub fn scaled(&self, c: u32) -> Matrix {
        let f = self.field;
        Matrix { field: f, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(a, c)).collect() }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: u32, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.field.axpy(&mut self.data, c, &other.data);
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.data[r * cols.len() + j] = self.get(r, c);
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Matrix { field: self.field, rows: rows.len(), cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Matrix { field: self.field, rows: self.rows, cols, data }
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    pub fn block(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            m.data[r * cols..(r + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        m
    }

    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.data[i * m.cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.data[r * m.cols + c]);
            f.scale(&mut m.data[r * m.cols + c..(r + 1) * m.cols], inv);
            let pivot_row: Vec<u32> = m.data[r * m.cols + c..(r + 1) * m.cols].to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let x = m.data[i * m.cols + c];
                if x != 0 {
                    let start = i * m.cols + c;
                    f.axpy(&mut m.data[start..start + pivot_row.len()], f.neg(x), &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { rank: pivots.len(), pivots, reduced: m }
    }

    pub fn rank(&self) -> usize {
        if self.rows > self.cols * 2 {
            // eliminating the transpose is cheaper for tall matrices
            return self.transpose().rref().rank;
        }
        self.rref().rank
    }

    /// Basis of `{v : self * v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let Rref { pivots, reduced, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1 % f.p;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(reduced.get(i, free));
            }
            out.push(v);
        }
        out
    }

    /// Some `x` with `self * x = b`, or `None` if `b` is outside the column space.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let aug = self.hstack(&Matrix::from_columns(self.field, self.rows, &[b.to_vec()]));
        let Rref { pivots, reduced, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = reduced.get(i, self.cols);
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let Rref { rank, reduced, .. } = self.hstack(&Matrix::identity(self.field, n)).rref();
        if rank < n || (0..n).any(|i| reduced.get(i, i) != 1) {
            return None;
        }
        Some(reduced.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

/// Incrementally built echelon basis of a subspace of `F^n`.
///
/// Each stored row has a 1 at its pivot and zeros at the pivots of the rows
/// stored before it, which is enough for [`Echelon::reduce`] to be exact.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    len: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    originals: Vec<Vec<u32>>,
}

impl Echelon {
    pub fn new(field: Field, len: usize) -> Self {
        Echelon { field, len, rows: Vec::new(), pivots: Vec::new(), originals: Vec::new() }
    }

    pub fn from_vectors<'a>(field: Field, len: usize, vs: impl IntoIterator<Item = &'a Vec<u32>>) -> Self {
        let mut e = Self::new(field, len);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.len
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The vectors that were accepted, in insertion order (an honest basis of the span).
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.originals
    }

    pub fn reduce(&self, v: &mut [u32]) {
        let f = self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                f.axpy(v, f.neg(c), row);
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        is_zero_vec(&w)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.len);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(w[pc]);
        self.field.scale(&mut w, inv);
        self.rows.push(w);
        self.pivots.push(pc);
        self.originals.push(v.to_vec());
        true
    }
}

/// Coordinates of vectors with respect to a fixed linearly independent list.
#[derive(Clone, Debug)]
pub struct SpanCoords {
    field: Field,
    len: usize,
    k: usize,
    rows: Vec<Vec<u32>>,
    combos: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl SpanCoords {
    /// Panics if `basis` is linearly dependent.
    pub fn new(field: Field, len: usize, basis: &[Vec<u32>]) -> Self {
        let k = basis.len();
        let mut rows: Vec<Vec<u32>> = Vec::with_capacity(k);
        let mut combos: Vec<Vec<u32>> = Vec::with_capacity(k);
        let mut pivots = Vec::with_capacity(k);
        for (i, b) in basis.iter().enumerate() {
            assert_eq!(b.len(), len);
            let mut w = b.clone();
            let mut c = vec![0; k];
            c[i] = 1 % field.p();
            for j in 0..rows.len() {
                let x = w[pivots[j]];
                if x != 0 {
                    field.axpy(&mut w, field.neg(x), &rows[j]);
                    field.axpy(&mut c, field.neg(x), &combos[j]);
                }
            }
            let pc = w.iter().position(|&x| x != 0).expect("SpanCoords basis must be independent");
            let inv = field.inv(w[pc]);
            field.scale(&mut w, inv);
            field.scale(&mut c, inv);
            rows.push(w);
            combos.push(c);
            pivots.push(pc);
        }
        SpanCoords { field, len, k, rows, combos, pivots }
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    /// Coefficients of `v` in the basis, or `None` when `v` is not in the span.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(v.len(), self.len);
        let f = self.field;
        let mut w = v.to_vec();
        let mut out = vec![0; self.k];
        for j in 0..self.rows.len() {
            let x = w[self.pivots[j]];
            if x != 0 {
                f.axpy(&mut w, f.neg(x), &self.rows[j]);
                f.axpy(&mut out, x, &self.combos[j]);
            }
        }
        is_zero_vec(&w).then_some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Field {
        Field::new(p).unwrap()
    }

    fn m(p: u32, rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64_rows(gf(p), &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn field_rejects_composites() {
        assert!(Field::new(4).is_err());
        assert!(Field::new(1).is_err());
        assert!(Field::new(9).is_err());
        assert!(Field::new(7).is_ok());
        assert_eq!(gf(3).inv(2), 2);
        assert_eq!(gf(5).inv(3), 2);
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(gf(3), 3);
        let r = id.rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(Matrix::zeros(gf(3), 2, 2).rref().rank, 0);
    }

    #[test]
    fn rank_one_over_gf3() {
        // second row is twice the first
        let a = m(3, &[&[1, 2], &[2, 1]]);
        let r = a.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.reduced, m(3, &[&[1, 2], &[0, 0]]));
        let ns = a.nullspace();
        assert_eq!(ns, vec![vec![1, 1]]);
        assert!(is_zero_vec(&a.mul_vec(&ns[0])));
    }

    #[test]
    fn nullspace_edge_cases() {
        assert!(Matrix::identity(gf(5), 4).nullspace().is_empty());
        assert_eq!(Matrix::zeros(gf(3), 2, 3).nullspace().len(), 3);
    }

    #[test]
    fn solve_cases() {
        let id = Matrix::identity(gf(3), 2);
        assert_eq!(id.solve(&[1, 2]).unwrap(), Some(vec![1, 2]));
        assert_eq!(Matrix::zeros(gf(3), 2, 2).solve(&[1, 0]).unwrap(), None);
        let a = m(3, &[&[1, 2], &[2, 1]]);
        assert_eq!(a.solve(&[0, 0]).unwrap(), Some(vec![0, 0]));
        assert!(matches!(a.solve(&[1]), Err(LinAlgError::DimensionMismatch(_))));
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(5, &[&[1, 2, 0], &[0, 1, 4], &[3, 0, 2]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(gf(5), 3));
        assert!(m(3, &[&[1, 2], &[2, 1]]).inverse().is_none());
    }

    #[test]
    fn echelon_and_coords() {
        let f = gf(3);
        let basis = vec![vec![1, 1, 0], vec![0, 1, 2]];
        let sc = SpanCoords::new(f, 3, &basis);
        // 2*(1,1,0) + (0,1,2) = (2,0,2)
        assert_eq!(sc.coords(&[2, 0, 2]), Some(vec![2, 1]));
        assert_eq!(sc.coords(&[1, 0, 0]), None);
        let mut e = Echelon::new(f, 3);
        assert!(e.insert(&basis[0]));
        assert!(e.insert(&basis[1]));
        assert!(!e.insert(&[2, 0, 2]));
        assert!(e.contains(&[1, 2, 2]));
        assert_eq!(e.dim(), 2);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix_strategy() -> impl Strategy<Value = Matrix> {
            (1usize..7, 1usize..7, prop::sample::select(vec![2u32, 3, 5])).prop_flat_map(|(r, c, p)| {
                prop::collection::vec(0..p, r * c)
                    .prop_map(move |data| Matrix::from_vec(Field::new(p).unwrap(), r, c, data).unwrap())
            })
        }

        proptest! {
            #[test]
            fn rank_of_transpose(a in matrix_strategy()) {
                prop_assert_eq!(a.rref().rank, a.transpose().rref().rank);
            }

            #[test]
            fn rank_nullity(a in matrix_strategy()) {
                let ns = a.nullspace();
                prop_assert_eq!(a.rref().rank + ns.len(), a.cols());
                for v in &ns {
                    prop_assert!(is_zero_vec(&a.mul_vec(v)));
                }
                let e = Echelon::from_vectors(a.field(), a.cols(), &ns);
                prop_assert_eq!(e.dim(), ns.len());
            }

            #[test]
            fn rref_idempotent(a in matrix_strategy()) {
                let r = a.rref();
                prop_assert_eq!(r.reduced.rref().reduced, r.reduced);
            }

            #[test]
            fn solve_iff_rank_unchanged(a in matrix_strategy(), seed in 0u64..1000) {
                let f = a.field();
                let b: Vec<u32> = (0..a.rows()).map(|i| ((seed >> (i % 8)) as u32 + i as u32) % f.p()).collect();
                let aug = a.hstack(&Matrix::from_columns(f, a.rows(), std::slice::from_ref(&b)));
                let sol = a.solve(&b).unwrap();
                prop_assert_eq!(sol.is_some(), aug.rref().rank == a.rref().rank);
                if let Some(x) = sol {
                    prop_assert_eq!(a.mul_vec(&x), b);
                }
            }
        }
    }
}
