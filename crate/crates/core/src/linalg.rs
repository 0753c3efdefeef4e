//! Dense exact linear algebra over a prime field GF(p).
//!
//! Every matrix carries its modulus. Entries are stored reduced in `[0, p)`
//! and all products go through 64-bit intermediates, so any prime below
//! 2^31 is safe.

use std::fmt;

/// Largest admissible modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 31;

/// Deterministic primality test, exact for every `n < 2^31` (trial division).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A residue class modulo a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    modulus: u32,
}

impl FieldElement {
    pub fn new(value: i64, modulus: u32) -> Self {
        FieldElement {
            value: reduce(value, modulus),
            modulus,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(FieldElement {
                value: inv(self.value, self.modulus),
                modulus: self.modulus,
            })
        }
    }
}

impl std::ops::Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        FieldElement {
            value: add(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl std::ops::Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        FieldElement {
            value: sub(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl std::ops::Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        FieldElement {
            value: mul(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl std::ops::Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        FieldElement {
            value: sub(0, self.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[inline]
pub(crate) fn reduce(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

#[inline]
pub(crate) fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (if s >= p as u64 { s - p as u64 } else { s }) as u32
}

#[inline]
pub(crate) fn sub(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        (a as u64 + p as u64 - b as u64) as u32
    }
}

#[inline]
pub(crate) fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn pow(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

#[inline]
pub(crate) fn inv(a: u32, p: u32) -> u32 {
    debug_assert!(a != 0);
    pow(a, p as u64 - 2, p)
}

/// Row-major dense matrix over GF(p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Output of [`Matrix::solve`]: a particular solution (if any) and a basis of
/// the homogeneous solution space, stored as the columns of `kernel`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Option<Vec<u32>>,
    pub kernel: Matrix,
}

impl Matrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Matrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Matrix::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds a matrix from raw integers, reducing every entry mod `p`.
    pub fn from_rows<R: AsRef<[i64]>>(p: u32, rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut m = Matrix::zeros(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), c, "ragged matrix rows");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = reduce(v, p);
            }
        }
        m
    }

    /// Builds a matrix from a flat row-major vector of already-reduced entries.
    pub fn from_vec(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&v| v < p));
        Matrix { p, rows, cols, data }
    }

    /// Stacks column vectors side by side. `len` fixes the row count when
    /// `columns` is empty.
    pub fn from_columns(p: u32, len: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Matrix::zeros(p, len, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), len);
            for (i, &v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v;
            }
        }
        m
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(v < self.p);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.p, self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.p, other.p, "modulus mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let p = self.p as u64;
        let mut out = Matrix::zeros(self.p, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for (c, &v) in acc.iter().enumerate() {
                out.data[r * other.cols + c] = v as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.p as u64;
        (0..self.rows)
            .map(|r| {
                let mut s = 0u64;
                for (k, &x) in v.iter().enumerate() {
                    s = (s + self.data[r * self.cols + k] as u64 * x as u64) % p;
                }
                s as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape());
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| add(a, b, self.p))
            .collect();
        Matrix::from_vec(self.p, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape());
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| sub(a, b, self.p))
            .collect();
        Matrix::from_vec(self.p, self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Matrix {
        self.scale(self.p - 1)
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let data = self.data.iter().map(|&a| mul(a, s, self.p)).collect();
        Matrix::from_vec(self.p, self.rows, self.cols, data)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.p, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            out.data[r * out.cols..r * out.cols + self.cols].copy_from_slice(self.row(r));
            out.data[r * out.cols + self.cols..(r + 1) * out.cols].copy_from_slice(other.row(r));
        }
        out
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix::from_vec(self.p, self.rows + other.rows, self.cols, data)
    }

    pub fn block_diag(p: u32, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(p, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.p, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            out.data[r * cols..(r + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Matrix::from_vec(self.p, idx.len(), self.cols, data)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.p, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.data[r * idx.len() + j] = self.get(r, c);
            }
        }
        out
    }

    /// Reduced row echelon form. Pivots are strictly increasing column
    /// indices and every pivot entry is 1.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        Rref {
            rank: pivots.len(),
            reduced: m,
            pivots,
        }
    }

    /// Row-reduces in place, choosing pivots only among the first
    /// `pivot_cols` columns. Returns the pivot columns.
    fn rref_in_place(&mut self, pivot_cols: usize) -> Vec<usize> {
        let p = self.p;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..pivot_cols {
            if row == self.rows {
                break;
            }
            let Some(sel) = (row..self.rows).find(|&r| self.data[r * cols + col] != 0) else {
                continue;
            };
            if sel != row {
                for c in 0..cols {
                    self.data.swap(sel * cols + c, row * cols + c);
                }
            }
            let lead = self.data[row * cols + col];
            if lead != 1 {
                let s = inv(lead, p);
                for c in col..cols {
                    let v = &mut self.data[row * cols + c];
                    *v = mul(*v, s, p);
                }
            }
            let pivot_row: Vec<u32> = self.data[row * cols + col..(row + 1) * cols].to_vec();
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = self.data[r * cols + col];
                if f == 0 {
                    continue;
                }
                let neg = p - f;
                let base = r * cols + col;
                for (k, &pv) in pivot_row.iter().enumerate() {
                    if pv != 0 {
                        let slot = &mut self.data[base + k];
                        *slot = ((*slot as u64 + neg as u64 * pv as u64) % p as u64) as u32;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Columns span the null space `{x : self * x = 0}`. One basis vector per
    /// free column, with that free variable set to 1 and the other free
    /// variables set to 0.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { reduced, pivots, .. } = self.rref();
        kernel_from_rref(&reduced, &pivots, self.cols)
    }

    /// Solves `self * x = b`. The particular solution sets every free variable
    /// to zero, which makes it the lexicographically least point of the RREF
    /// parameterization.
    pub fn solve(&self, b: &[u32]) -> Solution {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let rhs = Matrix::from_columns(self.p, self.rows, &[b.to_vec()]);
        let mut aug = self.hstack(&rhs);
        let pivots = aug.rref_in_place(self.cols);
        let consistent = (pivots.len()..self.rows).all(|r| aug.get(r, self.cols) == 0);
        let particular = consistent.then(|| {
            let mut x = vec![0u32; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                x[c] = aug.get(r, self.cols);
            }
            x
        });
        let reduced = aug.block(0, 0, self.rows, self.cols);
        Solution {
            particular,
            kernel: kernel_from_rref(&reduced, &pivots, self.cols),
        }
    }

    /// Solves `self * X = b` column by column; `None` if any column is
    /// inconsistent.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows);
        let mut aug = self.hstack(b);
        let pivots = aug.rref_in_place(self.cols);
        for r in pivots.len()..self.rows {
            if (0..b.cols).any(|c| aug.get(r, self.cols + c) != 0) {
                return None;
            }
        }
        let mut x = Matrix::zeros(self.p, self.cols, b.cols);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(c, j, aug.get(r, self.cols + j));
            }
        }
        Some(x)
    }

    /// Indices of a maximal independent set of columns (the RREF pivots).
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rref().pivots
    }

    /// A basis of the column space taken from the original columns.
    pub fn column_space(&self) -> Matrix {
        self.select_cols(&self.pivot_columns())
    }

    /// `L` with `L * self = I`; requires full column rank.
    pub fn left_inverse(&self) -> Option<Matrix> {
        self.transpose().right_inverse().map(|r| r.transpose())
    }

    /// `R` with `self * R = I`; requires full row rank.
    pub fn right_inverse(&self) -> Option<Matrix> {
        let id = Matrix::identity(self.p, self.rows);
        self.solve_matrix(&id)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        self.right_inverse()
    }
}

/// A linear system in an unknown `rows x cols` matrix `X`, assembled from
/// blocks of the form `sum_t L_t * X * R_t = B`.
///
/// `X` is vectorized row-major, so the particular solution returned by
/// [`MatrixEquation::solve`] inherits the free-variables-zero rule of
/// [`Matrix::solve`].
#[derive(Clone, Debug)]
pub struct MatrixEquation {
    p: u32,
    rows: usize,
    cols: usize,
    coeffs: Vec<u32>,
    rhs: Vec<u32>,
}

/// Solutions of a [`MatrixEquation`]: one particular solution and a basis of
/// the homogeneous solutions.
#[derive(Clone, Debug)]
pub struct MatrixSolution {
    pub particular: Option<Matrix>,
    pub homogeneous: Vec<Matrix>,
}

impl MatrixEquation {
    pub fn new(p: u32, rows: usize, cols: usize) -> Self {
        MatrixEquation {
            p,
            rows,
            cols,
            coeffs: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.rows * self.cols
    }

    /// Appends the block `sum_t terms[t].0 * X * terms[t].1 = rhs`.
    pub fn push(&mut self, terms: &[(&Matrix, &Matrix)], rhs: &Matrix) {
        let n = self.unknowns();
        let (a, b) = rhs.shape();
        let start = self.rhs.len();
        self.coeffs.resize((start + a * b) * n, 0);
        self.rhs.extend_from_slice(rhs.data());
        let p = self.p;
        for (l, r) in terms {
            assert_eq!(l.shape(), (a, self.rows), "left factor shape");
            assert_eq!(r.shape(), (self.cols, b), "right factor shape");
            for i in 0..a {
                for k in 0..self.rows {
                    let lv = l.get(i, k);
                    if lv == 0 {
                        continue;
                    }
                    for c in 0..self.cols {
                        let rrow = r.row(c);
                        let col = k * self.cols + c;
                        for (j, &rv) in rrow.iter().enumerate() {
                            if rv != 0 {
                                let slot = &mut self.coeffs[(start + i * b + j) * n + col];
                                *slot = add(*slot, mul(lv, rv, p), p);
                            }
                        }
                    }
                }
            }
        }
    }

    /// Appends `X * right - left * X = 0`, the intertwining condition.
    pub fn push_commutes(&mut self, left: &Matrix, right: &Matrix) {
        let id_l = Matrix::identity(self.p, self.rows);
        let id_r = Matrix::identity(self.p, self.cols);
        let neg = left.neg();
        let zero = Matrix::zeros(self.p, self.rows, self.cols);
        self.push(&[(&id_l, right), (&neg, &id_r)], &zero);
    }

    pub fn solve(&self) -> MatrixSolution {
        let n = self.unknowns();
        let eqs = self.rhs.len();
        let a = Matrix::from_vec(self.p, eqs, n, self.coeffs.clone());
        let s = a.solve(&self.rhs);
        let shape = |v: Vec<u32>| Matrix::from_vec(self.p, self.rows, self.cols, v);
        MatrixSolution {
            particular: s.particular.map(shape),
            homogeneous: (0..s.kernel.cols()).map(|j| shape(s.kernel.column(j))).collect(),
        }
    }
}

fn kernel_from_rref(reduced: &Matrix, pivots: &[usize], ncols: usize) -> Matrix {
    let p = reduced.p;
    let mut is_pivot = vec![false; ncols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..ncols).filter(|&c| !is_pivot[c]).collect();
    let mut basis = Matrix::zeros(p, ncols, free.len());
    for (j, &f) in free.iter().enumerate() {
        basis.set(f, j, 1 % p);
        for (r, &pc) in pivots.iter().enumerate() {
            let v = reduced.get(r, f);
            if v != 0 {
                basis.set(pc, j, p - v);
            }
        }
    }
    basis
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[GF({}) {}x{}]", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "\n  {:?}", self.row(r))?;
        }
        Ok(())
    }
}
