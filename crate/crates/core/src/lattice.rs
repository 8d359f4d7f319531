//! Exact integer matrix algebra: Smith normal form, saturation tests, and
//! extension of a lattice tuple to a unimodular basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense matrix over the integers, row-major, arbitrary precision.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl std::fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::MatrixShape);
        }
        Ok(IntegerMatrix { rows, cols, data })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::MatrixShape);
        }
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| BigInt::from(x)))
            .collect();
        IntegerMatrix::new(r, c, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::MatrixShape);
        }
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Matrix-vector product (vector as a column).
    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::MatrixShape);
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect())
    }

    pub fn apply_i64(&self, v: &[i64]) -> Result<Vec<BigInt>> {
        let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.apply(&big)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.data.clone();
        let at = |a: &Vec<BigInt>, i: usize, j: usize| a[i * n + j].clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if at(&a, k, k).is_zero() {
                match (k + 1..n).find(|&i| !at(&a, i, k).is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (at(&a, k, k) * at(&a, i, j) - at(&a, i, k) * at(&a, k, j)) / &prev;
                    a[i * n + j] = v;
                }
                a[i * n + k] = BigInt::zero();
            }
            prev = at(&a, k, k);
        }
        let d = at(&a, n - 1, n - 1);
        Ok(if sign < 0 { -d } else { d })
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols
            && self
                .determinant()
                .map(|d| d.abs().is_one())
                .unwrap_or(false)
    }

    /// Rank over the rationals, via fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows).map(|i| self.row(i)).collect();
        let mut rank = 0;
        let mut col = 0;
        while rank < self.rows && col < self.cols {
            match (rank..self.rows).find(|&i| !a[i][col].is_zero()) {
                None => col += 1,
                Some(p) => {
                    a.swap(rank, p);
                    for i in rank + 1..self.rows {
                        if !a[i][col].is_zero() {
                            let (pa, pb) = (a[rank][col].clone(), a[i][col].clone());
                            for j in col..self.cols {
                                let v = &a[i][j] * &pa - &a[rank][j] * &pb;
                                a[i][j] = v;
                            }
                        }
                    }
                    rank += 1;
                    col += 1;
                }
            }
        }
        rank
    }
}

/// Result of `smith_normal_form`: `u * m * v = s` with `u`, `v` unimodular and
/// `s` diagonal with the divisibility chain `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries of `s` (the invariant factors, zeros included).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|k| self.s.get(k, k).clone())
            .collect()
    }

    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.invariant_factors()
            .iter()
            .filter(|d| !d.is_zero())
            .count()
    }
}

fn swap_rows(m: &mut IntegerMatrix, a: usize, b: usize) {
    for j in 0..m.cols() {
        let va = m.get(a, j).clone();
        let vb = m.get(b, j).clone();
        m.set(a, j, vb);
        m.set(b, j, va);
    }
}

fn swap_cols(m: &mut IntegerMatrix, a: usize, b: usize) {
    for i in 0..m.rows() {
        let va = m.get(i, a).clone();
        let vb = m.get(i, b).clone();
        m.set(i, a, vb);
        m.set(i, b, va);
    }
}

/// row[dst] += q * row[src]
fn row_addmul(m: &mut IntegerMatrix, dst: usize, src: usize, q: &BigInt) {
    for j in 0..m.cols() {
        let v = m.get(dst, j) + q * m.get(src, j);
        m.set(dst, j, v);
    }
}

/// col[dst] += q * col[src]
fn col_addmul(m: &mut IntegerMatrix, dst: usize, src: usize, q: &BigInt) {
    for i in 0..m.rows() {
        let v = m.get(i, dst) + q * m.get(i, src);
        m.set(i, dst, v);
    }
}

fn negate_row(m: &mut IntegerMatrix, i: usize) {
    for j in 0..m.cols() {
        let v = -m.get(i, j);
        m.set(i, j, v);
    }
}

/// Smith normal form by elementary row/column operations, pivoting on the
/// minimal absolute nonzero entry of the remaining block.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut s = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);

    let min_pivot = |s: &IntegerMatrix, k: usize| -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !s.get(i, j).is_zero()
                    && best.map_or(true, |(bi, bj)| s.get(i, j).abs() < s.get(bi, bj).abs())
                {
                    best = Some((i, j));
                }
            }
        }
        best
    };

    for k in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = min_pivot(&s, k) else {
                // remaining block is zero, nothing more to do anywhere
                return finish(s, u, v);
            };
            if pi != k {
                swap_rows(&mut s, k, pi);
                swap_rows(&mut u, k, pi);
            }
            if pj != k {
                swap_cols(&mut s, k, pj);
                swap_cols(&mut v, k, pj);
            }
            let mut dirty = false;
            for i in k + 1..rows {
                if !s.get(i, k).is_zero() {
                    let q = -(s.get(i, k) / s.get(k, k));
                    if !q.is_zero() {
                        row_addmul(&mut s, i, k, &q);
                        row_addmul(&mut u, i, k, &q);
                    }
                    if !s.get(i, k).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            for j in k + 1..cols {
                if !s.get(k, j).is_zero() {
                    let q = -(s.get(k, j) / s.get(k, k));
                    if !q.is_zero() {
                        col_addmul(&mut s, j, k, &q);
                        col_addmul(&mut v, j, k, &q);
                    }
                    if !s.get(k, j).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // pivot divides its row and column; enforce divisibility of the
            // trailing block so the invariant-factor chain holds
            let mut fixed = true;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(s.get(i, j) % s.get(k, k)).is_zero() {
                        let one = BigInt::one();
                        row_addmul(&mut s, k, i, &one);
                        row_addmul(&mut u, k, i, &one);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
    }
    finish(s, u, v)
}

fn finish(mut s: IntegerMatrix, mut u: IntegerMatrix, v: IntegerMatrix) -> SmithDecomposition {
    for k in 0..s.rows().min(s.cols()) {
        if s.get(k, k).is_negative() {
            negate_row(&mut s, k);
            negate_row(&mut u, k);
        }
    }
    SmithDecomposition { u, s, v }
}

/// True iff the rows of `q` generate a saturated sublattice of full row rank,
/// i.e. all invariant factors equal 1.
pub fn is_saturated(q: &IntegerMatrix) -> bool {
    let snf = smith_normal_form(q);
    let factors = snf.invariant_factors();
    factors.len() >= q.rows()
        && factors.iter().take(q.rows()).all(|d| d.is_one())
        && snf.rank() == q.rows()
}

/// Column-style Hermite form of an n x r integer matrix of full column rank:
/// column operations only, pivots positive, entries left of a pivot reduced
/// into `[0, pivot)`. Returns the matrix and the pivot row of each column.
fn column_hermite(m: &IntegerMatrix) -> (IntegerMatrix, Vec<usize>) {
    let n = m.rows();
    let r = m.cols();
    let mut h = m.clone();
    let mut pivots = Vec::with_capacity(r);
    let mut c = 0;
    for row in 0..n {
        if c == r {
            break;
        }
        // euclidean reduction among columns c..r on this row
        loop {
            let nonzero: Vec<usize> = (c..r).filter(|&j| !h.get(row, j).is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let &jmin = nonzero
                .iter()
                .min_by_key(|&&j| h.get(row, j).abs())
                .unwrap();
            for &j in &nonzero {
                if j != jmin {
                    let q = -(h.get(row, j) / h.get(row, jmin));
                    col_addmul(&mut h, j, jmin, &q);
                }
            }
        }
        if let Some(j) = (c..r).find(|&j| !h.get(row, j).is_zero()) {
            if j != c {
                swap_cols(&mut h, c, j);
            }
            if h.get(row, c).is_negative() {
                for i in 0..n {
                    let v = -h.get(i, c);
                    h.set(i, c, v);
                }
            }
            pivots.push(row);
            c += 1;
        }
    }
    debug_assert_eq!(pivots.len(), r);
    // normalize entries to the left of each pivot into [0, pivot)
    for i in 0..r {
        let p = pivots[i];
        for j in 0..i {
            let q = -h.get(p, j).div_floor(h.get(p, i));
            if !q.is_zero() {
                col_addmul(&mut h, j, i, &q);
            }
        }
    }
    (h, pivots)
}

/// Extend the rows q_1..q_r of a saturated `q` to a unimodular n x n matrix
/// `b` whose first r columns are q_1..q_r. The added columns are reduced to a
/// canonical representative modulo the lattice spanned by the q-columns.
pub fn extend_to_unimodular(q: &IntegerMatrix) -> Result<IntegerMatrix> {
    let r = q.rows();
    let n = q.cols();
    if !is_saturated(q) {
        return Err(Error::NotSaturated);
    }
    let m = q.transpose(); // n x r, columns are the q_j
    let snf = smith_normal_form(&m);
    let u_inv = inverse_unimodular(&snf.u)?;
    let mut b = IntegerMatrix::zero(n, n);
    for j in 0..r {
        for i in 0..n {
            b.set(i, j, m.get(i, j).clone());
        }
    }
    for j in r..n {
        for i in 0..n {
            b.set(i, j, u_inv.get(i, j).clone());
        }
    }
    debug_assert!(b.is_unimodular());
    if r > 0 {
        let (h, pivots) = column_hermite(&m);
        for j in r..n {
            let mut col = b.column(j);
            for (i, &p) in pivots.iter().enumerate() {
                let t = col[p].div_floor(h.get(p, i));
                if !t.is_zero() {
                    for row in 0..n {
                        col[row] -= &t * h.get(row, i);
                    }
                }
            }
            for (row, val) in col.into_iter().enumerate() {
                b.set(row, j, val);
            }
        }
    }
    debug_assert!(b.is_unimodular());
    Ok(b)
}

/// Exact inverse of a unimodular matrix, via the adjugate.
pub fn inverse_unimodular(b: &IntegerMatrix) -> Result<IntegerMatrix> {
    if b.rows() != b.cols() {
        return Err(Error::NotSquare {
            rows: b.rows(),
            cols: b.cols(),
        });
    }
    let n = b.rows();
    let det = b.determinant()?;
    if !det.abs().is_one() {
        return Err(Error::NotUnimodular);
    }
    let mut inv = IntegerMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            // cofactor C_ji, placed at (i, j) of the inverse
            let minor = minor_matrix(b, j, i);
            let mut c = minor.determinant()?;
            if (i + j) % 2 == 1 {
                c = -c;
            }
            inv.set(i, j, c * &det); // 1/det == det for det = +-1
        }
    }
    Ok(inv)
}

fn minor_matrix(m: &IntegerMatrix, skip_row: usize, skip_col: usize) -> IntegerMatrix {
    let n = m.rows();
    let mut out = IntegerMatrix::zero(n - 1, n - 1);
    let mut ii = 0;
    for i in 0..n {
        if i == skip_row {
            continue;
        }
        let mut jj = 0;
        for j in 0..n {
            if j == skip_col {
                continue;
            }
            out.set(ii, jj, m.get(i, j).clone());
            jj += 1;
        }
        ii += 1;
    }
    out
}
