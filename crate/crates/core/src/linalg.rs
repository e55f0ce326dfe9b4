//! Dense matrices over a [`Field`], univariate polynomials in `D`, and
//! polynomial matrices.
//!
//! Matrices do not carry their field; every operation takes it explicitly.
//! Row and column indices are 0-based throughout the Rust API.

use crate::error::{Error, Result};
use crate::field::{Elt, Field};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Elt>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![Elt::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Elt::ONE);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Elt>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    /// Builds from nested rows of raw indices. Panics on ragged input.
    pub fn from_rows<R: AsRef<[u64]>>(rows: &[R]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            data.extend(r.as_ref().iter().map(|&x| Elt(x)));
        }
        Mat {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elt {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[Elt] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn to_indices(&self) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|e| e.0).collect())
            .collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, f: &Field, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(r, t);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.mul_add(a, other.get(t, c), out.get(r, c));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, f: &Field, other: &Mat) -> Result<Mat> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        if self.rows > 0 && other.rows > 0 && self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack".into()));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat {
            rows: self.rows + other.rows,
            cols,
            data,
        })
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack".into()));
        }
        let mut out = Mat::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c));
            }
        }
        Ok(out)
    }

    /// Selects the given rows and columns (0-based, strictly increasing).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Mat> {
        check_indices(rows, self.rows)?;
        check_indices(cols, self.cols)?;
        Ok(self.select(rows, cols))
    }

    /// Same as [`Mat::submatrix`] with 1-based indices.
    pub fn submatrix_1based(&self, rows: &[usize], cols: &[usize]) -> Result<Mat> {
        let shift = |v: &[usize], limit: usize| -> Result<Vec<usize>> {
            v.iter()
                .map(|&i| {
                    i.checked_sub(1)
                        .ok_or(Error::IndexOutOfRange { index: i, limit })
                })
                .collect()
        };
        self.submatrix(&shift(rows, self.rows)?, &shift(cols, self.cols)?)
    }

    /// Selects columns without validation.
    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (i, &c) in cols.iter().enumerate() {
                out.set(r, i, self.get(r, c));
            }
        }
        out
    }

    fn select(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            data.extend(cols.iter().map(|&c| self.get(r, c)));
        }
        Mat {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }
}

fn check_indices(idx: &[usize], limit: usize) -> Result<()> {
    for (i, &x) in idx.iter().enumerate() {
        if x >= limit {
            return Err(Error::IndexOutOfRange { index: x, limit });
        }
        if i > 0 && idx[i - 1] >= x {
            return Err(Error::NotStrictlyIncreasing);
        }
    }
    Ok(())
}

/// Reduced row echelon form. Pivots are chosen as the first nonzero entry
/// scanning columns left to right, rows top to bottom. Returns the pivot
/// columns.
pub fn rref_in_place(f: &Field, m: &mut Mat) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
        for j in c..cols {
            let v = f.mul(m.get(r, j), inv);
            m.set(r, j, v);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c);
            if factor.is_zero() {
                continue;
            }
            let nf = f.neg(factor);
            for j in c..cols {
                let v = f.mul_add(nf, m.get(r, j), m.get(i, j));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// RREF with zero rows removed: a canonical basis of the row space.
pub fn row_basis(f: &Field, m: &Mat) -> Mat {
    let mut w = m.clone();
    let piv = rref_in_place(f, &mut w);
    w.data.truncate(piv.len() * w.cols);
    w.rows = piv.len();
    w
}

pub fn rank(f: &Field, m: &Mat) -> usize {
    rank_in_place(f, &mut m.data.clone(), m.rows, m.cols)
}

/// Rank of a row-major `rows x cols` buffer, destroying it.
pub fn rank_in_place(f: &Field, a: &mut [Elt], rows: usize, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in c..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(a[r * cols + c]).expect("pivot is nonzero");
        for i in r + 1..rows {
            let x = a[i * cols + c];
            if x.is_zero() {
                continue;
            }
            let factor = f.neg(f.mul(x, inv));
            for j in c..cols {
                a[i * cols + j] = f.mul_add(factor, a[r * cols + j], a[i * cols + j]);
            }
        }
        r += 1;
    }
    r
}

pub fn det(f: &Field, m: &Mat) -> Result<Elt> {
    if m.rows != m.cols {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    Ok(det_in_place(f, &mut m.data.clone(), m.rows))
}

/// Determinant of a row-major `n x n` buffer, destroying it.
pub fn det_in_place(f: &Field, a: &mut [Elt], n: usize) -> Elt {
    let mut d = Elt::ONE;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i * n + c].is_zero()) else {
            return Elt::ZERO;
        };
        if p != c {
            for j in c..n {
                a.swap(p * n + j, c * n + j);
            }
            d = f.neg(d);
        }
        let pv = a[c * n + c];
        d = f.mul(d, pv);
        let inv = f.inv(pv).expect("pivot is nonzero");
        for i in c + 1..n {
            let x = a[i * n + c];
            if x.is_zero() {
                continue;
            }
            let factor = f.neg(f.mul(x, inv));
            for j in c + 1..n {
                a[i * n + j] = f.mul_add(factor, a[c * n + j], a[i * n + j]);
            }
        }
    }
    d
}

/// Right kernel `{x : m x = 0}` as the rows of a matrix in RREF.
pub fn kernel(f: &Field, m: &Mat) -> Mat {
    let mut w = m.clone();
    let pivots = rref_in_place(f, &mut w);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Mat::zeros(free.len(), m.cols);
    for (b, &fc) in free.iter().enumerate() {
        basis.set(b, fc, Elt::ONE);
        for (r, &pc) in pivots.iter().enumerate() {
            basis.set(b, pc, f.neg(w.get(r, fc)));
        }
    }
    row_basis(f, &basis)
}

/// Solves `a x = b` for `x` (one column per column of `b`), if consistent.
pub fn solve(f: &Field, a: &Mat, b: &Mat) -> Result<Option<Mat>> {
    if a.rows != b.rows {
        return Err(Error::DimensionMismatch("solve: row counts differ".into()));
    }
    let mut aug = a.hstack(b)?;
    let pivots = rref_in_place(f, &mut aug);
    if pivots.iter().any(|&c| c >= a.cols) {
        return Ok(None);
    }
    let mut x = Mat::zeros(a.cols, b.cols);
    for (r, &pc) in pivots.iter().enumerate() {
        for c in 0..b.cols {
            x.set(pc, c, aug.get(r, a.cols + c));
        }
    }
    Ok(Some(x))
}

/// Dimension of the intersection of the row spaces of `a` and `b`.
pub fn intersection_dim(f: &Field, a: &Mat, b: &Mat) -> Result<usize> {
    let ra = rank(f, a);
    let rb = rank(f, b);
    let rs = rank(f, &a.vstack(b)?);
    Ok(ra + rb - rs)
}

// ---------------------------------------------------------------------------
// Polynomials in D, coefficient of D^i at position i, no trailing zeros.

pub type Poly = Vec<Elt>;

pub fn poly_trim(p: &mut Poly) {
    while p.last().is_some_and(|e| e.is_zero()) {
        p.pop();
    }
}

pub fn poly_deg(p: &[Elt]) -> Option<usize> {
    p.iter().rposition(|e| !e.is_zero())
}

pub fn poly_from(coeffs: &[u64]) -> Poly {
    let mut p: Poly = coeffs.iter().map(|&c| Elt(c)).collect();
    poly_trim(&mut p);
    p
}

pub fn poly_add(f: &Field, a: &[Elt], b: &[Elt]) -> Poly {
    let mut out: Poly = (0..a.len().max(b.len()))
        .map(|i| {
            f.add(
                a.get(i).copied().unwrap_or_default(),
                b.get(i).copied().unwrap_or_default(),
            )
        })
        .collect();
    poly_trim(&mut out);
    out
}

pub fn poly_sub(f: &Field, a: &[Elt], b: &[Elt]) -> Poly {
    let nb: Poly = b.iter().map(|&x| f.neg(x)).collect();
    poly_add(f, a, &nb)
}

pub fn poly_mul(f: &Field, a: &[Elt], b: &[Elt]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Elt::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.mul_add(x, y, out[i + j]);
        }
    }
    poly_trim(&mut out);
    out
}

/// Quotient and remainder of `a` by nonzero `b`.
pub fn poly_divrem(f: &Field, a: &[Elt], b: &[Elt]) -> Result<(Poly, Poly)> {
    let db = poly_deg(b).ok_or(Error::DivisionByZero)?;
    let mut r: Poly = a.to_vec();
    poly_trim(&mut r);
    if r.len() <= db {
        return Ok((Vec::new(), r));
    }
    let lead_inv = f.inv(b[db])?;
    let mut q = vec![Elt::ZERO; r.len() - db];
    while r.len() > db {
        let t = r.len() - 1;
        let c = f.mul(r[t], lead_inv);
        q[t - db] = c;
        let nc = f.neg(c);
        for i in 0..=db {
            r[t - db + i] = f.mul_add(nc, b[i], r[t - db + i]);
        }
        poly_trim(&mut r);
    }
    poly_trim(&mut q);
    Ok((q, r))
}

pub fn poly_monic(f: &Field, a: &[Elt]) -> Poly {
    match poly_deg(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = f.inv(a[d]).expect("leading coefficient is nonzero");
            a[..=d].iter().map(|&x| f.mul(x, inv)).collect()
        }
    }
}

/// Monic gcd by Euclid's algorithm.
pub fn poly_gcd(f: &Field, a: &[Elt], b: &[Elt]) -> Result<Poly> {
    let mut x: Poly = a.to_vec();
    let mut y: Poly = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    if x.is_empty() && y.is_empty() {
        return Err(Error::BothZero);
    }
    while !y.is_empty() {
        let (_, r) = poly_divrem(f, &x, &y)?;
        x = y;
        y = r;
    }
    Ok(poly_monic(f, &x))
}

/// Determinant of a square matrix of polynomials (Bareiss fraction-free
/// elimination; every intermediate division is exact).
pub fn poly_det(f: &Field, m: &[Vec<Poly>]) -> Result<Poly> {
    let n = m.len();
    if let Some(r) = m.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            cols: r.len(),
        });
    }
    if n == 0 {
        return Ok(vec![Elt::ONE]);
    }
    let mut a: Vec<Vec<Poly>> = m.to_vec();
    let mut prev: Poly = vec![Elt::ONE];
    let mut negate = false;
    for c in 0..n - 1 {
        let Some(p) = (c..n).find(|&i| poly_deg(&a[i][c]).is_some()) else {
            return Ok(Vec::new());
        };
        if p != c {
            a.swap(p, c);
            negate = !negate;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let t = poly_sub(
                    f,
                    &poly_mul(f, &a[c][c], &a[i][j]),
                    &poly_mul(f, &a[i][c], &a[c][j]),
                );
                let (q, r) = poly_divrem(f, &t, &prev)?;
                debug_assert!(r.is_empty(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][c] = Vec::new();
        }
        prev = a[c][c].clone();
    }
    let mut d = a[n - 1][n - 1].clone();
    if negate {
        d = d.iter().map(|&x| f.neg(x)).collect();
    }
    Ok(d)
}

// ---------------------------------------------------------------------------

/// A `rows x cols` matrix over `F[D]`, stored as coefficient matrices of
/// `D^0, D^1, ...` with trailing zero matrices removed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMat {
    rows: usize,
    cols: usize,
    coeffs: Vec<Mat>,
}

impl PolyMat {
    pub fn new(rows: usize, cols: usize, coeffs: Vec<Mat>) -> Result<PolyMat> {
        if coeffs.iter().any(|c| c.rows != rows || c.cols != cols) {
            return Err(Error::DimensionMismatch(format!(
                "coefficient matrices must all be {rows}x{cols}"
            )));
        }
        let mut pm = PolyMat { rows, cols, coeffs };
        pm.trim();
        Ok(pm)
    }

    pub fn zero(rows: usize, cols: usize) -> PolyMat {
        PolyMat {
            rows,
            cols,
            coeffs: Vec::new(),
        }
    }

    /// Builds from per-entry polynomials.
    pub fn from_entries(entries: &[Vec<Poly>]) -> Result<PolyMat> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged polynomial matrix".into()));
        }
        let len = entries
            .iter()
            .flatten()
            .map(|p| poly_deg(p).map_or(0, |d| d + 1))
            .max()
            .unwrap_or(0);
        let mut coeffs = vec![Mat::zeros(rows, cols); len];
        for (r, row) in entries.iter().enumerate() {
            for (c, p) in row.iter().enumerate() {
                for (i, &x) in p.iter().enumerate() {
                    coeffs[i].set(r, c, x);
                }
            }
        }
        PolyMat::new(rows, cols, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Mat::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn coeffs(&self) -> &[Mat] {
        &self.coeffs
    }

    /// Coefficient of `D^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Mat {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| Mat::zeros(self.rows, self.cols))
    }

    /// Maximal entry degree, `None` for the zero matrix.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn entry(&self, r: usize, c: usize) -> Poly {
        let mut p: Poly = self.coeffs.iter().map(|m| m.get(r, c)).collect();
        poly_trim(&mut p);
        p
    }

    pub fn entries(&self) -> Vec<Vec<Poly>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.entry(r, c)).collect())
            .collect()
    }

    /// Degree of row `r`, `None` if the row is zero.
    pub fn row_degree(&self, r: usize) -> Option<usize> {
        (0..self.coeffs.len())
            .rev()
            .find(|&i| self.coeffs[i].row(r).iter().any(|e| !e.is_zero()))
    }

    pub fn row(&self, r: usize) -> PolyMat {
        let coeffs = self
            .coeffs
            .iter()
            .map(|m| Mat {
                rows: 1,
                cols: self.cols,
                data: m.row(r).to_vec(),
            })
            .collect();
        PolyMat::new(1, self.cols, coeffs).expect("row slice has consistent shape")
    }

    /// Stacks row vectors (each `1 x cols`).
    pub fn stack_rows(rows: &[PolyMat], cols: usize) -> Result<PolyMat> {
        let len = rows.iter().map(|r| r.coeffs.len()).max().unwrap_or(0);
        let mut coeffs = vec![Mat::zeros(rows.len(), cols); len];
        for (i, r) in rows.iter().enumerate() {
            if r.rows != 1 || r.cols != cols {
                return Err(Error::DimensionMismatch("stack_rows".into()));
            }
            for (d, m) in r.coeffs.iter().enumerate() {
                for c in 0..cols {
                    coeffs[d].set(i, c, m.get(0, c));
                }
            }
        }
        PolyMat::new(rows.len(), cols, coeffs)
    }

    /// Product `self * other^T` (both must have the same column count).
    pub fn mul_transpose(&self, f: &Field, other: &PolyMat) -> Result<PolyMat> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("mul_transpose".into()));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(PolyMat::zero(self.rows, other.rows));
        }
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs = vec![Mat::zeros(self.rows, other.rows); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let p = a.mul(f, &b.transpose())?;
                coeffs[i + j] = coeffs[i + j].add(f, &p)?;
            }
        }
        PolyMat::new(self.rows, other.rows, coeffs)
    }
}

/// Serialized as `[row][col]` element indices.
impl serde::Serialize for Mat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_indices().serialize(s)
    }
}

/// Serialized as `[coefficient][row][col]` element indices.
impl serde::Serialize for PolyMat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<Vec<Vec<u64>>> = self.coeffs.iter().map(Mat::to_indices).collect();
        v.serialize(s)
    }
}

/// All row vectors `h(D)` with entry degrees at most `deg_bound` such that
/// `g(D) h(D)^T = 0`.
///
/// Unknowns are flattened as `(h_0, ..., h_d)`; the constraint for `D^t` is
/// `sum_{i+s=t} G_i h_s^T = 0`. The returned rows are the RREF basis of the
/// solution space in that flattened coordinate order.
pub fn poly_kernel_bounded(f: &Field, g: &PolyMat, deg_bound: usize) -> PolyMat {
    let n = g.cols;
    let d = deg_bound;
    let m = g.degree().unwrap_or(0);
    let k = g.rows;
    let unknowns = n * (d + 1);
    let mut a = Mat::zeros(k * (m + d + 1), unknowns);
    for (i, gi) in g.coeffs.iter().enumerate() {
        for s in 0..=d {
            let t = i + s;
            for r in 0..k {
                for c in 0..n {
                    a.set(t * k + r, s * n + c, gi.get(r, c));
                }
            }
        }
    }
    let ker = kernel(f, &a);
    let rows: Vec<PolyMat> = (0..ker.rows)
        .map(|r| flat_to_row(ker.row(r), n))
        .collect();
    PolyMat::stack_rows(&rows, n).expect("kernel rows share shape")
}

fn flat_to_row(v: &[Elt], n: usize) -> PolyMat {
    let coeffs = v
        .chunks(n)
        .map(|ch| Mat {
            rows: 1,
            cols: n,
            data: ch.to_vec(),
        })
        .collect();
    PolyMat::new(1, n, coeffs).expect("chunk shape")
}

fn row_to_flat(row: &PolyMat, n: usize, d: usize, shift: usize) -> Vec<Elt> {
    let mut v = vec![Elt::ZERO; n * (d + 1)];
    for (i, m) in row.coeffs.iter().enumerate() {
        for c in 0..n {
            v[(i + shift) * n + c] = m.get(0, c);
        }
    }
    v
}

/// A minimal polynomial basis of the right kernel of `g`, built degree by
/// degree: at each degree `d`, vectors from the degree-`d` solution space are
/// kept when independent of all `D`-shifts of rows already chosen.
pub fn kernel_minimal_basis(
    f: &Field,
    g: &PolyMat,
    deg_bound: usize,
    expected: usize,
) -> Result<PolyMat> {
    let n = g.cols;
    let mut chosen: Vec<PolyMat> = Vec::new();
    if expected == 0 {
        return Ok(PolyMat::zero(0, n));
    }
    for d in 0..=deg_bound {
        let w = poly_kernel_bounded(f, g, d);
        let mut span = Mat::zeros(0, n * (d + 1));
        for r in &chosen {
            let rd = r.degree().unwrap_or(0);
            for s in 0..=(d - rd) {
                let v = row_to_flat(r, n, d, s);
                span = span.vstack(&Mat::from_vec(1, v.len(), v)?)?;
            }
        }
        let mut current = rank(f, &span);
        for i in 0..w.rows {
            let cand = w.row(i);
            let v = row_to_flat(&cand, n, d, 0);
            let trial = span.vstack(&Mat::from_vec(1, v.len(), v)?)?;
            let rk = rank(f, &trial);
            if rk > current {
                span = trial;
                current = rk;
                chosen.push(cand);
                if chosen.len() == expected {
                    return PolyMat::stack_rows(&chosen, n);
                }
            }
        }
    }
    Err(Error::KernelRankDeficient {
        found: chosen.len(),
        expected,
        bound: deg_bound,
    })
}
