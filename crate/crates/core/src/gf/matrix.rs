use std::fmt::Write as _;

use super::field::{Elem, Field};
use crate::error::{Error, Result};
use crate::permgroup::GroupTarget;

/// A dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct FqMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl std::fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{:?} {}x{}", self.field, self.rows, self.cols)?;
        f.write_str(&self.to_hex_block())
    }
}

impl std::hash::Hash for FqMatrix {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

/// Result of row reduction: the reduced echelon form and its pivot columns.
pub struct Echelon {
    pub reduced: FqMatrix,
    pub pivots: Vec<usize>,
}

impl FqMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        FqMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(field: &Field, n: usize, c: Elem) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn diagonal(field: &Field, diag: &[Elem]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(field, n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&x| x as usize >= field.q()) {
            return Err(Error::InvalidArgument(format!("{bad} is not an element of {field:?}")));
        }
        Ok(FqMatrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Elem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::from_vec(field, rows.len(), cols, rows.concat())
    }

    /// Matrix whose rows are the given vectors.
    pub(crate) fn from_row_slices(field: &Field, cols: usize, rows: &[&[Elem]]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            data.extend_from_slice(r);
        }
        FqMatrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Small integer entries mapped into the prime field (test and fixture helper).
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| field.from_int(x))).collect();
        FqMatrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as u8))
    }

    fn check_field(&self, other: &FqMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::InvalidArgument(format!(
                "field mismatch: {:?} vs {:?}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &FqMatrix) -> Result<FqMatrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul(other))
    }

    /// Matrix product; panics on shape mismatch.
    pub fn mul(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let f = &self.field;
        let mut out = FqMatrix::zeros(f, self.rows, other.cols);
        let oc = other.cols;
        for i in 0..self.rows {
            let dst = &mut out.data[i * oc..(i + 1) * oc];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a != 0 {
                    f.axpy(dst, a, &other.data[k * oc..(k + 1) * oc]);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0; self.cols];
        for (k, &a) in v.iter().enumerate() {
            self.field.axpy(&mut out, a, self.row(k));
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        self.field.axpy(&mut out.data, 1, &other.data);
        out
    }

    pub fn sub(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        self.field.axpy(&mut out.data, self.field.neg(1), &other.data);
        out
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: Elem, other: &FqMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.field.axpy(&mut self.data, c, &other.data);
    }

    pub fn scale(&self, c: Elem) -> FqMatrix {
        let mut out = self.clone();
        self.field.scale_in_place(&mut out.data, c);
        out
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut out = FqMatrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    /// Entrywise map (e.g. a field automorphism).
    pub fn map(&self, f: impl Fn(Elem) -> Elem) -> FqMatrix {
        FqMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    /// Kronecker product, block `(i, j)` equal to `self[i][j] * other`.
    pub fn kron(&self, other: &FqMatrix) -> FqMatrix {
        let f = &self.field;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = FqMatrix::zeros(f, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                let mr = f.mul_row(a);
                for k in 0..other.rows {
                    let base = (i * other.rows + k) * c + j * other.cols;
                    for (l, &b) in other.row(k).iter().enumerate() {
                        out.data[base + l] = mr[b as usize];
                    }
                }
            }
        }
        out
    }

    /// Block diagonal matrix with the given blocks.
    pub fn block_diagonal(field: &Field, blocks: &[&FqMatrix]) -> FqMatrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = FqMatrix::zeros(field, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                out.data[(r0 + i) * m + c0..(r0 + i) * m + c0 + b.cols].copy_from_slice(b.row(i));
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> FqMatrix {
        let mut out = FqMatrix::zeros(&self.field, rows, cols);
        for i in 0..rows {
            out.row_mut(i)
                .copy_from_slice(&self.row(r0 + i)[c0..c0 + cols]);
        }
        out
    }

    /// Columns `cols` of `self` side by side with `other`.
    pub fn hconcat(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.rows, other.rows);
        let c = self.cols + other.cols;
        let mut out = FqMatrix::zeros(&self.field, self.rows, c);
        for i in 0..self.rows {
            out.data[i * c..i * c + self.cols].copy_from_slice(self.row(i));
            out.data[i * c + self.cols..(i + 1) * c].copy_from_slice(other.row(i));
        }
        out
    }

    pub fn vconcat(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FqMatrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Gauss-Jordan elimination to reduced row echelon form.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let pivots = m.reduce_in_place();
        Echelon { reduced: m, pivots }
    }

    pub(crate) fn reduce_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]).unwrap();
            f.scale_in_place(&mut self.data[r * cols..(r + 1) * cols], inv);
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (prow, after) = rest.split_at_mut(cols);
            let prow = &prow[..];
            for i in 0..rows {
                let row = if i < r {
                    &mut before[i * cols..(i + 1) * cols]
                } else if i > r {
                    &mut after[(i - r - 1) * cols..(i - r) * cols]
                } else {
                    continue;
                };
                let a = row[c];
                if a != 0 {
                    f.axpy(&mut row[c..], f.neg(a), &prow[c..]);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis (as rows) of `{x : A x = 0}`.
    pub fn nullspace(&self) -> FqMatrix {
        let Echelon { reduced, pivots } = self.echelon();
        let f = &self.field;
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut out = FqMatrix::zeros(f, free.len(), n);
        for (k, &fc) in free.iter().enumerate() {
            let row = out.row_mut(k);
            row[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                row[pc] = f.neg(reduced.get(i, fc));
            }
        }
        out
    }

    /// Basis (as rows) of `{x : x A = 0}`.
    pub fn left_nullspace(&self) -> FqMatrix {
        self.transpose().nullspace()
    }

    /// A particular solution `X` of `A X = B`.
    pub fn solve(&self, b: &FqMatrix) -> Result<FqMatrix> {
        self.check_field(b)?;
        if b.rows != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side has {} rows, matrix has {}",
                b.rows, self.rows
            )));
        }
        let aug = self.hconcat(b);
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = FqMatrix::zeros(&self.field, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            x.row_mut(pc)
                .copy_from_slice(&reduced.row(i)[self.cols..]);
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Option<FqMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hconcat(&FqMatrix::identity(&self.field, n));
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(reduced.submatrix(0, n, n, n))
    }

    pub fn try_inverse(&self) -> Result<FqMatrix> {
        self.inverse()
            .ok_or_else(|| Error::InvalidArgument("matrix is singular".into()))
    }

    pub fn det(&self) -> Elem {
        assert!(self.is_square());
        let f = self.field.clone();
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det: Elem = 1;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| m[i * n + c] != 0) else {
                return 0;
            };
            if p != c {
                for j in 0..n {
                    m.swap(p * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let pv = m[c * n + c];
            det = f.mul(det, pv);
            let inv = f.inv(pv).unwrap();
            for i in c + 1..n {
                let a = m[i * n + c];
                if a != 0 {
                    let factor = f.neg(f.mul(a, inv));
                    let (top, bottom) = m.split_at_mut(i * n);
                    f.axpy(&mut bottom[c..n], factor, &top[c * n + c..c * n + n]);
                }
            }
        }
        det
    }

    pub fn pow(&self, mut k: u64) -> FqMatrix {
        let mut base = self.clone();
        let mut acc = FqMatrix::identity(&self.field, self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Signed power; negative exponents need an invertible matrix.
    pub fn pow_signed(&self, k: i64) -> FqMatrix {
        if k >= 0 {
            self.pow(k as u64)
        } else {
            self.inverse().expect("singular matrix").pow(k.unsigned_abs())
        }
    }

    /// Multiplicative order of an invertible matrix, found by repeated
    /// multiplication up to `cap`.
    pub fn order(&self, cap: u64) -> Option<u64> {
        let mut x = self.clone();
        for k in 1..=cap {
            if x.is_identity() {
                return Some(k);
            }
            x = x.mul(self);
        }
        None
    }

    pub fn commutes_with(&self, other: &FqMatrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &FqMatrix, g_inv: &FqMatrix) -> FqMatrix {
        g_inv.mul(self).mul(g)
    }

    /// Rows as lowercase unpadded hex field encodings, one matrix row per line.
    pub fn to_hex_block(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| format!("{x:x}")).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    /// Parses `rows` lines of hex entries.
    pub fn parse_hex_rows<'a, I>(field: &Field, lines: &mut I, rows: usize, cols: usize) -> Result<FqMatrix>
    where
        I: Iterator<Item = (usize, &'a str)>,
    {
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let (n, line) = lines.next().ok_or(Error::Parse {
                line: 0,
                msg: "unexpected end of matrix block".into(),
            })?;
            let before = data.len();
            for t in line.split_whitespace() {
                let v = u8::from_str_radix(t, 16)
                    .ok()
                    .filter(|&v| (v as usize) < field.q())
                    .ok_or(Error::Parse {
                        line: n + 1,
                        msg: format!("bad field element `{t}`"),
                    })?;
                data.push(v);
            }
            if data.len() - before != cols {
                return Err(Error::Parse {
                    line: n + 1,
                    msg: format!("expected {cols} entries, found {}", data.len() - before),
                });
            }
        }
        FqMatrix::from_vec(field, rows, cols, data)
    }
}

impl GroupTarget for FqMatrix {
    fn op(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn inv(&self) -> Self {
        self.inverse().expect("group element matrix must be invertible")
    }
}

/// Incrementally maintained echelon basis of a subspace of row vectors.
#[derive(Clone)]
pub struct SpanBasis {
    field: Field,
    dim: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl SpanBasis {
    pub fn new(field: &Field, dim: usize) -> Self {
        SpanBasis {
            field: field.clone(),
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduces `v` against the basis in place; returns whether anything is left.
    pub fn reduce(&self, v: &mut [Elem]) -> bool {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let a = v[p];
            if a != 0 {
                f.axpy(v, f.neg(a), row);
            }
        }
        v.iter().any(|&x| x != 0)
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        !self.reduce(&mut w)
    }

    /// Adds `v` if independent; returns true when the span grew.
    pub fn insert(&mut self, v: &[Elem]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        if !self.reduce(&mut w) {
            return false;
        }
        let p = w.iter().position(|&x| x != 0).unwrap();
        let inv = self.field.inv(w[p]).unwrap();
        self.field.scale_in_place(&mut w, inv);
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    pub fn to_matrix(&self) -> FqMatrix {
        let refs: Vec<&[Elem]> = self.rows.iter().map(|r| r.as_slice()).collect();
        FqMatrix::from_row_slices(&self.field, self.dim, &refs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_matrix(f: &Field, r: usize, c: usize, rng: &mut ChaCha8Rng) -> FqMatrix {
        let data = (0..r * c).map(|_| rng.gen_range(0..f.q()) as u8).collect();
        FqMatrix::from_vec(f, r, c, data).unwrap()
    }

    #[test]
    fn identity_rank_and_nullspace() {
        let f = Field::gf2(8).unwrap();
        let i = FqMatrix::identity(&f, 7);
        assert_eq!(i.rank(), 7);
        assert_eq!(i.nullspace().rows(), 0);
    }

    #[test]
    fn zero_matrix_rank_and_nullspace() {
        let f = Field::new(5, 1).unwrap();
        let z = FqMatrix::zeros(&f, 3, 6);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.nullspace().rows(), 6);
    }

    #[test]
    fn rank_nullity_on_random_50x50() {
        let f = Field::gf2(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..5 {
            // make some of them singular by repeating rows
            let mut a = random_matrix(&f, 50, 50, &mut rng);
            for k in 0..trial * 5 {
                let src = a.row(k).to_vec();
                a.row_mut(49 - k).copy_from_slice(&src);
            }
            let r = a.rank();
            let ns = a.nullspace();
            assert_eq!(r + ns.rows(), 50);
            assert!(a.mul(&ns.transpose()).is_zero());
            assert_eq!(ns.rank(), ns.rows());
        }
    }

    #[test]
    fn inverse_and_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, e) in [(2, 1), (2, 8), (3, 2), (5, 2), (13, 1)] {
            let f = Field::new(p, e).unwrap();
            let a = random_matrix(&f, 12, 12, &mut rng);
            if let Some(ai) = a.inverse() {
                assert!(a.mul(&ai).is_identity());
                assert!(ai.mul(&a).is_identity());
                assert_ne!(a.det(), 0);
            } else {
                assert_eq!(a.det(), 0);
            }
            let x = random_matrix(&f, 12, 3, &mut rng);
            let b = a.mul(&x);
            let sol = a.solve(&b).unwrap();
            assert_eq!(a.mul(&sol), b);
        }
    }

    #[test]
    fn inconsistent_solve_is_distinct_from_shape_error() {
        let f = Field::gf2(1).unwrap();
        let a = FqMatrix::from_ints(&f, &[&[1, 1], &[1, 1]]);
        let b = FqMatrix::from_ints(&f, &[&[1], &[0]]);
        assert!(matches!(a.solve(&b), Err(Error::Inconsistent)));
        let bad = FqMatrix::from_ints(&f, &[&[1]]);
        assert!(matches!(a.solve(&bad), Err(Error::Dimension(_))));
    }

    #[test]
    fn det_is_multiplicative() {
        let f = Field::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let a = random_matrix(&f, 5, 5, &mut rng);
            let b = random_matrix(&f, 5, 5, &mut rng);
            assert_eq!(a.mul(&b).det(), f.mul(a.det(), b.det()));
        }
    }

    #[test]
    fn kron_is_multiplicative() {
        let f = Field::gf2(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (a, b) = (random_matrix(&f, 3, 3, &mut rng), random_matrix(&f, 2, 2, &mut rng));
        let (c, d) = (random_matrix(&f, 3, 3, &mut rng), random_matrix(&f, 2, 2, &mut rng));
        assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
    }

    #[test]
    fn hex_block_round_trip() {
        let f = Field::gf2(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = random_matrix(&f, 4, 6, &mut rng);
        let text = a.to_hex_block();
        let mut lines = text.lines().enumerate();
        let b = FqMatrix::parse_hex_rows(&f, &mut lines, 4, 6).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn span_basis_tracks_rank() {
        let f = Field::new(7, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_matrix(&f, 8, 5, &mut rng);
        let mut s = SpanBasis::new(&f, 5);
        for i in 0..8 {
            s.insert(a.row(i));
        }
        assert_eq!(s.len(), a.rank());
        assert!(s.contains(a.row(3)));
    }
}
