//! Dense matrices and sparse vectors over [`Rational`].
//!
//! Operators on an algebra (left multiplications, derivations) are small and
//! stored densely. Linear systems are assembled as sparse rows because a
//! derivation system for a 35-dimensional Lie superalgebra has tens of
//! thousands of equations with only a handful of nonzeros each. The rule is
//! simple: anything indexed by an algebra basis is dense, anything indexed by
//! equations is sparse.

use std::fmt;
use std::ops::{Index, IndexMut};

use super::Rational;
use crate::error::{Error, Result};

/// Dense coordinate vector.
pub type Vector = Vec<Rational>;

pub fn zero_vec(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}

/// `y += c * x`
pub fn axpy(y: &mut [Rational], c: &Rational, x: &[Rational]) {
    debug_assert_eq!(y.len(), x.len());
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += &(c * xi);
        }
    }
}

pub fn scale_vec(c: &Rational, x: &[Rational]) -> Vector {
    x.iter().map(|xi| c * xi).collect()
}

pub fn add_vec(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Sorted, zero-free list of `(index, value)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Builds from unsorted pairs, summing duplicates and dropping zeros.
    pub fn from_pairs(mut pairs: Vec<(usize, Rational)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Rational)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc += v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(v: &[Rational]) -> Self {
        SparseVec { entries: v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect() }
    }

    pub fn to_dense(&self, n: usize) -> Vector {
        let mut v = zero_vec(n);
        for (i, x) in &self.entries {
            v[*i] = x.clone();
        }
        v
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, Rational::one())] }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Rational)> {
        self.entries.iter()
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn leading(&self) -> Option<&(usize, Rational)> {
        self.entries.first()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scaled(&self, c: &Rational) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    /// `self + c * other`, merged in one pass.
    pub fn add_scaled(&self, c: &Rational, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x + &(c * y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    /// Re-indexes every entry through `f`, summing collisions.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().map(|(i, x)| (f(*i), x.clone())).collect())
    }
}

impl FromIterator<(usize, Rational)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, Rational)>>(iter: T) -> Self {
        SparseVec::from_pairs(iter.into_iter().collect())
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience for tests and catalogs: integer entries.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect())
            .expect("rectangular literal")
    }

    /// Row-major flattening; this is the coordinate system used for operator spaces.
    pub fn from_flat(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Matrix whose column `j` is `cols[j]`.
    pub fn from_columns(nrows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Result<&Rational> {
        if r >= self.rows || c >= self.cols {
            return Err(Error::Dimension(format!("entry ({r}, {c}) outside {}x{} matrix", self.rows, self.cols)));
        }
        Ok(&self.data[r * self.cols + c])
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) -> Result<()> {
        if r >= self.rows || c >= self.cols {
            return Err(Error::Dimension(format!("entry ({r}, {c}) outside {}x{} matrix", self.rows, self.cols)));
        }
        self.data[r * self.cols + c] = v;
        Ok(())
    }

    pub fn flat(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_flat(self) -> Vec<Rational> {
        self.data
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.data[r * self.cols + c].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} against {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[r * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other.data[k * other.cols + c];
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!("{}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data: add_vec(&self.data, &other.data) })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data: sub_vec(&self.data, &other.data) })
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: scale_vec(c, &self.data) }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| &self.data[i * self.cols + i]).sum()
    }

    pub fn to_sparse_rows(&self) -> Vec<SparseVec> {
        (0..self.rows).map(|r| SparseVec::from_dense(self.row(r))).collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        assert!(r < self.rows && c < self.cols, "matrix index out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        assert!(r < self.rows && c < self.cols, "matrix index out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_are_errors() {
        let m = Matrix::identity(2);
        assert!(m.get(2, 0).is_err());
        assert!(m.get(0, 1).is_ok());
        assert!(m.mul_vec(&zero_vec(3)).is_err());
    }

    #[test]
    fn sparse_and_dense_agree() {
        let m = Matrix::from_ints(&[&[0, 2, 0], &[1, 0, -3]]);
        for (r, sv) in m.to_sparse_rows().iter().enumerate() {
            assert_eq!(sv.to_dense(3), m.row(r));
        }
        let a = SparseVec::from_pairs(vec![(2, Rational::one()), (0, Rational::one()), (2, Rational::one())]);
        assert_eq!(a.to_dense(3), vec![Rational::one(), Rational::zero(), Rational::from_int(2)]);
        let b = a.add_scaled(&Rational::from_int(-2), &SparseVec::unit(2));
        assert_eq!(b.nnz(), 1);
    }

    #[test]
    fn matmul_identity() {
        let m = Matrix::from_ints(&[&[1, 2], &[3, 4]]);
        assert_eq!(m.matmul(&Matrix::identity(2)).unwrap(), m);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.trace(), Rational::from_int(5));
    }
}
