//! Structure-constant tables for ℤ₂-graded algebras.
//!
//! An algebra is a fixed ordered basis, a parity per basis vector, an optional
//! ℤ-degree per basis vector, and the products of basis pairs as sparse
//! vectors. Vectors are plain coordinate tuples in that basis.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{CheckResult, Error, Result, Witness};
use crate::exact::{axpy, is_zero_vec, zero_vec, Matrix, Rational, SparseVec, Subspace, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u8) -> Parity {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Whether swapping two elements of these parities costs a sign.
    pub fn koszul(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() ^ rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// `(-1)^k` where `negate` is the parity of `k`.
pub fn sign(negate: bool) -> Rational {
    if negate {
        -Rational::one()
    } else {
        Rational::one()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Jordan,
    Lie,
    Plain,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Jordan => "jordan",
            Kind::Lie => "lie",
            Kind::Plain => "plain",
        })
    }
}

/// A finite-dimensional superalgebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperAlgebra {
    name: String,
    labels: Vec<String>,
    parity: Vec<Parity>,
    zdeg: Option<Vec<i32>>,
    /// `table[i][j]` is the product of basis vectors `i` and `j`.
    table: Vec<Vec<SparseVec>>,
    kind: Kind,
    meta: BTreeMap<String, String>,
}

impl SuperAlgebra {
    /// Builds an algebra from `(i, j, k, coeff)` entries meaning
    /// `b_i b_j` has coefficient `coeff` on `b_k`.
    pub fn from_entries(
        name: impl Into<String>,
        parity: Vec<Parity>,
        zdeg: Option<Vec<i32>>,
        entries: &[(usize, usize, usize, Rational)],
        kind: Kind,
    ) -> Result<Self> {
        let n = parity.len();
        let mut seen = HashSet::new();
        let mut pairs: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
        for (i, j, k, c) in entries {
            for idx in [*i, *j, *k] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx, dim: n });
                }
            }
            if !seen.insert((*i, *j, *k)) {
                return Err(Error::DuplicateEntry { i: *i, j: *j, k: *k });
            }
            pairs.entry((*i, *j)).or_default().push((*k, c.clone()));
        }
        let mut table = vec![vec![SparseVec::new(); n]; n];
        for ((i, j), v) in pairs {
            table[i][j] = SparseVec::from_pairs(v);
        }
        Self::from_table(name, parity, zdeg, table, kind)
    }

    /// Builds from a full table, checking homogeneity and the axioms of `kind`.
    pub fn from_table(
        name: impl Into<String>,
        parity: Vec<Parity>,
        zdeg: Option<Vec<i32>>,
        table: Vec<Vec<SparseVec>>,
        kind: Kind,
    ) -> Result<Self> {
        let a = Self::from_table_unchecked(name, parity, zdeg, table, Kind::Plain)?;
        a.with_kind(kind)
    }

    /// Homogeneity is still enforced; only the `kind` axioms are skipped.
    pub fn from_table_unchecked(
        name: impl Into<String>,
        parity: Vec<Parity>,
        zdeg: Option<Vec<i32>>,
        table: Vec<Vec<SparseVec>>,
        kind: Kind,
    ) -> Result<Self> {
        let n = parity.len();
        if let Some(z) = &zdeg {
            if z.len() != n {
                return Err(Error::Dimension(format!("{} degrees for {n} basis vectors", z.len())));
            }
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("product table is not {n}x{n}")));
        }
        let a = SuperAlgebra {
            name: name.into(),
            labels: (0..n).map(|i| format!("b{i}")).collect(),
            parity,
            zdeg,
            table,
            kind,
            meta: BTreeMap::new(),
        };
        a.check_homogeneity()?;
        Ok(a)
    }

    fn check_homogeneity(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for (k, _) in self.table[i][j].iter() {
                    if *k >= n {
                        return Err(Error::IndexOutOfRange { index: *k, dim: n });
                    }
                    if self.parity[*k] != self.parity[i] + self.parity[j] {
                        return Err(Error::Inhomogeneous {
                            i,
                            j,
                            k: *k,
                            detail: format!(
                                "{} * {} has a component of parity {}",
                                self.parity[i], self.parity[j], self.parity[*k]
                            ),
                        });
                    }
                    if let Some(z) = &self.zdeg {
                        if z[*k] != z[i] + z[j] {
                            return Err(Error::Inhomogeneous {
                                i,
                                j,
                                k: *k,
                                detail: format!("degree {} + {} != {}", z[i], z[j], z[*k]),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Re-tags the algebra after verifying the axioms of `kind`.
    pub fn with_kind(mut self, kind: Kind) -> Result<Self> {
        match kind {
            Kind::Jordan => check_supercommutative(&self).map_err(Error::CheckFailed)?,
            Kind::Lie => {
                check_superanticommutative(&self).map_err(Error::CheckFailed)?;
                check_super_jacobi(&self).map_err(Error::CheckFailed)?;
            }
            Kind::Plain => {}
        }
        self.kind = kind;
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::Dimension(format!("{} labels for dimension {}", labels.len(), self.dim())));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn with_zdeg(mut self, zdeg: Option<Vec<i32>>) -> Result<Self> {
        self.zdeg = zdeg;
        if let Some(z) = &self.zdeg {
            if z.len() != self.dim() {
                return Err(Error::Dimension(format!("{} degrees for dimension {}", z.len(), self.dim())));
            }
        }
        self.check_homogeneity()?;
        Ok(self)
    }

    pub fn with_meta(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.meta.insert(key.into(), value.into());
        self
    }

    pub fn meta(&self) -> &BTreeMap<String, String> {
        &self.meta
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parity[i]
    }

    pub fn zdegrees(&self) -> Option<&[i32]> {
        self.zdeg.as_deref()
    }

    /// Degree of basis vector `i`, zero when ungraded.
    pub fn zdeg(&self, i: usize) -> i32 {
        self.zdeg.as_ref().map_or(0, |z| z[i])
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    /// Nonzero entries `(i, j, k, coeff)` in lexicographic order.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for (i, row) in self.table.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                for (k, c) in v.iter() {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    /// Human-readable linear combination of basis labels, e.g. `e1 - 1/2 e3`.
    pub fn format_vector(&self, v: &[Rational]) -> String {
        let mut out = String::new();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag} "));
            }
            out.push_str(&self.labels[i]);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn basis_vec(&self, i: usize) -> Vector {
        crate::exact::unit_vec(self.dim(), i)
    }

    fn check_vec(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "vector of length {} in algebra of dimension {}",
                v.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    pub fn product(&self, x: &[Rational], y: &[Rational]) -> Result<Vector> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        Ok(self.mul(x, y))
    }

    /// Product without length checks, for internal loops.
    pub(crate) fn mul(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let mut out = zero_vec(self.dim());
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, t) in self.table[i][j].iter() {
                    out[*k] += &(&c * t);
                }
            }
        }
        out
    }

    /// `b_i · y`.
    pub(crate) fn mul_basis_left(&self, i: usize, y: &[Rational]) -> Vector {
        let mut out = zero_vec(self.dim());
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            for (k, t) in self.table[i][j].iter() {
                out[*k] += &(yj * t);
            }
        }
        out
    }

    /// `x · b_j`.
    pub(crate) fn mul_basis_right(&self, x: &[Rational], j: usize) -> Vector {
        let mut out = zero_vec(self.dim());
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (k, t) in self.table[i][j].iter() {
                out[*k] += &(xi * t);
            }
        }
        out
    }

    /// Matrix of `y ↦ x·y`; column `j` holds `x·b_j`.
    pub fn left_matrix(&self, x: &[Rational]) -> Result<Matrix> {
        self.check_vec(x)?;
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.mul_basis_right(x, j)).collect();
        Ok(Matrix::from_columns(self.dim(), &cols))
    }

    pub fn left_matrix_basis(&self, i: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for (k, t) in self.table[i][j].iter() {
                m[(*k, j)] = t.clone();
            }
        }
        m
    }

    /// Parity of `v`: `None` when it mixes parities. The zero vector counts as even.
    pub fn parity_of(&self, v: &[Rational]) -> Option<Parity> {
        let mut found = None;
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            match found {
                None => found = Some(self.parity[i]),
                Some(p) if p != self.parity[i] => return None,
                _ => {}
            }
        }
        Some(found.unwrap_or(Parity::Even))
    }

    /// Degree of `v`: `None` when it mixes degrees. The zero vector has degree 0.
    pub fn zdeg_of(&self, v: &[Rational]) -> Option<i32> {
        let mut found = None;
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let d = self.zdeg(i);
            match found {
                None => found = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        Some(found.unwrap_or(0))
    }

    /// Even and odd components of `v`.
    pub fn split_parity(&self, v: &[Rational]) -> [Vector; 2] {
        let mut parts = [zero_vec(self.dim()), zero_vec(self.dim())];
        for (i, x) in v.iter().enumerate() {
            parts[self.parity[i].bit() as usize][i] = x.clone();
        }
        parts
    }

    pub fn indices_of(&self, p: Parity) -> Vec<usize> {
        (0..self.dim()).filter(|i| self.parity[*i] == p).collect()
    }

    /// Whether `s` is spanned by vectors homogeneous in parity and degree.
    pub fn is_graded_subspace(&self, s: &Subspace) -> bool {
        // A graded subspace has a homogeneous RREF basis: projecting an RREF
        // row to the parity (degree) of its pivot keeps it in the subspace
        // with the same pivot pattern, and RREF rows are unique.
        s.basis().iter().all(|b| self.parity_of(b).is_some() && self.zdeg_of(b).is_some())
    }

    /// Whether `s` is a two-sided ideal, with a witness `(basis row, basis index)` if not.
    pub fn check_ideal(&self, s: &Subspace) -> CheckResult {
        if !self.is_graded_subspace(s) {
            return Err(Witness::new(vec![], "subspace is not graded"));
        }
        for (r, b) in s.basis().iter().enumerate() {
            for j in 0..self.dim() {
                if !s.contains(&self.mul_basis_right(b, j)).unwrap_or(false) {
                    return Err(Witness::new([r, j], format!("row {r} times {} leaves the subspace", self.labels[j])));
                }
                if !s.contains(&self.mul_basis_left(j, b)).unwrap_or(false) {
                    return Err(Witness::new([r, j], format!("{} times row {r} leaves the subspace", self.labels[j])));
                }
            }
        }
        Ok(())
    }

    pub fn check_closed(&self, s: &Subspace) -> CheckResult {
        if !self.is_graded_subspace(s) {
            return Err(Witness::new(vec![], "subspace is not graded"));
        }
        for (r, x) in s.basis().iter().enumerate() {
            for (t, y) in s.basis().iter().enumerate() {
                if !s.contains(&self.mul(x, y)).unwrap_or(false) {
                    return Err(Witness::new([r, t], format!("product of rows {r} and {t} leaves the subspace")));
                }
            }
        }
        Ok(())
    }
}

/// `x y = (-1)^{|x||y|} y x` on basis pairs.
pub fn check_supercommutative(a: &SuperAlgebra) -> CheckResult {
    check_swap_symmetry(a, false)
}

/// `x y = -(-1)^{|x||y|} y x` on basis pairs.
pub fn check_superanticommutative(a: &SuperAlgebra) -> CheckResult {
    check_swap_symmetry(a, true)
}

fn check_swap_symmetry(a: &SuperAlgebra, anti: bool) -> CheckResult {
    for i in 0..a.dim() {
        for j in i..a.dim() {
            let s = sign(a.parity(i).koszul(a.parity(j)) ^ anti);
            let lhs = &a.table[i][j];
            let rhs = a.table[j][i].scaled(&s);
            if *lhs != rhs {
                return Err(Witness::new(
                    [i, j],
                    format!("{}*{} = {:?} but the swapped product gives {:?}", a.label(i), a.label(j), lhs, rhs),
                ));
            }
        }
    }
    Ok(())
}

/// `(-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]] = 0`
/// on every basis triple, scanned lexicographically.
pub fn check_super_jacobi(a: &SuperAlgebra) -> CheckResult {
    let n = a.dim();
    let p = |i: usize| a.parity(i);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut acc = zero_vec(n);
                let terms = [(x, y, z, p(x).koszul(p(z))), (y, z, x, p(y).koszul(p(x))), (z, x, y, p(z).koszul(p(y)))];
                for (u, v, w, neg) in terms {
                    let inner = a.table[v][w].to_dense(n);
                    let outer = a.mul_basis_left(u, &inner);
                    axpy(&mut acc, &sign(neg), &outer);
                }
                if !is_zero_vec(&acc) {
                    return Err(Witness::new(
                        [x, y, z],
                        format!("Jacobi sum on ({}, {}, {}) is {:?}", a.label(x), a.label(y), a.label(z), acc),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Dimension per `(degree, parity)`; degree 0 throughout when ungraded.
pub fn graded_dims(a: &SuperAlgebra) -> BTreeMap<(i32, Parity), usize> {
    let mut out = BTreeMap::new();
    for i in 0..a.dim() {
        *out.entry((a.zdeg(i), a.parity(i))).or_insert(0) += 1;
    }
    out
}

/// `(even, odd)` totals.
pub fn parity_dims(a: &SuperAlgebra) -> (usize, usize) {
    let odd = a.parities().iter().filter(|p| p.is_odd()).count();
    (a.dim() - odd, odd)
}

/// `{x : x·y = 0 for all y}`.
pub fn center(a: &SuperAlgebra) -> Subspace {
    let n = a.dim();
    let mut rows: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in a.table[i][j].iter() {
                rows.entry((j, *k)).or_default().push((i, c.clone()));
            }
        }
    }
    let rows: Vec<SparseVec> = rows.into_values().map(SparseVec::from_pairs).collect();
    let ker = crate::exact::sparse_kernel(n, rows.iter());
    Subspace::span(n, ker).expect("kernel vectors have length n")
}

/// Span of all products.
pub fn derived(a: &SuperAlgebra) -> Subspace {
    let n = a.dim();
    let mut ech = crate::exact::RowEchelon::new(n);
    'outer: for row in &a.table {
        for v in row {
            if ech.is_full() {
                break 'outer;
            }
            ech.insert_sparse(v);
        }
    }
    let rows = ech.into_rref().into_iter().map(|(_, r)| r.to_dense(n));
    Subspace::span(n, rows).expect("rows have length n")
}

/// `a / ideal`, using the non-pivot basis vectors as representatives.
pub fn quotient_algebra(a: &SuperAlgebra, ideal: &Subspace) -> Result<SuperAlgebra> {
    if ideal.ambient() != a.dim() {
        return Err(Error::Dimension(format!(
            "ideal in ambient dimension {} for algebra of dimension {}",
            ideal.ambient(),
            a.dim()
        )));
    }
    a.check_ideal(ideal).map_err(Error::NotAnIdeal)?;
    let pivots: HashSet<usize> = ideal.pivots().iter().copied().collect();
    let keep: Vec<usize> = (0..a.dim()).filter(|i| !pivots.contains(i)).collect();
    let mut new_index = vec![usize::MAX; a.dim()];
    for (t, i) in keep.iter().enumerate() {
        new_index[*i] = t;
    }
    let m = keep.len();
    let mut table = vec![vec![SparseVec::new(); m]; m];
    for (s, i) in keep.iter().enumerate() {
        for (t, j) in keep.iter().enumerate() {
            let reduced = ideal.reduce(&a.table[*i][*j].to_dense(a.dim()));
            table[s][t] = keep
                .iter()
                .enumerate()
                .filter(|(_, k)| !reduced[**k].is_zero())
                .map(|(u, k)| (u, reduced[*k].clone()))
                .collect();
        }
    }
    let zdeg = a.zdeg.as_ref().map(|z| keep.iter().map(|i| z[*i]).collect());
    let parity = keep.iter().map(|i| a.parity[*i]).collect();
    let q = SuperAlgebra::from_table_unchecked(format!("{}/I", a.name), parity, zdeg, table, a.kind)?;
    let labels = keep.iter().map(|i| a.labels[*i].clone()).collect();
    q.with_labels(labels)
}

/// Restriction of the product to a closed graded subspace, in its echelon basis.
pub fn subalgebra(a: &SuperAlgebra, s: &Subspace) -> Result<SuperAlgebra> {
    if s.ambient() != a.dim() {
        return Err(Error::Dimension(format!(
            "subspace in ambient dimension {} for algebra of dimension {}",
            s.ambient(),
            a.dim()
        )));
    }
    a.check_closed(s).map_err(Error::NotClosed)?;
    let basis = s.basis();
    let m = basis.len();
    let mut table = vec![vec![SparseVec::new(); m]; m];
    for (r, x) in basis.iter().enumerate() {
        for (t, y) in basis.iter().enumerate() {
            let prod = a.mul(x, y);
            let coords = s.coordinates(&prod)?.expect("closure was verified");
            table[r][t] = SparseVec::from_dense(&coords);
        }
    }
    let parity = basis.iter().map(|b| a.parity_of(b).expect("graded")).collect();
    let zdeg = a.zdeg.as_ref().map(|_| basis.iter().map(|b| a.zdeg_of(b).expect("graded")).collect());
    let sub = SuperAlgebra::from_table_unchecked(format!("{}|sub", a.name), parity, zdeg, table, a.kind)?;
    let labels = s.pivots().iter().map(|p| a.labels[*p].clone()).collect();
    sub.with_labels(labels)
}

/// Supercommutator `AB - (-1)^{|A||B|} BA` of homogeneous matrices.
pub fn supercommutator(a: &Matrix, pa: Parity, b: &Matrix, pb: Parity) -> Matrix {
    let ab = a.matmul(b).expect("square matrices of equal size");
    let ba = b.matmul(a).expect("square matrices of equal size");
    ab.sub(&ba.scale(&sign(pa.koszul(pb)))).expect("equal shapes")
}

/// A parity-homogeneous (and optionally degree-homogeneous) endomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedOperator {
    matrix: Matrix,
    parity: Parity,
    zshift: Option<i32>,
}

impl GradedOperator {
    pub fn new(a: &SuperAlgebra, matrix: Matrix, parity: Parity, zshift: Option<i32>) -> Result<Self> {
        if matrix.rows() != a.dim() || matrix.cols() != a.dim() {
            return Err(Error::Dimension(format!(
                "{}x{} operator on a {}-dimensional space",
                matrix.rows(),
                matrix.cols(),
                a.dim()
            )));
        }
        for k in 0..a.dim() {
            for i in 0..a.dim() {
                if matrix[(k, i)].is_zero() {
                    continue;
                }
                if a.parity(k) != a.parity(i) + parity {
                    return Err(Error::NotHomogeneous(format!("operator entry ({k}, {i}) breaks parity {parity}")));
                }
                if let Some(s) = zshift {
                    if a.zdeg(k) != a.zdeg(i) + s {
                        return Err(Error::NotHomogeneous(format!(
                            "operator entry ({k}, {i}) breaks degree shift {s}"
                        )));
                    }
                }
            }
        }
        Ok(GradedOperator { matrix, parity, zshift })
    }

    /// Parity of a matrix acting on `a`, `None` if it mixes parities.
    pub fn parity_of(a: &SuperAlgebra, m: &Matrix) -> Option<Parity> {
        let mut found = None;
        for k in 0..m.rows() {
            for i in 0..m.cols() {
                if m[(k, i)].is_zero() {
                    continue;
                }
                let p = a.parity(k) + a.parity(i);
                match found {
                    None => found = Some(p),
                    Some(q) if q != p => return None,
                    _ => {}
                }
            }
        }
        Some(found.unwrap_or(Parity::Even))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn zshift(&self) -> Option<i32> {
        self.zshift
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vector> {
        self.matrix.mul_vec(v)
    }

    pub fn bracket(&self, other: &GradedOperator) -> GradedOperator {
        GradedOperator {
            matrix: supercommutator(&self.matrix, self.parity, &other.matrix, other.parity),
            parity: self.parity + other.parity,
            zshift: self.zshift.zip(other.zshift).map(|(a, b)| a + b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Parity::{Even, Odd};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    pub(crate) fn sl2() -> SuperAlgebra {
        // basis e, f, h
        let one = Rational::one;
        let e = vec![
            (0, 1, 2, one()),
            (1, 0, 2, -one()),
            (2, 0, 0, q(2, 1)),
            (0, 2, 0, q(-2, 1)),
            (2, 1, 1, q(-2, 1)),
            (1, 2, 1, q(2, 1)),
        ];
        SuperAlgebra::from_entries("sl2", vec![Even; 3], None, &e, Kind::Lie).unwrap()
    }

    #[test]
    fn homogeneity_is_enforced() {
        let err = SuperAlgebra::from_entries("bad", vec![Even, Odd], None, &[(0, 0, 1, Rational::one())], Kind::Plain);
        assert!(matches!(err, Err(Error::Inhomogeneous { .. })));
        let dup = SuperAlgebra::from_entries(
            "dup",
            vec![Even],
            None,
            &[(0, 0, 0, Rational::one()), (0, 0, 0, Rational::one())],
            Kind::Plain,
        );
        assert!(matches!(dup, Err(Error::DuplicateEntry { .. })));
        let abelian = SuperAlgebra::from_entries("ab", vec![Even, Odd], None, &[], Kind::Lie).unwrap();
        assert!(abelian.entries().is_empty());
        assert!(check_super_jacobi(&abelian).is_ok());
    }

    #[test]
    fn sl2_center_and_derived() {
        let g = sl2();
        assert_eq!(center(&g).dim(), 0);
        assert_eq!(derived(&g).dim(), 3);
        assert_eq!(graded_dims(&g).get(&(0, Even)), Some(&3));
    }

    #[test]
    fn broken_sl2_fails_jacobi() {
        let mut e = sl2().entries();
        for entry in e.iter_mut() {
            if (entry.0, entry.1) == (2, 0) {
                entry.3 = q(3, 1);
            }
            if (entry.0, entry.1) == (0, 2) {
                entry.3 = q(-3, 1);
            }
        }
        let bad = SuperAlgebra::from_entries("bad", vec![Even; 3], None, &e, Kind::Plain).unwrap();
        assert!(check_superanticommutative(&bad).is_ok());
        let w = check_super_jacobi(&bad).unwrap_err();
        // [e,[f,h]] + [f,[h,e]] + [h,[e,f]] = 2h - 3h
        assert_eq!(w.indices, vec![0, 1, 2]);
    }

    #[test]
    fn quotient_by_zero_is_identity() {
        let g = sl2();
        let q0 = quotient_algebra(&g, &Subspace::zero(3)).unwrap();
        assert_eq!(q0.entries(), g.entries());
        let line = Subspace::span(3, [g.basis_vec(0)]).unwrap();
        assert!(matches!(quotient_algebra(&g, &line), Err(Error::NotAnIdeal(_))));
    }

    #[test]
    fn subalgebra_of_borel() {
        let g = sl2();
        let borel = Subspace::span(3, [g.basis_vec(0), g.basis_vec(2)]).unwrap();
        let b = subalgebra(&g, &borel).unwrap();
        assert_eq!(b.dim(), 2);
        assert_eq!(derived(&b).dim(), 1);
        let bad = Subspace::span(3, [g.basis_vec(0), g.basis_vec(1)]).unwrap();
        assert!(matches!(subalgebra(&g, &bad), Err(Error::NotClosed(_))));
    }

    #[test]
    fn parity_arithmetic() {
        assert_eq!(Odd + Odd, Even);
        assert_eq!(Even + Odd, Odd);
        assert!(Odd.koszul(Odd));
        assert!(!Odd.koszul(Even));
    }
}

#[cfg(test)]
mod props {
    use std::sync::OnceLock;

    use proptest::prelude::*;

    use super::*;
    use crate::catalog::{jordan_catalog, lie_catalog};
    use crate::exact::unit_vec;

    fn algebras() -> &'static [SuperAlgebra] {
        static ALGS: OnceLock<Vec<SuperAlgebra>> = OnceLock::new();
        ALGS.get_or_init(|| {
            let mut v: Vec<SuperAlgebra> = ["gl:2,1", "sl:2,1", "pe:2", "w:2", "q:2"]
                .iter()
                .map(|n| lie_catalog(&n.parse().unwrap()).unwrap())
                .collect();
            let k = jordan_catalog(&"kacK".parse().unwrap()).unwrap();
            v.push(crate::tkk::koecher_alg(&k).unwrap().lie().clone());
            let gl11 = jordan_catalog(&"gl+:1,1".parse().unwrap()).unwrap();
            v.push(crate::tkk::koecher_tilde_alg(&gl11).unwrap().lie().clone());
            v
        })
    }

    /// Smallest ideal containing the chosen basis vectors.
    fn ideal_of(g: &SuperAlgebra, seeds: &[usize]) -> Subspace {
        let n = g.dim();
        let mut s = Subspace::span(n, seeds.iter().map(|i| unit_vec(n, *i))).unwrap();
        loop {
            let more: Vec<Vector> =
                s.basis().iter().flat_map(|b| (0..n).map(move |i| g.mul(&g.basis_vec(i), b))).collect();
            let next = s.sum(&Subspace::span(n, more).unwrap()).unwrap();
            if next.dim() == s.dim() {
                return s;
            }
            s = next;
        }
    }

    /// Dimension of `s` in each `(degree, parity)` component.
    fn component_dims(g: &SuperAlgebra, s: &Subspace) -> BTreeMap<(i32, Parity), usize> {
        let n = g.dim();
        let mut out = BTreeMap::new();
        for i in 0..n {
            let key = (g.zdeg(i), g.parity(i));
            if out.contains_key(&key) {
                continue;
            }
            let coords = (0..n).filter(|j| (g.zdeg(*j), g.parity(*j)) == key).map(|j| unit_vec(n, j));
            let comp = Subspace::span(n, coords).unwrap();
            out.insert(key, s.intersect(&comp).unwrap().dim());
        }
        out
    }

    fn case() -> impl Strategy<Value = (usize, Vec<usize>)> {
        (0..algebras().len()).prop_flat_map(|a| (Just(a), prop::collection::vec(0..algebras()[a].dim(), 0..3)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn quotient_dimensions((a, seeds) in case()) {
            let g = &algebras()[a];
            let i = ideal_of(g, &seeds);
            prop_assert!(g.is_graded_subspace(&i));
            let q = quotient_algebra(g, &i).unwrap();
            prop_assert_eq!(q.dim(), g.dim() - i.dim());
            let whole = graded_dims(g);
            let part = component_dims(g, &i);
            let quot = graded_dims(&q);
            for (key, d) in &whole {
                prop_assert_eq!(quot.get(key).copied().unwrap_or(0), d - part[key]);
            }
            prop_assert!(check_super_jacobi(&q).is_ok());
            let sub = subalgebra(g, &i).unwrap();
            prop_assert_eq!(graded_dims(&sub).into_iter().filter(|(_, d)| *d > 0).collect::<BTreeMap<_, _>>(),
                part.into_iter().filter(|(_, d)| *d > 0).collect::<BTreeMap<_, _>>());
            prop_assert!(check_super_jacobi(&sub).is_ok());
        }

        #[test]
        fn jacobi_on_mixed_elements((a, x, y, z) in (0..algebras().len()).prop_flat_map(|a| {
            let n = algebras()[a].dim();
            (Just(a), 0..n, 0..n, 0..n)
        }), c in -3i64..=3) {
            // super-Jacobi is trilinear, so a homogeneous sum still satisfies it
            let g = &algebras()[a];
            let p = g.parity(x);
            let same: Vec<usize> = (0..g.dim()).filter(|i| g.parity(*i) == p).collect();
            let mut u = g.basis_vec(x);
            axpy(&mut u, &Rational::from_int(c), &g.basis_vec(same[(x + 1) % same.len()]));
            let (py, pz) = (g.parity(y), g.parity(z));
            let (by, bz) = (g.basis_vec(y), g.basis_vec(z));
            let mut sum = zero_vec(g.dim());
            axpy(&mut sum, &sign(p.koszul(pz)), &g.mul(&u, &g.mul(&by, &bz)));
            axpy(&mut sum, &sign(py.koszul(p)), &g.mul(&by, &g.mul(&bz, &u)));
            axpy(&mut sum, &sign(pz.koszul(py)), &g.mul(&bz, &g.mul(&u, &by)));
            prop_assert!(sum.iter().all(Rational::is_zero));
        }
    }
}
