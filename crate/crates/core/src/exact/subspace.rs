use super::echelon::{kernel_from_rref, RowEchelon};
use super::matrix::{axpy, is_zero_vec, Matrix, Vector};
use super::Rational;
use crate::error::{Error, Result};

/// A linear subspace of `Q^n`, stored by its reduced row-echelon basis.
///
/// The RREF basis is canonical, so derived equality is subspace equality.
/// Coordinates of a member vector with respect to this basis are simply its
/// entries at the pivot columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    pivots: Vec<usize>,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, pivots: Vec::new(), basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            pivots: (0..ambient).collect(),
            basis: (0..ambient).map(|i| super::unit_vec(ambient, i)).collect(),
        }
    }

    fn from_echelon(ech: RowEchelon) -> Self {
        let ambient = ech.ncols();
        let rref = ech.into_rref();
        Subspace {
            ambient,
            pivots: rref.iter().map(|(c, _)| *c).collect(),
            basis: rref.into_iter().map(|(_, r)| r.to_dense(ambient)).collect(),
        }
    }

    /// Span of arbitrary vectors of length `ambient`.
    pub fn span<I, V>(ambient: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: Into<Vector>,
    {
        let mut ech = RowEchelon::new(ambient);
        for v in vectors {
            let v: Vector = v.into();
            if v.len() != ambient {
                return Err(Error::Dimension(format!("vector of length {} in ambient dimension {ambient}", v.len())));
            }
            ech.insert(v);
        }
        Ok(Self::from_echelon(ech))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection along the pivot coordinates; zero iff `v` is a member.
    pub fn reduce(&self, v: &[Rational]) -> Vector {
        let mut r = v.to_vec();
        for (p, b) in self.pivots.iter().zip(&self.basis) {
            if !r[*p].is_zero() {
                let c = -&r[*p];
                axpy(&mut r, &c, b);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        self.check_len(v.len())?;
        Ok(is_zero_vec(&self.reduce(v)))
    }

    /// Coordinates of `v` in the echelon basis, `None` if `v` is not a member.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vector>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|p| v[*p].clone()).collect()))
    }

    /// Linear combination of the echelon basis.
    pub fn combine(&self, coords: &[Rational]) -> Vector {
        let mut v = super::zero_vec(self.ambient);
        for (c, b) in coords.iter().zip(&self.basis) {
            axpy(&mut v, c, b);
        }
        v
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.ambient {
            return Err(Error::Dimension(format!("length {n} against ambient dimension {}", self.ambient)));
        }
        Ok(())
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension(format!("ambient dimensions {} and {} differ", self.ambient, other.ambient)));
        }
        Ok(())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Subspace::span(self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    /// Intersection via the kernel of `[A^T | -B^T]`: a common vector is a
    /// combination of both bases.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        let (da, db) = (self.dim(), other.dim());
        let mut cols: Vec<Vector> = self.basis.clone();
        cols.extend(other.basis.iter().map(|b| b.iter().map(|x| -x).collect()));
        let m = Matrix::from_columns(self.ambient, &cols);
        let ker = kernel(&m);
        let common = ker.basis.iter().map(|k| {
            let mut v = super::zero_vec(self.ambient);
            for (c, b) in k[..da].iter().zip(&self.basis) {
                axpy(&mut v, c, b);
            }
            v
        });
        let out = Subspace::span(self.ambient, common)?;
        debug_assert!(out.dim() <= da.min(db));
        Ok(out)
    }

    /// `dim (a + b) / b`, which equals `dim a - dim b` when `b` is inside `a`.
    pub fn quotient_dim(&self, other: &Subspace) -> Result<usize> {
        Ok(self.sum(other)?.dim() - other.dim())
    }

    /// Image of this subspace under a linear map given as a matrix.
    pub fn image(&self, map: &Matrix) -> Result<Subspace> {
        let imgs: Result<Vec<Vector>> = self.basis.iter().map(|b| map.mul_vec(b)).collect();
        Subspace::span(map.rows(), imgs?)
    }
}

/// Exact null space of `m`.
pub fn kernel(m: &Matrix) -> Subspace {
    let mut ech = RowEchelon::new(m.cols());
    for r in 0..m.rows() {
        if ech.is_full() {
            break;
        }
        ech.insert(m.row(r).to_vec());
    }
    let rref = ech.into_rref();
    let vecs = kernel_from_rref(m.cols(), &rref);
    Subspace::span(m.cols(), vecs).expect("kernel vectors have the right length")
}

pub fn rank(m: &Matrix) -> usize {
    let mut ech = RowEchelon::new(m.cols());
    for r in 0..m.rows() {
        ech.insert(m.row(r).to_vec());
    }
    ech.rank()
}

/// Some `x` with `m x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &Matrix, b: &[Rational]) -> Result<Option<Vector>> {
    if b.len() != m.rows() {
        return Err(Error::Dimension(format!("right-hand side of length {} for {} rows", b.len(), m.rows())));
    }
    let n = m.cols();
    let mut ech = RowEchelon::new(n + 1);
    for r in 0..m.rows() {
        let mut row = m.row(r).to_vec();
        row.push(b[r].clone());
        ech.insert(row);
    }
    let rref = ech.into_rref();
    if rref.iter().any(|(c, _)| *c == n) {
        return Ok(None);
    }
    let mut x = super::zero_vec(n);
    for (c, row) in &rref {
        x[*c] = row.get(n);
    }
    let check = m.mul_vec(&x)?;
    if check != b {
        return Err(Error::Internal("solve: re-multiplication mismatch".into()));
    }
    Ok(Some(x))
}

/// Coordinates with respect to a chosen (not necessarily echelon) basis.
#[derive(Clone, Debug)]
pub struct FixedBasis {
    span: Subspace,
    vectors: Vec<Vector>,
    /// Maps echelon coordinates to coordinates in `vectors`.
    inv: Matrix,
}

impl FixedBasis {
    pub fn new(ambient: usize, vectors: Vec<Vector>) -> Result<Self> {
        let span = Subspace::span(ambient, vectors.iter().cloned())?;
        let k = vectors.len();
        if span.dim() != k {
            return Err(Error::Dimension(format!("{k} vectors span only dimension {}", span.dim())));
        }
        // rows [M | I] with M[r][c] = vectors[c][pivot_r]; the RREF is [I | M^-1]
        let mut ech = RowEchelon::new(2 * k);
        for (r, p) in span.pivots.iter().enumerate() {
            let mut row: Vector = vectors.iter().map(|v| v[*p].clone()).collect();
            row.extend((0..k).map(|c| if c == r { Rational::one() } else { Rational::zero() }));
            ech.insert(row);
        }
        let rref = ech.into_rref();
        let mut inv = Matrix::zeros(k, k);
        for (c, row) in &rref {
            for j in 0..k {
                inv.set(*c, j, row.get(k + j))?;
            }
        }
        Ok(FixedBasis { span, vectors, inv })
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient(&self) -> usize {
        self.span.ambient()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vector>> {
        match self.span.coordinates(v)? {
            None => Ok(None),
            Some(c) => Ok(Some(self.inv.mul_vec(&c)?)),
        }
    }

    pub fn combine(&self, coords: &[Rational]) -> Vector {
        let mut v = super::zero_vec(self.ambient());
        for (c, b) in coords.iter().zip(&self.vectors) {
            axpy(&mut v, c, b);
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vector {
        v.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn fixed_basis_coordinates() {
        let q = |n| Rational::from_int(n);
        let b = FixedBasis::new(3, vec![vec![q(1), q(1), q(0)], vec![q(0), q(2), q(1)]]).unwrap();
        let v = vec![q(2), q(-4), q(-3)];
        assert_eq!(b.coordinates(&v).unwrap().unwrap(), vec![q(2), q(-3)]);
        assert_eq!(b.combine(&[q(2), q(-3)]), v);
        assert_eq!(b.coordinates(&[q(1), q(0), q(0)]).unwrap(), None);
        assert!(FixedBasis::new(3, vec![vec![q(1), q(1), q(0)], vec![q(2), q(2), q(0)]]).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&Matrix::identity(2)).dim(), 0);
        assert_eq!(kernel(&Matrix::zeros(3, 3)).dim(), 3);
        let k = kernel(&Matrix::from_ints(&[&[1, 2], &[2, 4]]));
        assert_eq!(k.dim(), 1);
        // Hand elimination: x + 2y = 0, so (2, -1) spans the kernel.
        assert!(k.contains(&ints(&[2, -1])).unwrap());
    }

    #[test]
    fn solve_examples() {
        let b = ints(&[3, -4]);
        assert_eq!(solve(&Matrix::identity(2), &b).unwrap(), Some(b.clone()));
        let x = solve(&Matrix::from_ints(&[&[1, 1]]), &ints(&[1])).unwrap().unwrap();
        assert_eq!(&x[0] + &x[1], Rational::one());
        // rank [[1],[2]] = 1 but rank with (1,1) appended = 2
        assert_eq!(solve(&Matrix::from_ints(&[&[1], &[2]]), &ints(&[1, 1])).unwrap(), None);
        assert!(solve(&Matrix::identity(2), &ints(&[1])).is_err());
    }

    #[test]
    fn span_sum_intersect() {
        assert_eq!(Subspace::span(2, [ints(&[1, 0]), ints(&[1, 0])]).unwrap().dim(), 1);
        let x = Subspace::span(2, [ints(&[1, 0])]).unwrap();
        let y = Subspace::span(2, [ints(&[0, 1])]).unwrap();
        assert_eq!(x.sum(&y).unwrap().dim(), 2);
        let a = Subspace::span(3, [ints(&[1, 1, 0]), ints(&[0, 0, 1])]).unwrap();
        let b = Subspace::span(3, [ints(&[1, 1, 1])]).unwrap();
        assert_eq!(a.intersect(&b).unwrap(), b);
        assert!(x.sum(&Subspace::zero(3)).is_err());
    }

    #[test]
    fn coordinates_round_trip() {
        let s = Subspace::span(3, [ints(&[1, 2, 3]), ints(&[0, 1, 1])]).unwrap();
        let v = ints(&[2, 7, 9]);
        let c = s.coordinates(&v).unwrap().unwrap();
        assert_eq!(s.combine(&c), v);
        assert_eq!(s.coordinates(&ints(&[0, 0, 1])).unwrap(), None);
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::exact::scale_vec;
    use proptest::prelude::*;

    fn small() -> impl Strategy<Value = Rational> {
        (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Rational::new(n, d))
    }

    fn vectors(dim: usize, max: usize) -> impl Strategy<Value = Vec<Vector>> {
        prop::collection::vec(prop::collection::vec(small(), dim), 0..=max)
    }

    fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        prop::collection::vec(small(), rows * cols).prop_map(move |d| Matrix::from_flat(rows, cols, d).unwrap())
    }

    proptest! {
        #[test]
        fn solve_remultiplies((m, b) in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| (matrix(r, c), prop::collection::vec(small(), r)))) {
            if let Some(x) = solve(&m, &b).unwrap() {
                prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
            }
        }

        #[test]
        fn consistent_systems_solve((m, x) in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| (matrix(r, c), prop::collection::vec(small(), c)))) {
            let b = m.mul_vec(&x).unwrap();
            let y = solve(&m, &b).unwrap().expect("b is in the image");
            prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
        }

        #[test]
        fn grassmann((a, b) in (1usize..6).prop_flat_map(|n| (vectors(n, 4), vectors(n, 4)))) {
            let n = a.first().or(b.first()).map_or(1, Vec::len);
            let (a, b) = (Subspace::span(n, a).unwrap(), Subspace::span(n, b).unwrap());
            let sum = a.sum(&b).unwrap();
            let meet = a.intersect(&b).unwrap();
            prop_assert_eq!(sum.dim() + meet.dim(), a.dim() + b.dim());
            prop_assert!(meet.is_subspace_of(&a).unwrap() && meet.is_subspace_of(&b).unwrap());
        }

        #[test]
        fn echelon_is_canonical(
            (vs, perm, scales) in (1usize..6)
                .prop_flat_map(|n| vectors(n, 5))
                .prop_flat_map(|vs| {
                    let k = vs.len();
                    (Just(vs), Just((0..k).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(small().prop_filter("nonzero", |r| !r.is_zero()), k))
                })
        ) {
            let n = vs.first().map_or(3, Vec::len);
            let a = Subspace::span(n, vs.clone()).unwrap();
            let shuffled: Vec<Vector> = perm.iter().zip(&scales).map(|(&i, c)| scale_vec(c, &vs[i])).collect();
            let b = Subspace::span(n, shuffled).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
