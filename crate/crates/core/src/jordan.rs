//! Jordan superalgebras: multiplication operators, the triple product and the
//! identity checks that certify a table.

use crate::error::{CheckResult, Error, Result, Witness};
use crate::exact::{axpy, kernel, solve, zero_vec, Matrix, Rational, Vector};
use crate::superspace::{check_supercommutative, sign, supercommutator, GradedOperator, Kind, Parity, SuperAlgebra};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnitSearch {
    Unique(Vector),
    None,
    /// A solution exists but the annihilator of the algebra is nonzero.
    NotUnique {
        particular: Vector,
        freedom: usize,
    },
}

#[derive(Clone, Debug)]
pub struct JordanAlgebra {
    base: SuperAlgebra,
    unit: Option<Vector>,
    lmat: Vec<Matrix>,
}

impl JordanAlgebra {
    /// Verifies supercommutativity and the Jordan identity, then looks for a unit.
    pub fn new(base: SuperAlgebra) -> Result<Self> {
        check_supercommutative(&base).map_err(Error::CheckFailed)?;
        check_jordan_identity(&base).map_err(Error::CheckFailed)?;
        let base = base.with_kind(Kind::Jordan)?;
        let unit = match find_unit(&base) {
            UnitSearch::Unique(e) => Some(e),
            _ => None,
        };
        let lmat = (0..base.dim()).map(|i| base.left_matrix_basis(i)).collect();
        Ok(JordanAlgebra { base, unit, lmat })
    }

    pub fn base(&self) -> &SuperAlgebra {
        &self.base
    }

    pub fn name(&self) -> &str {
        self.base.name()
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.base.parity(i)
    }

    pub fn unit(&self) -> Option<&Vector> {
        self.unit.as_ref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn basis_vec(&self, i: usize) -> Vector {
        self.base.basis_vec(i)
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vector {
        self.base.mul(x, y)
    }

    /// `L_{b_i}`.
    pub fn l_basis(&self, i: usize) -> &Matrix {
        &self.lmat[i]
    }

    /// Matrix of `L_x` for any `x`, homogeneous or not.
    pub fn l_matrix(&self, x: &[Rational]) -> Matrix {
        combine(&self.lmat, x, self.dim())
    }

    pub fn l_op(&self, x: &[Rational]) -> Result<GradedOperator> {
        let p = self.base.parity_of(x).ok_or_else(|| Error::NotHomogeneous("argument of L".into()))?;
        GradedOperator::new(&self.base, self.l_matrix(x), p, None)
    }

    /// `{x,y,z} = 2((xy)z + x(yz) - (-1)^{|x||y|} y(xz))`, extended multilinearly.
    pub fn triple(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vector {
        let mut out = zero_vec(self.dim());
        let two = Rational::from_int(2);
        for xp in self.base.split_parity(x) {
            let px = self.base.parity_of(&xp).unwrap_or(Parity::Even);
            for yp in self.base.split_parity(y) {
                let py = self.base.parity_of(&yp).unwrap_or(Parity::Even);
                let xy_z = self.mul(&self.mul(&xp, &yp), z);
                let x_yz = self.mul(&xp, &self.mul(&yp, z));
                let y_xz = self.mul(&yp, &self.mul(&xp, z));
                axpy(&mut out, &two, &xy_z);
                axpy(&mut out, &two, &x_yz);
                axpy(&mut out, &(-&two * sign(px.koszul(py))), &y_xz);
            }
        }
        out
    }

    /// Matrix of `D_{x,y} = 2L_{xy} + 2[L_x, L_y]`, i.e. `z ↦ {x,y,z}`.
    pub fn d_matrix(&self, x: &[Rational], y: &[Rational]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.triple(x, y, &self.basis_vec(j))).collect();
        Matrix::from_columns(n, &cols)
    }

    pub fn d_op(&self, x: &[Rational], y: &[Rational]) -> Result<GradedOperator> {
        let (px, py) = self.homogeneous_pair(x, y)?;
        GradedOperator::new(&self.base, self.d_matrix(x, y), px + py, None)
    }

    /// Matrix of `U_{x,y}: z ↦ (-1)^{|y||z|}{x,z,y}`.
    pub fn u_matrix(&self, x: &[Rational], y: &[Rational]) -> Matrix {
        let n = self.dim();
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let ej = self.basis_vec(j);
            let mut col = zero_vec(n);
            for yp in self.base.split_parity(y) {
                let py = self.base.parity_of(&yp).unwrap_or(Parity::Even);
                axpy(&mut col, &sign(py.koszul(self.parity(j))), &self.triple(x, &ej, &yp));
            }
            cols.push(col);
        }
        Matrix::from_columns(n, &cols)
    }

    pub fn u_op(&self, x: &[Rational], y: &[Rational]) -> Result<GradedOperator> {
        let (px, py) = self.homogeneous_pair(x, y)?;
        GradedOperator::new(&self.base, self.u_matrix(x, y), px + py, None)
    }

    fn homogeneous_pair(&self, x: &[Rational], y: &[Rational]) -> Result<(Parity, Parity)> {
        let px = self.base.parity_of(x).ok_or_else(|| Error::NotHomogeneous("x".into()))?;
        let py = self.base.parity_of(y).ok_or_else(|| Error::NotHomogeneous("y".into()))?;
        Ok((px, py))
    }

    /// `D_{b_i, b_j}` for all basis pairs, indexed `[i][j]`.
    pub fn d_basis(&self) -> Vec<Vec<Matrix>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.d_matrix(&self.basis_vec(i), &self.basis_vec(j))).collect()).collect()
    }
}

/// `Σ x_k mats[k]`.
pub(crate) fn combine(mats: &[Matrix], x: &[Rational], n: usize) -> Matrix {
    let mut out = Matrix::zeros(n, n);
    for (c, m) in x.iter().zip(mats) {
        if !c.is_zero() {
            out = out.add(&m.scale(c)).expect("equal shapes");
        }
    }
    out
}

fn basis_l(a: &SuperAlgebra) -> Vec<Matrix> {
    (0..a.dim()).map(|i| a.left_matrix_basis(i)).collect()
}

fn product_l(a: &SuperAlgebra, lmat: &[Matrix], i: usize, j: usize) -> Matrix {
    combine(lmat, &a.basis_product(i, j).to_dense(a.dim()), a.dim())
}

/// `(-1)^{|x||z|}[L_x,L_{yz}] + (-1)^{|y||x|}[L_y,L_{zx}] + (-1)^{|z||y|}[L_z,L_{xy}] = 0`.
pub fn check_jordan_identity(a: &SuperAlgebra) -> CheckResult {
    let n = a.dim();
    let lmat = basis_l(a);
    let p = |i: usize| a.parity(i);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let terms = [(x, y, z), (y, z, x), (z, x, y)];
                let mut acc = Matrix::zeros(n, n);
                for (u, v, w) in terms {
                    // (u, v, w) = (x, y, z) contributes (-1)^{|x||z|}[L_x, L_{yz}]
                    let s = sign(p(u).koszul(p(w)));
                    let lvw = product_l(a, &lmat, v, w);
                    let br = supercommutator(&lmat[u], p(u), &lvw, p(v) + p(w));
                    acc = acc.add(&br.scale(&s)).expect("equal shapes");
                }
                if !acc.is_zero() {
                    return Err(Witness::new(
                        [x, y, z],
                        format!("Jordan identity fails on ({}, {}, {})", a.label(x), a.label(y), a.label(z)),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// `[[L_x,L_y],L_z] = L_{x(yz)} - (-1)^{|x||y|} L_{y(xz)}`.
pub fn check_operator_identity(a: &SuperAlgebra) -> CheckResult {
    let n = a.dim();
    let lmat = basis_l(a);
    let p = |i: usize| a.parity(i);
    for x in 0..n {
        for y in 0..n {
            let lxy = supercommutator(&lmat[x], p(x), &lmat[y], p(y));
            for z in 0..n {
                let lhs = supercommutator(&lxy, p(x) + p(y), &lmat[z], p(z));
                let yz = a.basis_product(y, z).to_dense(n);
                let xz = a.basis_product(x, z).to_dense(n);
                let x_yz = a.mul_basis_left(x, &yz);
                let y_xz = a.mul_basis_left(y, &xz);
                let rhs = combine(&lmat, &x_yz, n)
                    .sub(&combine(&lmat, &y_xz, n).scale(&sign(p(x).koszul(p(y)))))
                    .expect("equal shapes");
                if lhs != rhs {
                    return Err(Witness::new(
                        [x, y, z],
                        format!("[[L,L],L] identity fails on ({}, {}, {})", a.label(x), a.label(y), a.label(z)),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Triple products `{b_i, b_j, b_k}` on a plain table (no Jordan check needed).
fn basis_triples(a: &SuperAlgebra) -> Vec<Vec<Vec<Vector>>> {
    let n = a.dim();
    let two = Rational::from_int(2);
    let mut t = vec![vec![vec![Vec::new(); n]; n]; n];
    for x in 0..n {
        for y in 0..n {
            let xy = a.basis_product(x, y).to_dense(n);
            let s = -&two * sign(a.parity(x).koszul(a.parity(y)));
            for z in 0..n {
                let mut out = a.mul_basis_right(&xy, z);
                out = out.iter().map(|c| c * &two).collect();
                let yz = a.basis_product(y, z).to_dense(n);
                axpy(&mut out, &two, &a.mul_basis_left(x, &yz));
                let xz = a.basis_product(x, z).to_dense(n);
                axpy(&mut out, &s, &a.mul_basis_left(y, &xz));
                t[x][y][z] = out;
            }
        }
    }
    t
}

/// `{x,y,z} = (-1)^{|x||y|+|y||z|+|x||z|}{z,y,x}` on basis triples.
pub fn check_triple_symmetry(a: &SuperAlgebra) -> CheckResult {
    let n = a.dim();
    let t = basis_triples(a);
    let p = |i: usize| a.parity(i);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let neg = p(x).koszul(p(y)) ^ p(y).koszul(p(z)) ^ p(x).koszul(p(z));
                let rhs: Vector = t[z][y][x].iter().map(|c| c * &sign(neg)).collect();
                if t[x][y][z] != rhs {
                    return Err(Witness::new(
                        [x, y, z],
                        format!("triple symmetry fails on ({}, {}, {})", a.label(x), a.label(y), a.label(z)),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Both operator forms of the 5-linear identity, with `s = (-1)^{(|x|+|y|)(|u|+|v|)}`:
/// `[D_{x,y},D_{u,v}] = D_{{x,y,u},v} - s D_{u,{v,x,y}} = D_{x,{y,u,v}} - s D_{{u,v,x},y}`.
pub fn check_five_linear(a: &SuperAlgebra) -> CheckResult {
    let n = a.dim();
    let t = basis_triples(a);
    let p = |i: usize| a.parity(i);
    // D_{i,j} has column k equal to {i,j,k}.
    let d: Vec<Vec<Matrix>> = (0..n).map(|i| (0..n).map(|j| Matrix::from_columns(n, &t[i][j])).collect()).collect();
    // D_{w,j} and D_{j,w} for a vector w, by linearity in the slot.
    let d_left = |w: &[Rational], j: usize| {
        let mats: Vec<Matrix> = (0..n).map(|i| d[i][j].clone()).collect();
        combine(&mats, w, n)
    };
    let d_right = |i: usize, w: &[Rational]| combine(&d[i], w, n);
    for x in 0..n {
        for y in 0..n {
            let pxy = p(x) + p(y);
            for u in 0..n {
                for v in 0..n {
                    let puv = p(u) + p(v);
                    let s = sign(pxy.koszul(puv));
                    let lhs = supercommutator(&d[x][y], pxy, &d[u][v], puv);
                    let form1 = d_left(&t[x][y][u], v).sub(&d_right(u, &t[v][x][y]).scale(&s)).expect("equal shapes");
                    if lhs != form1 {
                        return Err(Witness::new(
                            [x, y, u, v],
                            format!(
                                "first form of the 5-linear identity fails on ({}, {}, {}, {})",
                                a.label(x),
                                a.label(y),
                                a.label(u),
                                a.label(v)
                            ),
                        ));
                    }
                    let form2 = d_right(x, &t[y][u][v]).sub(&d_left(&t[u][v][x], y).scale(&s)).expect("equal shapes");
                    if lhs != form2 {
                        return Err(Witness::new(
                            [x, y, u, v],
                            format!(
                                "second form of the 5-linear identity fails on ({}, {}, {}, {})",
                                a.label(x),
                                a.label(y),
                                a.label(u),
                                a.label(v)
                            ),
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Solves `e · b_i = b_i` for every basis vector.
pub fn find_unit(a: &SuperAlgebra) -> UnitSearch {
    let n = a.dim();
    // Unknown e has coordinates e_k; equation block i reads Σ_k e_k (b_k b_i) = b_i.
    let mut m = Matrix::zeros(n * n, n);
    let mut rhs = zero_vec(n * n);
    for i in 0..n {
        for k in 0..n {
            for (r, c) in a.basis_product(k, i).iter() {
                m[(i * n + r, k)] = c.clone();
            }
        }
        rhs[i * n + i] = Rational::one();
    }
    match solve(&m, &rhs).expect("shapes agree") {
        None => UnitSearch::None,
        Some(e) => {
            let freedom = kernel(&m).dim();
            if freedom == 0 {
                UnitSearch::Unique(e)
            } else {
                UnitSearch::NotUnique { particular: e, freedom }
            }
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

    fn j19_table() -> Vec<(usize, usize, usize, Rational)> {
        vec![(0, 0, 0, q(1, 1)), (0, 1, 1, q(1, 2)), (1, 0, 1, q(1, 2)), (1, 1, 2, q(1, 1))]
    }

    fn j19() -> JordanAlgebra {
        let a = SuperAlgebra::from_entries("j19", vec![Even; 3], None, &j19_table(), Kind::Plain).unwrap();
        JordanAlgebra::new(a).unwrap()
    }

    fn kac_k() -> JordanAlgebra {
        let e = vec![
            (0, 0, 0, q(1, 1)),
            (0, 1, 1, q(1, 2)),
            (1, 0, 1, q(1, 2)),
            (0, 2, 2, q(1, 2)),
            (2, 0, 2, q(1, 2)),
            (1, 2, 0, q(1, 1)),
            (2, 1, 0, q(-1, 1)),
        ];
        let a = SuperAlgebra::from_entries("kacK", vec![Even, Odd, Odd], None, &e, Kind::Plain).unwrap();
        JordanAlgebra::new(a).unwrap()
    }

    #[test]
    fn j19_operators() {
        let v = j19();
        let l1 = v.l_matrix(&v.basis_vec(0));
        assert_eq!(
            l1,
            Matrix::from_rows(vec![
                vec![q(1, 1), q(0, 1), q(0, 1)],
                vec![q(0, 1), q(1, 2), q(0, 1)],
                vec![q(0, 1), q(0, 1), q(0, 1)],
            ])
            .unwrap()
        );
        assert!(v.l_matrix(&zero_vec(3)).is_zero());
        assert_eq!(v.mul(&v.basis_vec(0), &v.basis_vec(1)), vec![q(0, 1), q(1, 2), q(0, 1)]);
        assert!(v.unit().is_none());
        assert_eq!(find_unit(v.base()), UnitSearch::None);
    }

    #[test]
    fn kac_k_checks() {
        let k = kac_k();
        assert!(!k.is_unital());
        let b = k.base();
        assert!(check_operator_identity(b).is_ok());
        assert!(check_triple_symmetry(b).is_ok());
        assert!(check_five_linear(b).is_ok());
        assert_eq!(k.mul(&k.basis_vec(1), &k.basis_vec(2)), k.basis_vec(0));
    }

    #[test]
    fn mutated_j19_fails() {
        let mut e = j19_table();
        e[3] = (1, 1, 0, q(1, 1));
        let a = SuperAlgebra::from_entries("bad", vec![Even; 3], None, &e, Kind::Plain).unwrap();
        assert!(check_jordan_identity(&a).is_err());
        assert!(JordanAlgebra::new(a.clone()).is_err());
        assert!(check_five_linear(&a).is_err());
    }

    #[test]
    fn u_operator_matches_d() {
        let k = kac_k();
        let n = k.dim();
        for x in 0..n {
            for y in 0..n {
                let u = k.u_matrix(&k.basis_vec(x), &k.basis_vec(y));
                for z in 0..n {
                    // U_{x,y}(z) = (-1)^{|y||z|} D_{x,z}(y)
                    let d = k.d_matrix(&k.basis_vec(x), &k.basis_vec(z));
                    let want: Vector = d.column(y).iter().map(|c| c * &sign(k.parity(y).koszul(k.parity(z)))).collect();
                    assert_eq!(u.column(z), want);
                }
            }
        }
    }

    #[test]
    fn d_of_l_bracket_form() {
        let k = kac_k();
        let (x, y) = (k.basis_vec(1), k.basis_vec(2));
        let two = Rational::from_int(2);
        let lx = k.l_matrix(&x);
        let ly = k.l_matrix(&y);
        let want =
            k.l_matrix(&k.mul(&x, &y)).scale(&two).add(&supercommutator(&lx, Odd, &ly, Odd).scale(&two)).unwrap();
        assert_eq!(k.d_matrix(&x, &y), want);
        assert!(k.d_matrix(&zero_vec(3), &y).is_zero());
        assert!(k.l_op(&crate::exact::add_vec(&x, &k.basis_vec(0))).is_err());
    }
}

#[cfg(test)]
mod props {
    use std::sync::OnceLock;

    use proptest::prelude::*;

    use super::*;
    use crate::catalog::jordan_catalog;
    use crate::exact::scale_vec;

    fn algebras() -> &'static [JordanAlgebra] {
        static ALGS: OnceLock<Vec<JordanAlgebra>> = OnceLock::new();
        ALGS.get_or_init(|| {
            ["j19", "kacK", "trunc_poly:5", "gl+:1,1", "form:1,2", "form:2,2", "dt:2", "dt:1/2"]
                .iter()
                .map(|n| jordan_catalog(&n.parse().unwrap()).unwrap())
                .collect()
        })
    }

    /// A random element of the parity of basis vector `i`.
    fn homogeneous(v: &JordanAlgebra, i: usize, coeffs: &[i64]) -> Vector {
        let p = v.parity(i);
        let mut x = v.basis_vec(i);
        for (j, c) in (0..v.dim()).filter(|j| v.parity(*j) == p).zip(coeffs) {
            axpy(&mut x, &Rational::new(*c, 2), &v.basis_vec(j));
        }
        x
    }

    fn triple_case() -> impl Strategy<Value = (usize, [(usize, Vec<i64>); 3])> {
        (0..algebras().len()).prop_flat_map(|a| {
            let n = algebras()[a].dim();
            let elt = move || (0..n, prop::collection::vec(-3i64..=3, n));
            (Just(a), [elt(), elt(), elt()])
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn operator_identity_on_elements((a, [(i, ci), (j, cj), (k, ck)]) in triple_case()) {
            let v = &algebras()[a];
            let (x, y, z) = (homogeneous(v, i, &ci), homogeneous(v, j, &cj), homogeneous(v, k, &ck));
            let (px, py, pz) = (v.parity(i), v.parity(j), v.parity(k));
            let lxy = supercommutator(&v.l_matrix(&x), px, &v.l_matrix(&y), py);
            let lhs = supercommutator(&lxy, px + py, &v.l_matrix(&z), pz);
            let rhs = v
                .l_matrix(&v.mul(&x, &v.mul(&y, &z)))
                .sub(&v.l_matrix(&v.mul(&y, &v.mul(&x, &z))).scale(&sign(px.koszul(py))))
                .unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn triple_symmetry_on_elements((a, [(i, ci), (j, cj), (k, ck)]) in triple_case()) {
            let v = &algebras()[a];
            let (x, y, z) = (homogeneous(v, i, &ci), homogeneous(v, j, &cj), homogeneous(v, k, &ck));
            let (px, py, pz) = (v.parity(i), v.parity(j), v.parity(k));
            let s = sign(px.koszul(py) ^ py.koszul(pz) ^ px.koszul(pz));
            prop_assert_eq!(v.triple(&x, &y, &z), scale_vec(&s, &v.triple(&z, &y, &x)));
        }

        #[test]
        fn unit_relations((a, [(i, ci), _, _]) in triple_case()) {
            let v = &algebras()[a];
            let Some(e) = v.unit() else { return Ok(()) };
            let x = homogeneous(v, i, &ci);
            let two = Rational::from_int(2);
            prop_assert_eq!(v.d_op(&x, e).unwrap().into_matrix(), v.l_matrix(&x).scale(&two));
            prop_assert_eq!(v.triple(e, &x, e), scale_vec(&two, &x));
        }
    }
}
