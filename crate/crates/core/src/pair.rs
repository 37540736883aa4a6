//! Jordan superpairs `(V⁺, V⁻)`, stored through their operators
//! `D^σ_{x,y}: z ↦ {x,y,z}^σ` on basis vectors.

use crate::error::{CheckResult, Error, Result, Witness};
use crate::exact::{Matrix, Rational, Vector};
use crate::jordan::{combine, JordanAlgebra};
use crate::superspace::{sign, supercommutator, Parity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Plus, Side::Minus];

    pub fn idx(self) -> usize {
        match self {
            Side::Plus => 0,
            Side::Minus => 1,
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Side::Plus => "+",
            Side::Minus => "-",
        }
    }
}

#[derive(Clone, Debug)]
pub struct JordanPair {
    name: String,
    parity: [Vec<Parity>; 2],
    /// `d[σ][x][y]` is `D^σ_{x,y}` for basis `x` of `V^σ` and `y` of `V^{-σ}`.
    d: [Vec<Vec<Matrix>>; 2],
}

impl JordanPair {
    /// The pair `(V, V)` with `{x,y,z}^σ = {x,y,z}`.
    pub fn doubled(v: &JordanAlgebra) -> Self {
        let d = v.d_basis();
        JordanPair {
            name: format!("({0},{0})", v.name()),
            parity: [v.base().parities().to_vec(), v.base().parities().to_vec()],
            d: [d.clone(), d],
        }
    }

    /// Builds from operator tables and verifies outer symmetry and the 5-linear identity.
    pub fn from_operators(name: impl Into<String>, parity: [Vec<Parity>; 2], d: [Vec<Vec<Matrix>>; 2]) -> Result<Self> {
        for s in Side::BOTH {
            let (n, m) = (parity[s.idx()].len(), parity[s.other().idx()].len());
            let table = &d[s.idx()];
            if table.len() != n
                || table.iter().any(|row| row.len() != m)
                || table.iter().flatten().any(|op| op.rows() != n || op.cols() != n)
            {
                return Err(Error::Dimension(format!("operator table for side {} has the wrong shape", s.symbol())));
            }
        }
        let p = JordanPair { name: name.into(), parity, d };
        check_outer_symmetry(&p).map_err(Error::CheckFailed)?;
        check_pair_five_linear(&p).map_err(Error::CheckFailed)?;
        Ok(p)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self, s: Side) -> usize {
        self.parity[s.idx()].len()
    }

    pub fn parity(&self, s: Side, i: usize) -> Parity {
        self.parity[s.idx()][i]
    }

    pub fn parities(&self, s: Side) -> &[Parity] {
        &self.parity[s.idx()]
    }

    pub fn d_basis(&self, s: Side, x: usize, y: usize) -> &Matrix {
        &self.d[s.idx()][x][y]
    }

    /// `D^σ_{x,y}` for arbitrary `x ∈ V^σ`, `y ∈ V^{-σ}`.
    pub fn d_matrix(&self, s: Side, x: &[Rational], y: &[Rational]) -> Matrix {
        let n = self.dim(s);
        let mut out = Matrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                out = out.add(&combine(&self.d[s.idx()][i], y, n).scale(xi)).expect("equal shapes");
            }
        }
        out
    }

    pub fn triple(&self, s: Side, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vector {
        self.d_matrix(s, x, y).mul_vec(z).expect("z lives in V^σ")
    }

    /// `{b_x, b_y, b_z}^σ` on basis vectors.
    pub fn triple_basis(&self, s: Side, x: usize, y: usize, z: usize) -> Vector {
        self.d[s.idx()][x][y].column(z)
    }

    /// The inner derivation `𝔻_{x,y} = (D_{x,y}, -(-1)^{|x||y|} D_{y,x})` for basis
    /// `x ∈ V⁺`, `y ∈ V⁻`, as its two components.
    pub fn inner_basis(&self, x: usize, y: usize) -> (Matrix, Matrix) {
        let s = -sign(self.parity(Side::Plus, x).koszul(self.parity(Side::Minus, y)));
        (self.d[0][x][y].clone(), self.d[1][y][x].scale(&s))
    }
}

/// `{x,y,z}^σ = (-1)^{|x||y|+|y||z|+|z||x|}{z,y,x}^σ`.
pub fn check_outer_symmetry(p: &JordanPair) -> CheckResult {
    for s in Side::BOTH {
        let (n, m) = (p.dim(s), p.dim(s.other()));
        for x in 0..n {
            for y in 0..m {
                for z in 0..n {
                    let (px, py, pz) = (p.parity(s, x), p.parity(s.other(), y), p.parity(s, z));
                    let neg = px.koszul(py) ^ py.koszul(pz) ^ pz.koszul(px);
                    let lhs = p.triple_basis(s, x, y, z);
                    let rhs: Vector = p.triple_basis(s, z, y, x).iter().map(|c| c * &sign(neg)).collect();
                    if lhs != rhs {
                        return Err(Witness::new(
                            [s.idx(), x, y, z],
                            format!("outer symmetry fails on side {} at ({x}, {y}, {z})", s.symbol()),
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// `[D_{x,y}, D_{u,v}] = D_{{x,y,u},v} - (-1)^{(|x|+|y|)(|u|+|v|)} D_{u,{v,x,y}}` on each side,
/// which is the 5-linear identity read as an operator identity in `w`.
pub fn check_pair_five_linear(p: &JordanPair) -> CheckResult {
    for s in Side::BOTH {
        let (n, m) = (p.dim(s), p.dim(s.other()));
        for x in 0..n {
            for y in 0..m {
                let pxy = p.parity(s, x) + p.parity(s.other(), y);
                for u in 0..n {
                    for v in 0..m {
                        let puv = p.parity(s, u) + p.parity(s.other(), v);
                        let lhs = supercommutator(p.d_basis(s, x, y), pxy, p.d_basis(s, u, v), puv);
                        let xyu = p.triple_basis(s, x, y, u);
                        let vxy = p.triple_basis(s.other(), v, x, y);
                        let mut ev = vec![Rational::zero(); m];
                        ev[v] = Rational::one();
                        let mut eu = vec![Rational::zero(); n];
                        eu[u] = Rational::one();
                        let rhs = p
                            .d_matrix(s, &xyu, &ev)
                            .sub(&p.d_matrix(s, &eu, &vxy).scale(&sign(pxy.koszul(puv))))
                            .expect("equal shapes");
                        if lhs != rhs {
                            return Err(Witness::new(
                                [s.idx(), x, y, u, v],
                                format!("5-linear identity fails on side {} at ({x}, {y}, {u}, {v})", s.symbol()),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superspace::{Kind, SuperAlgebra};
    use Parity::{Even, Odd};

    fn kac_k() -> JordanAlgebra {
        let q = Rational::new;
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
    fn doubled_pair_is_a_superpair() {
        let k = kac_k();
        let p = JordanPair::doubled(&k);
        assert!(check_outer_symmetry(&p).is_ok());
        assert!(check_pair_five_linear(&p).is_ok());
        let (x, y, z) = (k.basis_vec(1), k.basis_vec(2), k.basis_vec(0));
        assert_eq!(p.triple(Side::Minus, &x, &y, &z), k.triple(&x, &y, &z));
    }

    #[test]
    fn broken_operator_table_is_rejected() {
        let k = kac_k();
        let p = JordanPair::doubled(&k);
        let mut d = p.d.clone();
        d[0][0][0] = Matrix::identity(3);
        let err = JordanPair::from_operators("bad", p.parity.clone(), d);
        assert!(matches!(err, Err(Error::CheckFailed(_))));
    }
}
