//! From 3-graded Lie superalgebras back to Jordan superpairs, and the
//! comparison `Ko(𝒥(g)) ≅ g`.

use super::koecher::koecher;
use super::{check_isomorphism, degree_indices, require_three_graded};
use crate::error::{CheckResult, Error, Result, Witness};
use crate::exact::{solve, unit_vec, Matrix, Rational, Subspace};
use crate::pair::JordanPair;
use crate::structure::flatten;
use crate::superspace::{center, SuperAlgebra};

/// Outcome of the two Jordan-graded conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanGraded {
    /// `dim [g₊, g₋]` against `dim g₀`.
    pub bracket_dim: usize,
    pub zero_dim: usize,
    /// `dim (g₀ ∩ Z(g))`.
    pub central_zero: usize,
}

impl JordanGraded {
    pub fn holds(&self) -> bool {
        self.bracket_dim == self.zero_dim && self.central_zero == 0
    }

    pub fn witness(&self) -> CheckResult {
        if self.bracket_dim != self.zero_dim {
            return Err(Witness::new(
                Vec::new(),
                format!("[g+, g-] has dimension {} but g0 has dimension {}", self.bracket_dim, self.zero_dim),
            ));
        }
        if self.central_zero != 0 {
            return Err(Witness::new(Vec::new(), format!("g0 meets the center in dimension {}", self.central_zero)));
        }
        Ok(())
    }
}

/// `[g₊, g₋] = g₀` and `g₀ ∩ Z(g) = 0`.
pub fn is_jordan_graded(g: &SuperAlgebra) -> Result<JordanGraded> {
    require_three_graded(g)?;
    let d = g.dim();
    let (minus, zero, plus) = (degree_indices(g, -1), degree_indices(g, 0), degree_indices(g, 1));
    let brackets =
        plus.iter().flat_map(|x| minus.iter().map(move |u| g.basis_product(*x, *u).to_dense(d))).collect::<Vec<_>>();
    let bracket_dim = Subspace::span(d, brackets)?.dim();
    let g0 = Subspace::span(d, zero.iter().map(|i| unit_vec(d, *i)))?;
    let central_zero = center(g).intersect(&g0)?.dim();
    Ok(JordanGraded { bracket_dim, zero_dim: zero.len(), central_zero })
}

/// `𝒥(g) = (g₊, g₋)` with `{x, y, z}^σ = [[x, y], z]`.
pub fn j_functor(g: &SuperAlgebra) -> Result<JordanPair> {
    require_three_graded(g)?;
    let d = g.dim();
    let sides = [degree_indices(g, 1), degree_indices(g, -1)];
    let mut ops = [Vec::new(), Vec::new()];
    for s in 0..2 {
        let (here, there) = (&sides[s], &sides[1 - s]);
        for &x in here {
            let mut row = Vec::new();
            for &y in there {
                let xy = g.basis_product(x, y).to_dense(d);
                let mut m = Matrix::zeros(here.len(), here.len());
                for (c, &z) in here.iter().enumerate() {
                    let t = g.mul(&xy, &g.basis_vec(z));
                    for (r, &k) in here.iter().enumerate() {
                        m[(r, c)] = t[k].clone();
                    }
                }
                row.push(m);
            }
            ops[s].push(row);
        }
    }
    let parity = sides.clone().map(|idx| idx.iter().map(|i| g.parity(*i)).collect());
    JordanPair::from_operators(format!("J({})", g.name()), parity, ops)
}

/// `Ko(𝒥(g)) → g`: identity on `g_{±1}`, and a degree-0 element `(A, B)` goes to
/// the `x ∈ g₀` with `ad_x|₊ = A`, `ad_x|₋ = B`.
pub fn koecher_of_j_iso(g: &SuperAlgebra) -> Result<CheckResult> {
    let jg = is_jordan_graded(g)?;
    if let Err(w) = jg.witness() {
        return Ok(Err(w));
    }
    let pair = j_functor(g)?;
    let ko = koecher(&pair)?;
    let (minus, zero, plus) = (degree_indices(g, -1), degree_indices(g, 0), degree_indices(g, 1));
    let restrict = |x: usize, idx: &[usize]| {
        let mut m = Matrix::zeros(idx.len(), idx.len());
        for (c, &z) in idx.iter().enumerate() {
            let t = g.basis_product(x, z);
            for (r, &k) in idx.iter().enumerate() {
                m[(r, c)] = t.get(k);
            }
        }
        m
    };
    let cols: Vec<_> = zero.iter().map(|&x| flatten(&[&restrict(x, &plus), &restrict(x, &minus)])).collect();
    let ad = Matrix::from_columns(cols.first().map_or(0, Vec::len), &cols);
    let basis = ko.ops(0).ok_or_else(|| Error::Internal("Ko keeps its degree-0 realization".into()))?;
    let mut map = Matrix::zeros(g.dim(), ko.dim());
    let (km, kz) = (minus.len(), basis.dim());
    for (l, &i) in minus.iter().enumerate() {
        map[(i, l)] = Rational::one();
    }
    for (a, v) in basis.vectors().iter().enumerate() {
        let Some(c) = solve(&ad, v)? else {
            return Ok(Err(Witness::new(vec![km + a], "degree-0 element of Ko(J(g)) is not an ad restriction")));
        };
        for (t, &i) in zero.iter().enumerate() {
            map[(i, km + a)] = c[t].clone();
        }
    }
    for (k, &i) in plus.iter().enumerate() {
        map[(i, km + kz + k)] = Rational::one();
    }
    Ok(check_isomorphism(ko.lie(), g, &map))
}
