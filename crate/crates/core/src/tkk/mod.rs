//! TKK constructions: 3-graded Lie superalgebras `g₋ ⊕ g₀ ⊕ g₊` built from Jordan
//! superalgebras and superpairs, and the tools to compare them.
//!
//! Every construction lays out its basis as degree −1, then 0, then +1.

mod der;
mod jfunctor;
mod kantor;
mod koecher;
mod tits;
mod unital;

use std::fmt;

use crate::error::{CheckResult, Error, Result, Witness};
use crate::exact::{is_zero_vec, rank, FixedBasis, Matrix, SparseVec, Vector};
use crate::superspace::{sign, Kind, Parity, SuperAlgebra};

pub use der::{fingerprint, lie_der_tower, DerTower, Fingerprint};
pub use jfunctor::{is_jordan_graded, j_functor, koecher_of_j_iso, JordanGraded};
pub use kantor::{check_kantor_relations, kantor};
pub use koecher::{check_ideal_in_tilde, koecher, koecher_alg, koecher_d, koecher_tilde, koecher_tilde_alg, TitsData};
pub use tits::{check_propnu, killing_form, sl2, tits, tits_roundtrip};
pub use unital::{check_unital_equivalences, counterexample_report, CounterexampleReport, UnitalReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    VMinus(usize),
    Op0(usize),
    VPlus(usize),
    KantorP,
    KantorLP(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    Kan,
    Ko,
    KoTilde,
    KoD,
    Ti,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::Kan => "Kan",
            Construction::Ko => "Ko",
            Construction::KoTilde => "Ko~",
            Construction::KoD => "Ko_D",
            Construction::Ti => "Ti",
        })
    }
}

#[derive(Clone, Debug)]
pub struct TkkAlgebra {
    lie: SuperAlgebra,
    origin: Vec<Origin>,
    construction: Construction,
    input: String,
    /// Concrete realizations of the degree −1, 0, +1 bases where those parts are
    /// operator spaces (pairs `(A, B)` for Ko and Ko~, `End(V)` for Kan's `g₀`,
    /// `Hom(V⊗V, V)` for Kan's `g₊`, `(D, x)` for Ko_D).
    ops: [Option<FixedBasis>; 3],
}

impl TkkAlgebra {
    pub fn lie(&self) -> &SuperAlgebra {
        &self.lie
    }

    pub fn into_lie(self) -> SuperAlgebra {
        self.lie
    }

    pub fn origin(&self) -> &[Origin] {
        &self.origin
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    pub fn ops(&self, degree: i32) -> Option<&FixedBasis> {
        self.ops[(degree + 1) as usize].as_ref()
    }

    pub fn input(&self) -> &str {
        &self.input
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn degree_indices(&self, d: i32) -> Vec<usize> {
        degree_indices(&self.lie, d)
    }

    /// Dimensions of the degree −1, 0, +1 parts.
    pub fn graded_dims(&self) -> [usize; 3] {
        [-1, 0, 1].map(|d| self.degree_indices(d).len())
    }

    /// `(even, odd)` dimensions of the degree −1, 0, +1 parts.
    pub fn graded_parity_dims(&self) -> [(usize, usize); 3] {
        [-1, 0, 1].map(|d| {
            let idx = self.degree_indices(d);
            let odd = idx.iter().filter(|i| self.lie.parity(**i).is_odd()).count();
            (idx.len() - odd, odd)
        })
    }
}

pub(crate) fn degree_indices(g: &SuperAlgebra, d: i32) -> Vec<usize> {
    (0..g.dim()).filter(|i| g.zdeg(*i) == d).collect()
}

/// Checks that `g` carries a grading by −1, 0, +1.
pub(crate) fn require_three_graded(g: &SuperAlgebra) -> Result<()> {
    let z = g.zdegrees().ok_or_else(|| Error::NotThreeGraded(format!("{} has no ℤ-grading", g.name())))?;
    if let Some(i) = z.iter().position(|d| !(-1..=1).contains(d)) {
        return Err(Error::NotThreeGraded(format!("{} has basis vector {i} in degree {}", g.name(), z[i])));
    }
    Ok(())
}

/// The pieces of a 3-graded bracket. Degree-0 elements are given in a fixed basis;
/// all brackets are expressed in the bases of the target pieces.
pub(crate) struct Graded3 {
    pub minus: Vec<Parity>,
    pub zero: Vec<Parity>,
    pub plus: Vec<Parity>,
    /// `[z_i, z_j]` in degree-0 coordinates.
    pub zero_bracket: Vec<Vec<Vector>>,
    /// `[z_i, ·]` on `g₋` and on `g₊`.
    pub act_minus: Vec<Matrix>,
    pub act_plus: Vec<Matrix>,
    /// `[x⁺_k, u⁻_l]` in degree-0 coordinates.
    pub pair: Vec<Vec<Vector>>,
    pub labels: [Vec<String>; 3],
}

impl Graded3 {
    /// Assembles the full table and verifies super-Jacobi.
    pub fn assemble(self, name: String) -> Result<SuperAlgebra> {
        let (nm, nz, np) = (self.minus.len(), self.zero.len(), self.plus.len());
        let d = nm + nz + np;
        let (om, oz, op) = (0, nm, nm + nz);
        let mut parity = self.minus.clone();
        parity.extend(&self.zero);
        parity.extend(&self.plus);
        let zdeg: Vec<i32> = (0..d)
            .map(|i| {
                if i < oz {
                    -1
                } else if i < op {
                    0
                } else {
                    1
                }
            })
            .collect();
        let mut table = vec![vec![SparseVec::new(); d]; d];
        let shift = |v: &[crate::exact::Rational], off: usize| SparseVec::from_dense(v).map_indices(|k| k + off);
        let mut set = |i: usize, j: usize, v: SparseVec| {
            // fill [b_j, b_i] by super-antisymmetry
            let s = -sign(parity[i].koszul(parity[j]));
            table[j][i] = v.scaled(&s);
            table[i][j] = v;
        };
        for a in 0..nz {
            for b in a..nz {
                set(oz + a, oz + b, shift(&self.zero_bracket[a][b], oz));
            }
            for k in 0..nm {
                set(oz + a, om + k, shift(&self.act_minus[a].column(k), om));
            }
            for k in 0..np {
                set(oz + a, op + k, shift(&self.act_plus[a].column(k), op));
            }
        }
        for k in 0..np {
            for l in 0..nm {
                set(op + k, om + l, shift(&self.pair[k][l], oz));
            }
        }
        let [lm, lz, lp] = self.labels;
        let labels = lm.into_iter().chain(lz).chain(lp).collect();
        SuperAlgebra::from_table(name, parity, Some(zdeg), table, Kind::Lie)?.with_labels(labels)
    }
}

/// `map` (columns = images of `src` basis vectors) is parity preserving and
/// `map[x,y] = [map x, map y]` on all basis pairs.
pub fn check_homomorphism(src: &SuperAlgebra, dst: &SuperAlgebra, map: &Matrix) -> CheckResult {
    if map.rows() != dst.dim() || map.cols() != src.dim() {
        return Err(Witness::new(
            [],
            format!("map is {}x{}, expected {}x{}", map.rows(), map.cols(), dst.dim(), src.dim()),
        ));
    }
    let images: Vec<Vector> = (0..src.dim()).map(|i| map.column(i)).collect();
    for (i, im) in images.iter().enumerate() {
        if !is_zero_vec(im) && dst.parity_of(im) != Some(src.parity(i)) {
            return Err(Witness::new([i], format!("image of {} has the wrong parity", src.label(i))));
        }
    }
    for i in 0..src.dim() {
        for j in 0..src.dim() {
            let lhs = map.mul_vec(&src.basis_product(i, j).to_dense(src.dim())).expect("shape checked");
            let rhs = dst.mul(&images[i], &images[j]);
            if lhs != rhs {
                return Err(Witness::new(
                    [i, j],
                    format!("bracket of {} and {} is not preserved", src.label(i), src.label(j)),
                ));
            }
        }
    }
    Ok(())
}

/// A bracket-preserving bijection.
pub fn check_isomorphism(src: &SuperAlgebra, dst: &SuperAlgebra, map: &Matrix) -> CheckResult {
    check_homomorphism(src, dst, map)?;
    if src.dim() != dst.dim() || rank(map) != src.dim() {
        return Err(Witness::new(
            [],
            format!("map of rank {} between dimensions {} and {}", rank(map), src.dim(), dst.dim()),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod props;
#[cfg(test)]
mod tests;
