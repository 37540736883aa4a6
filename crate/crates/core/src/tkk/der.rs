//! Derivations of ℤ-graded Lie superalgebras, split by degree shift and parity.

use std::collections::BTreeMap;

use crate::error::{CheckResult, Witness};
use crate::exact::{Matrix, RowEchelon, Subspace};
use crate::structure::{derivation_solutions, OperatorSpace};
use crate::superspace::{center, derived, parity_dims, sign, Parity, SuperAlgebra};

/// `m[b_i, b_j] = [m b_i, b_j] + (-1)^{|m||i|}[b_i, m b_j]` on all basis pairs.
pub fn check_derivation(g: &SuperAlgebra, m: &Matrix, p: Parity) -> CheckResult {
    let d = g.dim();
    let cols: Vec<_> = (0..d).map(|i| m.column(i)).collect();
    for i in 0..d {
        let s = sign(p.koszul(g.parity(i)));
        for j in 0..d {
            let lhs = m.mul_vec(&g.basis_product(i, j).to_dense(d)).expect("square");
            let mut rhs = g.mul(&cols[i], &g.basis_vec(j));
            let t = g.mul(&g.basis_vec(i), &cols[j]);
            crate::exact::axpy(&mut rhs, &s, &t);
            if lhs != rhs {
                return Err(Witness::new(
                    vec![i, j],
                    format!("Leibniz rule fails on ({}, {})", g.label(i), g.label(j)),
                ));
            }
        }
    }
    Ok(())
}

/// `Der(g)`, `Inn(g) = ad(g)` and `Out(g)` by degree shift; shifts outside
/// `−2..=2` are empty for a 3-graded `g`.
#[derive(Clone, Debug)]
pub struct DerTower {
    pub der: OperatorSpace,
    /// `(even, odd)` dimensions of `Der(g)`, `Inn(g)`, `Out(g)` per shift.
    pub der_dims: BTreeMap<i32, (usize, usize)>,
    pub inn_dims: BTreeMap<i32, (usize, usize)>,
    pub out_dims: BTreeMap<i32, (usize, usize)>,
}

impl DerTower {
    pub fn der_dim(&self) -> usize {
        self.der_dims.values().map(|(e, o)| e + o).sum()
    }

    pub fn inn_dim(&self) -> usize {
        self.inn_dims.values().map(|(e, o)| e + o).sum()
    }

    pub fn out_dim(&self) -> usize {
        self.out_dims.values().map(|(e, o)| e + o).sum()
    }

    pub fn out_total(&self) -> (usize, usize) {
        self.out_dims.values().fold((0, 0), |(a, b), (e, o)| (a + e, b + o))
    }

    /// Shifts with nonzero `Out`.
    pub fn out_support(&self) -> BTreeMap<i32, (usize, usize)> {
        self.out_dims.iter().filter(|(_, d)| **d != (0, 0)).map(|(s, d)| (*s, *d)).collect()
    }

    pub fn der_at(&self, shift: i32) -> (usize, usize) {
        self.der_dims.get(&shift).copied().unwrap_or((0, 0))
    }

    pub fn out_at(&self, shift: i32) -> (usize, usize) {
        self.out_dims.get(&shift).copied().unwrap_or((0, 0))
    }
}

fn ad_dim(g: &SuperAlgebra, shift: Option<i32>, p: Parity) -> usize {
    let d = g.dim();
    let mut ech = RowEchelon::new(d * d);
    for i in 0..d {
        if g.parity(i) == p && shift.map_or(true, |s| g.zdeg(i) == s) {
            ech.insert(g.left_matrix_basis(i).into_flat());
        }
    }
    ech.rank()
}

/// The derivation tower of `g`. Without a ℤ-grading everything sits at shift 0.
pub fn lie_der_tower(g: &SuperAlgebra) -> DerTower {
    let d = g.dim();
    let shifts: Vec<Option<i32>> = if g.zdegrees().is_some() { (-2..=2).map(Some).collect() } else { vec![None] };
    let mut items = Vec::new();
    let (mut der_dims, mut inn_dims, mut out_dims) = (BTreeMap::new(), BTreeMap::new(), BTreeMap::new());
    for s in shifts {
        let key = s.unwrap_or(0);
        let mut dims = [[0usize; 2]; 2];
        for p in [Parity::Even, Parity::Odd] {
            let sols = derivation_solutions(g, p, s);
            dims[0][p.bit() as usize] = sols.len();
            dims[1][p.bit() as usize] = ad_dim(g, s, p);
            items.extend(sols.into_iter().map(|v| (p, v)));
        }
        der_dims.insert(key, (dims[0][0], dims[0][1]));
        inn_dims.insert(key, (dims[1][0], dims[1][1]));
        out_dims.insert(key, (dims[0][0] - dims[1][0], dims[0][1] - dims[1][1]));
    }
    let der = OperatorSpace::span(format!("Der({})", g.name()), vec![d], items);
    DerTower { der, der_dims, inn_dims, out_dims }
}

fn split_dims(g: &SuperAlgebra, s: &Subspace) -> (usize, usize) {
    let odd = s.basis().iter().filter(|b| g.parity_of(b) == Some(Parity::Odd)).count();
    (s.dim() - odd, odd)
}

/// Structural invariants used as isomorphism evidence. Two algebras with equal
/// fingerprints are only "consistent with" being isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Fingerprint {
    pub dims: (usize, usize),
    pub center: (usize, usize),
    pub derived: (usize, usize),
    pub der: (usize, usize),
    pub out: (usize, usize),
    /// Per `(degree, parity bit)` when `g` is ℤ-graded.
    pub graded: Option<BTreeMap<String, usize>>,
}

impl Fingerprint {
    /// Agreement on everything that does not depend on a grading.
    pub fn consistent_with(&self, other: &Fingerprint) -> bool {
        (self.dims, self.center, self.derived, self.der, self.out)
            == (other.dims, other.center, other.derived, other.der, other.out)
    }
}

pub fn fingerprint(g: &SuperAlgebra) -> Fingerprint {
    let tower = lie_der_tower(g);
    let der = tower.der_dims.values().fold((0, 0), |(a, b), (e, o)| (a + e, b + o));
    let graded = g.zdegrees().map(|_| {
        crate::superspace::graded_dims(g)
            .into_iter()
            .map(|((z, p), n)| (format!("{z}{}", if p.is_odd() { "|odd" } else { "|even" }), n))
            .collect()
    });
    Fingerprint {
        dims: parity_dims(g),
        center: split_dims(g, &center(g)),
        derived: split_dims(g, &derived(g)),
        der,
        out: tower.out_total(),
        graded,
    }
}
