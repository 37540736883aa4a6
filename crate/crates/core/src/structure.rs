//! Derivation and structure algebras of Jordan superalgebras and superpairs.
//!
//! Every operator space lives concretely inside `End(V)` or
//! `End(V⁺) ⊕ End(V⁻)`, flattened row-major (components concatenated), so
//! membership and inclusion questions are plain subspace computations.

use std::fmt;

use crate::error::{CheckResult, Error, Result, Witness};
use crate::exact::{kernel_from_rref, solve, Matrix, Rational, RowEchelon, SparseVec, Subspace, Vector};
use crate::jordan::JordanAlgebra;
use crate::pair::{JordanPair, Side};
use crate::superspace::{sign, supercommutator, Parity, SuperAlgebra};

pub fn flatten(mats: &[&Matrix]) -> Vector {
    mats.iter().flat_map(|m| m.flat().iter().cloned()).collect()
}

pub fn unflatten(shape: &[usize], v: &[Rational]) -> Vec<Matrix> {
    let mut out = Vec::with_capacity(shape.len());
    let mut at = 0;
    for &n in shape {
        out.push(Matrix::from_flat(n, n, v[at..at + n * n].to_vec()).expect("length matches shape"));
        at += n * n;
    }
    out
}

/// Componentwise supercommutator of flattened operator tuples.
pub fn bracket_flat(shape: &[usize], pa: Parity, a: &[Rational], pb: Parity, b: &[Rational]) -> Vector {
    let ma = unflatten(shape, a);
    let mb = unflatten(shape, b);
    let br: Vec<Matrix> = ma.iter().zip(&mb).map(|(x, y)| supercommutator(x, pa, y, pb)).collect();
    flatten(&br.iter().collect::<Vec<_>>())
}

/// A parity-split subspace of operators (or operator tuples).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSpace {
    label: String,
    shape: Vec<usize>,
    parts: [Subspace; 2],
}

impl OperatorSpace {
    pub fn from_parts(label: impl Into<String>, shape: Vec<usize>, even: Subspace, odd: Subspace) -> Self {
        OperatorSpace { label: label.into(), shape, parts: [even, odd] }
    }

    pub fn span(
        label: impl Into<String>,
        shape: Vec<usize>,
        items: impl IntoIterator<Item = (Parity, Vector)>,
    ) -> Self {
        let ambient: usize = shape.iter().map(|n| n * n).sum();
        let mut ech = [RowEchelon::new(ambient), RowEchelon::new(ambient)];
        for (p, v) in items {
            ech[p.bit() as usize].insert(v);
        }
        let [e, o] = ech;
        let to_sub = |e: RowEchelon| {
            let rows = e.into_rref().into_iter().map(|(_, r)| r.to_dense(ambient));
            Subspace::span(ambient, rows).expect("rows have ambient length")
        };
        OperatorSpace { label: label.into(), shape, parts: [to_sub(e), to_sub(o)] }
    }

    pub fn zero(label: impl Into<String>, shape: Vec<usize>) -> Self {
        Self::span(label, shape, std::iter::empty())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn ambient(&self) -> usize {
        self.parts[0].ambient()
    }

    pub fn part(&self, p: Parity) -> &Subspace {
        &self.parts[p.bit() as usize]
    }

    pub fn dim(&self) -> usize {
        self.parts[0].dim() + self.parts[1].dim()
    }

    /// `(even, odd)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.parts[0].dim(), self.parts[1].dim())
    }

    /// Basis vectors tagged with their parity, even ones first.
    pub fn basis(&self) -> Vec<(Parity, Vector)> {
        [Parity::Even, Parity::Odd]
            .into_iter()
            .flat_map(|p| self.part(p).basis().iter().map(move |b| (p, b.clone())))
            .collect()
    }

    pub fn contains(&self, p: Parity, v: &[Rational]) -> bool {
        self.part(p).contains(v).unwrap_or(false)
    }

    pub fn total(&self) -> Subspace {
        self.parts[0].sum(&self.parts[1]).expect("same ambient")
    }

    fn check_shape(&self, other: &OperatorSpace) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::Dimension(format!(
                "operator spaces {} and {} have shapes {:?} and {:?}",
                self.label, other.label, self.shape, other.shape
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &OperatorSpace, label: impl Into<String>) -> Result<OperatorSpace> {
        self.check_shape(other)?;
        Ok(OperatorSpace {
            label: label.into(),
            shape: self.shape.clone(),
            parts: [self.parts[0].sum(&other.parts[0])?, self.parts[1].sum(&other.parts[1])?],
        })
    }

    pub fn intersect(&self, other: &OperatorSpace, label: impl Into<String>) -> Result<OperatorSpace> {
        self.check_shape(other)?;
        Ok(OperatorSpace {
            label: label.into(),
            shape: self.shape.clone(),
            parts: [self.parts[0].intersect(&other.parts[0])?, self.parts[1].intersect(&other.parts[1])?],
        })
    }

    pub fn is_subspace_of(&self, other: &OperatorSpace) -> Result<bool> {
        self.check_shape(other)?;
        Ok(self.parts[0].is_subspace_of(&other.parts[0])? && self.parts[1].is_subspace_of(&other.parts[1])?)
    }

    pub fn matrices(&self, v: &[Rational]) -> Vec<Matrix> {
        unflatten(&self.shape, v)
    }

    /// Image under a per-element map, keeping parities.
    pub fn map(&self, label: impl Into<String>, shape: Vec<usize>, f: impl Fn(&[Rational]) -> Vector) -> OperatorSpace {
        OperatorSpace::span(label, shape, self.basis().into_iter().map(|(p, v)| (p, f(&v))))
    }
}

impl fmt::Display for OperatorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (e, o) = self.dims();
        write!(f, "{} = ({e}|{o})", self.label)
    }
}

/// `[a, b] ⊆ target`, checked on basis elements.
pub fn check_bracket_into(a: &OperatorSpace, b: &OperatorSpace, target: &OperatorSpace) -> CheckResult {
    let ab = a.basis();
    let bb = b.basis();
    for (i, (pa, x)) in ab.iter().enumerate() {
        for (j, (pb, y)) in bb.iter().enumerate() {
            let br = bracket_flat(&a.shape, *pa, x, *pb, y);
            if !target.contains(*pa + *pb, &br) {
                return Err(Witness::new(
                    [i, j],
                    format!("[{}, {}] leaves {} at basis pair ({i}, {j})", a.label, b.label, target.label),
                ));
            }
        }
    }
    Ok(())
}

pub fn check_closed(s: &OperatorSpace) -> CheckResult {
    check_bracket_into(s, s, s)
}

/// Unknown entries of a tuple of square matrices, restricted to a block pattern.
struct Unknowns {
    shape: Vec<usize>,
    offsets: Vec<usize>,
    index: Vec<Option<usize>>,
    cells: Vec<usize>,
}

impl Unknowns {
    fn new(shape: &[usize], allowed: impl Fn(usize, usize, usize) -> bool) -> Self {
        let mut offsets = Vec::new();
        let mut at = 0;
        for &n in shape {
            offsets.push(at);
            at += n * n;
        }
        let mut index = vec![None; at];
        let mut cells = Vec::new();
        for (c, &n) in shape.iter().enumerate() {
            for r in 0..n {
                for col in 0..n {
                    if allowed(c, r, col) {
                        let flat = offsets[c] + r * n + col;
                        index[flat] = Some(cells.len());
                        cells.push(flat);
                    }
                }
            }
        }
        Unknowns { shape: shape.to_vec(), offsets, index, cells }
    }

    fn get(&self, comp: usize, row: usize, col: usize) -> Option<usize> {
        self.index[self.offsets[comp] + row * self.shape[comp] + col]
    }

    fn len(&self) -> usize {
        self.cells.len()
    }

    fn ambient(&self) -> usize {
        self.index.len()
    }

    fn to_flat(&self, sol: &[Rational]) -> Vector {
        let mut v = vec![Rational::zero(); self.ambient()];
        for (u, x) in sol.iter().enumerate() {
            v[self.cells[u]] = x.clone();
        }
        v
    }
}

/// Homogeneous linear system over the entries of an `Unknowns` pattern.
struct System {
    ech: RowEchelon,
}

impl System {
    fn new(n: usize) -> Self {
        System { ech: RowEchelon::new(n) }
    }

    fn push(&mut self, row: Vec<(usize, Rational)>) {
        if row.is_empty() || self.ech.is_full() {
            return;
        }
        let v = SparseVec::from_pairs(row);
        self.ech.insert_sparse(&v);
    }

    fn solutions(self, unknowns: &Unknowns) -> Vec<Vector> {
        let n = unknowns.len();
        let rref = self.ech.into_rref();
        kernel_from_rref(n, &rref).iter().map(|s| unknowns.to_flat(s)).collect()
    }
}

/// Flattened derivations of parity `p` (and degree shift `zshift`, if given) of
/// any algebra, solving `D(xz) = D(x)z + (-1)^{|D||x|} x D(z)` on basis pairs.
pub fn derivation_solutions(a: &SuperAlgebra, p: Parity, zshift: Option<i32>) -> Vec<Vector> {
    let n = a.dim();
    let unknowns = Unknowns::new(&[n], |_, r, c| {
        a.parity(r) == a.parity(c) + p && zshift.map_or(true, |s| a.zdeg(r) == a.zdeg(c) + s)
    });
    if unknowns.len() == 0 {
        return Vec::new();
    }
    let mut by_right = vec![vec![Vec::new(); n]; n];
    let mut by_left = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            for (k, c) in a.basis_product(i, j).iter() {
                by_right[j][*k].push((i, c.clone()));
                by_left[i][*k].push((j, c.clone()));
            }
        }
    }
    // Supercommutative and super-anticommutative tables only need x <= z.
    let symmetric = matches!(a.kind(), crate::superspace::Kind::Jordan | crate::superspace::Kind::Lie);
    let mut sys = System::new(unknowns.len());
    for x in 0..n {
        let s = sign(p.koszul(a.parity(x)));
        for z in (if symmetric { x } else { 0 })..n {
            for r in 0..n {
                if a.parity(r) != a.parity(x) + a.parity(z) + p {
                    continue;
                }
                if let Some(sh) = zshift {
                    if a.zdeg(r) != a.zdeg(x) + a.zdeg(z) + sh {
                        continue;
                    }
                }
                let mut row = Vec::new();
                for (i, c) in a.basis_product(x, z).iter() {
                    if let Some(u) = unknowns.get(0, r, *i) {
                        row.push((u, c.clone()));
                    }
                }
                for (k, c) in &by_right[z][r] {
                    if let Some(u) = unknowns.get(0, *k, x) {
                        row.push((u, -c));
                    }
                }
                for (k, c) in &by_left[x][r] {
                    if let Some(u) = unknowns.get(0, *k, z) {
                        row.push((u, -(&s * c)));
                    }
                }
                sys.push(row);
            }
        }
    }
    sys.solutions(&unknowns)
}

pub fn der_algebra(v: &JordanAlgebra) -> Result<OperatorSpace> {
    let n = v.dim();
    let items = [Parity::Even, Parity::Odd]
        .into_iter()
        .flat_map(|p| derivation_solutions(v.base(), p, None).into_iter().map(move |d| (p, d)));
    let der = OperatorSpace::span("Der", vec![n], items);
    check_closed(&der).map_err(|w| Error::Internal(format!("Der not closed: {w}")))?;
    Ok(der)
}

/// `span{L_x}`.
pub fn l_space(v: &JordanAlgebra) -> OperatorSpace {
    let n = v.dim();
    OperatorSpace::span("L", vec![n], (0..n).map(|i| (v.parity(i), v.l_basis(i).flat().to_vec())))
}

pub fn inn_algebra(v: &JordanAlgebra) -> Result<OperatorSpace> {
    let n = v.dim();
    let mut items = Vec::new();
    for x in 0..n {
        for y in x..n {
            let (px, py) = (v.parity(x), v.parity(y));
            let br = supercommutator(v.l_basis(x), px, v.l_basis(y), py);
            items.push((px + py, br.into_flat()));
        }
    }
    let inn = OperatorSpace::span("Inn", vec![n], items);
    check_closed(&inn).map_err(|w| Error::Internal(format!("Inn not closed: {w}")))?;
    Ok(inn)
}

pub fn istr_algebra(v: &JordanAlgebra) -> Result<OperatorSpace> {
    let istr = l_space(v).sum(&inn_algebra(v)?, "istr")?;
    check_closed(&istr).map_err(|w| Error::Internal(format!("istr not closed: {w}")))?;
    Ok(istr)
}

pub fn str_algebra(v: &JordanAlgebra) -> Result<OperatorSpace> {
    let s = l_space(v).sum(&der_algebra(v)?, "str")?;
    check_closed(&s).map_err(|w| Error::Internal(format!("str not closed: {w}")))?;
    Ok(s)
}

/// `span{D_{x,y}}`.
pub fn istr_tilde(v: &JordanAlgebra) -> OperatorSpace {
    let n = v.dim();
    let d = v.d_basis();
    let mut items = Vec::new();
    for (x, row) in d.into_iter().enumerate() {
        for (y, m) in row.into_iter().enumerate() {
            items.push((v.parity(x) + v.parity(y), m.into_flat()));
        }
    }
    OperatorSpace::span("istr~", vec![n], items)
}

/// Pair derivations: `D^σ{x,y,z} = {D^σx,y,z} + (-1)^{|x||D|}{x,D^{-σ}y,z} + (-1)^{(|x|+|y|)|D|}{x,y,D^σz}`.
pub fn pair_der(pair: &JordanPair) -> Result<OperatorSpace> {
    let shape = vec![pair.dim(Side::Plus), pair.dim(Side::Minus)];
    let mut items = Vec::new();
    for p in [Parity::Even, Parity::Odd] {
        for sol in pair_derivation_solutions(pair, p) {
            items.push((p, sol));
        }
    }
    let der = OperatorSpace::span("Der(V+,V-)", shape, items);
    check_closed(&der).map_err(|w| Error::Internal(format!("pair derivations not closed: {w}")))?;
    Ok(der)
}

fn pair_derivation_solutions(pair: &JordanPair, p: Parity) -> Vec<Vector> {
    let shape = [pair.dim(Side::Plus), pair.dim(Side::Minus)];
    let sides = [Side::Plus, Side::Minus];
    let unknowns = Unknowns::new(&shape, |c, r, col| {
        let s = sides[c];
        pair.parity(s, r) == pair.parity(s, col) + p
    });
    if unknowns.len() == 0 {
        return Vec::new();
    }
    let mut sys = System::new(unknowns.len());
    for s in Side::BOTH {
        let (c, o) = (s.idx(), s.other().idx());
        let (n, m) = (pair.dim(s), pair.dim(s.other()));
        for x in 0..n {
            let px = pair.parity(s, x);
            let s1 = sign(px.koszul(p));
            for y in 0..m {
                let py = pair.parity(s.other(), y);
                let s2 = sign((px + py).koszul(p));
                let dxy = pair.d_basis(s, x, y);
                for z in 0..n {
                    let t = dxy.column(z);
                    for r in 0..n {
                        if pair.parity(s, r) != px + py + pair.parity(s, z) + p {
                            continue;
                        }
                        let mut row = Vec::new();
                        for (i, ti) in t.iter().enumerate() {
                            if !ti.is_zero() {
                                if let Some(u) = unknowns.get(c, r, i) {
                                    row.push((u, ti.clone()));
                                }
                            }
                        }
                        for k in 0..n {
                            let coef = &pair.d_basis(s, k, y)[(r, z)];
                            if !coef.is_zero() {
                                if let Some(u) = unknowns.get(c, k, x) {
                                    row.push((u, -coef));
                                }
                            }
                            let coef = &dxy[(r, k)];
                            if !coef.is_zero() {
                                if let Some(u) = unknowns.get(c, k, z) {
                                    row.push((u, -(&s2 * coef)));
                                }
                            }
                        }
                        for k in 0..m {
                            let coef = &pair.d_basis(s, x, k)[(r, z)];
                            if !coef.is_zero() {
                                if let Some(u) = unknowns.get(o, k, y) {
                                    row.push((u, -(&s1 * coef)));
                                }
                            }
                        }
                        sys.push(row);
                    }
                }
            }
        }
    }
    sys.solutions(&unknowns)
}

/// `span{𝔻_{x,y}}` for `x ∈ V⁺`, `y ∈ V⁻`.
pub fn pair_inn(pair: &JordanPair) -> Result<OperatorSpace> {
    let shape = vec![pair.dim(Side::Plus), pair.dim(Side::Minus)];
    let mut items = Vec::new();
    for x in 0..pair.dim(Side::Plus) {
        for y in 0..pair.dim(Side::Minus) {
            let (a, b) = pair.inner_basis(x, y);
            let p = pair.parity(Side::Plus, x) + pair.parity(Side::Minus, y);
            items.push((p, flatten(&[&a, &b])));
        }
    }
    let inn = OperatorSpace::span("Inn(V+,V-)", shape, items);
    check_closed(&inn).map_err(|w| Error::Internal(format!("pair inner derivations not closed: {w}")))?;
    Ok(inn)
}

/// Pairs `(X, Y)` satisfying both weakly-structural conditions
/// `U_{X(a),b} + (-1)^{|X||a|} U_{a,X(b)} = X U_{a,b} + (-1)^{|Y|(|a|+|b|)} U_{a,b} Y`
/// and the same with `X` and `Y` exchanged.
pub fn str_w(v: &JordanAlgebra) -> OperatorSpace {
    let n = v.dim();
    let shape = vec![n, n];
    let u: Vec<Vec<Matrix>> =
        (0..n).map(|a| (0..n).map(|b| v.u_matrix(&v.basis_vec(a), &v.basis_vec(b))).collect()).collect();
    let mut items = Vec::new();
    for p in [Parity::Even, Parity::Odd] {
        let unknowns = Unknowns::new(&shape, |_, r, c| v.parity(r) == v.parity(c) + p);
        let mut sys = System::new(unknowns.len());
        for (cx, cy) in [(0usize, 1usize), (1, 0)] {
            for a in 0..n {
                let sa = sign(p.koszul(v.parity(a)));
                for b in 0..n {
                    let sab = sign(p.koszul(v.parity(a) + v.parity(b)));
                    let uab = &u[a][b];
                    for r in 0..n {
                        for z in 0..n {
                            let mut row = Vec::new();
                            // U_{X(a),b} = Σ_k X[k][a] U_{k,b}
                            for k in 0..n {
                                let c = &u[k][b][(r, z)];
                                if !c.is_zero() {
                                    if let Some(t) = unknowns.get(cx, k, a) {
                                        row.push((t, c.clone()));
                                    }
                                }
                                let c = &u[a][k][(r, z)];
                                if !c.is_zero() {
                                    if let Some(t) = unknowns.get(cx, k, b) {
                                        row.push((t, &sa * c));
                                    }
                                }
                                // (X U_{a,b})[r][z] = Σ_k X[r][k] U_{a,b}[k][z]
                                let c = &uab[(k, z)];
                                if !c.is_zero() {
                                    if let Some(t) = unknowns.get(cx, r, k) {
                                        row.push((t, -c));
                                    }
                                }
                                // (U_{a,b} Y)[r][z] = Σ_k U_{a,b}[r][k] Y[k][z]
                                let c = &uab[(r, k)];
                                if !c.is_zero() {
                                    if let Some(t) = unknowns.get(cy, k, z) {
                                        row.push((t, -(&sab * c)));
                                    }
                                }
                            }
                            sys.push(row);
                        }
                    }
                }
            }
        }
        for sol in sys.solutions(&unknowns) {
            items.push((p, sol));
        }
    }
    OperatorSpace::span("str_w", shape, items)
}

/// `(X, Y) ↦ (X, -Y)` on flattened pairs of equal size.
pub fn flip_second(v: &[Rational]) -> Vector {
    let half = v.len() / 2;
    v.iter().enumerate().map(|(i, x)| if i < half { x.clone() } else { -x }).collect()
}

/// `(L_x, -L_x)` for every basis `x`, and `(D, D)` for every basis derivation.
pub fn check_pair_embeddings(v: &JordanAlgebra, der: &OperatorSpace, pair_der: &OperatorSpace) -> CheckResult {
    for i in 0..v.dim() {
        let l = v.l_basis(i);
        let pair = flatten(&[l, &l.scale(&-Rational::one())]);
        if !pair_der.contains(v.parity(i), &pair) {
            return Err(Witness::new(
                [i],
                format!("(L_x, -L_x) is not a pair derivation for x = {}", v.base().label(i)),
            ));
        }
    }
    for (k, (p, d)) in der.basis().into_iter().enumerate() {
        let pair: Vector = d.iter().chain(d.iter()).cloned().collect();
        if !pair_der.contains(p, &pair) {
            return Err(Witness::new([k], "(D, D) is not a pair derivation"));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub name: String,
    pub holds: bool,
    pub strict: bool,
    pub dims: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitalEqualities {
    pub str_is_pair_der: bool,
    pub istr_is_pair_inn: bool,
    pub str_sum_direct: bool,
    pub istr_sum_direct: bool,
    /// Fixed space of the swap inside `Der(V,V)` is exactly `{(D, D)}`.
    pub swap_even_is_der: bool,
    /// The `-1` eigenspace of the swap inside `Der(V,V)` is exactly `{(L_x, -L_x)}`.
    pub swap_odd_is_l: bool,
}

impl UnitalEqualities {
    pub fn all(&self) -> bool {
        self.str_is_pair_der
            && self.istr_is_pair_inn
            && self.str_sum_direct
            && self.istr_sum_direct
            && self.swap_even_is_der
            && self.swap_odd_is_l
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionReport {
    /// Dimension of `span{L_x} ∩ Der(V)`.
    pub l_der_overlap: usize,
    /// A nonzero `L_x` found in `Der(V)`, described with the inner-derivation flag.
    pub overlap_witness: Option<String>,
    pub dims: [(String, usize); 4],
    pub steps: Vec<Step>,
    pub unital: Option<UnitalEqualities>,
}

impl InclusionReport {
    /// The chain hypothesis "no nonzero `L_x` is a derivation". `L_0 = 0` is
    /// always a derivation, so zero operators are excluded.
    pub fn hypothesis_holds(&self) -> bool {
        self.l_der_overlap == 0
    }

    pub fn chain_holds(&self) -> bool {
        self.hypothesis_holds() && self.steps.iter().all(|s| s.holds)
    }
}

/// The four structure algebras of one Jordan superalgebra plus the pair versions.
#[derive(Clone, Debug)]
pub struct StructureData {
    pub der: OperatorSpace,
    pub inn: OperatorSpace,
    pub istr: OperatorSpace,
    pub str_: OperatorSpace,
    pub istr_tilde: OperatorSpace,
    pub str_w: OperatorSpace,
    pub pair_der: OperatorSpace,
    pub pair_inn: OperatorSpace,
}

impl StructureData {
    pub fn compute(v: &JordanAlgebra) -> Result<Self> {
        let pair = JordanPair::doubled(v);
        let der = der_algebra(v)?;
        let inn = inn_algebra(v)?;
        let l = l_space(v);
        let istr = l.sum(&inn, "istr")?;
        let str_ = l.sum(&der, "str")?;
        Ok(StructureData {
            istr_tilde: istr_tilde(v),
            str_w: str_w(v),
            pair_der: pair_der(&pair)?,
            pair_inn: pair_inn(&pair)?,
            der,
            inn,
            istr,
            str_,
        })
    }

    pub fn all(&self) -> [&OperatorSpace; 8] {
        [&self.der, &self.inn, &self.str_, &self.istr, &self.istr_tilde, &self.str_w, &self.pair_der, &self.pair_inn]
    }
}

/// Smallest `x` (free coordinates zero) with `L_x` equal to the given flat operator.
fn l_preimage(v: &JordanAlgebra, op: &[Rational]) -> Option<Vector> {
    let n = v.dim();
    let cols: Vec<Vector> = (0..n).map(|i| v.l_basis(i).flat().to_vec()).collect();
    let m = Matrix::from_columns(n * n, &cols);
    solve(&m, op).ok().flatten()
}

pub fn inclusion_report(v: &JordanAlgebra, data: &StructureData) -> Result<InclusionReport> {
    let n = v.dim();
    let l = l_space(v);
    let overlap = l.intersect(&data.der, "L ∩ Der")?;
    let overlap_witness = overlap.basis().into_iter().next().map(|(p, op)| {
        let x = l_preimage(v, &op).expect("element of span{L}");
        // Any nonzero multiple will do; show the one with leading coefficient 1.
        let lead = x.iter().find(|c| !c.is_zero()).and_then(|c| c.recip()).unwrap_or_else(Rational::one);
        let x: Vector = x.iter().map(|c| c * &lead).collect();
        let place = if data.inn.contains(p, &op) { "Inn(V)" } else { "Der(V)" };
        format!("L_{{{}}} ∈ {place}", v.base().format_vector(&x))
    });
    let dims = [
        ("Inn(V,V)".to_string(), data.pair_inn.dim()),
        ("istr".to_string(), data.istr.dim()),
        ("str".to_string(), data.str_.dim()),
        ("Der(V,V)".to_string(), data.pair_der.dim()),
    ];
    let mut steps = Vec::new();
    if overlap.dim() == 0 {
        // ψ: (A, B) ↦ A
        let psi = data.pair_inn.map("ψ(Inn(V,V))", vec![n], |w| w[..n * n].to_vec());
        steps.push(Step {
            name: "Inn(V,V) ⊆ istr via ψ".into(),
            holds: psi.dim() == data.pair_inn.dim() && psi.is_subspace_of(&data.istr)?,
            strict: psi.dim() < data.istr.dim(),
            dims: (data.pair_inn.dim(), data.istr.dim()),
        });
        steps.push(Step {
            name: "istr ⊆ str".into(),
            holds: data.istr.is_subspace_of(&data.str_)?,
            strict: data.istr.dim() < data.str_.dim(),
            dims: (data.istr.dim(), data.str_.dim()),
        });
        // φ: L_x + D ↦ (L_x + D, -L_x + D), evaluated on the spanning set {L_x} ∪ Der.
        let mut items = Vec::new();
        for i in 0..n {
            let m = v.l_basis(i);
            items.push((v.parity(i), flatten(&[m, &m.scale(&-Rational::one())])));
        }
        for (p, d) in data.der.basis() {
            items.push((p, d.iter().chain(d.iter()).cloned().collect()));
        }
        let phi = OperatorSpace::span("φ(str)", vec![n, n], items);
        steps.push(Step {
            name: "str ⊆ Der(V,V) via φ".into(),
            holds: phi.dim() == data.str_.dim() && phi.is_subspace_of(&data.pair_der)?,
            strict: phi.dim() < data.pair_der.dim(),
            dims: (data.str_.dim(), data.pair_der.dim()),
        });
    }
    let unital = if v.is_unital() {
        let l_inn = l.intersect(&data.inn, "L ∩ Inn")?;
        let swap_fixed = swap_eigenspace(&data.pair_der, false)?;
        let der_diag = data.der.map("(D,D)", vec![n, n], |d| d.iter().chain(d.iter()).cloned().collect());
        let swap_neg = swap_eigenspace(&data.pair_der, true)?;
        let l_anti = l.map("(L,-L)", vec![n, n], |m| m.iter().cloned().chain(m.iter().map(|x| -x)).collect());
        Some(UnitalEqualities {
            str_is_pair_der: data.str_.dims() == data.pair_der.dims(),
            istr_is_pair_inn: data.istr.dims() == data.pair_inn.dims(),
            str_sum_direct: overlap.dim() == 0,
            istr_sum_direct: l_inn.dim() == 0,
            swap_even_is_der: swap_fixed == der_diag.clone().relabel(swap_fixed.label()),
            swap_odd_is_l: swap_neg == l_anti.clone().relabel(swap_neg.label()),
        })
    } else {
        None
    };
    Ok(InclusionReport { l_der_overlap: overlap.dim(), overlap_witness, dims, steps, unital })
}

/// `{(A, B) ∈ s : (B, A) = ±(A, B)}` for pair spaces with equal components.
fn swap_eigenspace(s: &OperatorSpace, negative: bool) -> Result<OperatorSpace> {
    let half = s.ambient() / 2;
    let sgn = if negative { -Rational::one() } else { Rational::one() };
    let mut items = Vec::new();
    for (p, v) in s.basis() {
        // Project onto the eigenspace; the projection stays in s only if s is
        // swap-stable, which is checked below.
        let swapped: Vector = v[half..].iter().chain(v[..half].iter()).cloned().collect();
        let proj: Vector = v.iter().zip(&swapped).map(|(a, b)| (a + &(&sgn * b)) * Rational::new(1, 2)).collect();
        if !s.contains(p, &proj) {
            return Err(Error::Internal("pair derivations are not swap-stable".into()));
        }
        items.push((p, proj));
    }
    Ok(OperatorSpace::span("swap eigenspace", s.shape().to_vec(), items))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superspace::Kind;
    use Parity::Even;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn j19() -> JordanAlgebra {
        let e = vec![(0, 0, 0, q(1, 1)), (0, 1, 1, q(1, 2)), (1, 0, 1, q(1, 2)), (1, 1, 2, q(1, 1))];
        let a = SuperAlgebra::from_entries("j19", vec![Even; 3], None, &e, Kind::Plain)
            .unwrap()
            .with_labels(vec!["e1".into(), "e2".into(), "e3".into()])
            .unwrap();
        JordanAlgebra::new(a).unwrap()
    }

    #[test]
    fn abelian_line_has_full_der() {
        let a = SuperAlgebra::from_entries("line", vec![Even], None, &[], Kind::Plain).unwrap();
        let v = JordanAlgebra::new(a).unwrap();
        assert_eq!(der_algebra(&v).unwrap().dims(), (1, 0));
        assert_eq!(inn_algebra(&v).unwrap().dim(), 0);
        assert_eq!(istr_tilde(&v).dim(), 0);
    }

    #[test]
    fn j19_remark_data() {
        let v = j19();
        let data = StructureData::compute(&v).unwrap();
        assert_eq!(data.istr.dim(), 2);
        assert_eq!(data.str_.dim(), 3);
        assert_eq!(data.pair_inn.dim(), 3);
        assert_eq!(data.pair_der.dim(), 5);
        // diag(0, 2, 1) fails the Leibniz rule on e2 e2 and is not structural at all;
        // diag(0, 1, 2) is the derivation that completes istr to str.
        let wrong = Matrix::from_ints(&[&[0, 0, 0], &[0, 2, 0], &[0, 0, 1]]);
        assert!(!data.str_.contains(Even, wrong.flat()));
        assert!(!data.pair_der.contains(Even, &flatten(&[&wrong, &wrong])));
        let a = Matrix::from_ints(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
        assert!(data.der.contains(Even, a.flat()));
        assert!(!data.istr.contains(Even, a.flat()));
        assert_eq!(
            data.istr.sum(&OperatorSpace::span("A", vec![3], [(Even, a.flat().to_vec())]), "s").unwrap().dims(),
            data.str_.dims()
        );
        let aa = flatten(&[&a, &a]);
        let a_neg = flatten(&[&a, &a.scale(&q(-1, 1))]);
        assert!(data.pair_der.contains(Even, &aa));
        assert!(data.pair_der.contains(Even, &a_neg));
        let extended =
            data.pair_inn.sum(&OperatorSpace::span("AA", vec![3, 3], [(Even, aa), (Even, a_neg)]), "s").unwrap();
        assert_eq!(extended.dims(), data.pair_der.dims());
        let l2 = v.l_basis(1).flat().to_vec();
        assert!(data.inn.contains(Even, &l2));
        let report = inclusion_report(&v, &data).unwrap();
        assert!(!report.hypothesis_holds());
        assert_eq!(report.overlap_witness.as_deref(), Some("L_{e2} ∈ Inn(V)"));
        assert_eq!(str_w(&v).dims(), data.pair_der.dims());
        check_pair_embeddings(&v, &data.der, &data.pair_der).unwrap();
    }

    #[test]
    fn str_w_is_flipped_pair_der() {
        let v = j19();
        let data = StructureData::compute(&v).unwrap();
        let flipped = data.str_w.map("flip", vec![3, 3], flip_second);
        assert_eq!(flipped.relabel(data.pair_der.label()), data.pair_der);
    }
}

#[cfg(test)]
mod props {
    use std::sync::OnceLock;

    use proptest::prelude::*;

    use super::*;
    use crate::catalog::jordan_catalog;
    use crate::exact::{axpy, scale_vec, zero_vec};

    fn cases() -> &'static [(JordanAlgebra, StructureData)] {
        static DATA: OnceLock<Vec<(JordanAlgebra, StructureData)>> = OnceLock::new();
        DATA.get_or_init(|| {
            ["j19", "kacK", "trunc_poly:5", "gl+:1,1", "form:1,2", "dt:2"]
                .iter()
                .map(|n| {
                    let v = jordan_catalog(&n.parse().unwrap()).unwrap();
                    let d = StructureData::compute(&v).unwrap();
                    (v, d)
                })
                .collect()
        })
    }

    /// `c₀ b_i + c₁ b_j` for two basis elements of the same parity, or `None` if empty.
    fn pick(s: &OperatorSpace, p: Parity, i: usize, j: usize, c: (i64, i64)) -> Option<Vector> {
        let b = s.part(p).basis();
        if b.is_empty() {
            return None;
        }
        let mut x = scale_vec(&Rational::from_int(c.0), &b[i % b.len()]);
        axpy(&mut x, &Rational::from_int(c.1), &b[j % b.len()]);
        Some(x)
    }

    prop_compose! {
        fn draw()(a in 0..6usize, p in any::<bool>(), q in any::<bool>(), idx in prop::array::uniform4(0..32usize),
                  c in (-2i64..=2, -2i64..=2), d in (-2i64..=2, -2i64..=2))
                  -> (usize, Parity, Parity, [usize; 4], (i64, i64), (i64, i64)) {
            (a, Parity::from_bit(p as u8), Parity::from_bit(q as u8), idx, c, d)
        }
    }

    fn bracket_lands(
        outer: &OperatorSpace,
        inner: &OperatorSpace,
        target: &OperatorSpace,
        t: &(usize, Parity, Parity, [usize; 4], (i64, i64), (i64, i64)),
    ) -> bool {
        let (_, p, q, idx, c, d) = *t;
        let (Some(x), Some(y)) = (pick(outer, p, idx[0], idx[1], c), pick(inner, q, idx[2], idx[3], d)) else {
            return true;
        };
        target.contains(p + q, &bracket_flat(outer.shape(), p, &x, q, &y))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn inn_is_an_ideal_of_der(t in draw()) {
            let d = &cases()[t.0].1;
            prop_assert!(bracket_lands(&d.der, &d.inn, &d.inn, &t));
        }

        #[test]
        fn istr_is_an_ideal_of_str(t in draw()) {
            let d = &cases()[t.0].1;
            prop_assert!(bracket_lands(&d.str_, &d.istr, &d.istr, &t));
        }

        #[test]
        fn pair_inn_is_an_ideal_of_pair_der(t in draw()) {
            let d = &cases()[t.0].1;
            prop_assert!(bracket_lands(&d.pair_der, &d.pair_inn, &d.pair_inn, &t));
        }

        #[test]
        fn embeddings_into_pair_der(t in draw(), coeffs in prop::collection::vec(-3i64..=3, 12)) {
            let (v, d) = &cases()[t.0];
            let (_, p, _, idx, c, _) = t;
            // x homogeneous of parity p
            let mut x = zero_vec(v.dim());
            for (k, c) in (0..v.dim()).filter(|k| v.parity(*k) == p).zip(&coeffs) {
                axpy(&mut x, &Rational::from_int(*c), &v.basis_vec(k));
            }
            let l = v.l_matrix(&x);
            prop_assert!(d.pair_der.contains(p, &flatten(&[&l, &l.scale(&-Rational::one())])));
            if let Some(dv) = pick(&d.der, p, idx[0], idx[1], c) {
                let m = Matrix::from_flat(v.dim(), v.dim(), dv).unwrap();
                prop_assert!(d.pair_der.contains(p, &flatten(&[&m, &m])));
            }
        }
    }
}
