use super::{check_homomorphism, Construction, Graded3, Origin, TkkAlgebra};
use crate::error::{CheckResult, Error, Result, Witness};
use crate::exact::{unit_vec, FixedBasis, Matrix, Rational, Subspace, Vector};
use crate::jordan::JordanAlgebra;
use crate::pair::{JordanPair, Side};
use crate::structure::{
    bracket_flat, check_closed, der_algebra, flatten, inn_algebra, pair_der, pair_inn, unflatten, OperatorSpace,
};
use crate::superspace::{sign, supercommutator, Parity};

fn coords(basis: &FixedBasis, v: &[Rational], what: &str) -> Result<Vector> {
    basis.coordinates(v)?.ok_or_else(|| Error::NotClosed(Witness::new([], format!("{what} leaves degree 0"))))
}

fn pair_labels(pair: &JordanPair, labels: Option<&[String]>) -> [Vec<String>; 2] {
    Side::BOTH.map(|s| {
        (0..pair.dim(s))
            .map(|i| match labels {
                Some(l) => format!("{}{}", l[i], s.symbol()),
                None => format!("v{i}{}", s.symbol()),
            })
            .collect()
    })
}

/// `V⁺ ⊕ g₀ ⊕ V⁻` with `g₀ ⊆ Der(V⁺, V⁻)` containing all `𝔻_{x,u}`.
fn koecher_with(
    pair: &JordanPair,
    g0: &OperatorSpace,
    labels: Option<&[String]>,
    construction: Construction,
) -> Result<TkkAlgebra> {
    let shape = g0.shape().to_vec();
    let items = g0.basis();
    let basis = FixedBasis::new(g0.ambient(), items.iter().map(|(_, v)| v.clone()).collect())?;
    let zero: Vec<Parity> = items.iter().map(|(p, _)| *p).collect();
    let nz = zero.len();
    let mut zero_bracket = vec![vec![Vec::new(); nz]; nz];
    for a in 0..nz {
        for b in a..nz {
            let br = bracket_flat(&shape, zero[a], &items[a].1, zero[b], &items[b].1);
            zero_bracket[a][b] = coords(&basis, &br, "a degree-0 bracket")?;
        }
    }
    let mats: Vec<Vec<Matrix>> = items.iter().map(|(_, v)| unflatten(&shape, v)).collect();
    let (np, nm) = (pair.dim(Side::Plus), pair.dim(Side::Minus));
    let mut pairs = vec![vec![Vec::new(); nm]; np];
    for (x, row) in pairs.iter_mut().enumerate() {
        for (u, slot) in row.iter_mut().enumerate() {
            let (a, b) = pair.inner_basis(x, u);
            *slot = coords(&basis, &flatten(&[&a, &b]), "[x, u]")?;
        }
    }
    let [lp, lm] = pair_labels(pair, labels);
    let tag = match construction {
        Construction::KoTilde => "Ko~",
        _ => "Ko",
    };
    let parts = Graded3 {
        minus: pair.parities(Side::Minus).to_vec(),
        zero: zero.clone(),
        plus: pair.parities(Side::Plus).to_vec(),
        zero_bracket,
        act_minus: mats.iter().map(|m| m[1].clone()).collect(),
        act_plus: mats.iter().map(|m| m[0].clone()).collect(),
        pair: pairs,
        labels: [lm, (0..nz).map(|i| format!("d{}", i + 1)).collect(), lp],
    };
    let lie = parts.assemble(format!("{tag}({})", pair.name()))?;
    let origin =
        (0..nm).map(Origin::VMinus).chain((0..nz).map(Origin::Op0)).chain((0..np).map(Origin::VPlus)).collect();
    Ok(TkkAlgebra { lie, origin, construction, input: pair.name().to_string(), ops: [None, Some(basis), None] })
}

pub fn koecher(pair: &JordanPair) -> Result<TkkAlgebra> {
    koecher_with(pair, &pair_inn(pair)?, None, Construction::Ko)
}

pub fn koecher_tilde(pair: &JordanPair) -> Result<TkkAlgebra> {
    koecher_with(pair, &pair_der(pair)?, None, Construction::KoTilde)
}

/// `Ko(V, V)`.
pub fn koecher_alg(v: &JordanAlgebra) -> Result<TkkAlgebra> {
    let pair = JordanPair::doubled(v);
    let mut t = koecher_with(&pair, &pair_inn(&pair)?, Some(v.base().labels()), Construction::Ko)?;
    t.input = v.name().to_string();
    Ok(t)
}

/// `Ko~(V, V)`.
pub fn koecher_tilde_alg(v: &JordanAlgebra) -> Result<TkkAlgebra> {
    let pair = JordanPair::doubled(v);
    let mut t = koecher_with(&pair, &pair_der(&pair)?, Some(v.base().labels()), Construction::KoTilde)?;
    t.input = v.name().to_string();
    Ok(t)
}

/// `Ko(V⁺,V⁻)` embeds into `Ko~(V⁺,V⁻)` (identity on `V^±`, inclusion
/// `Inn ⊆ Der` in degree 0) and the image is an ideal.
pub fn check_ideal_in_tilde(ko: &TkkAlgebra, tilde: &TkkAlgebra) -> Result<CheckResult> {
    let (Some(inn), Some(der)) = (ko.ops(0), tilde.ops(0)) else {
        return Err(Error::Internal("degree-0 realizations missing".into()));
    };
    let [nm, nz, np] = ko.graded_dims();
    let [tm, tz, tp] = tilde.graded_dims();
    if (nm, np) != (tm, tp) {
        return Err(Error::Dimension("Ko and Ko~ differ outside degree 0".into()));
    }
    let mut map = Matrix::zeros(tilde.dim(), ko.dim());
    for i in 0..nm {
        map.set(i, i, Rational::one())?;
    }
    for (a, v) in inn.vectors().iter().enumerate() {
        let c = der.coordinates(v)?.ok_or_else(|| Error::Internal("Inn(V⁺,V⁻) is not inside Der(V⁺,V⁻)".into()))?;
        for (b, x) in c.into_iter().enumerate() {
            map.set(tm + b, nm + a, x)?;
        }
    }
    for k in 0..np {
        map.set(tm + tz + k, nm + nz + k, Rational::one())?;
    }
    if let Err(w) = check_homomorphism(ko.lie(), tilde.lie(), &map) {
        return Ok(Err(w));
    }
    let image = Subspace::span(tilde.dim(), (0..ko.dim()).map(|i| map.column(i)))?;
    if image.dim() != ko.dim() {
        return Ok(Err(Witness::new([], "embedding is not injective")));
    }
    Ok(tilde.lie().check_ideal(&image))
}

/// A Lie superalgebra `𝒟 ⊆ End(V)` with `Inn(V) ⊆ 𝒟 ⊆ Der(V)`; `ψ` is the inclusion.
#[derive(Clone, Debug)]
pub struct TitsData {
    space: OperatorSpace,
}

impl TitsData {
    pub fn new(v: &JordanAlgebra, space: OperatorSpace) -> Result<Self> {
        let n = v.dim();
        if space.shape() != [n] {
            return Err(Error::InvalidContainer(format!("{} does not live in End(V)", space.label())));
        }
        check_closed(&space)
            .map_err(|w| Error::InvalidContainer(format!("{} is not closed under the bracket: {w}", space.label())))?;
        if !inn_algebra(v)?.is_subspace_of(&space)? {
            return Err(Error::InvalidContainer(format!("{} does not contain Inn(V)", space.label())));
        }
        if !space.is_subspace_of(&der_algebra(v)?)? {
            return Err(Error::InvalidContainer(format!("{} is not inside Der(V)", space.label())));
        }
        Ok(TitsData { space })
    }

    pub fn inn(v: &JordanAlgebra) -> Result<Self> {
        Self::new(v, inn_algebra(v)?)
    }

    pub fn der(v: &JordanAlgebra) -> Result<Self> {
        Self::new(v, der_algebra(v)?)
    }

    pub fn space(&self) -> &OperatorSpace {
        &self.space
    }

    pub fn label(&self) -> &str {
        self.space.label()
    }

    pub(crate) fn items(&self) -> Vec<(Parity, Matrix)> {
        let n = self.space.shape()[0];
        self.space.basis().into_iter().map(|(p, v)| (p, Matrix::from_flat(n, n, v).expect("square"))).collect()
    }
}

/// `Ko_𝒟(V) = V ⊕ 𝒟~ ⊕ V` where `𝒟~ = 𝒟 ⊕ {L_x}` keeps the `L_x` as a formal
/// copy of `V`. Degree-0 elements are realized as `(flat D, x)`.
pub fn koecher_d(v: &JordanAlgebra, data: &TitsData) -> Result<TkkAlgebra> {
    let n = v.dim();
    let ds = data.items();
    let nd = ds.len();
    let amb = n * n + n;
    let embed = |d: Option<&Matrix>, x: Option<&[Rational]>| -> Vector {
        let mut out = match d {
            Some(m) => m.flat().to_vec(),
            None => vec![Rational::zero(); n * n],
        };
        match x {
            Some(x) => out.extend_from_slice(x),
            None => out.extend(std::iter::repeat(Rational::zero()).take(n)),
        }
        out
    };
    let mut zero: Vec<Parity> = ds.iter().map(|(p, _)| *p).collect();
    zero.extend((0..n).map(|i| v.parity(i)));
    let mut vecs: Vec<Vector> = ds.iter().map(|(_, m)| embed(Some(m), None)).collect();
    vecs.extend((0..n).map(|i| embed(None, Some(&unit_vec(n, i)))));
    let basis = FixedBasis::new(amb, vecs.clone())?;
    // the operator part and the formal part of each degree-0 basis element
    let split = |w: &[Rational]| (Matrix::from_flat(n, n, w[..n * n].to_vec()).expect("square"), w[n * n..].to_vec());
    let nz = nd + n;
    let mut zero_bracket = vec![vec![Vec::new(); nz]; nz];
    for a in 0..nz {
        for b in a..nz {
            let (pa, pb) = (zero[a], zero[b]);
            let ((d1, x1), (d2, x2)) = (split(&vecs[a]), split(&vecs[b]));
            // [(D1,x1),(D2,x2)] = ([D1,D2] + [L_x1,L_x2], D1 x2 - (-1)^{|D2||x1|} D2 x1)
            let ops =
                supercommutator(&d1, pa, &d2, pb).add(&supercommutator(&v.l_matrix(&x1), pa, &v.l_matrix(&x2), pb))?;
            let mut x = d1.mul_vec(&x2)?;
            let t = d2.mul_vec(&x1)?;
            let s = sign(pb.koszul(pa));
            for (xi, ti) in x.iter_mut().zip(&t) {
                *xi -= &s * ti;
            }
            zero_bracket[a][b] = coords(&basis, &embed(Some(&ops), Some(&x)), "a 𝒟~ bracket")?;
        }
    }
    // ψ~(D + L_x) = (D + L_x, D - L_x)
    let mut act_plus = Vec::with_capacity(nz);
    let mut act_minus = Vec::with_capacity(nz);
    for w in &vecs {
        let (d, x) = split(w);
        let l = v.l_matrix(&x);
        act_plus.push(d.add(&l)?);
        act_minus.push(d.sub(&l)?);
    }
    // [x, u] = 2 L_{xu} + 2 [L_x, L_u]
    let two = Rational::from_int(2);
    let mut pairs = vec![vec![Vec::new(); n]; n];
    for (x, row) in pairs.iter_mut().enumerate() {
        for (u, slot) in row.iter_mut().enumerate() {
            let (px, pu) = (v.parity(x), v.parity(u));
            let br = supercommutator(v.l_basis(x), px, v.l_basis(u), pu).scale(&two);
            let xu: Vector = v.mul(&unit_vec(n, x), &unit_vec(n, u)).iter().map(|c| c * &two).collect();
            *slot = coords(&basis, &embed(Some(&br), Some(&xu)), "[x, u]")?;
        }
    }
    let labels = v.base().labels();
    let mut zl: Vec<String> = (0..nd).map(|i| format!("D{}", i + 1)).collect();
    zl.extend(labels.iter().map(|l| format!("L_{l}")));
    let parts = Graded3 {
        minus: v.base().parities().to_vec(),
        zero,
        plus: v.base().parities().to_vec(),
        zero_bracket,
        act_minus,
        act_plus,
        pair: pairs,
        labels: [
            labels.iter().map(|l| format!("{l}-")).collect(),
            zl,
            labels.iter().map(|l| format!("{l}+")).collect(),
        ],
    };
    let lie = parts.assemble(format!("Ko_{}({})", data.label(), v.name()))?;
    let origin = (0..n).map(Origin::VMinus).chain((0..nz).map(Origin::Op0)).chain((0..n).map(Origin::VPlus)).collect();
    Ok(TkkAlgebra {
        lie,
        origin,
        construction: Construction::KoD,
        input: format!("{}, {}", v.name(), data.label()),
        ops: [None, Some(basis), None],
    })
}
