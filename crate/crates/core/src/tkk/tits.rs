//! The Tits construction `Ti(V, 𝒟, sl₂) = 𝒟 ⊕ sl₂ ⊗ V`.
//!
//! Elements are realized as `(D, v_e, v_f, v_h)` with `D ∈ End(V)` flattened and
//! one copy of `V` per sl₂ basis vector. The Lie basis is `f⊗V`, `𝒟`, `h⊗V`, `e⊗V`.

use super::der::check_derivation;
use super::koecher::{koecher_d, TitsData};
use super::{check_isomorphism, Construction, Origin, TkkAlgebra};
use crate::error::{CheckResult, Error, Result, Witness};
use crate::exact::{axpy, FixedBasis, Matrix, Rational, SparseVec, Vector};
use crate::jordan::JordanAlgebra;
use crate::superspace::{sign, supercommutator, Kind, Parity, SuperAlgebra};

const E: usize = 0;
const F: usize = 1;
const H: usize = 2;

/// sl₂ with basis `e, f, h`, graded by `ad h / 2`.
pub fn sl2() -> SuperAlgebra {
    let two = Rational::from_int(2);
    let entries = [
        (E, F, H, Rational::one()),
        (F, E, H, -Rational::one()),
        (H, E, E, two.clone()),
        (E, H, E, -&two),
        (H, F, F, -&two),
        (F, H, F, two),
    ];
    SuperAlgebra::from_entries("sl2", vec![Parity::Even; 3], Some(vec![1, -1, 0]), &entries, Kind::Lie)
        .and_then(|g| g.with_labels(["e", "f", "h"].map(String::from).to_vec()))
        .expect("sl2 is a Lie algebra")
}

/// `(y, y') = ½ tr(ad y ∘ ad y')` on basis vectors.
pub fn killing_form(g: &SuperAlgebra) -> Matrix {
    let n = g.dim();
    let ad: Vec<Matrix> = (0..n).map(|i| g.left_matrix_basis(i)).collect();
    let half = Rational::new(1, 2);
    let mut k = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            k[(i, j)] = &half * &ad[i].matmul(&ad[j]).expect("square").trace();
        }
    }
    k
}

struct Realization<'a> {
    v: &'a JordanAlgebra,
    y: SuperAlgebra,
    form: Matrix,
}

impl Realization<'_> {
    fn n(&self) -> usize {
        self.v.dim()
    }

    fn ambient(&self) -> usize {
        self.n() * self.n() + 3 * self.n()
    }

    fn part<'b>(&self, w: &'b [Rational], k: usize) -> &'b [Rational] {
        let n = self.n();
        &w[n * n + k * n..n * n + (k + 1) * n]
    }

    fn op(&self, w: &[Rational]) -> Matrix {
        let n = self.n();
        Matrix::from_flat(n, n, w[..n * n].to_vec()).expect("square")
    }

    fn tensor(&self, k: usize, x: &[Rational]) -> Vector {
        let n = self.n();
        let mut out = vec![Rational::zero(); self.ambient()];
        out[n * n + k * n..n * n + (k + 1) * n].clone_from_slice(x);
        out
    }

    /// Bracket of homogeneous elements of parities `pa`, `pb`.
    fn bracket(&self, a: &[Rational], pa: Parity, b: &[Rational], pb: Parity) -> Vector {
        let n = self.n();
        let (da, db) = (self.op(a), self.op(b));
        let mut d = supercommutator(&da, pa, &db, pb);
        let s = sign(pa.koszul(pb));
        let mut out = vec![Rational::zero(); self.ambient()];
        for m in 0..3 {
            let slot = &mut out[n * n + m * n..n * n + (m + 1) * n];
            axpy(slot, &Rational::one(), &da.mul_vec(self.part(b, m)).expect("square"));
            axpy(slot, &-&s, &db.mul_vec(self.part(a, m)).expect("square"));
        }
        for k in 0..3 {
            let x = self.part(a, k);
            if x.iter().all(Rational::is_zero) {
                continue;
            }
            for l in 0..3 {
                let w = self.part(b, l);
                if w.iter().all(Rational::is_zero) {
                    continue;
                }
                let c = &self.form[(k, l)];
                if !c.is_zero() {
                    let ll = supercommutator(&self.v.l_matrix(x), pa, &self.v.l_matrix(w), pb);
                    d = d.add(&ll.scale(c)).expect("square");
                }
                let xw = self.v.mul(x, w);
                for (m, c) in self.y.basis_product(k, l).iter() {
                    axpy(&mut out[n * n + m * n..n * n + (m + 1) * n], c, &xw);
                }
            }
        }
        out[..n * n].clone_from_slice(d.flat());
        out
    }
}

pub fn tits(v: &JordanAlgebra, data: &TitsData) -> Result<TkkAlgebra> {
    let n = v.dim();
    let y = sl2();
    let form = killing_form(&y);
    let r = Realization { v, y, form };
    let ds = data.items();
    let nd = ds.len();
    let mut parity = Vec::new();
    let mut vecs = Vec::new();
    let mut zdeg = Vec::new();
    let mut labels = Vec::new();
    let mut origin = Vec::new();
    let vl = v.base().labels();
    for a in 0..n {
        parity.push(v.parity(a));
        vecs.push(r.tensor(F, &v.basis_vec(a)));
        zdeg.push(-1);
        labels.push(format!("f⊗{}", vl[a]));
        origin.push(Origin::VMinus(a));
    }
    for (i, (p, m)) in ds.iter().enumerate() {
        parity.push(*p);
        let mut w = vec![Rational::zero(); r.ambient()];
        w[..n * n].clone_from_slice(m.flat());
        vecs.push(w);
        zdeg.push(0);
        labels.push(format!("D{}", i + 1));
        origin.push(Origin::Op0(i));
    }
    for a in 0..n {
        parity.push(v.parity(a));
        vecs.push(r.tensor(H, &v.basis_vec(a)));
        zdeg.push(0);
        labels.push(format!("h⊗{}", vl[a]));
        origin.push(Origin::Op0(nd + a));
    }
    for a in 0..n {
        parity.push(v.parity(a));
        vecs.push(r.tensor(E, &v.basis_vec(a)));
        zdeg.push(1);
        labels.push(format!("e⊗{}", vl[a]));
        origin.push(Origin::VPlus(a));
    }
    let basis = FixedBasis::new(r.ambient(), vecs.clone())?;
    let d = vecs.len();
    let mut table = vec![vec![SparseVec::new(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let br = r.bracket(&vecs[i], parity[i], &vecs[j], parity[j]);
            let c = basis.coordinates(&br)?.ok_or_else(|| {
                Error::NotClosed(Witness::new(vec![i, j], format!("[{}, {}] leaves Ti", labels[i], labels[j])))
            })?;
            table[i][j] = SparseVec::from_dense(&c);
        }
    }
    let lie = SuperAlgebra::from_table(
        format!("Ti({}, {}, sl2)", v.name(), data.label()),
        parity,
        Some(zdeg),
        table,
        Kind::Lie,
    )?
    .with_labels(labels)?;
    let zero_vecs = vecs[n..n + nd + n].to_vec();
    Ok(TkkAlgebra {
        lie,
        origin,
        construction: Construction::Ti,
        input: format!("{}, {}", v.name(), data.label()),
        ops: [None, Some(FixedBasis::new(r.ambient(), zero_vecs)?), None],
    })
}

/// `Ti(V, 𝒟, sl₂) → Ko_𝒟(V)`: `e⊗a ↦ a⁺`, `f⊗a ↦ a⁻`, `h⊗a ↦ 2L_a`, `D ↦ D`.
pub fn check_propnu(v: &JordanAlgebra, data: &TitsData) -> Result<CheckResult> {
    let ti = tits(v, data)?;
    let kod = koecher_d(v, data)?;
    // both bases are V⁻, 𝒟, {h⊗a} or {L_a}, V⁺ in the same order
    let d = ti.dim();
    if kod.dim() != d {
        return Ok(Err(Witness::new(Vec::new(), format!("dimensions {} and {} differ", d, kod.dim()))));
    }
    let n = v.dim();
    let nd = data.items().len();
    let mut map = Matrix::identity(d);
    for a in 0..n {
        let i = n + nd + a;
        map[(i, i)] = Rational::from_int(2);
    }
    Ok(check_isomorphism(ti.lie(), kod.lie(), &map))
}

/// Rebuilds `V` from `N = Ti(V, 𝒟, sl₂)` with its sl₂ action `y·(d + y'⊗v) = [y,y']⊗v`:
/// the action is by derivations, `[e⊗a, f⊗b] = (e,f)⟨a,b⟩ + h⊗μ(a,b)` recovers the
/// product of `V` as `μ`, and `⟨a,b⟩` acts as `[L_a, L_b]`.
pub fn tits_roundtrip(v: &JordanAlgebra, data: &TitsData) -> Result<CheckResult> {
    let ti = tits(v, data)?;
    let g = ti.lie();
    let n = v.dim();
    let ds = data.items();
    let nd = ds.len();
    let y = sl2();
    let form = killing_form(&y);
    // positions of y⊗b_a in the Lie basis
    let pos = |k: usize, a: usize| match k {
        F => a,
        H => n + nd + a,
        _ => n + nd + n + a,
    };
    for k in [E, F, H] {
        let mut m = Matrix::zeros(g.dim(), g.dim());
        for l in [E, F, H] {
            for (t, c) in y.basis_product(k, l).iter() {
                for a in 0..n {
                    m[(pos(*t, a), pos(l, a))] = c.clone();
                }
            }
        }
        if let Err(w) = check_derivation(g, &m, Parity::Even) {
            return Ok(Err(Witness::new(
                w.indices,
                format!("{} does not act by derivations: {}", y.label(k), w.detail),
            )));
        }
    }
    let ef = form[(E, F)].recip().ok_or_else(|| Error::Internal("(e, f) = 0".into()))?;
    for a in 0..n {
        for b in 0..n {
            let br = g.basis_product(pos(E, a), pos(F, b)).to_dense(g.dim());
            let mu: Vector = (0..n).map(|c| br[pos(H, c)].clone()).collect();
            if mu != v.mul(&v.basis_vec(a), &v.basis_vec(b)) {
                return Ok(Err(Witness::new(
                    vec![a, b],
                    format!("recovered product of {} and {} differs", v.base().label(a), v.base().label(b)),
                )));
            }
            let mut op = Matrix::zeros(n, n);
            for (i, (_, m)) in ds.iter().enumerate() {
                if !br[n + i].is_zero() {
                    op = op.add(&m.scale(&(&br[n + i] * &ef)))?;
                }
            }
            if op != supercommutator(v.l_basis(a), v.parity(a), v.l_basis(b), v.parity(b)) {
                return Ok(Err(Witness::new(
                    vec![a, b],
                    format!("⟨{}, {}⟩ does not act as [L_a, L_b]", v.base().label(a), v.base().label(b)),
                )));
            }
        }
    }
    Ok(Ok(()))
}
