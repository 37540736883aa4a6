//! The unital equivalences between the constructions, and the report for
//! algebras (like K) where they break down.

use std::collections::BTreeMap;

use super::der::{lie_der_tower, DerTower};
use super::kantor::kantor;
use super::koecher::{koecher_alg, koecher_d, koecher_tilde_alg, TitsData};
use super::tits::tits;
use super::{check_isomorphism, TkkAlgebra};
use crate::error::{CheckResult, Error, Result, Witness};
use crate::exact::{FixedBasis, Matrix, Rational, Vector};
use crate::jordan::JordanAlgebra;
use crate::structure::{flatten, istr_algebra, str_algebra};

/// `ad_i` restricted to degree `from`, landing in degree `to`.
fn restrict(g: &TkkAlgebra, i: usize, from: i32, to: i32) -> Matrix {
    let (src, dst) = (g.degree_indices(from), g.degree_indices(to));
    let mut m = Matrix::zeros(dst.len(), src.len());
    for (c, &z) in src.iter().enumerate() {
        let t = g.lie().basis_product(i, z);
        for (r, &k) in dst.iter().enumerate() {
            m[(r, c)] = t.get(k);
        }
    }
    m
}

fn ko_zero_coords(ko: &TkkAlgebra, plus: &Matrix, minus: &Matrix) -> Result<Option<Vector>> {
    ko.ops(0).expect("Ko keeps its degree-0 realization").coordinates(&flatten(&[plus, minus]))
}

/// Places degree-0 coordinates `c` of `ko` into column `col` of `map`.
fn put_zero(map: &mut Matrix, ko: &TkkAlgebra, col: usize, c: &[Rational]) {
    for (t, &i) in ko.degree_indices(0).iter().enumerate() {
        map[(i, col)] = c[t].clone();
    }
}

/// `Kan(V) → Ko(V)`: identity on `V⁻`, `P ↦ -e⁺/2`, `[L_a, P] ↦ a⁺/2`, and on
/// degree 0 the unique operator pair compatible with those choices.
fn kan_to_ko(v: &JordanAlgebra, kan: &TkkAlgebra, ko: &TkkAlgebra) -> Result<CheckResult> {
    let e = v.unit().ok_or_else(|| Error::NotUnital(v.name().to_string()))?;
    let n = v.dim();
    let half = Rational::new(1, 2);
    let kp = kan.degree_indices(1);
    let mut mplus = Matrix::zeros(n, kp.len());
    for (c, o) in kan.origin()[kan.dim() - kp.len()..].iter().enumerate() {
        let col: Vector = match o {
            super::Origin::KantorP => e.iter().map(|x| -(&half * x)).collect(),
            super::Origin::KantorLP(a) => v.basis_vec(*a).iter().map(|x| &half * x).collect(),
            _ => return Err(Error::Internal("unexpected origin in Kan(V)₊".into())),
        };
        for r in 0..n {
            mplus[(r, c)] = col[r].clone();
        }
    }
    if kp.len() != n {
        return Ok(Err(Witness::new(Vec::new(), format!("Kan(V)₊ has dimension {} but V has {n}", kp.len()))));
    }
    let fb = FixedBasis::new(n, (0..n).map(|c| mplus.column(c)).collect())?;
    let minv = Matrix::from_columns(
        n,
        &(0..n).map(|i| fb.coordinates(&v.basis_vec(i)).map(|c| c.expect("full rank"))).collect::<Result<Vec<_>>>()?,
    );
    let mut map = Matrix::zeros(ko.dim(), kan.dim());
    for a in 0..n {
        map[(a, a)] = Rational::one();
    }
    for i in kan.degree_indices(0) {
        let plus = mplus.matmul(&restrict(kan, i, 1, 1))?.matmul(&minv)?;
        let minus = restrict(kan, i, -1, -1);
        let Some(c) = ko_zero_coords(ko, &plus, &minus)? else {
            return Ok(Err(Witness::new(vec![i], format!("no Ko(V) counterpart for {}", kan.lie().label(i)))));
        };
        put_zero(&mut map, ko, i, &c);
    }
    let kop = ko.degree_indices(1);
    for (c, &i) in kp.iter().enumerate() {
        for r in 0..n {
            map[(kop[r], i)] = mplus[(r, c)].clone();
        }
    }
    Ok(check_isomorphism(kan.lie(), ko.lie(), &map))
}

/// `Ti(V, 𝒟, sl₂) → Ko(V)`: `f⊗a ↦ a⁻`, `e⊗a ↦ a⁺`, `D ↦ (D, D)`, `h⊗a ↦ (2L_a, -2L_a)`.
fn ti_to_ko(v: &JordanAlgebra, data: &TitsData, ko: &TkkAlgebra) -> Result<CheckResult> {
    let ti = tits(v, data)?;
    let n = v.dim();
    let two = Rational::from_int(2);
    let ds = data.items();
    let mut map = Matrix::zeros(ko.dim(), ti.dim());
    for a in 0..n {
        map[(a, a)] = Rational::one();
        map[(ko.dim() - n + a, ti.dim() - n + a)] = Rational::one();
    }
    let mut zero_images: Vec<(Matrix, Matrix)> = ds.iter().map(|(_, m)| (m.clone(), m.clone())).collect();
    zero_images.extend((0..n).map(|a| (v.l_basis(a).scale(&two), v.l_basis(a).scale(&-&two))));
    for (t, (p, m)) in zero_images.iter().enumerate() {
        let Some(c) = ko_zero_coords(ko, p, m)? else {
            return Ok(Err(Witness::new(vec![n + t], format!("{} has no image in Ko(V)", ti.lie().label(n + t)))));
        };
        put_zero(&mut map, ko, n + t, &c);
    }
    Ok(check_isomorphism(ti.lie(), ko.lie(), &map))
}

/// `Ko_𝒟(V) → Ko(V)` for `𝒟 = Inn(V)`: `(D, x) ↦ (D + L_x, D - L_x)`.
fn kod_to_ko(v: &JordanAlgebra, data: &TitsData, ko: &TkkAlgebra) -> Result<CheckResult> {
    let kod = koecher_d(v, data)?;
    let n = v.dim();
    let mut map = Matrix::zeros(ko.dim(), kod.dim());
    for a in 0..n {
        map[(a, a)] = Rational::one();
        map[(ko.dim() - n + a, kod.dim() - n + a)] = Rational::one();
    }
    let basis = kod.ops(0).expect("Ko_D keeps its degree-0 realization");
    for (t, w) in basis.vectors().iter().enumerate() {
        let d = Matrix::from_flat(n, n, w[..n * n].to_vec())?;
        let l = v.l_matrix(&w[n * n..]);
        let Some(c) = ko_zero_coords(ko, &d.add(&l)?, &d.sub(&l)?)? else {
            return Ok(Err(Witness::new(vec![n + t], "degree-0 element of Ko_D has no image in Ko(V)")));
        };
        put_zero(&mut map, ko, n + t, &c);
    }
    Ok(check_isomorphism(kod.lie(), ko.lie(), &map))
}

fn graded_parity(t: &TkkAlgebra) -> BTreeMap<i32, (usize, usize)> {
    let [m, z, p] = t.graded_parity_dims();
    BTreeMap::from([(-1, m), (0, z), (1, p)])
}

#[derive(Clone, Debug)]
pub struct UnitalReport {
    pub kan_ko: CheckResult,
    pub ti_ko: CheckResult,
    pub kod_inn_ko: CheckResult,
    pub tower: DerTower,
    /// `Ko~(V)` dims per degree, to compare with `Der(Ko(V))` per shift.
    pub tilde_dims: BTreeMap<i32, (usize, usize)>,
    pub str_dims: (usize, usize),
    pub istr_dims: (usize, usize),
    pub v_dim: usize,
}

impl UnitalReport {
    pub fn outer_shifts_vanish(&self) -> bool {
        self.tower.der_at(-2) == (0, 0) && self.tower.der_at(2) == (0, 0)
    }

    pub fn shift_one_is_v(&self) -> bool {
        [-1, 1].iter().all(|s| {
            let (e, o) = self.tower.der_at(*s);
            e + o == self.v_dim
        })
    }

    pub fn der_is_tilde(&self) -> bool {
        (-2..=2).all(|s| self.tower.der_at(s) == self.tilde_dims.get(&s).copied().unwrap_or((0, 0)))
    }

    pub fn out_zero_is_str_mod_istr(&self) -> bool {
        self.tower.out_at(0) == (self.str_dims.0 - self.istr_dims.0, self.str_dims.1 - self.istr_dims.1)
    }

    pub fn all_pass(&self) -> bool {
        self.kan_ko.is_ok()
            && self.ti_ko.is_ok()
            && self.kod_inn_ko.is_ok()
            && self.outer_shifts_vanish()
            && self.shift_one_is_v()
            && self.der_is_tilde()
            && self.out_zero_is_str_mod_istr()
    }
}

/// All equivalences that need a unit. Refuses non-unital input; see
/// [`counterexample_report`] for those.
pub fn check_unital_equivalences(v: &JordanAlgebra) -> Result<UnitalReport> {
    if !v.is_unital() {
        return Err(Error::NotUnital(format!("{} has no unit; use the counterexample report", v.name())));
    }
    let ko = koecher_alg(v)?;
    let kan = kantor(v)?;
    let inn = TitsData::inn(v)?;
    let tilde = koecher_tilde_alg(v)?;
    let s = str_algebra(v)?.dims();
    let i = istr_algebra(v)?.dims();
    Ok(UnitalReport {
        kan_ko: kan_to_ko(v, &kan, &ko)?,
        ti_ko: ti_to_ko(v, &inn, &ko)?,
        kod_inn_ko: kod_to_ko(v, &inn, &ko)?,
        tower: lie_der_tower(ko.lie()),
        tilde_dims: graded_parity(&tilde),
        str_dims: s,
        istr_dims: i,
        v_dim: v.dim(),
    })
}

#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    pub v_dim: usize,
    pub kan_dims: [usize; 3],
    pub ko_dims: [usize; 3],
    pub ko_tower: DerTower,
    pub tilde_dims: BTreeMap<i32, (usize, usize)>,
    pub tilde_tower: DerTower,
}

impl CounterexampleReport {
    pub fn kan_plus_dim(&self) -> usize {
        self.kan_dims[2]
    }

    /// `Kan(V) ≇ Ko(V)`, established by graded dimension.
    pub fn kan_differs(&self) -> bool {
        self.kan_dims != self.ko_dims
    }

    pub fn der_is_tilde(&self) -> bool {
        (-2..=2).all(|s| self.ko_tower.der_at(s) == self.tilde_dims.get(&s).copied().unwrap_or((0, 0)))
    }

    pub fn tilde_out_vanishes(&self) -> bool {
        self.tilde_tower.out_dim() == 0
    }
}

/// What the constructions do on a (typically non-unital) algebra.
pub fn counterexample_report(v: &JordanAlgebra) -> Result<CounterexampleReport> {
    let kan = kantor(v)?;
    let ko = koecher_alg(v)?;
    let tilde = koecher_tilde_alg(v)?;
    Ok(CounterexampleReport {
        v_dim: v.dim(),
        kan_dims: kan.graded_dims(),
        ko_dims: ko.graded_dims(),
        ko_tower: lie_der_tower(ko.lie()),
        tilde_dims: graded_parity(&tilde),
        tilde_tower: lie_der_tower(tilde.lie()),
    })
}
