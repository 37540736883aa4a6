//! Kantor's construction: `g₋ = V`, `g₀ = istr(V)`, `g₊ = span{P, [L_a, P]}`
//! inside `Hom(V⊗V, V)`. A bilinear map `B` is flattened with `B(b_x, b_y)`
//! having its `b_z` coefficient at `(x·n + y)·n + z`.

use super::{Construction, Graded3, Origin, TkkAlgebra};
use crate::error::{CheckResult, Error, Result, Witness};
use crate::exact::{is_zero_vec, FixedBasis, Matrix, Rational, RowEchelon, Vector};
use crate::jordan::JordanAlgebra;
use crate::structure::{bracket_flat, inn_algebra, istr_algebra, l_space};
use crate::superspace::{sign, supercommutator, Parity};

fn product_map(v: &JordanAlgebra) -> Vector {
    let n = v.dim();
    let mut out = vec![Rational::zero(); n * n * n];
    for x in 0..n {
        for y in 0..n {
            for (z, c) in v.base().basis_product(x, y).iter() {
                out[(x * n + y) * n + z] = c.clone();
            }
        }
    }
    out
}

/// `[A, B](x, y) = A B(x,y) - (-1)^{|A||B|} (B(Ax, y) + (-1)^{|A||x|} B(x, Ay))`.
fn act(v: &JordanAlgebra, a: &Matrix, pa: Parity, b: &[Rational], pb: Parity) -> Vector {
    let n = v.dim();
    let at = |x: usize, y: usize, z: usize| &b[(x * n + y) * n + z];
    let s = sign(pa.koszul(pb));
    let mut out = vec![Rational::zero(); n * n * n];
    for x in 0..n {
        let sx = &s * &sign(pa.koszul(v.parity(x)));
        for y in 0..n {
            for z in 0..n {
                let mut acc = Rational::zero();
                for k in 0..n {
                    let bxy = at(x, y, k);
                    if !bxy.is_zero() {
                        acc += &a[(z, k)] * bxy;
                    }
                    let ax = &a[(k, x)];
                    if !ax.is_zero() {
                        acc -= &(&s * ax) * at(k, y, z);
                    }
                    let ay = &a[(k, y)];
                    if !ay.is_zero() {
                        acc -= &(&sx * ay) * at(x, k, z);
                    }
                }
                out[(x * n + y) * n + z] = acc;
            }
        }
    }
    out
}

/// `[B, x]`: the operator `y ↦ B(x, y)`.
fn contract(n: usize, b: &[Rational], x: &[Rational]) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for (xi, c) in x.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for y in 0..n {
            for z in 0..n {
                let t = &b[(xi * n + y) * n + z];
                if !t.is_zero() {
                    m[(z, y)] += &(c * t);
                }
            }
        }
    }
    m
}

fn lp(v: &JordanAlgebra, a: &[Rational]) -> Result<Vector> {
    let pa = v.base().parity_of(a).unwrap_or(Parity::Even);
    Ok(act(v, &v.l_matrix(a), pa, &product_map(v), Parity::Even))
}

pub fn kantor(v: &JordanAlgebra) -> Result<TkkAlgebra> {
    let n = v.dim();
    let istr = istr_algebra(v)?;
    let zero_items = istr.basis();
    let zero: Vec<Parity> = zero_items.iter().map(|(p, _)| *p).collect();
    let g0 = FixedBasis::new(n * n, zero_items.iter().map(|(_, x)| x.clone()).collect())?;
    let g0_mats: Vec<Matrix> =
        zero_items.iter().map(|(_, x)| Matrix::from_flat(n, n, x.clone()).expect("square")).collect();

    // P first, then whichever [L_a, P] are new
    let mut ech = RowEchelon::new(n * n * n);
    let mut plus = Vec::new();
    let mut plus_vecs = Vec::new();
    let mut plus_origin = Vec::new();
    let p = product_map(v);
    if ech.insert(p.clone()) {
        plus.push(Parity::Even);
        plus_vecs.push(p);
        plus_origin.push(Origin::KantorP);
    }
    for a in 0..n {
        let w = lp(v, &v.basis_vec(a))?;
        if ech.insert(w.clone()) {
            plus.push(v.parity(a));
            plus_vecs.push(w);
            plus_origin.push(Origin::KantorLP(a));
        }
    }
    let g1 = FixedBasis::new(n * n * n, plus_vecs.clone())?;

    let nz = zero.len();
    let mut zero_bracket = vec![vec![Vec::new(); nz]; nz];
    for a in 0..nz {
        for b in a..nz {
            let br = bracket_flat(&[n], zero[a], &zero_items[a].1, zero[b], &zero_items[b].1);
            zero_bracket[a][b] = g0.coordinates(&br)?.ok_or_else(|| Error::Internal("istr(V) is not closed".into()))?;
        }
    }
    let mut act_plus = Vec::with_capacity(nz);
    for (a, m) in g0_mats.iter().enumerate() {
        let cols: Vec<Vector> = plus_vecs
            .iter()
            .zip(&plus)
            .map(|(b, pb)| {
                g1.coordinates(&act(v, m, zero[a], b, *pb))?.ok_or_else(|| {
                    Error::NotClosed(Witness::new(vec![a], "istr(V) does not preserve span{P, [L_a, P]}"))
                })
            })
            .collect::<Result<_>>()?;
        act_plus.push(Matrix::from_columns(plus.len(), &cols));
    }
    let mut pair = vec![vec![Vec::new(); n]; plus.len()];
    for (k, row) in pair.iter_mut().enumerate() {
        for (l, slot) in row.iter_mut().enumerate() {
            let m = contract(n, &plus_vecs[k], &v.basis_vec(l));
            *slot = g0
                .coordinates(m.flat())?
                .ok_or_else(|| Error::NotClosed(Witness::new(vec![k, l], "[g₊, V] leaves istr(V)")))?;
        }
    }
    let labels = v.base().labels();
    let plus_labels = plus_origin
        .iter()
        .map(|o| match o {
            Origin::KantorLP(a) => format!("[L_{},P]", labels[*a]),
            _ => "P".to_string(),
        })
        .collect();
    let parts = Graded3 {
        minus: v.base().parities().to_vec(),
        zero: zero.clone(),
        plus: plus.clone(),
        zero_bracket,
        act_minus: g0_mats,
        act_plus,
        pair,
        labels: [labels.to_vec(), (0..nz).map(|i| format!("d{}", i + 1)).collect(), plus_labels],
    };
    let direct = l_space(v).intersect(&inn_algebra(v)?, "L ∩ Inn")?.dim() == 0;
    let lie = parts
        .assemble(format!("Kan({})", v.name()))?
        .with_meta("istr", if direct { "direct sum" } else { "sum not direct; g0 is the subspace istr(V)" });
    let origin = (0..n).map(Origin::VMinus).chain((0..nz).map(Origin::Op0)).chain(plus_origin).collect();
    Ok(TkkAlgebra {
        lie,
        origin,
        construction: Construction::Kan,
        input: v.name().to_string(),
        ops: [None, Some(g0), Some(g1)],
    })
}

/// Coordinates of operator-level elements inside `Kan(V)`.
struct KanCoords<'a> {
    kan: &'a TkkAlgebra,
    n: usize,
}

impl KanCoords<'_> {
    fn minus(&self, x: &[Rational]) -> Vector {
        let mut out = vec![Rational::zero(); self.kan.dim()];
        out[..self.n].clone_from_slice(x);
        out
    }

    fn embed(&self, degree: i32, flat: &[Rational]) -> Result<Vector> {
        let basis = self.kan.ops(degree).expect("Kan keeps both operator bases");
        let c = basis
            .coordinates(flat)?
            .ok_or_else(|| Error::Internal(format!("element outside Kan(V) in degree {degree}")))?;
        let off = self.kan.degree_indices(degree)[0];
        let mut out = vec![Rational::zero(); self.kan.dim()];
        out[off..off + c.len()].clone_from_slice(&c);
        Ok(out)
    }

    fn op(&self, m: &Matrix) -> Result<Vector> {
        self.embed(0, m.flat())
    }
}

/// The five relations between `P`, `[L_a, P]` and `V`, plus `P = -[L_e, P]` when
/// `V` is unital, on all basis elements.
pub fn check_kantor_relations(v: &JordanAlgebra, kan: &TkkAlgebra) -> Result<CheckResult> {
    if kan.construction() != Construction::Kan {
        return Err(Error::Internal(format!("{} is not a Kantor algebra", kan.lie().name())));
    }
    let n = v.dim();
    let g = kan.lie();
    let k = KanCoords { kan, n };
    let p = k.embed(1, &product_map(v))?;
    let lps: Vec<Vector> = (0..n).map(|a| k.embed(1, &lp(v, &v.basis_vec(a))?)).collect::<Result<_>>()?;
    let ls: Vec<Vector> = (0..n).map(|a| k.op(v.l_basis(a))).collect::<Result<_>>()?;
    let lb = |a: usize, b: usize| k.op(&supercommutator(v.l_basis(a), v.parity(a), v.l_basis(b), v.parity(b)));
    let fail = |idx: Vec<usize>, what: &str| Ok(Err(Witness::new(idx, what.to_string())));

    for x in 0..n {
        if g.mul(&p, &k.minus(&v.basis_vec(x))) != ls[x] {
            return fail(vec![x], "[P, x] = L_x fails");
        }
    }
    for a in 0..n {
        for x in 0..n {
            let lhs = g.mul(&lps[a], &k.minus(&v.basis_vec(x)));
            let ax = v.mul(&v.basis_vec(a), &v.basis_vec(x));
            let rhs = crate::exact::sub_vec(&lb(a, x)?, &k.op(&v.l_matrix(&ax))?);
            if lhs != rhs {
                return fail(vec![a, x], "[[L_a, P], x] = [L_a, L_x] - L_{ax} fails");
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = v.mul(&v.basis_vec(a), &v.basis_vec(b));
            let lhs = g.mul(&ls[a], &lps[b]);
            let rhs: Vector = k.embed(1, &lp(v, &ab)?)?.iter().map(|c| -c).collect();
            if lhs != rhs {
                return fail(vec![a, b], "[L_a, [L_b, P]] = -[L_{ab}, P] fails");
            }
            if !is_zero_vec(&g.mul(&lb(a, b)?, &p)) {
                return fail(vec![a, b], "[[L_a, L_b], P] = 0 fails");
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let lab = lb(a, b)?;
            for c in 0..n {
                let lhs = g.mul(&lab, &lps[c]);
                let (ea, eb, ec) = (v.basis_vec(a), v.basis_vec(b), v.basis_vec(c));
                let w = crate::exact::sub_vec(&v.mul(&ea, &v.mul(&ec, &eb)), &v.mul(&v.mul(&ea, &ec), &eb));
                let s = sign(v.parity(b).koszul(v.parity(c)));
                let rhs: Vector = k.embed(1, &lp(v, &w)?)?.iter().map(|t| &s * t).collect();
                if lhs != rhs {
                    return fail(vec![a, b, c], "[[L_a, L_b], [L_c, P]] = (-1)^{|b||c|}[L_{a(cb)-(ac)b}, P] fails");
                }
            }
        }
    }
    if let Some(e) = v.unit() {
        let le: Vector = k.embed(1, &lp(v, e)?)?.iter().map(|c| -c).collect();
        if le != p {
            return fail(Vec::new(), "P = -[L_e, P] fails");
        }
    }
    Ok(Ok(()))
}
