//! Jordan superalgebras known by name.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::jordan::JordanAlgebra;
use crate::superspace::{sign, Kind, Parity, SuperAlgebra};

type Entries = Vec<(usize, usize, usize, Rational)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum JordanName {
    J19,
    KacK,
    /// `tℚ[t]/(t^k)`.
    TruncPoly(usize),
    /// `gl(m,n)₊`.
    FullMatrix(usize, usize),
    /// `ℚe ⊕ W` for a form on `p` even and `2q` odd generators; stores `(p, 2q)`.
    Form(usize, usize),
    /// `D_t`.
    Dt(Rational),
}

impl JordanName {
    /// Catalog entries covered by `verify all`.
    pub fn shipped() -> Vec<JordanName> {
        use JordanName::*;
        let mut v = vec![J19, KacK];
        v.extend((3..=8).map(TruncPoly));
        v.extend([FullMatrix(1, 1), FullMatrix(1, 2), FullMatrix(2, 1)]);
        v.extend([Form(1, 2), Form(2, 2), Form(3, 0)]);
        v.extend([Dt(Rational::from_int(2)), Dt(Rational::new(1, 2))]);
        v
    }

    /// Whether the defining table comes from outside the construction itself.
    pub fn external(&self) -> bool {
        matches!(self, JordanName::FullMatrix(..) | JordanName::Form(..) | JordanName::Dt(_))
    }
}

impl fmt::Display for JordanName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JordanName::J19 => write!(f, "j19"),
            JordanName::KacK => write!(f, "kacK"),
            JordanName::TruncPoly(k) => write!(f, "trunc_poly:{k}"),
            JordanName::FullMatrix(m, n) => write!(f, "full_matrix:{m},{n}"),
            JordanName::Form(p, q2) => write!(f, "form:{p},{q2}"),
            JordanName::Dt(t) => write!(f, "dt:{t}"),
        }
    }
}

pub(crate) fn split_params(s: &str) -> (&str, Vec<&str>) {
    match s.split_once(':') {
        Some((name, rest)) => (name, rest.split(',').map(str::trim).collect()),
        None => (s, Vec::new()),
    }
}

pub(crate) fn usize_params(name: &str, params: &[&str], count: usize) -> Result<Vec<usize>> {
    if params.len() != count {
        return Err(Error::OutOfRange(format!("{name} takes {count} parameter(s), got {}", params.len())));
    }
    params
        .iter()
        .map(|p| p.parse::<usize>().map_err(|_| Error::Parse(format!("{name}: bad parameter {p:?}"))))
        .collect()
}

impl FromStr for JordanName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, params) = split_params(s);
        let out = match name {
            "j19" if params.is_empty() => JordanName::J19,
            "kacK" | "K" if params.is_empty() => JordanName::KacK,
            "trunc_poly" => JordanName::TruncPoly(usize_params(name, &params, 1)?[0]),
            "full_matrix" | "gl+" => {
                let p = usize_params(name, &params, 2)?;
                JordanName::FullMatrix(p[0], p[1])
            }
            "form" => {
                let p = usize_params(name, &params, 2)?;
                JordanName::Form(p[0], p[1])
            }
            "dt" => {
                if params.len() != 1 {
                    return Err(Error::OutOfRange("dt takes one rational parameter".into()));
                }
                JordanName::Dt(params[0].parse()?)
            }
            _ => return Err(Error::UnknownName(s.to_string())),
        };
        Ok(out)
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Adds `b_i b_j = c b_k` and its supercommutative mirror.
fn sym(e: &mut Entries, par: &[Parity], i: usize, j: usize, k: usize, c: Rational) {
    if i != j {
        let s = sign(par[i].koszul(par[j]));
        e.push((j, i, k, &c * &s));
    }
    e.push((i, j, k, c));
}

fn build(name: &JordanName, par: Vec<Parity>, labels: Vec<String>, entries: &Entries) -> Result<JordanAlgebra> {
    let mut a = SuperAlgebra::from_entries(name.to_string(), par, None, entries, Kind::Plain)?.with_labels(labels)?;
    if name.external() {
        a = a.with_meta("external", "true");
    }
    JordanAlgebra::new(a)
}

pub fn jordan_catalog(name: &JordanName) -> Result<JordanAlgebra> {
    use Parity::{Even, Odd};
    match name {
        JordanName::J19 => {
            let par = vec![Even; 3];
            let mut e = Entries::new();
            sym(&mut e, &par, 0, 0, 0, q(1, 1));
            sym(&mut e, &par, 0, 1, 1, q(1, 2));
            sym(&mut e, &par, 1, 1, 2, q(1, 1));
            build(name, par, vec!["e1".into(), "e2".into(), "e3".into()], &e)
        }
        JordanName::KacK => {
            let par = vec![Even, Odd, Odd];
            let mut e = Entries::new();
            sym(&mut e, &par, 0, 0, 0, q(1, 1));
            sym(&mut e, &par, 0, 1, 1, q(1, 2));
            sym(&mut e, &par, 0, 2, 2, q(1, 2));
            sym(&mut e, &par, 1, 2, 0, q(1, 1));
            build(name, par, vec!["a".into(), "xi1".into(), "xi2".into()], &e)
        }
        JordanName::TruncPoly(k) => {
            let k = *k;
            if !(3..=8).contains(&k) {
                return Err(Error::OutOfRange(format!("trunc_poly needs 3 <= k <= 8, got {k}")));
            }
            // basis t^1 .. t^{k-1} at indices 0 .. k-2
            let par = vec![Even; k - 1];
            let mut e = Entries::new();
            for a in 1..k {
                for b in 1..k {
                    if a + b < k {
                        e.push((a - 1, b - 1, a + b - 1, q(1, 1)));
                    }
                }
            }
            let labels = (1..k).map(|a| if a == 1 { "t".to_string() } else { format!("t^{a}") }).collect();
            build(name, par, labels, &e)
        }
        JordanName::FullMatrix(m, n) => full_matrix(name, *m, *n),
        JordanName::Form(p, q2) => form(name, *p, *q2),
        JordanName::Dt(t) => {
            if t.is_zero() || *t == -Rational::one() {
                return Err(Error::OutOfRange(format!("dt needs t not in {{0, -1}}, got {t}")));
            }
            let par = vec![Even, Even, Odd, Odd];
            let mut e = Entries::new();
            sym(&mut e, &par, 0, 0, 0, q(1, 1));
            sym(&mut e, &par, 1, 1, 1, q(1, 1));
            for i in 0..2 {
                for odd in 2..4 {
                    sym(&mut e, &par, i, odd, odd, q(1, 2));
                }
            }
            sym(&mut e, &par, 2, 3, 0, q(1, 1));
            sym(&mut e, &par, 2, 3, 1, t.clone());
            build(name, par, vec!["e1".into(), "e2".into(), "x".into(), "y".into()], &e)
        }
    }
}

fn full_matrix(name: &JordanName, m: usize, n: usize) -> Result<JordanAlgebra> {
    let size = m + n;
    if size == 0 || size > 3 {
        return Err(Error::OutOfRange(format!("full_matrix needs 1 <= m+n <= 3, got ({m}, {n})")));
    }
    let odd_idx = |i: usize| i >= m;
    let idx = |i: usize, j: usize| i * size + j;
    let par: Vec<Parity> = (0..size * size)
        .map(|b| if odd_idx(b / size) ^ odd_idx(b % size) { Parity::Odd } else { Parity::Even })
        .collect();
    // E_ij ∘ E_kl = ½(δ_jk E_il + (-1)^{|E_ij||E_kl|} δ_li E_kj)
    let mut acc: std::collections::BTreeMap<(usize, usize, usize), Rational> = Default::default();
    for i in 0..size {
        for j in 0..size {
            for k in 0..size {
                for l in 0..size {
                    let (x, y) = (idx(i, j), idx(k, l));
                    if j == k {
                        *acc.entry((x, y, idx(i, l))).or_default() += q(1, 2);
                    }
                    if l == i {
                        let s = sign(par[x].koszul(par[y]));
                        *acc.entry((x, y, idx(k, j))).or_default() += &s * &q(1, 2);
                    }
                }
            }
        }
    }
    let e: Entries = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((a, b, c), v)| (a, b, c, v)).collect();
    let labels = (0..size * size).map(|b| format!("E{}{}", b / size + 1, b % size + 1)).collect();
    build(name, par, labels, &e)
}

fn form(name: &JordanName, p: usize, q2: usize) -> Result<JordanAlgebra> {
    if q2 % 2 != 0 {
        return Err(Error::OutOfRange(format!("form needs an even number of odd generators, got {q2}")));
    }
    if p + q2 == 0 || p + q2 > 5 {
        return Err(Error::OutOfRange(format!("form needs 1 <= p+2q <= 5, got ({p}, {q2})")));
    }
    let mut par = vec![Parity::Even; 1 + p];
    par.extend(std::iter::repeat(Parity::Odd).take(q2));
    let mut e = Entries::new();
    for i in 0..par.len() {
        sym(&mut e, &par, 0, i, i, q(1, 1));
    }
    for i in 1..=p {
        sym(&mut e, &par, i, i, 0, q(1, 1));
    }
    for k in 0..q2 / 2 {
        let (a, b) = (1 + p + 2 * k, 2 + p + 2 * k);
        sym(&mut e, &par, a, b, 0, q(1, 1));
    }
    let mut labels = vec!["e".to_string()];
    labels.extend((1..=p).map(|i| format!("v{i}")));
    labels.extend((1..=q2).map(|i| format!("w{i}")));
    build(name, par, labels, &e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{find_unit, UnitSearch};
    use crate::superspace::parity_dims;

    #[test]
    fn names_round_trip() {
        for n in JordanName::shipped() {
            assert_eq!(n.to_string().parse::<JordanName>().unwrap(), n);
        }
        assert!("nope".parse::<JordanName>().is_err());
        assert!("trunc_poly:x".parse::<JordanName>().is_err());
    }

    #[test]
    fn shipped_entries_build() {
        for n in JordanName::shipped() {
            jordan_catalog(&n).unwrap_or_else(|e| panic!("{n}: {e}"));
        }
    }

    #[test]
    fn ranges_are_enforced() {
        assert!(jordan_catalog(&JordanName::TruncPoly(2)).is_err());
        assert!(jordan_catalog(&JordanName::TruncPoly(9)).is_err());
        assert!(jordan_catalog(&JordanName::FullMatrix(2, 2)).is_err());
        assert!(jordan_catalog(&JordanName::Form(1, 1)).is_err());
        assert!(jordan_catalog(&JordanName::Form(2, 4)).is_err());
        assert!(jordan_catalog(&JordanName::Dt(-Rational::one())).is_err());
        assert!(jordan_catalog(&JordanName::Dt(Rational::zero())).is_err());
    }

    #[test]
    fn units() {
        let gl11 = jordan_catalog(&JordanName::FullMatrix(1, 1)).unwrap();
        assert_eq!(parity_dims(gl11.base()), (2, 2));
        // identity = E11 + E22
        assert_eq!(gl11.unit().unwrap(), &vec![q(1, 1), q(0, 1), q(0, 1), q(1, 1)]);
        let k = jordan_catalog(&JordanName::KacK).unwrap();
        assert_eq!(parity_dims(k.base()), (1, 2));
        assert!(k.unit().is_none());
        let t5 = jordan_catalog(&JordanName::TruncPoly(5)).unwrap();
        assert_eq!(find_unit(t5.base()), UnitSearch::None);
        assert!(jordan_catalog(&JordanName::Form(1, 2)).unwrap().is_unital());
        assert!(jordan_catalog(&JordanName::Dt(q(2, 1))).unwrap().is_unital());
    }
}
