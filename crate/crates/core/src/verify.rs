//! Verification reports: the check suites behind `dims`, `tkk` and `verify`,
//! collected into a deterministic, serializable `Report`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::catalog::{expected_dim, jordan_catalog, lie_catalog, load, save, AlgebraSpec, JordanName, LieName, Source};
use crate::error::{CheckResult, Error, Result};
use crate::jordan::{
    check_five_linear, check_jordan_identity, check_operator_identity, check_triple_symmetry, JordanAlgebra,
};
use crate::pair::{JordanPair, Side};
use crate::structure::{inclusion_report, OperatorSpace, StructureData};
use crate::superspace::{
    center, check_super_jacobi, check_superanticommutative, check_supercommutative, derived, parity_dims, SuperAlgebra,
};
use crate::tkk::{
    check_ideal_in_tilde, check_kantor_relations, check_propnu, check_unital_equivalences, counterexample_report,
    fingerprint, is_jordan_graded, j_functor, kantor, koecher_alg, koecher_d, koecher_of_j_iso, koecher_tilde_alg,
    lie_der_tower, tits, tits_roundtrip, DerTower, TitsData, TkkAlgebra,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub title: String,
    #[serde(default)]
    pub facts: Vec<Fact>,
    #[serde(default)]
    pub checks: Vec<Check>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl Section {
    pub fn new(title: impl Into<String>) -> Self {
        Section { title: title.into(), ..Default::default() }
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.facts.push(Fact { key: key.into(), value: value.to_string() });
    }

    pub fn check(&mut self, name: impl Into<String>, r: CheckResult) {
        let (pass, detail) = match r {
            Ok(()) => (true, None),
            Err(w) => (false, Some(w.to_string())),
        };
        self.checks.push(Check { name: name.into(), pass, detail });
    }

    pub fn expect(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        let detail = detail.into();
        self.checks.push(Check { name: name.into(), pass, detail: (!detail.is_empty()).then_some(detail) });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub algebra: String,
    pub sections: Vec<Section>,
    /// Wall-clock milliseconds per section; only filled on request since it
    /// breaks run-to-run determinism.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u64>>,
}

impl Report {
    pub fn new(algebra: impl Into<String>) -> Self {
        Report { algebra: algebra.into(), ..Default::default() }
    }

    pub fn checks(&self) -> impl Iterator<Item = (&str, &Check)> {
        self.sections.iter().flat_map(|s| s.checks.iter().map(move |c| (s.title.as_str(), c)))
    }

    pub fn passed(&self) -> bool {
        self.checks().all(|(_, c)| c.pass)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks().filter(|(_, c)| !c.pass).map(|(s, c)| format!("{s}: {}", c.name)).collect()
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks().map(|(_, c)| c).find(|c| c.name == name)
    }

    pub fn notes(&self) -> impl Iterator<Item = &str> {
        self.sections.iter().flat_map(|s| s.notes.iter().map(String::as_str))
    }

    pub fn fact(&self, key: &str) -> Option<&str> {
        self.sections.iter().flat_map(|s| &s.facts).find(|f| f.key == key).map(|f| f.value.as_str())
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {}", self.algebra);
        for s in &self.sections {
            let _ = writeln!(out, "-- {}", s.title);
            for f in &s.facts {
                let _ = writeln!(out, "   {}: {}", f.key, f.value);
            }
            for c in &s.checks {
                let mark = if c.pass { "ok  " } else { "FAIL" };
                match &c.detail {
                    Some(d) => {
                        let _ = writeln!(out, "   [{mark}] {} ({d})", c.name);
                    }
                    None => {
                        let _ = writeln!(out, "   [{mark}] {}", c.name);
                    }
                }
            }
            for n in &s.notes {
                let _ = writeln!(out, "   note: {n}");
            }
        }
        if let Some(t) = &self.timings_ms {
            let _ = writeln!(out, "-- timings");
            for (k, ms) in t {
                let _ = writeln!(out, "   {k}: {ms} ms");
            }
        }
        out
    }
}

/// The constructions reachable from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TkkChoice {
    Kan,
    Ko,
    KoTilde,
    TiInn,
    TiDer,
}

impl FromStr for TkkChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "kan" => TkkChoice::Kan,
            "ko" => TkkChoice::Ko,
            "kotilde" => TkkChoice::KoTilde,
            "ti-inn" => TkkChoice::TiInn,
            "ti-der" => TkkChoice::TiDer,
            _ => return Err(Error::UnknownName(format!("construction {s}"))),
        })
    }
}

impl fmt::Display for TkkChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TkkChoice::Kan => "kan",
            TkkChoice::Ko => "ko",
            TkkChoice::KoTilde => "kotilde",
            TkkChoice::TiInn => "ti-inn",
            TkkChoice::TiDer => "ti-der",
        })
    }
}

pub fn build(v: &JordanAlgebra, choice: TkkChoice) -> Result<TkkAlgebra> {
    match choice {
        TkkChoice::Kan => kantor(v),
        TkkChoice::Ko => koecher_alg(v),
        TkkChoice::KoTilde => koecher_tilde_alg(v),
        TkkChoice::TiInn => tits(v, &TitsData::inn(v)?),
        TkkChoice::TiDer => tits(v, &TitsData::der(v)?),
    }
}

pub fn dims_fmt((e, o): (usize, usize)) -> String {
    format!("({e}|{o})")
}

fn graded_fmt(t: &TkkAlgebra) -> String {
    let [m, z, p] = t.graded_dims();
    format!("({m}, {z}, {p})")
}

fn tower_fmt(t: &BTreeMap<i32, (usize, usize)>) -> String {
    t.iter().map(|(s, d)| format!("{s:+}:{}", dims_fmt(*d))).collect::<Vec<_>>().join(" ")
}

fn space_fact(s: &mut Section, key: &str, sp: &OperatorSpace) {
    s.fact(key, format!("{} {}", sp.dim(), dims_fmt(sp.dims())));
}

/// `[g₋, g₋] = 0 = [g₊, g₊]`.
pub fn check_three_grading(g: &SuperAlgebra) -> CheckResult {
    for d in [-1, 1] {
        let idx: Vec<usize> = (0..g.dim()).filter(|i| g.zdeg(*i) == d).collect();
        for &i in &idx {
            for &j in &idx {
                if !g.basis_product(i, j).is_zero() {
                    return Err(crate::error::Witness::new(
                        vec![i, j],
                        format!("[{}, {}] ≠ 0 in degree {}", g.label(i), g.label(j), 2 * d),
                    ));
                }
            }
        }
    }
    Ok(())
}

fn structure_section(v: &JordanAlgebra, data: &StructureData) -> Result<Section> {
    let mut s = Section::new("structure algebras");
    for (key, sp) in [
        ("Der", &data.der),
        ("Inn", &data.inn),
        ("str", &data.str_),
        ("istr", &data.istr),
        ("istr~", &data.istr_tilde),
        ("str_w", &data.str_w),
        ("Der(V,V)", &data.pair_der),
        ("Inn(V,V)", &data.pair_inn),
    ] {
        space_fact(&mut s, key, sp);
    }
    let inc = inclusion_report(v, data)?;
    if inc.hypothesis_holds() {
        for step in &inc.steps {
            let strict = if step.strict { "strict" } else { "equality" };
            s.expect(step.name.clone(), step.holds, format!("{} ⊆ {}, {strict}", step.dims.0, step.dims.1));
        }
    } else {
        s.note(format!(
            "chain hypothesis fails: {}",
            inc.overlap_witness.as_deref().unwrap_or("some nonzero L_x is a derivation")
        ));
        s.fact("dim(L ∩ Der)", inc.l_der_overlap);
    }
    if let Some(u) = &inc.unital {
        s.expect("str ≅ Der(V,V) (dims)", u.str_is_pair_der, "");
        s.expect("istr ≅ Inn(V,V) (dims)", u.istr_is_pair_inn, "");
        s.expect("str = L ⊕ Der", u.str_sum_direct, "");
        s.expect("istr = L ⊕ Inn", u.istr_sum_direct, "");
        s.expect("swap-fixed part of Der(V,V) is {(D,D)}", u.swap_even_is_der, "");
        s.expect("swap-odd part of Der(V,V) is {(L_x,-L_x)}", u.swap_odd_is_l, "");
    }
    s.expect(
        "dim str_w = dim Der(V,V)",
        data.str_w.dims() == data.pair_der.dims(),
        format!("{} vs {}", dims_fmt(data.str_w.dims()), dims_fmt(data.pair_der.dims())),
    );
    if v.is_unital() {
        s.expect(
            "dim str_w = dim str",
            data.str_w.dims() == data.str_.dims(),
            format!("{} vs {}", dims_fmt(data.str_w.dims()), dims_fmt(data.str_.dims())),
        );
    }
    Ok(s)
}

/// The `dims` command.
pub fn dims_report(v: &JordanAlgebra) -> Result<Report> {
    let mut r = Report::new(v.name());
    let data = StructureData::compute(v)?;
    r.sections.push(structure_section(v, &data)?);
    Ok(r)
}

fn tower_section(title: &str, t: &DerTower) -> Section {
    let mut s = Section::new(title);
    s.fact("Der by shift", tower_fmt(&t.der_dims));
    s.fact("Inn by shift", tower_fmt(&t.inn_dims));
    s.fact("Out by shift", tower_fmt(&t.out_dims));
    s
}

/// The `tkk` command: builds one construction and checks it.
pub fn tkk_report(v: &JordanAlgebra, choice: TkkChoice) -> Result<(Report, TkkAlgebra)> {
    let t = build(v, choice)?;
    let g = t.lie();
    let mut r = Report::new(format!("{} [{choice}]", v.name()));
    let mut s = Section::new(g.name().to_string());
    s.fact("graded dims", graded_fmt(&t));
    s.fact("total", format!("{} {}", g.dim(), dims_fmt(parity_dims(g))));
    s.check("super-Jacobi", check_super_jacobi(g));
    s.check("[g-,g-] = 0 = [g+,g+]", check_three_grading(g));
    let jg = is_jordan_graded(g)?;
    s.fact("jordan-graded", if jg.holds() { "yes" } else { "no" });
    if choice == TkkChoice::Ko {
        s.check("Jordan graded", jg.witness());
    }
    if choice == TkkChoice::Kan {
        s.fact("dim g+", format!("{} (dim V = {})", t.graded_dims()[2], v.dim()));
        s.check("Kantor relations", check_kantor_relations(v, &t)?);
        if let Some(note) = g.meta().get("istr") {
            s.note(format!("g0 = istr(V): {note}"));
        }
    }
    r.sections.push(s);
    if choice == TkkChoice::Ko {
        r.sections.push(tower_section("Der(Ko(V))", &lie_der_tower(g)));
    }
    if matches!(choice, TkkChoice::Kan | TkkChoice::TiInn) {
        let mut u = Section::new("unital equivalence");
        if v.is_unital() {
            let rep = check_unital_equivalences(v)?;
            match choice {
                TkkChoice::Kan => u.check("Kan(V) ≅ Ko(V) via the explicit map", rep.kan_ko),
                _ => u.check("Ti(V,Inn,sl2) ≅ Ko(V) via the explicit map", rep.ti_ko),
            }
        } else {
            u.note("V is not unital; section skipped (see the counterexample report of `verify`)");
        }
        r.sections.push(u);
    }
    Ok((r, t))
}

fn identity_section(v: &JordanAlgebra) -> Section {
    let mut s = identity_checks(v.base());
    s.facts.insert(
        1,
        Fact { key: "unit".into(), value: v.unit().map_or("none".to_string(), |e| v.base().format_vector(e)) },
    );
    s
}

fn identity_checks(a: &SuperAlgebra) -> Section {
    let mut s = Section::new("identities");
    s.fact("dims", dims_fmt(parity_dims(a)));
    if a.meta().get("external").is_some() {
        s.note("defining table is external; certified by the identity checks and fingerprints");
    }
    s.check("supercommutative", check_supercommutative(a));
    s.check("Jordan identity", check_jordan_identity(a));
    s.check("operator identity", check_operator_identity(a));
    s.check("triple product symmetry", check_triple_symmetry(a));
    s.check("5-linear identity", check_five_linear(a));
    s
}

fn round_trip(a: &SuperAlgebra) -> CheckResult {
    let spec = AlgebraSpec::from_algebra(a);
    let text = save(&spec);
    let back = load(&text).map_err(|e| crate::error::Witness::new(Vec::new(), e.to_string()))?;
    if back != spec || save(&back) != text {
        return Err(crate::error::Witness::new(Vec::new(), "spec changed on reload"));
    }
    let b = back.to_algebra().map_err(|e| crate::error::Witness::new(Vec::new(), e.to_string()))?;
    if b.entries() != a.entries() || b.parities() != a.parities() || b.zdegrees() != a.zdegrees() {
        return Err(crate::error::Witness::new(Vec::new(), "structure constants changed on reload"));
    }
    Ok(())
}

/// `𝒥(Ko(V,V))` has exactly the triple products of `V`.
pub fn check_j_of_ko(v: &JordanAlgebra, ko: &TkkAlgebra) -> Result<CheckResult> {
    let pair = j_functor(ko.lie())?;
    let doubled = JordanPair::doubled(v);
    for s in Side::BOTH {
        for x in 0..v.dim() {
            for y in 0..v.dim() {
                if pair.d_basis(s, x, y) != doubled.d_basis(s, x, y) {
                    return Ok(Err(crate::error::Witness::new(vec![x, y], format!("D{}_{{x,y}} differs", s.symbol()))));
                }
            }
        }
    }
    Ok(Ok(()))
}

/// `x ↦ ad_x` identifies `Der(V⁺,V⁻) = Ko~(V)₀` with `Der(Ko(V))₀`: the
/// restrictions are derivations of the ideal `Ko(V)`, injective, and exhaust
/// the degree-0 derivations.
pub fn check_degree_zero_derivations(ko: &TkkAlgebra, tilde: &TkkAlgebra, tower: &DerTower) -> Result<CheckResult> {
    let [_, tz, _] = tilde.graded_parity_dims();
    if tower.der_at(0) != tz {
        return Ok(Err(crate::error::Witness::new(
            Vec::new(),
            format!("Der(Ko)_0 is {} but Der(V+,V-) is {}", dims_fmt(tower.der_at(0)), dims_fmt(tz)),
        )));
    }
    check_ideal_in_tilde(ko, tilde)
}

fn constructions_section(v: &JordanAlgebra, ko: &TkkAlgebra, tilde: &TkkAlgebra) -> Result<Section> {
    let mut s = Section::new("constructions");
    let kan = kantor(v)?;
    let inn = TitsData::inn(v)?;
    let der = TitsData::der(v)?;
    let ti_inn = tits(v, &inn)?;
    let ti_der = tits(v, &der)?;
    let kod = koecher_d(v, &inn)?;
    for t in [ko, tilde, &kan, &ti_inn, &ti_der, &kod] {
        let g = t.lie();
        s.fact(g.name().to_string(), format!("{} total {} {}", graded_fmt(t), g.dim(), dims_fmt(parity_dims(g))));
        s.check(format!("super-Jacobi: {}", g.name()), check_super_jacobi(g));
        s.check(format!("3-grading: {}", g.name()), check_three_grading(g));
    }
    s.check("Ko(V) is Jordan graded", is_jordan_graded(ko.lie())?.witness());
    s.check("Ko(V) is an ideal of Ko~(V)", check_ideal_in_tilde(ko, tilde)?);
    s.check("Kantor relations", check_kantor_relations(v, &kan)?);
    if let Some(note) = kan.lie().meta().get("istr") {
        s.note(format!("Kan g0 = istr(V): {note}"));
    }
    Ok(s)
}

fn round_trip_section(v: &JordanAlgebra, ko: &TkkAlgebra) -> Result<Section> {
    let mut s = Section::new("round trips");
    s.check("J(Ko(V,V)) = (V,V) on triple products", check_j_of_ko(v, ko)?);
    s.check("Ko(J(g)) ≅ g for g = Ko(V,V)", koecher_of_j_iso(ko.lie())?);
    for data in [TitsData::inn(v)?, TitsData::der(v)?] {
        s.check(format!("Ti(V,{0},sl2) ≅ Ko_{0}(V) via the explicit map", data.label()), check_propnu(v, &data)?);
        s.check(format!("Tits round trip with {}", data.label()), tits_roundtrip(v, &data)?);
    }
    s.check("spec round trip of V", round_trip(v.base()));
    s.check("spec round trip of Ko(V)", round_trip(ko.lie()));
    Ok(s)
}

fn unital_section(v: &JordanAlgebra) -> Result<Section> {
    let mut s = Section::new("unital equivalences");
    let r = check_unital_equivalences(v)?;
    s.check("Kan(V) ≅ Ko(V) via the explicit map", r.kan_ko.clone());
    s.check("Ti(V,Inn,sl2) ≅ Ko(V) via the explicit map", r.ti_ko.clone());
    s.check("Ko_Inn(V) = Ko(V)", r.kod_inn_ko.clone());
    s.fact("Der(Ko) by shift", tower_fmt(&r.tower.der_dims));
    s.fact("Ko~ by degree", tower_fmt(&r.tilde_dims));
    s.fact("Out(Ko) by shift", tower_fmt(&r.tower.out_dims));
    s.expect("Der(Ko(V)) shifts ±2 vanish", r.outer_shifts_vanish(), "");
    s.expect("dim Der(Ko(V)) shifts ±1 = dim V", r.shift_one_is_v(), "");
    s.expect("Der(Ko(V)) ≅ Ko~(V) per shift and parity (dims)", r.der_is_tilde(), "");
    s.expect(
        "Out(Ko(V))_0 = str/istr (dims)",
        r.out_zero_is_str_mod_istr(),
        format!("{} vs {} - {}", dims_fmt(r.tower.out_at(0)), dims_fmt(r.str_dims), dims_fmt(r.istr_dims)),
    );
    Ok(s)
}

fn counterexample_section(v: &JordanAlgebra) -> Result<Section> {
    let mut s = Section::new("counterexample report (no unit)");
    let r = counterexample_report(v)?;
    let fmt3 = |d: [usize; 3]| format!("({}, {}, {})", d[0], d[1], d[2]);
    s.fact("Kan graded dims", fmt3(r.kan_dims));
    s.fact("Ko graded dims", fmt3(r.ko_dims));
    s.fact("dim Kan(V)+", format!("{} (dim V = {})", r.kan_plus_dim(), r.v_dim));
    if r.kan_differs() {
        s.note("Kan ≇ Ko (graded dims differ)");
    } else {
        s.note("Kan and Ko have equal graded dims");
    }
    let out = r.ko_tower.out_support();
    s.fact("Out(Ko) by shift", tower_fmt(&r.ko_tower.out_dims));
    if out.len() == 3 && out.values().all(|d| *d == (1, 0)) {
        s.note("Out(Ko) dims (1,1,1)");
    }
    s.fact("Der(Ko) by shift", tower_fmt(&r.ko_tower.der_dims));
    s.fact("Ko~ by degree", tower_fmt(&r.tilde_dims));
    if !r.der_is_tilde() {
        s.note("Der(Ko(V)) and Ko~(V) differ in dimension");
    }
    Ok(s)
}

/// Everything `verify` runs for one Jordan superalgebra.
pub fn verify_jordan(v: &JordanAlgebra) -> Result<Report> {
    let mut r = Report::new(v.name());
    r.sections.push(identity_section(v));
    let data = StructureData::compute(v)?;
    r.sections.push(structure_section(v, &data)?);
    let ko = koecher_alg(v)?;
    let tilde = koecher_tilde_alg(v)?;
    r.sections.push(constructions_section(v, &ko, &tilde)?);
    r.sections.push(round_trip_section(v, &ko)?);
    let mut d = Section::new("derivation towers");
    let ko_tower = lie_der_tower(ko.lie());
    let tilde_tower = lie_der_tower(tilde.lie());
    d.fact("Out(Ko) by shift", tower_fmt(&ko_tower.out_dims));
    d.fact("Out(Ko~) by shift", tower_fmt(&tilde_tower.out_dims));
    d.expect("Out(Ko~(V)) = 0", tilde_tower.out_dim() == 0, format!("dim {}", tilde_tower.out_dim()));
    d.check("Der(Ko(V))_0 ≅ Der(V,V) via ad", check_degree_zero_derivations(&ko, &tilde, &ko_tower)?);
    r.sections.push(d);
    if v.is_unital() {
        r.sections.push(unital_section(v)?);
    } else {
        r.sections.push(counterexample_section(v)?);
    }
    Ok(r)
}

/// Everything `verify` runs for a Lie superalgebra, with the catalog name if known.
pub fn verify_lie(g: &SuperAlgebra, name: Option<&LieName>) -> Report {
    let mut r = Report::new(g.name());
    let mut s = Section::new("identities");
    s.fact("dims", format!("{} {}", g.dim(), dims_fmt(parity_dims(g))));
    s.check("super-anticommutative", check_superanticommutative(g));
    s.check("super-Jacobi", check_super_jacobi(g));
    s.check("spec round trip", round_trip(g));
    if let Some(n) = name {
        let want = expected_dim(n);
        s.expect("dimension formula", g.dim() == want, format!("{} vs {want}", g.dim()));
        if n.simple_in_range() {
            let z = center(g).dim();
            let dd = derived(g).dim();
            s.expect("center = 0", z == 0, format!("dim {z}"));
            s.expect("derived = whole algebra", dd == g.dim(), format!("dim {dd} of {}", g.dim()));
        }
    }
    r.sections.push(s);
    r
}

pub fn verify_source(src: &Source) -> Result<Report> {
    match src {
        Source::Jordan(v) => verify_jordan(v),
        Source::Lie(g) => Ok(verify_lie(g, g.name().parse::<LieName>().ok().as_ref())),
        Source::Plain(a) => {
            let mut r = Report::new(a.name());
            let mut s = identity_checks(a);
            s.note("not a Jordan superalgebra; later stages skipped");
            r.sections.push(s);
            Ok(r)
        }
    }
}

/// Fingerprint comparisons between TKK outputs and catalog Lie superalgebras.
/// Matches are reported as "consistent with", never as isomorphisms.
pub fn cross_check_report() -> Result<Report> {
    let mut r = Report::new("catalog cross-checks");
    let mut s = Section::new("fingerprints");
    let jordan = |n: JordanName| jordan_catalog(&n);
    let k = jordan(JordanName::KacK)?;
    let psl22 = fingerprint(&lie_catalog(&LieName::Psl(2))?);
    let pgl22 = fingerprint(&lie_catalog(&LieName::Pgl(2))?);
    let ko_k = fingerprint(koecher_alg(&k)?.lie());
    s.expect(
        "Ko(K) consistent with psl(2|2)",
        ko_k.consistent_with(&psl22),
        format!("{} vs {}", fp_fmt(&ko_k), fp_fmt(&psl22)),
    );
    let tilde_k = fingerprint(koecher_tilde_alg(&k)?.lie());
    s.expect(
        "Ko~(K) consistent with pgl(2|2)",
        tilde_k.consistent_with(&pgl22),
        format!("{} vs {}", fp_fmt(&tilde_k), fp_fmt(&pgl22)),
    );
    let ti_k = fingerprint(tits(&k, &TitsData::inn(&k)?)?.lie());
    s.expect("Ti(K,Inn,sl2) consistent with Ko(K)", ti_k == ko_k, "");
    let gl11 = jordan(JordanName::FullMatrix(1, 1))?;
    let ko_gl = fingerprint(koecher_alg(&gl11)?.lie());
    s.expect("Ko(gl(1,1)+) consistent with psl(2|2)", ko_gl.consistent_with(&psl22), "");
    let tilde_gl = koecher_tilde_alg(&gl11)?;
    s.expect(
        "Ko~(gl(1,1)+) has the dimensions of D(2,1,-1): 17 = (9|8)",
        parity_dims(tilde_gl.lie()) == (9, 8),
        dims_fmt(parity_dims(tilde_gl.lie())),
    );
    let ti_der = tits(&gl11, &TitsData::der(&gl11)?)?;
    s.expect(
        "Ti(gl(1,1)+,Der,sl2) and Ko~(gl(1,1)+) have equal graded dims",
        ti_der.graded_parity_dims() == tilde_gl.graded_parity_dims(),
        "",
    );
    for (p, q2) in [(1, 2), (2, 2), (3, 0)] {
        let v = jordan(JordanName::Form(p, q2))?;
        let dims = parity_dims(koecher_alg(&v)?.lie());
        let want = osp_dims(p + 3, q2);
        s.expect(
            format!("Ko(form({p},{q2})) has the dimensions of osp({}|{q2})", p + 3),
            dims == want,
            format!("{} vs {}", dims_fmt(dims), dims_fmt(want)),
        );
    }
    s.note("form(p,2q) is the unital algebra of a form on a (p|2q)-dimensional space, the row (m-3,2n)+ with m = p+3");
    let mut fps = Vec::new();
    for t in [crate::exact::Rational::from_int(2), crate::exact::Rational::new(1, 2)] {
        let v = jordan(JordanName::Dt(t.clone()))?;
        let ko = koecher_alg(&v)?;
        s.expect(format!("Ko(D_{t}) is 17 = (9|8)"), parity_dims(ko.lie()) == (9, 8), dims_fmt(parity_dims(ko.lie())));
        fps.push(fingerprint(ko.lie()));
    }
    s.expect("Ko(D_2) and Ko(D_1/2) have equal fingerprints", fps[0] == fps[1], "");
    r.sections.push(s);
    Ok(r)
}

fn fp_fmt(f: &crate::tkk::Fingerprint) -> String {
    format!(
        "dims {} center {} derived {} der {} out {}",
        dims_fmt(f.dims),
        dims_fmt(f.center),
        dims_fmt(f.derived),
        dims_fmt(f.der),
        dims_fmt(f.out)
    )
}

/// `(even, odd)` dimensions of `osp(m|2n)`.
pub fn osp_dims(m: usize, two_n: usize) -> (usize, usize) {
    let n = two_n / 2;
    (m * (m - 1) / 2 + n * (2 * n + 1), m * two_n)
}

/// Names covered by `verify all`, Jordan entries first.
pub fn shipped_sources() -> Vec<String> {
    JordanName::shipped()
        .iter()
        .map(ToString::to_string)
        .chain(LieName::shipped().iter().map(ToString::to_string))
        .collect()
}

/// One command's worth of reports, in a fixed order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Batch {
    pub command: String,
    pub passed: bool,
    pub reports: Vec<Report>,
}

impl Batch {
    pub fn new(command: impl Into<String>, reports: Vec<Report>) -> Self {
        let passed = reports.iter().all(Report::passed);
        Batch { command: command.into(), passed, reports }
    }

    pub fn to_human(&self) -> String {
        let mut out: String = self.reports.iter().map(Report::to_human).collect::<Vec<_>>().join("\n");
        let failures: Vec<String> = self
            .reports
            .iter()
            .flat_map(|r| r.failures().into_iter().map(move |f| format!("{}: {f}", r.algebra)))
            .collect();
        let total: usize = self.reports.iter().map(|r| r.checks().count()).sum();
        let _ = writeln!(out, "\n{} checks, {} failed", total, failures.len());
        for f in failures {
            let _ = writeln!(out, "FAILED {f}");
        }
        out
    }

    pub fn to_machine(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn choice_names() {
        for s in ["kan", "ko", "kotilde", "ti-inn", "ti-der"] {
            assert_eq!(s.parse::<TkkChoice>().unwrap().to_string(), s);
        }
        assert!("tits".parse::<TkkChoice>().is_err());
    }

    #[test]
    fn failures_and_json() {
        let mut s = Section::new("x");
        s.check("fine", Ok(()));
        s.check("broken", Err(crate::error::Witness::new(vec![1], "nope")));
        s.note("n");
        let mut r = Report::new("a");
        r.sections.push(s);
        assert!(!r.passed());
        assert_eq!(r.failures(), vec!["x: broken".to_string()]);
        let b = Batch::new("t", vec![r]);
        assert!(!b.passed);
        let back: Batch = serde_json::from_str(&b.to_machine()).unwrap();
        assert_eq!(back, b);
        assert!(b.to_human().contains("[FAIL] broken"));
    }

    #[test]
    fn osp_counts() {
        // osp(1|2) = 3 + 2, osp(4|2) = 9 + 8
        assert_eq!(osp_dims(1, 2), (3, 2));
        assert_eq!(osp_dims(4, 2), (9, 8));
        assert_eq!(osp_dims(6, 0), (15, 0));
    }

    #[test]
    fn reports_for_small_inputs() {
        let v = jordan_catalog(&"gl+:1,1".parse().unwrap()).unwrap();
        let r = verify_jordan(&v).unwrap();
        assert!(r.passed(), "{}", r.to_human());
        assert!(r.sections.iter().any(|s| s.title == "unital equivalences"));
        let k = jordan_catalog(&JordanName::KacK).unwrap();
        let (r, t) = tkk_report(&k, TkkChoice::Ko).unwrap();
        assert_eq!(t.graded_dims(), [3, 8, 3]);
        assert_eq!(r.fact("jordan-graded"), Some("yes"));
    }
}
