use super::*;
use crate::catalog::{jordan_catalog, JordanName};

fn jordan(name: &str) -> crate::jordan::JordanAlgebra {
    jordan_catalog(&name.parse::<JordanName>().unwrap()).unwrap()
}

#[test]
fn koecher_dims() {
    let k = koecher_alg(&jordan("kacK")).unwrap();
    assert_eq!(k.graded_dims(), [3, 8, 3]);
    assert_eq!(crate::superspace::parity_dims(k.lie()), (6, 8));
    assert_eq!(koecher_tilde_alg(&jordan("kacK")).unwrap().dim(), 15);
    assert_eq!(koecher_alg(&jordan("j19")).unwrap().graded_dims(), [3, 3, 3]);
    assert_eq!(koecher_alg(&jordan("gl+:1,1")).unwrap().graded_dims(), [4, 6, 4]);
    assert_eq!(koecher_tilde_alg(&jordan("gl+:1,1")).unwrap().dim(), 17);
}

#[test]
fn kantor_relations() {
    for name in ["j19", "kacK", "gl+:1,1", "trunc_poly:4", "form:1,2"] {
        let v = jordan(name);
        let kan = kantor(&v).unwrap();
        assert_eq!(check_kantor_relations(&v, &kan).unwrap(), Ok(()), "{name}");
    }
    let v = jordan("gl+:1,1");
    assert_eq!(kantor(&v).unwrap().graded_dims(), [4, 6, 4]);
    assert_eq!(kantor(&jordan("j19")).unwrap().graded_dims()[1], 2);
}

#[test]
fn tits_side() {
    let k = killing_form(&sl2());
    assert_eq!(k[(0, 1)], crate::Rational::from_int(2));
    for (name, der) in [("gl+:1,1", false), ("kacK", false), ("j19", true), ("j19", false)] {
        let v = jordan(name);
        let data = if der { TitsData::der(&v) } else { TitsData::inn(&v) }.unwrap();
        assert_eq!(check_propnu(&v, &data).unwrap(), Ok(()), "{name}");
        assert_eq!(tits_roundtrip(&v, &data).unwrap(), Ok(()), "{name}");
    }
}

#[test]
fn unital_gl11() {
    let r = check_unital_equivalences(&jordan("gl+:1,1")).unwrap();
    assert_eq!(r.kan_ko, Ok(()));
    assert_eq!(r.ti_ko, Ok(()));
    assert_eq!(r.kod_inn_ko, Ok(()));
    assert!(r.outer_shifts_vanish());
    assert!(r.shift_one_is_v());
    assert!(r.der_is_tilde(), "{:?} {:?}", r.tower.der_dims, r.tilde_dims);
    assert!(r.out_zero_is_str_mod_istr());
    assert_eq!(r.tower.out_dim(), 3);
}

#[test]
fn k_counterexample() {
    let v = jordan("kacK");
    assert!(matches!(check_unital_equivalences(&v), Err(crate::Error::NotUnital(_))));
    let r = counterexample_report(&v).unwrap();
    assert_ne!(r.kan_plus_dim(), 3);
    assert!(r.kan_differs());
    assert_eq!(r.ko_tower.out_support(), [(-1, (1, 0)), (0, (1, 0)), (1, (1, 0))].into_iter().collect());
    assert!(r.tilde_out_vanishes());
}

#[test]
fn round_trips() {
    for name in ["j19", "kacK", "gl+:1,1"] {
        let v = jordan(name);
        let ko = koecher_alg(&v).unwrap();
        let jg = is_jordan_graded(ko.lie()).unwrap();
        assert!(jg.holds(), "{name}");
        let pair = j_functor(ko.lie()).unwrap();
        let doubled = crate::pair::JordanPair::doubled(&v);
        for s in crate::pair::Side::BOTH {
            for x in 0..v.dim() {
                for y in 0..v.dim() {
                    assert_eq!(pair.d_basis(s, x, y), doubled.d_basis(s, x, y));
                }
            }
        }
        assert_eq!(koecher_of_j_iso(ko.lie()).unwrap(), Ok(()), "{name}");
        let tilde = koecher_tilde_alg(&v).unwrap();
        assert_eq!(check_ideal_in_tilde(&ko, &tilde).unwrap(), Ok(()), "{name}");
    }
}

#[test]
fn checks_detect_broken_maps() {
    let ko = koecher_alg(&jordan("kacK")).unwrap();
    let g = ko.lie();
    let id = crate::exact::Matrix::identity(g.dim());
    assert_eq!(check_isomorphism(g, g, &id), Ok(()));
    let mut bad = id.clone();
    bad[(0, 0)] = crate::Rational::from_int(2);
    assert!(check_homomorphism(g, g, &bad).is_err());
}

#[test]
fn central_degree_zero_is_not_jordan_graded() {
    use crate::exact::SparseVec;
    use crate::superspace::{Kind, SuperAlgebra};
    let g = koecher_alg(&jordan("j19")).unwrap().into_lie();
    let d = g.dim();
    let mut table: Vec<Vec<SparseVec>> =
        (0..d).map(|i| (0..d).map(|j| g.basis_product(i, j).clone()).chain([SparseVec::new()]).collect()).collect();
    table.push(vec![SparseVec::new(); d + 1]);
    let mut parity = g.parities().to_vec();
    parity.push(crate::superspace::Parity::Even);
    let mut zdeg = g.zdegrees().unwrap().to_vec();
    zdeg.push(0);
    let h = SuperAlgebra::from_table("g+c", parity, Some(zdeg), table, Kind::Lie).unwrap();
    let jg = is_jordan_graded(&h).unwrap();
    assert!(!jg.holds());
    assert_eq!(jg.central_zero, 1);
}

#[test]
fn abelian_pair_is_trivial() {
    use crate::superspace::{Kind, Parity, SuperAlgebra};
    let g = SuperAlgebra::from_entries("ab", vec![Parity::Even; 3], Some(vec![-1, 0, 1]), &[], Kind::Lie).unwrap();
    let p = j_functor(&g).unwrap();
    assert!(p.d_basis(crate::pair::Side::Plus, 0, 0).is_zero());
}

#[test]
fn tits_data_rejects_bad_containers() {
    let v = jordan("j19");
    let l = crate::structure::l_space(&v);
    assert!(matches!(TitsData::new(&v, l), Err(crate::Error::InvalidContainer(_))));
}
