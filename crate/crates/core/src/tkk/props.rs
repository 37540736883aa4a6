use std::sync::OnceLock;

use proptest::prelude::*;

use super::der::check_derivation;
use super::*;
use crate::catalog::jordan_catalog;
use crate::exact::{axpy, zero_vec, Matrix, Rational, Vector};
use crate::jordan::JordanAlgebra;
use crate::pair::Side;
use crate::superspace::Parity;

struct Case {
    v: JordanAlgebra,
    pair: crate::pair::JordanPair,
    tower: DerTower,
    ko_dim: usize,
}

fn cases() -> &'static [Case] {
    static DATA: OnceLock<Vec<Case>> = OnceLock::new();
    DATA.get_or_init(|| {
        ["j19", "kacK", "trunc_poly:4", "gl+:1,1", "form:1,2"]
            .iter()
            .map(|n| {
                let v = jordan_catalog(&n.parse().unwrap()).unwrap();
                let ko = koecher_alg(&v).unwrap();
                Case { pair: j_functor(ko.lie()).unwrap(), tower: lie_der_tower(ko.lie()), ko_dim: ko.dim(), v }
            })
            .collect()
    })
}

fn homogeneous(v: &JordanAlgebra, p: Parity, coeffs: &[i64]) -> Vector {
    let mut x = zero_vec(v.dim());
    for (k, c) in (0..v.dim()).filter(|k| v.parity(*k) == p).zip(coeffs) {
        axpy(&mut x, &Rational::new(*c, 3), &v.basis_vec(k));
    }
    x
}

fn parity() -> impl Strategy<Value = Parity> {
    any::<bool>().prop_map(|b| Parity::from_bit(b as u8))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn j_of_ko_on_elements(
        a in 0..5usize,
        ps in [parity(), parity(), parity()],
        cs in [prop::collection::vec(-3i64..=3, 9), prop::collection::vec(-3i64..=3, 9), prop::collection::vec(-3i64..=3, 9)],
    ) {
        let c = &cases()[a];
        let [x, y, z] = [0, 1, 2].map(|i| homogeneous(&c.v, ps[i], &cs[i]));
        for s in Side::BOTH {
            prop_assert_eq!(c.pair.triple(s, &x, &y, &z), c.v.triple(&x, &y, &z));
        }
    }

    #[test]
    fn derivation_combinations(a in 0..5usize, odd in any::<bool>(), coeffs in prop::collection::vec(-2i64..=2, 40)) {
        let c = &cases()[a];
        let p = Parity::from_bit(odd as u8);
        let basis = c.tower.der.part(p).basis();
        let mut m = vec![Rational::zero(); c.ko_dim * c.ko_dim];
        for (b, k) in basis.iter().zip(&coeffs) {
            axpy(&mut m, &Rational::from_int(*k), b);
        }
        let m = Matrix::from_flat(c.ko_dim, c.ko_dim, m).unwrap();
        let ko = koecher_alg(&c.v).unwrap();
        prop_assert!(check_derivation(ko.lie(), &m, p).is_ok());
    }
}
