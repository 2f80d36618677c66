use std::collections::BTreeMap;

use nilq::lie::RootSystem;
use nilq::rep::{character_product, WeightLattice};
use nilq::rmx::QuasiR;
use nilq::scalar::{Laurent, QScalar};
use nilq::uq::{Elem, Tensor, Uq};
use num::BigRational;
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = Laurent> {
    (-3i32..=3, prop::collection::vec(-3i64..=3, 1..4))
        .prop_map(|(low, cs)| Laurent::from_parts(low, cs.into_iter().map(|c| BigRational::from_integer(c.into())).collect()))
}

fn scalar() -> impl Strategy<Value = QScalar> {
    (laurent(), laurent()).prop_map(|(n, d)| if d.is_zero() { QScalar::from_laurent(n) } else { QScalar::from_fraction(n, d).unwrap() })
}

fn small_coeff() -> impl Strategy<Value = QScalar> {
    (-2i64..=2, -2i32..=2).prop_map(|(c, e)| &QScalar::from_int(c) * &QScalar::q_pow(e))
}

/// Coefficient, F-word, Cartan exponent, E-word.
type Term = (QScalar, Vec<u8>, Vec<i64>, Vec<u8>);

/// Random element of `U_q` for a rank-`rank` algebra: sums of `F^a K^b E^c` words.
fn element(rank: usize) -> impl Strategy<Value = Vec<Term>> {
    let r = rank as u8;
    let term = (
        small_coeff(),
        prop::collection::vec(0..r, 0..2),
        prop::collection::vec(-1i64..=1, rank),
        prop::collection::vec(0..r, 0..3),
    );
    prop::collection::vec(term, 1..3)
}

fn build(u: &Uq, terms: &[Term]) -> Elem {
    let mut x = Elem::zero();
    for (c, f, k, e) in terms {
        let m = u.mul_all(&[&u.f_word(f), &u.k(k), &u.e_word(e)]);
        x.axpy(c, &m);
    }
    x
}

fn a2() -> Uq {
    Uq::new(RootSystem::build("A2").unwrap())
}

fn b2() -> Uq {
    Uq::new(RootSystem::build("B2").unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!((&b * &a).checked_div(&a).unwrap(), b.clone());
        }
        prop_assert_eq!(a.to_string().parse::<QScalar>().unwrap(), a.clone());
        prop_assert_eq!(a.bar().bar(), a);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in laurent(), b in laurent(), t in 1i64..5) {
        let at = BigRational::new(t.into(), 2.into());
        let (qa, qb) = (QScalar::from_laurent(a), QScalar::from_laurent(b));
        let prod = (&qa * &qb).eval(&at).unwrap();
        prop_assert_eq!(prod, qa.eval(&at).unwrap() * qb.eval(&at).unwrap());
    }

    #[test]
    fn hopf_axioms_a2(x in element(2), y in element(2)) {
        let u = a2();
        let (x, y) = (build(&u, &x), build(&u, &y));
        let dx = u.coproduct(&x);
        prop_assert_eq!(u.coproduct_leg(&dx, 0), u.coproduct_leg(&dx, 1));
        prop_assert_eq!(u.coproduct(&u.mul(&x, &y)), u.tensor_mul(&dx, &u.coproduct(&y)));
        let eps = u.map_leg(&dx, 0, |e| u.scalar(u.counit(e)));
        prop_assert_eq!(u.multiply_legs(&eps), x.clone());
        let anti = u.map_leg(&dx, 0, |e| u.antipode(e));
        prop_assert_eq!(u.multiply_legs(&anti), u.scalar(u.counit(&x)));
        prop_assert_eq!(u.antipode(&u.mul(&x, &y)), u.mul(&u.antipode(&y), &u.antipode(&x)));
    }

    #[test]
    fn associativity_b2(x in element(2), y in element(2), z in element(2)) {
        let u = b2();
        let (x, y, z) = (build(&u, &x), build(&u, &y), build(&u, &z));
        prop_assert_eq!(u.mul(&u.mul(&x, &y), &z), u.mul(&x, &u.mul(&y, &z)));
    }

    #[test]
    fn lusztig_is_an_invertible_algebra_map(x in element(2), y in element(2), i in 0usize..2) {
        let u = b2();
        let (x, y) = (build(&u, &x), build(&u, &y));
        let tx = u.lusztig(i, &x, false);
        prop_assert_eq!(u.lusztig(i, &tx, true), x.clone());
        prop_assert_eq!(u.lusztig(i, &u.mul(&x, &y), false), u.mul(&tx, &u.lusztig(i, &y, false)));
    }

    #[test]
    fn lusztig_braid_relation_a2(x in element(2)) {
        let u = a2();
        let x = build(&u, &x);
        prop_assert_eq!(u.lusztig_word(&[0, 1, 0], &x), u.lusztig_word(&[1, 0, 1], &x));
    }

    #[test]
    fn transmutation_round_trip(x in element(2), c in small_coeff()) {
        let u = a2();
        let r = QuasiR::new(&u, &[0]);
        let x = build(&u, &x);
        // Right legs from the adjoint module spanned by E_2 and [E_1, E_2]_q.
        let y = u.e(1).add(&u.ad_e(0, &u.e(1)).scale(&c));
        let t = Tensor::outer(&[&x, &y]);
        let there = r.transmute_tensor(&t, false).unwrap();
        prop_assert_eq!(r.transmute_tensor(&there, true).unwrap(), t);
    }

    #[test]
    fn tensor_products_commute(l in prop::collection::vec(0i64..=2, 2), m in prop::collection::vec(0i64..=2, 2), t in 0usize..3) {
        let rs = RootSystem::build(["A2", "B2", "G2"][t]).unwrap();
        let lat = WeightLattice::new(&rs);
        let (vl, vm) = (lat.module(&l).unwrap(), lat.module(&m).unwrap());
        let lm = lat.tensor_decompose(&l, &vm).unwrap();
        prop_assert_eq!(&lm, &lat.tensor_decompose(&m, &vl).unwrap());
        let total: u64 = lm.iter().map(|(nu, k)| k * lat.dimension(nu).unwrap()).sum();
        prop_assert_eq!(total, vl.dim * vm.dim);
        prop_assert_eq!(lat.dimension(&l).unwrap(), vl.dim);
        let mut sum: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
        for (nu, k) in &lm {
            for (w, c) in lat.character(nu).unwrap() {
                *sum.entry(w).or_default() += k * c;
            }
        }
        prop_assert_eq!(sum, character_product(&lat.character(&l).unwrap(), &lat.character(&m).unwrap()));
    }
}
