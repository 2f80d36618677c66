use nilq::lie::{DecompositionSpec, RootSystem};
use nilq::quant::{self, Normalization};
use nilq::rmx::{self, coord_outer, coord_unit, BraidingMatrix, CoordTensor, ModuleBasis, QuasiR};
use nilq::uq::{Elem, Uq};
use nilq::QScalar;

fn s(x: &str) -> QScalar {
    x.parse().unwrap()
}

fn g2() -> (Uq, Vec<Elem>) {
    let u = Uq::new(RootSystem::build("G2").unwrap());
    let v = u.root_vectors(&[1, 0, 1, 0, 1, 0]);
    (u, v)
}

fn coord(entries: &[(&[usize], &str)]) -> CoordTensor {
    entries.iter().map(|(k, c)| (k.to_vec(), s(c))).filter(|(_, c)| !c.is_zero()).collect()
}

fn add(a: &CoordTensor, b: &CoordTensor, c: &QScalar) -> CoordTensor {
    let mut out = a.clone();
    nilq::linalg::axpy(&mut out, c, b);
    out
}

#[test]
fn g2_braiding_on_degree_one() {
    let (u, v) = g2();
    let r = QuasiR::new(&u, &[1]);
    let basis = ModuleBasis::new(vec![v[1].clone(), v[5].clone()]).unwrap();
    let m = BraidingMatrix::new(&r, &basis).unwrap();
    assert_eq!(m.entries[&(0, 0)], coord(&[(&[0, 0], "q^2")]));
    assert_eq!(m.entries[&(0, 1)], coord(&[(&[1, 0], "q^-1"), (&[0, 1], "q^2 - q^-4")]));
    assert_eq!(m.entries[&(1, 0)], coord(&[(&[0, 1], "q^-1")]));
    assert_eq!(m.entries[&(1, 1)], coord(&[(&[1, 1], "q^2")]));

    let y = coord(&[(&[0, 1], "1"), (&[1, 0], "-q^3")]);
    assert_eq!(m.apply(1, &y), y.iter().map(|(k, c)| (k.clone(), c * &s("-q^-4"))).collect::<CoordTensor>());

    let l1 = coord_outer(&y, &coord_unit(1));
    let l2 = coord_outer(&coord_unit(1), &y);
    let words = vec![vec![], vec![1], vec![1, 2]];
    let want1 = add(&l1.iter().map(|(k, c)| (k.clone(), c * &s("1 - q^-4"))).collect(), &l2, &s("q"));
    assert_eq!(m.apply_sum(&words, &l1), want1);
    let want2 = add(&l1.iter().map(|(k, c)| (k.clone(), c * &s("q^-1 - q^-5"))).collect(), &l2, &s("q^2 + 1 - q^-2"));
    assert_eq!(m.apply_sum(&words, &l2), want2);
}

#[test]
fn g2_braiding_commutes_with_levi_action() {
    let (u, v) = g2();
    let r = QuasiR::new(&u, &[1]);
    for (a, b) in [(1, 5), (5, 1), (5, 5)] {
        let t = rmx::pairs_to_tensor(&r.braid_pair(&v[a], &v[b]).unwrap());
        let (x, y) = (&v[a], &v[b]);
        let k = |e: &Elem, p: i64| u.adjoint(&u.k_simple(1, p), e);
        let moved = [
            vec![(u.ad_e(1, x), y.clone()), (k(x, 1), u.ad_e(1, y))],
            vec![(u.ad_f(1, x), k(y, -1)), (x.clone(), u.ad_f(1, y))],
            vec![(k(x, 1), k(y, 1))],
        ];
        for (gen, pairs) in [u.e(1), u.f(1), u.k_simple(1, 1)].iter().zip(moved) {
            let mut lhs = Vec::new();
            for (p, q) in &pairs {
                lhs.extend(r.braid_pair(p, q).unwrap());
            }
            assert_eq!(rmx::pairs_to_tensor(&lhs), rmx::tensor_adjoint(&u, gen, &t));
        }
    }
}

#[test]
fn g2_coproduct_of_products_is_transmuted_shuffle() {
    let (u, v) = g2();
    let r = QuasiR::new(&u, &[1]);
    let x = [v[1].clone(), v[5].clone()];
    for n in 1..=3 {
        let mut idx = vec![0usize; n];
        loop {
            let xs: Vec<Elem> = idx.iter().map(|&i| x[i].clone()).collect();
            let prod = u.mul_all(&xs.iter().collect::<Vec<_>>());
            let p = r.shuffle_product(&xs).unwrap();
            assert_eq!(r.transmute_pairs(&p, false).unwrap(), u.coproduct(&prod), "{idx:?}");
            if n <= 2 {
                assert_eq!(rmx::pairs_to_tensor(&r.braided_power(&xs).unwrap()), rmx::pairs_to_tensor(&p));
            }
            let mut k = 0;
            while k < n && idx[k] == 1 {
                idx[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
            idx[k] = 1;
        }
    }
}

#[test]
fn transmutation_is_invertible() {
    let (u, v) = g2();
    let r = QuasiR::new(&u, &[1]);
    let t = rmx::pairs_to_tensor(&[(u.e(0), v[5].clone()), (u.f(1), v[1].clone())]);
    let there = r.transmute_tensor(&t, false).unwrap();
    assert_eq!(r.transmute_tensor(&there, true).unwrap(), t);
}

#[test]
fn braid_equation_on_a3_degree_one() {
    let u = Uq::new(RootSystem::build("A3").unwrap());
    let spec = DecompositionSpec::new(&u.rs, vec![0, 1, 2]).unwrap();
    let q = quant::quantize(&u, &spec, Normalization::Canonical).unwrap();
    let m = &q.pieces[2].modules[0];
    assert_eq!(m.dim(), 3);
    let r = QuasiR::new(&u, &m.levi);
    let sigma = BraidingMatrix::new(&r, &ModuleBasis::new(m.basis.clone()).unwrap()).unwrap();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let t = coord_outer(&coord_outer(&coord_unit(a), &coord_unit(b)), &coord_unit(c));
                assert_eq!(sigma.apply_word(&[1, 2, 1], &t), sigma.apply_word(&[2, 1, 2], &t));
            }
        }
    }
}
