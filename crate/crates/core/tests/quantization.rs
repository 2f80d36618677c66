use nilq::lie::{self, DecompositionSpec, RootSystem};
use nilq::quant::{self, G2Reference, Normalization};
use nilq::scalar::{q_factorial, q_int, QScalar};
use nilq::uq::{Pbw, Uq};

fn g2() -> Uq {
    Uq::new(RootSystem::build("G2").unwrap())
}

#[test]
fn g2_adapted_word() {
    let u = g2();
    let spec = DecompositionSpec::new(&u.rs, vec![1, 0]).unwrap();
    assert_eq!(lie::adapted_word(&u.rs, &spec).0, G2Reference::WORD.to_vec());
}

#[test]
fn g2_quantization_matches_reference() {
    let u = g2();
    let spec = DecompositionSpec::new(&u.rs, vec![1, 0]).unwrap();
    let q = quant::quantize(&u, &spec, Normalization::G2Table).unwrap();
    let pbw = Pbw::new(&u, &q.word).unwrap();
    let p = &q.pieces[1];
    let dims: Vec<usize> = p.modules.iter().map(|m| m.dim()).collect();
    assert_eq!(dims, vec![2, 1, 2]);
    let refs = G2Reference::elements();
    assert_eq!(pbw.expand(&p.modules[1].basis[0]).unwrap(), refs[1].1);
    assert_eq!(pbw.expand(&p.modules[2].lowest).unwrap(), refs[2].1);
    let x3 = u.ad_e(1, &p.modules[2].lowest);
    assert_eq!(pbw.expand(&x3).unwrap(), refs[0].1);
    for c in &p.certificates {
        assert_eq!(c.solution_dim, 1);
    }
    assert!(quant::coideal_check(&u, &p.basis()).is_ok());
    let canon = quant::quantize(&u, &spec, Normalization::Canonical).unwrap();
    // The canonical form has unit coefficient on its lowest-degree PBW monomial,
    // so the scalar to the reference is the reference's coefficient there.
    let leads = [refs[0].1.clone(), refs[1].1.clone(), refs[2].1.clone()];
    let ratios = &canon.pieces[1].reference_ratio;
    assert!(ratios[0].as_ref().unwrap().is_one());
    for (d, r) in leads[1..].iter().enumerate() {
        let (_, c) = quant::leading_term(r).unwrap();
        assert_eq!(ratios[d + 1].as_ref().unwrap(), c);
    }
    assert_eq!(ratios[1].as_ref().unwrap(), &(&QScalar::q_pow(4) * &q_int(2, 1)));
    assert_eq!(ratios[2].as_ref().unwrap(), &(&QScalar::q_pow(4) * &q_factorial(3, 1)));
}
