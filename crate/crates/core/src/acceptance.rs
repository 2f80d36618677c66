//! End-to-end checks of the headline results, one report per criterion.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::lie::{self, DecompositionSpec, Root, RootSystem};
use crate::quant::{self, G2Reference, Normalization};
use crate::rep;
use crate::rmx::{coord_outer, coord_unit, BraidingMatrix, CoordTensor, ModuleBasis, QuasiR};
use crate::scalar::{q_int, QScalar};
use crate::uq::{Convention, Elem, Pbw, PbwExponent, Tensor, Uq};

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(serialize_with = "ser_secs")]
    pub elapsed: Duration,
}

fn ser_secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64((d.as_secs_f64() * 1000.0).round() / 1000.0)
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:>2}. {} ({:.2}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

type Check = fn() -> Result<(bool, String)>;

pub const CRITERIA: [(&str, Check, Duration); 12] = [
    ("G2 root enumeration", g2_roots, Duration::from_secs(1)),
    ("G2 q-commutator table", g2_commutators, Duration::from_secs(10)),
    ("Levendorskii-Soibelman support", ls_support, Duration::from_secs(60)),
    ("PBW dimension oracle", pbw_dimensions, Duration::MAX),
    ("G2 braiding values", g2_braiding, Duration::from_secs(30)),
    ("transmutation and shuffle identities", shuffle_identities, Duration::MAX),
    ("G2 quantization", g2_quantization, Duration::MAX),
    ("coideal verification", coideal_verification, Duration::from_secs(300)),
    ("twisted Schubert cells", schubert_cells, Duration::MAX),
    ("degree-three multiplicity table", appendix, Duration::from_secs(120)),
    ("classical limit", classical_limit, Duration::MAX),
    ("tangent spaces", tangent, Duration::MAX),
];

/// Runs criterion `id` (one-based).
pub fn run(id: usize) -> Report {
    let (name, check, budget) = CRITERIA[id - 1];
    let t = Instant::now();
    let outcome = check();
    let elapsed = t.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(x) => x,
        Err(e) => (false, format!("error: {e}")),
    };
    if elapsed > budget {
        passed = false;
        detail = format!("{detail}; exceeded time budget of {}s", budget.as_secs());
    }
    Report { id, name, passed, detail, elapsed }
}

/// Runs all criteria, `jobs` at a time.
pub fn run_all(jobs: usize) -> Vec<Report> {
    let ids: Vec<usize> = (1..=CRITERIA.len()).collect();
    if jobs <= 1 {
        return ids.into_iter().map(run).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| ids.into_par_iter().map(run).collect()),
        Err(_) => ids.into_iter().map(run).collect(),
    }
}

fn uq(t: &str) -> Result<Uq> {
    Ok(Uq::new(RootSystem::build(t)?))
}

fn s(x: &str) -> QScalar {
    x.parse().expect("valid scalar literal")
}

fn g2_word() -> Vec<usize> {
    G2Reference::WORD.to_vec()
}

fn exp(pairs: &[(usize, u32)]) -> PbwExponent {
    let mut e = vec![0; 6];
    for &(k, n) in pairs {
        e[k - 1] = n;
    }
    e
}

fn g2_roots() -> Result<(bool, String)> {
    let rs = RootSystem::build("G2")?;
    let roots = lie::root_enumeration(&rs, &g2_word())?;
    let want: Vec<Root> = vec![vec![0, 1], vec![1, 1], vec![3, 2], vec![2, 1], vec![3, 1], vec![1, 0]];
    let text: Vec<String> = roots.iter().map(|r| lie::root_to_string(r)).collect();
    Ok((roots == want, text.join(", ")))
}

/// Nonzero q-commutators `[E_bi, E_bj]_q`, `i < j`, for the word `2,1,2,1,2,1`.
pub fn g2_commutator_table() -> BTreeMap<(usize, usize), BTreeMap<PbwExponent, QScalar>> {
    let c = |pairs: &[(&[(usize, u32)], QScalar)]| -> BTreeMap<PbwExponent, QScalar> {
        pairs.iter().map(|(e, v)| (exp(e), v.clone())).collect()
    };
    BTreeMap::from([
        ((1, 3), c(&[(&[(2, 3)], s("q^6 - q^4 - q^2 + 1"))])),
        ((1, 4), c(&[(&[(2, 2)], s("q^3 - q^-1"))])),
        ((1, 5), c(&[(&[(3, 1)], s("-q - q^-1 + q^-3")), (&[(2, 1), (4, 1)], s("q - q^-1"))])),
        ((1, 6), c(&[(&[(2, 1)], QScalar::one())])),
        ((2, 4), c(&[(&[(3, 1)], q_int(3, 1))])),
        ((2, 5), c(&[(&[(4, 2)], s("q^3 - q^-1"))])),
        ((2, 6), c(&[(&[(4, 1)], q_int(2, 1))])),
        ((3, 5), c(&[(&[(4, 3)], s("q^6 - q^4 - q^2 + 1"))])),
        ((3, 6), c(&[(&[(4, 2)], s("q^3 - q^-1"))])),
        ((4, 6), c(&[(&[(5, 1)], q_int(3, 1))])),
    ])
}

fn commutator_mismatches(u: &Uq, word: &[usize], sign: &[i64]) -> Result<Vec<String>> {
    let pbw = Pbw::new(u, word)?;
    let table = g2_commutator_table();
    let mut bad = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            let c = u.q_commutator(&pbw.vectors[i], &pbw.vectors[j])?;
            let got = pbw.expand(&c)?;
            // Under a sign character chi on root vectors the relation picks up
            // chi_i chi_j / chi(monomial).
            let want: BTreeMap<PbwExponent, QScalar> = table
                .get(&(i + 1, j + 1))
                .cloned()
                .unwrap_or_default()
                .into_iter()
                .map(|(e, v)| {
                    let mono: i64 = e.iter().enumerate().map(|(k, &n)| if n % 2 == 1 { sign[k] } else { 1 }).product();
                    let f = sign[i] * sign[j] * mono;
                    (e, if f < 0 { -&v } else { v })
                })
                .collect();
            if got != want {
                bad.push(format!("[b{},b{}] = {}", i + 1, j + 1, Pbw::format_expansion(&got)));
            }
        }
    }
    Ok(bad)
}

fn g2_commutators() -> Result<(bool, String)> {
    let u = uq("G2")?;
    let bad = commutator_mismatches(&u, &g2_word(), &[1; 6])?;
    if bad.is_empty() {
        return Ok((true, "all 15 relations exact (branch: exact)".into()));
    }
    let t = Uq::with_convention(RootSystem::build("G2")?, Convention::SignTwisted);
    let pbw = Pbw::new(&t, &g2_word())?;
    let plain = Pbw::new(&u, &g2_word())?;
    let mut sign = Vec::new();
    for (a, b) in pbw.vectors.iter().zip(&plain.vectors) {
        match a.ratio_to(b).and_then(|r| r.as_rational()) {
            Some(r) if r == num::BigRational::from_integer(1.into()) => sign.push(1),
            Some(r) if r == num::BigRational::from_integer((-1).into()) => sign.push(-1),
            _ => return Ok((false, format!("exact branch failed: {}", bad.join("; ")))),
        }
    }
    let bad2 = commutator_mismatches(&u, &g2_word(), &sign)?;
    Ok((bad2.is_empty(), format!("branch: sign character {sign:?}; mismatches {}", bad2.join("; "))))
}

const SMALL_TYPES: [&str; 4] = ["G2", "A2", "A3", "B2"];

fn ls_support() -> Result<(bool, String)> {
    let mut notes = Vec::new();
    let mut ok = true;
    for t in SMALL_TYPES {
        let u = uq(t)?;
        let all: Vec<usize> = (0..u.rank()).collect();
        let word = lie::longest_word(&u.rs, &all);
        let pbw = Pbw::new(&u, &word)?;
        let n = word.len();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                let c = u.q_commutator(&pbw.vectors[i], &pbw.vectors[j])?;
                let e = pbw.expand(&c)?;
                if !Pbw::supported_between(&e, i, j) {
                    ok = false;
                    notes.push(format!("{t}: [b{},b{}] = {}", i + 1, j + 1, Pbw::format_expansion(&e)));
                }
                count += 1;
            }
        }
        notes.push(format!("{t} word {:?}: {count} pairs", lie::one_based(&word)));
    }
    Ok((ok, notes.join("; ")))
}

fn weights_below(top: &Root) -> Vec<Root> {
    let mut out = vec![vec![]];
    for &c in top {
        out = out.into_iter().flat_map(|v: Vec<i64>| (0..=c).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out.retain(|v| v.iter().any(|&x| x > 0));
    out
}

fn pbw_dimensions() -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for t in SMALL_TYPES {
        let u = uq(t)?;
        let all: Vec<usize> = (0..u.rank()).collect();
        let pbw = Pbw::new(&u, &lie::longest_word(&u.rs, &all))?;
        let theta = u.rs.highest_roots()[0].clone();
        let weights = weights_below(&theta);
        for beta in &weights {
            let k = u.rs.kostant_partition(beta) as usize;
            let p = pbw.exponents(beta).len();
            let d = u.positive_dim(beta);
            if p != k || d != k {
                ok = false;
                notes.push(format!("{t} {beta:?}: pbw {p}, serre {d}, kostant {k}"));
            }
        }
        notes.push(format!("{t}: {} weights up to {}", weights.len(), lie::root_to_string(&theta)));
    }
    Ok((ok, notes.join("; ")))
}

fn coord(entries: &[(&[usize], &str)]) -> CoordTensor {
    entries.iter().map(|(k, c)| (k.to_vec(), s(c))).filter(|(_, c)| !c.is_zero()).collect()
}

fn scaled(t: &CoordTensor, c: &QScalar) -> CoordTensor {
    t.iter().map(|(k, v)| (k.clone(), v * c)).collect()
}

fn plus(a: &CoordTensor, b: &CoordTensor) -> CoordTensor {
    let mut out = a.clone();
    crate::linalg::axpy(&mut out, &QScalar::one(), b);
    out
}

fn g2_braiding() -> Result<(bool, String)> {
    let u = uq("G2")?;
    let spec = DecompositionSpec::new(&u.rs, vec![1, 0])?;
    let quant = quant::quantize(&u, &spec, Normalization::Canonical)?;
    let v = u.root_vectors(&g2_word());
    let deg1 = &quant.pieces[1].modules[0];
    let r = QuasiR::new(&u, &deg1.levi);
    // Braid on the component basis re-expressed as E_b2, E_b6.
    let basis = ModuleBasis::new(vec![v[1].clone(), v[5].clone()])?;
    let same = deg1.basis.iter().all(|b| basis.contains(b)) && deg1.dim() == 2;
    let m = BraidingMatrix::new(&r, &basis)?;
    let mut bad = Vec::new();
    let golden = [
        ((0, 0), coord(&[(&[0, 0], "q^2")])),
        ((0, 1), coord(&[(&[1, 0], "q^-1"), (&[0, 1], "(q^3 - q^-3) q^-1")])),
        ((1, 0), coord(&[(&[0, 1], "q^-1")])),
        ((1, 1), coord(&[(&[1, 1], "q^2")])),
    ];
    for (k, want) in &golden {
        if m.entries[k] != *want {
            bad.push(format!("sigma{k:?}"));
        }
    }
    let y = coord(&[(&[0, 1], "1"), (&[1, 0], "-q^3")]);
    if m.apply(1, &y) != scaled(&y, &s("-q^-4")) {
        bad.push("sigma(Y)".into());
    }
    let l1 = coord_outer(&y, &coord_unit(1));
    let l2 = coord_outer(&coord_unit(1), &y);
    let words = vec![vec![], vec![1], vec![1, 2]];
    if m.apply_sum(&words, &l1) != plus(&scaled(&l1, &s("1 - q^-4")), &scaled(&l2, &s("q"))) {
        bad.push("row L1".into());
    }
    if m.apply_sum(&words, &l2) != plus(&scaled(&l1, &s("q^-1 - q^-5")), &scaled(&l2, &s("q^2 + 1 - q^-2"))) {
        bad.push("row L2".into());
    }
    // Braid relation on the triple tensors.
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                let t = coord_outer(&coord_outer(&coord_unit(a), &coord_unit(b)), &coord_unit(c));
                if m.apply_word(&[1, 2, 1], &t) != m.apply_word(&[2, 1, 2], &t) {
                    bad.push(format!("braid relation at {a}{b}{c}"));
                }
            }
        }
    }
    if !same {
        bad.push("degree-one component differs from span{E_b2, E_b6}".into());
    }
    let ok = bad.is_empty();
    Ok((ok, if ok { "4 values, eigenvalue -q^-4, both (1+s1+s1s2) rows, braid relation; normalization scalar 1".into() } else { bad.join(", ") }))
}

/// All words of length `n` over `basis`.
fn tuples(basis: &[Elem], n: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|t: Vec<Elem>| basis.iter().map(move |b| [t.clone(), vec![b.clone()]].concat())).collect();
    }
    out
}

fn delta_shuffle(u: &Uq, levi: &[usize], basis: &[Elem]) -> Result<(usize, Vec<String>)> {
    let r = QuasiR::new(u, levi);
    let mut count = 0;
    let mut bad = Vec::new();
    for n in 1..=3 {
        for xs in tuples(basis, n) {
            let refs: Vec<&Elem> = xs.iter().collect();
            let lhs = u.coproduct(&u.mul_all(&refs));
            let p = r.shuffle_product(&xs)?;
            if r.transmute_pairs(&p, false)? != lhs {
                bad.push(format!("n={n}"));
            }
            count += 1;
        }
    }
    Ok((count, bad))
}

fn shuffle_identities() -> Result<(bool, String)> {
    let mut notes = Vec::new();
    let mut bad = Vec::new();
    let cases: [(&str, Vec<usize>, usize); 3] = [("G2", vec![1, 0], 2), ("A2", vec![0, 1], 2), ("A3", vec![0, 1, 2], 3)];
    for (t, order, k) in cases {
        let u = uq(t)?;
        let spec = DecompositionSpec::new(&u.rs, order)?;
        let q = quant::quantize(&u, &spec, Normalization::Canonical)?;
        let m = &q.pieces[k - 1].modules[0];
        let (count, b) = delta_shuffle(&u, &m.levi, &m.basis)?;
        bad.extend(b.into_iter().map(|x| format!("{t} {x}")));
        notes.push(format!("{t}: {count} tuples"));
        // T_S T_S^{-1} = id and T_S(1 ⊗ X) = K_wt ⊗ X on the lowest weight vector.
        let r = QuasiR::new(&u, &m.levi);
        let one = u.one();
        let low = &m.lowest;
        let wt = low.weight().unwrap_or_default();
        if r.transmute(&one, low, false)? != Tensor::outer(&[&u.k(&wt), low]) {
            bad.push(format!("{t}: T_S(1 ⊗ lowest)"));
        }
        for b in &m.basis {
            let t0 = Tensor::outer(&[&u.e(0), b]).add(&Tensor::outer(&[&one, b]));
            let there = r.transmute_tensor(&t0, true)?;
            if r.transmute_tensor(&there, false)? != t0 {
                bad.push(format!("{t}: T_S T_S^-1"));
            }
        }
    }
    let ok = bad.is_empty();
    Ok((ok, if ok { notes.join("; ") } else { bad.join(", ") }))
}

fn g2_quantization() -> Result<(bool, String)> {
    let u = uq("G2")?;
    let spec = DecompositionSpec::new(&u.rs, vec![1, 0])?;
    let canon = quant::quantize(&u, &spec, Normalization::Canonical)?;
    let table = quant::quantize(&u, &spec, Normalization::G2Table)?;
    let pbw = Pbw::new(&u, &table.word)?;
    let refs = G2Reference::elements();
    let p = &table.pieces[1];
    let x3 = p.modules[2].basis.iter().find(|b| b.weight() == Some(vec![3, 2])).cloned().unwrap_or_default();
    let got = [x3, p.modules[1].lowest.clone(), p.modules[2].lowest.clone()];
    let mut bad = Vec::new();
    for ((name, want), x) in refs.iter().zip(&got) {
        if pbw.expand(x)? != *want {
            bad.push(format!("{name} = {}", Pbw::format_expansion(&pbw.expand(x)?)));
        }
    }
    let ratios: Vec<String> = canon.pieces[1]
        .reference_ratio
        .iter()
        .enumerate()
        .map(|(d, r)| format!("deg{} {}", d + 1, r.as_ref().map(|x| x.pretty()).unwrap_or_else(|| "-".into())))
        .collect();
    let unit = table.pieces.iter().flat_map(|p| p.reference_ratio.iter()).all(|r| r.as_ref().is_some_and(QScalar::is_one));
    if !unit {
        bad.push("paper-g2 scalars differ from 1".into());
    }
    let ok = bad.is_empty();
    Ok((ok, if ok { format!("X[b3], X[b4], X[b5] exact; canonical-to-reference scalars {}", ratios.join(", ")) } else { bad.join(", ") }))
}

fn all_orders(rank: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..rank).collect();
    permute(&mut cur, 0, &mut out);
    out.sort();
    out
}

fn permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}

fn coideal_verification() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut cases = 0;
    let mut degree_three = 0;
    for t in ["G2", "A3", "B2"] {
        let u = uq(t)?;
        for order in all_orders(u.rank()) {
            let spec = DecompositionSpec::new(&u.rs, order.clone())?;
            let q = quant::quantize(&u, &spec, Normalization::Canonical)?;
            for p in &q.pieces {
                if let Err(w) = quant::coideal_check(&u, &p.basis()) {
                    bad.push(format!("{t} order {:?} piece {}: {w}", lie::one_based(&order), p.piece.k));
                }
                for c in &p.certificates {
                    if c.degree == 3 {
                        degree_three += 1;
                    }
                    if c.solution_dim != 1 {
                        bad.push(format!("{t} {:?}: certificate {c:?}", lie::one_based(&order)));
                    }
                }
                cases += 1;
            }
        }
    }
    // Perturbed degree-three component: generated by L1 = X_b4 E_b6 alone.
    let u = uq("G2")?;
    let spec = DecompositionSpec::new(&u.rs, vec![1, 0])?;
    let q = quant::quantize(&u, &spec, Normalization::Canonical)?;
    let p = &q.pieces[1];
    let l1 = u.mul(&p.modules[1].lowest, &u.e(0));
    let bad_module = quant::module_closure(&u, &p.piece.levi, 0, 3, &[l1], None)?;
    let mut basis: Vec<Elem> = p.modules[..2].iter().flat_map(|m| m.basis.clone()).collect();
    basis.extend(bad_module.basis.iter().cloned());
    let witness = match quant::coideal_check(&u, &basis) {
        Ok(()) => {
            bad.push("perturbed G2 component passed".into());
            String::new()
        }
        Err(w) => w.to_string(),
    };
    let ok = bad.is_empty() && degree_three > 0;
    Ok((
        ok,
        if ok {
            format!("{cases} pieces pass, {degree_three} degree-3 certificate(s) of dimension 1; perturbed witness: {witness}")
        } else {
            bad.join("; ")
        },
    ))
}

fn schubert_cells() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    for t in ["G2", "A3"] {
        let u = uq(t)?;
        let all: Vec<usize> = (0..u.rank()).collect();
        let theta = u.rs.highest_roots()[0].clone();
        let mut checked = 0;
        for mask in 1..(1usize << u.rank()) - 1 {
            let levi: Vec<usize> = all.iter().copied().filter(|i| mask >> i & 1 == 1).collect();
            let cutoff = all.iter().filter(|i| !levi.contains(i)).map(|&i| theta[i] as usize).sum();
            let cell = quant::schubert_cell(&u, &levi, &all, true, cutoff)?;
            if let Some((d, i)) = quant::cell_invariance(&u, &cell) {
                bad.push(format!("{t} S={:?}: degree {d} not stable under generator {}", lie::one_based(&levi), i + 1));
            }
            let plain = quant::schubert_cell(&u, &levi, &all, false, cutoff)?;
            if !quant::untwisted_commutators_close(&u, &plain)? {
                bad.push(format!("{t} S={:?}: untwisted cell not closed under [., E_i]_q", lie::one_based(&levi)));
            }
            checked += 1;
        }
        for order in all_orders(u.rank()) {
            let spec = DecompositionSpec::new(&u.rs, order.clone())?;
            let q = quant::quantize(&u, &spec, Normalization::Canonical)?;
            for p in &q.pieces {
                let cell = quant::schubert_cell(&u, &p.piece.levi, &p.piece.ambient, true, 1)?;
                let a = quant::span_of(&cell.pieces[0]);
                let b = quant::span_of(&p.modules[0].basis);
                if a.dim() != b.dim() || !p.modules[0].basis.iter().all(|x| a.contains(&x.terms)) {
                    bad.push(format!("{t} order {:?} piece {}: degree-one mismatch", lie::one_based(&order), p.piece.k));
                }
            }
        }
        notes.push(format!("{t}: {checked} Levi subsets, all orders"));
    }
    let ok = bad.is_empty();
    Ok((ok, if ok { notes.join("; ") } else { bad.join("; ") }))
}

fn appendix() -> Result<(bool, String)> {
    let rows = rep::appendix_table()?;
    let mut bad = Vec::new();
    for r in &rows {
        if r.multiplicity != 2 || !r.mismatches.is_empty() {
            bad.push(format!("{} alpha{}: mult {} {:?}", r.algebra, r.simple, r.multiplicity, r.mismatches));
        }
    }
    let e6 = RootSystem::build("E6")?;
    let a7 = RootSystem::build("A7")?;
    let d27 = rep::WeightLattice::new(&e6).dimension(&[1, 0, 0, 0, 0, 0])?;
    let d56 = rep::WeightLattice::new(&a7).module(&[0, 0, 0, 0, 1, 0, 0])?.dim;
    if d27 != 27 || d56 != 56 {
        bad.push(format!("dimension cross-checks {d27}, {d56}"));
    }
    let computed = rows.iter().filter(|r| !r.tabulated).count();
    let ok = bad.is_empty() && rows.len() == 13;
    Ok((
        ok,
        if ok {
            format!("{} rows with multiplicity 2 ({computed} not in the printed table); dims 27 and 56", rows.len())
        } else {
            bad.join("; ")
        },
    ))
}

fn classical_limit() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut count = 0;
    for (t, order) in [("G2", vec![1, 0]), ("A3", vec![0, 1, 2])] {
        let u = uq(t)?;
        let spec = DecompositionSpec::new(&u.rs, order)?;
        let q = quant::quantize(&u, &spec, Normalization::Canonical)?;
        let pbw = Pbw::new(&u, &q.word)?;
        for p in &q.pieces {
            for x in p.basis() {
                for (e, c) in pbw.expand(&x)? {
                    if c.at_one().is_err() {
                        bad.push(format!("{t}: pole in coefficient of {}", Pbw::format_monomial(&e)));
                    }
                }
                match quant::classically_primitive(&u, &x) {
                    Ok(true) => {}
                    Ok(false) => bad.push(format!("{t}: {x} is not primitive at q = 1")),
                    Err(e) => bad.push(format!("{t}: {e}")),
                }
                count += 1;
            }
        }
    }
    let ok = bad.is_empty();
    Ok((ok, if ok { format!("{count} basis elements regular and primitive at q = 1") } else { bad.join("; ") }))
}

fn tangent() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let u = uq("G2")?;
    let spec = DecompositionSpec::new(&u.rs, vec![1, 0])?;
    let q = quant::quantize(&u, &spec, Normalization::Canonical)?;
    let ts = quant::tangent_spaces(&u, &q);
    if ts.dims != vec![(1, 7), (2, 6)] {
        bad.push(format!("G2 dims {:?}", ts.dims));
    }
    if let Err(w) = &ts.minus_right_coideal {
        bad.push(format!("G2 T-: {w}"));
    }
    let a3 = uq("A3")?;
    let spec = DecompositionSpec::new(&a3.rs, vec![1, 2, 0])?;
    let q3 = quant::quantize(&a3, &spec, Normalization::Canonical)?;
    let t3 = quant::tangent_spaces(&a3, &q3);
    if !quant::f_root_span_matches(&a3, &q3, &t3, 3)? {
        bad.push("A3 omega(n_3) differs from the F-root-vector span".into());
    }
    if let Err(w) = &t3.minus_right_coideal {
        bad.push(format!("A3 T-: {w}"));
    }
    let ok = bad.is_empty();
    Ok((
        ok,
        if ok {
            "G2 FODC dimensions 7 and 6 (unit included); T- right coideal; A3 cominuscule F-span equal".into()
        } else {
            bad.join("; ")
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shuffle_count_matches_orders() {
        assert_eq!(all_orders(3).len(), 6);
        assert_eq!(weights_below(&vec![1, 1]).len(), 3);
        assert_eq!(crate::rmx::shuffles(1, 2).len(), 3);
    }
}
