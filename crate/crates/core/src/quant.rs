//! Equivariant quantizations of the pieces `n_k` of a positive nilradical,
//! together with the checks run against them.

use std::collections::BTreeMap;

use num::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{self, DecompositionSpec, NilradicalPiece, Root, RootSystem};
use crate::linalg::{self, Span, Vector};
use crate::scalar::{q_factorial, q_int, QScalar};
use crate::uq::{Elem, Monomial, Pbw, PbwExponent, Uq};

/// How the lowest-weight generator of each component is scaled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// Leading PBW coefficient equal to 1 (lowest PBW degree, then lex greatest exponent).
    Canonical,
    /// The hand-computed G2 elements `X_beta` for the order `alpha_2 < alpha_1`.
    #[serde(rename = "paper-g2")]
    G2Table,
}

impl std::str::FromStr for Normalization {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "canonical" => Ok(Normalization::Canonical),
            "paper-g2" => Ok(Normalization::G2Table),
            _ => Err(Error::Invalid(format!("unknown normalization {s:?}"))),
        }
    }
}

/// A `▷`-stable span of weight vectors of fixed `alpha_s`-degree.
#[derive(Clone, Debug)]
pub struct AdjointModule {
    pub levi: Vec<usize>,
    pub simple: usize,
    pub degree: usize,
    pub basis: Vec<Elem>,
    pub weights: Vec<Root>,
    pub lowest: Elem,
    pub highest: Elem,
}

impl AdjointModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn span(&self) -> Span<Monomial> {
        span_of(&self.basis)
    }
}

pub fn span_of(xs: &[Elem]) -> Span<Monomial> {
    let mut s = Span::new();
    for x in xs {
        s.insert(&x.terms);
    }
    s
}

fn homogeneous_weight(x: &Elem) -> Result<Root> {
    x.weight().ok_or_else(|| Error::Invalid(format!("expected a weight vector, got {x}")))
}

/// Smallest `U_q(l_S)`-stable span containing `generators`. With a `bound`,
/// exceeding it is reported as an invariant violation.
pub fn module_closure(
    uq: &Uq,
    levi: &[usize],
    simple: usize,
    degree: usize,
    generators: &[Elem],
    bound: Option<usize>,
) -> Result<AdjointModule> {
    let mut span = Span::new();
    let mut basis: Vec<Elem> = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    for g in generators {
        homogeneous_weight(g)?;
        if span.insert(&g.terms).is_some() {
            basis.push(g.clone());
            queue.push_back(g.clone());
        }
    }
    while let Some(v) = queue.pop_front() {
        for &i in levi {
            for w in [uq.ad_e(i, &v), uq.ad_f(i, &v)] {
                if !w.is_zero() && span.insert(&w.terms).is_some() {
                    basis.push(w.clone());
                    queue.push_back(w);
                    if let Some(b) = bound {
                        if basis.len() > b {
                            return Err(Error::Invariant(format!(
                                "adjoint closure exceeds the classical dimension {b}"
                            )));
                        }
                    }
                }
            }
        }
    }
    let weights = basis.iter().map(homogeneous_weight).collect::<Result<Vec<_>>>()?;
    let lowest = weight_kernel(uq, levi, &basis, true)?.into_iter().next().unwrap_or_default();
    let highest = weight_kernel(uq, levi, &basis, false)?.into_iter().next().unwrap_or_default();
    Ok(AdjointModule { levi: levi.to_vec(), simple, degree, basis, weights, lowest, highest })
}

/// Basis of `{v in span(space) : F_i ▷ v = 0 for i in S}`, grouped by weight.
pub fn lowest_weight_vectors(uq: &Uq, levi: &[usize], space: &[Elem]) -> Result<Vec<Elem>> {
    weight_kernel(uq, levi, space, true)
}

/// Same with `E_i ▷`.
pub fn highest_weight_vectors(uq: &Uq, levi: &[usize], space: &[Elem]) -> Result<Vec<Elem>> {
    weight_kernel(uq, levi, space, false)
}

fn weight_kernel(uq: &Uq, levi: &[usize], space: &[Elem], f_side: bool) -> Result<Vec<Elem>> {
    let mut groups: BTreeMap<Root, (Span<Monomial>, Vec<Elem>)> = BTreeMap::new();
    for x in space {
        if x.is_zero() {
            continue;
        }
        let w = homogeneous_weight(x)?;
        let (s, v) = groups.entry(w).or_insert_with(|| (Span::new(), Vec::new()));
        if s.insert(&x.terms).is_some() {
            v.push(x.clone());
        }
    }
    let mut out = Vec::new();
    for (_, (_, vs)) in groups {
        let cols: Vec<Vector<(usize, Monomial)>> = vs
            .iter()
            .map(|v| {
                let mut col = Vector::new();
                for &i in levi {
                    let img = if f_side { uq.ad_f(i, v) } else { uq.ad_e(i, v) };
                    for (m, c) in img.terms {
                        col.insert((i, m), c);
                    }
                }
                col
            })
            .collect();
        for null in linalg::nullspace(&cols) {
            let mut x = Elem::zero();
            for (c, v) in null.iter().zip(&vs) {
                x.axpy(c, v);
            }
            out.push(x);
        }
    }
    Ok(out)
}

/// `true` if `E_i ▷`, `F_i ▷` (`i in S`) map the span into itself.
pub fn is_adjoint_stable(uq: &Uq, levi: &[usize], basis: &[Elem]) -> bool {
    let span = span_of(basis);
    basis.iter().all(|b| levi.iter().all(|&i| span.contains(&uq.ad_e(i, b).terms) && span.contains(&uq.ad_f(i, b).terms)))
}

/// Offending term of a coideal check: `Δ(element) ∋ left ⊗ right` with `right` outside the space.
#[derive(Clone, Debug)]
pub struct Witness {
    pub element: Elem,
    pub leg: Monomial,
    pub component: Elem,
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "element {} has component {} ⊗ ({})", self.element, self.leg, self.component)
    }
}

/// Left coideal check `Δ(C ⊕ span(basis)) ⊂ U ⊗ (C ⊕ span(basis))`.
pub fn coideal_check(uq: &Uq, basis: &[Elem]) -> std::result::Result<(), Witness> {
    coideal_side(uq, basis, true)
}

/// Right coideal check `Δ(C ⊕ span(basis)) ⊂ (C ⊕ span(basis)) ⊗ U`.
pub fn right_coideal_check(uq: &Uq, basis: &[Elem]) -> std::result::Result<(), Witness> {
    coideal_side(uq, basis, false)
}

fn coideal_side(uq: &Uq, basis: &[Elem], left: bool) -> std::result::Result<(), Witness> {
    let mut span = span_of(basis);
    span.insert(&uq.one().terms);
    for b in basis {
        let d = uq.coproduct(b);
        let comps = if left { d.right_components() } else { d.left_components() };
        for (leg, comp) in comps {
            if !span.contains(&comp.terms) {
                return Err(Witness { element: b.clone(), leg, component: comp });
            }
        }
    }
    Ok(())
}

/// Dimension count of a candidate space and of the coideal solution space in it.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub degree: usize,
    pub candidate_dim: usize,
    pub solution_dim: usize,
}

#[derive(Clone, Debug)]
pub struct QuantPiece {
    pub piece: NilradicalPiece,
    /// `modules[n - 1]` is the degree-`n` component.
    pub modules: Vec<AdjointModule>,
    pub certificates: Vec<Certificate>,
    /// Per degree: `reference = ratio * ours` for the lowest-weight generator,
    /// when hand-computed reference elements exist.
    pub reference_ratio: Vec<Option<QScalar>>,
}

impl QuantPiece {
    pub fn basis(&self) -> Vec<Elem> {
        self.modules.iter().flat_map(|m| m.basis.iter().cloned()).collect()
    }

    pub fn dim(&self) -> usize {
        self.modules.iter().map(AdjointModule::dim).sum()
    }
}

#[derive(Clone, Debug)]
pub struct Quantization {
    pub type_string: String,
    pub spec: DecompositionSpec,
    pub word: Vec<usize>,
    pub ranges: Vec<std::ops::Range<usize>>,
    pub normalization: Normalization,
    pub pieces: Vec<QuantPiece>,
}

impl Quantization {
    pub fn dim(&self) -> usize {
        self.pieces.iter().map(QuantPiece::dim).sum()
    }
}

/// Weight of the lowest-weight vector of the simple `l_S`-module spanned by `roots`.
fn classical_lowest(rs: &RootSystem, levi: &[usize], roots: &[Root]) -> Result<Root> {
    let lows: Vec<&Root> = roots
        .iter()
        .filter(|r| levi.iter().all(|&i| !roots.contains(&lie::sub(r, &rs.simple(i)))))
        .collect();
    match lows.as_slice() {
        [one] => Ok((*one).clone()),
        _ => Err(Error::Invariant(format!("graded piece {roots:?} is not a simple module"))),
    }
}

fn product_span(uq: &Uq, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut span = Span::new();
    let mut out = Vec::new();
    for x in a {
        for y in b {
            let p = uq.mul(x, y);
            if span.insert(&p.terms).is_some() {
                out.push(p);
            }
        }
    }
    out
}

/// Coefficients `c` with `sum c_j candidates[j]` satisfying the left coideal
/// condition relative to the lower-degree components `lower` (`lower[d - 1]`
/// has `alpha_s`-degree `d`), for lowest-weight candidates of one weight.
pub fn coideal_solutions(uq: &Uq, simple: usize, lower: &[Span<Monomial>], candidates: &[Elem]) -> Result<Vec<Vec<QScalar>>> {
    let n = lower.len() + 1;
    let mut cols = Vec::new();
    for v in candidates {
        let mu = homogeneous_weight(v)?;
        let mut col: Vector<(Monomial, Monomial)> = Vector::new();
        for (leg, comp) in uq.coproduct(v).right_components() {
            for (w, part) in comp.by_weight() {
                let d = w[simple];
                let rem = if d == 0 || (d as usize == n && w == mu) {
                    continue;
                } else if (d as usize) < n {
                    lower[d as usize - 1].reduce(&part.terms).remainder
                } else {
                    part.terms
                };
                for (m, c) in rem {
                    col.insert((leg.clone(), m), c);
                }
            }
        }
        cols.push(col);
    }
    Ok(linalg::nullspace(&cols))
}

/// Builds the quantization of every piece `n_k`, refusing degrees above three.
pub fn quantize(uq: &Uq, spec: &DecompositionSpec, normalization: Normalization) -> Result<Quantization> {
    let rs = &uq.rs;
    let pieces = lie::nilradical_decomposition(rs, spec);
    if let Some(p) = pieces.iter().find(|p| p.graded.len() > 3) {
        return Err(Error::Unsupported(format!(
            "piece {} has components up to degree {}; degrees above 3 are not constructed",
            p.k,
            p.graded.len()
        )));
    }
    let (word, ranges) = lie::adapted_word(rs, spec);
    let reference = G2Reference::applies(rs, spec, &word);
    if normalization == Normalization::G2Table && !reference {
        return Err(Error::Invalid("the paper-g2 normalization needs type G2 with order 2,1".into()));
    }
    let pbw = Pbw::new(uq, &word)?;
    let mut out = Vec::new();
    for piece in pieces {
        let levi = piece.levi.clone();
        let s = piece.simple;
        let mut modules: Vec<AdjointModule> = Vec::new();
        let mut certificates = Vec::new();
        let mut ratios = Vec::new();
        let mut products: Vec<Elem> = Vec::new();
        for (idx, roots) in piece.graded.iter().enumerate() {
            let n = idx + 1;
            let raw = if n == 1 {
                uq.e(s)
            } else {
                let lowest = classical_lowest(rs, &levi, roots)?;
                products = product_span(uq, &products, &modules[0].basis);
                let candidates: Vec<Elem> = lowest_weight_vectors(uq, &levi, &products)?
                    .into_iter()
                    .filter(|v| v.weight().as_ref() == Some(&lowest))
                    .collect();
                let lower: Vec<Span<Monomial>> = modules.iter().map(AdjointModule::span).collect();
                let sols = if n == 2 {
                    (0..candidates.len()).map(|j| unit(candidates.len(), j)).collect()
                } else {
                    coideal_solutions(uq, s, &lower, &candidates)?
                };
                certificates.push(Certificate { degree: n, candidate_dim: candidates.len(), solution_dim: sols.len() });
                if sols.len() != 1 {
                    return Err(Error::Invariant(format!(
                        "piece {} degree {n}: {} candidates, solution space of dimension {}",
                        piece.k,
                        candidates.len(),
                        sols.len()
                    )));
                }
                let mut v = Elem::zero();
                for (c, x) in sols[0].iter().zip(&candidates) {
                    v.axpy(c, x);
                }
                v
            };
            let expansion = pbw.expand(&raw)?;
            let (_, lead) = leading_term(&expansion).ok_or_else(|| Error::Invariant("zero generator".into()))?;
            let mut generator = raw.scale(&lead.inv()?);
            let ratio = if reference { G2Reference::ratio(&pbw, piece.k, n, &generator)? } else { None };
            if normalization == Normalization::G2Table {
                if let Some(r) = &ratio {
                    generator = generator.scale(r);
                }
            }
            ratios.push(match normalization {
                Normalization::G2Table => ratio.map(|_| QScalar::one()),
                Normalization::Canonical => ratio,
            });
            let module = module_closure(uq, &levi, s, n, &[generator], Some(roots.len()))?;
            if module.dim() != roots.len() || !is_adjoint_stable(uq, &levi, &module.basis) {
                return Err(Error::Invariant(format!(
                    "piece {} degree {n}: module of dimension {} (expected {})",
                    piece.k,
                    module.dim(),
                    roots.len()
                )));
            }
            if n == 1 {
                products = module.basis.clone();
            }
            modules.push(module);
        }
        out.push(QuantPiece { piece, modules, certificates, reference_ratio: ratios });
    }
    Ok(Quantization {
        type_string: rs.type_string(),
        spec: spec.clone(),
        word,
        ranges,
        normalization,
        pieces: out,
    })
}

fn unit(n: usize, j: usize) -> Vec<QScalar> {
    (0..n).map(|i| if i == j { QScalar::one() } else { QScalar::zero() }).collect()
}

/// Term of lowest total PBW degree, lex greatest among those.
pub fn leading_term(exp: &BTreeMap<PbwExponent, QScalar>) -> Option<(&PbwExponent, &QScalar)> {
    exp.iter().min_by(|(a, _), (b, _)| {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        da.cmp(&db).then_with(|| b.cmp(a))
    })
}

/// Hand-computed G2 elements for the order `alpha_2 < alpha_1` and the word
/// `s_2 s_1 s_2 s_1 s_2 s_1`, as PBW expansions (divided powers).
pub struct G2Reference;

impl G2Reference {
    pub const WORD: [usize; 6] = [1, 0, 1, 0, 1, 0];

    pub fn applies(rs: &RootSystem, spec: &DecompositionSpec, word: &[usize]) -> bool {
        rs.type_string() == "G2" && spec.order == [1, 0] && word == Self::WORD
    }

    fn exp(pairs: &[(usize, u32)]) -> PbwExponent {
        let mut e = vec![0; 6];
        for &(k, n) in pairs {
            e[k - 1] = n;
        }
        e
    }

    /// `(name, expansion)` for `X_beta3`, `X_beta4`, `X_beta5`.
    pub fn elements() -> Vec<(&'static str, BTreeMap<PbwExponent, QScalar>)> {
        let q = |e: i32| QScalar::q_pow(e);
        let qq = &q(1) - &q(-1);
        let two = q_int(2, 1);
        let fact3 = q_factorial(3, 1);
        let b3 = BTreeMap::from([
            (Self::exp(&[(3, 1)]), -&(&q(3) * &fact3)),
            (Self::exp(&[(2, 1), (4, 1)]), &(&qq * &q(2)) * &two),
        ]);
        let b4 = BTreeMap::from([
            (Self::exp(&[(4, 1)]), &q(4) * &two),
            (Self::exp(&[(2, 1), (6, 1)]), -&(&q(4) - &QScalar::one())),
        ]);
        let b5 = BTreeMap::from([
            (Self::exp(&[(5, 1)]), &q(4) * &fact3),
            (Self::exp(&[(4, 1), (6, 1)]), -&(&(&qq * &q(4)) * &(&two * &two))),
            (Self::exp(&[(2, 1), (6, 2)]), &(&(&qq * &qq) * &q(3)) * &(&two * &two)),
        ]);
        vec![("X[b3]", b3), ("X[b4]", b4), ("X[b5]", b5)]
    }

    /// Reference expansion of the lowest-weight generator of piece `k`, degree `n`.
    pub fn generator(k: usize, n: usize) -> Option<BTreeMap<PbwExponent, QScalar>> {
        let one = |e: PbwExponent| BTreeMap::from([(e, QScalar::one())]);
        let els = Self::elements();
        match (k, n) {
            (1, 1) => Some(one(Self::exp(&[(1, 1)]))),
            (2, 1) => Some(one(Self::exp(&[(6, 1)]))),
            (2, 2) => Some(els[1].1.clone()),
            (2, 3) => Some(els[2].1.clone()),
            _ => None,
        }
    }

    /// `r` with `reference = r * x`, or an error if they are not proportional.
    fn ratio(pbw: &Pbw<'_>, k: usize, n: usize, x: &Elem) -> Result<Option<QScalar>> {
        let Some(want) = Self::generator(k, n) else { return Ok(None) };
        let have = pbw.expand(x)?;
        proportionality(&want, &have)
            .map(Some)
            .ok_or_else(|| Error::Invariant(format!("G2 piece {k} degree {n} is not proportional to the reference element")))
    }
}

/// `r` with `a = r * b` for PBW expansions.
pub fn proportionality(a: &BTreeMap<PbwExponent, QScalar>, b: &BTreeMap<PbwExponent, QScalar>) -> Option<QScalar> {
    let (e, c) = b.iter().next()?;
    let r = a.get(e)?.checked_div(c).ok()?;
    let scaled: BTreeMap<PbwExponent, QScalar> = b.iter().map(|(k, v)| (k.clone(), &r * v)).collect();
    (scaled == *a).then_some(r)
}

// ---- Schubert cells ----

/// `U_q(w)` for `w_{0,T} = w_{0,S} w`, or its twist `T_{w_{0,S}}(U_q(w))`,
/// graded by the coefficients outside `S`.
#[derive(Clone, Debug)]
pub struct SchubertCell {
    pub levi: Vec<usize>,
    pub ambient: Vec<usize>,
    pub twisted: bool,
    pub prefix: Vec<usize>,
    pub word: Vec<usize>,
    pub roots: Vec<Root>,
    pub root_vectors: Vec<Elem>,
    /// `pieces[d - 1]` spans the degree-`d` part.
    pub pieces: Vec<Vec<Elem>>,
}

pub fn schubert_cell(uq: &Uq, levi: &[usize], ambient: &[usize], twisted: bool, cutoff: usize) -> Result<SchubertCell> {
    let rs = &uq.rs;
    if levi.iter().any(|i| !ambient.contains(i)) {
        return Err(Error::Invalid("the Levi subset must lie in the ambient subset".into()));
    }
    let (prefix, word) = lie::relative_factorization(rs, levi, ambient);
    let local = lie::root_enumeration(rs, &word)?;
    let mut vectors = uq.root_vectors(&word);
    let roots: Vec<Root> = if twisted {
        vectors = vectors.iter().map(|v| uq.lusztig_word(&prefix, v)).collect();
        local.iter().map(|r| rs.apply_word(&prefix, r)).collect()
    } else {
        local
    };
    let degree = |r: &Root| -> usize { ambient.iter().filter(|i| !levi.contains(i)).map(|&i| r[i] as usize).sum() };
    let degs: Vec<usize> = roots.iter().map(degree).collect();
    let mut pieces = Vec::new();
    for d in 1..=cutoff {
        let mut span = Span::new();
        let mut basis = Vec::new();
        let mut exps = Vec::new();
        ordered_exponents(&degs, 0, d, &mut vec![0; degs.len()], &mut exps);
        for e in exps {
            let mut x = uq.one();
            for (k, &n) in e.iter().enumerate() {
                for _ in 0..n {
                    x = uq.mul(&x, &vectors[k]);
                }
            }
            if span.insert(&x.terms).is_some() {
                basis.push(x);
            }
        }
        pieces.push(basis);
    }
    Ok(SchubertCell {
        levi: levi.to_vec(),
        ambient: ambient.to_vec(),
        twisted,
        prefix,
        word,
        roots,
        root_vectors: vectors,
        pieces,
    })
}

fn ordered_exponents(degs: &[usize], k: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if k == degs.len() {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let mut n = 0;
    loop {
        cur[k] = n;
        ordered_exponents(degs, k + 1, left - n as usize * degs[k], cur, out);
        if (n as usize + 1) * degs[k] > left {
            break;
        }
        n += 1;
    }
    cur[k] = 0;
}

/// First degree whose piece is not `E_i ▷`/`F_i ▷` stable, with the generator index.
pub fn cell_invariance(uq: &Uq, cell: &SchubertCell) -> Option<(usize, usize)> {
    for (d, piece) in cell.pieces.iter().enumerate() {
        let span = span_of(piece);
        for &i in &cell.levi {
            if piece.iter().any(|b| !span.contains(&uq.ad_e(i, b).terms) || !span.contains(&uq.ad_f(i, b).terms)) {
                return Some((d + 1, i));
            }
        }
    }
    None
}

/// `[x, E_i]_q` lies in the cell for every root vector `x` and `i in S`.
pub fn untwisted_commutators_close(uq: &Uq, cell: &SchubertCell) -> Result<bool> {
    let max = cell.pieces.len();
    let spans: Vec<Span<Monomial>> = cell.pieces.iter().map(|p| span_of(p)).collect();
    for x in &cell.root_vectors {
        for &i in &cell.levi {
            let c = uq.q_commutator(x, &uq.e(i))?;
            if c.is_zero() {
                continue;
            }
            let w = homogeneous_weight(&c)?;
            let d: usize = cell.ambient.iter().filter(|j| !cell.levi.contains(j)).map(|&j| w[j] as usize).sum();
            if d == 0 || d > max || !spans[d - 1].contains(&c.terms) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---- tangent spaces ----

#[derive(Clone, Debug)]
pub struct TangentSpaces {
    /// Basis of `ω(n^q)`, piece by piece.
    pub minus: Vec<Vec<Elem>>,
    /// Basis of `ω(n^q)*`.
    pub plus: Vec<Vec<Elem>>,
    /// `(k, 1 + sum_{j >= k} dim n^q_j)`.
    pub dims: Vec<(usize, usize)>,
    pub minus_right_coideal: std::result::Result<(), Witness>,
    pub plus_right_coideal: std::result::Result<(), Witness>,
}

pub fn tangent_spaces(uq: &Uq, quant: &Quantization) -> TangentSpaces {
    let minus: Vec<Vec<Elem>> = quant.pieces.iter().map(|p| p.basis().iter().map(|x| uq.omega(x)).collect()).collect();
    let plus: Vec<Vec<Elem>> = minus.iter().map(|b| b.iter().map(|x| uq.star(x)).collect()).collect();
    let dims = (1..=quant.pieces.len())
        .map(|k| (k, 1 + quant.pieces[k - 1..].iter().map(QuantPiece::dim).sum::<usize>()))
        .collect();
    let all_minus: Vec<Elem> = minus.iter().flatten().cloned().collect();
    let all_plus: Vec<Elem> = plus.iter().flatten().cloned().collect();
    TangentSpaces {
        minus_right_coideal: right_coideal_check(uq, &all_minus),
        plus_right_coideal: right_coideal_check(uq, &all_plus),
        minus,
        plus,
        dims,
    }
}

/// For a piece concentrated in degree one, compares `ω(n^q_k)` with the span
/// of the F-root vectors of its roots.
pub fn f_root_span_matches(uq: &Uq, quant: &Quantization, tangent: &TangentSpaces, k: usize) -> Result<bool> {
    let piece = &quant.pieces[k - 1];
    if piece.modules.len() != 1 {
        return Err(Error::Invalid(format!("piece {k} is not concentrated in degree one")));
    }
    let fs = uq.f_root_vectors(&quant.word);
    let target: Vec<Elem> = fs[quant.ranges[k - 1].clone()].to_vec();
    let a = span_of(&tangent.minus[k - 1]);
    let b = span_of(&target);
    Ok(a.dim() == b.dim() && target.iter().all(|x| a.contains(&x.terms)))
}

// ---- classical limit ----

/// Evaluates at `q = 1` with every Cartan factor set to 1. Fails on poles.
pub fn classical_specialization(t: &crate::uq::Tensor) -> Result<BTreeMap<Vec<Vec<u8>>, BigRational>> {
    let mut out: BTreeMap<Vec<Vec<u8>>, BigRational> = BTreeMap::new();
    for (legs, c) in &t.terms {
        if legs.iter().any(|m| !m.f.is_empty()) {
            return Err(Error::Invalid("classical specialization expects positive legs".into()));
        }
        let v = c.at_one()?;
        let key: Vec<Vec<u8>> = legs.iter().map(|m| m.e.clone()).collect();
        let e = out.entry(key.clone()).or_insert_with(|| BigRational::from_integer(0.into()));
        *e += v;
        if num::Zero::is_zero(e) {
            out.remove(&key);
        }
    }
    Ok(out)
}

/// `Δ(x) = x ⊗ 1 + 1 ⊗ x` after `q -> 1`, `K -> 1`; `x` must be nonzero there.
pub fn classically_primitive(uq: &Uq, x: &Elem) -> Result<bool> {
    let lhs = classical_specialization(&uq.coproduct(x))?;
    let one = uq.one();
    let prim = crate::uq::Tensor::outer(&[x, &one]).add(&crate::uq::Tensor::outer(&[&one, x]));
    let rhs = classical_specialization(&prim)?;
    Ok(!rhs.is_empty() && lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uq(t: &str) -> Uq {
        Uq::new(RootSystem::build(t).unwrap())
    }

    #[test]
    fn closure_of_a_simple_root_vector() {
        let u = uq("G2");
        let m = module_closure(&u, &[1], 0, 1, &[u.e(0)], Some(2)).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.lowest.ratio_to(&u.e(0)).map(|r| r.is_zero()), Some(false));
        let line = module_closure(&u, &[], 1, 1, &[u.e(1)], None).unwrap();
        assert_eq!(line.dim(), 1);
        assert!(module_closure(&u, &[1], 0, 1, &[u.e(0)], Some(1)).is_err());
    }

    #[test]
    fn a1_quantization() {
        let u = uq("A1");
        let q = quantize(&u, &DecompositionSpec::standard(1), Normalization::Canonical).unwrap();
        assert_eq!(q.pieces.len(), 1);
        assert_eq!(q.pieces[0].basis(), vec![u.e(0)]);
        let t = tangent_spaces(&u, &q);
        assert_eq!(t.minus[0], vec![u.f(0)]);
        assert!(t.minus_right_coideal.is_ok());
    }

    #[test]
    fn degree_four_is_refused() {
        let u = uq("F4");
        let spec = DecompositionSpec::new(&u.rs, vec![0, 1, 3, 2]).unwrap();
        let pieces = lie::nilradical_decomposition(&u.rs, &spec);
        assert_eq!(pieces[3].graded.len(), 4);
        assert!(matches!(quantize(&u, &spec, Normalization::Canonical), Err(Error::Unsupported(_))));
    }

    #[test]
    fn coideal_check_reports_witness() {
        let u = uq("A2");
        let x = u.mul(&u.e(0), &u.e(1));
        let w = coideal_check(&u, std::slice::from_ref(&x)).unwrap_err();
        assert_eq!(w.element, x);
        assert!(coideal_check(&u, &[u.e(0), u.e(1)]).is_ok());
    }

    #[test]
    fn leading_term_prefers_root_vectors() {
        let e = BTreeMap::from([(vec![0, 1, 0, 0, 0, 1], QScalar::from_int(3)), (vec![0, 0, 0, 1, 0, 0], QScalar::from_int(2))]);
        assert_eq!(leading_term(&e).unwrap().1, &QScalar::from_int(2));
    }
}
