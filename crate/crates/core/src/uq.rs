//! The quantized enveloping algebra `U_q(g)` in triangular normal form.
//!
//! Elements are sums of `c * F[w] K[t] E[w']`. E-words and F-words are kept in
//! a graded basis of standard words: in each root-lattice degree the ideal of
//! quantized Serre relations is echelonized with the greatest word (in
//! lexicographic order) of each row as pivot, and the non-pivot words form the
//! basis. The F-side uses the same relations letter for letter.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::lie::{self, Root, RootSystem};
use crate::linalg::{self, Span, Vector};
use crate::scalar::{q_binomial, q_factorial, QScalar};

pub type Word = Vec<u8>;

/// `F[f] K[k] E[e]`; `k` is the exponent vector of `K_1, ..., K_r`, i.e. the
/// root-lattice vector `lambda` of `K_lambda`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub f: Word,
    pub k: Root,
    pub e: Word,
}

impl Monomial {
    pub fn one(rank: usize) -> Self {
        Monomial { f: Word::new(), k: vec![0; rank], e: Word::new() }
    }

    pub fn e_word(w: Word, rank: usize) -> Self {
        Monomial { f: Word::new(), k: vec![0; rank], e: w }
    }

    pub fn f_word(w: Word, rank: usize) -> Self {
        Monomial { f: w, k: vec![0; rank], e: Word::new() }
    }

    pub fn weight(&self) -> Root {
        let mut w = word_weight(&self.e, self.k.len());
        lie::sub_assign(&mut w, &word_weight(&self.f, self.k.len()));
        w
    }

    pub fn is_one(&self) -> bool {
        self.f.is_empty() && self.e.is_empty() && self.k.iter().all(|&x| x == 0)
    }

    /// True for pure E-words.
    pub fn is_positive(&self) -> bool {
        self.f.is_empty() && self.k.iter().all(|&x| x == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.f.len() + self.e.len())
            .cmp(&(other.f.len() + other.e.len()))
            .then_with(|| self.f.len().cmp(&other.f.len()))
            .then_with(|| self.f.cmp(&other.f))
            .then_with(|| self.k.cmp(&other.k))
            .then_with(|| self.e.cmp(&other.e))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn fmt_word(w: &[u8]) -> String {
    w.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.f.is_empty() {
            parts.push(format!("F[{}]", fmt_word(&self.f)));
        }
        if self.k.iter().any(|&x| x != 0) {
            parts.push(format!("K[{}]", self.k.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")));
        }
        if !self.e.is_empty() {
            parts.push(format!("E[{}]", fmt_word(&self.e)));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

pub fn word_weight(w: &[u8], rank: usize) -> Root {
    let mut v = vec![0; rank];
    for &i in w {
        v[i as usize] += 1;
    }
    v
}

/// Element of `U_q(g)` in normal form.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Elem {
    pub terms: Vector<Monomial>,
}

impl Elem {
    pub fn zero() -> Self {
        Elem::default()
    }

    pub fn from_monomial(m: Monomial, c: QScalar) -> Self {
        let mut terms = Vector::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Elem { terms }
    }

    pub fn scalar(c: QScalar, rank: usize) -> Self {
        Self::from_monomial(Monomial::one(rank), c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Elem) -> Elem {
        let mut out = self.clone();
        linalg::axpy(&mut out.terms, &QScalar::one(), &other.terms);
        out
    }

    pub fn sub(&self, other: &Elem) -> Elem {
        let mut out = self.clone();
        linalg::axpy(&mut out.terms, &-QScalar::one(), &other.terms);
        out
    }

    pub fn scale(&self, c: &QScalar) -> Elem {
        Elem { terms: linalg::scaled(&self.terms, c) }
    }

    pub fn neg(&self) -> Elem {
        self.scale(&-QScalar::one())
    }

    pub fn axpy(&mut self, c: &QScalar, other: &Elem) {
        linalg::axpy(&mut self.terms, c, &other.terms);
    }

    /// The common weight of all terms, if homogeneous and nonzero.
    pub fn weight(&self) -> Option<Root> {
        let mut it = self.terms.keys().map(Monomial::weight);
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Splits into weight components.
    pub fn by_weight(&self) -> BTreeMap<Root, Elem> {
        let mut out: BTreeMap<Root, Elem> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight()).or_default().terms.insert(m.clone(), c.clone());
        }
        out
    }

    /// True if every term is a pure E-word.
    pub fn is_positive(&self) -> bool {
        self.terms.keys().all(Monomial::is_positive)
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> QScalar {
        self.terms.iter().find(|(m, _)| m.is_one()).map(|(_, c)| c.clone()).unwrap_or_default()
    }

    /// Leading coefficient (greatest monomial), used for normalizations.
    pub fn lead(&self) -> Option<(&Monomial, &QScalar)> {
        self.terms.iter().next_back()
    }

    /// If `self = c * other` for a scalar `c`, returns `c`.
    pub fn ratio_to(&self, other: &Elem) -> Option<QScalar> {
        if self.is_zero() && other.is_zero() {
            return Some(QScalar::one());
        }
        let (m, c) = other.lead()?;
        let r = self.terms.get(m)?.checked_div(c).ok()?;
        (other.scale(&r) == *self).then_some(r)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_one() {
                    c.to_string()
                } else if c.is_one() {
                    m.to_string()
                } else {
                    format!("{c} * {m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(serde::Serialize, serde::Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct TermJson {
    pub coeff: String,
    pub f: Vec<usize>,
    pub k: Vec<i64>,
    pub e: Vec<usize>,
}

impl Elem {
    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(m, c)| TermJson {
                coeff: c.to_string(),
                f: m.f.iter().map(|&i| i as usize + 1).collect(),
                k: m.k.clone(),
                e: m.e.iter().map(|&i| i as usize + 1).collect(),
            })
            .collect()
    }
}

/// Element of a tensor power of `U_q(g)`; keys are tuples of normal monomials.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Tensor {
    pub terms: Vector<Vec<Monomial>>,
}

impl Tensor {
    pub fn zero() -> Self {
        Tensor::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        linalg::axpy(&mut out.terms, &QScalar::one(), &other.terms);
        out
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        linalg::axpy(&mut out.terms, &-QScalar::one(), &other.terms);
        out
    }

    pub fn scale(&self, c: &QScalar) -> Tensor {
        Tensor { terms: linalg::scaled(&self.terms, c) }
    }

    pub fn axpy(&mut self, c: &QScalar, other: &Tensor) {
        linalg::axpy(&mut self.terms, c, &other.terms);
    }

    /// Outer product of elements.
    pub fn outer(legs: &[&Elem]) -> Tensor {
        let mut acc: Vec<(Vec<Monomial>, QScalar)> = vec![(Vec::new(), QScalar::one())];
        for leg in legs {
            let mut next = Vec::new();
            for (key, c) in &acc {
                for (m, d) in &leg.terms {
                    let mut k = key.clone();
                    k.push(m.clone());
                    next.push((k, c * d));
                }
            }
            acc = next;
        }
        let mut t = Tensor::zero();
        for (k, c) in acc {
            linalg::axpy(&mut t.terms, &QScalar::one(), &BTreeMap::from([(k, c)]));
        }
        t
    }

    /// Swaps the two legs of a 2-tensor.
    pub fn flip(&self) -> Tensor {
        Tensor {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.iter().rev().cloned().collect(), c.clone()))
                .collect(),
        }
    }

    /// Groups a 2-tensor as `sum_l l ⊗ R_l` over distinct left monomials.
    pub fn right_components(&self) -> BTreeMap<Monomial, Elem> {
        let mut out: BTreeMap<Monomial, Elem> = BTreeMap::new();
        for (k, c) in &self.terms {
            out.entry(k[0].clone()).or_default().terms.insert(k[1].clone(), c.clone());
        }
        out
    }

    /// Groups a 2-tensor as `sum_r L_r ⊗ r` over distinct right monomials.
    pub fn left_components(&self) -> BTreeMap<Monomial, Elem> {
        let mut out: BTreeMap<Monomial, Elem> = BTreeMap::new();
        for (k, c) in &self.terms {
            out.entry(k[1].clone()).or_default().terms.insert(k[0].clone(), c.clone());
        }
        out
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let legs = k.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" (x) ");
                if c.is_one() {
                    legs
                } else {
                    format!("{c} * {legs}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Unreduced term: words need not be standard.
#[derive(Clone, Debug)]
struct Raw {
    c: QScalar,
    f: Word,
    k: Root,
    e: Word,
}

/// Which transcription of the braid automorphisms on `E_j`, `F_j` (`j != i`).
/// `SignTwisted` multiplies those images by `(-1)^{a_ij}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    Standard,
    SignTwisted,
}

#[derive(Debug)]
struct SerreTable {
    standard: Vec<Word>,
    reduce: HashMap<Word, Vec<(Word, QScalar)>>,
    ideal: Vec<Vector<Word>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    E(usize),
    F(usize),
}

type LusztigKey = (usize, bool, Monomial);
type StraightenCache = HashMap<(Word, Word), Arc<Vec<Raw>>>;

/// Algebra context: Cartan data plus lazily filled caches.
pub struct Uq {
    pub rs: RootSystem,
    pub convention: Convention,
    serre: RwLock<HashMap<Root, Arc<SerreTable>>>,
    straighten: RwLock<StraightenCache>,
    coproducts: RwLock<HashMap<Monomial, Arc<Tensor>>>,
    lusztig: RwLock<HashMap<LusztigKey, Arc<Elem>>>,
}

impl fmt::Debug for Uq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Uq").field("type", &self.rs.type_string()).field("convention", &self.convention).finish()
    }
}

impl Uq {
    pub fn new(rs: RootSystem) -> Self {
        Self::with_convention(rs, Convention::Standard)
    }

    pub fn with_convention(rs: RootSystem, convention: Convention) -> Self {
        Uq {
            rs,
            convention,
            serre: RwLock::new(HashMap::new()),
            straighten: RwLock::new(HashMap::new()),
            coproducts: RwLock::new(HashMap::new()),
            lusztig: RwLock::new(HashMap::new()),
        }
    }

    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    fn form(&self, a: &[i64], b: &[i64]) -> i64 {
        self.rs.inner(a, b)
    }

    fn q_pow(e: i64) -> QScalar {
        QScalar::q_pow(e as i32)
    }

    /// `q_i = q^{d_i}`.
    pub fn qi(&self, i: usize) -> QScalar {
        Self::q_pow(self.rs.d[i])
    }

    // ---- generators ----

    pub fn one(&self) -> Elem {
        Elem::scalar(QScalar::one(), self.rank())
    }

    pub fn scalar(&self, c: QScalar) -> Elem {
        Elem::scalar(c, self.rank())
    }

    pub fn e(&self, i: usize) -> Elem {
        Elem::from_monomial(Monomial::e_word(vec![i as u8], self.rank()), QScalar::one())
    }

    pub fn f(&self, i: usize) -> Elem {
        Elem::from_monomial(Monomial::f_word(vec![i as u8], self.rank()), QScalar::one())
    }

    /// `K_lambda` for a root-lattice vector `lambda`.
    pub fn k(&self, lambda: &[i64]) -> Elem {
        Elem::from_monomial(Monomial { f: vec![], k: lambda.to_vec(), e: vec![] }, QScalar::one())
    }

    pub fn k_simple(&self, i: usize, power: i64) -> Elem {
        self.k(&lie::scale(&self.rs.simple(i), power))
    }

    /// Product of E-letters in the given order, reduced.
    pub fn e_word(&self, w: &[u8]) -> Elem {
        self.normalize(vec![Raw { c: QScalar::one(), f: vec![], k: self.rs.zero(), e: w.to_vec() }])
    }

    pub fn f_word(&self, w: &[u8]) -> Elem {
        self.normalize(vec![Raw { c: QScalar::one(), f: w.to_vec(), k: self.rs.zero(), e: vec![] }])
    }

    // ---- Serre normal form ----

    fn serre_table(&self, beta: &Root) -> Arc<SerreTable> {
        if let Some(t) = self.serre.read().get(beta) {
            return t.clone();
        }
        let table = Arc::new(self.build_serre_table(beta));
        self.serre.write().entry(beta.clone()).or_insert(table).clone()
    }

    fn build_serre_table(&self, beta: &Root) -> SerreTable {
        let rank = self.rank();
        let mut words = Vec::new();
        enumerate_words(beta, &mut Vec::new(), &mut beta.clone(), &mut words);
        let mut span: Span<Word> = Span::new();
        for i in 0..rank {
            if beta[i] == 0 {
                continue;
            }
            let mut lower = beta.clone();
            lower[i] -= 1;
            let sub = self.serre_table(&lower);
            for row in &sub.ideal {
                let left: Vector<Word> = row
                    .iter()
                    .map(|(w, c)| {
                        let mut x = vec![i as u8];
                        x.extend_from_slice(w);
                        (x, c.clone())
                    })
                    .collect();
                span.insert(&left);
                let right: Vector<Word> = row
                    .iter()
                    .map(|(w, c)| {
                        let mut x = w.clone();
                        x.push(i as u8);
                        (x, c.clone())
                    })
                    .collect();
                span.insert(&right);
            }
        }
        for i in 0..rank {
            for j in 0..rank {
                if i == j {
                    continue;
                }
                let n = 1 - self.rs.cartan[i][j];
                let mut w = vec![0i64; rank];
                w[i] = n;
                w[j] += 1;
                if &w != beta {
                    continue;
                }
                let mut rel = Vector::new();
                for s in 0..=n {
                    let mut word = vec![i as u8; (n - s) as usize];
                    word.push(j as u8);
                    word.extend(std::iter::repeat_n(i as u8, s as usize));
                    let mut c = q_binomial(n as u32, s as u32, self.rs.d[i] as u32);
                    if s % 2 == 1 {
                        c = -c;
                    }
                    rel.insert(word, c);
                }
                span.insert(&rel);
            }
        }
        let mut reduce = HashMap::new();
        let mut standard = Vec::new();
        for w in &words {
            if !span.is_pivot(w) {
                standard.push(w.clone());
            }
            let red = span.reduce(&Vector::from([(w.clone(), QScalar::one())])).remainder;
            reduce.insert(w.clone(), red.into_iter().collect());
        }
        let ideal = span.rows().map(|(_, v)| v.clone()).collect();
        SerreTable { standard, reduce, ideal }
    }

    /// Standard words of degree `beta`, ascending.
    pub fn standard_words(&self, beta: &Root) -> Vec<Word> {
        if beta.iter().any(|&c| c < 0) {
            return Vec::new();
        }
        self.serre_table(beta).standard.clone()
    }

    /// Dimension of the degree-`beta` piece of `U_q(n)`.
    pub fn positive_dim(&self, beta: &Root) -> usize {
        self.standard_words(beta).len()
    }

    fn reduce_word(&self, w: &[u8]) -> Vec<(Word, QScalar)> {
        if w.len() <= 1 {
            return vec![(w.to_vec(), QScalar::one())];
        }
        let beta = word_weight(w, self.rank());
        self.serre_table(&beta).reduce[w].clone()
    }

    /// Normal form of an E-word.
    pub fn serre_normal_form(&self, w: &[u8]) -> Elem {
        self.e_word(w)
    }

    fn normalize(&self, raw: Vec<Raw>) -> Elem {
        let mut combined: HashMap<(Word, Root, Word), Vec<QScalar>> = HashMap::new();
        for r in raw {
            if r.c.is_zero() {
                continue;
            }
            combined.entry((r.f, r.k, r.e)).or_default().push(r.c);
        }
        let mut acc: HashMap<Monomial, Vec<QScalar>> = HashMap::new();
        for ((f, k, e), cs) in combined {
            let c = QScalar::sum(&cs);
            if c.is_zero() {
                continue;
            }
            let fr = self.reduce_word(&f);
            let er = self.reduce_word(&e);
            for (fw, fc) in &fr {
                let cf = &c * fc;
                for (ew, ec) in &er {
                    let m = Monomial { f: fw.clone(), k: k.clone(), e: ew.clone() };
                    acc.entry(m).or_default().push(&cf * ec);
                }
            }
        }
        let terms = acc
            .into_iter()
            .filter_map(|(m, cs)| {
                let c = QScalar::sum(&cs);
                (!c.is_zero()).then_some((m, c))
            })
            .collect();
        Elem { terms }
    }

    // ---- products ----

    /// `E_e F_f` rewritten as a sum of `F K E` raw terms.
    fn straighten(&self, e: &[u8], f: &[u8]) -> Arc<Vec<Raw>> {
        let rank = self.rank();
        if e.is_empty() || f.is_empty() {
            return Arc::new(vec![Raw { c: QScalar::one(), f: f.to_vec(), k: vec![0; rank], e: e.to_vec() }]);
        }
        let key = (e.to_vec(), f.to_vec());
        if let Some(v) = self.straighten.read().get(&key) {
            return v.clone();
        }
        let a = *e.last().expect("nonempty");
        let rest = &e[..e.len() - 1];
        let alpha = self.rs.simple(a as usize);
        let denom = (&self.qi(a as usize) - &self.qi(a as usize).inv().expect("nonzero")).inv().expect("nonzero");
        let mut inner = vec![Raw { c: QScalar::one(), f: f.to_vec(), k: vec![0; rank], e: vec![a] }];
        for p in 0..f.len() {
            if f[p] != a {
                continue;
            }
            let suffix = word_weight(&f[p + 1..], rank);
            let s = self.form(&alpha, &suffix);
            let mut g = f.to_vec();
            g.remove(p);
            inner.push(Raw { c: &Self::q_pow(-s) * &denom, f: g.clone(), k: alpha.clone(), e: vec![] });
            inner.push(Raw { c: -(&Self::q_pow(s) * &denom), f: g, k: lie::scale(&alpha, -1), e: vec![] });
        }
        let mut acc: HashMap<(Word, Root, Word), QScalar> = HashMap::new();
        for Raw { c, f: g, k: y, e: z } in inner {
            for r in self.straighten(rest, &g).iter() {
                let u_wt = word_weight(&r.e, rank);
                let coef = &(&c * &r.c) * &Self::q_pow(-self.form(&y, &u_wt));
                let mut e2 = r.e.clone();
                e2.extend_from_slice(&z);
                *acc.entry((r.f.clone(), lie::add(&r.k, &y), e2)).or_default() += &coef;
            }
        }
        let mut out: Vec<Raw> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((f, k, e), c)| Raw { c, f, k, e }).collect();
        out.sort_by(|a, b| (&a.f, &a.k, &a.e).cmp(&(&b.f, &b.k, &b.e)));
        let out = Arc::new(out);
        self.straighten.write().insert(key, out.clone());
        out
    }

    /// Raw product of two monomials given as `F K E` triples.
    fn mul_raw(&self, c1: &QScalar, m1: (&[u8], &[i64], &[u8]), c2: &QScalar, m2: (&[u8], &[i64], &[u8])) -> Vec<Raw> {
        let rank = self.rank();
        let (f1, k1, e1) = m1;
        let (f2, k2, e2) = m2;
        let c12 = c1 * c2;
        self.straighten(e1, f2)
            .iter()
            .map(|r| {
                let x_wt = word_weight(&r.f, rank);
                let u_wt = word_weight(&r.e, rank);
                let s = -self.form(k1, &x_wt) - self.form(k2, &u_wt);
                let mut f = f1.to_vec();
                f.extend_from_slice(&r.f);
                let mut e = r.e.clone();
                e.extend_from_slice(e2);
                let mut k = lie::add(k1, &r.k);
                lie::add_assign(&mut k, k2);
                Raw { c: &(&c12 * &r.c) * &Self::q_pow(s), f, k, e }
            })
            .collect()
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut raw = Vec::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                raw.extend(self.mul_raw(ca, (&ma.f, &ma.k, &ma.e), cb, (&mb.f, &mb.k, &mb.e)));
            }
        }
        self.normalize(raw)
    }

    pub fn mul_all(&self, xs: &[&Elem]) -> Elem {
        xs.iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    pub fn pow(&self, x: &Elem, n: u32) -> Elem {
        (0..n).fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    /// `K_lambda x K_lambda^{-1}`.
    pub fn conj_k(&self, lambda: &[i64], x: &Elem) -> Elem {
        let mut out = Elem::zero();
        for (m, c) in &x.terms {
            out.terms.insert(m.clone(), c * &Self::q_pow(self.form(lambda, &m.weight())));
        }
        out
    }

    /// `[x, y]_q = xy - q^{(mu, nu)} yx` for weight vectors.
    pub fn q_commutator(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        if x.is_zero() || y.is_zero() {
            return Ok(Elem::zero());
        }
        let mu = x.weight().ok_or_else(|| Error::Invalid("q-commutator of a non-homogeneous element".into()))?;
        let nu = y.weight().ok_or_else(|| Error::Invalid("q-commutator of a non-homogeneous element".into()))?;
        let yx = self.mul(y, x).scale(&Self::q_pow(self.form(&mu, &nu)));
        Ok(self.mul(x, y).sub(&yx))
    }

    // ---- Hopf structure ----

    fn coproduct_monomial(&self, m: &Monomial) -> Arc<Tensor> {
        if let Some(t) = self.coproducts.read().get(m) {
            return t.clone();
        }
        let rank = self.rank();
        let a = &m.f;
        let b = &m.e;
        let mut f_parts = Vec::new();
        for mask in 0..(1u32 << a.len()) {
            let inb = |p: usize| mask & (1 << p) != 0;
            let mut s = 0;
            for p in 0..a.len() {
                for t in p + 1..a.len() {
                    if inb(p) && !inb(t) {
                        s += self.rs.form[a[p] as usize][a[t] as usize];
                    }
                }
            }
            let left: Word = (0..a.len()).filter(|&p| inb(p)).map(|p| a[p]).collect();
            let right: Word = (0..a.len()).filter(|&p| !inb(p)).map(|p| a[p]).collect();
            let rk = lie::scale(&word_weight(&left, rank), -1);
            f_parts.push((s, left, right, rk));
        }
        let mut e_parts = Vec::new();
        for mask in 0..(1u32 << b.len()) {
            let ina = |p: usize| mask & (1 << p) != 0;
            let mut s = 0;
            for t in 0..b.len() {
                for p in t + 1..b.len() {
                    if ina(t) && !ina(p) {
                        s -= self.rs.form[b[t] as usize][b[p] as usize];
                    }
                }
            }
            let left: Word = (0..b.len()).filter(|&p| ina(p)).map(|p| b[p]).collect();
            let right: Word = (0..b.len()).filter(|&p| !ina(p)).map(|p| b[p]).collect();
            let lk = word_weight(&right, rank);
            e_parts.push((s, left, right, lk));
        }
        let mut out = Tensor::zero();
        for (sf, fl, fr, rk) in &f_parts {
            for (se, el, er, lk) in &e_parts {
                let c = Self::q_pow(sf + se);
                let left = self.normalize(vec![Raw { c: QScalar::one(), f: fl.clone(), k: lie::add(&m.k, lk), e: el.clone() }]);
                let right = self.normalize(vec![Raw { c: QScalar::one(), f: fr.clone(), k: lie::add(&m.k, rk), e: er.clone() }]);
                out.axpy(&c, &Tensor::outer(&[&left, &right]));
            }
        }
        let out = Arc::new(out);
        self.coproducts.write().insert(m.clone(), out.clone());
        out
    }

    pub fn coproduct(&self, x: &Elem) -> Tensor {
        let mut out = Tensor::zero();
        for (m, c) in &x.terms {
            out.axpy(c, &self.coproduct_monomial(m));
        }
        out
    }

    /// Applies the coproduct to one leg, increasing the arity by one.
    pub fn coproduct_leg(&self, t: &Tensor, leg: usize) -> Tensor {
        let mut out = Tensor::zero();
        for (key, c) in &t.terms {
            let d = self.coproduct_monomial(&key[leg]);
            for (pair, dc) in &d.terms {
                let mut k = key[..leg].to_vec();
                k.extend(pair.iter().cloned());
                k.extend(key[leg + 1..].iter().cloned());
                linalg::axpy(&mut out.terms, &QScalar::one(), &Vector::from([(k, c * dc)]));
            }
        }
        out
    }

    pub fn counit(&self, x: &Elem) -> QScalar {
        x.terms
            .iter()
            .filter(|(m, _)| m.f.is_empty() && m.e.is_empty())
            .fold(QScalar::zero(), |acc, (_, c)| &acc + c)
    }

    fn antipode_monomial(&self, m: &Monomial) -> Elem {
        let rank = self.rank();
        let a = &m.f;
        let b = &m.e;
        let pair_sum = |w: &[u8]| -> i64 {
            let mut s = 0;
            for j in 0..w.len() {
                for l in j + 1..w.len() {
                    s += self.rs.form[w[j] as usize][w[l] as usize];
                }
            }
            s
        };
        let sign = |n: usize| if n.is_multiple_of(2) { QScalar::one() } else { -QScalar::one() };
        // S(E_b) K_{-t} = q^{(t, wt b)} K_{-wt b - t} E_{rev b} up to the sign and pair factor
        let ce = &sign(b.len()) * &Self::q_pow(pair_sum(b) + self.form(&m.k, &word_weight(b, rank)));
        let cf = &sign(a.len()) * &Self::q_pow(-pair_sum(a));
        let mut kl = lie::scale(&word_weight(b, rank), -1);
        lie::sub_assign(&mut kl, &m.k);
        let rb: Word = b.iter().rev().copied().collect();
        let ra: Word = a.iter().rev().copied().collect();
        let wa = word_weight(a, rank);
        self.normalize(self.mul_raw(&ce, (&[], &kl, &rb), &cf, (&ra, &wa, &[])))
    }

    pub fn antipode(&self, x: &Elem) -> Elem {
        let mut out = Elem::zero();
        for (m, c) in &x.terms {
            out.axpy(c, &self.antipode_monomial(m));
        }
        out
    }

    /// Multiplies all legs of a tensor together.
    pub fn multiply_legs(&self, t: &Tensor) -> Elem {
        let mut out = Elem::zero();
        for (key, c) in &t.terms {
            let legs: Vec<Elem> = key.iter().map(|m| Elem::from_monomial(m.clone(), QScalar::one())).collect();
            let refs: Vec<&Elem> = legs.iter().collect();
            out.axpy(c, &self.mul_all(&refs));
        }
        out
    }

    /// Legwise product of two tensors of equal arity.
    pub fn tensor_mul(&self, a: &Tensor, b: &Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let legs: Vec<Elem> = ka
                    .iter()
                    .zip(kb)
                    .map(|(x, y)| {
                        self.mul(&Elem::from_monomial(x.clone(), QScalar::one()), &Elem::from_monomial(y.clone(), QScalar::one()))
                    })
                    .collect();
                let refs: Vec<&Elem> = legs.iter().collect();
                out.axpy(&(ca * cb), &Tensor::outer(&refs));
            }
        }
        out
    }

    /// Applies a linear map to one leg.
    pub fn map_leg(&self, t: &Tensor, leg: usize, f: impl Fn(&Elem) -> Elem) -> Tensor {
        let mut out = Tensor::zero();
        for (key, c) in &t.terms {
            let image = f(&Elem::from_monomial(key[leg].clone(), QScalar::one()));
            for (m, d) in &image.terms {
                let mut k = key.clone();
                k[leg] = m.clone();
                linalg::axpy(&mut out.terms, &QScalar::one(), &Vector::from([(k, c * d)]));
            }
        }
        out
    }

    // ---- adjoint action ----

    /// `E_i ▷ y = E_i y - K_i y K_i^{-1} E_i`.
    pub fn ad_e(&self, i: usize, y: &Elem) -> Elem {
        let ei = self.e(i);
        self.mul(&ei, y).sub(&self.mul(&self.conj_k(&self.rs.simple(i), y), &ei))
    }

    /// `F_i ▷ y = (F_i y - y F_i) K_i`.
    pub fn ad_f(&self, i: usize, y: &Elem) -> Elem {
        let fi = self.f(i);
        let comm = self.mul(&fi, y).sub(&self.mul(y, &fi));
        self.mul(&comm, &self.k_simple(i, 1))
    }

    /// `K_lambda ▷ y`.
    pub fn ad_k(&self, lambda: &[i64], y: &Elem) -> Elem {
        self.conj_k(lambda, y)
    }

    /// `x ▷ y = x_(1) y S(x_(2))` for arbitrary `x`.
    pub fn adjoint(&self, x: &Elem, y: &Elem) -> Elem {
        let d = self.coproduct(x);
        let mut out = Elem::zero();
        for (key, c) in &d.terms {
            let l = Elem::from_monomial(key[0].clone(), QScalar::one());
            let r = self.antipode(&Elem::from_monomial(key[1].clone(), QScalar::one()));
            out.axpy(c, &self.mul(&self.mul(&l, y), &r));
        }
        out
    }

    /// Adjoint action of a generator letter.
    pub fn ad_letter(&self, l: Letter, y: &Elem) -> Elem {
        match l {
            Letter::E(i) => self.ad_e(i, y),
            Letter::F(i) => self.ad_f(i, y),
        }
    }

    /// `F_w ▷ y`, rightmost letter acting first.
    pub fn ad_f_word(&self, w: &[u8], y: &Elem) -> Elem {
        w.iter().rev().fold(y.clone(), |acc, &i| if acc.is_zero() { acc } else { self.ad_f(i as usize, &acc) })
    }

    pub fn ad_e_word(&self, w: &[u8], y: &Elem) -> Elem {
        w.iter().rev().fold(y.clone(), |acc, &i| if acc.is_zero() { acc } else { self.ad_e(i as usize, &acc) })
    }

    // ---- braid automorphisms ----

    fn divided_power_word(&self, i: usize, n: i64) -> (Word, QScalar) {
        (vec![i as u8; n as usize], q_factorial(n as u32, self.rs.d[i] as u32).inv().expect("nonzero"))
    }

    /// Image of a generator under `T_i` or `T_i^{-1}`.
    pub fn lusztig_letter(&self, i: usize, inverse: bool, l: Letter) -> Elem {
        let rank = self.rank();
        let alpha = self.rs.simple(i);
        let dii = self.form(&alpha, &alpha);
        match l {
            Letter::E(j) if j == i => {
                if inverse {
                    // -K_i^{-1} F_i = -q^{(a_i,a_i)} F_i K_i^{-1}
                    Elem::from_monomial(Monomial { f: vec![i as u8], k: lie::scale(&alpha, -1), e: vec![] }, -Self::q_pow(dii))
                } else {
                    Elem::from_monomial(Monomial { f: vec![i as u8], k: alpha, e: vec![] }, -QScalar::one())
                }
            }
            Letter::F(j) if j == i => {
                if inverse {
                    // -E_i K_i = -q^{-(a_i,a_i)} K_i E_i
                    Elem::from_monomial(Monomial { f: vec![], k: alpha, e: vec![i as u8] }, -Self::q_pow(-dii))
                } else {
                    Elem::from_monomial(Monomial { f: vec![], k: lie::scale(&alpha, -1), e: vec![i as u8] }, -QScalar::one())
                }
            }
            Letter::E(j) | Letter::F(j) => {
                let r = -self.rs.cartan[i][j];
                let twist = match self.convention {
                    Convention::Standard => 1,
                    Convention::SignTwisted => {
                        if r % 2 == 0 {
                            1
                        } else {
                            -1
                        }
                    }
                };
                let is_e = matches!(l, Letter::E(_));
                let mut raw = Vec::new();
                for s in 0..=r {
                    // Standard: T_i(E_j) = sum (-1)^s q_i^{-s} E_i^{(r-s)} E_j E_i^{(s)}
                    //           T_i(F_j) = sum (-1)^s q_i^{s} F_i^{(s)} F_j F_i^{(r-s)}
                    // Inverse:  E_i^{(s)} E_j E_i^{(r-s)} and F_i^{(r-s)} F_j F_i^{(s)}.
                    let (pre, post) = match (is_e, inverse) {
                        (true, false) => (r - s, s),
                        (true, true) => (s, r - s),
                        (false, false) => (s, r - s),
                        (false, true) => (r - s, s),
                    };
                    let (w1, c1) = self.divided_power_word(i, pre);
                    let (w2, c2) = self.divided_power_word(i, post);
                    let mut w = w1;
                    w.push(j as u8);
                    w.extend(w2);
                    let qexp = if is_e { -self.rs.d[i] * s } else { self.rs.d[i] * s };
                    let sign = if (s % 2 == 0) == (twist == 1) { QScalar::one() } else { -QScalar::one() };
                    let c = &(&(&c1 * &c2) * &Self::q_pow(qexp)) * &sign;
                    if is_e {
                        raw.push(Raw { c, f: vec![], k: vec![0; rank], e: w });
                    } else {
                        raw.push(Raw { c, f: w, k: vec![0; rank], e: vec![] });
                    }
                }
                self.normalize(raw)
            }
        }
    }

    fn lusztig_monomial(&self, i: usize, inverse: bool, m: &Monomial) -> Arc<Elem> {
        let key = (i, inverse, m.clone());
        if let Some(v) = self.lusztig.read().get(&key) {
            return v.clone();
        }
        let mut acc = self.one();
        for &j in &m.f {
            acc = self.mul(&acc, &self.lusztig_letter(i, inverse, Letter::F(j as usize)));
        }
        acc = self.mul(&acc, &self.k(&self.rs.reflect(i, &m.k)));
        for &j in &m.e {
            acc = self.mul(&acc, &self.lusztig_letter(i, inverse, Letter::E(j as usize)));
        }
        let acc = Arc::new(acc);
        self.lusztig.write().insert(key, acc.clone());
        acc
    }

    /// `T_i(x)` or `T_i^{-1}(x)`.
    pub fn lusztig(&self, i: usize, x: &Elem, inverse: bool) -> Elem {
        let mut out = Elem::zero();
        for (m, c) in &x.terms {
            out.axpy(c, &self.lusztig_monomial(i, inverse, m));
        }
        out
    }

    /// `T_{w_1} ... T_{w_n}(x)`.
    pub fn lusztig_word(&self, word: &[usize], x: &Elem) -> Elem {
        word.iter().rev().fold(x.clone(), |acc, &i| self.lusztig(i, &acc, false))
    }

    /// `E_{beta_k} = T_{a_1} ... T_{a_{k-1}}(E_{a_k})`.
    pub fn root_vectors(&self, word: &[usize]) -> Vec<Elem> {
        (0..word.len()).map(|k| self.lusztig_word(&word[..k], &self.e(word[k]))).collect()
    }

    /// `F_{beta_k} = T_{a_1} ... T_{a_{k-1}}(F_{a_k})`.
    pub fn f_root_vectors(&self, word: &[usize]) -> Vec<Elem> {
        (0..word.len()).map(|k| self.lusztig_word(&word[..k], &self.f(word[k]))).collect()
    }

    // ---- involutions ----

    /// Chevalley involution: `K -> K^{-1}`, `E_i <-> F_i`, algebra map.
    pub fn omega(&self, x: &Elem) -> Elem {
        let mut out = Elem::zero();
        for (m, c) in &x.terms {
            // omega(F_a K_t E_b) = E_a K_{-t} F_b = q^{(t, wt a)} K_{-t} E_a F_b
            let wa = word_weight(&m.f, self.rank());
            let c0 = c * &Self::q_pow(self.form(&m.k, &wa));
            let neg = lie::scale(&m.k, -1);
            let zero = self.rs.zero();
            out.axpy(&QScalar::one(), &self.normalize(self.mul_raw(&c0, (&[], &neg, &m.f), &QScalar::one(), (&m.e, &zero, &[]))));
        }
        out
    }

    /// Anti-multiplicative involution with `K* = K`, `E_i* = F_i K_i`,
    /// `F_i* = K_i^{-1} E_i`, fixing `q` and rational coefficients.
    pub fn star(&self, x: &Elem) -> Elem {
        let mut out = Elem::zero();
        for (m, c) in &x.terms {
            let mut acc = self.one();
            for &j in m.e.iter().rev() {
                acc = self.mul(&acc, &self.star_letter(Letter::E(j as usize)));
            }
            acc = self.mul(&acc, &self.k(&m.k));
            for &j in m.f.iter().rev() {
                acc = self.mul(&acc, &self.star_letter(Letter::F(j as usize)));
            }
            out.axpy(c, &acc);
        }
        out
    }

    fn star_letter(&self, l: Letter) -> Elem {
        match l {
            Letter::E(i) => Elem::from_monomial(
                Monomial { f: vec![i as u8], k: self.rs.simple(i), e: vec![] },
                QScalar::one(),
            ),
            Letter::F(i) => {
                Elem::from_monomial(Monomial { f: vec![], k: lie::scale(&self.rs.simple(i), -1), e: vec![i as u8] }, QScalar::one())
            }
        }
    }

    // ---- parsing ----

    /// Parses the text form produced by `Display`.
    pub fn parse(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        if s == "0" {
            return Ok(Elem::zero());
        }
        let mut out = Elem::zero();
        for term in split_top_level(s, " + ") {
            let term = term.trim();
            let (coef, mono) = match split_top_level(term, " * ").as_slice() {
                [c, m] => (c.parse::<QScalar>()?, self.parse_monomial(m)?),
                [single] => {
                    if single.starts_with(['F', 'K', 'E']) {
                        (QScalar::one(), self.parse_monomial(single)?)
                    } else {
                        (single.parse::<QScalar>()?, Monomial::one(self.rank()))
                    }
                }
                _ => return Err(Error::Parse(format!("bad term {term:?}"))),
            };
            let normal = self.normalize(vec![Raw { c: coef, f: mono.f, k: mono.k, e: mono.e }]);
            out.axpy(&QScalar::one(), &normal);
        }
        Ok(out)
    }

    fn parse_monomial(&self, s: &str) -> Result<Monomial> {
        let rank = self.rank();
        let mut m = Monomial::one(rank);
        if s.trim() == "1" {
            return Ok(m);
        }
        for part in s.split_whitespace() {
            let (tag, body) = part.split_at(1);
            let body = body
                .strip_prefix('[')
                .and_then(|b| b.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("bad factor {part:?}")))?;
            let nums: Vec<i64> = if body.is_empty() {
                Vec::new()
            } else {
                body.split(',')
                    .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad index in {part:?}"))))
                    .collect::<Result<_>>()?
            };
            let letters = |nums: &[i64]| -> Result<Word> {
                nums.iter()
                    .map(|&n| {
                        if n >= 1 && (n as usize) <= rank {
                            Ok((n - 1) as u8)
                        } else {
                            Err(Error::Parse(format!("generator index {n} out of range")))
                        }
                    })
                    .collect()
            };
            match tag {
                "F" => m.f = letters(&nums)?,
                "E" => m.e = letters(&nums)?,
                "K" => {
                    if nums.len() != rank {
                        return Err(Error::Parse(format!("K needs {rank} exponents")));
                    }
                    m.k = nums;
                }
                _ => return Err(Error::Parse(format!("unknown factor {part:?}"))),
            }
        }
        Ok(m)
    }
}

fn split_top_level<'a>(s: &'a str, sep: &str) -> Vec<&'a str> {
    let mut parts = Vec::new();
    let bytes = s.as_bytes();
    let mut depth = 0i32;
    let mut start = 0;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && s[i..].starts_with(sep) {
            parts.push(&s[start..i]);
            i += sep.len();
            start = i;
            continue;
        }
        i += 1;
    }
    parts.push(&s[start..]);
    parts
}

fn enumerate_words(beta: &Root, prefix: &mut Word, rest: &mut Root, out: &mut Vec<Word>) {
    if rest.iter().all(|&c| c == 0) {
        out.push(prefix.clone());
        return;
    }
    for i in 0..beta.len() {
        if rest[i] > 0 {
            rest[i] -= 1;
            prefix.push(i as u8);
            enumerate_words(beta, prefix, rest, out);
            prefix.pop();
            rest[i] += 1;
        }
    }
}

/// PBW monomial `E_{beta_1}^{(m_1)} ... E_{beta_N}^{(m_N)}`, stored as exponents.
pub type PbwExponent = Vec<u32>;

struct PbwDegree {
    monomials: Vec<PbwExponent>,
    span: Span<Monomial>,
}

/// PBW basis attached to a reduced word for the longest element.
pub struct Pbw<'a> {
    pub uq: &'a Uq,
    pub word: Vec<usize>,
    pub roots: Vec<Root>,
    pub vectors: Vec<Elem>,
    powers: RwLock<HashMap<(usize, u32), Arc<Elem>>>,
    degrees: RwLock<HashMap<Root, Arc<PbwDegree>>>,
}

impl<'a> Pbw<'a> {
    pub fn new(uq: &'a Uq, word: &[usize]) -> Result<Self> {
        let roots = lie::root_enumeration(&uq.rs, word)?;
        let vectors = uq.root_vectors(word);
        Ok(Pbw {
            uq,
            word: word.to_vec(),
            roots,
            vectors,
            powers: RwLock::new(HashMap::new()),
            degrees: RwLock::new(HashMap::new()),
        })
    }

    /// `E_{beta_k}^{(n)}`.
    pub fn divided_power(&self, k: usize, n: u32) -> Arc<Elem> {
        if let Some(v) = self.powers.read().get(&(k, n)) {
            return v.clone();
        }
        let beta = &self.roots[k];
        let d = (self.uq.rs.inner(beta, beta) / 2) as u32;
        let p = self.uq.pow(&self.vectors[k], n).scale(&q_factorial(n, d).inv().expect("nonzero"));
        let p = Arc::new(p);
        self.powers.write().insert((k, n), p.clone());
        p
    }

    pub fn monomial(&self, exps: &[u32]) -> Elem {
        let mut acc = self.uq.one();
        for (k, &n) in exps.iter().enumerate() {
            if n > 0 {
                acc = self.uq.mul(&acc, &self.divided_power(k, n));
            }
        }
        acc
    }

    /// Exponent vectors of total weight `beta`, sorted by total degree and then
    /// lexicographically in decreasing order.
    pub fn exponents(&self, beta: &Root) -> Vec<PbwExponent> {
        let mut out = Vec::new();
        fn rec(roots: &[Root], k: usize, rest: &Root, cur: &mut Vec<u32>, out: &mut Vec<PbwExponent>) {
            if k == roots.len() {
                if rest.iter().all(|&c| c == 0) {
                    out.push(cur.clone());
                }
                return;
            }
            let mut r = rest.clone();
            let mut m = 0;
            loop {
                cur.push(m);
                rec(roots, k + 1, &r, cur, out);
                cur.pop();
                lie::sub_assign(&mut r, &roots[k]);
                if r.iter().any(|&c| c < 0) {
                    break;
                }
                m += 1;
            }
        }
        rec(&self.roots, 0, beta, &mut Vec::new(), &mut out);
        out.sort_by(|a, b| a.iter().sum::<u32>().cmp(&b.iter().sum::<u32>()).then_with(|| b.cmp(a)));
        out
    }

    fn degree(&self, beta: &Root) -> Result<Arc<PbwDegree>> {
        if let Some(d) = self.degrees.read().get(beta) {
            return Ok(d.clone());
        }
        let monomials = self.exponents(beta);
        let mut span = Span::new();
        for m in &monomials {
            if span.insert(&self.monomial(m).terms).is_none() {
                return Err(Error::Invariant(format!("PBW monomials of degree {beta:?} are dependent")));
            }
        }
        let d = Arc::new(PbwDegree { monomials, span });
        self.degrees.write().insert(beta.clone(), d.clone());
        Ok(d)
    }

    /// Number of PBW monomials of degree `beta` (checked independent).
    pub fn dim(&self, beta: &Root) -> Result<usize> {
        Ok(self.degree(beta)?.monomials.len())
    }

    /// Coefficients of `x` (in `U_q(n)`) over PBW monomials.
    pub fn expand(&self, x: &Elem) -> Result<BTreeMap<PbwExponent, QScalar>> {
        if !x.is_positive() {
            return Err(Error::Invalid("PBW expansion needs an element of the positive part".into()));
        }
        let mut out = BTreeMap::new();
        for (beta, part) in x.by_weight() {
            let deg = self.degree(&beta)?;
            let coords = deg
                .span
                .coords(&part.terms)
                .ok_or_else(|| Error::Invariant(format!("PBW monomials of degree {beta:?} do not span")))?;
            for (m, c) in deg.monomials.iter().zip(coords) {
                if !c.is_zero() {
                    out.insert(m.clone(), c);
                }
            }
        }
        Ok(out)
    }

    /// Text form of an expansion, e.g. `[2]_q * E[b4] + E[b2] E[b6]`.
    pub fn format_expansion(exp: &BTreeMap<PbwExponent, QScalar>) -> String {
        if exp.is_empty() {
            return "0".into();
        }
        let mut entries: Vec<(&PbwExponent, &QScalar)> = exp.iter().collect();
        entries.sort_by(|a, b| a.0.iter().sum::<u32>().cmp(&b.0.iter().sum::<u32>()).then_with(|| b.0.cmp(a.0)));
        entries
            .into_iter()
            .map(|(m, c)| {
                let mono = Self::format_monomial(m);
                if c.is_one() {
                    mono
                } else {
                    format!("{} * {mono}", c.pretty())
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn format_monomial(m: &[u32]) -> String {
        let parts: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(k, &n)| if n == 1 { format!("E[b{}]", k + 1) } else { format!("E[b{}]^({n})", k + 1) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    /// True if `[E_{beta_i}, E_{beta_j}]_q` expands only in `E_{beta_{i+1}}, ..., E_{beta_{j-1}}`.
    pub fn supported_between(exp: &BTreeMap<PbwExponent, QScalar>, i: usize, j: usize) -> bool {
        exp.keys().all(|m| m.iter().enumerate().all(|(k, &n)| n == 0 || (i < k && k < j)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q_int;

    fn uq(t: &str) -> Uq {
        Uq::new(RootSystem::build(t).unwrap())
    }

    fn s(x: &str) -> QScalar {
        x.parse().unwrap()
    }

    #[test]
    fn a2_serre_reduction_is_consistent() {
        let u = uq("A2");
        let lhs = u.serre_normal_form(&[0, 1, 0]);
        let rhs = u.e_word(&[0, 0, 1]).add(&u.e_word(&[1, 0, 0])).scale(&q_int(2, 1).inv().unwrap());
        assert_eq!(lhs, rhs);
        assert_eq!(u.positive_dim(&vec![2, 1]), 2);
        let a1 = uq("A1");
        assert_eq!(a1.serre_normal_form(&[0, 0, 0]).to_string(), "E[1,1,1]");
    }

    #[test]
    fn g2_serre_rank_matches_kostant() {
        let u = uq("G2");
        for a in 0..=3 {
            for b in 0..=2 {
                let beta = vec![a, b];
                assert_eq!(u.positive_dim(&beta) as u64, u.rs.kostant_partition(&beta), "{beta:?}");
            }
        }
    }

    #[test]
    fn commutation_relations() {
        let u = uq("A1");
        let ef = u.mul(&u.e(0), &u.f(0));
        let want = u.parse("F[1] E[1] + 1/(q - q^-1) * K[1] + -1/(q - q^-1) * K[-1]").unwrap();
        assert_eq!(ef, want);
        let a2 = uq("A2");
        let ke = a2.mul(&a2.k_simple(0, 1), &a2.e(1));
        assert_eq!(ke, a2.mul(&a2.e(1), &a2.k_simple(0, 1)).scale(&s("q^-1")));
        let ef = a2.mul(&a2.e(0), &a2.f(1));
        assert_eq!(ef, a2.mul(&a2.f(1), &a2.e(0)));
    }

    #[test]
    fn associativity_on_mixed_words() {
        let u = uq("B2");
        let x = u.parse("F[1,2] E[2]").unwrap();
        let y = u.parse("E[1] F[2] + K[1,0]").unwrap_or_else(|_| u.mul(&u.e(0), &u.f(1)).add(&u.k_simple(0, 1)));
        let z = u.parse("E[2,1] + q * F[1]").unwrap();
        assert_eq!(u.mul(&u.mul(&x, &y), &z), u.mul(&x, &u.mul(&y, &z)));
    }

    #[test]
    fn coproduct_of_generators() {
        let u = uq("A2");
        let d = u.coproduct(&u.e(0));
        let want = Tensor::outer(&[&u.e(0), &u.one()]).add(&Tensor::outer(&[&u.k_simple(0, 1), &u.e(0)]));
        assert_eq!(d, want);
        let dk = u.coproduct(&u.k_simple(1, 1));
        assert_eq!(dk, Tensor::outer(&[&u.k_simple(1, 1), &u.k_simple(1, 1)]));
        assert_eq!(u.antipode(&u.k_simple(1, 1)), u.k_simple(1, -1));
    }

    #[test]
    fn antipode_axiom() {
        let u = uq("A2");
        let x = u.mul(&u.e(0), &u.e(1));
        let d = u.coproduct(&x);
        let lhs = u.multiply_legs(&u.map_leg(&d, 0, |y| u.antipode(y)));
        assert!(lhs.is_zero());
    }

    #[test]
    fn adjoint_examples() {
        let u = uq("A2");
        let got = u.ad_e(0, &u.e(1));
        let want = u.e_word(&[0, 1]).sub(&u.e_word(&[1, 0]).scale(&QScalar::q_pow(-1)));
        assert_eq!(got, want);
        assert_eq!(u.adjoint(&u.e(0), &u.e(1)), got);
        assert!(u.ad_f(0, &u.e(1)).is_zero());
        assert_eq!(u.adjoint(&u.f(1), &u.e_word(&[0, 1])), u.ad_f(1, &u.e_word(&[0, 1])));
    }

    #[test]
    fn lusztig_anchor_relations() {
        let u = uq("G2");
        for i in 0..2 {
            assert_eq!(u.lusztig(i, &u.k_simple(i, 1), false), u.k_simple(i, -1));
            let want = Elem::from_monomial(Monomial { f: vec![i as u8], k: u.rs.simple(i), e: vec![] }, -QScalar::one());
            assert_eq!(u.lusztig(i, &u.e(i), false), want);
            let want = u.mul(&u.k_simple(i, -1), &u.e(i)).neg();
            assert_eq!(u.lusztig(i, &u.f(i), false), want);
        }
    }

    #[test]
    fn lusztig_inverse() {
        for t in ["A2", "B2", "G2"] {
            let u = uq(t);
            for i in 0..2 {
                for x in [u.e(0), u.e(1), u.f(0), u.f(1), u.k_simple(1, 1)] {
                    let y = u.lusztig(i, &u.lusztig(i, &x, true), false);
                    assert_eq!(y, x, "{t} T_{i} T_{i}^-1 on {x}");
                    assert_eq!(u.lusztig(i, &u.lusztig(i, &x, false), true), x);
                }
            }
        }
    }

    #[test]
    fn a2_braid_relation() {
        let u = uq("A2");
        for x in [u.e(0), u.e(1), u.f(0), u.f(1), u.e_word(&[0, 1])] {
            let a = u.lusztig_word(&[0, 1, 0], &x);
            let b = u.lusztig_word(&[1, 0, 1], &x);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn a2_root_vector() {
        let u = uq("A2");
        let v = u.root_vectors(&[0, 1, 0]);
        assert_eq!(v[0], u.e(0));
        assert_eq!(v[2], u.e(1));
        let want = u.e_word(&[0, 1]).sub(&u.e_word(&[1, 0]).scale(&QScalar::q_pow(-1)));
        assert_eq!(v[1], want);
    }

    #[test]
    fn text_round_trip() {
        let u = uq("B2");
        let x = u.mul(&u.parse("(q^2 + 1) * F[1] K[1,0] E[2]").unwrap(), &u.parse("E[1,2] + 3").unwrap());
        assert_eq!(u.parse(&x.to_string()).unwrap(), x);
    }
}
