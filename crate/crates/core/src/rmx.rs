//! Quasi-R-matrices of quantized Levi factors and the braiding they induce on
//! locally finite adjoint vectors. Transmutation and quantum shuffles build on it.
//!
//! The R-matrix is `R_S = kappa ∘ Q_S` with `Q_S = sum_gamma Q_gamma`,
//! `Q_gamma ∈ U_q(l_S)_{-gamma} ⊗ U_q(l_S)_gamma` and `Q_0 = 1 ⊗ 1`. Writing
//! `R = q^t Q`, the intertwining property `R Δ(x) R^{-1} = Δ^op(x)` becomes
//! `Q Δ(x) = Δ̄(x) Q` with `Δ̄(E_i) = E_i ⊗ 1 + K_i^{-1} ⊗ E_i` and
//! `Δ̄(F_i) = F_i ⊗ K_i + 1 ⊗ F_i`, which is solved degree by degree.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::lie::{self, Root};
use crate::linalg::{self, Span, Vector};
use crate::scalar::QScalar;
use crate::uq::{Elem, Monomial, Tensor, Uq, Word};

/// Finite sum of pure tensors `c * (x_1 ⊗ ... ⊗ x_n)` with arbitrary element legs.
pub type PureSum = Vec<(QScalar, Vec<Elem>)>;

/// Quasi-R-matrix of `U_q(l_S)`, computed lazily per weight.
pub struct QuasiR<'a> {
    pub uq: &'a Uq,
    pub levi: Vec<usize>,
    comps: RwLock<HashMap<Root, Arc<Tensor>>>,
}

impl<'a> QuasiR<'a> {
    pub fn new(uq: &'a Uq, levi: &[usize]) -> Self {
        let mut levi = levi.to_vec();
        levi.sort_unstable();
        levi.dedup();
        QuasiR { uq, levi, comps: RwLock::new(HashMap::new()) }
    }

    fn rank(&self) -> usize {
        self.uq.rank()
    }

    /// Levi-positive weights of the given height.
    pub fn weights_of_height(&self, h: i64) -> Vec<Root> {
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.rank()];
        fn rec(levi: &[usize], k: usize, left: i64, cur: &mut Root, out: &mut Vec<Root>) {
            if k == levi.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            for m in 0..=left {
                cur[levi[k]] = m;
                rec(levi, k + 1, left - m, cur, out);
            }
            cur[levi[k]] = 0;
        }
        rec(&self.levi, 0, h, &mut cur, &mut out);
        out
    }

    /// `Q_gamma`.
    pub fn component(&self, gamma: &Root) -> Result<Arc<Tensor>> {
        if let Some(t) = self.comps.read().get(gamma) {
            return Ok(t.clone());
        }
        if gamma.iter().any(|&c| c < 0) || !lie::supported_on(gamma, &self.levi) {
            return Ok(Arc::new(Tensor::zero()));
        }
        let t = if gamma.iter().all(|&c| c == 0) {
            let one = self.uq.one();
            Tensor::outer(&[&one, &one])
        } else {
            self.solve_component(gamma)?
        };
        let t = Arc::new(t);
        self.comps.write().insert(gamma.clone(), t.clone());
        Ok(t)
    }

    fn gen_tensor(&self, left: Elem, right: Elem) -> Tensor {
        Tensor::outer(&[&left, &right])
    }

    fn solve_component(&self, gamma: &Root) -> Result<Tensor> {
        let uq = self.uq;
        let rank = self.rank();
        let words = uq.standard_words(gamma);
        let mut unknowns = Vec::new();
        for u in &words {
            for v in &words {
                unknowns.push(Tensor::outer(&[
                    &Elem::from_monomial(Monomial::f_word(u.clone(), rank), QScalar::one()),
                    &Elem::from_monomial(Monomial::e_word(v.clone(), rank), QScalar::one()),
                ]));
            }
        }
        type Key = (usize, Vec<Monomial>);
        let tag = |eq: usize, t: &Tensor| -> Vector<Key> { t.terms.iter().map(|(k, c)| ((eq, k.clone()), c.clone())).collect() };
        let mut cols: Vec<Vector<Key>> = vec![Vector::new(); unknowns.len()];
        let mut rhs: Vector<Key> = Vector::new();
        let one = uq.one();
        for (slot, &i) in self.levi.iter().enumerate() {
            let e_left = self.gen_tensor(uq.e(i), one.clone());
            let f_right = self.gen_tensor(one.clone(), uq.f(i));
            for (c, t) in unknowns.iter().enumerate() {
                let le = uq.tensor_mul(t, &e_left).sub(&uq.tensor_mul(&e_left, t));
                let lf = uq.tensor_mul(t, &f_right).sub(&uq.tensor_mul(&f_right, t));
                linalg::axpy(&mut cols[c], &QScalar::one(), &tag(2 * slot, &le));
                linalg::axpy(&mut cols[c], &QScalar::one(), &tag(2 * slot + 1, &lf));
            }
            let mut lower = gamma.clone();
            lower[i] -= 1;
            if lower.iter().any(|&x| x < 0) {
                continue;
            }
            let prev = self.component(&lower)?;
            // E-equation: (K_i^{-1} ⊗ E_i) Q' - Q' (K_i ⊗ E_i)
            let a = self.gen_tensor(uq.k_simple(i, -1), uq.e(i));
            let b = self.gen_tensor(uq.k_simple(i, 1), uq.e(i));
            let re = uq.tensor_mul(&a, &prev).sub(&uq.tensor_mul(&prev, &b));
            // F-equation: (F_i ⊗ K_i) Q' - Q' (F_i ⊗ K_i^{-1})
            let a = self.gen_tensor(uq.f(i), uq.k_simple(i, 1));
            let b = self.gen_tensor(uq.f(i), uq.k_simple(i, -1));
            let rf = uq.tensor_mul(&a, &prev).sub(&uq.tensor_mul(&prev, &b));
            linalg::axpy(&mut rhs, &QScalar::one(), &tag(2 * slot, &re));
            linalg::axpy(&mut rhs, &QScalar::one(), &tag(2 * slot + 1, &rf));
        }
        let (sol, unique) = linalg::solve(&cols, &rhs)
            .ok_or_else(|| Error::Invariant(format!("quasi-R equations at weight {gamma:?} are inconsistent")))?;
        if !unique {
            return Err(Error::Invariant(format!("quasi-R equations at weight {gamma:?} are rank deficient")));
        }
        let mut out = Tensor::zero();
        for (c, t) in sol.iter().zip(&unknowns) {
            out.axpy(c, t);
        }
        Ok(out)
    }

    /// Residual of `Q Δ(x) - Δ̄(x) Q` for all Levi generators, keeping only the
    /// terms fully determined by the components up to height `h`.
    pub fn intertwining_residual(&self, h: i64) -> Result<Tensor> {
        let uq = self.uq;
        let mut q = Tensor::zero();
        for k in 0..=h {
            for g in self.weights_of_height(k) {
                q = q.add(&*self.component(&g)?);
            }
        }
        let one = uq.one();
        let mut out = Tensor::zero();
        for &i in &self.levi {
            let de = uq.coproduct(&uq.e(i));
            let dbe = Tensor::outer(&[&uq.e(i), &one]).add(&Tensor::outer(&[&uq.k_simple(i, -1), &uq.e(i)]));
            let re = uq.tensor_mul(&q, &de).sub(&uq.tensor_mul(&dbe, &q));
            for (k, c) in re.terms {
                if lie::height(&k[1].weight()) <= h {
                    linalg::axpy(&mut out.terms, &QScalar::one(), &Vector::from([(k, c)]));
                }
            }
            let df = uq.coproduct(&uq.f(i));
            let dbf = Tensor::outer(&[&uq.f(i), &uq.k_simple(i, 1)]).add(&Tensor::outer(&[&one, &uq.f(i)]));
            let rf = uq.tensor_mul(&q, &df).sub(&uq.tensor_mul(&dbf, &q));
            for (k, c) in rf.terms {
                if lie::height(&k[0].weight()) >= -h {
                    linalg::axpy(&mut out.terms, &QScalar::one(), &Vector::from([(k, c)]));
                }
            }
        }
        Ok(out)
    }

    /// `F_u ▷ x` for the words `u` appearing in `Q`, memoized.
    fn ad_words(&self, memo: &mut HashMap<Word, Elem>, w: &[u8], x: &Elem, f_side: bool) -> Elem {
        if let Some(v) = memo.get(w) {
            return v.clone();
        }
        let v = if w.is_empty() {
            x.clone()
        } else {
            let inner = self.ad_words(memo, &w[1..], x, f_side);
            if inner.is_zero() {
                inner
            } else if f_side {
                self.uq.ad_f(w[0] as usize, &inner)
            } else {
                self.uq.ad_e(w[0] as usize, &inner)
            }
        };
        memo.insert(w.to_vec(), v.clone());
        v
    }

    fn killed_at_height(&self, memo: &mut HashMap<Word, Elem>, h: i64, x: &Elem, f_side: bool) -> bool {
        self.weights_of_height(h).iter().all(|g| {
            self.uq.standard_words(g).iter().all(|w| self.ad_words(memo, w, x, f_side).is_zero())
        })
    }

    fn weight_of(x: &Elem) -> Result<Root> {
        x.weight().ok_or_else(|| Error::Invalid("braiding needs weight-homogeneous legs".into()))
    }

    /// `σ(x ⊗ y) = sum q^{(wt a▷x, wt b▷y)} (b ▷ y) ⊗ (a ▷ x)` over `Q = sum a ⊗ b`.
    /// `x` and `y` must be homogeneous and lie in finite adjoint modules.
    pub fn braid_pair(&self, x: &Elem, y: &Elem) -> Result<Vec<(Elem, Elem)>> {
        if x.is_zero() || y.is_zero() {
            return Ok(Vec::new());
        }
        let mu = Self::weight_of(x)?;
        let nu = Self::weight_of(y)?;
        let mut fm = HashMap::new();
        let mut em = HashMap::new();
        let mut out = Vec::new();
        let mut h = 0;
        loop {
            if h > 0 && (self.killed_at_height(&mut fm, h, x, true) || self.killed_at_height(&mut em, h, y, false)) {
                break;
            }
            for g in self.weights_of_height(h) {
                let comp = self.component(&g)?;
                let s = self.uq.rs.inner(&lie::sub(&mu, &g), &lie::add(&nu, &g));
                let mut acc: BTreeMap<Word, Vec<(Word, QScalar)>> = BTreeMap::new();
                for (k, c) in &comp.terms {
                    acc.entry(k[0].f.clone()).or_default().push((k[1].e.clone(), c.clone()));
                }
                for (u, vs) in acc {
                    let ax = self.ad_words(&mut fm, &u, x, true);
                    if ax.is_zero() {
                        continue;
                    }
                    let mut right = Elem::zero();
                    for (v, c) in vs {
                        right.axpy(&c, &self.ad_words(&mut em, &v, y, false));
                    }
                    if !right.is_zero() {
                        out.push((right.scale(&QScalar::q_pow(s as i32)), ax));
                    }
                }
            }
            h += 1;
        }
        Ok(out)
    }

    /// `T_S(x ⊗ y)` (or its inverse) for arbitrary `x` and homogeneous `y` in a
    /// finite adjoint module.
    pub fn transmute(&self, x: &Elem, y: &Elem, inverse: bool) -> Result<Tensor> {
        if x.is_zero() || y.is_zero() {
            return Ok(Tensor::zero());
        }
        let uq = self.uq;
        let nu = Self::weight_of(y)?;
        let mut fm = HashMap::new();
        let mut out = Tensor::zero();
        let mut h = 0;
        loop {
            if h > 0 && self.killed_at_height(&mut fm, h, y, true) {
                break;
            }
            for g in self.weights_of_height(h) {
                let comp = self.component(&g)?;
                let kw = lie::sub(&nu, &g);
                let mut acc: BTreeMap<Word, Vec<(Word, QScalar)>> = BTreeMap::new();
                for (k, c) in &comp.terms {
                    acc.entry(k[0].f.clone()).or_default().push((k[1].e.clone(), c.clone()));
                }
                for (u, vs) in acc {
                    let ay = self.ad_words(&mut fm, &u, y, true);
                    if ay.is_zero() {
                        continue;
                    }
                    let mut b = Elem::zero();
                    for (v, c) in vs {
                        b.axpy(&c, &uq.e_word(&v));
                    }
                    let left = if inverse {
                        uq.mul(&uq.mul(x, &uq.antipode(&b)), &uq.k(&lie::scale(&kw, -1)))
                    } else {
                        uq.mul(&uq.mul(x, &uq.k(&kw)), &b)
                    };
                    out = out.add(&Tensor::outer(&[&left, &ay]));
                }
            }
            h += 1;
        }
        Ok(out)
    }

    /// `T_S` on a sum of pairs; right legs are split into weight components.
    pub fn transmute_pairs(&self, pairs: &[(Elem, Elem)], inverse: bool) -> Result<Tensor> {
        let mut out = Tensor::zero();
        for (x, y) in pairs {
            for (_, yw) in y.by_weight() {
                out = out.add(&self.transmute(x, &yw, inverse)?);
            }
        }
        Ok(out)
    }

    /// `T_S` applied to a 2-tensor given in monomial form, grouping by left monomial.
    pub fn transmute_tensor(&self, t: &Tensor, inverse: bool) -> Result<Tensor> {
        let pairs: Vec<(Elem, Elem)> = t
            .right_components()
            .into_iter()
            .map(|(l, r)| (Elem::from_monomial(l, QScalar::one()), r))
            .collect();
        self.transmute_pairs(&pairs, inverse)
    }

    /// `σ_k` (legs `k`, `k+1`, zero-based) on a sum of pure tensors.
    pub fn sigma_leg(&self, t: &PureSum, k: usize) -> Result<PureSum> {
        let mut out = Vec::new();
        for (c, legs) in t {
            for (_, a) in legs[k].by_weight() {
                for (_, b) in legs[k + 1].by_weight() {
                    for (l, r) in self.braid_pair(&a, &b)? {
                        let mut v = legs.clone();
                        v[k] = l;
                        v[k + 1] = r;
                        out.push((c.clone(), v));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `σ_s` for `s` given by a reduced word (one-based leg indices), rightmost first.
    pub fn sigma_word(&self, t: &PureSum, word: &[usize]) -> Result<PureSum> {
        let mut cur = t.clone();
        for &i in word.iter().rev() {
            cur = self.sigma_leg(&cur, i - 1)?;
        }
        Ok(cur)
    }

    /// Quantum shuffle product `P^(n)(x_1, ..., x_n)` as a sum of pairs.
    pub fn shuffle_product(&self, xs: &[Elem]) -> Result<Vec<(Elem, Elem)>> {
        let n = xs.len();
        let uq = self.uq;
        let base: PureSum = vec![(QScalar::one(), xs.to_vec())];
        let mut out = Vec::new();
        for i in 0..=n {
            for sh in shuffles(i, n - i) {
                for (c, legs) in self.sigma_word(&base, &sh.word)? {
                    let left = legs[..i].iter().fold(uq.one(), |acc, x| uq.mul(&acc, x));
                    let right = legs[i..].iter().fold(uq.one(), |acc, x| uq.mul(&acc, x));
                    out.push((left.scale(&c), right));
                }
            }
        }
        Ok(out)
    }

    /// Braided product `(a ⊗ b) ·_σ (c ⊗ d) = sum a c' ⊗ b' d` with `σ(b ⊗ c) = sum c' ⊗ b'`.
    pub fn braided_product(&self, lhs: &[(Elem, Elem)], rhs: &[(Elem, Elem)]) -> Result<Vec<(Elem, Elem)>> {
        let uq = self.uq;
        let mut out = Vec::new();
        for (a, b) in lhs {
            for (c, d) in rhs {
                for (_, bw) in b.by_weight() {
                    for (_, cw) in c.by_weight() {
                        for (c2, b2) in self.braid_pair(&bw, &cw)? {
                            out.push((uq.mul(a, &c2), uq.mul(&b2, d)));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `(x_1 ⊗ 1 + 1 ⊗ x_1) ·_σ ... ·_σ (x_n ⊗ 1 + 1 ⊗ x_n)`.
    pub fn braided_power(&self, xs: &[Elem]) -> Result<Vec<(Elem, Elem)>> {
        let one = self.uq.one();
        let prim = |x: &Elem| vec![(x.clone(), one.clone()), (one.clone(), x.clone())];
        let mut acc = vec![(one.clone(), one.clone())];
        for x in xs {
            acc = self.braided_product(&acc, &prim(x))?;
        }
        Ok(acc)
    }
}

/// `x ⧐ t = x_(1) y S(x_(3)) ⊗ x_(2) ▷ z` summed over `t = sum y ⊗ z`.
pub fn black_action(uq: &Uq, x: &Elem, t: &Tensor) -> Tensor {
    let d3 = uq.coproduct_leg(&uq.coproduct(x), 0);
    let mut out = Tensor::zero();
    for (xs, cx) in &d3.terms {
        let x1 = Elem::from_monomial(xs[0].clone(), QScalar::one());
        let x2 = Elem::from_monomial(xs[1].clone(), QScalar::one());
        let sx3 = uq.antipode(&Elem::from_monomial(xs[2].clone(), QScalar::one()));
        for (yz, c) in &t.terms {
            let y = Elem::from_monomial(yz[0].clone(), QScalar::one());
            let z = Elem::from_monomial(yz[1].clone(), QScalar::one());
            let left = uq.mul(&uq.mul(&x1, &y), &sx3);
            let right = uq.adjoint(&x2, &z);
            out.axpy(&(cx * c), &Tensor::outer(&[&left, &right]));
        }
    }
    out
}

/// Tensor-product adjoint action `x ▷ (y ⊗ z) = x_(1) ▷ y ⊗ x_(2) ▷ z`.
pub fn tensor_adjoint(uq: &Uq, x: &Elem, t: &Tensor) -> Tensor {
    let d = uq.coproduct(x);
    let mut out = Tensor::zero();
    for (xs, cx) in &d.terms {
        let x1 = Elem::from_monomial(xs[0].clone(), QScalar::one());
        let x2 = Elem::from_monomial(xs[1].clone(), QScalar::one());
        for (yz, c) in &t.terms {
            let y = Elem::from_monomial(yz[0].clone(), QScalar::one());
            let z = Elem::from_monomial(yz[1].clone(), QScalar::one());
            out.axpy(&(cx * c), &Tensor::outer(&[&uq.adjoint(&x1, &y), &uq.adjoint(&x2, &z)]));
        }
    }
    out
}

/// Sum of pairs as a tensor.
pub fn pairs_to_tensor(pairs: &[(Elem, Elem)]) -> Tensor {
    let mut out = Tensor::zero();
    for (a, b) in pairs {
        out = out.add(&Tensor::outer(&[a, b]));
    }
    out
}

pub fn pure_to_tensor(t: &PureSum) -> Tensor {
    let mut out = Tensor::zero();
    for (c, legs) in t {
        let refs: Vec<&Elem> = legs.iter().collect();
        out.axpy(c, &Tensor::outer(&refs));
    }
    out
}

/// An inverse `(i, j)`-shuffle: `perm` is the shuffle `w` (one-based values,
/// `perm[k-1] = w(k)`), `word` a reduced word for `s = w^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    pub perm: Vec<usize>,
    pub word: Vec<usize>,
}

/// All `(i, j)`-shuffles `w` (with `w(1) < ... < w(i)`, `w(i+1) < ... < w(n)`).
pub fn shuffles(i: usize, j: usize) -> Vec<Shuffle> {
    let n = i + j;
    let mut out = Vec::new();
    // choose the image set of the first i positions
    fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            cur.push(x);
            subsets(n, k, x + 1, cur, out);
            cur.pop();
        }
    }
    let mut sets = Vec::new();
    subsets(n, i, 1, &mut Vec::new(), &mut sets);
    for first in sets {
        let rest: Vec<usize> = (1..=n).filter(|x| !first.contains(x)).collect();
        let perm: Vec<usize> = first.iter().chain(rest.iter()).copied().collect();
        let mut inv = vec![0; n];
        for (k, &v) in perm.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        out.push(Shuffle { word: permutation_word(&inv), perm });
    }
    out.sort_by(|a, b| a.word.len().cmp(&b.word.len()).then_with(|| a.word.cmp(&b.word)));
    out
}

/// Reduced word `s_{i_1} ... s_{i_m}` (composition of functions) for a
/// permutation given as one-based images.
pub fn permutation_word(p: &[usize]) -> Vec<usize> {
    let mut p = p.to_vec();
    let mut rev = Vec::new();
    while let Some(k) = (0..p.len().saturating_sub(1)).find(|&k| p[k] > p[k + 1]) {
        p.swap(k, k + 1);
        rev.push(k + 1);
    }
    rev.reverse();
    rev
}

/// Coordinates of elements in a fixed basis of a finite space.
pub struct ModuleBasis {
    pub basis: Vec<Elem>,
    span: Span<Monomial>,
}

impl ModuleBasis {
    pub fn new(basis: Vec<Elem>) -> Result<Self> {
        let mut span = Span::new();
        for b in &basis {
            if span.insert(&b.terms).is_none() {
                return Err(Error::Invalid("module basis is linearly dependent".into()));
            }
        }
        Ok(ModuleBasis { basis, span })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coords(&self, x: &Elem) -> Option<Vec<QScalar>> {
        self.span.coords(&x.terms)
    }

    pub fn contains(&self, x: &Elem) -> bool {
        self.span.contains(&x.terms)
    }
}

/// Tensor in `V^{⊗n}` written in basis coordinates.
pub type CoordTensor = BTreeMap<Vec<usize>, QScalar>;

/// Matrix of `σ` on `V ⊗ V` for a ▷-stable space `V`.
pub struct BraidingMatrix {
    pub dim: usize,
    pub entries: BTreeMap<(usize, usize), CoordTensor>,
}

impl BraidingMatrix {
    pub fn new(r: &QuasiR<'_>, v: &ModuleBasis) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for i in 0..v.dim() {
            for j in 0..v.dim() {
                let mut t = CoordTensor::new();
                for (l, rr) in r.braid_pair(&v.basis[i], &v.basis[j])? {
                    let cl = v.coords(&l).ok_or_else(|| Error::Invariant("braiding leaves the module".into()))?;
                    let cr = v.coords(&rr).ok_or_else(|| Error::Invariant("braiding leaves the module".into()))?;
                    for (k, a) in cl.iter().enumerate() {
                        for (m, b) in cr.iter().enumerate() {
                            if !a.is_zero() && !b.is_zero() {
                                linalg::axpy(&mut t, &QScalar::one(), &CoordTensor::from([(vec![k, m], a * b)]));
                            }
                        }
                    }
                }
                entries.insert((i, j), t);
            }
        }
        Ok(BraidingMatrix { dim: v.dim(), entries })
    }

    /// `σ_k` on legs `k`, `k+1` (one-based).
    pub fn apply(&self, k: usize, t: &CoordTensor) -> CoordTensor {
        let mut out = CoordTensor::new();
        for (idx, c) in t {
            for (pair, d) in &self.entries[&(idx[k - 1], idx[k])] {
                let mut j = idx.clone();
                j[k - 1] = pair[0];
                j[k] = pair[1];
                linalg::axpy(&mut out, &QScalar::one(), &CoordTensor::from([(j, c * d)]));
            }
        }
        out
    }

    /// `σ_{i_1} ... σ_{i_m}` applied rightmost first.
    pub fn apply_word(&self, word: &[usize], t: &CoordTensor) -> CoordTensor {
        word.iter().rev().fold(t.clone(), |acc, &k| self.apply(k, &acc))
    }

    /// Sum of `σ_w` over a list of words.
    pub fn apply_sum(&self, words: &[Vec<usize>], t: &CoordTensor) -> CoordTensor {
        let mut out = CoordTensor::new();
        for w in words {
            linalg::axpy(&mut out, &QScalar::one(), &self.apply_word(w, t));
        }
        out
    }
}

/// Tensor product of coordinate tensors.
pub fn coord_outer(a: &CoordTensor, b: &CoordTensor) -> CoordTensor {
    let mut out = CoordTensor::new();
    for (i, x) in a {
        for (j, y) in b {
            let mut k = i.clone();
            k.extend(j);
            out.insert(k, x * y);
        }
    }
    out
}

/// Basis vector `e_i` as a one-leg coordinate tensor.
pub fn coord_unit(i: usize) -> CoordTensor {
    CoordTensor::from([(vec![i], QScalar::one())])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::RootSystem;

    fn s(x: &str) -> QScalar {
        x.parse().unwrap()
    }

    #[test]
    fn shuffle_sets() {
        let w: Vec<Vec<usize>> = shuffles(1, 2).into_iter().map(|s| s.word).collect();
        assert_eq!(w, vec![vec![], vec![1], vec![1, 2]]);
        let w: Vec<Vec<usize>> = shuffles(2, 1).into_iter().map(|s| s.word).collect();
        assert_eq!(w, vec![vec![], vec![2], vec![2, 1]]);
        assert_eq!(shuffles(0, 4).len(), 1);
        assert_eq!(shuffles(2, 2).len(), 6);
    }

    #[test]
    fn sl2_quasi_r() {
        let u = Uq::new(RootSystem::build("A1").unwrap());
        let r = QuasiR::new(&u, &[0]);
        let q1 = r.component(&vec![1]).unwrap();
        let want = Tensor::outer(&[&u.f(0), &u.e(0)]).scale(&s("q - q^-1"));
        assert_eq!(*q1, want);
        assert!(r.intertwining_residual(3).unwrap().is_zero());
        let empty = QuasiR::new(&u, &[]);
        assert_eq!(empty.weights_of_height(1), Vec::<Root>::new());
    }

    #[test]
    fn a2_transmutation_of_primitive() {
        let u = Uq::new(RootSystem::build("A2").unwrap());
        let r = QuasiR::new(&u, &[0]);
        let e2 = u.e(1);
        let one = u.one();
        let t = r.transmute_pairs(&[(e2.clone(), one.clone()), (one.clone(), e2.clone())], false).unwrap();
        assert_eq!(t, u.coproduct(&e2));
        let x = u.ad_e(0, &e2);
        let t = r.transmute_pairs(&[(x.clone(), one.clone()), (one.clone(), x.clone())], false).unwrap();
        assert_eq!(t, u.coproduct(&x));
        let back = r.transmute_tensor(&r.transmute(&one, &x, false).unwrap(), true).unwrap();
        assert_eq!(back, Tensor::outer(&[&one, &x]));
    }

    #[test]
    fn black_action_on_coproduct() {
        let u = Uq::new(RootSystem::build("A2").unwrap());
        for i in 0..2 {
            for j in 0..2 {
                let lhs = black_action(&u, &u.e(i), &u.coproduct(&u.e(j)));
                assert_eq!(lhs, u.coproduct(&u.ad_e(i, &u.e(j))));
            }
        }
    }
}
