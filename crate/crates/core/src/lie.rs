//! Root systems and Weyl group words. Also the graded decomposition of a
//! positive nilradical along a chain of Levi subsets.
//!
//! Roots and weights are integer vectors in simple-root coordinates. Simple
//! roots are indexed from 0 internally; all user-facing text is 1-based.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num::{BigRational, One, Zero};

use crate::error::{Error, Result};

/// Vector in simple-root coordinates.
pub type Root = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// One simple factor; its simple roots occupy `offset..offset + rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub family: Family,
    pub rank: usize,
    pub offset: usize,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// Symmetrized Gram matrix `(alpha_i, alpha_j)` of one simple factor.
fn gram(family: Family, rank: usize) -> Result<Vec<Vec<i64>>> {
    let bad = || Error::RootSystem(format!("{}{} is not a valid type", family.letter(), rank));
    let ok = match family {
        Family::A => rank >= 1,
        Family::B | Family::C => rank >= 2,
        Family::D => rank >= 4,
        Family::E => (6..=8).contains(&rank),
        Family::F => rank == 4,
        Family::G => rank == 2,
    };
    if !ok {
        return Err(bad());
    }
    let n = rank;
    let mut b = vec![vec![0i64; n]; n];
    let link = |b: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        b[i][j] = v;
        b[j][i] = v;
    };
    match family {
        Family::A => {
            for i in 0..n {
                b[i][i] = 2;
            }
            for i in 0..n.saturating_sub(1) {
                link(&mut b, i, i + 1, -1);
            }
        }
        Family::B => {
            for i in 0..n {
                b[i][i] = if i + 1 == n { 2 } else { 4 };
            }
            for i in 0..n - 1 {
                link(&mut b, i, i + 1, -2);
            }
        }
        Family::C => {
            for i in 0..n {
                b[i][i] = if i + 1 == n { 4 } else { 2 };
            }
            for i in 0..n - 2 {
                link(&mut b, i, i + 1, -1);
            }
            link(&mut b, n - 2, n - 1, -2);
        }
        Family::D => {
            for i in 0..n {
                b[i][i] = 2;
            }
            for i in 0..n - 2 {
                link(&mut b, i, i + 1, -1);
            }
            link(&mut b, n - 3, n - 1, -1);
        }
        Family::E => {
            // Chain 1 - 2 - ... - (n-1), with node n attached to node 3.
            for i in 0..n {
                b[i][i] = 2;
            }
            for i in 0..n - 2 {
                link(&mut b, i, i + 1, -1);
            }
            link(&mut b, 2, n - 1, -1);
        }
        Family::F => {
            let diag = [4, 4, 2, 2];
            for i in 0..4 {
                b[i][i] = diag[i];
            }
            link(&mut b, 0, 1, -2);
            link(&mut b, 1, 2, -2);
            link(&mut b, 2, 3, -1);
        }
        Family::G => {
            b[0][0] = 2;
            b[1][1] = 6;
            link(&mut b, 0, 1, -3);
        }
    }
    Ok(b)
}

/// A (possibly semisimple) root system with a flattened simple-root index set.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub components: Vec<Component>,
    pub rank: usize,
    /// `cartan[i][j] = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)`.
    pub cartan: Vec<Vec<i64>>,
    /// `(alpha_i, alpha_i) / 2`.
    pub d: Vec<i64>,
    /// Symmetrized form `(alpha_i, alpha_j) = d_i cartan[i][j]`.
    pub form: Vec<Vec<i64>>,
    /// Positive roots sorted by height, then lexicographically.
    pub positive: Vec<Root>,
    index: HashMap<Root, usize>,
}

impl RootSystem {
    /// Parses `A3`, `G2`, `A1+A2`, ...
    pub fn build(spec: &str) -> Result<Self> {
        let mut comps = Vec::new();
        let mut offset = 0;
        for part in spec.split('+') {
            let part = part.trim();
            let mut chars = part.chars();
            let letter = chars.next().ok_or_else(|| Error::RootSystem(format!("empty component in {spec:?}")))?;
            let family = match letter.to_ascii_uppercase() {
                'A' => Family::A,
                'B' => Family::B,
                'C' => Family::C,
                'D' => Family::D,
                'E' => Family::E,
                'F' => Family::F,
                'G' => Family::G,
                _ => return Err(Error::RootSystem(format!("unknown type letter {letter:?}"))),
            };
            let rank: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::RootSystem(format!("bad rank in {part:?}")))?;
            gram(family, rank)?;
            comps.push(Component { family, rank, offset });
            offset += rank;
        }
        let mut form = vec![vec![0i64; offset]; offset];
        for c in &comps {
            let g = gram(c.family, c.rank)?;
            for i in 0..c.rank {
                for j in 0..c.rank {
                    form[c.offset + i][c.offset + j] = g[i][j];
                }
            }
        }
        Ok(Self::from_form(comps, form))
    }

    /// Root system of the Levi subset `s`, indexed by position in `s`.
    /// Component labels are left empty.
    pub fn restrict(&self, s: &[usize]) -> RootSystem {
        let form = s.iter().map(|&i| s.iter().map(|&j| self.form[i][j]).collect()).collect();
        Self::from_form(Vec::new(), form)
    }

    fn from_form(components: Vec<Component>, form: Vec<Vec<i64>>) -> Self {
        let rank = form.len();
        let d: Vec<i64> = (0..rank).map(|i| form[i][i] / 2).collect();
        let cartan = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * form[i][j] / form[i][i]).collect())
            .collect();
        let mut rs = RootSystem { components, rank, cartan, d, form, positive: Vec::new(), index: HashMap::new() };
        rs.generate_roots();
        rs
    }

    fn generate_roots(&mut self) {
        let mut seen: BTreeSet<Root> = BTreeSet::new();
        let mut frontier: Vec<Root> = (0..self.rank).map(|i| self.simple(i)).collect();
        seen.extend(frontier.iter().cloned());
        while let Some(beta) = frontier.pop() {
            for i in 0..self.rank {
                let g = self.reflect(i, &beta);
                if g.iter().all(|&c| c >= 0) && g.iter().any(|&c| c > 0) && seen.insert(g.clone()) {
                    frontier.push(g);
                }
            }
        }
        let mut roots: Vec<Root> = seen.into_iter().collect();
        roots.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| a.cmp(b)));
        self.index = roots.iter().cloned().enumerate().map(|(k, r)| (r, k)).collect();
        self.positive = roots;
    }

    pub fn simple(&self, i: usize) -> Root {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        v
    }

    pub fn zero(&self) -> Root {
        vec![0; self.rank]
    }

    /// `(beta, gamma)`.
    pub fn inner(&self, beta: &[i64], gamma: &[i64]) -> i64 {
        let mut acc = 0;
        for (i, &b) in beta.iter().enumerate() {
            if b == 0 {
                continue;
            }
            for (j, &g) in gamma.iter().enumerate() {
                acc += b * g * self.form[i][j];
            }
        }
        acc
    }

    /// `<beta, alpha_i^vee>`.
    pub fn pairing(&self, beta: &[i64], i: usize) -> i64 {
        beta.iter().zip(&self.cartan[i]).map(|(b, a)| b * a).sum()
    }

    pub fn reflect(&self, i: usize, beta: &[i64]) -> Root {
        let c = self.pairing(beta, i);
        let mut out = beta.to_vec();
        out[i] -= c;
        out
    }

    /// Applies `s_{w_1} ... s_{w_n}` (rightmost first).
    pub fn apply_word(&self, word: &[usize], beta: &[i64]) -> Root {
        word.iter().rev().fold(beta.to_vec(), |acc, &i| self.reflect(i, &acc))
    }

    pub fn is_root(&self, beta: &[i64]) -> bool {
        if beta.iter().all(|&c| c <= 0) {
            let neg: Root = beta.iter().map(|c| -c).collect();
            self.index.contains_key(&neg)
        } else {
            self.index.contains_key(beta)
        }
    }

    pub fn root_index(&self, beta: &[i64]) -> Option<usize> {
        self.index.get(beta).copied()
    }

    /// Twice the Weyl vector, in root coordinates.
    pub fn two_rho(&self) -> Root {
        let mut acc = self.zero();
        for r in &self.positive {
            add_assign(&mut acc, r);
        }
        acc
    }

    /// `(lambda, lambda + 2 rho)` for a root-lattice vector.
    pub fn casimir(&self, lambda: &[i64]) -> i64 {
        let mut shifted = lambda.to_vec();
        add_assign(&mut shifted, &self.two_rho());
        self.inner(lambda, &shifted)
    }

    /// Highest root of each simple component, in component order.
    pub fn highest_roots(&self) -> Vec<Root> {
        let mut out = Vec::new();
        for c in &self.components {
            let best = self
                .positive
                .iter()
                .filter(|r| support_within(r, c.offset, c.offset + c.rank))
                .max_by_key(|r| height(r))
                .expect("component has roots")
                .clone();
            out.push(best);
        }
        out
    }

    /// Sum of the highest roots; the default degree bound for graded computations.
    pub fn degree_bound(&self) -> Root {
        let mut acc = self.zero();
        for h in self.highest_roots() {
            add_assign(&mut acc, &h);
        }
        acc
    }

    /// Positive roots supported on the subset `s`.
    pub fn roots_in(&self, s: &[usize]) -> Vec<Root> {
        self.positive.iter().filter(|r| supported_on(r, s)).cloned().collect()
    }

    pub fn type_string(&self) -> String {
        self.components.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("+")
    }

    /// Number of ways to write `beta` as a sum of positive roots.
    pub fn kostant_partition(&self, beta: &[i64]) -> u64 {
        let mut memo = HashMap::new();
        self.kostant_rec(beta.to_vec(), 0, &mut memo)
    }

    fn kostant_rec(&self, beta: Root, from: usize, memo: &mut HashMap<(Root, usize), u64>) -> u64 {
        if beta.iter().all(|&c| c == 0) {
            return 1;
        }
        if beta.iter().any(|&c| c < 0) || from >= self.positive.len() {
            return 0;
        }
        if let Some(&v) = memo.get(&(beta.clone(), from)) {
            return v;
        }
        let r = &self.positive[from];
        let mut total = 0;
        let mut rest = beta.clone();
        loop {
            total += self.kostant_rec(rest.clone(), from + 1, memo);
            sub_assign(&mut rest, r);
            if rest.iter().any(|&c| c < 0) {
                break;
            }
        }
        memo.insert((beta, from), total);
        total
    }
}

pub fn height(r: &[i64]) -> i64 {
    r.iter().sum()
}

pub fn add_assign(a: &mut [i64], b: &[i64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

pub fn sub_assign(a: &mut [i64], b: &[i64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x -= y;
    }
}

pub fn add(a: &[i64], b: &[i64]) -> Root {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Root {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[i64], k: i64) -> Root {
    a.iter().map(|x| x * k).collect()
}

pub fn is_nonneg(a: &[i64]) -> bool {
    a.iter().all(|&c| c >= 0)
}

/// `a <= b` componentwise.
pub fn dominated(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn support_within(r: &[i64], lo: usize, hi: usize) -> bool {
    r.iter().enumerate().all(|(i, &c)| c == 0 || (lo..hi).contains(&i))
}

pub fn supported_on(r: &[i64], s: &[usize]) -> bool {
    r.iter().enumerate().all(|(i, &c)| c == 0 || s.contains(&i))
}

/// Formats `2a1 + a2`-style text (1-based).
pub fn root_to_string(r: &[i64]) -> String {
    let parts: Vec<String> = r
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| if c == 1 { format!("a{}", i + 1) } else { format!("{c}a{}", i + 1) })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Weyl group element as its integer matrix on the root lattice; column `j`
/// holds `w(alpha_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    cols: Vec<Root>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement { cols: (0..rank).map(|j| { let mut v = vec![0; rank]; v[j] = 1; v }).collect() }
    }

    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Self {
        WeylElement { cols: (0..rs.rank).map(|j| rs.apply_word(word, &rs.simple(j))).collect() }
    }

    pub fn apply(&self, beta: &[i64]) -> Root {
        let mut out = vec![0; beta.len()];
        for (j, &b) in beta.iter().enumerate() {
            if b != 0 {
                for (o, c) in out.iter_mut().zip(&self.cols[j]) {
                    *o += b * c;
                }
            }
        }
        out
    }

    /// `self * other`.
    pub fn compose(&self, other: &Self) -> Self {
        WeylElement { cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    /// `self * s_i`.
    pub fn times_simple(&self, rs: &RootSystem, i: usize) -> Self {
        self.compose(&WeylElement::from_word(rs, &[i]))
    }

    pub fn is_identity(&self) -> bool {
        self.cols.iter().enumerate().all(|(j, c)| c.iter().enumerate().all(|(i, &x)| x == (i == j) as i64))
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, rs: &RootSystem) -> usize {
        rs.positive.iter().filter(|r| self.apply(r).iter().any(|&c| c < 0)).count()
    }

    /// Reduced word by repeatedly stripping the smallest right descent.
    pub fn reduced_word(&self, rs: &RootSystem) -> Vec<usize> {
        let mut w = self.clone();
        let mut rev = Vec::new();
        while !w.is_identity() {
            let i = (0..rs.rank)
                .find(|&i| w.cols[i].iter().any(|&c| c < 0))
                .expect("non-identity element has a descent");
            w = w.times_simple(rs, i);
            rev.push(i);
        }
        rev.reverse();
        rev
    }
}

pub fn is_reduced(rs: &RootSystem, word: &[usize]) -> bool {
    WeylElement::from_word(rs, word).length(rs) == word.len()
}

/// Reduced word for the longest element of the parabolic subgroup `W_S`.
pub fn longest_word(rs: &RootSystem, s: &[usize]) -> Vec<usize> {
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    let mut w = WeylElement::identity(rs.rank);
    let mut word = Vec::new();
    while let Some(&i) = sorted.iter().find(|&&i| is_nonneg(&w.apply(&rs.simple(i)))) {
        w = w.times_simple(rs, i);
        word.push(i);
    }
    word
}

/// `(w_{0,S}, w_S)` with `w_0 = w_{0,S} w_S` and lengths adding up.
pub fn parabolic_factorization(rs: &RootSystem, s: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let all: Vec<usize> = (0..rs.rank).collect();
    relative_factorization(rs, s, &all)
}

/// Factorization `w_{0,T} = w_{0,S} w` inside the parabolic subgroup `W_T`, `S ⊆ T`.
pub fn relative_factorization(rs: &RootSystem, s: &[usize], t: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let w0s = longest_word(rs, s);
    let w0t = WeylElement::from_word(rs, &longest_word(rs, t));
    let rest = WeylElement::from_word(rs, &w0s).compose(&w0t);
    (w0s, rest.reduced_word(rs))
}

/// `beta_k = s_{i_1} ... s_{i_{k-1}} (alpha_{i_k})`.
pub fn root_enumeration(rs: &RootSystem, word: &[usize]) -> Result<Vec<Root>> {
    if !is_reduced(rs, word) {
        return Err(Error::Invalid(format!("word {:?} is not reduced", one_based(word))));
    }
    Ok((0..word.len()).map(|k| rs.apply_word(&word[..k], &rs.simple(word[k]))).collect())
}

/// If `i < j` and `beta_k = beta_i + beta_j` then `i < k < j`.
pub fn is_convex(roots: &[Root]) -> bool {
    let pos: HashMap<&Root, usize> = roots.iter().enumerate().map(|(k, r)| (r, k)).collect();
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if let Some(&k) = pos.get(&add(&roots[i], &roots[j])) {
                if !(i < k && k < j) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn one_based(word: &[usize]) -> Vec<usize> {
    word.iter().map(|i| i + 1).collect()
}

/// A total order `alpha_{i_1} < ... < alpha_{i_r}` on the simple roots,
/// equivalently the chain `S_1 ⊂ ... ⊂ S_{r+1} = Π` with `S_k = S_{k+1} \ {alpha_{i_k}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionSpec {
    pub order: Vec<usize>,
}

impl DecompositionSpec {
    pub fn new(rs: &RootSystem, order: Vec<usize>) -> Result<Self> {
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted != (0..rs.rank).collect::<Vec<_>>() {
            return Err(Error::Invalid(format!(
                "order {:?} is not a permutation of 1..{}",
                one_based(&order),
                rs.rank
            )));
        }
        Ok(DecompositionSpec { order })
    }

    /// The default order `alpha_1 < ... < alpha_r`.
    pub fn standard(rank: usize) -> Self {
        DecompositionSpec { order: (0..rank).collect() }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// `S_k` for `k` in `1..=r+1` (1-based, as a sorted index list).
    pub fn levi(&self, k: usize) -> Vec<usize> {
        let mut s: Vec<usize> = self.order[..k - 1].to_vec();
        s.sort_unstable();
        s
    }

    /// The full chain `S_1, ..., S_{r+1}`.
    pub fn chain(&self) -> Vec<Vec<usize>> {
        (1..=self.order.len() + 1).map(|k| self.levi(k)).collect()
    }

    /// Recovers the order from the chain of Levi subsets.
    pub fn from_chain(chain: &[Vec<usize>]) -> Result<Self> {
        let mut order = Vec::new();
        for w in chain.windows(2) {
            let diff: Vec<usize> = w[1].iter().filter(|i| !w[0].contains(i)).copied().collect();
            if diff.len() != 1 || w[0].iter().any(|i| !w[1].contains(i)) {
                return Err(Error::Invalid("chain steps must add exactly one simple root".into()));
            }
            order.push(diff[0]);
        }
        Ok(DecompositionSpec { order })
    }
}

/// The piece `n_k` of the decomposition with its grading.
#[derive(Clone, Debug)]
pub struct NilradicalPiece {
    /// 1-based position in the chain.
    pub k: usize,
    /// Grading simple root `alpha_{i_k}`.
    pub simple: usize,
    /// `S_k`.
    pub levi: Vec<usize>,
    /// `S_{k+1}`.
    pub ambient: Vec<usize>,
    /// `graded[n - 1]` lists the roots of degree `n`.
    pub graded: Vec<Vec<Root>>,
}

impl NilradicalPiece {
    pub fn roots(&self) -> impl Iterator<Item = &Root> {
        self.graded.iter().flatten()
    }

    pub fn dim(&self) -> usize {
        self.graded.iter().map(Vec::len).sum()
    }
}

pub fn nilradical_decomposition(rs: &RootSystem, spec: &DecompositionSpec) -> Vec<NilradicalPiece> {
    let r = spec.len();
    (1..=r)
        .map(|k| {
            let levi = spec.levi(k);
            let ambient = spec.levi(k + 1);
            let s = spec.order[k - 1];
            let mut by_degree: BTreeMap<i64, Vec<Root>> = BTreeMap::new();
            for root in rs.roots_in(&ambient) {
                if root[s] > 0 {
                    by_degree.entry(root[s]).or_default().push(root);
                }
            }
            let top = by_degree.keys().next_back().copied().unwrap_or(0);
            let graded = (1..=top).map(|n| by_degree.remove(&n).unwrap_or_default()).collect();
            NilradicalPiece { k, simple: s, levi, ambient, graded }
        })
        .collect()
}

/// The reduced word `w_1 ... w_r` for `w_0` adapted to the decomposition:
/// the segment for `k` enumerates exactly the roots of `n_k`.
pub fn adapted_word(rs: &RootSystem, spec: &DecompositionSpec) -> (Vec<usize>, Vec<std::ops::Range<usize>>) {
    let mut word = Vec::new();
    let mut ranges = Vec::new();
    for k in 1..=spec.len() {
        let (_, seg) = relative_factorization(rs, &spec.levi(k), &spec.levi(k + 1));
        let start = word.len();
        word.extend(seg);
        ranges.push(start..word.len());
    }
    (word, ranges)
}

/// Rational vector helpers used for weights in fundamental coordinates.
pub fn rational_solve(a: &[Vec<i64>], b: &[i64]) -> Vec<BigRational> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = a[i].iter().map(|&x| BigRational::from_integer(x.into())).collect();
            row.push(BigRational::from_integer(b[i].into()));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).expect("nonsingular system");
        m.swap(col, piv);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..=n {
                    let v = &m[col][c] * &f;
                    m[r][c] -= v;
                }
            }
        }
    }
    debug_assert!(m.iter().enumerate().all(|(i, row)| row[i].is_one()));
    m.into_iter().map(|row| row[n].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g2_positive_roots() {
        let rs = RootSystem::build("G2").unwrap();
        let mut got = rs.positive.clone();
        got.sort();
        let mut want = vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1], vec![3, 1], vec![3, 2]];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(rs.highest_roots(), vec![vec![3, 2]]);
        assert_eq!(rs.inner(&[1, 0], &[0, 1]), -3);
        assert_eq!(rs.inner(&[0, 1], &[0, 1]), 6);
    }

    #[test]
    fn root_counts() {
        for (t, n) in [
            ("A1", 1),
            ("A3", 6),
            ("B2", 4),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("F4", 24),
            ("G2", 6),
            ("A1+A2", 4),
        ] {
            assert_eq!(RootSystem::build(t).unwrap().positive.len(), n, "{t}");
        }
    }

    #[test]
    fn exceptional_highest_roots() {
        let hr = |t: &str| RootSystem::build(t).unwrap().highest_roots()[0].clone();
        assert_eq!(hr("E6"), vec![1, 2, 3, 2, 1, 2]);
        assert_eq!(hr("E7"), vec![2, 3, 4, 3, 2, 1, 2]);
        assert_eq!(hr("E8"), vec![2, 4, 6, 5, 4, 3, 2, 3]);
        assert_eq!(hr("F4"), vec![2, 3, 4, 2]);
        assert_eq!(hr("G2"), vec![3, 2]);
    }

    #[test]
    fn symmetrizable_cartan() {
        for t in ["B3", "C4", "F4", "G2", "E8", "D5"] {
            let rs = RootSystem::build(t).unwrap();
            for i in 0..rs.rank {
                assert_eq!(rs.cartan[i][i], 2);
                for j in 0..rs.rank {
                    assert_eq!(rs.d[i] * rs.cartan[i][j], rs.d[j] * rs.cartan[j][i]);
                }
            }
        }
    }

    #[test]
    fn bad_types_rejected() {
        for t in ["H3", "E9", "G3", "B1", "A0", "X", ""] {
            assert!(RootSystem::build(t).is_err(), "{t}");
        }
    }

    #[test]
    fn g2_enumeration() {
        let rs = RootSystem::build("G2").unwrap();
        let roots = root_enumeration(&rs, &[1, 0, 1, 0, 1, 0]).unwrap();
        assert_eq!(roots, vec![vec![0, 1], vec![1, 1], vec![3, 2], vec![2, 1], vec![3, 1], vec![1, 0]]);
        assert!(is_convex(&roots));
        assert!(root_enumeration(&rs, &[0, 0]).is_err());
    }

    #[test]
    fn a2_enumeration() {
        let rs = RootSystem::build("A2").unwrap();
        assert_eq!(root_enumeration(&rs, &[0, 1, 0]).unwrap(), vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn longest_words() {
        let g2 = RootSystem::build("G2").unwrap();
        assert_eq!(longest_word(&g2, &[0, 1]).len(), 6);
        assert!(longest_word(&g2, &[]).is_empty());
        let a3 = RootSystem::build("A3").unwrap();
        let w = longest_word(&a3, &[0, 1]);
        assert_eq!(w.len(), 3);
        assert!(is_reduced(&a3, &w));
    }

    #[test]
    fn g2_factorization_matches_worked_example() {
        let rs = RootSystem::build("G2").unwrap();
        let (a, b) = parabolic_factorization(&rs, &[1]);
        assert_eq!(a, vec![1]);
        assert_eq!(b, vec![0, 1, 0, 1, 0]);
        let (a, b) = parabolic_factorization(&rs, &[]);
        assert!(a.is_empty());
        assert_eq!(b.len(), 6);
        let a3 = RootSystem::build("A3").unwrap();
        let (a, b) = parabolic_factorization(&a3, &[0]);
        assert_eq!((a.len(), b.len()), (1, 5));
    }

    #[test]
    fn a3_decomposition() {
        let rs = RootSystem::build("A3").unwrap();
        let pieces = nilradical_decomposition(&rs, &DecompositionSpec::standard(3));
        assert_eq!(pieces[0].graded, vec![vec![vec![1, 0, 0]]]);
        assert_eq!(pieces[1].graded, vec![vec![vec![0, 1, 0], vec![1, 1, 0]]]);
        assert_eq!(pieces[2].graded, vec![vec![vec![0, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]]);
    }

    #[test]
    fn g2_decomposition() {
        let rs = RootSystem::build("G2").unwrap();
        let spec = DecompositionSpec::new(&rs, vec![1, 0]).unwrap();
        let p = nilradical_decomposition(&rs, &spec);
        assert_eq!(p[0].graded, vec![vec![vec![0, 1]]]);
        assert_eq!(
            p[1].graded,
            vec![vec![vec![1, 0], vec![1, 1]], vec![vec![2, 1]], vec![vec![3, 1], vec![3, 2]]]
        );
        let (word, ranges) = adapted_word(&rs, &spec);
        assert_eq!(word, vec![1, 0, 1, 0, 1, 0]);
        assert_eq!(ranges, vec![0..1, 1..6]);
    }

    #[test]
    fn kostant() {
        let a2 = RootSystem::build("A2").unwrap();
        assert_eq!(a2.kostant_partition(&[1, 1]), 2);
        assert_eq!(a2.kostant_partition(&[1, 0]), 1);
        assert_eq!(a2.kostant_partition(&[0, 0]), 1);
        assert_eq!(a2.kostant_partition(&[-1, 0]), 0);
    }

    #[test]
    fn casimir_difference_for_g2() {
        let rs = RootSystem::build("G2").unwrap();
        let s2 = rs.casimir(&[2, 1]);
        let s1 = rs.casimir(&[1, 1]);
        assert_eq!(s2 / 2 - s1, -4);
    }

    #[test]
    fn chain_round_trip() {
        let rs = RootSystem::build("A3").unwrap();
        let spec = DecompositionSpec::new(&rs, vec![2, 0, 1]).unwrap();
        assert_eq!(DecompositionSpec::from_chain(&spec.chain()).unwrap(), spec);
        assert!(DecompositionSpec::new(&rs, vec![0, 0, 1]).is_err());
    }
}
