//! Finite-dimensional representations via Freudenthal's recursion and Klimyk's
//! formula. Used for the degree-three multiplicity table of maximal parabolics.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigRational, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{self, Root, RootSystem};

/// Dynkin labels `(<lambda, alpha_i^vee>)_i`.
pub type Weight = Vec<i64>;

/// Weight multiplicities and dimension of a simple module.
#[derive(Clone, Debug)]
pub struct WeightModule {
    pub highest: Weight,
    pub multiplicities: BTreeMap<Weight, u64>,
    pub dim: u64,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Semisimple Lie algebra data in the weight basis.
pub struct WeightLattice<'a> {
    pub rs: &'a RootSystem,
    /// Positive roots in Dynkin labels.
    roots: Vec<Weight>,
}

impl<'a> WeightLattice<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        let roots = rs.positive.iter().map(|r| Self::root_labels(rs, r)).collect();
        WeightLattice { rs, roots }
    }

    fn rank(&self) -> usize {
        self.rs.rank
    }

    /// Dynkin labels of a root-lattice vector.
    pub fn root_labels(rs: &RootSystem, r: &[i64]) -> Weight {
        (0..rs.rank).map(|j| (0..rs.rank).map(|i| r[i] * rs.cartan[j][i]).sum()).collect()
    }

    /// `(lambda, mu)` with `(alpha_i, alpha_i) = 2 d_i`.
    pub fn inner(&self, lambda: &[i64], mu: &[i64]) -> BigRational {
        let c = lie::rational_solve(&self.rs.cartan, mu);
        (0..self.rank()).map(|j| &c[j] * rat(lambda[j] * self.rs.d[j])).fold(BigRational::zero(), |a, b| a + b)
    }

    fn rho(&self) -> Weight {
        vec![1; self.rank()]
    }

    pub fn is_dominant(lambda: &[i64]) -> bool {
        lambda.iter().all(|&x| x >= 0)
    }

    /// Weyl dimension formula.
    pub fn dimension(&self, lambda: &[i64]) -> Result<u64> {
        self.check_dominant(lambda)?;
        let shifted = lie::add(lambda, &self.rho());
        let mut num = BigRational::one();
        let mut den = BigRational::one();
        for a in &self.roots {
            num *= self.inner(&shifted, a);
            den *= self.inner(&self.rho(), a);
        }
        let v = num / den;
        if !v.is_integer() {
            return Err(Error::Invariant("Weyl dimension is not an integer".into()));
        }
        v.to_integer().to_u64().ok_or_else(|| Error::Invariant("dimension overflow".into()))
    }

    fn check_dominant(&self, lambda: &[i64]) -> Result<()> {
        if lambda.len() != self.rank() || !Self::is_dominant(lambda) {
            return Err(Error::Invalid(format!("{lambda:?} is not a dominant weight of rank {}", self.rank())));
        }
        Ok(())
    }

    /// Freudenthal's recursion.
    pub fn module(&self, lambda: &[i64]) -> Result<WeightModule> {
        self.check_dominant(lambda)?;
        let rank = self.rank();
        let rho = self.rho();
        let simple: Vec<Weight> = (0..rank).map(|i| Self::root_labels(self.rs, &self.rs.simple(i))).collect();
        let top = {
            let s = lie::add(lambda, &rho);
            self.inner(&s, &s)
        };
        let mut mult: BTreeMap<Weight, u64> = BTreeMap::from([(lambda.to_vec(), 1)]);
        let mut level: BTreeSet<Weight> = BTreeSet::from([lambda.to_vec()]);
        while !level.is_empty() {
            let mut next = BTreeSet::new();
            for mu in &level {
                for a in &simple {
                    let nu = lie::sub(mu, a);
                    if !mult.contains_key(&nu) {
                        next.insert(nu);
                    }
                }
            }
            let mut kept = BTreeSet::new();
            for mu in next {
                let s = lie::add(&mu, &rho);
                let den = &top - self.inner(&s, &s);
                if den.is_zero() {
                    continue;
                }
                let mut acc = BigRational::zero();
                for a in &self.roots {
                    let mut w = lie::add(&mu, a);
                    while let Some(&m) = mult.get(&w) {
                        acc += rat(m as i64) * self.inner(&w, a);
                        w = lie::add(&w, a);
                    }
                }
                let m = acc * rat(2) / den;
                if !m.is_integer() || m.is_negative() {
                    return Err(Error::Invariant(format!("Freudenthal produced {m} at {mu:?}")));
                }
                let m = m.to_integer().to_u64().unwrap_or(0);
                if m > 0 {
                    mult.insert(mu.clone(), m);
                    kept.insert(mu);
                }
            }
            level = kept;
        }
        let dim = mult.values().sum();
        Ok(WeightModule { highest: lambda.to_vec(), multiplicities: mult, dim })
    }

    /// Reflects `gamma` into the dominant chamber; `None` if it lies on a wall.
    fn dominant_conjugate(&self, gamma: &[i64]) -> Option<(Weight, i64)> {
        let mut g = gamma.to_vec();
        let mut sign = 1;
        loop {
            if g.contains(&0) {
                return None;
            }
            let Some(i) = g.iter().position(|&x| x < 0) else { return Some((g, sign)) };
            let gi = g[i];
            for (j, x) in g.iter_mut().enumerate() {
                *x -= gi * self.rs.cartan[j][i];
            }
            sign = -sign;
        }
    }

    /// `V(lambda) ⊗ V(mu)` by Klimyk's formula, summing over the weights of `V(mu)`.
    pub fn tensor_decompose(&self, lambda: &[i64], mu: &WeightModule) -> Result<BTreeMap<Weight, u64>> {
        self.check_dominant(lambda)?;
        let rho = self.rho();
        let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
        for (nu, &m) in &mu.multiplicities {
            let g = lie::add(&lie::add(lambda, nu), &rho);
            if let Some((d, sign)) = self.dominant_conjugate(&g) {
                *acc.entry(lie::sub(&d, &rho)).or_default() += sign * m as i64;
            }
        }
        let mut out = BTreeMap::new();
        for (w, m) in acc {
            if m < 0 {
                return Err(Error::Invariant(format!("negative multiplicity {m} for {w:?}")));
            }
            if m > 0 {
                out.insert(w, m as u64);
            }
        }
        Ok(out)
    }

    /// Multiplicity of `V(lambda3)` in `V(lambda1)^{⊗3}`.
    pub fn cube_multiplicity(&self, lambda1: &[i64], lambda3: &[i64]) -> Result<u64> {
        let v1 = self.module(lambda1)?;
        let square = self.tensor_decompose(lambda1, &v1)?;
        let mut total = 0;
        for (k, m) in square {
            total += m * self.tensor_decompose(&k, &v1)?.get(lambda3).copied().unwrap_or(0);
        }
        Ok(total)
    }

    /// Formal character as a multiset of weights.
    pub fn character(&self, lambda: &[i64]) -> Result<BTreeMap<Weight, u64>> {
        Ok(self.module(lambda)?.multiplicities)
    }
}

/// Product of characters.
pub fn character_product(a: &BTreeMap<Weight, u64>, b: &BTreeMap<Weight, u64>) -> BTreeMap<Weight, u64> {
    let mut out = BTreeMap::new();
    for (x, m) in a {
        for (y, n) in b {
            *out.entry(lie::add(x, y)).or_default() += m * n;
        }
    }
    out
}

// ---- Dynkin subdiagrams ----

/// A connected component of a Dynkin subdiagram, with nodes in Bourbaki order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramComponent {
    pub label: String,
    /// Zero-based nodes of the ambient diagram.
    pub nodes: Vec<usize>,
}

fn adjacent(rs: &RootSystem, i: usize, j: usize) -> bool {
    i != j && rs.cartan[i][j] != 0
}

/// Connected components of `s` with their types.
pub fn classify_subdiagram(rs: &RootSystem, s: &[usize]) -> Result<Vec<DiagramComponent>> {
    let mut left: BTreeSet<usize> = s.iter().copied().collect();
    let mut out = Vec::new();
    while let Some(&start) = left.iter().next() {
        let mut comp = vec![start];
        left.remove(&start);
        let mut k = 0;
        while k < comp.len() {
            let v = comp[k];
            let nb: Vec<usize> = left.iter().copied().filter(|&w| adjacent(rs, v, w)).collect();
            for w in nb {
                left.remove(&w);
                comp.push(w);
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(classify_connected(rs, &comp)?);
    }
    Ok(out)
}

fn classify_connected(rs: &RootSystem, comp: &[usize]) -> Result<DiagramComponent> {
    let n = comp.len();
    let nbrs = |v: usize| -> Vec<usize> { comp.iter().copied().filter(|&w| adjacent(rs, v, w)).collect() };
    let bond = |a: usize, b: usize| rs.cartan[a][b] * rs.cartan[b][a];
    let ends: Vec<usize> = comp.iter().copied().filter(|&v| nbrs(v).len() <= 1).collect();
    let walk = |from: usize, avoid: Option<usize>| -> Vec<usize> {
        let mut path = vec![from];
        let mut prev = avoid;
        let mut cur = from;
        loop {
            let next: Vec<usize> = nbrs(cur).into_iter().filter(|&w| Some(w) != prev && !path.contains(&w)).collect();
            if next.len() != 1 {
                return path;
            }
            prev = Some(cur);
            cur = next[0];
            path.push(cur);
        }
    };
    let mk = |label: String, nodes: Vec<usize>| DiagramComponent { label, nodes };
    if n == 1 {
        return Ok(mk("A1".into(), comp.to_vec()));
    }
    let branch: Vec<usize> = comp.iter().copied().filter(|&v| nbrs(v).len() == 3).collect();
    if branch.is_empty() {
        let mut path = walk(ends[0], None);
        let bonds: Vec<i64> = path.windows(2).map(|w| bond(w[0], w[1])).collect();
        if bonds.iter().all(|&b| b == 1) {
            if path.first() > path.last() {
                path.reverse();
            }
            return Ok(mk(format!("A{n}"), path));
        }
        if n == 2 && bonds[0] == 3 {
            if rs.d[path[0]] > rs.d[path[1]] {
                path.reverse();
            }
            return Ok(mk("G2".into(), path));
        }
        if n == 4 && bonds == [1, 2, 1] {
            if rs.d[path[0]] < rs.d[path[3]] {
                path.reverse();
            }
            return Ok(mk("F4".into(), path));
        }
        // B_n / C_n: the double bond sits at the end of the Bourbaki chain.
        if bonds[0] == 2 {
            path.reverse();
        }
        let last = path[n - 1];
        let prev = path[n - 2];
        let label = if rs.d[last] < rs.d[prev] { format!("B{n}") } else { format!("C{n}") };
        return Ok(mk(label, path));
    }
    let b = branch[0];
    let mut arms: Vec<Vec<usize>> = nbrs(b).into_iter().map(|w| walk(w, Some(b))).collect();
    arms.sort_by_key(|a| (a.len(), a.clone()));
    let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
    match lens.as_slice() {
        [1, 1, k] => {
            // D_n: long arm from its far end, then the branch node and the two short arms.
            let mut nodes: Vec<usize> = arms[2].iter().rev().copied().collect();
            nodes.push(b);
            nodes.push(arms[0][0]);
            nodes.push(arms[1][0]);
            Ok(mk(format!("D{}", k + 3), nodes))
        }
        [1, 2, k @ 2..=4] => {
            // E_n: long chain 1 .. n-1 through the branch node (third node), node n on the short arm.
            let mut nodes: Vec<usize> = arms[1].iter().rev().copied().collect();
            nodes.push(b);
            nodes.extend(arms[2].iter().copied());
            nodes.push(arms[0][0]);
            Ok(mk(format!("E{}", k + 4), nodes))
        }
        _ => Err(Error::RootSystem(format!("unrecognized Dynkin subdiagram {comp:?}"))),
    }
}

// ---- degree-three table ----

/// A row of the hand-computed table: components listed as ambient node
/// numbers (one-based) in the order of the component's own numbering.
pub struct TableRow {
    pub algebra: &'static str,
    pub simple: usize,
    pub levi: &'static str,
    pub components: &'static [&'static [usize]],
    pub lambda1: &'static [i64],
    pub lambda3: &'static [i64],
    pub lambda1_labels: &'static [&'static [i64]],
    pub lambda3_labels: &'static [&'static [i64]],
}

pub const TABLE: &[TableRow] = &[
    TableRow { algebra: "G2", simple: 1, levi: "A1", components: &[&[2]], lambda1: &[1, 1], lambda3: &[3, 2], lambda1_labels: &[&[1]], lambda3_labels: &[&[1]] },
    TableRow {
        algebra: "F4",
        simple: 2,
        levi: "A1+A2",
        components: &[&[1], &[3, 4]],
        lambda1: &[1, 1, 2, 2],
        lambda3: &[2, 3, 4, 2],
        lambda1_labels: &[&[1], &[0, 2]],
        lambda3_labels: &[&[1], &[0, 0]],
    },
    TableRow {
        algebra: "F4",
        simple: 3,
        levi: "A2+A1",
        components: &[&[1, 2], &[4]],
        lambda1: &[1, 1, 1, 1],
        lambda3: &[1, 2, 3, 2],
        lambda1_labels: &[&[1, 0], &[1]],
        lambda3_labels: &[&[0, 0], &[1]],
    },
    TableRow {
        algebra: "E6",
        simple: 3,
        levi: "A2+A2+A1",
        components: &[&[1, 2], &[4, 5], &[6]],
        lambda1: &[1, 1, 1, 1, 1, 1],
        lambda3: &[1, 2, 3, 2, 1, 2],
        lambda1_labels: &[&[1, 0], &[0, 1], &[1]],
        lambda3_labels: &[&[0, 0], &[0, 0], &[1]],
    },
    TableRow {
        algebra: "E7",
        simple: 2,
        levi: "A1+A5",
        components: &[&[1], &[7, 3, 4, 5, 6]],
        lambda1: &[1, 1, 2, 2, 2, 1, 1],
        lambda3: &[2, 3, 4, 3, 2, 1, 2],
        lambda1_labels: &[&[1], &[0, 0, 0, 1, 0]],
        lambda3_labels: &[&[1], &[0, 0, 0, 0, 0]],
    },
    TableRow {
        algebra: "E7",
        simple: 3,
        levi: "A2+A3+A1",
        components: &[&[1, 2], &[4, 5, 6], &[7]],
        lambda1: &[1, 1, 1, 1, 1, 1, 1],
        lambda3: &[1, 2, 3, 3, 2, 1, 2],
        lambda1_labels: &[&[1, 0], &[0, 0, 1], &[1]],
        lambda3_labels: &[&[0, 0], &[1, 0, 0], &[1]],
    },
    TableRow {
        algebra: "E7",
        simple: 4,
        levi: "A4+A2",
        components: &[&[1, 2, 3, 7], &[5, 6]],
        lambda1: &[1, 2, 2, 1, 1, 1, 1],
        lambda3: &[2, 3, 4, 3, 2, 1, 2],
        lambda1_labels: &[&[0, 1, 0, 0], &[0, 1]],
        lambda3_labels: &[&[1, 0, 0, 0], &[0, 0]],
    },
    TableRow {
        algebra: "E8",
        simple: 2,
        levi: "A1+A6",
        components: &[&[1], &[8, 3, 4, 5, 6, 7]],
        lambda1: &[1, 1, 2, 2, 2, 2, 1, 1],
        lambda3: &[2, 3, 5, 4, 3, 2, 1, 3],
        lambda1_labels: &[&[1], &[0, 0, 0, 0, 1, 0]],
        lambda3_labels: &[&[1], &[1, 0, 0, 0, 0, 0]],
    },
    TableRow {
        algebra: "E8",
        simple: 3,
        levi: "A2+A4+A1",
        components: &[&[1, 2], &[4, 5, 6, 7], &[8]],
        lambda1: &[1, 1, 1, 1, 1, 1, 1, 1],
        lambda3: &[1, 2, 3, 3, 3, 2, 1, 2],
        lambda1_labels: &[&[1, 0], &[0, 0, 0, 1], &[1]],
        lambda3_labels: &[&[0, 0], &[0, 1, 0, 0], &[1]],
    },
    TableRow {
        algebra: "E8",
        simple: 4,
        levi: "A4+A3",
        components: &[&[1, 2, 3, 8], &[5, 6, 7]],
        lambda1: &[1, 2, 2, 1, 1, 1, 1, 1],
        lambda3: &[2, 3, 4, 3, 3, 2, 1, 2],
        lambda1_labels: &[&[0, 1, 0, 0], &[0, 0, 1]],
        lambda3_labels: &[&[1, 0, 0, 0], &[1, 0, 0]],
    },
    TableRow {
        algebra: "E8",
        simple: 6,
        levi: "E6+A1",
        components: &[&[1, 2, 3, 4, 5, 8], &[7]],
        lambda1: &[2, 3, 4, 3, 2, 1, 1, 2],
        lambda3: &[2, 4, 6, 5, 4, 3, 2, 3],
        lambda1_labels: &[&[1, 0, 0, 0, 0, 0], &[1]],
        lambda3_labels: &[&[0, 0, 0, 0, 0, 0], &[1]],
    },
    TableRow {
        algebra: "E8",
        simple: 8,
        levi: "A7",
        components: &[&[1, 2, 3, 4, 5, 6, 7]],
        lambda1: &[1, 2, 3, 3, 3, 2, 1, 1],
        lambda3: &[2, 4, 6, 5, 4, 3, 2, 3],
        lambda1_labels: &[&[0, 0, 0, 0, 1, 0, 0]],
        lambda3_labels: &[&[0, 0, 0, 0, 0, 0, 1]],
    },
];

/// Cases `(algebra, simple root)` with coefficient at least 3 in the highest root.
pub fn degree_three_cases() -> Vec<(&'static str, usize)> {
    let mut out = Vec::new();
    for g in ["G2", "F4", "E6", "E7", "E8"] {
        let rs = RootSystem::build(g).expect("valid type");
        let theta = &rs.highest_roots()[0];
        for (i, &c) in theta.iter().enumerate() {
            if c >= 3 {
                out.push((g, i + 1));
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct AppendixRow {
    pub algebra: String,
    /// One-based.
    pub simple: usize,
    pub levi: String,
    pub components: Vec<Vec<usize>>,
    pub lambda1: Root,
    pub lambda3: Root,
    pub lambda1_labels: Vec<Weight>,
    pub lambda3_labels: Vec<Weight>,
    pub dim1: u64,
    pub dim3: u64,
    pub multiplicity: u64,
    /// Whether the row is present in the hand-computed table.
    pub tabulated: bool,
    /// Disagreements with the table, empty when everything matches.
    pub mismatches: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum AppendixCase {
    Row(Box<AppendixRow>),
    NotApplicable { algebra: String, simple: usize, max_degree: i64 },
}

/// Highest weight (root coordinates) of the degree-`n` graded piece.
pub fn graded_highest(rs: &RootSystem, s: usize, n: i64) -> Option<Root> {
    let levi: Vec<usize> = (0..rs.rank).filter(|&i| i != s).collect();
    let tops: Vec<Root> = rs
        .positive
        .iter()
        .filter(|r| r[s] == n && levi.iter().all(|&i| !rs.is_root(&lie::add(r, &rs.simple(i)))))
        .cloned()
        .collect();
    (tops.len() == 1).then(|| tops[0].clone())
}

/// Recomputes one case from the grading data and compares with the table.
pub fn appendix_case(algebra: &str, simple: usize) -> Result<AppendixCase> {
    let rs = RootSystem::build(algebra)?;
    if simple == 0 || simple > rs.rank {
        return Err(Error::Invalid(format!("simple root {simple} out of range for {algebra}")));
    }
    let s = simple - 1;
    let max_degree = rs.highest_roots()[0][s];
    if max_degree < 3 {
        return Ok(AppendixCase::NotApplicable { algebra: algebra.into(), simple, max_degree });
    }
    let levi: Vec<usize> = (0..rs.rank).filter(|&i| i != s).collect();
    let row = TABLE.iter().find(|r| r.algebra == algebra && r.simple == simple);
    let lambda1 = graded_highest(&rs, s, 1).ok_or_else(|| Error::Invariant("degree-one piece is not simple".into()))?;
    let lambda3 = graded_highest(&rs, s, 3).ok_or_else(|| Error::Invariant("degree-three piece is not simple".into()))?;
    let classified = classify_subdiagram(&rs, &levi)?;
    let mut mismatches = Vec::new();
    let components: Vec<Vec<usize>> = match row {
        Some(r) => {
            let listed: Vec<Vec<usize>> = r.components.iter().map(|c| c.iter().map(|i| i - 1).collect()).collect();
            let mut want: Vec<String> = r.levi.split('+').map(String::from).collect();
            let mut have: Vec<String> = classified.iter().map(|c| c.label.clone()).collect();
            want.sort();
            have.sort();
            if want != have {
                mismatches.push(format!("Levi type {} vs computed {}", r.levi, have.join("+")));
            }
            for c in &listed {
                let found = classified.iter().find(|k| {
                    let mut a = k.nodes.clone();
                    let mut b = c.clone();
                    a.sort_unstable();
                    b.sort_unstable();
                    a == b
                });
                match found {
                    Some(k) if k.label.starts_with('A') => {
                        let mut rev = k.nodes.clone();
                        rev.reverse();
                        if *c != k.nodes && *c != rev {
                            mismatches.push(format!("component {:?} is not a path in that order", lie::one_based(c)));
                        }
                    }
                    Some(k) => {
                        if *c != k.nodes {
                            mismatches.push(format!("component {:?} differs from standard order {:?}", lie::one_based(c), lie::one_based(&k.nodes)));
                        }
                    }
                    None => mismatches.push(format!("{:?} is not a component", lie::one_based(c))),
                }
            }
            if r.lambda1 != lambda1.as_slice() {
                mismatches.push(format!("lambda1 {:?} vs computed {:?}", r.lambda1, lambda1));
            }
            if r.lambda3 != lambda3.as_slice() {
                mismatches.push(format!("lambda3 {:?} vs computed {:?}", r.lambda3, lambda3));
            }
            listed
        }
        None => classified.iter().map(|c| c.nodes.clone()).collect(),
    };
    let labels = |lam: &Root| -> Vec<Weight> {
        components
            .iter()
            .map(|c| c.iter().map(|&j| (0..rs.rank).map(|i| lam[i] * rs.cartan[j][i]).sum()).collect())
            .collect()
    };
    let l1 = labels(&lambda1);
    let l3 = labels(&lambda3);
    if let Some(r) = row {
        let t1: Vec<Weight> = r.lambda1_labels.iter().map(|x| x.to_vec()).collect();
        let t3: Vec<Weight> = r.lambda3_labels.iter().map(|x| x.to_vec()).collect();
        if t1 != l1 {
            mismatches.push(format!("lambda1 labels {t1:?} vs computed {l1:?}"));
        }
        if t3 != l3 {
            mismatches.push(format!("lambda3 labels {t3:?} vs computed {l3:?}"));
        }
    }
    // Weights of g_S are indexed by the Levi nodes in increasing order.
    let sub = rs.restrict(&levi);
    let lattice = WeightLattice::new(&sub);
    let restrict = |lam: &Root| -> Weight { levi.iter().map(|&j| (0..rs.rank).map(|i| lam[i] * rs.cartan[j][i]).sum()).collect() };
    let w1 = restrict(&lambda1);
    let w3 = restrict(&lambda3);
    let dim1 = lattice.dimension(&w1)?;
    let dim3 = lattice.dimension(&w3)?;
    let multiplicity = lattice.cube_multiplicity(&w1, &w3)?;
    let levi_label = match row {
        Some(r) => r.levi.to_string(),
        None => classified.iter().map(|c| c.label.clone()).collect::<Vec<_>>().join("+"),
    };
    Ok(AppendixCase::Row(Box::new(AppendixRow {
        algebra: algebra.into(),
        simple,
        levi: levi_label,
        components: components.iter().map(|c| lie::one_based(c)).collect(),
        lambda1,
        lambda3,
        lambda1_labels: l1,
        lambda3_labels: l3,
        dim1,
        dim3,
        multiplicity,
        tabulated: row.is_some(),
        mismatches,
    })))
}

/// All cases with a simple root of coefficient at least 3.
/// Rows are computed on the ambient rayon pool.
pub fn appendix_table() -> Result<Vec<AppendixRow>> {
    degree_three_cases()
        .into_par_iter()
        .map(|(g, s)| match appendix_case(g, s)? {
            AppendixCase::Row(r) => Ok(*r),
            AppendixCase::NotApplicable { .. } => unreachable!("coefficient at least 3"),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(t: &str) -> RootSystem {
        RootSystem::build(t).unwrap()
    }

    #[test]
    fn a1_modules() {
        let r = rs("A1");
        let l = WeightLattice::new(&r);
        let m = l.module(&[3]).unwrap();
        assert_eq!(m.multiplicities.keys().cloned().collect::<Vec<_>>(), vec![vec![-3], vec![-1], vec![1], vec![3]]);
        assert!(m.multiplicities.values().all(|&x| x == 1));
        assert_eq!(l.tensor_decompose(&[1], &l.module(&[1]).unwrap()).unwrap(), BTreeMap::from([(vec![0], 1), (vec![2], 1)]));
        assert_eq!(l.cube_multiplicity(&[1], &[1]).unwrap(), 2);
        assert!(l.module(&[-1]).is_err());
    }

    #[test]
    fn a2_adjoint() {
        let r = rs("A2");
        let l = WeightLattice::new(&r);
        let m = l.module(&[1, 1]).unwrap();
        assert_eq!(m.dim, 8);
        assert_eq!(m.multiplicities[&vec![0, 0]], 2);
        let d = l.tensor_decompose(&[1, 0], &l.module(&[0, 1]).unwrap()).unwrap();
        assert_eq!(d, BTreeMap::from([(vec![0, 0], 1), (vec![1, 1], 1)]));
    }

    #[test]
    fn cross_check_dimensions() {
        let e6 = rs("E6");
        assert_eq!(WeightLattice::new(&e6).dimension(&[1, 0, 0, 0, 0, 0]).unwrap(), 27);
        let a7 = rs("A7");
        let l = WeightLattice::new(&a7);
        assert_eq!(l.dimension(&[0, 0, 0, 0, 1, 0, 0]).unwrap(), 56);
        assert_eq!(l.module(&[0, 0, 0, 0, 1, 0, 0]).unwrap().dim, 56);
    }

    #[test]
    fn subdiagram_types() {
        let e8 = rs("E8");
        let c = classify_subdiagram(&e8, &[0, 1, 2, 3, 5, 6, 7]).unwrap();
        let labels: Vec<&str> = c.iter().map(|x| x.label.as_str()).collect();
        assert_eq!(labels, vec!["D5", "A2"]);
        let f4 = rs("F4");
        assert_eq!(classify_subdiagram(&f4, &[0, 1, 2, 3]).unwrap()[0].label, "F4");
        assert_eq!(classify_subdiagram(&rs("B3"), &[0, 1, 2]).unwrap()[0].label, "B3");
        assert_eq!(classify_subdiagram(&rs("C3"), &[0, 1, 2]).unwrap()[0].label, "C3");
        assert_eq!(classify_subdiagram(&rs("D4"), &[0, 1, 2, 3]).unwrap()[0].label, "D4");
        assert_eq!(classify_subdiagram(&rs("E7"), &(0..7).collect::<Vec<_>>()).unwrap()[0].label, "E7");
    }

    #[test]
    fn cominuscule_case_is_not_applicable() {
        assert!(matches!(appendix_case("E6", 1).unwrap(), AppendixCase::NotApplicable { .. }));
    }
}
