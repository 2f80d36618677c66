//! Sparse linear algebra over Q(q).
//!
//! Vectors are ordered maps from basis keys to coefficients. [`Span`] keeps an
//! echelon basis whose pivot in each row is the row's greatest key, tracks how
//! each row is built from the inserted vectors, and gives canonical remainders.

use std::collections::BTreeMap;

use crate::scalar::QScalar;

pub type Vector<K> = BTreeMap<K, QScalar>;

/// `y += a * x`.
pub fn axpy<K: Ord + Clone>(y: &mut Vector<K>, a: &QScalar, x: &Vector<K>) {
    if a.is_zero() {
        return;
    }
    for (k, c) in x {
        let term = a * c;
        match y.get_mut(k) {
            Some(v) => {
                *v += &term;
                if v.is_zero() {
                    y.remove(k);
                }
            }
            None => {
                y.insert(k.clone(), term);
            }
        }
    }
}

pub fn scaled<K: Ord + Clone>(x: &Vector<K>, a: &QScalar) -> Vector<K> {
    if a.is_zero() {
        return Vector::new();
    }
    x.iter().map(|(k, c)| (k.clone(), a * c)).collect()
}

#[derive(Clone, Debug)]
struct Row<K> {
    vec: Vector<K>,
    /// `vec = sum comb[j] * basis[j]`.
    comb: Vec<QScalar>,
}

/// Incrementally built subspace with canonical reduction.
#[derive(Clone, Debug)]
pub struct Span<K: Ord + Clone> {
    rows: BTreeMap<K, Row<K>>,
    basis: Vec<Vector<K>>,
}

impl<K: Ord + Clone> Default for Span<K> {
    fn default() -> Self {
        Span { rows: BTreeMap::new(), basis: Vec::new() }
    }
}

/// Outcome of reducing a vector against a [`Span`]: `v = remainder + sum coords[j] basis[j]`.
#[derive(Clone, Debug)]
pub struct Reduction<K> {
    pub remainder: Vector<K>,
    pub coords: Vec<QScalar>,
}

impl<K: Ord + Clone> Span<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The independent vectors inserted so far, in insertion order.
    pub fn basis(&self) -> &[Vector<K>] {
        &self.basis
    }

    pub fn is_pivot(&self, k: &K) -> bool {
        self.rows.contains_key(k)
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// Echelon rows, keyed by pivot.
    pub fn rows(&self) -> impl Iterator<Item = (&K, &Vector<K>)> {
        self.rows.iter().map(|(k, r)| (k, &r.vec))
    }

    /// Canonical remainder: contains no pivot keys. Linear in `v`.
    pub fn reduce(&self, v: &Vector<K>) -> Reduction<K> {
        let mut rem = v.clone();
        let mut coords = vec![QScalar::zero(); self.basis.len()];
        for (p, row) in self.rows.iter().rev() {
            let Some(c) = rem.get(p).cloned() else { continue };
            axpy(&mut rem, &-&c, &row.vec);
            for (t, r) in coords.iter_mut().zip(&row.comb) {
                if !r.is_zero() {
                    *t += &(&c * r);
                }
            }
        }
        Reduction { remainder: rem, coords }
    }

    pub fn contains(&self, v: &Vector<K>) -> bool {
        self.reduce(v).remainder.is_empty()
    }

    /// Coordinates of `v` in the inserted basis, if `v` lies in the span.
    pub fn coords(&self, v: &Vector<K>) -> Option<Vec<QScalar>> {
        let r = self.reduce(v);
        r.remainder.is_empty().then_some(r.coords)
    }

    /// Inserts `v`; returns its basis index if it was independent.
    pub fn insert(&mut self, v: &Vector<K>) -> Option<usize> {
        let red = self.reduce(v);
        self.insert_reduced(v, red)
    }

    fn insert_reduced(&mut self, v: &Vector<K>, red: Reduction<K>) -> Option<usize> {
        let (pivot, lead) = red.remainder.iter().next_back().map(|(k, c)| (k.clone(), c.clone()))?;
        let m = self.basis.len();
        self.basis.push(v.clone());
        let inv = lead.inv().expect("nonzero pivot");
        let mut comb: Vec<QScalar> = red.coords.iter().map(|t| -&(t * &inv)).collect();
        comb.push(inv.clone());
        for row in self.rows.values_mut() {
            row.comb.push(QScalar::zero());
        }
        let vec = scaled(&red.remainder, &inv);
        self.rows.insert(pivot, Row { vec, comb });
        Some(m)
    }

    /// Inserts `v`; if dependent, returns the coordinates expressing it.
    pub fn insert_or_coords(&mut self, v: &Vector<K>) -> std::result::Result<usize, Vec<QScalar>> {
        let red = self.reduce(v);
        if red.remainder.is_empty() {
            Err(red.coords)
        } else {
            Ok(self.insert_reduced(v, red).expect("nonzero remainder"))
        }
    }
}

/// Basis of `{c : sum c_j cols[j] = 0}`.
pub fn nullspace<K: Ord + Clone>(cols: &[Vector<K>]) -> Vec<Vec<QScalar>> {
    let mut span = Span::new();
    let mut owner = Vec::new();
    let mut out = Vec::new();
    for (j, col) in cols.iter().enumerate() {
        match span.insert_or_coords(col) {
            Ok(_) => owner.push(j),
            Err(coords) => {
                let mut v = vec![QScalar::zero(); cols.len()];
                v[j] = QScalar::one();
                for (b, c) in coords.iter().enumerate() {
                    v[owner[b]] = -c;
                }
                out.push(v);
            }
        }
    }
    out
}

/// Solves `sum c_j cols[j] = rhs`; `None` if inconsistent. Errors are left to
/// the caller when the columns are dependent (the solution is then not unique).
pub fn solve<K: Ord + Clone>(cols: &[Vector<K>], rhs: &Vector<K>) -> Option<(Vec<QScalar>, bool)> {
    let mut span = Span::new();
    let mut owner = Vec::new();
    let mut unique = true;
    for (j, col) in cols.iter().enumerate() {
        if span.insert(col).is_some() {
            owner.push(j);
        } else {
            unique = false;
        }
    }
    let coords = span.coords(rhs)?;
    let mut sol = vec![QScalar::zero(); cols.len()];
    for (b, c) in coords.into_iter().enumerate() {
        sol[owner[b]] = c;
    }
    Some((sol, unique))
}

/// Rank of a family of vectors.
pub fn rank<K: Ord + Clone>(vs: &[Vector<K>]) -> usize {
    let mut span = Span::new();
    vs.iter().filter(|v| span.insert(v).is_some()).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(u32, i64)]) -> Vector<u32> {
        entries.iter().map(|&(k, c)| (k, QScalar::from_int(c))).filter(|(_, c)| !c.is_zero()).collect()
    }

    #[test]
    fn span_membership_and_coords() {
        let mut s = Span::new();
        let a = v(&[(0, 1), (1, 2)]);
        let b = v(&[(1, 1), (2, 1)]);
        assert_eq!(s.insert(&a), Some(0));
        assert_eq!(s.insert(&b), Some(1));
        let mut c = scaled(&a, &QScalar::from_int(3));
        axpy(&mut c, &QScalar::from_int(-2), &b);
        assert_eq!(s.coords(&c).unwrap(), vec![QScalar::from_int(3), QScalar::from_int(-2)]);
        assert!(s.insert(&c).is_none());
        assert!(!s.contains(&v(&[(0, 1)])));
    }

    #[test]
    fn nullspace_of_dependent_columns() {
        let cols = vec![v(&[(0, 1)]), v(&[(1, 1)]), v(&[(0, 2), (1, -1)])];
        let ns = nullspace(&cols);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![QScalar::from_int(-2), QScalar::from_int(1), QScalar::from_int(1)]);
    }

    #[test]
    fn solve_unique() {
        let cols = vec![v(&[(0, 1), (1, 1)]), v(&[(0, 1), (1, -1)])];
        let (sol, unique) = solve(&cols, &v(&[(0, 2)])).unwrap();
        assert!(unique);
        assert_eq!(sol, vec![QScalar::one(), QScalar::one()]);
        assert!(solve(&cols[..1], &v(&[(0, 1)])).is_none());
    }

    #[test]
    fn remainder_is_canonical() {
        let mut s = Span::new();
        s.insert(&v(&[(0, 1), (2, 1)]));
        s.insert(&v(&[(1, 1), (2, 1)]));
        let a = v(&[(2, 1)]);
        let b = v(&[(0, -1), (1, -1), (2, 3)]);
        let mut sum = a.clone();
        axpy(&mut sum, &QScalar::one(), &b);
        let mut lhs = s.reduce(&a).remainder;
        axpy(&mut lhs, &QScalar::one(), &s.reduce(&b).remainder);
        assert_eq!(lhs, s.reduce(&sum).remainder);
        assert!(lhs.keys().all(|k| !s.is_pivot(k)));
    }
}
