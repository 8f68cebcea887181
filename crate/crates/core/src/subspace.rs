//! Subspaces of `F_p^n` in reduced row echelon form and their enumeration.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::field::{FpMatrix, PrimeField};

/// A subspace of `F_p^n`, stored by its reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Subspace {
        Subspace {
            ambient: n,
            basis: FpMatrix::zeros(0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Subspace {
        Subspace {
            ambient: n,
            basis: FpMatrix::identity(n),
            pivots: (0..n).collect(),
        }
    }

    pub fn span(f: &PrimeField, n: usize, rows: &[Vec<u32>]) -> Subspace {
        let mut m = FpMatrix::from_row_vecs(n, rows);
        let pivots = m.rref(f);
        Subspace {
            ambient: n,
            basis: m,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<u32>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Representative of `v` modulo the subspace with zeros at the pivot columns.
    pub fn reduce(&self, f: &PrimeField, v: &[u32]) -> Vec<u32> {
        let mut out = v.to_vec();
        for (r, &c) in self.pivots.iter().enumerate() {
            let factor = out[c];
            if factor == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.basis.row(r)) {
                *o = f.sub(*o, f.mul(factor, b));
            }
        }
        out
    }

    pub fn contains(&self, f: &PrimeField, v: &[u32]) -> bool {
        self.reduce(f, v).iter().all(|&x| x == 0)
    }

    /// Coordinates of a member vector in the echelon basis.
    pub fn coords(&self, v: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&c| v[c]).collect()
    }

    /// Non-pivot columns; the standard vectors there span a complement.
    pub fn complement_columns(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    pub fn is_subspace_of(&self, f: &PrimeField, other: &Subspace) -> bool {
        (0..self.dim()).all(|r| other.contains(f, self.basis.row(r)))
    }

    /// Image under a linear map `F_p^n -> F_p^m` given as an `m x n` matrix.
    pub fn image(&self, f: &PrimeField, map: &FpMatrix) -> Subspace {
        let rows: Vec<Vec<u32>> = (0..self.dim()).map(|r| map.apply(f, self.basis.row(r))).collect();
        Subspace::span(f, map.rows(), &rows)
    }

    pub fn sum(&self, f: &PrimeField, other: &Subspace) -> Subspace {
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        Subspace::span(f, self.ambient, &rows)
    }
}

/// Number of subspaces of `F_p^n` of every dimension, saturating.
pub fn subspace_count(p: u32, n: usize) -> u128 {
    (0..=n).fold(0u128, |acc, k| acc.saturating_add(gaussian_binomial(p, n, k)))
}

/// Number of `k`-dimensional subspaces of `F_p^n`, saturating.
pub fn gaussian_binomial(p: u32, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    // sum over pivot sets of p^(free entries) avoids division
    let mut total = 0u128;
    for pivots in combinations(n, k) {
        let free: usize = pivots
            .iter()
            .enumerate()
            .map(|(i, &c)| (n - c - 1) - (k - i - 1))
            .sum();
        total = total.saturating_add((p as u128).saturating_pow(free as u32));
    }
    total
}

/// Base-`p` counter step, last digit least significant; false on wrap-around.
pub(crate) fn increment(digits: &mut [u32], p: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            if n - c < k - cur.len() {
                break;
            }
            cur.push(c);
            rec(c + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All subspaces of `F_p^n`: by dimension, then pivot columns, then free
/// entries read as a base-`p` number with the first position most significant.
pub fn all_subspaces(f: &PrimeField, n: usize) -> Vec<Subspace> {
    let p = f.p();
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in combinations(n, k) {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &c)| {
                    let pivots = &pivots;
                    (c + 1..n).filter(move |j| !pivots.contains(j)).map(move |j| (r, j))
                })
                .collect();
            let mut digits = vec![0u32; free.len()];
            loop {
                let mut m = FpMatrix::zeros(k, n);
                for (r, &c) in pivots.iter().enumerate() {
                    m.set(r, c, 1);
                }
                for (&(r, j), &d) in free.iter().zip(&digits) {
                    m.set(r, j, d);
                }
                out.push(Subspace {
                    ambient: n,
                    basis: m,
                    pivots: pivots.clone(),
                });
                if !increment(&mut digits, p) {
                    break;
                }
            }
        }
    }
    out
}

/// Memoized subspace enumeration for one field.
#[derive(Debug)]
pub struct SubspaceCatalog {
    field: PrimeField,
    all: RefCell<HashMap<usize, Rc<Vec<Subspace>>>>,
    containing: RefCell<HashMap<Subspace, Rc<Vec<Subspace>>>>,
}

impl SubspaceCatalog {
    pub fn new(field: PrimeField) -> SubspaceCatalog {
        SubspaceCatalog {
            field,
            all: RefCell::new(HashMap::new()),
            containing: RefCell::new(HashMap::new()),
        }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn all(&self, n: usize) -> Rc<Vec<Subspace>> {
        self.all
            .borrow_mut()
            .entry(n)
            .or_insert_with(|| Rc::new(all_subspaces(&self.field, n)))
            .clone()
    }

    /// Subspaces containing `r`, in the order of the quotient's enumeration.
    pub fn containing(&self, r: &Subspace) -> Rc<Vec<Subspace>> {
        if r.dim() == 0 {
            return self.all(r.ambient());
        }
        if let Some(hit) = self.containing.borrow().get(r) {
            return hit.clone();
        }
        let f = &self.field;
        let n = r.ambient();
        let cols = r.complement_columns();
        let base = r.basis_rows();
        let lifted: Vec<Subspace> = self
            .all(cols.len())
            .iter()
            .map(|s| {
                let mut rows = base.clone();
                for row in s.basis_rows() {
                    let mut v = vec![0; n];
                    for (&c, x) in cols.iter().zip(row) {
                        v[c] = x;
                    }
                    rows.push(v);
                }
                Subspace::span(f, n, &rows)
            })
            .collect();
        let lifted = Rc::new(lifted);
        self.containing.borrow_mut().insert(r.clone(), lifted.clone());
        lifted
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn counts_match_gaussian_binomials() {
        for p in [2u64, 3, 5] {
            let f = PrimeField::new(p).unwrap();
            for n in 0..=3 {
                let all = all_subspaces(&f, n);
                assert_eq!(all.len() as u128, subspace_count(p as u32, n));
                let distinct: BTreeSet<_> = all.iter().cloned().collect();
                assert_eq!(distinct.len(), all.len());
            }
        }
        assert_eq!(gaussian_binomial(2, 2, 1), 3);
        assert_eq!(gaussian_binomial(3, 4, 2), 130);
        assert_eq!(subspace_count(1009, 2), 1012);
    }

    #[test]
    fn brute_force_subspaces_of_f2_cubed() {
        // every subspace is the span of some subset of the 8 vectors
        let f = PrimeField::new(2).unwrap();
        let vectors: Vec<Vec<u32>> = (0..8u32).map(|i| vec![i >> 2 & 1, i >> 1 & 1, i & 1]).collect();
        let mut spans = BTreeSet::new();
        for mask in 0..256u32 {
            let rows: Vec<Vec<u32>> = (0..8).filter(|i| mask >> i & 1 == 1).map(|i| vectors[i].clone()).collect();
            spans.insert(Subspace::span(&f, 3, &rows));
        }
        let all: BTreeSet<_> = all_subspaces(&f, 3).into_iter().collect();
        assert_eq!(spans, all);
    }

    #[test]
    fn containing_enumerates_the_interval() {
        let f = PrimeField::new(3).unwrap();
        let cat = SubspaceCatalog::new(f);
        let r = Subspace::span(&f, 3, &[vec![1, 2, 0]]);
        let got: BTreeSet<_> = cat.containing(&r).iter().cloned().collect();
        let expected: BTreeSet<_> = all_subspaces(&f, 3)
            .into_iter()
            .filter(|s| r.is_subspace_of(&f, s))
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn reduce_and_coords() {
        let f = PrimeField::new(5).unwrap();
        let s = Subspace::span(&f, 3, &[vec![2, 4, 1]]);
        assert_eq!(s.pivots(), &[0]);
        let v = vec![1, 2, 3];
        assert!(s.contains(&f, &v));
        assert_eq!(s.coords(&v), vec![1]);
        assert!(!s.contains(&f, &[0, 1, 0]));
    }
}
