//! Generic representations: generic extension dimensions, the embedding
//! relation `b1 <-> b`, the effective cone and stable decompositions.
//!
//! `ext(a, b)` is computed by the recursion
//!
//! ```text
//! ext(a, b) = max { -<a', b> : a' embeds in a }     (a' = 0 contributes 0)
//! a' embeds in a  <=>  a' <= a and ext(a', a - a') = 0
//! ```
//!
//! Every subcall of the embedding test has total size `|a|`, strictly smaller
//! than `|a| + |b|` when `b != 0`, so the mutual recursion terminates.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::linalg::IntVec;
use crate::quiver::{DimVector, Quiver, Weight};

/// Memoized generic-representation calculus for one quiver.
///
/// The memo table is per instance (not `Sync`); create one per thread.
#[derive(Debug)]
pub struct Schofield<'q> {
    quiver: &'q Quiver,
    memo: RefCell<HashMap<(DimVector, DimVector), u64>>,
}

impl<'q> Schofield<'q> {
    pub fn new(quiver: &'q Quiver) -> Self {
        Schofield {
            quiver,
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn quiver(&self) -> &'q Quiver {
        self.quiver
    }

    /// Dimension of `Ext(A, B)` for general `A`, `B` of dimension vectors `a`, `b`.
    pub fn generic_ext(&self, a: &DimVector, b: &DimVector) -> Result<u64> {
        self.quiver.check_dim(a)?;
        self.quiver.check_dim(b)?;
        Ok(self.ext(a, b))
    }

    fn ext(&self, a: &DimVector, b: &DimVector) -> u64 {
        if a.is_zero() || b.is_zero() {
            return 0;
        }
        let key = (a.clone(), b.clone());
        if let Some(&v) = self.memo.borrow().get(&key) {
            return v;
        }
        let mut best = 0i64;
        for sub in a.subvectors() {
            if sub.is_zero() {
                continue;
            }
            let value = -self.quiver.euler_i64(&sub, b);
            if value > best && self.embeds_unchecked(&sub, a) {
                best = value;
            }
        }
        let best = best as u64;
        self.memo.borrow_mut().insert(key, best);
        best
    }

    /// The same quantity through generic quotients of `b`:
    /// `max { -<a, b''> : b - b'' embeds in b }`. Used as a cross-check.
    pub fn generic_ext_via_quotients(&self, a: &DimVector, b: &DimVector) -> Result<u64> {
        self.quiver.check_dim(a)?;
        self.quiver.check_dim(b)?;
        if a.is_zero() || b.is_zero() {
            return Ok(0);
        }
        let mut best = 0i64;
        for quot in b.subvectors() {
            let value = -self.quiver.euler_i64(a, &quot);
            if value > best && self.embeds_unchecked(&b.sub(&quot), b) {
                best = value;
            }
        }
        Ok(best as u64)
    }

    /// `b1 <-> b`: every `b`-dimensional representation has a `b1`-dimensional subrepresentation.
    pub fn embeds(&self, b1: &DimVector, b: &DimVector) -> Result<bool> {
        self.quiver.check_dim(b1)?;
        self.quiver.check_dim(b)?;
        Ok(self.embeds_unchecked(b1, b))
    }

    fn embeds_unchecked(&self, b1: &DimVector, b: &DimVector) -> bool {
        b1.le(b) && self.ext(b1, &b.sub(b1)) == 0
    }

    /// Proper nonzero `b1 <-> b`, lexicographic.
    pub fn embedded_subvectors(&self, beta: &DimVector) -> Result<Vec<DimVector>> {
        self.quiver.check_dim(beta)?;
        Ok(beta
            .subvectors()
            .into_iter()
            .filter(|s| !s.is_zero() && s != beta && self.embeds_unchecked(s, beta))
            .collect())
    }

    /// `C(Q, beta) = { s : s(beta) = 0, s(b1) <= 0 for all b1 <-> beta }`.
    pub fn effective_cone(&self, beta: &DimVector) -> Result<Cone> {
        if beta.is_zero() {
            return Err(Error::ZeroDimensionVector);
        }
        let ineqs: Vec<IntVec> = self
            .embedded_subvectors(beta)?
            .iter()
            .map(DimVector::to_int_vec)
            .collect();
        Cone::from_hrep(beta.len(), &[beta.to_int_vec()], &ineqs)
    }

    pub fn is_effective(&self, beta: &DimVector, sigma: &Weight) -> Result<bool> {
        self.quiver.check_weight(sigma)?;
        if !sigma.eval(beta).is_zero() {
            return Ok(false);
        }
        Ok(self
            .embedded_subvectors(beta)?
            .iter()
            .all(|b1| !sigma.eval(b1).is_positive()))
    }

    /// General representations of dimension `gamma` are `sigma`-stable.
    pub fn is_stable_dimvector(&self, gamma: &DimVector, sigma: &Weight) -> Result<bool> {
        self.quiver.check_weight(sigma)?;
        if gamma.is_zero() {
            return Err(Error::ZeroDimensionVector);
        }
        if !sigma.eval(gamma).is_zero() {
            return Ok(false);
        }
        Ok(self
            .embedded_subvectors(gamma)?
            .iter()
            .all(|g| sigma.eval(g).is_negative()))
    }

    /// Splits `beta` into `sigma`-stable dimension vectors by repeatedly
    /// peeling off the lexicographically least embedded `b'` with `sigma(b') = 0`.
    pub fn stable_decomposition(&self, beta: &DimVector, sigma: &Weight) -> Result<StableDecomposition> {
        if beta.is_zero() {
            return Err(Error::ZeroDimensionVector);
        }
        if !self.is_effective(beta, sigma)? {
            return Err(Error::NotEffective);
        }
        let mut parts = BTreeMap::new();
        self.split(beta, sigma, &mut parts)?;
        Ok(StableDecomposition {
            parts,
            weight: sigma.clone(),
        })
    }

    fn split(&self, beta: &DimVector, sigma: &Weight, parts: &mut BTreeMap<DimVector, u32>) -> Result<()> {
        if self.is_stable_dimvector(beta, sigma)? {
            *parts.entry(beta.clone()).or_insert(0) += 1;
            return Ok(());
        }
        let piece = self
            .embedded_subvectors(beta)?
            .into_iter()
            .find(|b1| sigma.eval(b1).is_zero())
            .ok_or(Error::NotEffective)?;
        self.split(&piece, sigma, parts)?;
        self.split(&beta.sub(&piece), sigma, parts)
    }
}

/// Multiset of `sigma`-stable dimension vectors summing to `beta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableDecomposition {
    pub parts: BTreeMap<DimVector, u32>,
    pub weight: Weight,
}

impl StableDecomposition {
    pub fn total(&self) -> DimVector {
        let n = self.weight.len();
        self.parts
            .iter()
            .fold(DimVector::zero(n), |acc, (g, m)| acc.add(&g.scale(*m)))
    }
}

impl fmt::Display for StableDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.parts.iter().map(|(g, m)| format!("{m}*{g}")).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ints;
    use proptest::prelude::*;

    fn dv(v: &[u32]) -> DimVector {
        DimVector::new(v.to_vec())
    }

    fn a2() -> Quiver {
        Quiver::new(["x", "y"], [("a", "x", "y")]).unwrap()
    }

    fn k2() -> Quiver {
        Quiver::new(["x", "y"], [("a", "x", "y"), ("b", "x", "y")]).unwrap()
    }

    fn s2() -> Quiver {
        Quiver::new(["x", "y", "z"], [("a", "x", "z"), ("b", "y", "z")]).unwrap()
    }

    fn square() -> Quiver {
        Quiver::new(
            ["x", "y", "z", "w"],
            [("a", "x", "z"), ("b", "x", "w"), ("c", "y", "z"), ("d", "y", "w")],
        )
        .unwrap()
    }

    #[test]
    fn generic_ext_examples() {
        let q = a2();
        let s = Schofield::new(&q);
        assert_eq!(s.generic_ext(&dv(&[1, 0]), &dv(&[0, 1])).unwrap(), 1);
        assert_eq!(s.generic_ext(&dv(&[0, 1]), &dv(&[1, 0])).unwrap(), 0);
        assert_eq!(s.generic_ext(&dv(&[1, 1]), &dv(&[0, 0])).unwrap(), 0);
        let k = k2();
        let s = Schofield::new(&k);
        assert_eq!(s.generic_ext(&dv(&[1, 1]), &dv(&[1, 1])).unwrap(), 0);
        assert!(s.generic_ext(&dv(&[1]), &dv(&[1, 1])).is_err());
    }

    #[test]
    fn embeds_examples() {
        let q = a2();
        let s = Schofield::new(&q);
        assert!(s.embeds(&dv(&[0, 1]), &dv(&[1, 1])).unwrap());
        assert!(!s.embeds(&dv(&[1, 0]), &dv(&[1, 1])).unwrap());
        for beta in [dv(&[1, 1]), dv(&[2, 1]), dv(&[0, 3])] {
            assert!(s.embeds(&dv(&[0, 0]), &beta).unwrap());
            assert!(s.embeds(&beta, &beta).unwrap());
        }
    }

    #[test]
    fn effective_cone_examples() {
        let q = a2();
        let c = Schofield::new(&q).effective_cone(&dv(&[1, 1])).unwrap();
        assert_eq!(c.rays(), &[ints(&[1, -1])]);

        let q = s2();
        let s = Schofield::new(&q);
        assert_eq!(
            s.embedded_subvectors(&dv(&[1, 1, 1])).unwrap(),
            vec![dv(&[0, 0, 1]), dv(&[0, 1, 1]), dv(&[1, 0, 1])]
        );
        let c = s.effective_cone(&dv(&[1, 1, 1])).unwrap();
        assert_eq!(c.rays(), &[ints(&[0, 1, -1]), ints(&[1, 0, -1])]);

        let q = square();
        let c = Schofield::new(&q).effective_cone(&dv(&[1, 1, 1, 1])).unwrap();
        assert_eq!(
            c.rays(),
            &[ints(&[0, 1, -1, 0]), ints(&[0, 1, 0, -1]), ints(&[1, 0, -1, 0]), ints(&[1, 0, 0, -1])]
        );
        assert_eq!(
            Schofield::new(&q).effective_cone(&dv(&[0, 0, 0, 0])).unwrap_err(),
            Error::ZeroDimensionVector
        );
    }

    #[test]
    fn is_effective_examples() {
        let q = a2();
        let s = Schofield::new(&q);
        let beta = dv(&[1, 1]);
        assert!(s.is_effective(&beta, &Weight::from_ints(&[1, -1])).unwrap());
        assert!(!s.is_effective(&beta, &Weight::from_ints(&[-1, 1])).unwrap());
        for beta in [dv(&[1, 1]), dv(&[2, 3]), dv(&[0, 1])] {
            assert!(s.is_effective(&beta, &Weight::zero(2)).unwrap());
        }
    }

    #[test]
    fn stable_dimvector_examples() {
        let q = a2();
        let s = Schofield::new(&q);
        assert!(s.is_stable_dimvector(&dv(&[1, 1]), &Weight::from_ints(&[1, -1])).unwrap());
        assert!(s.is_stable_dimvector(&dv(&[1, 0]), &Weight::from_ints(&[0, 5])).unwrap());
        let k = k2();
        let s = Schofield::new(&k);
        assert!(!s.is_stable_dimvector(&dv(&[2, 2]), &Weight::from_ints(&[1, -1])).unwrap());
    }

    #[test]
    fn stable_decomposition_examples() {
        let k = k2();
        let s = Schofield::new(&k);
        let d = s.stable_decomposition(&dv(&[2, 2]), &Weight::from_ints(&[1, -1])).unwrap();
        assert_eq!(d.parts, BTreeMap::from([(dv(&[1, 1]), 2)]));

        let q = a2();
        let s = Schofield::new(&q);
        let d = s.stable_decomposition(&dv(&[1, 1]), &Weight::from_ints(&[1, -1])).unwrap();
        assert_eq!(d.parts, BTreeMap::from([(dv(&[1, 1]), 1)]));

        let q = s2();
        let s = Schofield::new(&q);
        let beta = dv(&[2, 1, 3]);
        let d = s.stable_decomposition(&beta, &Weight::zero(3)).unwrap();
        assert_eq!(
            d.parts,
            BTreeMap::from([(dv(&[0, 0, 1]), 3), (dv(&[0, 1, 0]), 1), (dv(&[1, 0, 0]), 2)])
        );
        assert_eq!(d.total(), beta);
        assert_eq!(
            s.stable_decomposition(&dv(&[1, 1, 1]), &Weight::from_ints(&[-1, 0, 1])).unwrap_err(),
            Error::NotEffective
        );
    }

    #[test]
    fn one_and_two_sided_recursions_agree() {
        for q in [a2(), k2(), s2(), square()] {
            let s = Schofield::new(&q);
            let n = q.vertex_count();
            let top = DimVector::new(vec![2; n]);
            for a in top.subvectors() {
                for b in top.subvectors() {
                    assert_eq!(
                        s.generic_ext(&a, &b).unwrap(),
                        s.generic_ext_via_quotients(&a, &b).unwrap(),
                        "a={a} b={b}"
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn ext_bounded_below_by_euler(a in proptest::collection::vec(0u32..=3, 2), b in proptest::collection::vec(0u32..=3, 2)) {
            let q = k2();
            let s = Schofield::new(&q);
            let (a, b) = (DimVector::new(a), DimVector::new(b));
            let e = s.generic_ext(&a, &b).unwrap() as i64;
            prop_assert!(e >= 0.max(-q.euler_i64(&a, &b)));
        }

        #[test]
        fn effective_cone_is_convex(coeffs in proptest::collection::vec(0i64..6, 4)) {
            let q = square();
            let s = Schofield::new(&q);
            let beta = dv(&[1, 1, 1, 1]);
            let c = s.effective_cone(&beta).unwrap();
            let mut sum = vec![num_bigint::BigInt::zero(); 4];
            for (r, k) in c.rays().iter().zip(&coeffs) {
                for (o, x) in sum.iter_mut().zip(r) {
                    *o += x * k;
                }
            }
            prop_assert!(s.is_effective(&beta, &Weight::from_bigints(&sum)).unwrap());
        }
    }
}
