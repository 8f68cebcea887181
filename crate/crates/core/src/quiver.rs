//! Quivers, dimension vectors and weights.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

/// A finite quiver without oriented cycles.
///
/// Vertices and arrows keep their declaration order; every vector indexed by
/// vertices uses that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    index: HashMap<String, usize>,
    topo_order: Vec<usize>,
}

impl Quiver {
    /// Validates a raw description: vertex ids and `(arrow id, tail, head)` triples.
    pub fn new<V, A, S1, S2, S3>(vertices: V, arrows: A) -> Result<Quiver>
    where
        V: IntoIterator<Item = S1>,
        A: IntoIterator<Item = (S2, S3, S3)>,
        S1: Into<String>,
        S2: Into<String>,
        S3: AsRef<str>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut seen_arrows = HashMap::new();
        let mut list = Vec::new();
        for (id, tail, head) in arrows {
            let id = id.into();
            let lookup = |name: &str| {
                index
                    .get(name)
                    .copied()
                    .ok_or_else(|| Error::UnknownVertex(name.to_string()))
            };
            let tail = lookup(tail.as_ref())?;
            let head = lookup(head.as_ref())?;
            if seen_arrows.insert(id.clone(), ()).is_some() {
                return Err(Error::DuplicateArrow(id));
            }
            list.push(Arrow { id, tail, head });
        }
        let topo_order = topological_order(vertices.len(), &list).map_err(|cycle| {
            Error::OrientedCycle(cycle.into_iter().map(|i| vertices[i].clone()).collect())
        })?;
        Ok(Quiver {
            vertices,
            arrows: list,
            index,
            topo_order,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    /// Vertices ordered so that every arrow points forward.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo_order
    }

    pub fn check_dim(&self, v: &DimVector) -> Result<()> {
        check_len(self.vertex_count(), v.len())
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        check_len(self.vertex_count(), w.len())
    }

    /// `<a, b> = sum_x a(x) b(x) - sum_arrows a(tail) b(head)`.
    pub fn euler_form(&self, a: &DimVector, b: &DimVector) -> Result<BigInt> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        Ok(BigInt::from(self.euler_i64(a, b)))
    }

    pub(crate) fn euler_i64(&self, a: &DimVector, b: &DimVector) -> i64 {
        let diag: i64 = a.0.iter().zip(&b.0).map(|(x, y)| *x as i64 * *y as i64).sum();
        let off: i64 = self
            .arrows
            .iter()
            .map(|ar| a.0[ar.tail] as i64 * b.0[ar.head] as i64)
            .sum();
        diag - off
    }

    pub fn weight_of(&self, sigma: &Weight, beta: &DimVector) -> Result<BigRational> {
        self.check_weight(sigma)?;
        self.check_dim(beta)?;
        Ok(sigma.eval(beta))
    }

    pub fn simple(&self, vertex: usize) -> DimVector {
        let mut v = vec![0; self.vertex_count()];
        v[vertex] = 1;
        DimVector(v)
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DomainMismatch { expected, found })
    }
}

/// Kahn's algorithm; on failure returns one oriented cycle (closed: first == last).
fn topological_order(n: usize, arrows: &[Arrow]) -> std::result::Result<Vec<usize>, Vec<usize>> {
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in arrows {
        indeg[a.head] += 1;
        out[a.tail].push(a.head);
    }
    // smallest declared index first among the sources, for determinism
    let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.insert(w);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    // Every remaining vertex has a predecessor among the remaining ones, so
    // walking backwards must revisit a vertex.
    let remaining: Vec<bool> = (0..n).map(|v| indeg[v] > 0).collect();
    let start = (0..n).find(|&v| remaining[v]).expect("cycle exists");
    let mut pred = vec![usize::MAX; n];
    for a in arrows {
        if remaining[a.tail] && remaining[a.head] && pred[a.head] == usize::MAX {
            pred[a.head] = a.tail;
        }
    }
    let mut pos = vec![usize::MAX; n];
    let mut walk = Vec::new();
    let mut v = start;
    while pos[v] == usize::MAX {
        pos[v] = walk.len();
        walk.push(v);
        v = pred[v];
    }
    let mut cycle: Vec<usize> = walk[pos[v]..].to_vec();
    cycle.reverse();
    cycle.push(cycle[0]);
    Err(cycle)
}

/// Nonnegative integer vector indexed by the vertices of a quiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn new(entries: Vec<u32>) -> Self {
        DimVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Entrywise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`; panics if some entry would go negative.
    pub fn sub(&self, other: &DimVector) -> DimVector {
        DimVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_sub(*b).expect("subtraction below zero"))
                .collect(),
        )
    }

    pub fn scale(&self, m: u32) -> DimVector {
        DimVector(self.0.iter().map(|a| a * m).collect())
    }

    pub fn to_int_vec(&self) -> Vec<BigInt> {
        self.0.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// All `b'` with `0 <= b' <= self`, lexicographically increasing in vertex order.
    pub fn subvectors(&self) -> Vec<DimVector> {
        SubdimLattice::new(self).iter().collect()
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// All subdimension vectors of `beta`; count is the product of `beta(x)+1`.
pub fn subdim_vectors(beta: &DimVector) -> Vec<DimVector> {
    beta.subvectors()
}

/// Mixed-radix indexing of the box `0 <= b' <= beta`.
///
/// Index order coincides with lexicographic order (first vertex most significant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdimLattice {
    beta: DimVector,
    strides: Vec<usize>,
    size: usize,
}

impl SubdimLattice {
    pub fn new(beta: &DimVector) -> Self {
        let n = beta.len();
        let mut strides = vec![0; n];
        let mut acc = 1usize;
        for i in (0..n).rev() {
            strides[i] = acc;
            acc *= beta.0[i] as usize + 1;
        }
        SubdimLattice {
            beta: beta.clone(),
            strides,
            size: acc,
        }
    }

    pub fn beta(&self) -> &DimVector {
        &self.beta
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn index(&self, v: &DimVector) -> usize {
        v.0.iter().zip(&self.strides).map(|(x, s)| *x as usize * s).sum()
    }

    pub fn vector(&self, mut idx: usize) -> DimVector {
        let mut out = vec![0; self.beta.len()];
        for (i, s) in self.strides.iter().enumerate() {
            out[i] = (idx / s) as u32;
            idx %= s;
        }
        DimVector(out)
    }

    pub fn iter(&self) -> impl Iterator<Item = DimVector> + '_ {
        (0..self.size).map(move |i| self.vector(i))
    }
}

/// A set of subdimension vectors of a fixed `beta`, as a bitset over [`SubdimLattice`] indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubdimSet {
    words: Vec<u64>,
}

impl SubdimSet {
    pub fn new(size: usize) -> Self {
        SubdimSet {
            words: vec![0; size.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, idx: usize) -> bool {
        let (w, b) = (idx / 64, idx % 64);
        let fresh = self.words[w] >> b & 1 == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.words[idx / 64] >> (idx % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &SubdimSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// True if every member of `self` is in `other`.
    pub fn is_subset(&self, other: &SubdimSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &SubdimSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| i * 64 + b)
        })
    }
}

/// Rational vector indexed by vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<BigRational>);

impl Weight {
    pub fn new(entries: Vec<BigRational>) -> Self {
        Weight(entries)
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        Weight(
            entries
                .iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect(),
        )
    }

    pub fn from_bigints(entries: &[BigInt]) -> Self {
        Weight(
            entries
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        )
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![BigRational::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// `sigma(beta) = sum_x sigma(x) beta(x)`.
    pub fn eval(&self, beta: &DimVector) -> BigRational {
        self.0
            .iter()
            .zip(&beta.0)
            .filter(|(_, b)| **b != 0)
            .fold(BigRational::zero(), |acc, (s, b)| {
                acc + s * BigRational::from_integer(BigInt::from(*b))
            })
    }

    pub fn scale(&self, m: &BigRational) -> Weight {
        Weight(self.0.iter().map(|x| x * m).collect())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// The primitive integral vector on the ray through `self` (zero stays zero).
    pub fn primitive_integral(&self) -> Vec<BigInt> {
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|x| x / &g).collect()
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(Signed::is_negative)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a2() -> Quiver {
        Quiver::new(["x", "y"], [("a", "x", "y")]).unwrap()
    }

    fn k2() -> Quiver {
        Quiver::new(["x", "y"], [("a", "x", "y"), ("b", "x", "y")]).unwrap()
    }

    #[test]
    fn validation() {
        let q = a2();
        assert_eq!(q.vertex_count(), 2);
        assert_eq!(q.topological_order(), &[0, 1]);

        let err = Quiver::new(["x"], [("a", "x", "x")]).unwrap_err();
        assert!(matches!(err, Error::OrientedCycle(_)));
        assert!(err.to_string().contains("oriented cycle"));

        let err = Quiver::new(["x", "y"], [("a", "x", "y"), ("b", "y", "x")]).unwrap_err();
        match err {
            Error::OrientedCycle(c) => {
                assert_eq!(c.first(), c.last());
                assert_eq!(c.len(), 3);
            }
            e => panic!("unexpected {e}"),
        }

        assert_eq!(
            Quiver::new(["x", "x"], Vec::<(&str, &str, &str)>::new()).unwrap_err(),
            Error::DuplicateVertex("x".into())
        );
        assert_eq!(
            Quiver::new(["x"], [("a", "x", "z")]).unwrap_err(),
            Error::UnknownVertex("z".into())
        );
    }

    #[test]
    fn topological_order_respects_arrows() {
        let q = Quiver::new(["z", "y", "x"], [("a", "x", "y"), ("b", "y", "z")]).unwrap();
        let order = q.topological_order();
        let pos = |v: usize| order.iter().position(|&w| w == v).unwrap();
        for a in q.arrows() {
            assert!(pos(a.tail) < pos(a.head));
        }
    }

    #[test]
    fn euler_form_examples() {
        let q = a2();
        let e = |a: &[u32], b: &[u32]| {
            q.euler_form(&DimVector::new(a.to_vec()), &DimVector::new(b.to_vec()))
                .unwrap()
        };
        assert_eq!(e(&[1, 0], &[0, 1]), BigInt::from(-1));
        assert_eq!(e(&[1, 0], &[1, 0]), BigInt::from(1));
        assert_eq!(e(&[0, 1], &[0, 1]), BigInt::from(1));
        let k = k2();
        let one = DimVector::new(vec![1, 1]);
        assert_eq!(k.euler_form(&one, &one).unwrap(), BigInt::from(0));
        assert!(matches!(
            q.euler_form(&DimVector::new(vec![1]), &one),
            Err(Error::DomainMismatch { .. })
        ));
    }

    #[test]
    fn weight_examples() {
        let w = |s: &[i64], b: &[u32]| Weight::from_ints(s).eval(&DimVector::new(b.to_vec()));
        assert_eq!(w(&[1, -1], &[1, 1]), BigRational::zero());
        assert_eq!(w(&[1, 0, -1], &[1, 1, 1]), BigRational::zero());
        assert_eq!(w(&[2, -1], &[1, 1]), BigRational::one());
    }

    #[test]
    fn subdim_examples() {
        assert_eq!(subdim_vectors(&DimVector::new(vec![1, 1])).len(), 4);
        assert_eq!(subdim_vectors(&DimVector::new(vec![2, 2])).len(), 9);
        assert_eq!(
            subdim_vectors(&DimVector::new(vec![0, 0])),
            vec![DimVector::new(vec![0, 0])]
        );
    }

    #[test]
    fn primitive_integral() {
        let half = BigRational::new(1.into(), 2.into());
        let w = Weight(vec![half.clone(), -half]);
        assert_eq!(w.primitive_integral(), vec![BigInt::from(1), BigInt::from(-1)]);
        assert_eq!(
            Weight::from_ints(&[4, -2]).primitive_integral(),
            vec![BigInt::from(2), BigInt::from(-1)]
        );
    }

    fn small_vec(n: usize) -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0u32..=3, n)
    }

    #[test]
    fn euler_bilinear_exhaustive_k2() {
        let q = k2();
        let all: Vec<DimVector> = DimVector::new(vec![3, 3]).subvectors();
        for a in &all {
            for a2 in &all {
                for b in &all {
                    let lhs = q.euler_i64(&a.add(a2), b);
                    assert_eq!(lhs, q.euler_i64(a, b) + q.euler_i64(a2, b));
                    let rhs = q.euler_i64(b, &a.add(a2));
                    assert_eq!(rhs, q.euler_i64(b, a) + q.euler_i64(b, a2));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn weight_is_additive(s in proptest::collection::vec(-5i64..=5, 3), a in small_vec(3), b in small_vec(3)) {
            let w = Weight::from_ints(&s);
            let (a, b) = (DimVector::new(a), DimVector::new(b));
            prop_assert_eq!(w.eval(&a.add(&b)), w.eval(&a) + w.eval(&b));
        }

        #[test]
        fn subdims_are_lex_increasing(beta in small_vec(3)) {
            let beta = DimVector::new(beta);
            let subs = beta.subvectors();
            let expected: usize = beta.0.iter().map(|&x| x as usize + 1).product();
            prop_assert_eq!(subs.len(), expected);
            prop_assert!(subs.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(subs.first().unwrap().is_zero());
            prop_assert_eq!(subs.last().unwrap(), &beta);
            let lattice = SubdimLattice::new(&beta);
            for (i, v) in subs.iter().enumerate() {
                prop_assert_eq!(lattice.index(v), i);
            }
        }

        #[test]
        fn accepts_iff_topologically_sortable(edges in proptest::collection::vec((0usize..4, 0usize..4), 0..7)) {
            let names = ["a", "b", "c", "d"];
            let arrows: Vec<(String, &str, &str)> = edges
                .iter()
                .enumerate()
                .map(|(i, (t, h))| (format!("e{i}"), names[*t], names[*h]))
                .collect();
            let result = Quiver::new(names, arrows);
            // brute force: a topological sort exists iff some permutation orders every edge forward
            let mut perms = Vec::new();
            permutations(&mut vec![0, 1, 2, 3], 0, &mut perms);
            let sortable = perms.iter().any(|p| {
                let pos = |v: usize| p.iter().position(|&w| w == v).unwrap();
                edges.iter().all(|(t, h)| pos(*t) < pos(*h))
            });
            prop_assert_eq!(result.is_ok(), sortable);
        }
    }

    fn permutations(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == v.len() {
            out.push(v.clone());
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permutations(v, k + 1, out);
            v.swap(k, i);
        }
    }
}
