//! Exact rational polyhedral cones.
//!
//! A [`Cone`] keeps both descriptions in canonical form:
//!
//! * H-representation: `equations` (`<e,x> = 0`) spanning the orthogonal
//!   complement of the linear span, and one primitive `inequalities` normal
//!   `a` (`<a,x> <= 0`) per facet, reduced modulo the equations;
//! * V-representation: the lineality space as an echelon basis and the
//!   extreme rays reduced modulo the lineality space.
//!
//! Every vector is primitive and each list is sorted, so two cones are equal as
//! sets iff they are equal as values.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, dot, dot_rat, to_rat, IntVec, Rref};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    ambient_dim: usize,
    dim: usize,
    rays: Vec<IntVec>,
    lineality: Vec<IntVec>,
    equations: Vec<IntVec>,
    inequalities: Vec<IntVec>,
}

impl Cone {
    /// Builds a cone from equations `<e,x> = 0` and inequalities `<a,x> <= 0`
    /// by double description.
    pub fn from_hrep(ambient_dim: usize, equations: &[IntVec], inequalities: &[IntVec]) -> Result<Cone> {
        for v in equations.iter().chain(inequalities) {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
        }
        let mut seen = BTreeSet::new();
        let ineqs: Vec<IntVec> = inequalities
            .iter()
            .filter(|a| !linalg::is_zero(a))
            .map(|a| linalg::primitive(a))
            .filter(|a| seen.insert(a.clone()))
            .collect();
        let (lineality, rays) = double_description(ambient_dim, equations, &ineqs);
        Ok(Cone::canonicalize(ambient_dim, lineality, rays, &ineqs))
    }

    /// The cone generated by `rays` plus the linear span of `lineality`.
    pub fn from_vrep(ambient_dim: usize, rays: &[IntVec], lineality: &[IntVec]) -> Result<Cone> {
        // the dual cone {a : <a,r> <= 0, <a,l> = 0}; bipolarity recovers the cone
        let dual = Cone::from_hrep(ambient_dim, lineality, rays)?;
        Cone::from_hrep(ambient_dim, &dual.lineality, &dual.rays)
    }

    pub fn zero(ambient_dim: usize) -> Cone {
        let eqs: Vec<IntVec> = (0..ambient_dim).map(|i| unit(ambient_dim, i)).collect();
        Cone::from_hrep(ambient_dim, &eqs, &[]).expect("dimensions agree")
    }

    pub fn full(ambient_dim: usize) -> Cone {
        Cone::from_hrep(ambient_dim, &[], &[]).expect("dimensions agree")
    }

    fn canonicalize(ambient_dim: usize, lineality: Vec<IntVec>, rays: Vec<IntVec>, candidates: &[IntVec]) -> Cone {
        let lin = Rref::from_ints(&lineality, ambient_dim);
        let lineality = lin.canonical_basis();
        let rays: Vec<IntVec> = rays
            .iter()
            .map(|r| lin.reduce_int(r))
            .filter(|r| !linalg::is_zero(r))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let generators: Vec<IntVec> = rays.iter().chain(&lineality).cloned().collect();
        let span = Rref::from_ints(&generators, ambient_dim);
        let dim = span.rank();
        let eq = Rref::new(&span.kernel(), ambient_dim);
        let equations = eq.canonical_basis();
        let mut facets = BTreeSet::new();
        for a in candidates {
            let tight: Vec<IntVec> = rays
                .iter()
                .filter(|r| dot(a, r).is_zero())
                .chain(&lineality)
                .cloned()
                .collect();
            if tight.len() == generators.len() {
                continue;
            }
            if linalg::rank(&tight, ambient_dim) + 1 == dim {
                facets.insert(eq.reduce_int(a));
            }
        }
        Cone {
            ambient_dim,
            dim,
            rays,
            lineality,
            equations,
            inequalities: facets.into_iter().collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[IntVec] {
        &self.lineality
    }

    pub fn equations(&self) -> &[IntVec] {
        &self.equations
    }

    /// Facet normals.
    pub fn inequalities(&self) -> &[IntVec] {
        &self.inequalities
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    fn check_point(&self, len: usize) -> Result<()> {
        if len == self.ambient_dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: len,
            })
        }
    }

    pub fn contains(&self, v: &[BigRational]) -> Result<bool> {
        self.check_point(v.len())?;
        Ok(self.equations.iter().all(|e| dot_rat(e, v).is_zero())
            && self.inequalities.iter().all(|a| !dot_rat(a, v).is_positive()))
    }

    pub fn relint_contains(&self, v: &[BigRational]) -> Result<bool> {
        Ok(self.contains(v)? && self.inequalities.iter().all(|a| dot_rat(a, v).is_negative()))
    }

    pub fn contains_int(&self, v: &[BigInt]) -> Result<bool> {
        self.check_point(v.len())?;
        Ok(self.equations.iter().all(|e| dot(e, v).is_zero())
            && self.inequalities.iter().all(|a| !dot(a, v).is_positive()))
    }

    pub fn relint_contains_int(&self, v: &[BigInt]) -> Result<bool> {
        Ok(self.contains_int(v)? && self.inequalities.iter().all(|a| dot(a, v).is_negative()))
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        self.check_point(other.ambient_dim)?;
        let eqs: Vec<IntVec> = self.equations.iter().chain(&other.equations).cloned().collect();
        let ineqs: Vec<IntVec> = self
            .inequalities
            .iter()
            .chain(&other.inequalities)
            .cloned()
            .collect();
        Cone::from_hrep(self.ambient_dim, &eqs, &ineqs)
    }

    /// Adds the given normals as equations.
    pub fn restrict_to(&self, hyperplanes: &[IntVec]) -> Result<Cone> {
        let eqs: Vec<IntVec> = self.equations.iter().chain(hyperplanes).cloned().collect();
        Cone::from_hrep(self.ambient_dim, &eqs, &self.inequalities)
    }

    /// Adds the given normals as inequalities.
    pub fn cut(&self, halfspaces: &[IntVec]) -> Result<Cone> {
        let ineqs: Vec<IntVec> = self.inequalities.iter().chain(halfspaces).cloned().collect();
        Cone::from_hrep(self.ambient_dim, &self.equations, &ineqs)
    }

    /// Generator-wise inclusion test.
    pub fn is_subset_of(&self, other: &Cone) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.rays.iter().all(|r| other.contains_int(r).unwrap_or(false))
            && self.lineality.iter().all(|l| {
                other.contains_int(l).unwrap_or(false)
                    && other.contains_int(&linalg::neg(l)).unwrap_or(false)
            })
    }

    /// Sum of the rays and lineality generators; lies in the relative interior.
    pub fn relint_point(&self) -> IntVec {
        let mut out = vec![BigInt::zero(); self.ambient_dim];
        for g in self.rays.iter().chain(&self.lineality) {
            for (o, x) in out.iter_mut().zip(g) {
                *o += x;
            }
        }
        out
    }

    /// The unique face containing `v` in its relative interior.
    pub fn face_of(&self, v: &[BigRational]) -> Result<Cone> {
        if !self.contains(v)? {
            return Err(Error::OutsideCone);
        }
        let tight: Vec<IntVec> = self
            .inequalities
            .iter()
            .filter(|a| dot_rat(a, v).is_zero())
            .cloned()
            .collect();
        if tight.is_empty() {
            return Ok(self.clone());
        }
        self.restrict_to(&tight)
    }

    pub fn face_of_int(&self, v: &[BigInt]) -> Result<Cone> {
        self.face_of(&to_rat(v))
    }

    /// All faces, including the cone itself and its minimal face, sorted.
    pub fn faces(&self) -> Vec<Cone> {
        let mut found = BTreeSet::new();
        let mut queue = VecDeque::from([self.clone()]);
        found.insert(self.clone());
        while let Some(f) = queue.pop_front() {
            for a in &f.inequalities {
                let g = f.restrict_to(std::slice::from_ref(a)).expect("dimensions agree");
                if found.insert(g.clone()) {
                    queue.push_back(g);
                }
            }
        }
        found.into_iter().collect()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.is_subset_of(other)
            && other
                .face_of_int(&self.relint_point())
                .map(|f| &f == self)
                .unwrap_or(false)
    }

    /// True when `<h, .>` vanishes on the whole cone.
    pub fn annihilated_by(&self, h: &[BigInt]) -> bool {
        self.rays.iter().chain(&self.lineality).all(|g| dot(h, g).is_zero())
    }

    /// Sign pattern of `<h, .>` on the cone: (takes negative values, takes positive values).
    pub fn signs_of(&self, h: &[BigInt]) -> (bool, bool) {
        let mut neg = false;
        let mut pos = false;
        for r in &self.rays {
            let s = dot(h, r);
            neg |= s.is_negative();
            pos |= s.is_positive();
        }
        for l in &self.lineality {
            if !dot(h, l).is_zero() {
                return (true, true);
            }
        }
        (neg, pos)
    }
}

fn unit(n: usize, i: usize) -> IntVec {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::from(1);
    v
}

/// Incremental double description with an explicit lineality basis.
///
/// Returns `(lineality, rays)` generating `{x : Ex = 0, Ax <= 0}`; the rays are
/// extreme modulo the lineality space.
fn double_description(n: usize, equations: &[IntVec], inequalities: &[IntVec]) -> (Vec<IntVec>, Vec<IntVec>) {
    let mut lineality = linalg::kernel(equations, n);
    let mut rays: Vec<IntVec> = Vec::new();
    let mut processed: Vec<&IntVec> = Vec::new();
    for a in inequalities {
        if let Some(k) = lineality.iter().position(|b| !dot(a, b).is_zero()) {
            let b0 = lineality.swap_remove(k);
            let s0 = dot(a, &b0);
            for b in lineality.iter_mut() {
                let sb = dot(a, b);
                if !sb.is_zero() {
                    *b = linalg::primitive(&linalg::combine(&s0, b, &(-sb), &b0));
                }
            }
            let sign = if s0.is_negative() { BigInt::from(-1) } else { BigInt::from(1) };
            for r in rays.iter_mut() {
                let sr = dot(a, r);
                if !sr.is_zero() {
                    // |s0| r - sign(s0) (a.r) b0 keeps r's direction modulo b0
                    *r = linalg::primitive(&linalg::combine(&(&s0 * &sign), r, &(-(sr * &sign)), &b0));
                }
            }
            rays.push(if s0.is_negative() { b0 } else { linalg::neg(&b0) });
        } else {
            let values: Vec<BigInt> = rays.iter().map(|r| dot(a, r)).collect();
            let zero_sets: Vec<Vec<bool>> = rays
                .iter()
                .map(|r| processed.iter().map(|c| dot(c, r).is_zero()).collect())
                .collect();
            let mut next = Vec::new();
            for (i, r) in rays.iter().enumerate() {
                if !values[i].is_positive() {
                    next.push(r.clone());
                }
            }
            for p in (0..rays.len()).filter(|&i| values[i].is_positive()) {
                for q in (0..rays.len()).filter(|&i| values[i].is_negative()) {
                    if !adjacent(p, q, &zero_sets) {
                        continue;
                    }
                    let v = linalg::combine(&values[p], &rays[q], &(-&values[q]), &rays[p]);
                    next.push(linalg::primitive(&v));
                }
            }
            rays = next;
        }
        processed.push(a);
    }
    (lineality, rays)
}

/// Combinatorial adjacency: no third ray is tight on every constraint tight on both.
fn adjacent(p: usize, q: usize, zero_sets: &[Vec<bool>]) -> bool {
    let common: Vec<usize> = (0..zero_sets[p].len())
        .filter(|&c| zero_sets[p][c] && zero_sets[q][c])
        .collect();
    !(0..zero_sets.len())
        .filter(|&r| r != p && r != q)
        .any(|r| common.iter().all(|&c| zero_sets[r][c]))
}

/// Result of splitting a support cone along hyperplanes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberDecomposition {
    pub chambers: Vec<Cone>,
    /// Indices of hyperplanes containing the whole support; those are not split on.
    pub degenerate: Vec<usize>,
}

/// Closures of the connected components of `relint(support)` minus the hyperplanes.
pub fn chambers(support: &Cone, hyperplanes: &[IntVec]) -> Result<ChamberDecomposition> {
    let mut pieces = vec![support.clone()];
    let mut degenerate = Vec::new();
    for (i, h) in hyperplanes.iter().enumerate() {
        support.check_point(h.len())?;
        if support.annihilated_by(h) {
            degenerate.push(i);
            continue;
        }
        let mut next = BTreeSet::new();
        for piece in &pieces {
            let (neg, pos) = piece.signs_of(h);
            if !(neg && pos) {
                next.insert(piece.clone());
                continue;
            }
            for half in [h.clone(), linalg::neg(h)] {
                let part = piece.cut(std::slice::from_ref(&half))?;
                if part.dim() == support.dim() {
                    next.insert(part);
                }
            }
        }
        pieces = next.into_iter().collect();
    }
    pieces.sort();
    Ok(ChamberDecomposition {
        chambers: pieces,
        degenerate,
    })
}

/// A finite collection of cones with their face relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    cones: Vec<Cone>,
    face_relations: BTreeSet<(usize, usize)>,
    maximal: Vec<usize>,
}

impl Fan {
    /// Deduplicates, sorts by (dimension, canonical form) and computes face relations.
    pub fn new(cones: impl IntoIterator<Item = Cone>) -> Fan {
        let cones: Vec<Cone> = cones.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let mut face_relations = BTreeSet::new();
        for (i, c) in cones.iter().enumerate() {
            for (j, d) in cones.iter().enumerate() {
                if i != j && c.dim() < d.dim() && c.is_face_of(d) {
                    face_relations.insert((i, j));
                }
            }
        }
        let maximal = (0..cones.len())
            .filter(|&i| !face_relations.iter().any(|&(f, _)| f == i))
            .collect();
        Fan {
            cones,
            face_relations,
            maximal,
        }
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    /// Pairs `(i, j)`: cone `i` is a proper face of cone `j`.
    pub fn face_relations(&self) -> &BTreeSet<(usize, usize)> {
        &self.face_relations
    }

    pub fn maximal_indices(&self) -> &[usize] {
        &self.maximal
    }

    pub fn maximal_cones(&self) -> impl Iterator<Item = &Cone> {
        self.maximal.iter().map(|&i| &self.cones[i])
    }

    pub fn index_of(&self, cone: &Cone) -> Option<usize> {
        self.cones.binary_search(cone).ok()
    }

    /// The cone containing `v` in its relative interior, if any.
    pub fn locate(&self, v: &[BigRational]) -> Option<usize> {
        self.cones
            .iter()
            .position(|c| c.relint_contains(v).unwrap_or(false))
    }

    pub fn covers(&self, v: &[BigRational]) -> bool {
        self.cones.iter().any(|c| c.contains(v).unwrap_or(false))
    }

    /// Face-closure violations: faces of members that are not members.
    pub fn face_closure_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (j, c) in self.cones.iter().enumerate() {
            for f in c.faces() {
                if self.index_of(&f).is_none() {
                    out.push(format!("face with rays {:?} of cone {j} is not a member", fmt_vecs(f.rays())));
                }
            }
        }
        out
    }

    /// Intersection-closure violations: pairwise intersections must be members and faces of both.
    pub fn intersection_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in 0..self.cones.len() {
            for j in i + 1..self.cones.len() {
                let (a, b) = (&self.cones[i], &self.cones[j]);
                let Ok(meet) = a.intersect(b) else {
                    out.push(format!("cones {i} and {j} live in different spaces"));
                    continue;
                };
                if self.index_of(&meet).is_none() {
                    out.push(format!("intersection of cones {i} and {j} is not a member"));
                } else if !(meet.is_face_of(a) || &meet == a) || !(meet.is_face_of(b) || &meet == b) {
                    out.push(format!("intersection of cones {i} and {j} is not a common face"));
                }
            }
        }
        out
    }
}

pub(crate) fn fmt_vecs(vs: &[IntVec]) -> Vec<Vec<String>> {
    vs.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect()
}
