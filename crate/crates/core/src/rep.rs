//! Explicit representations over prime fields.
//!
//! A representation assigns `F_p^{d(x)}` to each vertex and a `d(head) x d(tail)`
//! matrix to each arrow. Subspaces are row spaces; a vector `v` at the tail of
//! `a` maps to `M(a) v` at the head.

use std::collections::BTreeSet;
use std::ops::ControlFlow;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::field::{FpMatrix, PrimeField};
use crate::quiver::{DimVector, Quiver, SubdimLattice, SubdimSet, Weight};
use crate::subspace::{increment, subspace_count, Subspace, SubspaceCatalog};

/// Default cap on the number of subspace tuples (or enumerated objects) in one sweep.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Number of random hom-space elements tried when exhaustive search is over budget.
const ISO_SAMPLES: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rep {
    quiver: Arc<Quiver>,
    field: PrimeField,
    dim: DimVector,
    maps: Vec<FpMatrix>,
}

impl Rep {
    /// Entries are reduced mod `p`; shapes must match `dim`.
    pub fn new(quiver: Arc<Quiver>, field: PrimeField, dim: DimVector, maps: Vec<FpMatrix>) -> Result<Rep> {
        quiver.check_dim(&dim)?;
        if maps.len() != quiver.arrows().len() {
            return Err(Error::DomainMismatch {
                expected: quiver.arrows().len(),
                found: maps.len(),
            });
        }
        let p = field.p();
        let mut reduced = Vec::with_capacity(maps.len());
        for (a, m) in quiver.arrows().iter().zip(maps) {
            let expected = (dim.0[a.head] as usize, dim.0[a.tail] as usize);
            if m.shape() != expected {
                return Err(Error::BadMatrixShape {
                    arrow: a.id.clone(),
                    expected,
                    found: m.shape(),
                });
            }
            let data = m.data().iter().map(|&x| x % p).collect();
            reduced.push(FpMatrix::from_rows(expected.0, expected.1, data));
        }
        Ok(Rep {
            quiver,
            field,
            dim,
            maps: reduced,
        })
    }

    pub fn zero(quiver: Arc<Quiver>, field: PrimeField, dim: DimVector) -> Result<Rep> {
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| FpMatrix::zeros(dim.0[a.head] as usize, dim.0[a.tail] as usize))
            .collect();
        Rep::new(quiver, field, dim, maps)
    }

    /// The simple representation at a vertex.
    pub fn simple(quiver: Arc<Quiver>, field: PrimeField, vertex: usize) -> Result<Rep> {
        let dim = quiver.simple(vertex);
        Rep::zero(quiver, field, dim)
    }

    /// Uniformly random matrices from a ChaCha stream seeded with `seed`.
    pub fn random(quiver: Arc<Quiver>, dim: DimVector, p: u64, seed: u64) -> Result<Rep> {
        let field = PrimeField::new(p)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Rep::random_with(quiver, field, dim, &mut rng)
    }

    pub fn random_with<R: Rng>(quiver: Arc<Quiver>, field: PrimeField, dim: DimVector, rng: &mut R) -> Result<Rep> {
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| random_matrix(&field, dim.0[a.head] as usize, dim.0[a.tail] as usize, rng))
            .collect();
        Rep::new(quiver, field, dim, maps)
    }

    /// Every representation of dimension `dim` over `F_p`, in a fixed order.
    pub fn enumerate_all(quiver: Arc<Quiver>, field: PrimeField, dim: DimVector, budget: u64) -> Result<Vec<Rep>> {
        quiver.check_dim(&dim)?;
        let shapes: Vec<(usize, usize)> = quiver
            .arrows()
            .iter()
            .map(|a| (dim.0[a.head] as usize, dim.0[a.tail] as usize))
            .collect();
        let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
        let needed = (field.p() as u128).saturating_pow(entries as u32);
        if needed > budget as u128 {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let mut out = Vec::with_capacity(needed as usize);
        let mut digits = vec![0u32; entries];
        loop {
            let mut maps = Vec::with_capacity(shapes.len());
            let mut at = 0;
            for &(r, c) in &shapes {
                maps.push(FpMatrix::from_rows(r, c, digits[at..at + r * c].to_vec()));
                at += r * c;
            }
            out.push(Rep {
                quiver: quiver.clone(),
                field,
                dim: dim.clone(),
                maps,
            });
            if !increment(&mut digits, field.p()) {
                break;
            }
        }
        Ok(out)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn quiver_arc(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn maps(&self) -> &[FpMatrix] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &FpMatrix {
        &self.maps[arrow]
    }

    fn check_compatible(&self, other: &Rep) -> Result<()> {
        if self.field != other.field || *self.quiver != *other.quiver {
            return Err(Error::RepMismatch);
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Rep) -> Result<Rep> {
        self.check_compatible(other)?;
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Ok(Rep {
            quiver: self.quiver.clone(),
            field: self.field,
            dim: self.dim.add(&other.dim),
            maps,
        })
    }

    /// Basis of `Hom(self, other)`: one matrix per vertex, `phi(head) M(a) = N(a) phi(tail)`.
    pub fn hom_basis(&self, other: &Rep) -> Result<Vec<Vec<FpMatrix>>> {
        self.check_compatible(other)?;
        let f = &self.field;
        let n = self.quiver.vertex_count();
        let dv = |x: usize| self.dim.0[x] as usize;
        let dw = |x: usize| other.dim.0[x] as usize;
        let mut offset = vec![0; n + 1];
        for x in 0..n {
            offset[x + 1] = offset[x] + dw(x) * dv(x);
        }
        let unknowns = offset[n];
        let var = |x: usize, i: usize, j: usize| offset[x] + i * dv(x) + j;
        let mut rows = Vec::new();
        for (k, a) in self.quiver.arrows().iter().enumerate() {
            let (t, h) = (a.tail, a.head);
            let m = &self.maps[k];
            let w = &other.maps[k];
            for r in 0..dw(h) {
                for c in 0..dv(t) {
                    let mut eq = vec![0u32; unknowns];
                    for s in 0..dv(h) {
                        let coeff = m.get(s, c);
                        if coeff != 0 {
                            let i = var(h, r, s);
                            eq[i] = f.add(eq[i], coeff);
                        }
                    }
                    for s in 0..dw(t) {
                        let coeff = w.get(r, s);
                        if coeff != 0 {
                            let i = var(t, s, c);
                            eq[i] = f.sub(eq[i], coeff);
                        }
                    }
                    rows.push(eq);
                }
            }
        }
        let system = FpMatrix::from_row_vecs(unknowns, &rows);
        let kernel = system.kernel(f);
        Ok(kernel
            .into_iter()
            .map(|v| {
                (0..n)
                    .map(|x| FpMatrix::from_rows(dw(x), dv(x), v[offset[x]..offset[x + 1]].to_vec()))
                    .collect()
            })
            .collect())
    }

    pub fn hom_dim(&self, other: &Rep) -> Result<usize> {
        Ok(self.hom_basis(other)?.len())
    }

    /// Upper bound on the tuples visited by a subrepresentation sweep.
    pub fn sweep_size(&self) -> u128 {
        self.dim
            .0
            .iter()
            .fold(1u128, |acc, &d| acc.saturating_mul(subspace_count(self.field.p(), d as usize)))
    }

    /// Visits every subrepresentation as a tuple of per-vertex subspaces.
    ///
    /// Vertices are filled in topological order; at each vertex only subspaces
    /// containing the images of the already chosen tails are tried.
    pub fn for_each_subrep<F>(&self, catalog: &SubspaceCatalog, budget: u64, mut visit: F) -> Result<()>
    where
        F: FnMut(&[Subspace]) -> ControlFlow<()>,
    {
        if catalog.field() != &self.field {
            return Err(Error::RepMismatch);
        }
        let needed = self.sweep_size();
        if needed > budget as u128 {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let mut chosen: Vec<Subspace> = self.dim.0.iter().map(|&d| Subspace::zero(d as usize)).collect();
        let _ = self.sweep(catalog, 0, &mut chosen, &mut visit);
        Ok(())
    }

    fn sweep<F>(&self, catalog: &SubspaceCatalog, k: usize, chosen: &mut Vec<Subspace>, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[Subspace]) -> ControlFlow<()>,
    {
        let order = self.quiver.topological_order();
        if k == order.len() {
            return visit(chosen);
        }
        let v = order[k];
        let f = &self.field;
        let mut required = Subspace::zero(self.dim.0[v] as usize);
        for (i, a) in self.quiver.arrows().iter().enumerate() {
            if a.head == v {
                required = required.sum(f, &chosen[a.tail].image(f, &self.maps[i]));
            }
        }
        for s in catalog.containing(&required).iter() {
            chosen[v] = s.clone();
            self.sweep(catalog, k + 1, chosen, visit)?;
        }
        ControlFlow::Continue(())
    }

    /// Dimension vectors of all subrepresentations.
    pub fn subrep_dimvectors(&self, budget: u64) -> Result<BTreeSet<DimVector>> {
        let catalog = SubspaceCatalog::new(self.field);
        let lattice = SubdimLattice::new(&self.dim);
        let set = self.subrep_profile(&catalog, &lattice, budget)?;
        Ok(set.iter().map(|i| lattice.vector(i)).collect())
    }

    /// [`Rep::subrep_dimvectors`] as a bitset over `lattice`, reusing `catalog`.
    pub fn subrep_profile(&self, catalog: &SubspaceCatalog, lattice: &SubdimLattice, budget: u64) -> Result<SubdimSet> {
        let mut set = SubdimSet::new(lattice.size());
        let mut dims = vec![0u32; self.dim.len()];
        self.for_each_subrep(catalog, budget, |sub| {
            for (d, s) in dims.iter_mut().zip(sub) {
                *d = s.dim() as u32;
            }
            set.insert(lattice.index(&DimVector(dims.clone())));
            ControlFlow::Continue(())
        })?;
        Ok(set)
    }

    /// King semistability: `sigma(d_W) = 0` and `sigma(d_U) <= 0` for every subrepresentation `U`.
    pub fn is_semistable(&self, sigma: &Weight, budget: u64) -> Result<bool> {
        self.quiver.check_weight(sigma)?;
        if !sigma.eval(&self.dim).is_zero() {
            return Ok(false);
        }
        Ok(self
            .subrep_dimvectors(budget)?
            .iter()
            .all(|d| !sigma.eval(d).is_positive()))
    }

    /// Semistable, nonzero, and `sigma(d_U) < 0` for every proper nonzero subrepresentation.
    pub fn is_stable(&self, sigma: &Weight, budget: u64) -> Result<bool> {
        self.quiver.check_weight(sigma)?;
        if self.dim.is_zero() || !sigma.eval(&self.dim).is_zero() {
            return Ok(false);
        }
        Ok(self
            .subrep_dimvectors(budget)?
            .iter()
            .filter(|d| !d.is_zero() && **d != self.dim)
            .all(|d| sigma.eval(d).is_negative()))
    }

    /// Weights for which this representation is semistable.
    pub fn orbit_cone(&self, budget: u64) -> Result<Cone> {
        let ineqs: Vec<_> = self
            .subrep_dimvectors(budget)?
            .iter()
            .map(DimVector::to_int_vec)
            .collect();
        Cone::from_hrep(self.dim.len(), &[self.dim.to_int_vec()], &ineqs)
    }

    /// The subrepresentation on `sub`, in the echelon bases of its subspaces.
    pub fn restrict(&self, sub: &[Subspace]) -> Result<Rep> {
        self.check_subrep(sub)?;
        let f = &self.field;
        let dim = DimVector(sub.iter().map(|s| s.dim() as u32).collect());
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let (st, sh) = (&sub[a.tail], &sub[a.head]);
                let mut m = FpMatrix::zeros(sh.dim(), st.dim());
                for (j, b) in st.basis_rows().iter().enumerate() {
                    let image = self.maps[i].apply(f, b);
                    for (r, c) in sh.coords(&image).into_iter().enumerate() {
                        m.set(r, j, c);
                    }
                }
                m
            })
            .collect();
        Rep::new(self.quiver.clone(), self.field, dim, maps)
    }

    /// The quotient by the subrepresentation `sub`, in coordinates on the
    /// non-pivot columns of each subspace.
    pub fn quotient(&self, sub: &[Subspace]) -> Result<Rep> {
        self.check_subrep(sub)?;
        let f = &self.field;
        let dim = DimVector(
            sub.iter()
                .zip(&self.dim.0)
                .map(|(s, &d)| d - s.dim() as u32)
                .collect(),
        );
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let tail_cols = sub[a.tail].complement_columns();
                let mut m = FpMatrix::zeros(dim.0[a.head] as usize, tail_cols.len());
                for (j, &c) in tail_cols.iter().enumerate() {
                    let mut e = vec![0; self.dim.0[a.tail] as usize];
                    e[c] = 1;
                    let image = project(f, &sub[a.head], &self.maps[i].apply(f, &e));
                    for (r, x) in image.into_iter().enumerate() {
                        m.set(r, j, x);
                    }
                }
                m
            })
            .collect();
        Rep::new(self.quiver.clone(), self.field, dim, maps)
    }

    pub fn is_subrep(&self, sub: &[Subspace]) -> bool {
        self.check_subrep(sub).is_ok()
    }

    fn check_subrep(&self, sub: &[Subspace]) -> Result<()> {
        let f = &self.field;
        if sub.len() != self.dim.len()
            || sub.iter().zip(&self.dim.0).any(|(s, &d)| s.ambient() != d as usize)
        {
            return Err(Error::InvalidFiltration("subspace family does not match the representation".into()));
        }
        for (i, a) in self.quiver.arrows().iter().enumerate() {
            if !sub[a.tail].image(f, &self.maps[i]).is_subspace_of(f, &sub[a.head]) {
                return Err(Error::InvalidFiltration(format!("not invariant under arrow `{}`", a.id)));
            }
        }
        Ok(())
    }

    fn full_family(&self) -> Vec<Subspace> {
        self.dim.0.iter().map(|&d| Subspace::full(d as usize)).collect()
    }

    fn zero_family(&self) -> Vec<Subspace> {
        self.dim.0.iter().map(|&d| Subspace::zero(d as usize)).collect()
    }

    /// Jordan-Hölder filtration in the category of `sigma`-semistable representations.
    ///
    /// Each step adds the preimage of the smallest nonzero subrepresentation of
    /// the current quotient with `sigma`-value zero (total dimension, then
    /// dimension vector, then sweep order). Such a subrepresentation is stable:
    /// a proper value-zero subrepresentation of it would be smaller still.
    pub fn jh_filtration(&self, sigma: &Weight, budget: u64) -> Result<Filtration> {
        if !self.is_semistable(sigma, budget)? {
            return Err(Error::NotSemistable);
        }
        let f = &self.field;
        let catalog = SubspaceCatalog::new(self.field);
        let mut current = self.zero_family();
        let mut steps = vec![current.clone()];
        let mut dims = vec![DimVector::zero(self.dim.len())];
        while dims.last() != Some(&self.dim) {
            let q = self.quotient(&current)?;
            let mut best: Option<((u64, DimVector), Vec<Subspace>)> = None;
            q.for_each_subrep(&catalog, budget, |sub| {
                let d = DimVector(sub.iter().map(|s| s.dim() as u32).collect());
                if d.is_zero() || !sigma.eval(&d).is_zero() {
                    return ControlFlow::Continue(());
                }
                let key = (d.total(), d);
                if best.as_ref().is_none_or(|(k, _)| key < *k) {
                    best = Some((key, sub.to_vec()));
                }
                ControlFlow::Continue(())
            })?;
            let (_, piece) = best.ok_or(Error::NotSemistable)?;
            current = current
                .iter()
                .zip(&piece)
                .map(|(c, s)| lift(f, c, s))
                .collect();
            dims.push(DimVector(current.iter().map(|s| s.dim() as u32).collect()));
            steps.push(current.clone());
        }
        Ok(Filtration {
            steps,
            dims,
            weight: sigma.clone(),
        })
    }

    /// `gr(F) = sum of W_i / W_(i-1)`.
    pub fn associated_graded(&self, filtration: &Filtration) -> Result<Rep> {
        filtration.validate(self)?;
        let f = &self.field;
        let mut out = Rep::zero(self.quiver.clone(), self.field, DimVector::zero(self.dim.len()))?;
        for pair in filtration.steps.windows(2) {
            let (prev, next) = (&pair[0], &pair[1]);
            let q = self.quotient(prev)?;
            let image: Vec<Subspace> = prev
                .iter()
                .zip(next)
                .map(|(p, n)| {
                    let rows: Vec<Vec<u32>> = n.basis_rows().iter().map(|r| project(f, p, r)).collect();
                    Subspace::span(f, n.ambient() - p.dim(), &rows)
                })
                .collect();
            out = out.direct_sum(&q.restrict(&image)?)?;
        }
        Ok(out)
    }

    /// Searches `Hom(self, other)` for an element invertible at every vertex.
    pub fn isomorphism_verdict(&self, other: &Rep, budget: u64) -> Result<IsoVerdict> {
        self.check_compatible(other)?;
        if self.dim != other.dim {
            return Ok(IsoVerdict::NotIsomorphic);
        }
        let f = &self.field;
        let basis = self.hom_basis(other)?;
        let invertible = |coeffs: &[u32]| {
            (0..self.dim.len()).all(|x| {
                let d = self.dim.0[x] as usize;
                let mut m = FpMatrix::zeros(d, d);
                for (c, b) in coeffs.iter().zip(&basis) {
                    if *c == 0 {
                        continue;
                    }
                    for i in 0..d {
                        for j in 0..d {
                            m.set(i, j, f.add(m.get(i, j), f.mul(*c, b[x].get(i, j))));
                        }
                    }
                }
                m.is_invertible(f)
            })
        };
        let total = (f.p() as u128).saturating_pow(basis.len() as u32);
        if total <= budget as u128 {
            let mut coeffs = vec![0u32; basis.len()];
            loop {
                if invertible(&coeffs) {
                    return Ok(IsoVerdict::Isomorphic);
                }
                if !increment(&mut coeffs, f.p()) {
                    return Ok(IsoVerdict::NotIsomorphic);
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x150);
        for _ in 0..ISO_SAMPLES {
            let coeffs: Vec<u32> = (0..basis.len()).map(|_| rng.gen_range(0..f.p())).collect();
            if invertible(&coeffs) {
                return Ok(IsoVerdict::Isomorphic);
            }
        }
        Ok(IsoVerdict::ProbablyNot)
    }

    pub fn isomorphic(&self, other: &Rep, budget: u64) -> Result<bool> {
        match self.isomorphism_verdict(other, budget)? {
            IsoVerdict::Isomorphic => Ok(true),
            IsoVerdict::NotIsomorphic => Ok(false),
            IsoVerdict::ProbablyNot => {
                log::warn!("isomorphism search sampled the hom space without success; answering false");
                Ok(false)
            }
        }
    }

    /// Semistable and isomorphic to the associated graded of its Jordan-Hölder filtration.
    pub fn is_polystable(&self, sigma: &Weight, budget: u64) -> Result<bool> {
        if !self.is_semistable(sigma, budget)? {
            return Ok(false);
        }
        let gr = self.polystable_reduction(sigma, budget)?;
        self.isomorphic(&gr, budget)
    }

    pub fn polystable_reduction(&self, sigma: &Weight, budget: u64) -> Result<Rep> {
        let filtration = self.jh_filtration(sigma, budget)?;
        self.associated_graded(&filtration)
    }
}

fn random_matrix<R: Rng>(f: &PrimeField, rows: usize, cols: usize, rng: &mut R) -> FpMatrix {
    let data = (0..rows * cols).map(|_| rng.gen_range(0..f.p())).collect();
    FpMatrix::from_rows(rows, cols, data)
}

/// Image of `v` in `F_p^n / s`, in coordinates on the non-pivot columns of `s`.
fn project(f: &PrimeField, s: &Subspace, v: &[u32]) -> Vec<u32> {
    let r = s.reduce(f, v);
    s.complement_columns().into_iter().map(|c| r[c]).collect()
}

/// Preimage in `F_p^n` of a subspace of `F_p^n / base`.
fn lift(f: &PrimeField, base: &Subspace, sub: &Subspace) -> Subspace {
    let n = base.ambient();
    let cols = base.complement_columns();
    let mut rows = base.basis_rows();
    for row in sub.basis_rows() {
        let mut v = vec![0; n];
        for (&c, x) in cols.iter().zip(row) {
            v[c] = x;
        }
        rows.push(v);
    }
    Subspace::span(f, n, &rows)
}

/// Outcome of an isomorphism search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoVerdict {
    Isomorphic,
    NotIsomorphic,
    /// Random sampling of the hom space found no isomorphism.
    ProbablyNot,
}

/// A chain `0 = W_0 < W_1 < ... < W_n = W` of subrepresentations with `sigma(W_i) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    pub steps: Vec<Vec<Subspace>>,
    pub dims: Vec<DimVector>,
    pub weight: Weight,
}

impl Filtration {
    pub fn len(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn factor_dims(&self) -> Vec<DimVector> {
        self.dims.windows(2).map(|w| w[1].sub(&w[0])).collect()
    }

    pub fn validate(&self, w: &Rep) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidFiltration(m.to_string()));
        if self.steps.is_empty() || self.steps.len() != self.dims.len() {
            return bad("steps and dimension vectors disagree");
        }
        if self.steps[0] != w.zero_family() || *self.steps.last().unwrap() != w.full_family() {
            return bad("must start at 0 and end at the whole representation");
        }
        let f = w.field();
        for (i, step) in self.steps.iter().enumerate() {
            w.check_subrep(step)?;
            let d = DimVector(step.iter().map(|s| s.dim() as u32).collect());
            if d != self.dims[i] {
                return bad("recorded dimension vector does not match step");
            }
            if !self.weight.eval(&d).is_zero() {
                return bad("step has nonzero weight");
            }
            if i > 0 {
                let prev = &self.steps[i - 1];
                if prev == step || !prev.iter().zip(step).all(|(a, b)| a.is_subspace_of(f, b)) {
                    return bad("steps are not strictly increasing");
                }
            }
        }
        Ok(())
    }
}
