//! GIT-cones, wall systems and the GIT-fan of a dimension vector.
//!
//! All semistability questions are answered by a [`RepModel`]: a finite list
//! of subrepresentation profiles (the set of subdimension vectors realised by
//! one representation). A representation is `sigma`-semistable iff `sigma`
//! vanishes on `beta` and is nonpositive on its profile, so profiles carry all
//! the information needed for `D_sigma` and for comparing semistable sets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cone::{chambers, Cone, Fan};
use crate::error::{Error, Result};
use crate::field::{FpMatrix, PrimeField};
use crate::genrep::Schofield;
use crate::linalg::{to_rat, IntVec};
use crate::quiver::{DimVector, Quiver, SubdimLattice, SubdimSet, Weight};
use crate::rep::Rep;
use crate::subspace::SubspaceCatalog;

/// How semistable representations are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Every representation over `F_p`.
    Oracle { p: u64 },
    /// For each `0 < g < beta`, `samples` seeded random representations over
    /// `F_p` with a planted `g`-dimensional subrepresentation, plus the
    /// profile of a general representation.
    Sampled { p: u64, samples: usize, seed: u64 },
}

impl Mode {
    pub fn p(&self) -> u64 {
        match *self {
            Mode::Oracle { p } | Mode::Sampled { p, .. } => p,
        }
    }

    pub fn is_oracle(&self) -> bool {
        matches!(self, Mode::Oracle { .. })
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Oracle { p } => write!(f, "oracle(p={p})"),
            Mode::Sampled { p, samples, seed } => write!(f, "sampled(p={p},samples={samples},seed={seed})"),
        }
    }
}

/// Distinct subrepresentation profiles of a finite family of representations.
#[derive(Debug, Clone)]
pub struct RepModel {
    beta: DimVector,
    lattice: SubdimLattice,
    mode: Mode,
    profiles: Vec<SubdimSet>,
    counts: Vec<u64>,
    representatives: Vec<Option<Rep>>,
}

impl RepModel {
    pub fn build(quiver: &Arc<Quiver>, beta: &DimVector, mode: Mode, budget: u64) -> Result<RepModel> {
        quiver.check_dim(beta)?;
        let field = PrimeField::new(mode.p())?;
        let catalog = SubspaceCatalog::new(field);
        let lattice = SubdimLattice::new(beta);
        let mut table: BTreeMap<SubdimSet, (u64, Option<Rep>)> = BTreeMap::new();
        let record = |rep: Rep, table: &mut BTreeMap<SubdimSet, (u64, Option<Rep>)>| -> Result<()> {
            let profile = rep.subrep_profile(&catalog, &lattice, budget)?;
            let entry = table.entry(profile).or_insert((0, None));
            entry.0 += 1;
            entry.1.get_or_insert(rep);
            Ok(())
        };
        match mode {
            Mode::Oracle { .. } => {
                for rep in Rep::enumerate_all(quiver.clone(), field, beta.clone(), budget)? {
                    record(rep, &mut table)?;
                }
            }
            Mode::Sampled { samples, seed, .. } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for g in beta.subvectors() {
                    if g.is_zero() || &g == beta {
                        continue;
                    }
                    for _ in 0..samples {
                        record(planted(quiver, &field, beta, &g, &mut rng)?, &mut table)?;
                    }
                }
                let schofield = Schofield::new(quiver);
                let mut general = SubdimSet::new(lattice.size());
                for g in beta.subvectors() {
                    if schofield.embeds(&g, beta)? {
                        general.insert(lattice.index(&g));
                    }
                }
                table.entry(general).or_insert((0, None));
            }
        }
        let mut profiles = Vec::with_capacity(table.len());
        let mut counts = Vec::with_capacity(table.len());
        let mut representatives = Vec::with_capacity(table.len());
        for (profile, (count, rep)) in table {
            profiles.push(profile);
            counts.push(count);
            representatives.push(rep);
        }
        Ok(RepModel {
            beta: beta.clone(),
            lattice,
            mode,
            profiles,
            counts,
            representatives,
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn lattice(&self) -> &SubdimLattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    pub fn profile(&self, i: usize) -> BTreeSet<DimVector> {
        self.profiles[i].iter().map(|k| self.lattice.vector(k)).collect()
    }

    /// Number of sampled or enumerated representations with profile `i`
    /// (0 for the general profile added in sampled mode).
    pub fn count(&self, i: usize) -> u64 {
        self.counts[i]
    }

    /// A representation realising profile `i`, if one was constructed.
    pub fn representative(&self, i: usize) -> Option<&Rep> {
        self.representatives[i].as_ref()
    }

    /// Lattice indices where `sigma` is positive, or `None` if `sigma(beta) != 0`.
    fn positive_set(&self, sigma: &Weight) -> Option<SubdimSet> {
        if !sigma.eval(&self.beta).is_zero() {
            return None;
        }
        let mut pos = SubdimSet::new(self.lattice.size());
        for (k, v) in self.lattice.iter().enumerate() {
            if sigma.eval(&v).is_positive() {
                pos.insert(k);
            }
        }
        Some(pos)
    }

    /// Indices of the `sigma`-semistable profiles.
    pub fn semistable(&self, sigma: &Weight) -> Vec<usize> {
        let Some(pos) = self.positive_set(sigma) else {
            return Vec::new();
        };
        (0..self.profiles.len())
            .filter(|&i| !self.profiles[i].intersects(&pos))
            .collect()
    }

    /// Union of the profiles of `sigma`-semistable representations.
    pub fn d_sigma(&self, sigma: &Weight) -> BTreeSet<DimVector> {
        let mut acc = SubdimSet::new(self.lattice.size());
        for i in self.semistable(sigma) {
            acc.union_with(&self.profiles[i]);
        }
        acc.iter().map(|k| self.lattice.vector(k)).collect()
    }
}

/// A random representation whose first `g(x)` basis vectors at each vertex span
/// a subrepresentation: each arrow matrix is `[[U, G], [0, V]]`.
fn planted<R: Rng>(quiver: &Arc<Quiver>, field: &PrimeField, beta: &DimVector, g: &DimVector, rng: &mut R) -> Result<Rep> {
    let maps = quiver
        .arrows()
        .iter()
        .map(|a| {
            let (rows, cols) = (beta.0[a.head] as usize, beta.0[a.tail] as usize);
            let (sub_rows, sub_cols) = (g.0[a.head] as usize, g.0[a.tail] as usize);
            let mut m = FpMatrix::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    if i >= sub_rows && j < sub_cols {
                        continue;
                    }
                    m.set(i, j, rng.gen_range(0..field.p()));
                }
            }
            m
        })
        .collect();
    Rep::new(quiver.clone(), *field, beta.clone(), maps)
}

/// A GIT-cone with the data that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GitConeRecord {
    pub weight: Weight,
    pub cone: Cone,
    pub d_sigma: BTreeSet<DimVector>,
    pub mode: Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WallKind {
    /// The hyperplane meets the relative interior of the effective cone.
    Interior,
    /// The hyperplane supports the effective cone along a proper face.
    Boundary,
    /// The hyperplane contains the effective cone.
    Degenerate,
}

impl fmt::Display for WallKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WallKind::Interior => "interior",
            WallKind::Boundary => "boundary",
            WallKind::Degenerate => "degenerate",
        })
    }
}

/// Candidate walls `sigma(b') = 0` sharing one section of the effective cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallClass {
    /// `H(b')` intersected with the effective cone.
    pub section: Cone,
    pub kind: WallKind,
    /// Member subdimension vectors with their `b' <-> beta` flag, lexicographic.
    pub members: Vec<(DimVector, bool)>,
}

impl WallClass {
    pub fn normal(&self) -> IntVec {
        self.members[0].0.to_int_vec()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallSystem {
    pub beta: DimVector,
    pub effective: Cone,
    pub classes: Vec<WallClass>,
}

impl WallSystem {
    pub fn interior(&self) -> impl Iterator<Item = &WallClass> {
        self.classes.iter().filter(|c| c.kind == WallKind::Interior)
    }
}

/// Check outcome in a [`FanReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanReport {
    pub mode: Mode,
    pub checks: Vec<CheckResult>,
}

impl FanReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Random points of the effective cone tested for coverage.
    pub coverage_points: usize,
    /// Integral weights with entries in `[-bound, bound]` are swept.
    pub bound: i64,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            coverage_points: 1000,
            bound: 4,
            seed: 0,
        }
    }
}

/// GIT computations for one quiver, dimension vector and mode.
#[derive(Debug, Clone)]
pub struct GitFanEngine {
    quiver: Arc<Quiver>,
    beta: DimVector,
    budget: u64,
    effective: Cone,
    embedded: Vec<DimVector>,
    model: RepModel,
}

impl GitFanEngine {
    pub fn new(quiver: Arc<Quiver>, beta: DimVector, mode: Mode, budget: u64) -> Result<GitFanEngine> {
        quiver.check_dim(&beta)?;
        if beta.is_zero() {
            return Err(Error::ZeroDimensionVector);
        }
        if beta.0.contains(&0) {
            log::warn!("dimension vector {beta} is not sincere");
        }
        let schofield = Schofield::new(&quiver);
        let effective = schofield.effective_cone(&beta)?;
        let embedded = schofield.embedded_subvectors(&beta)?;
        let model = RepModel::build(&quiver, &beta, mode, budget)?;
        log::debug!("{mode}: {} distinct subrepresentation profiles", model.len());
        Ok(GitFanEngine {
            quiver,
            beta,
            budget,
            effective,
            embedded,
            model,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn beta(&self) -> &DimVector {
        &self.beta
    }

    pub fn mode(&self) -> Mode {
        self.model.mode()
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn model(&self) -> &RepModel {
        &self.model
    }

    pub fn effective_cone(&self) -> &Cone {
        &self.effective
    }

    /// Proper nonzero `b' <-> beta`.
    pub fn embedded(&self) -> &[DimVector] {
        &self.embedded
    }

    pub fn is_effective(&self, sigma: &Weight) -> Result<bool> {
        self.quiver.check_weight(sigma)?;
        self.effective.contains(sigma.entries())
    }

    fn require_effective(&self, sigma: &Weight) -> Result<()> {
        if self.is_effective(sigma)? {
            Ok(())
        } else {
            Err(Error::NotEffective)
        }
    }

    pub fn d_sigma(&self, sigma: &Weight) -> Result<BTreeSet<DimVector>> {
        self.require_effective(sigma)?;
        Ok(self.model.d_sigma(sigma))
    }

    /// Indices of the `sigma`-semistable profiles of the model.
    pub fn semistable_set(&self, sigma: &Weight) -> Result<Vec<usize>> {
        self.quiver.check_weight(sigma)?;
        Ok(self.model.semistable(sigma))
    }

    /// `C(sigma) = { s : s(beta) = 0, s(b') <= 0 for b' in D_sigma }`.
    pub fn git_cone(&self, sigma: &Weight) -> Result<GitConeRecord> {
        let d_sigma = self.d_sigma(sigma)?;
        let ineqs: Vec<IntVec> = d_sigma.iter().map(DimVector::to_int_vec).collect();
        let cone = Cone::from_hrep(self.beta.len(), &[self.beta.to_int_vec()], &ineqs)?;
        Ok(GitConeRecord {
            weight: sigma.clone(),
            cone,
            d_sigma,
            mode: self.mode(),
        })
    }

    fn git_cone_at(&self, point: &[BigInt]) -> Result<Cone> {
        Ok(self.git_cone(&Weight::from_bigints(point))?.cone)
    }

    /// Mutual membership in the GIT-cones, cross-checked against direct
    /// comparison of the two semistable sets of the model.
    pub fn git_equivalent(&self, s1: &Weight, s2: &Weight) -> Result<bool> {
        let c1 = self.git_cone(s1)?;
        let c2 = self.git_cone(s2)?;
        let by_cones = c1.cone.contains(s2.entries())? && c2.cone.contains(s1.entries())?;
        let by_sets = self.model.semistable(s1) == self.model.semistable(s2);
        if by_cones != by_sets {
            return Err(Error::CrossCheck(format!(
                "GIT-cones say {by_cones} but semistable sets say {by_sets} for {s1} and {s2}"
            )));
        }
        Ok(by_cones)
    }

    /// The primitive integral weight on the ray through `sigma`.
    pub fn integral_witness(&self, sigma: &Weight) -> Result<Weight> {
        self.require_effective(sigma)?;
        Ok(Weight::from_bigints(&sigma.primitive_integral()))
    }

    pub fn wall_system(&self) -> Result<WallSystem> {
        Ok(WallSystem {
            beta: self.beta.clone(),
            effective: self.effective.clone(),
            classes: wall_classes(&self.beta, &self.effective, &self.embedded)?,
        })
    }

    /// Chambers of all non-degenerate candidate walls, merged into GIT-cones
    /// and closed under taking faces.
    pub fn git_fan(&self) -> Result<Fan> {
        let mut cones = BTreeSet::new();
        if self.effective.dim() == 0 {
            cones.insert(self.git_cone_at(&self.effective.relint_point())?);
        } else {
            let walls = self.wall_system()?;
            let hyperplanes: Vec<IntVec> = walls
                .classes
                .iter()
                .filter(|c| c.kind != WallKind::Degenerate)
                .map(WallClass::normal)
                .collect();
            let decomposition = chambers(&self.effective, &hyperplanes)?;
            log::debug!("{} chambers", decomposition.chambers.len());
            for chamber in &decomposition.chambers {
                cones.insert(self.git_cone_at(&chamber.relint_point())?);
            }
        }
        let mut probed = BTreeSet::new();
        let mut queue: Vec<Cone> = cones.iter().cloned().collect();
        while let Some(cone) = queue.pop() {
            for face in cone.faces() {
                if !probed.insert(face.clone()) {
                    continue;
                }
                let found = self.git_cone_at(&face.relint_point())?;
                if cones.insert(found.clone()) {
                    queue.push(found);
                }
            }
        }
        Ok(Fan::new(cones))
    }

    /// Checks a fan against the model: fan axioms, coverage of the effective
    /// cone, GIT-classes as relative interiors, and the number of distinct
    /// semistable sets.
    pub fn verify_fan(&self, fan: &Fan, config: &VerifyConfig) -> Result<FanReport> {
        let mut checks = Vec::new();

        let mut violations = fan.face_closure_violations();
        violations.extend(fan.intersection_violations());
        checks.push(check("fan-axioms", violations.is_empty(), violations.join("; ")));

        let outside: Vec<usize> = fan
            .cones()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_subset_of(&self.effective))
            .map(|(i, _)| i)
            .collect();
        checks.push(check(
            "support",
            outside.is_empty(),
            if outside.is_empty() {
                String::new()
            } else {
                format!("cones {outside:?} leave the effective cone")
            },
        ));

        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut missed = 0usize;
        let mut example = String::new();
        for _ in 0..config.coverage_points {
            let point = random_point(&self.effective, &mut rng);
            if !fan.covers(&point) {
                if missed == 0 {
                    example = format!(" e.g. {}", Weight::new(point.clone()));
                }
                missed += 1;
            }
        }
        checks.push(check(
            "coverage",
            missed == 0,
            format!("{missed} of {} sampled points uncovered{example}", config.coverage_points),
        ));

        let cone_sets: Vec<Vec<usize>> = fan
            .cones()
            .iter()
            .map(|c| self.model.semistable(&Weight::from_bigints(&c.relint_point())))
            .collect();
        let mut distinct: BTreeSet<Vec<usize>> = cone_sets.iter().cloned().collect();
        let mut failures = Vec::new();
        let mut swept = 0usize;
        for point in self.integral_sweep(config.bound)? {
            swept += 1;
            let sigma = Weight::from_bigints(&point);
            let set = self.model.semistable(&sigma);
            let rat = to_rat(&point);
            for (i, c) in fan.cones().iter().enumerate() {
                let equivalent = set == cone_sets[i];
                let inside = c.relint_contains(&rat)?;
                if equivalent != inside && failures.len() < 5 {
                    failures.push(format!(
                        "{sigma} vs cone {i}: equivalent={equivalent}, relative interior={inside}"
                    ));
                }
            }
            distinct.insert(set);
        }
        checks.push(check(
            "git-classes",
            failures.is_empty(),
            if failures.is_empty() {
                format!("{swept} effective integral weights in [-{b},{b}]", b = config.bound)
            } else {
                failures.join("; ")
            },
        ));
        checks.push(check(
            "semistable-sets",
            distinct.len() == fan.len(),
            format!("{} distinct semistable sets, {} cones", distinct.len(), fan.len()),
        ));
        Ok(FanReport {
            mode: self.mode(),
            checks,
        })
    }

    /// Effective integral weights with entries in `[-bound, bound]`, lexicographic.
    pub fn integral_sweep(&self, bound: i64) -> Result<Vec<IntVec>> {
        let n = self.beta.len();
        let mut out = Vec::new();
        let mut cur = vec![-bound; n];
        loop {
            let v: IntVec = cur.iter().map(|&x| BigInt::from(x)).collect();
            if self.effective.contains_int(&v)? {
                out.push(v);
            }
            let mut k = n;
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                if cur[k] < bound {
                    cur[k] += 1;
                    break;
                }
                cur[k] = -bound;
            }
        }
    }
}

/// Every hyperplane `sigma(b') = 0`, `0 < b' < beta`, grouped by its section of the effective cone.
pub fn wall_system(quiver: &Quiver, beta: &DimVector) -> Result<WallSystem> {
    let schofield = Schofield::new(quiver);
    let effective = schofield.effective_cone(beta)?;
    let embedded = schofield.embedded_subvectors(beta)?;
    Ok(WallSystem {
        beta: beta.clone(),
        classes: wall_classes(beta, &effective, &embedded)?,
        effective,
    })
}

fn wall_classes(beta: &DimVector, effective: &Cone, embedded: &[DimVector]) -> Result<Vec<WallClass>> {
    let mut classes: Vec<WallClass> = Vec::new();
    let mut index: BTreeMap<Cone, usize> = BTreeMap::new();
    for b in beta.subvectors() {
        if b.is_zero() || &b == beta {
            continue;
        }
        let h = b.to_int_vec();
        let kind = if effective.annihilated_by(&h) {
            WallKind::Degenerate
        } else {
            match effective.signs_of(&h) {
                (true, true) => WallKind::Interior,
                _ => WallKind::Boundary,
            }
        };
        let section = effective.restrict_to(&[h])?;
        let embeds = embedded.contains(&b);
        match index.get(&section) {
            Some(&i) => classes[i].members.push((b, embeds)),
            None => {
                index.insert(section.clone(), classes.len());
                classes.push(WallClass {
                    section,
                    kind,
                    members: vec![(b, embeds)],
                });
            }
        }
    }
    Ok(classes)
}

fn check(name: &str, pass: bool, detail: String) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        pass,
        detail,
    }
}

/// Random nonnegative rational combination of the rays plus a random lineality part.
fn random_point<R: Rng>(cone: &Cone, rng: &mut R) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); cone.ambient_dim()];
    let mut add = |g: &IntVec, c: BigRational| {
        for (o, x) in out.iter_mut().zip(g) {
            *o += &c * BigRational::from_integer(x.clone());
        }
    };
    for r in cone.rays() {
        add(r, BigRational::new(rng.gen_range(0..=24).into(), rng.gen_range(1..=7).into()));
    }
    for l in cone.lineality() {
        add(l, BigRational::new(rng.gen_range(-24..=24).into(), rng.gen_range(1..=7).into()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ints;
    use crate::rep::DEFAULT_BUDGET;

    const ORACLE: Mode = Mode::Oracle { p: 2 };

    fn engine(vertices: &[&str], arrows: &[(&str, &str, &str)], beta: &[u32], mode: Mode) -> GitFanEngine {
        let q = Quiver::new(vertices.iter().copied(), arrows.iter().copied()).unwrap();
        GitFanEngine::new(Arc::new(q), DimVector::new(beta.to_vec()), mode, DEFAULT_BUDGET).unwrap()
    }

    fn a2(mode: Mode) -> GitFanEngine {
        engine(&["x", "y"], &[("a", "x", "y")], &[1, 1], mode)
    }

    fn k2(beta: &[u32], mode: Mode) -> GitFanEngine {
        engine(&["x", "y"], &[("a", "x", "y"), ("b", "x", "y")], beta, mode)
    }

    fn s2(mode: Mode) -> GitFanEngine {
        engine(&["x", "y", "z"], &[("a", "x", "z"), ("b", "y", "z")], &[1, 1, 1], mode)
    }

    fn square(mode: Mode) -> GitFanEngine {
        engine(
            &["x", "y", "z", "w"],
            &[("a", "x", "z"), ("b", "x", "w"), ("c", "y", "z"), ("d", "y", "w")],
            &[1, 1, 1, 1],
            mode,
        )
    }

    fn w(v: &[i64]) -> Weight {
        Weight::from_ints(v)
    }

    fn dvs(vs: &[&[u32]]) -> BTreeSet<DimVector> {
        vs.iter().map(|v| DimVector::new(v.to_vec())).collect()
    }

    #[test]
    fn d_sigma_examples() {
        let e = a2(ORACLE);
        assert_eq!(e.d_sigma(&w(&[1, -1])).unwrap(), dvs(&[&[0, 0], &[0, 1], &[1, 1]]));
        assert_eq!(e.d_sigma(&w(&[0, 0])).unwrap().len(), 4);
        assert_eq!(e.d_sigma(&w(&[-1, 1])).unwrap_err(), Error::NotEffective);

        let e = s2(ORACLE);
        let d = e.d_sigma(&w(&[1, 0, -1])).unwrap();
        assert!(d.contains(&DimVector::new(vec![0, 1, 0])));
        assert!(d.contains(&DimVector::new(vec![0, 1, 1])));
        assert_eq!(e.d_sigma(&w(&[0, 0, 0])).unwrap().len(), 8);
    }

    #[test]
    fn git_cone_examples() {
        let e = s2(ORACLE);
        let c = e.git_cone(&w(&[1, 1, -2])).unwrap().cone;
        assert_eq!(c.rays(), &[ints(&[0, 1, -1]), ints(&[1, 0, -1])]);
        let c = e.git_cone(&w(&[1, 0, -1])).unwrap().cone;
        assert_eq!(c.rays(), &[ints(&[1, 0, -1])]);
        assert!(e.git_cone(&w(&[0, 0, 0])).unwrap().cone.is_zero());
    }

    #[test]
    fn git_equivalence_examples() {
        let e = s2(ORACLE);
        assert!(e.git_equivalent(&w(&[1, 1, -2]), &w(&[2, 1, -3])).unwrap());
        assert!(!e.git_equivalent(&w(&[1, 1, -2]), &w(&[1, 0, -1])).unwrap());
        for m in [2, 3, 5] {
            assert!(e.git_equivalent(&w(&[1, 1, -2]), &w(&[m, m, -2 * m])).unwrap());
        }
    }

    #[test]
    fn integral_witness_examples() {
        let e = a2(ORACLE);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(e.integral_witness(&Weight::new(vec![half.clone(), -half])).unwrap(), w(&[1, -1]));
        assert_eq!(e.integral_witness(&w(&[3, -3])).unwrap(), w(&[1, -1]));
        let e = s2(ORACLE);
        let sigma = Weight::new(vec![
            BigRational::new(2.into(), 3.into()),
            BigRational::new(1.into(), 3.into()),
            BigRational::from_integer((-1).into()),
        ]);
        assert_eq!(e.integral_witness(&sigma).unwrap(), w(&[2, 1, -3]));
    }

    #[test]
    fn wall_system_examples() {
        assert_eq!(a2(ORACLE).wall_system().unwrap().interior().count(), 0);

        let ws = square(ORACLE).wall_system().unwrap();
        let interior: Vec<Vec<DimVector>> = ws
            .interior()
            .map(|c| c.members.iter().map(|(d, _)| d.clone()).collect())
            .collect();
        let d = |v: &[u32]| DimVector::new(v.to_vec());
        assert_eq!(
            interior,
            vec![vec![d(&[0, 1, 0, 1]), d(&[1, 0, 1, 0])], vec![d(&[0, 1, 1, 0]), d(&[1, 0, 0, 1])]]
        );

        let ws = k2(&[2, 2], ORACLE).wall_system().unwrap();
        let class = ws
            .classes
            .iter()
            .find(|c| c.members.iter().any(|(m, _)| m == &d(&[1, 1])))
            .unwrap();
        assert_eq!(class.kind, WallKind::Degenerate);
        assert!(class.members.iter().any(|(m, e)| m == &d(&[1, 1]) && *e));
    }

    #[test]
    fn fan_examples() {
        let fan = a2(ORACLE).git_fan().unwrap();
        assert_eq!(fan.len(), 2);
        assert_eq!(fan.maximal_indices().len(), 1);

        let fan = s2(ORACLE).git_fan().unwrap();
        assert_eq!(fan.len(), 4);
        let dims: Vec<usize> = fan.cones().iter().map(Cone::dim).collect();
        assert_eq!(dims, vec![0, 1, 1, 2]);

        let fan = square(ORACLE).git_fan().unwrap();
        assert_eq!(fan.maximal_indices().len(), 4);
        assert!(fan.maximal_cones().all(|c| c.dim() == 3));
    }

    #[test]
    fn fans_verify() {
        for e in [a2(ORACLE), s2(ORACLE), square(ORACLE), k2(&[1, 1], ORACLE)] {
            let fan = e.git_fan().unwrap();
            let report = e.verify_fan(&fan, &VerifyConfig::default()).unwrap();
            assert!(report.passed(), "{report:?}");
        }
    }

    #[test]
    fn broken_fans_are_reported() {
        let e = s2(ORACLE);
        let fan = e.git_fan().unwrap();
        let without_ray = Fan::new(fan.cones().iter().filter(|c| c.dim() != 1 || c.rays()[0] != ints(&[0, 1, -1])).cloned());
        let report = e.verify_fan(&without_ray, &VerifyConfig::default()).unwrap();
        assert!(!report.checks[0].pass);

        let extra = Cone::from_vrep(3, &[ints(&[1, 0, -1]), ints(&[1, 1, -2])], &[]).unwrap();
        let overlapping = Fan::new(fan.cones().iter().cloned().chain([extra]));
        let report = e.verify_fan(&overlapping, &VerifyConfig::default()).unwrap();
        assert!(!report.checks[0].pass);
    }

    #[test]
    fn git_cones_stay_in_effective_cone() {
        for e in [a2(ORACLE), s2(ORACLE), square(ORACLE), k2(&[2, 2], ORACLE)] {
            for point in e.integral_sweep(2).unwrap() {
                let c = e.git_cone(&Weight::from_bigints(&point)).unwrap().cone;
                assert!(c.is_subset_of(e.effective_cone()));
                assert!(c.contains_int(&point).unwrap());
            }
        }
    }

    #[test]
    fn sampled_mode_matches_oracle_on_small_cases() {
        let sampled = Mode::Sampled {
            p: 101,
            samples: 16,
            seed: 7,
        };
        assert_eq!(s2(ORACLE).git_fan().unwrap(), s2(sampled).git_fan().unwrap());
        assert_eq!(a2(ORACLE).git_fan().unwrap(), a2(sampled).git_fan().unwrap());
    }
}
