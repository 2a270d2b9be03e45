//! Simplicial fans in `N ≅ Z^n`: validation, smoothness, completeness,
//! walls with their integral relations, star subdivisions (blow-ups),
//! codimension-two blow-downs and fan isomorphism.
//!
//! Rays are identified by value; every index reported by this module refers
//! to the position of the ray in [`Fan::rays`].

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::{self, Int, LatticeVector};
use crate::lp;

/// A cone of a fan, given by sorted indices into the parent's ray list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone(Vec<usize>);

impl Cone {
    /// Sorts and deduplicates the indices.
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Self(indices)
    }

    pub fn rays(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, ray: usize) -> bool {
        self.0.binary_search(&ray).is_ok()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.0.iter().all(|&r| other.contains(r))
    }
}

impl From<Vec<usize>> for Cone {
    fn from(v: Vec<usize>) -> Self {
        Self::new(v)
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0.iter().join(","))
    }
}

/// One failed fan invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Dimension(usize),
    RayDimension { ray: usize, found: usize },
    ZeroRay { ray: usize },
    NonPrimitiveRay { ray: usize },
    DuplicateRay { first: usize, second: usize },
    ConeSize { cone: usize, size: usize },
    ConeIndex { cone: usize, index: usize },
    UnusedRay { ray: usize },
    DuplicateCone { first: usize, second: usize },
    NonSimplicial { cone: usize },
    Overlap { first: usize, second: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Dimension(d) => write!(f, "dimension {d} is not positive"),
            Violation::RayDimension { ray, found } => {
                write!(f, "ray {ray} has {found} coordinates")
            }
            Violation::ZeroRay { ray } => write!(f, "ray {ray} is the zero vector"),
            Violation::NonPrimitiveRay { ray } => write!(f, "ray {ray} not primitive"),
            Violation::DuplicateRay { first, second } => {
                write!(f, "ray {second} duplicates ray {first}")
            }
            Violation::ConeSize { cone, size } => write!(f, "cone {cone} has size {size}"),
            Violation::ConeIndex { cone, index } => {
                write!(f, "cone {cone} references missing ray {index}")
            }
            Violation::UnusedRay { ray } => write!(f, "ray {ray} lies in no maximal cone"),
            Violation::DuplicateCone { first, second } => {
                write!(f, "cone {second} duplicates cone {first}")
            }
            Violation::NonSimplicial { cone } => write!(f, "cone {cone} is not simplicial"),
            Violation::Overlap { first, second } => {
                write!(f, "cones {first} and {second} overlap")
            }
        }
    }
}

/// Outcome of [`validate_parts`]: empty means the fan is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub dim: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Human readable message for one violation; cone sizes carry the
    /// expected size as well.
    pub fn describe(&self, v: &Violation) -> String {
        match v {
            Violation::ConeSize { .. } => format!("{v}, expected {}", self.dim),
            _ => v.to_string(),
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        write!(f, "{}", self.violations.iter().map(|v| self.describe(v)).join("; "))
    }
}

/// Checks every fan invariant on raw data.
pub fn validate_parts(dim: usize, rays: &[LatticeVector], cones: &[Vec<usize>]) -> ValidationReport {
    let mut out = Vec::new();
    if dim == 0 {
        out.push(Violation::Dimension(dim));
    }
    let mut seen: HashMap<&LatticeVector, usize> = HashMap::new();
    for (i, r) in rays.iter().enumerate() {
        if r.dim() != dim {
            out.push(Violation::RayDimension { ray: i, found: r.dim() });
            continue;
        }
        if r.is_zero() {
            out.push(Violation::ZeroRay { ray: i });
        } else if !r.is_primitive() {
            out.push(Violation::NonPrimitiveRay { ray: i });
        }
        if let Some(&first) = seen.get(r) {
            out.push(Violation::DuplicateRay { first, second: i });
        } else {
            seen.insert(r, i);
        }
    }

    let mut used = vec![false; rays.len()];
    let mut cone_seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut structural_ok = out.is_empty();
    for (c, cone) in cones.iter().enumerate() {
        let mut sorted = cone.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if cone.len() != dim || sorted.len() != cone.len() {
            out.push(Violation::ConeSize { cone: c, size: sorted.len() });
            structural_ok = false;
        }
        for &idx in &sorted {
            if idx >= rays.len() {
                out.push(Violation::ConeIndex { cone: c, index: idx });
                structural_ok = false;
            } else {
                used[idx] = true;
            }
        }
        if let Some(&first) = cone_seen.get(&sorted) {
            out.push(Violation::DuplicateCone { first, second: c });
            structural_ok = false;
        } else {
            cone_seen.insert(sorted, c);
        }
    }
    for (i, u) in used.iter().enumerate() {
        if !u {
            out.push(Violation::UnusedRay { ray: i });
        }
    }
    if !structural_ok {
        return ValidationReport { dim, violations: out };
    }

    let mut simplicial = vec![true; cones.len()];
    for (c, cone) in cones.iter().enumerate() {
        let gens: Vec<LatticeVector> = cone.iter().map(|&i| rays[i].clone()).collect();
        if lattice::determinant(&gens).map_or(true, |d| d.is_zero()) {
            out.push(Violation::NonSimplicial { cone: c });
            simplicial[c] = false;
        }
    }
    for (a, b) in (0..cones.len()).tuple_combinations() {
        if simplicial[a] && simplicial[b] && !meet_in_common_face(rays, &cones[a], &cones[b]) {
            out.push(Violation::Overlap { first: a, second: b });
        }
    }
    ValidationReport { dim, violations: out }
}

/// Two simplicial cones meet in their common face iff some linear form is
/// zero on the shared rays, positive on the rest of `a` and negative on the
/// rest of `b`. Decided exactly as an LP feasibility problem.
fn meet_in_common_face(rays: &[LatticeVector], a: &[usize], b: &[usize]) -> bool {
    let dim = rays[a[0]].dim();
    let only_a: Vec<usize> = a.iter().copied().filter(|r| !b.contains(r)).collect();
    let only_b: Vec<usize> = b.iter().copied().filter(|r| !a.contains(r)).collect();
    let common: Vec<usize> = a.iter().copied().filter(|r| b.contains(r)).collect();
    let slacks = only_a.len() + only_b.len();
    let width = 2 * dim + slacks;
    let q = |v: &Int| BigRational::from_integer(v.clone());

    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    // variables: m⁺ (dim), m⁻ (dim), slacks
    let mut push = |ray: &LatticeVector, slack: Option<(usize, i64)>, target: i64| {
        let mut row = vec![BigRational::zero(); width];
        for (k, c) in ray.coords().iter().enumerate() {
            row[k] = q(c);
            row[dim + k] = -q(c);
        }
        if let Some((s, sign)) = slack {
            row[2 * dim + s] = BigRational::from_integer(sign.into());
        }
        rows.push(row);
        rhs.push(BigRational::from_integer(target.into()));
    };
    for (s, &r) in only_a.iter().enumerate() {
        push(&rays[r], Some((s, -1)), 1);
    }
    for (s, &r) in only_b.iter().enumerate() {
        push(&rays[r], Some((only_a.len() + s, 1)), -1);
    }
    for &r in &common {
        push(&rays[r], None, 0);
    }
    lp::find_nonnegative(&rows, &rhs).is_some()
}

/// A codimension-one cone shared by two maximal cones, i.e. an invariant
/// curve, together with its wall relation
/// `ray(apex_a) + ray(apex_b) + Σ coeffs[i] · ray(wall_rays[i]) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub wall_rays: Vec<usize>,
    pub apex_a: usize,
    pub apex_b: usize,
    pub coeffs: Vec<Int>,
    /// Indices of the two maximal cones meeting along the wall.
    pub cones: (usize, usize),
}

impl Wall {
    pub fn contains(&self, ray: usize) -> bool {
        self.wall_rays.contains(&ray)
    }

    pub fn is_apex(&self, ray: usize) -> bool {
        self.apex_a == ray || self.apex_b == ray
    }

    /// Coefficient of `ray` in the wall relation (apexes have 1, rays
    /// outside the two cones have 0).
    pub fn relation_coeff(&self, ray: usize) -> Int {
        if self.is_apex(ray) {
            return Int::one();
        }
        match self.wall_rays.iter().position(|&r| r == ray) {
            Some(i) => self.coeffs[i].clone(),
            None => Int::zero(),
        }
    }

    /// Counts of negative and non-positive wall coefficients.
    pub fn sign_counts(&self) -> (usize, usize) {
        let neg = self.coeffs.iter().filter(|c| c.is_negative()).count();
        let nonpos = self.coeffs.iter().filter(|c| !c.is_positive()).count();
        (neg, nonpos)
    }

    /// If exactly one coefficient is −1 and the rest are 0, the ray carrying
    /// the −1.
    pub fn blow_down_ray(&self) -> Option<usize> {
        let minus_one = -Int::one();
        let mut found = None;
        for (r, c) in self.wall_rays.iter().zip(&self.coeffs) {
            if *c == minus_one && found.is_none() {
                found = Some(*r);
            } else if !c.is_zero() {
                return None;
            }
        }
        found
    }

    pub fn is_fibration_pattern(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{}}} apexes {},{} coeffs [{}]",
            self.wall_rays.iter().join(","),
            self.apex_a,
            self.apex_b,
            self.coeffs.iter().join(",")
        )
    }
}

/// A fan of simplicial maximal cones of full dimension.
///
/// Instances built through [`Fan::new`] are always valid; operations return
/// new fans.
#[derive(Clone, Debug)]
pub struct Fan {
    dim: usize,
    rays: Vec<LatticeVector>,
    max_cones: Vec<Cone>,
    walls: OnceLock<Result<Vec<Wall>>>,
}

/// Same rays in the same order and the same set of maximal cones.
impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        let cones = |f: &Fan| f.max_cones.iter().cloned().collect::<BTreeSet<Cone>>();
        self.dim == other.dim
            && self.rays == other.rays
            && self.max_cones.len() == other.max_cones.len()
            && cones(self) == cones(other)
    }
}

impl Eq for Fan {}

impl Fan {
    /// Validates and builds a fan.
    pub fn new(dim: usize, rays: Vec<LatticeVector>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        let report = validate_parts(dim, &rays, &max_cones);
        if !report.is_valid() {
            return Err(Error::InvalidFan(report.to_string()));
        }
        Ok(Self::assemble(dim, rays, max_cones.into_iter().map(Cone::new).collect()))
    }

    /// Builds a fan from parts that are valid by construction.
    pub(crate) fn assemble(dim: usize, rays: Vec<LatticeVector>, max_cones: Vec<Cone>) -> Self {
        Self { dim, rays, max_cones, walls: OnceLock::new() }
    }

    /// The fan of `P^n`: rays `e_1, …, e_n, e_0 = −Σ e_i`, every `n`-subset a cone.
    pub fn projective_space(n: usize) -> Self {
        let mut rays: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
        rays.push(LatticeVector::new(vec![-Int::one(); n]));
        let cones = (0..=n).combinations(n).map(Cone::new).collect();
        Self::assemble(n, rays, cones)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &LatticeVector {
        &self.rays[i]
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    /// Rank of the Picard group of the (smooth complete) toric variety.
    pub fn picard_rank(&self) -> usize {
        self.rays.len() - self.dim
    }

    pub fn ray_index(&self, v: &LatticeVector) -> Option<usize> {
        self.rays.iter().position(|r| r == v)
    }

    pub fn check_ray(&self, index: usize) -> Result<()> {
        if index < self.rays.len() {
            Ok(())
        } else {
            Err(Error::RayIndex { index, rays: self.rays.len() })
        }
    }

    pub fn generators(&self, cone: &Cone) -> Vec<LatticeVector> {
        cone.rays().iter().map(|&i| self.rays[i].clone()).collect()
    }

    pub fn validate(&self) -> ValidationReport {
        let cones: Vec<Vec<usize>> = self.max_cones.iter().map(|c| c.0.clone()).collect();
        validate_parts(self.dim, &self.rays, &cones)
    }

    pub fn is_smooth(&self) -> bool {
        self.max_cones.iter().all(|c| lattice::is_unimodular(&self.generators(c)).unwrap_or(false))
    }

    /// Facets of maximal cones grouped by the cones containing them, with the
    /// apex completing the facet in each cone.
    fn facet_map(&self) -> BTreeMap<Vec<usize>, Vec<(usize, usize)>> {
        let mut map: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for (ci, cone) in self.max_cones.iter().enumerate() {
            for &apex in cone.rays() {
                let facet: Vec<usize> = cone.rays().iter().copied().filter(|&r| r != apex).collect();
                map.entry(facet).or_default().push((ci, apex));
            }
        }
        map
    }

    /// Every facet of a maximal cone lies in exactly two maximal cones and the
    /// adjacency graph is connected.
    pub fn is_complete(&self) -> bool {
        if self.max_cones.is_empty() {
            return false;
        }
        let map = self.facet_map();
        if map.values().any(|v| v.len() != 2) {
            return false;
        }
        let mut adj = vec![Vec::new(); self.max_cones.len()];
        for v in map.values() {
            adj[v[0].0].push(v[1].0);
            adj[v[1].0].push(v[0].0);
        }
        let mut seen = vec![false; self.max_cones.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(c) = stack.pop() {
            for &d in &adj[c] {
                if !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
        let complete = seen.iter().all(|&s| s);
        if cfg!(debug_assertions) && complete {
            debug_assert!(self.sampled_points_covered(24), "complete fan misses sample points");
        }
        complete
    }

    /// Sanity check: random integer vectors each lie in some maximal cone.
    fn sampled_points_covered(&self, samples: usize) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        (0..samples).all(|_| {
            let p = LatticeVector::new((0..self.dim).map(|_| Int::from(rng.random_range(-40i64..=40))).collect());
            self.max_cones.iter().any(|c| {
                lattice::solve_rational(&self.generators(c), &p).is_some_and(|x| x.iter().all(|v| !v.is_negative()))
            })
        })
    }

    /// All walls, sorted by their ray indices; cached after the first call.
    pub fn walls(&self) -> Result<&[Wall]> {
        self.walls.get_or_init(|| self.compute_walls()).as_deref().map_err(Clone::clone)
    }

    fn compute_walls(&self) -> Result<Vec<Wall>> {
        if !self.is_smooth() {
            return Err(Error::NotSmooth);
        }
        if !self.is_complete() {
            return Err(Error::NotComplete);
        }
        let mut out = Vec::new();
        for (facet, sides) in self.facet_map() {
            let (mut ca, mut a) = sides[0];
            let (mut cb, mut b) = sides[1];
            if b < a {
                std::mem::swap(&mut a, &mut b);
                std::mem::swap(&mut ca, &mut cb);
            }
            let mut basis = vec![self.rays[a].clone()];
            basis.extend(facet.iter().map(|&i| self.rays[i].clone()));
            let target = -&self.rays[b];
            let sol = lattice::solve_integral(&basis, &target)
                .filter(|x| x[0].is_one())
                .ok_or_else(|| Error::WallNotSmooth(facet.clone()))?;
            out.push(Wall { wall_rays: facet, apex_a: a, apex_b: b, coeffs: sol[1..].to_vec(), cones: (ca, cb) });
        }
        Ok(out)
    }

    /// Star subdivision along `center`: the blow-up along the invariant
    /// subvariety of the cone. The new ray is appended last.
    pub fn star_subdivide(&self, center: &Cone) -> Result<Fan> {
        if center.len() < 2 {
            return Err(Error::CenterTooSmall(center.len()));
        }
        if let Some(&bad) = center.rays().iter().find(|&&i| i >= self.rays.len()) {
            return Err(Error::RayIndex { index: bad, rays: self.rays.len() });
        }
        if !self.max_cones.iter().any(|c| center.is_face_of(c)) {
            return Err(Error::NotAFace(center.rays().to_vec()));
        }
        if !self.is_smooth() {
            return Err(Error::NotSmooth);
        }
        let w = center.rays().iter().skip(1).fold(self.rays[center.rays()[0]].clone(), |acc, &i| &acc + &self.rays[i]);
        if self.ray_index(&w).is_some() {
            return Err(Error::InvalidFan(format!("subdivision ray {w} already present")));
        }
        let new_index = self.rays.len();
        let mut rays = self.rays.clone();
        rays.push(w);
        let mut cones = Vec::with_capacity(self.max_cones.len() + center.len());
        for cone in &self.max_cones {
            if center.is_face_of(cone) {
                for &drop in center.rays() {
                    let mut c: Vec<usize> = cone.rays().iter().copied().filter(|&r| r != drop).collect();
                    c.push(new_index);
                    cones.push(Cone::new(c));
                }
            } else {
                cones.push(cone.clone());
            }
        }
        Ok(Fan::assemble(self.dim, rays, cones))
    }

    /// Smooth blow-down along a wall whose relation reads
    /// `ray(apex_a) + ray(apex_b) − ray(j) = 0`; removes ray `j` and merges
    /// the cone pairs `⟨j, apex_a, S⟩ / ⟨j, apex_b, S⟩` into `⟨apex_a, apex_b, S⟩`.
    ///
    /// Returns the blown-down fan and the index (in this fan) of the removed
    /// ray; rays after it shift down by one.
    pub fn contract_codim2(&self, wall: &Wall) -> Result<(Fan, usize)> {
        let j = wall.blow_down_ray().ok_or(Error::NotBlowDownWall)?;
        let (a, b) = (wall.apex_a, wall.apex_b);
        debug_assert_eq!(self.rays[j], &self.rays[a] + &self.rays[b]);

        // rest of the cone -> (apex seen, output slot)
        let mut pending: HashMap<Vec<usize>, (usize, usize)> = HashMap::new();
        let mut out_cones: Vec<Vec<usize>> = Vec::new();
        let mut merged_slots: Vec<usize> = Vec::new();
        for cone in &self.max_cones {
            if !cone.contains(j) {
                out_cones.push(cone.rays().to_vec());
                continue;
            }
            let (has_a, has_b) = (cone.contains(a), cone.contains(b));
            if has_a == has_b {
                return Err(Error::NotStarSubdivision);
            }
            let apex = if has_a { a } else { b };
            let rest: Vec<usize> = cone.rays().iter().copied().filter(|&r| r != j && r != apex).collect();
            match pending.remove(&rest) {
                Some((other, slot)) if other != apex => {
                    let mut c = rest;
                    c.extend([a, b]);
                    out_cones[slot] = c;
                }
                Some(_) => return Err(Error::NotStarSubdivision),
                None => {
                    merged_slots.push(out_cones.len());
                    out_cones.push(Vec::new());
                    pending.insert(rest, (apex, out_cones.len() - 1));
                }
            }
        }
        if !pending.is_empty() {
            return Err(Error::NotStarSubdivision);
        }
        let all: HashSet<Vec<usize>> = out_cones.iter().map(|c| Cone::new(c.clone()).0).collect();
        if all.len() != out_cones.len() {
            // a merged cone coincides with an existing one
            return Err(Error::NotStarSubdivision);
        }
        debug_assert!(merged_slots.iter().all(|&s| !out_cones[s].is_empty()));

        let reindex = |r: usize| if r > j { r - 1 } else { r };
        let mut rays = self.rays.clone();
        rays.remove(j);
        let cones: Vec<Cone> = out_cones.into_iter().map(|c| Cone::new(c.into_iter().map(reindex).collect())).collect();
        let out = Fan::assemble(self.dim, rays, cones);
        if !out.is_smooth() {
            return Err(Error::NotStarSubdivision);
        }
        debug_assert!(out.validate().is_valid(), "blow-down produced an invalid fan");
        Ok((out, j))
    }

    /// Equality after matching rays by value, ignoring their order.
    pub fn same_up_to_ray_order(&self, other: &Fan) -> bool {
        if self.dim != other.dim || self.rays.len() != other.rays.len() || self.max_cones.len() != other.max_cones.len()
        {
            return false;
        }
        let Some(map) = self.rays.iter().map(|r| other.ray_index(r)).collect::<Option<Vec<_>>>() else {
            return false;
        };
        let theirs: BTreeSet<&Cone> = other.max_cones.iter().collect();
        self.max_cones.iter().all(|c| theirs.contains(&Cone::new(c.rays().iter().map(|&r| map[r]).collect())))
    }

    /// Multiset of cone counts per ray, a cheap isomorphism invariant.
    fn degree_profile(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.rays.len()];
        for c in &self.max_cones {
            for &r in c.rays() {
                deg[r] += 1;
            }
        }
        deg.sort_unstable();
        deg
    }
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "fan in dimension {}", self.dim)?;
        for (i, r) in self.rays.iter().enumerate() {
            writeln!(f, "  ray {i}: {r}")?;
        }
        write!(f, "  cones: {}", self.max_cones.iter().join(" "))
    }
}

/// An integer matrix of determinant ±1, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularMatrix {
    rows: Vec<Vec<Int>>,
}

impl UnimodularMatrix {
    pub fn rows(&self) -> &[Vec<Int>] {
        &self.rows
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        LatticeVector::new(self.rows.iter().map(|row| row.iter().zip(v.coords()).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn determinant(&self) -> Int {
        let n = self.rows.len();
        let cols: Vec<LatticeVector> =
            (0..n).map(|j| LatticeVector::new(self.rows.iter().map(|r| r[j].clone()).collect())).collect();
        lattice::determinant(&cols).unwrap_or_default()
    }
}

/// Isomorphism witness: a unimodular `M` with `M · rays(f) = rays(g)` as sets
/// and mapping maximal cones onto maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanIsomorphism {
    pub matrix: UnimodularMatrix,
    /// `ray_map[i]` is the index in `g` of the image of ray `i` of `f`.
    pub ray_map: Vec<usize>,
}

/// Searches for a lattice automorphism carrying `f` onto `g`.
///
/// Anchors on the first maximal cone of `f` and tries every ordered maximal
/// cone of `g` as its image.
pub fn fans_isomorphic(f: &Fan, g: &Fan) -> Option<FanIsomorphism> {
    if f.dim != g.dim
        || f.rays.len() != g.rays.len()
        || f.max_cones.len() != g.max_cones.len()
        || f.max_cones.is_empty()
        || f.degree_profile() != g.degree_profile()
        || !f.is_smooth()
        || !g.is_smooth()
    {
        return None;
    }
    let n = f.dim;
    let anchor = f.generators(&f.max_cones[0]);
    // coordinates of e_j in the anchor basis
    let unit_coords: Vec<Vec<Int>> =
        (0..n).map(|j| lattice::solve_integral(&anchor, &LatticeVector::unit(n, j))).collect::<Option<_>>()?;
    let g_index: HashMap<&LatticeVector, usize> = g.rays.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let g_cones: HashSet<&Cone> = g.max_cones.iter().collect();

    for cone in &g.max_cones {
        for perm in cone.rays().iter().permutations(n) {
            let images: Vec<&LatticeVector> = perm.iter().map(|&&i| &g.rays[i]).collect();
            // column j of M is Σ_i λ_ij · image_i
            let cols: Vec<LatticeVector> = unit_coords
                .iter()
                .map(|lam| {
                    let mut acc = LatticeVector::zero(n);
                    for (l, img) in lam.iter().zip(&images) {
                        acc = &acc + &img.scale(l);
                    }
                    acc
                })
                .collect();
            let matrix = UnimodularMatrix {
                rows: (0..n).map(|r| cols.iter().map(|c| c.coords()[r].clone()).collect()).collect(),
            };
            let Some(ray_map) =
                f.rays.iter().map(|r| g_index.get(&matrix.apply(r)).copied()).collect::<Option<Vec<usize>>>()
            else {
                continue;
            };
            if ray_map.iter().collect::<BTreeSet<_>>().len() != ray_map.len() {
                continue;
            }
            let cones_ok = f.max_cones.iter().all(|c| {
                let image = Cone::new(c.rays().iter().map(|&r| ray_map[r]).collect());
                g_cones.contains(&image)
            });
            if cones_ok {
                return Some(FanIsomorphism { matrix, ray_map });
            }
        }
    }
    None
}
