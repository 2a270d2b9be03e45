//! Recognition of invariant divisors isomorphic to `P^{n-1}`, simplification
//! of (variety, divisor) pairs by codimension-two blow-downs, and the
//! classifier that identifies a Fano fan carrying such a divisor with an
//! entry of [`catalog`].

mod catalog;
mod corpus;
mod verify;

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};

pub use catalog::{
    blown_up_bundle, blown_up_projective_space, catalog, projective_bundle, CaseTag, CatalogEntry, ExpectedDivisor,
};
pub use corpus::random_corpus;
pub use verify::{
    theorem1_check, verify_theorem2, EntryCheck, FixedPointReport, Theorem1Report, Theorem1Target, Theorem2Report,
};

use crate::error::{Error, Result};
use crate::fan::{fans_isomorphic, Cone, Fan, FanIsomorphism, Wall};
use crate::intersect::is_fano;
use crate::lattice::{Int, LatticeVector, QuotientMap};
use crate::mori::{contraction_shape, CurveClass, MoriCone};

/// The `(n−1)`-dimensional fan of `V(ray)`, living in `N / Z·ray`.
pub fn divisor_star_fan(fan: &Fan, ray: usize) -> Result<Fan> {
    fan.check_ray(ray)?;
    let quotient = QuotientMap::new(fan.ray(ray))?;
    let mut rays: Vec<LatticeVector> = Vec::new();
    let mut index: HashMap<LatticeVector, usize> = HashMap::new();
    let mut cones = Vec::new();
    for cone in fan.max_cones().iter().filter(|c| c.contains(ray)) {
        let mut star = Vec::with_capacity(cone.len() - 1);
        for &r in cone.rays().iter().filter(|&&r| r != ray) {
            let image = quotient.project(fan.ray(r)).primitivize()?;
            let next = rays.len();
            let i = *index.entry(image.clone()).or_insert_with(|| {
                rays.push(image);
                next
            });
            star.push(i);
        }
        cones.push(Cone::new(star));
    }
    let star = Fan::assemble(quotient.target_dim(), rays, cones);
    debug_assert!(star.validate().is_valid(), "star fan of a smooth fan is valid");
    Ok(star)
}

/// Whether `V(ray) ≅ P^{n-1}` and, if so, its normal degree `d` and the class
/// of a line in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorAnalysis {
    pub ray_index: usize,
    pub is_proj_space: bool,
    pub d: Option<Int>,
    /// Index (into [`Fan::walls`]) of the wall used as the line `l_D`.
    pub line_wall: Option<usize>,
    pub line_class: Option<CurveClass>,
}

pub fn analyze_divisor(fan: &Fan, ray: usize) -> Result<DivisorAnalysis> {
    fan.check_ray(ray)?;
    let star = divisor_star_fan(fan, ray)?;
    let walls = fan.walls()?;
    let is_proj_space = star.ray_count() == fan.dim() && star.is_smooth() && star.is_complete();
    if !is_proj_space {
        return Ok(DivisorAnalysis { ray_index: ray, is_proj_space, d: None, line_wall: None, line_class: None });
    }
    // walls containing the ray are the invariant curves inside V(ray)
    let mut lines = walls.iter().enumerate().filter(|(_, w)| w.contains(ray));
    let (first, w0) = lines.next().ok_or(Error::LineClassNotWellDefined(ray))?;
    let d = w0.relation_coeff(ray);
    if lines.any(|(_, w)| w.relation_coeff(ray) != d) {
        return Err(Error::LineClassNotWellDefined(ray));
    }
    Ok(DivisorAnalysis {
        ray_index: ray,
        is_proj_space,
        d: Some(d),
        line_wall: Some(first),
        line_class: Some(crate::mori::curve_class(fan, w0)),
    })
}

/// Every ray whose divisor is a projective space, with its analysis.
pub fn projective_divisors(fan: &Fan) -> Result<Vec<DivisorAnalysis>> {
    (0..fan.ray_count())
        .map(|r| analyze_divisor(fan, r))
        .filter(|a| a.as_ref().map_or(true, |a| a.is_proj_space))
        .collect()
}

fn require_projective(fan: &Fan, ray: usize) -> Result<(DivisorAnalysis, Int, CurveClass)> {
    let a = analyze_divisor(fan, ray)?;
    match (&a.d, &a.line_class) {
        (Some(d), Some(l)) => {
            let (d, l) = (d.clone(), l.clone());
            Ok((a, d, l))
        }
        _ => Err(Error::NotProjectiveSpace(ray)),
    }
}

fn is_transverse(cone: &MoriCone<'_>, i: usize, ray: usize, line: &CurveClass) -> bool {
    let w = &cone.walls()[i];
    w.is_apex(ray) && !w.contains(ray) && cone.is_mori_extremal(i) && !line.is_positive_multiple_of(cone.class(i))
}

fn transverse_in(cone: &MoriCone<'_>, ray: usize, line: &CurveClass) -> Option<usize> {
    (0..cone.walls().len()).find(|&i| is_transverse(cone, i, ray, line))
}

/// Every transverse Mori extremal wall of `V(ray)`, in wall order.
pub fn transverse_extremal_walls(fan: &Fan, ray: usize) -> Result<Vec<Wall>> {
    let (_, _, line) = require_projective(fan, ray)?;
    let cone = MoriCone::new(fan)?;
    Ok((0..cone.walls().len())
        .filter(|&i| is_transverse(&cone, i, ray, &line))
        .map(|i| cone.walls()[i].clone())
        .collect())
}

/// First Mori extremal wall meeting `V(ray)` transversally (the ray is an
/// apex, so `D · ω = 1`) whose class is not on the ray of `[l_D]`.
pub fn find_transverse_extremal(fan: &Fan, ray: usize) -> Result<Option<Wall>> {
    let (_, _, line) = require_projective(fan, ray)?;
    let cone = MoriCone::new(fan)?;
    Ok(transverse_in(&cone, ray, &line).map(|i| cone.walls()[i].clone()))
}

/// A codimension-two blow-down `X → X'` carrying `(D, d)` to `(D', d+1)`.
#[derive(Clone, Debug)]
pub struct SimplificationStep {
    /// The transverse Mori extremal wall, in the input fan.
    pub wall: Wall,
    /// Exceptional ray of the blow-down, indexed in the input fan.
    pub removed_ray: usize,
    pub result_fan: Fan,
    /// Index of `D'` in `result_fan`.
    pub result_divisor_ray: usize,
    pub input_d: Int,
    pub result_d: Int,
    /// The blow-up centre `Y ≅ P^{n-2}` (inside `D'`) as a cone of `result_fan`.
    pub center: Cone,
}

impl SimplificationStep {
    /// Wall coefficients of the two centre rays on a line of `Y`, i.e. the
    /// normal bundle degrees `(a, b)` of `Y` in the blown-down fan.
    pub fn center_normal_degrees(&self) -> Result<(Int, Int)> {
        normal_degrees_along(&self.result_fan, &self.center)
    }
}

/// Whether the invariant subvariety of a two-ray cone is `P^{n-2}`: its
/// star fan is complete of dimension `n-2` and has `n-1` rays exactly when
/// `n-1` distinct rays complete the cone to maximal cones.
pub fn center_is_projective(fan: &Fan, center: &Cone) -> bool {
    let others: BTreeSet<usize> = fan
        .max_cones()
        .iter()
        .filter(|c| center.is_face_of(c))
        .flat_map(|c| c.rays().iter().copied().filter(|r| !center.contains(*r)))
        .collect();
    center.len() == 2 && others.len() == fan.dim() - 1
}

/// Normal bundle degrees `(a, b)` of `Y = V(center) ≅ P^{n-2}` along a line
/// in `Y`: the wall coefficients of the two centre rays.
pub fn normal_degrees_along(fan: &Fan, center: &Cone) -> Result<(Int, Int)> {
    let &[p, q] = center.rays() else {
        return Err(Error::Dimension(format!("centre {center} is not of codimension two")));
    };
    let w = fan
        .walls()?
        .iter()
        .find(|w| w.contains(p) && w.contains(q))
        .ok_or_else(|| Error::NotAFace(center.rays().to_vec()))?;
    if !center_is_projective(fan, center) {
        return Err(Error::CenterNotProjective(center.rays().to_vec()));
    }
    Ok((w.relation_coeff(p), w.relation_coeff(q)))
}

#[derive(Clone, Debug)]
pub enum Simplification {
    Step(Box<SimplificationStep>),
    /// The transverse wall has all coefficients zero: `X` is a `P^1`-bundle
    /// with `D` as a section and nothing is contracted.
    Fibration {
        wall: Wall,
    },
    NoTransverseWall,
}

impl Simplification {
    pub fn step(&self) -> Option<&SimplificationStep> {
        match self {
            Simplification::Step(s) => Some(s),
            _ => None,
        }
    }
}

fn check_transverse_pattern(w: &Wall) -> Result<()> {
    let ok = w.is_fibration_pattern() || w.blow_down_ray().is_some();
    if ok {
        return Ok(());
    }
    Err(Error::TransversePattern {
        wall: w.wall_rays.clone(),
        coeffs: w.coeffs.iter().map(ToString::to_string).collect(),
    })
}

fn simplify_in(fan: &Fan, cone: &MoriCone<'_>, ray: usize, d: &Int, line: &CurveClass) -> Result<Simplification> {
    let Some(i) = transverse_in(cone, ray, line) else {
        return Ok(Simplification::NoTransverseWall);
    };
    let wall = cone.walls()[i].clone();
    debug_assert!(wall.relation_coeff(ray).is_one());
    check_transverse_pattern(&wall)?;
    if wall.is_fibration_pattern() {
        return Ok(Simplification::Fibration { wall });
    }
    let (result_fan, removed_ray) = fan.contract_codim2(&wall)?;
    let shift = |r: usize| if r > removed_ray { r - 1 } else { r };
    let result_divisor_ray = shift(ray);
    let center = Cone::new(vec![shift(wall.apex_a), shift(wall.apex_b)]);
    if !is_fano(&result_fan)? {
        return Err(Error::TheoremViolation(format!("blow-down along {wall} of a Fano fan is not Fano")));
    }
    let result_d = analyze_divisor(&result_fan, result_divisor_ray)?
        .d
        .ok_or_else(|| Error::TheoremViolation("image of the divisor is not a projective space".into()))?;
    if result_d != d + Int::one() {
        return Err(Error::TheoremViolation(format!("normal degree went from {d} to {result_d} under simplification")));
    }
    Ok(Simplification::Step(Box::new(SimplificationStep {
        wall,
        removed_ray,
        result_fan,
        result_divisor_ray,
        input_d: d.clone(),
        result_d,
        center,
    })))
}

/// Tries to simplify the pair `(X, V(ray))`.
pub fn simplify_pair(fan: &Fan, ray: usize) -> Result<Simplification> {
    let (_, d, line) = require_projective(fan, ray)?;
    if !is_fano(fan)? {
        return Err(Error::NotFano);
    }
    let cone = MoriCone::new(fan)?;
    simplify_in(fan, &cone, ray, &d, &line)
}

/// How the classifier reached its verdict.
#[derive(Clone, Debug)]
pub enum Route {
    /// `d >= 0` and `[l_D]` spans an extremal ray.
    ExtremalLine,
    /// A transverse extremal wall with all coefficients zero.
    Fibration { wall: Wall },
    /// One simplification, then the blown-down pair was classified.
    Simplified { step: Box<SimplificationStep>, inner: Box<Classification> },
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub case: CaseTag,
    pub nu: Option<usize>,
    /// Position of the matching entry in the catalog used.
    pub catalog_index: usize,
    /// Isomorphism from the input fan onto the catalog fan.
    pub witness: FanIsomorphism,
    pub d: Int,
    pub route: Route,
}

impl Classification {
    pub fn label(&self) -> String {
        match self.nu {
            Some(nu) => format!("({}) nu={nu}", self.case),
            None => format!("({})", self.case),
        }
    }

    /// Number of simplifications performed (0 or 1).
    pub fn depth(&self) -> usize {
        match &self.route {
            Route::Simplified { inner, .. } => 1 + inner.depth(),
            _ => 0,
        }
    }
}

/// Classifies the Fano fan `fan` carrying `V(ray) ≅ P^{n-1}` against a
/// freshly built catalog.
pub fn classify_fano_with_divisor(fan: &Fan, ray: usize) -> Result<Classification> {
    let entries = catalog(fan.dim())?;
    classify_with_catalog(fan, ray, &entries)
}

pub fn classify_with_catalog(fan: &Fan, ray: usize, entries: &[CatalogEntry]) -> Result<Classification> {
    classify_inner(fan, ray, entries, true)
}

fn classify_inner(fan: &Fan, ray: usize, entries: &[CatalogEntry], may_simplify: bool) -> Result<Classification> {
    let (analysis, d, line) = require_projective(fan, ray)?;
    if !is_fano(fan)? {
        return Err(Error::NotFano);
    }
    let n = fan.dim();
    let cone = MoriCone::new(fan)?;
    let line_wall = analysis.line_wall.expect("projective divisors carry a line");

    let (candidates, route): (Vec<(CaseTag, Option<usize>)>, Route) = if !d.is_negative() && cone.is_extremal(line_wall)
    {
        let candidates = if d.is_zero() {
            vec![(CaseTag::II, None), (CaseTag::III, Some(0))]
        } else if d.is_one() {
            // the contraction of [l_D] has no negative coefficients and
            // fibers of dimension n: X maps to a point
            let shape = contraction_shape(n, &cone.walls()[line_wall]);
            if shape.alpha != 0 || shape.beta != 0 {
                return Err(Error::TheoremViolation(format!(
                    "line of degree 1 contracts with alpha={} beta={}",
                    shape.alpha, shape.beta
                )));
            }
            vec![(CaseTag::I, None)]
        } else {
            return Err(Error::TheoremViolation(format!("extremal line class on V({ray}) with normal degree {d} > 1")));
        };
        (candidates, Route::ExtremalLine)
    } else {
        match simplify_in(fan, &cone, ray, &d, &line)? {
            Simplification::NoTransverseWall => {
                return Err(Error::TheoremViolation(format!(
                    "no transverse Mori extremal wall for V({ray}) with d={d}"
                )))
            }
            Simplification::Fibration { wall } => {
                let nu = d.abs().try_into().map_err(|_| Error::OutOfRange(format!("degree {d}")))?;
                (vec![(CaseTag::III, Some(nu))], Route::Fibration { wall })
            }
            Simplification::Step(step) => {
                if !may_simplify {
                    return Err(Error::TheoremViolation(format!("pair (X, V({ray})) simplifies twice in a row")));
                }
                let inner = classify_inner(&step.result_fan, step.result_divisor_ray, entries, false)?;
                let candidates = match inner.case {
                    CaseTag::I => vec![(CaseTag::II, None)],
                    CaseTag::III => {
                        let nu = if d.is_negative() { -&d - Int::one() } else { d.clone() };
                        let nu = nu.try_into().map_err(|_| Error::OutOfRange(format!("degree {d}")))?;
                        vec![(CaseTag::IV, Some(nu))]
                    }
                    other => return Err(Error::TheoremViolation(format!("simplification landed on case ({other})"))),
                };
                (candidates, Route::Simplified { step, inner: Box::new(inner) })
            }
        }
    };

    for (index, entry) in entries.iter().enumerate() {
        if entry.fan.dim() != n {
            continue;
        }
        let Some(witness) = fans_isomorphic(fan, &entry.fan) else {
            continue;
        };
        if !candidates.contains(&(entry.case, entry.nu)) {
            return Err(Error::TheoremViolation(format!(
                "fan matches catalog entry {} but the argument predicts {:?}",
                entry.label(),
                candidates
            )));
        }
        let image = witness.ray_map[ray];
        if !entry.divisors.iter().any(|e| e.ray == image && e.d == d) {
            return Err(Error::TheoremViolation(format!(
                "V({ray}) maps to ray {image} of {}, which is not a listed divisor with d={d}",
                entry.label()
            )));
        }
        return Ok(Classification { case: entry.case, nu: entry.nu, catalog_index: index, witness, d, route });
    }
    Err(Error::TheoremViolation(format!("no catalog match for V({ray}) with d={d}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mori::curve_class;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    /// P^1 x P^2 with the rays u+, u-, b1, b2, b0 used throughout the tests.
    fn p1_x_p2() -> Fan {
        Fan::new(
            3,
            vec![
                LatticeVector::from([1, 0, 0]),
                LatticeVector::from([-1, 0, 0]),
                LatticeVector::from([0, 1, 0]),
                LatticeVector::from([0, 0, 1]),
                LatticeVector::from([0, -1, -1]),
            ],
            vec![vec![0, 2, 3], vec![0, 3, 4], vec![0, 2, 4], vec![1, 2, 3], vec![1, 3, 4], vec![1, 2, 4]],
        )
        .unwrap()
    }

    fn point_blow_up() -> Fan {
        Fan::projective_space(3).star_subdivide(&Cone::new(vec![0, 1, 2])).unwrap()
    }

    #[test]
    fn star_fans() {
        let p3 = Fan::projective_space(3);
        let s = divisor_star_fan(&p3, 3).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.ray_count(), 3);
        let sum = s.rays().iter().fold(LatticeVector::zero(2), |a, r| &a + r);
        assert!(sum.is_zero());

        let s = divisor_star_fan(&point_blow_up(), 4).unwrap();
        assert_eq!((s.ray_count(), s.max_cones().len()), (3, 3));
        assert!(s.is_complete());

        let s = divisor_star_fan(&p1_x_p2(), 0).unwrap();
        assert!(fans_isomorphic(&s, &Fan::projective_space(2)).is_some());
    }

    #[test]
    fn divisor_degrees() {
        let a = analyze_divisor(&Fan::projective_space(3), 3).unwrap();
        assert!(a.is_proj_space);
        assert_eq!(a.d, Some(Int::one()));

        let a = analyze_divisor(&point_blow_up(), 4).unwrap();
        assert_eq!(a.d, Some(Int::from(-1)));

        for nu in 0..3i64 {
            let x = projective_bundle(3, nu);
            assert_eq!(analyze_divisor(&x, 0).unwrap().d, Some(Int::from(-nu)));
            assert_eq!(analyze_divisor(&x, 1).unwrap().d, Some(Int::from(nu)));
            assert!(!analyze_divisor(&x, 2).unwrap().is_proj_space);
        }
    }

    #[test]
    fn line_class_matches_degree() {
        let x = point_blow_up();
        let a = analyze_divisor(&x, 4).unwrap();
        let line = a.line_class.unwrap();
        assert_eq!(line.dots[4], a.d.unwrap());
        let w = &x.walls().unwrap()[a.line_wall.unwrap()];
        assert_eq!(curve_class(&x, w), line);
    }

    #[test]
    fn transverse_examples() {
        // P^1 x P^2 blown up along <u+, b1>; new ray w = 5
        let bl = p1_x_p2().star_subdivide(&Cone::new(vec![0, 2])).unwrap();
        let w = find_transverse_extremal(&bl, 0).unwrap().unwrap();
        assert_eq!(w.wall_rays, vec![3, 5]);
        assert_eq!((w.apex_a, w.apex_b), (0, 2));
        assert_eq!(w.coeffs, ints(&[0, -1]));

        let x = projective_bundle(3, 2);
        let w = find_transverse_extremal(&x, 0).unwrap().unwrap();
        assert!(w.is_apex(0) && w.is_fibration_pattern());

        assert!(find_transverse_extremal(&Fan::projective_space(3), 3).unwrap().is_none());
        assert!(matches!(find_transverse_extremal(&x, 2), Err(Error::NotProjectiveSpace(2))));
    }

    #[test]
    fn simplify_examples() {
        let prod = p1_x_p2();
        let bl = prod.star_subdivide(&Cone::new(vec![0, 2])).unwrap();
        let step = simplify_pair(&bl, 0).unwrap();
        let step = step.step().unwrap();
        assert_eq!(step.removed_ray, 5);
        assert_eq!(step.result_fan, prod);
        assert_eq!(step.result_divisor_ray, 0);
        assert_eq!((step.input_d.clone(), step.result_d.clone()), (Int::from(-1), Int::zero()));
        assert_eq!(step.center, Cone::new(vec![0, 2]));
        // the centre is a line in P^1 x P^2 with normal bundle O(0) + O(1)
        assert_eq!(step.center_normal_degrees().unwrap(), (Int::zero(), Int::one()));

        assert!(matches!(simplify_pair(&Fan::projective_space(3), 3).unwrap(), Simplification::NoTransverseWall));
        assert!(matches!(simplify_pair(&projective_bundle(3, 1), 0).unwrap(), Simplification::Fibration { .. }));
        assert!(matches!(simplify_pair(&projective_bundle(3, 3), 0), Err(Error::NotFano)));
    }

    #[test]
    fn classify_examples() {
        let c = classify_fano_with_divisor(&Fan::projective_space(3), 3).unwrap();
        assert_eq!((c.case, c.nu), (CaseTag::I, None));

        let c = classify_fano_with_divisor(&point_blow_up(), 4).unwrap();
        assert_eq!((c.case, c.nu), (CaseTag::III, Some(1)));

        let bl = p1_x_p2().star_subdivide(&Cone::new(vec![0, 2])).unwrap();
        let c = classify_fano_with_divisor(&bl, 0).unwrap();
        assert_eq!((c.case, c.nu), (CaseTag::IV, Some(0)));
        assert_eq!(c.depth(), 1);
        let Route::Simplified { inner, .. } = &c.route else { panic!("expected a simplification") };
        assert_eq!(inner.d, Int::zero());
    }

    #[test]
    fn classify_rejects_non_projective_divisor() {
        let x = projective_bundle(3, 1);
        assert!(matches!(classify_fano_with_divisor(&x, 2), Err(Error::NotProjectiveSpace(2))));
    }
}
