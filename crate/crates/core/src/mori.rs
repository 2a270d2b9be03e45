//! Curve classes, extremal rays of the Mori cone and the shape of the
//! associated contractions.
//!
//! `NE(X)` of a smooth projective toric variety is generated by the classes
//! of invariant curves, so extremality is decided among wall classes with an
//! exact LP.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fan::{Fan, Wall};
use crate::intersect::{anticanonical_degree, TDivisor};
use crate::lattice::Int;
use crate::lp;

/// Intersection numbers `D_ρ · C` against every prime invariant divisor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveClass {
    pub dots: Vec<Int>,
}

impl CurveClass {
    pub fn pair(&self, d: &TDivisor) -> Int {
        self.dots.iter().zip(&d.coeffs).map(|(a, b)| a * b).sum()
    }

    /// `other = λ · self` for some rational `λ > 0`.
    pub fn is_positive_multiple_of(&self, other: &CurveClass) -> bool {
        if self.dots.len() != other.dots.len() {
            return false;
        }
        let Some(k) = self.dots.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let (s, o) = (&self.dots[k], &other.dots[k]);
        if o.is_zero() || s.signum() != o.signum() {
            return false;
        }
        self.dots.iter().zip(&other.dots).all(|(x, y)| x * o == y * s)
    }

    pub fn scaled(&self, k: &Int) -> CurveClass {
        CurveClass { dots: self.dots.iter().map(|x| x * k).collect() }
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dots.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The class of `V(wall)`: 1 on both apexes, the wall coefficients on the
/// wall rays, 0 elsewhere.
pub fn curve_class(fan: &Fan, w: &Wall) -> CurveClass {
    let mut dots = vec![Int::zero(); fan.ray_count()];
    dots[w.apex_a] = Int::from(1);
    dots[w.apex_b] = Int::from(1);
    for (r, a) in w.wall_rays.iter().zip(&w.coeffs) {
        dots[*r] = a.clone();
    }
    CurveClass { dots }
}

/// `target` lies in the cone spanned by those `generators` that are not
/// positive multiples of it.
pub fn class_is_decomposable(target: &CurveClass, generators: &[CurveClass]) -> bool {
    let others: Vec<&CurveClass> = generators.iter().filter(|g| !target.is_positive_multiple_of(g)).collect();
    if others.is_empty() {
        return false;
    }
    let q = |v: &Int| BigRational::from_integer(v.clone());
    let rows: Vec<Vec<BigRational>> =
        (0..target.dots.len()).map(|r| others.iter().map(|g| q(&g.dots[r])).collect()).collect();
    let rhs: Vec<BigRational> = target.dots.iter().map(q).collect();
    lp::find_nonnegative(&rows, &rhs).is_some()
}

/// Walls, their classes and extremality flags, computed once per fan.
#[derive(Clone, Debug)]
pub struct MoriCone<'a> {
    fan: &'a Fan,
    walls: &'a [Wall],
    classes: Vec<CurveClass>,
    extremal: Vec<bool>,
}

impl<'a> MoriCone<'a> {
    pub fn new(fan: &'a Fan) -> Result<Self> {
        let walls = fan.walls()?;
        let classes: Vec<CurveClass> = walls.iter().map(|w| curve_class(fan, w)).collect();
        // distinct classes only; many walls share one
        let mut distinct: Vec<CurveClass> = Vec::new();
        let mut slot: HashMap<&CurveClass, usize> = HashMap::new();
        for c in &classes {
            if !slot.contains_key(c) {
                slot.insert(c, distinct.len());
                distinct.push(c.clone());
            }
        }
        let verdicts: Vec<bool> = distinct.par_iter().map(|c| !class_is_decomposable(c, &distinct)).collect();
        let extremal = classes.iter().map(|c| verdicts[slot[c]]).collect();
        Ok(Self { fan, walls, classes, extremal })
    }

    pub fn fan(&self) -> &Fan {
        self.fan
    }

    pub fn walls(&self) -> &'a [Wall] {
        self.walls
    }

    pub fn class(&self, wall: usize) -> &CurveClass {
        &self.classes[wall]
    }

    pub fn classes(&self) -> &[CurveClass] {
        &self.classes
    }

    pub fn is_extremal(&self, wall: usize) -> bool {
        self.extremal[wall]
    }

    pub fn is_mori_extremal(&self, wall: usize) -> bool {
        self.extremal[wall] && anticanonical_degree(&self.walls[wall]).is_positive()
    }

    /// Whether the ray spanned by `class` is extremal (it need not be a wall
    /// class itself, only a class of the fan).
    pub fn spans_extremal_ray(&self, class: &CurveClass) -> bool {
        !class_is_decomposable(class, &self.classes)
    }

    pub fn index_of(&self, wall: &Wall) -> Option<usize> {
        self.walls.iter().position(|w| w == wall)
    }
}

fn wall_position(fan: &Fan, w: &Wall) -> Result<usize> {
    fan.walls()?
        .iter()
        .position(|x| x == w)
        .ok_or_else(|| Error::InvalidFan(format!("wall {w} does not belong to this fan")))
}

pub fn is_extremal(fan: &Fan, w: &Wall) -> Result<bool> {
    let target = curve_class(fan, w);
    let classes: Vec<CurveClass> = fan.walls()?.iter().map(|x| curve_class(fan, x)).collect();
    Ok(!class_is_decomposable(&target, &classes))
}

pub fn is_mori_extremal(fan: &Fan, w: &Wall) -> Result<bool> {
    Ok(anticanonical_degree(w).is_positive() && is_extremal(fan, w)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ContractionKind {
    Fibration,
    Divisorial,
    Small,
}

impl fmt::Display for ContractionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ContractionKind::Fibration => "fibration",
            ContractionKind::Divisorial => "divisorial",
            ContractionKind::Small => "small",
        })
    }
}

/// Shape of the contraction of an extremal ray, read off the wall relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionInfo {
    /// Number of negative wall coefficients.
    pub alpha: usize,
    /// Number of non-positive wall coefficients.
    pub beta: usize,
    pub kind: ContractionKind,
    /// Dimension of the exceptional locus (birational case).
    pub exc_dim: Option<usize>,
    /// Dimension of the image of the exceptional locus (birational case).
    pub image_dim: Option<usize>,
    /// `P^{n-beta}-fibration` when the contraction is a fibration.
    pub fiber_note: Option<String>,
}

/// Fills in the contraction data for a wall assumed to be Mori extremal.
pub fn contraction_shape(n: usize, w: &Wall) -> ContractionInfo {
    let (alpha, beta) = w.sign_counts();
    let kind = match alpha {
        0 => ContractionKind::Fibration,
        1 => ContractionKind::Divisorial,
        _ => ContractionKind::Small,
    };
    let birational = alpha > 0;
    ContractionInfo {
        alpha,
        beta,
        kind,
        exc_dim: birational.then(|| n - alpha),
        image_dim: birational.then(|| beta - alpha),
        fiber_note: (!birational).then(|| format!("P^{}-fibration", n - beta)),
    }
}

pub fn contraction_info(fan: &Fan, w: &Wall) -> Result<ContractionInfo> {
    wall_position(fan, w)?;
    if !is_mori_extremal(fan, w)? {
        return Err(Error::NotMoriExtremal(w.wall_rays.clone()));
    }
    Ok(contraction_shape(fan.dim(), w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Cone;

    fn wall_index(fan: &Fan, rays: &[usize]) -> usize {
        let mut key = rays.to_vec();
        key.sort_unstable();
        fan.walls().unwrap().iter().position(|w| w.wall_rays == key).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn point_blow_up() -> Fan {
        Fan::projective_space(3).star_subdivide(&Cone::new(vec![0, 1, 2])).unwrap()
    }

    #[test]
    fn class_examples() {
        let p3 = Fan::projective_space(3);
        let w = &p3.walls().unwrap()[wall_index(&p3, &[0, 1])];
        assert_eq!(curve_class(&p3, w).dots, ints(&[1, 1, 1, 1]));

        let b = point_blow_up();
        let w = &b.walls().unwrap()[wall_index(&b, &[0, 1])];
        assert_eq!(curve_class(&b, w).dots, ints(&[0, 0, 0, 1, 1]));
        let w = &b.walls().unwrap()[wall_index(&b, &[4, 0])];
        assert_eq!(curve_class(&b, w).dots, ints(&[1, 1, 1, 0, -1]));
    }

    #[test]
    fn extremality_examples() {
        let p3 = Fan::projective_space(3);
        let cone = MoriCone::new(&p3).unwrap();
        assert!((0..p3.walls().unwrap().len()).all(|i| cone.is_mori_extremal(i)));

        let b = point_blow_up();
        let cone = MoriCone::new(&b).unwrap();
        let w = wall_index(&b, &[0, 3]);
        assert_eq!(cone.class(w).dots, ints(&[1, 1, 1, 1, 0]));
        assert!(!cone.is_extremal(w));
        let w = wall_index(&b, &[4, 0]);
        assert!(cone.is_extremal(w));
        assert!(cone.is_mori_extremal(w));
        assert!(is_extremal(&b, &b.walls().unwrap()[w]).unwrap());
    }

    #[test]
    fn extremality_is_scale_invariant() {
        let b = point_blow_up();
        let cone = MoriCone::new(&b).unwrap();
        for (i, c) in cone.classes().iter().enumerate() {
            let doubled = c.scaled(&Int::from(2));
            assert_eq!(cone.spans_extremal_ray(&doubled), cone.is_extremal(i));
        }
    }

    #[test]
    fn contraction_examples() {
        let b = point_blow_up();
        let w = &b.walls().unwrap()[wall_index(&b, &[0, 1])];
        let info = contraction_info(&b, w).unwrap();
        assert_eq!((info.alpha, info.beta, info.kind), (0, 2, ContractionKind::Fibration));
        assert_eq!(info.fiber_note.as_deref(), Some("P^1-fibration"));

        let w = &b.walls().unwrap()[wall_index(&b, &[4, 0])];
        let info = contraction_info(&b, w).unwrap();
        assert_eq!((info.alpha, info.beta, info.kind), (1, 1, ContractionKind::Divisorial));
        assert_eq!((info.exc_dim, info.image_dim), (Some(2), Some(0)));

        let line = Fan::projective_space(3).star_subdivide(&Cone::new(vec![0, 1])).unwrap();
        let w = line
            .walls()
            .unwrap()
            .iter()
            .find(|w| w.apex_a == 0 && w.apex_b == 1 && w.blow_down_ray().is_some())
            .unwrap();
        assert_eq!(w.blow_down_ray(), Some(4));
        let info = contraction_info(&line, w).unwrap();
        assert_eq!((info.alpha, info.beta, info.kind), (1, 2, ContractionKind::Divisorial));
        assert_eq!((info.exc_dim, info.image_dim), (Some(2), Some(1)));

        let w = &b.walls().unwrap()[wall_index(&b, &[0, 3])];
        assert!(matches!(contraction_info(&b, w), Err(Error::NotMoriExtremal(_))));
    }

    #[test]
    fn proportionality() {
        let a = CurveClass { dots: ints(&[1, 2, 0]) };
        assert!(a.is_positive_multiple_of(&CurveClass { dots: ints(&[3, 6, 0]) }));
        assert!(!a.is_positive_multiple_of(&CurveClass { dots: ints(&[-1, -2, 0]) }));
        assert!(!a.is_positive_multiple_of(&CurveClass { dots: ints(&[1, 2, 1]) }));
        assert!(!a.is_positive_multiple_of(&CurveClass { dots: ints(&[0, 0, 0]) }));
    }
}
