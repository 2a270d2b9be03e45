//! Mechanical checks of the two classification results: per-fixed-point
//! blow-ups of a single fan, and the full catalog for one dimension.

use rayon::prelude::*;

use super::{analyze_divisor, catalog, classify_with_catalog, CaseTag, CatalogEntry, Classification};
use crate::error::{Error, Result};
use crate::fan::{fans_isomorphic, Cone, Fan, FanIsomorphism};
use crate::intersect::is_fano;
use crate::lattice::Int;

/// What `X` was identified as when some blow-up `B_x(X)` is Fano.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Theorem1Target {
    ProjectiveSpace,
    /// `P^n` blown up along a linear `P^{n-2}`, with the fixed point off the
    /// exceptional divisor.
    BlownUpProjectiveSpace,
}

#[derive(Clone, Debug)]
pub struct FixedPointReport {
    pub cone_index: usize,
    pub cone: Cone,
    pub blow_up_fano: bool,
    /// Label of the catalog entry matched by `(B_x(X), E)`.
    pub blow_up_case: Option<String>,
    pub identification: Option<Theorem1Target>,
    pub witness: Option<FanIsomorphism>,
    pub violation: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Theorem1Report {
    pub fan_is_fano: bool,
    pub points: Vec<FixedPointReport>,
    /// Violations not tied to a single fixed point.
    pub global_violations: Vec<String>,
}

impl Theorem1Report {
    pub fn fano_blow_ups(&self) -> usize {
        self.points.iter().filter(|p| p.blow_up_fano).count()
    }

    pub fn violations(&self) -> impl Iterator<Item = &str> {
        self.global_violations
            .iter()
            .map(String::as_str)
            .chain(self.points.iter().filter_map(|p| p.violation.as_deref()))
    }

    pub fn is_clean(&self) -> bool {
        self.violations().next().is_none()
    }
}

/// Blows up every torus-fixed point of `fan` and checks each Fano blow-up
/// against the two admissible targets.
pub fn theorem1_check(fan: &Fan) -> Result<Theorem1Report> {
    let n = fan.dim();
    if !(3..=6).contains(&n) {
        return Err(Error::OutOfRange(format!("dimension {n} outside 3..=6")));
    }
    if !fan.is_smooth() {
        return Err(Error::NotSmooth);
    }
    if !fan.is_complete() {
        return Err(Error::NotComplete);
    }
    let entries = catalog(n)?;
    let fan_is_fano = is_fano(fan)?;
    let points = fan
        .max_cones()
        .par_iter()
        .enumerate()
        .map(|(i, cone)| check_point(fan, i, cone, &entries))
        .collect::<Result<Vec<_>>>()?;
    let mut global_violations = Vec::new();
    if !fan_is_fano && points.iter().any(|p| p.blow_up_fano) {
        global_violations.push("a point blow-up is Fano but the fan itself is not".to_string());
    }
    Ok(Theorem1Report { fan_is_fano, points, global_violations })
}

fn check_point(fan: &Fan, cone_index: usize, cone: &Cone, entries: &[CatalogEntry]) -> Result<FixedPointReport> {
    let blown = fan.star_subdivide(cone)?;
    let mut report = FixedPointReport {
        cone_index,
        cone: cone.clone(),
        blow_up_fano: is_fano(&blown)?,
        blow_up_case: None,
        identification: None,
        witness: None,
        violation: None,
    };
    if !report.blow_up_fano {
        return Ok(report);
    }
    let exceptional = blown.ray_count() - 1;
    match classify_with_catalog(&blown, exceptional, entries) {
        Ok(c) => {
            report.blow_up_case = Some(c.label());
            if c.d != Int::from(-1) {
                report.violation = Some(format!("exceptional divisor has d={}, expected -1", c.d));
                return Ok(report);
            }
        }
        Err(e) => {
            report.violation = Some(format!("blow-up does not classify: {e}"));
            return Ok(report);
        }
    }
    let (pn, bl) = (&entries[0], &entries[1]);
    debug_assert!(pn.case == CaseTag::I && bl.case == CaseTag::II);
    if let Some(w) = fans_isomorphic(fan, &pn.fan) {
        report.identification = Some(Theorem1Target::ProjectiveSpace);
        report.witness = Some(w);
    } else if let Some(w) = fans_isomorphic(fan, &bl.fan) {
        let e = bl.exceptional_ray().expect("case (ii) has an exceptional ray");
        if cone.rays().iter().any(|&r| w.ray_map[r] == e) {
            report.violation = Some(format!("Fano blow-up at {cone}, which lies on the exceptional divisor"));
        } else {
            report.identification = Some(Theorem1Target::BlownUpProjectiveSpace);
        }
        report.witness = Some(w);
    } else {
        report.violation = Some(format!("Fano blow-up at {cone} of a fan that is neither target"));
    }
    Ok(report)
}

/// Outcome of checking one catalog entry.
#[derive(Clone, Debug)]
pub struct EntryCheck {
    pub label: String,
    pub smooth: bool,
    pub complete: bool,
    pub fano: bool,
    /// `(ray, expected d, measured d)` for each listed divisor.
    pub divisors: Vec<(usize, Int, Option<Int>)>,
    pub problems: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Theorem2Report {
    pub dim: usize,
    pub entries: Vec<EntryCheck>,
    /// Pairs of entry indices found isomorphic.
    pub isomorphic_pairs: Vec<(usize, usize)>,
}

impl Theorem2Report {
    pub fn is_clean(&self) -> bool {
        self.entries.len() == 2 * self.dim + 1
            && self.isomorphic_pairs.is_empty()
            && self.entries.iter().all(|e| e.problems.is_empty())
    }
}

fn check_entry(index: usize, entry: &CatalogEntry, entries: &[CatalogEntry]) -> Result<EntryCheck> {
    let fan = &entry.fan;
    let mut check = EntryCheck {
        label: entry.label(),
        smooth: fan.is_smooth(),
        complete: fan.is_complete(),
        fano: false,
        divisors: Vec::new(),
        problems: Vec::new(),
    };
    if !(check.smooth && check.complete) {
        check.problems.push("not smooth and complete".into());
        return Ok(check);
    }
    check.fano = is_fano(fan)?;
    if !check.fano {
        check.problems.push("not Fano".into());
    }
    for div in &entry.divisors {
        let got = analyze_divisor(fan, div.ray)?.d;
        if got.as_ref() != Some(&div.d) {
            check.problems.push(format!("V({}) has d={:?}, expected {}", div.ray, got, div.d));
        }
        check.divisors.push((div.ray, div.d.clone(), got));
        if check.fano {
            match classify_with_catalog(fan, div.ray, entries) {
                Ok(Classification { catalog_index, .. }) if catalog_index == index => {}
                Ok(c) => check.problems.push(format!("V({}) classifies as {}", div.ray, c.label())),
                Err(e) => check.problems.push(format!("V({}) does not classify: {e}", div.ray)),
            }
        }
    }
    Ok(check)
}

/// Builds the catalog for `n` and checks every entry and every pair.
pub fn verify_theorem2(n: usize) -> Result<Theorem2Report> {
    let entries = catalog(n)?;
    let checks =
        entries.par_iter().enumerate().map(|(i, e)| check_entry(i, e, &entries)).collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> =
        (0..entries.len()).flat_map(|i| (i + 1..entries.len()).map(move |j| (i, j))).collect();
    let isomorphic_pairs = pairs
        .into_par_iter()
        .filter(|&(i, j)| fans_isomorphic(&entries[i].fan, &entries[j].fan).is_some())
        .collect::<Vec<_>>();
    Ok(Theorem2Report { dim: n, entries: checks, isomorphic_pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{blown_up_projective_space, projective_bundle};

    #[test]
    fn projective_space_all_points() {
        let r = theorem1_check(&Fan::projective_space(3)).unwrap();
        assert_eq!(r.points.len(), 4);
        assert_eq!(r.fano_blow_ups(), 4);
        assert!(r.is_clean());
        assert!(r.points.iter().all(|p| p.identification == Some(Theorem1Target::ProjectiveSpace)));
        assert!(r.points.iter().all(|p| p.blow_up_case.as_deref() == Some("(iii) nu=1")));
    }

    #[test]
    fn line_blow_up_two_points() {
        let x = blown_up_projective_space(3);
        let r = theorem1_check(&x).unwrap();
        assert_eq!(r.points.len(), 6);
        assert_eq!(r.fano_blow_ups(), 2);
        assert!(r.is_clean());
        let e = x.ray_count() - 1;
        for p in &r.points {
            assert_eq!(p.blow_up_fano, !p.cone.contains(e), "{}", p.cone);
        }
    }

    #[test]
    fn bundle_no_points() {
        let r = theorem1_check(&projective_bundle(3, 2)).unwrap();
        assert_eq!(r.fano_blow_ups(), 0);
        assert!(r.is_clean());
    }

    #[test]
    fn catalog_three_is_clean() {
        let r = verify_theorem2(3).unwrap();
        for e in &r.entries {
            assert!(e.problems.is_empty(), "{}: {:?}", e.label, e.problems);
        }
        assert!(r.is_clean());
    }
}
