//! The `2n + 1` smooth toric Fano `n`-folds carrying an invariant divisor
//! isomorphic to `P^{n-1}`, built explicitly as fans.

use std::fmt;

use itertools::Itertools;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fan::{Cone, Fan};
use crate::lattice::{Int, LatticeVector};

use super::analyze_divisor;

/// Which family of the classification an entry belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    /// `P^n` with a hyperplane, `d = 1`.
    I,
    /// `P(O ⊕ O(1)^{n-1})` over `P^1` (= `P^n` blown up along a linear
    /// `P^{n-2}`) with a fiber, `d = 0`.
    II,
    /// `P(O ⊕ O(ν))` over `P^{n-1}`, `0 <= ν <= n-1`, with a section, `d = ±ν`.
    III,
    /// Case III with parameter `ν + 1` blown up along a linear `P^{n-2}` in
    /// the section of positive degree, `0 <= ν <= n-2`; `d = ν` or `d = −ν−1`.
    IV,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::I => "i",
            CaseTag::II => "ii",
            CaseTag::III => "iii",
            CaseTag::IV => "iv",
        })
    }
}

/// A divisor `V(ray) ≅ P^{n-1}` with the normal degree the classification
/// assigns to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedDivisor {
    pub ray: usize,
    pub d: Int,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub case: CaseTag,
    pub nu: Option<usize>,
    pub fan: Fan,
    pub divisors: Vec<ExpectedDivisor>,
}

impl CatalogEntry {
    pub fn label(&self) -> String {
        match self.nu {
            Some(nu) => format!("({}) nu={nu}", self.case),
            None => format!("({})", self.case),
        }
    }

    /// Index of the exceptional ray of `P^n` blown up along `P^{n-2}` (case II).
    pub fn exceptional_ray(&self) -> Option<usize> {
        (self.case == CaseTag::II).then(|| self.fan.ray_count() - 1)
    }
}

/// Fan of `P(O ⊕ O(ν))` over `P^{n-1}`.
///
/// Rays in order: `f+ = e_n`, `f− = −e_n`, `b_i = e_i` (`i < n`),
/// `b_0 = (−1, …, −1, ν)`. `V(f+)` has normal degree `−ν`, `V(f−)` has `+ν`.
/// `ν` is not restricted, so boundary cases (`ν = n`) can be built too.
pub fn projective_bundle(n: usize, nu: i64) -> Fan {
    let mut rays = vec![LatticeVector::unit(n, n - 1), -&LatticeVector::unit(n, n - 1)];
    rays.extend((0..n - 1).map(|i| LatticeVector::unit(n, i)));
    let mut b0 = vec![-Int::one(); n];
    b0[n - 1] = Int::from(nu);
    rays.push(LatticeVector::new(b0));
    let base: Vec<usize> = (2..n + 2).collect();
    let cones = [0, 1]
        .into_iter()
        .flat_map(|f| {
            base.iter().copied().combinations(n - 1).map(move |mut c| {
                c.push(f);
                Cone::new(c)
            })
        })
        .collect();
    Fan::assemble(n, rays, cones)
}

/// `P^n` blown up along the linear `P^{n-2}` given by the cone `⟨e_1, e_2⟩`.
pub fn blown_up_projective_space(n: usize) -> Fan {
    Fan::projective_space(n).star_subdivide(&Cone::new(vec![0, 1])).expect("<e1,e2> is a face of P^n")
}

/// Case-IV fan: `P(O ⊕ O(ν+1))` blown up along `⟨f_s, b_1⟩`, where `f_s` is
/// the section whose divisor has degree `ν + 1`. Returns the fan and the
/// indices of `f_s` and the opposite section.
pub fn blown_up_bundle(n: usize, nu: usize) -> Result<(Fan, usize, usize)> {
    let base = projective_bundle(n, nu as i64 + 1);
    let target = Int::from(nu + 1);
    let mut positive = None;
    for f in [0, 1] {
        if analyze_divisor(&base, f)?.d.as_ref() == Some(&target) {
            positive = Some(f);
        }
    }
    let fs = positive.ok_or_else(|| Error::TheoremViolation("no section of degree nu+1".into()))?;
    let fan = base.star_subdivide(&Cone::new(vec![fs, 2]))?;
    Ok((fan, fs, 1 - fs))
}

/// All `2n + 1` entries, in the order (i), (ii), (iii) ν = 0..n−1,
/// (iv) ν = 0..n−2.
pub fn catalog(n: usize) -> Result<Vec<CatalogEntry>> {
    if !(3..=6).contains(&n) {
        return Err(Error::OutOfRange(format!("catalog dimension {n} outside 3..=6")));
    }
    let mut out = Vec::with_capacity(2 * n + 1);
    out.push(CatalogEntry {
        case: CaseTag::I,
        nu: None,
        fan: Fan::projective_space(n),
        divisors: (0..=n).map(|ray| ExpectedDivisor { ray, d: Int::one() }).collect(),
    });
    out.push(CatalogEntry {
        case: CaseTag::II,
        nu: None,
        fan: blown_up_projective_space(n),
        divisors: (0..2).map(|ray| ExpectedDivisor { ray, d: Int::from(0) }).collect(),
    });
    for nu in 0..n {
        let divisors = if nu == 0 {
            vec![ExpectedDivisor { ray: 0, d: Int::from(0) }, ExpectedDivisor { ray: 1, d: Int::from(0) }]
        } else {
            vec![ExpectedDivisor { ray: 0, d: -Int::from(nu) }, ExpectedDivisor { ray: 1, d: Int::from(nu) }]
        };
        out.push(CatalogEntry { case: CaseTag::III, nu: Some(nu), fan: projective_bundle(n, nu as i64), divisors });
    }
    for nu in 0..n - 1 {
        let (fan, fs, other) = blown_up_bundle(n, nu)?;
        out.push(CatalogEntry {
            case: CaseTag::IV,
            nu: Some(nu),
            fan,
            divisors: vec![
                ExpectedDivisor { ray: fs, d: Int::from(nu) },
                ExpectedDivisor { ray: other, d: -Int::from(nu + 1) },
            ],
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::fans_isomorphic;
    use crate::intersect::is_fano;

    #[test]
    fn sizes() {
        assert_eq!(catalog(3).unwrap().len(), 7);
        assert_eq!(catalog(4).unwrap().len(), 9);
        assert!(catalog(2).is_err());
        assert!(catalog(7).is_err());
    }

    #[test]
    fn every_entry_is_valid_and_fano() {
        for e in catalog(4).unwrap() {
            assert!(e.fan.validate().is_valid(), "{}", e.label());
            assert!(e.fan.is_smooth() && e.fan.is_complete(), "{}", e.label());
            assert!(is_fano(&e.fan).unwrap(), "{}", e.label());
        }
    }

    #[test]
    fn bundle_fano_boundary() {
        assert!(is_fano(&projective_bundle(3, 2)).unwrap());
        assert!(!is_fano(&projective_bundle(3, 3)).unwrap());
    }

    #[test]
    fn section_of_positive_degree_is_f_minus() {
        let (_, fs, other) = blown_up_bundle(3, 0).unwrap();
        assert_eq!((fs, other), (1, 0));
    }

    #[test]
    fn case_four_nu_zero_is_blown_up_product() {
        // P^1 x P^2 blown up along <u+, b1>
        let prod = projective_bundle(3, 0);
        let bl = prod.star_subdivide(&Cone::new(vec![0, 2])).unwrap();
        let (iv, _, _) = blown_up_bundle(3, 0).unwrap();
        assert!(fans_isomorphic(&bl, &iv).is_some());
    }
}
