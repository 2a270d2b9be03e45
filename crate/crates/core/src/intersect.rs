//! Intersection numbers of invariant divisors with invariant curves, and the
//! toric ampleness / Fano criteria (strict positivity on every wall).

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fan::{Fan, Wall};
use crate::lattice::Int;

/// An invariant divisor `Σ coeffs[ρ] · V(ρ)`, aligned with the fan's rays.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TDivisor {
    pub coeffs: Vec<Int>,
}

impl TDivisor {
    pub fn new(coeffs: Vec<Int>) -> Self {
        Self { coeffs }
    }

    pub fn zero(rays: usize) -> Self {
        Self { coeffs: vec![Int::zero(); rays] }
    }

    /// The prime divisor `V(ray)`.
    pub fn prime(rays: usize, ray: usize) -> Self {
        let mut d = Self::zero(rays);
        d.coeffs[ray] = Int::one();
        d
    }

    /// `−K_X`: coefficient 1 on every ray.
    pub fn anticanonical(rays: usize) -> Self {
        Self { coeffs: vec![Int::one(); rays] }
    }

    /// The principal divisor of the character `m`: coefficients `⟨m, ray⟩`.
    pub fn principal(fan: &Fan, m: &[Int]) -> Self {
        Self { coeffs: fan.rays().iter().map(|r| r.coords().iter().zip(m).map(|(a, b)| a * b).sum()).collect() }
    }
}

impl std::ops::Add for &TDivisor {
    type Output = TDivisor;
    fn add(self, rhs: Self) -> TDivisor {
        TDivisor { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

fn check_size(fan: &Fan, d: &TDivisor) -> Result<()> {
    if d.coeffs.len() != fan.ray_count() {
        return Err(Error::DivisorSize { divisor: d.coeffs.len(), rays: fan.ray_count() });
    }
    Ok(())
}

fn dot_unchecked(d: &TDivisor, w: &Wall) -> Int {
    let mut s = &d.coeffs[w.apex_a] + &d.coeffs[w.apex_b];
    for (r, a) in w.wall_rays.iter().zip(&w.coeffs) {
        s += a * &d.coeffs[*r];
    }
    s
}

/// `D · C` for the invariant curve `C = V(wall)`.
pub fn divisor_dot_curve(fan: &Fan, d: &TDivisor, w: &Wall) -> Result<Int> {
    check_size(fan, d)?;
    Ok(dot_unchecked(d, w))
}

/// `−K_X · C = 2 + Σ a_i`.
pub fn anticanonical_degree(w: &Wall) -> Int {
    Int::from(2) + w.coeffs.iter().sum::<Int>()
}

/// Result of scanning a divisor against every wall.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityScan {
    pub ample: bool,
    pub nef: bool,
    /// `(wall index, degree)` for walls of degree `<= 0`, in wall order.
    pub nonpositive: Vec<(usize, Int)>,
}

/// Degree of `d` on every wall, in [`Fan::walls`] order.
pub fn wall_degrees(fan: &Fan, d: &TDivisor) -> Result<Vec<Int>> {
    check_size(fan, d)?;
    let walls = fan.walls()?;
    Ok(walls.par_iter().map(|w| dot_unchecked(d, w)).collect())
}

pub fn positivity_scan(fan: &Fan, d: &TDivisor) -> Result<PositivityScan> {
    let degrees = wall_degrees(fan, d)?;
    let nonpositive: Vec<(usize, Int)> =
        degrees.into_iter().enumerate().filter(|(_, deg)| !deg.is_positive()).collect();
    Ok(PositivityScan {
        ample: nonpositive.is_empty(),
        nef: nonpositive.iter().all(|(_, deg)| !deg.is_negative()),
        nonpositive,
    })
}

pub fn is_ample(fan: &Fan, d: &TDivisor) -> Result<bool> {
    Ok(positivity_scan(fan, d)?.ample)
}

pub fn is_nef(fan: &Fan, d: &TDivisor) -> Result<bool> {
    Ok(positivity_scan(fan, d)?.nef)
}

/// `−K_X` ample. Requires a smooth complete fan.
pub fn is_fano(fan: &Fan) -> Result<bool> {
    Ok(fan.walls()?.iter().all(|w| anticanonical_degree(w).is_positive()))
}
