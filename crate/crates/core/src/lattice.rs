//! Exact integer linear algebra on the lattice `N ≅ Z^n`.
//!
//! Everything here works over [`BigInt`] / [`BigRational`]; there is no
//! floating point anywhere in the kernel.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Integer type used for all lattice coordinates and intersection numbers.
pub type Int = BigInt;

/// An element of the lattice `N`, stored as integer coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(Vec<Int>);

impl LatticeVector {
    pub fn new(coords: Vec<Int>) -> Self {
        Self(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![Int::zero(); dim])
    }

    /// The `i`-th standard basis vector of `Z^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = Int::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Int> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Non-negative gcd of the coordinates (0 for the zero vector).
    pub fn content(&self) -> Int {
        self.0.iter().fold(Int::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Divides out the gcd of the coordinates.
    pub fn primitivize(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        let g = self.content();
        Ok(Self(self.0.iter().map(|c| c / &g).collect()))
    }

    pub fn dot(&self, other: &Self) -> Int {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, k: &Int) -> Self {
        Self(self.0.iter().map(|c| c * k).collect())
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.0.iter().cloned().map(BigRational::from_integer).collect()
    }
}

impl<const N: usize> From<[i64; N]> for LatticeVector {
    fn from(coords: [i64; N]) -> Self {
        Self(coords.iter().map(|&c| Int::from(c)).collect())
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(coords: Vec<i64>) -> Self {
        Self(coords.into_iter().map(Int::from).collect())
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: Self) -> LatticeVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: Self) -> LatticeVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn check_square(vectors: &[LatticeVector]) -> Result<usize> {
    let n = vectors.len();
    if n == 0 {
        return Err(Error::Dimension("empty vector family".into()));
    }
    if let Some(bad) = vectors.iter().position(|v| v.dim() != n) {
        return Err(Error::Dimension(format!("vector {bad} has dimension {}, expected {n}", vectors[bad].dim())));
    }
    Ok(n)
}

/// Determinant of the square matrix whose columns are `vectors` (Bareiss).
pub fn determinant(vectors: &[LatticeVector]) -> Result<Int> {
    let n = check_square(vectors)?;
    // rows of the transpose have the same determinant
    let mut m: Vec<Vec<Int>> = vectors.iter().map(|v| v.0.clone()).collect();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(Int::zero());
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    Ok(sign * &m[n - 1][n - 1])
}

/// True iff the `n` vectors of dimension `n` form a basis of `Z^n`.
pub fn is_unimodular(vectors: &[LatticeVector]) -> Result<bool> {
    Ok(determinant(vectors)?.abs().is_one())
}

/// Solves `Σ x_i · basis[i] = target` over the rationals.
///
/// Returns `None` when the basis is singular. The basis must be square.
pub fn solve_rational(basis: &[LatticeVector], target: &LatticeVector) -> Option<Vec<BigRational>> {
    let n = basis.len();
    if n == 0 || target.dim() != n || basis.iter().any(|b| b.dim() != n) {
        return None;
    }
    // augmented matrix, row r = coordinate r
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            let mut row: Vec<BigRational> = basis.iter().map(|b| BigRational::from_integer(b.0[r].clone())).collect();
            row.push(BigRational::from_integer(target.0[r].clone()));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        m[col][col..].iter_mut().for_each(|x| *x = &*x * &inv);
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Like [`solve_rational`] but only succeeds when the solution is integral.
pub fn solve_integral(basis: &[LatticeVector], target: &LatticeVector) -> Option<Vec<Int>> {
    solve_rational(basis, target)?.into_iter().map(|q| q.is_integer().then(|| q.to_integer())).collect()
}

/// A fixed surjection `N → N/Zv ≅ Z^{n-1}`.
///
/// Built by reducing `v` to a standard basis vector `e_p` (`p` = first
/// non-zero coordinate) with unimodular row operations (extended gcd on
/// coordinate pairs, left to right); the projection applies the same
/// operations to `w` and drops coordinate `p`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    /// Rows of the unimodular matrix `U` with `U v = ±e_p`, row `p` removed.
    rows: Vec<LatticeVector>,
}

impl QuotientMap {
    pub fn new(v: &LatticeVector) -> Result<Self> {
        if !v.is_primitive() {
            return Err(Error::NotPrimitive(v.to_string()));
        }
        let n = v.dim();
        // gcd accumulates in the first non-zero coordinate, so a standard
        // basis vector gives a plain coordinate drop
        let p = v.0.iter().position(|c| !c.is_zero()).expect("primitive vectors are non-zero");
        let mut x = v.0.clone();
        let mut u: Vec<Vec<Int>> = (0..n).map(|i| LatticeVector::unit(n, i).0).collect();
        for i in (0..n).filter(|&i| i != p) {
            if x[i].is_zero() {
                continue;
            }
            let egcd = x[p].extended_gcd(&x[i]);
            let (g, s, t) = (egcd.gcd, egcd.x, egcd.y);
            let a = &x[i] / &g;
            let b = &x[p] / &g;
            // [[s, t], [-a, b]] has determinant (s·x_p + t·x_i)/g = 1
            let row_p: Vec<Int> = (0..n).map(|j| &s * &u[p][j] + &t * &u[i][j]).collect();
            let row_i: Vec<Int> = (0..n).map(|j| &b * &u[i][j] - &a * &u[p][j]).collect();
            u[p] = row_p;
            u[i] = row_i;
            x[p] = g;
            x[i] = Int::zero();
        }
        debug_assert!(x[p].abs().is_one());
        Ok(Self { rows: u.into_iter().enumerate().filter(|&(i, _)| i != p).map(|(_, r)| LatticeVector(r)).collect() })
    }

    pub fn target_dim(&self) -> usize {
        self.rows.len()
    }

    pub fn project(&self, w: &LatticeVector) -> LatticeVector {
        LatticeVector(self.rows.iter().map(|r| r.dot(w)).collect())
    }
}

/// Image of `w` in `N/Zv`; see [`QuotientMap`].
pub fn quotient_project(v: &LatticeVector, w: &LatticeVector) -> Result<LatticeVector> {
    Ok(QuotientMap::new(v)?.project(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv<const N: usize>(c: [i64; N]) -> LatticeVector {
        LatticeVector::from(c)
    }

    #[test]
    fn primitivize_examples() {
        assert_eq!(lv([2, 4]).primitivize().unwrap(), lv([1, 2]));
        assert_eq!(lv([0, 0, 5]).primitivize().unwrap(), lv([0, 0, 1]));
        assert_eq!(lv([3, 5]).primitivize().unwrap(), lv([3, 5]));
        assert_eq!(lv([-4, 6]).primitivize().unwrap(), lv([-2, 3]));
        assert!(matches!(lv([0, 0]).primitivize(), Err(Error::ZeroVector)));
    }

    #[test]
    fn zero_vector_message() {
        let err = lv([0, 0, 0]).primitivize().unwrap_err();
        assert_eq!(err.to_string(), "zero vector has no primitive direction");
    }

    #[test]
    fn unimodular_examples() {
        assert!(is_unimodular(&[lv([1, 0]), lv([0, 1])]).unwrap());
        assert!(!is_unimodular(&[lv([1, 0]), lv([1, 2])]).unwrap());
        assert!(is_unimodular(&[lv([1, 1, 1]), lv([1, 0, 0]), lv([0, 1, 0])]).unwrap());
        assert!(is_unimodular(&[lv([1, 0]), lv([1, 2]), lv([0, 1])]).is_err());
        assert!(is_unimodular(&[lv([1, 0, 0]), lv([1, 2])]).is_err());
    }

    #[test]
    fn determinant_needs_pivoting() {
        // leading zero forces a row swap
        let d = determinant(&[lv([0, 1, 0]), lv([1, 0, 0]), lv([0, 0, 1])]).unwrap();
        assert_eq!(d, Int::from(-1));
        let d = determinant(&[lv([2, 0, 1]), lv([1, 3, 2]), lv([1, 1, 1])]).unwrap();
        // det [[2,1,1],[0,3,1],[1,2,1]] = 2(3-2) - 1(0-1) + 1(0-3) = 0
        assert_eq!(d, Int::from(0));
    }

    #[test]
    fn quotient_examples() {
        let v = lv([0, 0, 1]);
        assert_eq!(quotient_project(&v, &lv([1, 0, 0])).unwrap().dim(), 2);
        assert!(quotient_project(&v, &v).unwrap().is_zero());
        let q = QuotientMap::new(&v).unwrap();
        assert_eq!(q.project(&lv([1, 0, 0])), lv([1, 0]));
        assert_eq!(q.project(&lv([0, 1, 0])), lv([0, 1]));

        let v = lv([-1, -1, -1]);
        let q = QuotientMap::new(&v).unwrap();
        let s = &(&q.project(&lv([1, 0, 0])) + &q.project(&lv([0, 1, 0]))) + &q.project(&lv([0, 0, 1]));
        assert!(s.is_zero());
        assert!(q.project(&v).is_zero());
    }

    #[test]
    fn quotient_rejects_non_primitive() {
        assert!(matches!(QuotientMap::new(&lv([2, 0, 0])), Err(Error::NotPrimitive(_))));
    }

    #[test]
    fn solve_integral_detects_fractions() {
        let basis = [lv([1, 0]), lv([1, 2])];
        assert_eq!(solve_integral(&basis, &lv([2, 2])), Some(vec![Int::from(1), Int::from(1)]));
        assert_eq!(solve_integral(&basis, &lv([0, 1])), None);
        assert_eq!(solve_rational(&[lv([1, 1]), lv([2, 2])], &lv([1, 0])), None);
    }
}
