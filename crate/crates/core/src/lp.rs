//! Exact feasibility for `A x = b, x >= 0` over the rationals.
//!
//! Phase-I simplex on a dense tableau with Bland's rule, so it terminates
//! without cycling. Sizes here are tiny (tens of rows and columns).

use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type Rational = BigRational;

/// Returns a non-negative solution of `rows · x = rhs`, or `None` if there
/// is none. All rows must have the same length.
pub fn find_nonnegative(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(rows.len(), rhs.len());
    let m = rows.len();
    let k = rows.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![Rational::zero(); k]);
    }
    let width = k + m;

    // tableau row i: [A_i | artificial identity | b_i], with b_i >= 0
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, (row, b)) in rows.iter().zip(rhs).enumerate() {
        assert_eq!(row.len(), k);
        let flip = b.is_negative();
        let mut t: Vec<Rational> = row.iter().map(|a| if flip { -a } else { a.clone() }).collect();
        t.extend((0..m).map(|j| if j == i { Rational::from_integer(1.into()) } else { Rational::zero() }));
        t.push(if flip { -b } else { b.clone() });
        tab.push(t);
    }
    let mut basis: Vec<usize> = (k..width).collect();

    // reduced costs of `minimize Σ artificials`, last entry is -objective
    let mut cost = vec![Rational::zero(); width + 1];
    for t in &tab {
        for j in 0..k {
            cost[j] -= &t[j];
        }
        cost[width] -= &t[width];
    }

    while let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) {
        // ratio test, ties broken by smallest basic variable
        let mut leave: Option<(usize, Rational)> = None;
        for (i, t) in tab.iter().enumerate() {
            if t[enter].is_positive() {
                let ratio = &t[width] / &t[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase I is bounded below by 0, so an entering column always has a pivot.
        let (r, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut tab, &mut cost, r, enter);
        basis[r] = enter;
    }

    if !cost[width].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); k];
    for (i, &b) in basis.iter().enumerate() {
        if b < k {
            x[b] = tab[i][width].clone();
        }
    }
    Some(x)
}

fn pivot(tab: &mut [Vec<Rational>], cost: &mut [Rational], r: usize, c: usize) {
    let inv = tab[r][c].recip();
    for v in tab[r].iter_mut() {
        *v = &*v * &inv;
    }
    let prow = tab[r].clone();
    for (i, t) in tab.iter_mut().enumerate() {
        if i != r && !t[c].is_zero() {
            let f = t[c].clone();
            for (v, p) in t.iter_mut().zip(&prow) {
                *v -= &f * p;
            }
        }
    }
    if !cost[c].is_zero() {
        let f = cost[c].clone();
        for (v, p) in cost.iter_mut().zip(&prow) {
            *v -= &f * p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn rows(a: &[&[i64]]) -> Vec<Vec<Rational>> {
        a.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
    }

    fn check(a: &[&[i64]], b: &[i64]) -> Option<Vec<Rational>> {
        let a = rows(a);
        let b: Vec<Rational> = b.iter().map(|&v| q(v)).collect();
        let x = find_nonnegative(&a, &b)?;
        for (row, rhs) in a.iter().zip(&b) {
            let lhs: Rational = row.iter().zip(&x).map(|(p, v)| p * v).sum();
            assert_eq!(&lhs, rhs);
        }
        assert!(x.iter().all(|v| !v.is_negative()));
        Some(x)
    }

    #[test]
    fn feasible_systems() {
        assert!(check(&[&[1, 1], &[1, -1]], &[2, 0]).is_some());
        assert!(check(&[&[1, 2, 3]], &[-6]).is_none());
        assert!(check(&[&[-1, -2, 3]], &[-6]).is_some());
        // redundant rows
        assert!(check(&[&[1, 1], &[2, 2]], &[1, 2]).is_some());
        assert!(check(&[&[1, 1], &[2, 2]], &[1, 3]).is_none());
    }

    #[test]
    fn cone_membership() {
        // (1,1) is in cone((1,0),(0,1)); (-1,1) is not
        assert!(check(&[&[1, 0], &[0, 1]], &[1, 1]).is_some());
        assert!(check(&[&[1, 0], &[0, 1]], &[-1, 1]).is_none());
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's classic cycling example (as equality form with slacks)
        let a: &[&[i64]] = &[&[1, -8, -1, 9, 1, 0, 0], &[2, -12, -1, 3, 0, 1, 0], &[0, 0, 1, 0, 0, 0, 1]];
        assert!(check(a, &[0, 0, 1]).is_some());
    }

    #[test]
    fn empty_system() {
        assert_eq!(find_nonnegative(&[], &[]), Some(vec![]));
    }
}
