//! Seeded random smooth complete fans, obtained from `P^n` by repeated star
//! subdivisions.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fan::{Cone, Fan};

/// `count` fans, each made by `1..=max_depth` random star subdivisions of
/// `P^n` along faces of dimension at least two (none when `max_depth == 0`).
/// The same arguments always give the same list.
pub fn random_corpus(n: usize, count: usize, max_depth: usize, seed: u64) -> Result<Vec<Fan>> {
    if !(3..=4).contains(&n) || count > 1000 || max_depth > 4 {
        return Err(Error::OutOfRange(format!(
            "corpus ({n}, {count}, {max_depth}) outside n in 3..=4, count <= 1000, depth <= 4"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let depth = if max_depth == 0 { 0 } else { rng.random_range(1..=max_depth) };
        let mut fan = Fan::projective_space(n);
        for _ in 0..depth {
            let cone = &fan.max_cones()[rng.random_range(0..fan.max_cones().len())];
            let r = rng.random_range(2..=n);
            let picked = sample(&mut rng, n, r).into_iter().map(|i| cone.rays()[i]).collect();
            fan = fan.star_subdivide(&Cone::new(picked))?;
        }
        debug_assert!(fan.is_smooth() && fan.is_complete());
        if !(fan.is_smooth() && fan.is_complete()) {
            return Err(Error::InvalidFan("corpus produced a fan that is not smooth and complete".into()));
        }
        out.push(fan);
    }
    Ok(out)
}
