use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{cell_count, coords_of, index_of, MeasureTower, Result};
use crate::exactq::Rational;
use crate::padic::{check_prime, pow_u64};

/// A random bounded tower with values in `l^-d Z`, built top-down: each
/// level-`n` value is split into `l^r` random level-`(n+1)` values summing
/// to it. With `zero_mass` the total mass is 0.
pub fn synthetic_tower(
    ell: u64,
    rank: usize,
    depth: usize,
    d: u32,
    zero_mass: bool,
    seed: u64,
) -> Result<MeasureTower> {
    check_prime(ell)?;
    cell_count(ell, rank, depth)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spread = (ell * ell) as i64;
    let scale = BigInt::from(pow_u64(ell, d));
    // numerators over the common denominator l^d
    let mut current: Vec<i64> = vec![if zero_mass { 0 } else { rng.gen_range(-spread..=spread) }];
    let children = pow_u64(ell, rank as u32) as usize;
    for n in 0..depth {
        let side_next = pow_u64(ell, n as u32 + 1);
        let mut next = vec![0i64; current.len() * children];
        for (i, &v) in current.iter().enumerate() {
            let base = coords_of(ell, rank, n, i);
            let mut remaining = v;
            for c in 0..children {
                // the c-th child of `base`: add l^n * (digit of c) per coordinate
                let digits = coords_of(ell, rank, 1, c);
                let child: Vec<u64> =
                    base.iter().zip(&digits).map(|(&b, &dg)| (b + dg * pow_u64(ell, n as u32)) % side_next).collect();
                let val = if c + 1 == children {
                    remaining
                } else {
                    let r = rng.gen_range(-spread..=spread);
                    remaining -= r;
                    r
                };
                next[index_of(ell, n + 1, &child)] = val;
            }
        }
        current = next;
    }
    let top = current.into_iter().map(|k| Rational::new(BigInt::from(k), scale.clone())).collect();
    MeasureTower::from_top_level(ell, rank, depth, top)
}
