//! Seeded random instance generators for tests and benchmarks.
//!
//! Heights live on a lattice `k / granularity` so generated files are exact
//! and human-readable. The random source is pinned for reproducibility
//! across platforms and languages:
//!
//! - stream: ChaCha8 keyed with the seed's little-endian bytes in the first
//!   8 bytes of the 32-byte key (remaining bytes zero), zero nonce;
//! - integers in `[0, m]` are drawn as `next_u64() % (m + 1)` (the modulo
//!   bias is negligible at these ranges and keeps the scheme portable);
//! - shuffles are Fisher-Yates from the highest index down.

use crate::instance::{BarChart, Instance};
use crate::rational::Rational;
use num_bigint::BigInt;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

fn rng_for(seed: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

fn draw(rng: &mut ChaCha8Rng, lo: u64, hi: u64) -> u64 {
    debug_assert!(lo <= hi);
    lo + rng.next_u64() % (hi - lo + 1)
}

fn lattice(numer: u64, granularity: u64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(granularity))
}

/// Smallest numerator strictly above half the lattice: `k/g > 1/2`.
fn big_floor(granularity: u64) -> u64 {
    granularity / 2 + 1
}

/// `n` charts, each with one bar drawn big (in `(1/2, 1]`) and the other
/// anywhere in `[0, 1]`; a coin flip decides which side is big.
pub fn gen_all_big(n: usize, seed: u64, granularity: u64) -> Instance {
    assert!(n >= 1 && granularity >= 2);
    let mut rng = rng_for(seed);
    let charts = (0..n)
        .map(|_| {
            let left_is_big = rng.next_u64() % 2 == 0;
            let big = draw(&mut rng, big_floor(granularity), granularity);
            let other = draw(&mut rng, 0, granularity);
            let (a, b) = if left_is_big { (big, other) } else { (other, big) };
            BarChart::new(lattice(a, granularity), lattice(b, granularity))
                .expect("lattice heights are in range")
        })
        .collect();
    Instance::new(charts).expect("n >= 1")
}

/// `n` charts with the left bar always big; the right bar is unconstrained
/// and may itself be big.
pub fn gen_first_big(n: usize, seed: u64, granularity: u64) -> Instance {
    assert!(n >= 1 && granularity >= 2);
    let mut rng = rng_for(seed);
    let charts = (0..n)
        .map(|_| {
            let a = draw(&mut rng, big_floor(granularity), granularity);
            let b = draw(&mut rng, 0, granularity);
            BarChart::new(lattice(a, granularity), lattice(b, granularity))
                .expect("lattice heights are in range")
        })
        .collect();
    Instance::new(charts).expect("n >= 1")
}

/// `2 * pair_count` big charts, shuffled, with a planted perfect pairing:
/// each planted pair fits two bins exactly as generated, so a maximum
/// matching has at least `pair_count` pairs.
pub fn gen_pairable(pair_count: usize, seed: u64, granularity: u64) -> Instance {
    assert!(pair_count >= 1 && granularity >= 2);
    let mut rng = rng_for(seed);
    let mut charts = Vec::with_capacity(2 * pair_count);
    for _ in 0..pair_count {
        let first_a = draw(&mut rng, big_floor(granularity), granularity);
        let second_a = draw(&mut rng, 0, granularity - first_a);
        let second_b = draw(&mut rng, big_floor(granularity), granularity);
        let first_b = draw(&mut rng, 0, granularity - second_b);
        charts.push(
            BarChart::new(lattice(first_a, granularity), lattice(first_b, granularity)).unwrap(),
        );
        charts.push(
            BarChart::new(lattice(second_a, granularity), lattice(second_b, granularity)).unwrap(),
        );
    }
    for i in (1..charts.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        charts.swap(i, j);
    }
    Instance::new(charts).expect("pair_count >= 1")
}
