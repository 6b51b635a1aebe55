//! Shared fixtures for the kernel benchmarks.

use simplexkit::cayley::{delta_family_i64, scramble};
use simplexkit::{IntMatrix, LatticeSimplex};

/// Deterministic pseudo-random integer matrix with entries in [-9, 9].
pub fn mixing_matrix(n: usize, seed: u64) -> IntMatrix {
    let mut state = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % 19) as i64 - 9
    };
    let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| next()).collect()).collect();
    IntMatrix::from_i64_rows(&rows)
}

/// A scrambled family simplex, the standard decomposition workload.
pub fn scrambled_family(a: &[i64], n: i64, seed: u64) -> LatticeSimplex {
    let s = delta_family_i64(a, n).expect("valid parameters");
    scramble(&s, seed).0
}
