//! Core algorithms for the rejection-sampling graph-testing laboratory.
//!
//! The model: a hidden undirected graph `G` on `[n]` is queried with vertex
//! sets `L`; each query samples a uniform edge of `G` and returns its
//! intersection with `L` (empty, a lone vertex, or both endpoints), at cost
//! `|L|`. This crate provides:
//!
//! * the two hard graph families (disjoint half-cliques vs. complete
//!   bipartite over a hidden half-partition) and their exact `chi`
//!   parameters ([`graph`]),
//! * the metered oracle with transcripts ([`oracle`]),
//! * the odd-cycle distinguisher ([`distinguish`]),
//! * hard Boolean-function instances built over the graph families — a
//!   multiplexer into parity gadgets for the junta case ([`junta`]) and a
//!   Talagrand-style multiplexer into dictator / 3-parity gadgets for the
//!   unate case ([`unate`]),
//! * exact brute-force distance oracles (to k-juntas, to monotone via
//!   minimum cut, to unate) and empirical total-variation distance
//!   ([`distance`]),
//! * the three reductions from Boolean-function testing to rejection-sampling
//!   queries ([`reduce`]),
//! * transcript statistics over component structure, response counts, and
//!   balance ([`analytics`]).
//!
//! Everything is deterministic under explicit seeds (counter-based PRNG, see
//! [`rng`]) and all distances are exact rationals ([`frac::ExactFraction`]).
//!
//! The crate is `no_std` + `alloc`; IO, file formats and the CLI live in the
//! companion `rejsamp` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analytics;
pub mod boolfn;
pub mod distance;
pub mod distinguish;
mod error;
pub mod frac;
pub mod graph;
pub mod junta;
pub mod oracle;
pub mod reduce;
pub mod rng;
pub mod unate;

pub use error::Error;

/// Artifact version string embedded in report headers.
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Ceiling of log base 2, the log convention used throughout the crate.
///
/// `ceil_log2(1) = 0`, `ceil_log2(2) = 1`, `ceil_log2(5) = 3`.
pub fn ceil_log2(n: u64) -> u32 {
    assert!(n >= 1, "ceil_log2 of zero");
    64 - (n - 1).leading_zeros().min(64) as u32
}

/// Integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    // Newton iteration on integers: starting at a power of two >= sqrt(n),
    // the sequence decreases monotonically to floor(sqrt(n)).
    let mut x = 1u64 << (64 - n.leading_zeros()).div_ceil(2);
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// `sqrt` for `f64` without `std` (bit-level seed + Newton iterations;
/// accurate to ~1 ulp, ample for confidence intervals).
pub fn sqrt_f64(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    let mut y = f64::from_bits((x.to_bits() >> 1) + 0x1FF8_0000_0000_0000);
    for _ in 0..5 {
        y = 0.5 * (y + x / y);
    }
    y
}

/// Ceiling square root: smallest `s` with `s*s >= n`.
pub fn ceil_sqrt(n: u64) -> u64 {
    let f = isqrt(n);
    if f * f == n {
        f
    } else {
        f + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_log2_small_values() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(4), 2);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(ceil_log2(1024), 10);
        assert_eq!(ceil_log2(1025), 11);
    }

    #[test]
    fn isqrt_exhaustive_small() {
        for n in 0u64..10_000 {
            let s = isqrt(n);
            assert!(s * s <= n && (s + 1) * (s + 1) > n, "isqrt({n}) = {s}");
        }
        assert_eq!(isqrt(u64::MAX), (1u64 << 32) - 1);
    }

    #[test]
    fn sqrt_f64_close_to_std() {
        for x in [0.0, 1e-9, 0.25, 1.0, 2.0, 3.5, 1e6, 12345.678] {
            let got = sqrt_f64(x);
            let want = f64::sqrt(x);
            assert!((got - want).abs() <= 1e-12 * (1.0 + want), "sqrt({x}): {got} vs {want}");
        }
    }

    #[test]
    fn ceil_sqrt_matches_definition() {
        for n in 1u64..10_000 {
            let s = ceil_sqrt(n);
            assert!(s * s >= n && (s - 1) * (s - 1) < n);
        }
    }
}
