//! Exact rational values in `[0, 1]`.
//!
//! Distances between Boolean functions and the graph `chi` parameters are
//! exact fractions, never floats. Comparison is exact cross-multiplication;
//! values are kept reduced so `u128` cross products cannot overflow at the
//! crate's capacity caps (denominators at most `2^24 * |E|`).

use core::cmp::Ordering;
use core::fmt;

/// An exact rational in `[0, 1]`, stored reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactFraction {
    num: u128,
    den: u128,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl ExactFraction {
    pub const ZERO: ExactFraction = ExactFraction { num: 0, den: 1 };
    pub const ONE: ExactFraction = ExactFraction { num: 1, den: 1 };

    /// Construct `num/den`, reduced. Panics if `den == 0` or value > 1.
    pub fn new(num: u128, den: u128) -> ExactFraction {
        assert!(den > 0, "zero denominator");
        assert!(num <= den, "fraction {num}/{den} exceeds 1");
        let g = gcd(num, den).max(1);
        ExactFraction { num: num / g, den: den / g }
    }

    pub fn numerator(&self) -> u128 {
        self.num
    }

    pub fn denominator(&self) -> u128 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }
}

impl PartialOrd for ExactFraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactFraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

impl fmt::Display for ExactFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_on_construction() {
        let f = ExactFraction::new(6, 8);
        assert_eq!(f.numerator(), 3);
        assert_eq!(f.denominator(), 4);
        assert_eq!(alloc::format!("{f}"), "3/4");
    }

    #[test]
    fn comparison_is_exact() {
        assert!(ExactFraction::new(1, 3) < ExactFraction::new(1, 2));
        assert_eq!(ExactFraction::new(2, 4), ExactFraction::new(1, 2));
        assert!(ExactFraction::new(3, 4) > ExactFraction::new(184, 256));
    }

    #[test]
    fn bounds_enforced() {
        assert_eq!(ExactFraction::new(0, 5), ExactFraction::ZERO);
        assert_eq!(ExactFraction::new(7, 7), ExactFraction::ONE);
    }
}
