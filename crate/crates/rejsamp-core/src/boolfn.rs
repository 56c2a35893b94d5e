//! Boolean-function plumbing: variable assignments of arbitrary width and
//! bit-packed truth tables with a fixed index convention.
//!
//! Conventions used everywhere:
//! * variables are 1-indexed, `x_1 … x_n`;
//! * a truth-table index is the integer whose **most significant** bit is
//!   `x_1` (so the all-zeros input is entry 0 and `x_n` is the least
//!   significant bit);
//! * hex dumps pack entries four per character, first character = entries
//!   0–3, most significant nibble bit = lowest entry index.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::Result;
use crate::frac::ExactFraction;
use crate::Error;

/// Truth-table materialization cap (bits of input).
pub const TABLE_CAP: usize = 24;

/// An assignment to `n` 1-indexed Boolean variables, bit-packed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    n: usize,
    words: Vec<u64>,
}

impl Bits {
    /// All-zeros assignment.
    pub fn zeros(n: usize) -> Bits {
        Bits { n, words: vec![0; n.div_ceil(64)] }
    }

    /// Assignment with exactly the 1-indexed variables in `ones` set.
    pub fn from_ones(n: usize, ones: &[u32]) -> Bits {
        let mut b = Bits::zeros(n);
        for &j in ones {
            b.set(j as usize, true);
        }
        b
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Value of variable `j` (1-indexed).
    #[inline]
    pub fn get(&self, j: usize) -> bool {
        debug_assert!(1 <= j && j <= self.n);
        self.words[(j - 1) / 64] >> ((j - 1) % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, j: usize, value: bool) {
        debug_assert!(1 <= j && j <= self.n);
        let (w, b) = ((j - 1) / 64, (j - 1) % 64);
        if value {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    pub fn flip(&mut self, j: usize) {
        let v = self.get(j);
        self.set(j, !v);
    }

    /// Number of ones among the (1-indexed) variables in `set`.
    pub fn weight_on(&self, set: &[u32]) -> usize {
        set.iter().filter(|&&j| self.get(j as usize)).count()
    }

    /// Total number of ones.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Projection onto the (sorted) variable set, packed little-endian in
    /// `set` order — a canonical grouping key.
    pub fn project(&self, set: &[u32]) -> Vec<u64> {
        let mut out = vec![0u64; set.len().div_ceil(64).max(1)];
        for (pos, &j) in set.iter().enumerate() {
            if self.get(j as usize) {
                out[pos / 64] |= 1 << (pos % 64);
            }
        }
        out
    }

    /// Projection of `x` onto sorted `set`, read as an integer with the
    /// **smallest** element of `set` as the most significant bit.
    pub fn project_msb_first(&self, set: &[u32]) -> u128 {
        debug_assert!(set.len() <= 127);
        let mut v: u128 = 0;
        for &j in set {
            v = (v << 1) | (self.get(j as usize) as u128);
        }
        v
    }
}

impl PartialOrd for Bits {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bits {
    /// Lexicographic by variable index: `x_1` is most significant.
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.n, other.n);
        for j in 1..=self.n {
            match self.get(j).cmp(&other.get(j)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

/// A fully materialized Boolean function on `n ≤ 24` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

impl TruthTable {
    fn capacity_check(n: usize) -> Result<()> {
        if n > TABLE_CAP {
            return Err(Error::Capacity {
                what: "truth table variables",
                requested: n as u64,
                cap: TABLE_CAP as u64,
            });
        }
        Ok(())
    }

    pub fn new_const(n: usize, value: bool) -> Result<TruthTable> {
        Self::capacity_check(n)?;
        let entries = 1usize << n;
        let mut words = vec![if value { u64::MAX } else { 0 }; entries.div_ceil(64)];
        if value && entries < 64 {
            // Keep padding bits beyond 2^n clear for clean equality.
            words[0] = (1u64 << entries) - 1;
        }
        Ok(TruthTable { n, words })
    }

    /// Materialize from a point oracle.
    pub fn from_fn(n: usize, mut f: impl FnMut(&Bits) -> bool) -> Result<TruthTable> {
        Self::capacity_check(n)?;
        let mut t = TruthTable::new_const(n, false)?;
        let mut x = Bits::zeros(n);
        for idx in 0..1usize << n {
            for j in 1..=n {
                x.set(j, (idx >> (n - j)) & 1 == 1);
            }
            t.set(idx, f(&x));
        }
        Ok(t)
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn n_entries(&self) -> usize {
        1usize << self.n
    }

    #[inline]
    pub fn get(&self, idx: usize) -> bool {
        self.words[idx / 64] >> (idx % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, idx: usize, value: bool) {
        if value {
            self.words[idx / 64] |= 1 << (idx % 64);
        } else {
            self.words[idx / 64] &= !(1 << (idx % 64));
        }
    }

    /// Table index of an assignment (`x_1` = most significant bit).
    pub fn index_of(&self, x: &Bits) -> usize {
        debug_assert_eq!(x.len(), self.n);
        let mut idx = 0usize;
        for j in 1..=self.n {
            idx = (idx << 1) | x.get(j) as usize;
        }
        idx
    }

    /// Assignment encoded by a table index.
    pub fn bits_of(&self, idx: usize) -> Bits {
        let mut x = Bits::zeros(self.n);
        for j in 1..=self.n {
            x.set(j, (idx >> (self.n - j)) & 1 == 1);
        }
        x
    }

    pub fn eval(&self, x: &Bits) -> bool {
        self.get(self.index_of(x))
    }

    /// Number of disagreeing entries with `other`.
    pub fn hamming(&self, other: &TruthTable) -> Result<u64> {
        if self.n != other.n {
            return Err(Error::Mismatch { what: "truth tables of different arity" });
        }
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as u64)
            .sum())
    }

    /// Lowercase hex dump; see the module docs for the bit order.
    pub fn to_hex(&self) -> String {
        let entries = self.n_entries();
        let mut s = String::with_capacity(entries.div_ceil(4));
        let mut nibble = 0u8;
        let mut filled = 0;
        for idx in 0..entries {
            nibble = (nibble << 1) | self.get(idx) as u8;
            filled += 1;
            if filled == 4 || idx + 1 == entries {
                nibble <<= 4 - filled;
                s.push(core::char::from_digit(nibble as u32, 16).unwrap());
                nibble = 0;
                filled = 0;
            }
        }
        s
    }

    /// Parse a hex dump produced by [`TruthTable::to_hex`] for `n` variables.
    pub fn from_hex(n: usize, hex: &str) -> Result<TruthTable> {
        Self::capacity_check(n)?;
        let entries = 1usize << n;
        let expected = entries.div_ceil(4);
        if hex.len() != expected {
            return Err(Error::Invalid(alloc::format!(
                "hex dump for {n} variables must have {expected} characters, got {}",
                hex.len()
            )));
        }
        let mut t = TruthTable::new_const(n, false)?;
        for (c_idx, c) in hex.chars().enumerate() {
            let nibble = c
                .to_digit(16)
                .ok_or_else(|| Error::Invalid(alloc::format!("invalid hex character {c:?}")))?
                as u8;
            for b in 0..4 {
                let idx = c_idx * 4 + b;
                if idx < entries {
                    t.set(idx, nibble >> (3 - b) & 1 == 1);
                }
            }
        }
        Ok(t)
    }
}

/// Exact normalized Hamming distance between two functions of equal arity.
pub fn dist_between(f: &TruthTable, g: &TruthTable) -> Result<ExactFraction> {
    let d = f.hamming(g)?;
    Ok(ExactFraction::new(d as u128, 1u128 << f.n_vars()))
}
