use alloc::string::String;
use core::fmt;

/// Errors shared across the core modules.
///
/// Capacity caps are explicit errors, never silent approximations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A size parameter violates a divisibility requirement (even / by 4).
    Divisibility { what: &'static str, value: u64, divisor: u64 },
    /// A vertex outside `[1, n]` was supplied.
    InvalidVertex { vertex: u32, n: u32 },
    /// A vertex set was not strictly increasing (i.e. not a canonical set).
    UnsortedVertexSet,
    /// The operation needs at least one edge.
    EdgelessGraph,
    /// An exact (brute-force) oracle was asked to exceed its capacity cap.
    Capacity { what: &'static str, requested: u64, cap: u64 },
    /// A parameter is out of its documented range.
    OutOfRange { what: &'static str, value: u64, min: u64, max: u64 },
    /// Structural mismatch between arguments (lengths, vertex counts, ...).
    Mismatch { what: &'static str },
    /// A construction-specific constraint failed; the message says which.
    Invalid(String),
    /// A group in the non-adaptive unate reduction has no agreed coordinates
    /// outside the disagreement set, so the Bernoulli parameters are 0/0.
    DegenerateGroup,
    /// The adaptive simulator ran out of pre-issued oracle draws.
    BudgetExhausted { budget: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Divisibility { what, value, divisor } => {
                write!(f, "{what} = {value} must be divisible by {divisor}")
            }
            Error::InvalidVertex { vertex, n } => {
                write!(f, "vertex {vertex} outside [1, {n}]")
            }
            Error::UnsortedVertexSet => {
                write!(f, "vertex set must be strictly increasing")
            }
            Error::EdgelessGraph => write!(f, "graph has no edges"),
            Error::Capacity { what, requested, cap } => {
                write!(f, "{what} = {requested} exceeds exact-computation cap {cap}")
            }
            Error::OutOfRange { what, value, min, max } => {
                write!(f, "{what} = {value} outside [{min}, {max}]")
            }
            Error::Mismatch { what } => write!(f, "mismatched arguments: {what}"),
            Error::Invalid(msg) => write!(f, "{msg}"),
            Error::DegenerateGroup => {
                write!(f, "degenerate group: no agreed coordinates outside the disagreement set")
            }
            Error::BudgetExhausted { budget } => {
                write!(f, "adaptive simulation exhausted its {budget} pre-issued oracle draws")
            }
        }
    }
}

impl core::error::Error for Error {}

pub(crate) type Result<T> = core::result::Result<T, Error>;
