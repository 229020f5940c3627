use alloc::string::String;

use num_bigint::BigUint;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("composition must contain at least one letter type")]
    EmptyComposition,
    #[error("letter {letter} has zero elements; drop absent letters before building a composition")]
    AbsentLetter { letter: usize },
    #[error("expected {expected} entries (one per letter type), got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("cannot place {n} elements into {r} runs")]
    RunCount { n: usize, r: usize },
    #[error("summation index p = {p} is outside 1..={n}")]
    SummationIndex { n: usize, p: usize },
    #[error("length bound {q} is below -1")]
    BoundTooSmall { q: i64 },
    #[error("threshold q must be at least 1 for an exceedance count")]
    ZeroThreshold,
    #[error("letter index {letter} is out of range for {k} letter types")]
    LetterIndex { letter: usize, k: usize },
    #[error("separator count needs at least one letter type")]
    EmptyRunVector,
    #[error("run counts must be positive")]
    ZeroRuns,
    #[error("enumeration would visit {count} arrangements, above the cap of {cap}")]
    CapExceeded { count: BigUint, cap: u64 },
    #[error("pmf and cdf disagree at q = {q}")]
    Inconsistent { q: usize },
    #[error("invalid argument: {0}")]
    Invalid(String),
}
