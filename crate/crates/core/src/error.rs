use thiserror::Error;

use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("genus must be at least 2, got g = {g}")]
    GenusTooSmall { g: i64 },
    #[error("relative irregularity must be non-negative, got q_f = {q_f}")]
    NegativeIrregularity { q_f: i64 },
    #[error("relative irregularity q_f = {q_f} exceeds floor((g+1)/2) = {max} for g = {g}")]
    IrregularityTooLarge { g: i64, q_f: i64, max: i64 },
    #[error("q_f = 0 has no {what}; the bound at q_f = 0 is the classical 4(g-1)/g")]
    ZeroIrregularity { what: &'static str },
    #[error("closed-form gap needs q_f <= (g-1)/2, got g = {g}, q_f = {q_f}")]
    GapOutOfDomain { g: u32, q_f: u32 },
    #[error("coefficient index k = {k} outside 1..={max} for g = {g}")]
    CoefficientIndex { g: u32, k: u32, max: u32 },

    #[error("index vector for g = {g} needs {expected} entries (s_2..s_{{g+2}}), got {got}")]
    IndexLength { g: u32, expected: usize, got: usize },
    #[error("singularity index s_{index} must be non-negative, got {value}")]
    NegativeIndex { index: u32, value: Rational },
    #[error("no index s_{index} for g = {g} (valid range 2..={max})")]
    UnknownIndex { g: u32, index: u32, max: u32 },
    #[error("strict mode: s_{{g+2}} must vanish for even g = {g}, got {value}")]
    StrictTopIndex { g: u32, value: Rational },

    #[error("locally trivial: chi_f = 0, slope undefined")]
    LocallyTrivial,
    #[error("chi_f = {chi} is negative; index vector lies outside the geometric cone")]
    NegativeChi { chi: Rational },

    #[error("linear program is unbounded below")]
    Unbounded,
    #[error("linear program is infeasible")]
    Infeasible,

    #[error("{path}: multiplicity {m} exceeds the maximum {max}")]
    MultiplicityTooLarge { path: String, m: u32, max: u32 },
    #[error("{path}: multiplicity {m} is below 2, not a singular point")]
    MultiplicityTooSmall { path: String, m: u32 },
    #[error("{path}: child multiplicity {child} not allowed after parent multiplicity {parent} (even parent: child <= parent; odd parent: child <= parent + 1)")]
    Monotonicity { path: String, parent: u32, child: u32 },
    #[error("{path}: strict mode forbids multiplicity g+2 = {m} for even g")]
    StrictEvenTop { path: String, m: u32 },
    #[error("explicit s_2 = {explicit} disagrees with s_2 = {computed} derived from n")]
    S2Mismatch { explicit: i64, computed: Box<Rational> },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("cross-check failed: {0}")]
    CrossCheckFailure(String),
    #[error("unsupported schema version {found}, expected 1")]
    Schema { found: u32 },
}
