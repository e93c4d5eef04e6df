//! Exact scalars and truncated series.

pub mod cyclotomic;
pub mod qseries;
pub mod rational;

pub use cyclotomic::{CycJson, CycNumber};
pub use qseries::{euler_inverse, qseries_mul, QSeries, QSeriesJson};
pub use rational::{
    common_denominator, congruent_mod1, format_rational, frac_mod1, int, is_integer, is_positive, parse_rational, rat,
    Rational,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("cannot parse rational `{0}`")]
    ParseRational(String),
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("order {order} needs {expected} power-basis coefficients, got {found}")]
    CoefficientCount {
        order: u32,
        expected: usize,
        found: usize,
    },
    #[error("series must carry at least one coefficient")]
    EmptySeries,
    #[error("offsets {0} and {1} do not differ by an integer")]
    IncommensurateOffsets(String, String),
    #[error("truncation windows do not overlap")]
    EmptyWindow,
    #[error("coefficient {0} does not fit the wire format")]
    CoefficientOverflow(String),
}
