use thiserror::Error;

use crate::numeric::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the kernel can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at {0}")]
    Pole(f64),

    #[error("value {0} exceeds double-precision range")]
    Overflow(String),

    #[error("series has no nonzero term")]
    EmptySeries,

    #[error("cannot combine an exact series with an approximate one")]
    DomainMismatch,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("syntax error at offset {offset}: expected {}", expected.join(" | "))]
    Syntax { offset: usize, expected: Vec<String> },

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("alpha-integral pole: term x^({exponent}) has exponent equal to -alpha")]
    IntegralPole { exponent: Rational },

    #[error("unknown check suite `{0}`")]
    UnknownSuite(String),

    #[error("order alpha = {0} outside 0 < alpha <= 1")]
    InvalidAlpha(Rational),

    #[error("non-finite coefficient at exponent {0}")]
    NonFinite(Rational),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn syntax(offset: usize, expected: &[&str]) -> Self {
        Error::Syntax {
            offset,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }
}
