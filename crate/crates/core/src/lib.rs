//! Exact Puiseux-series calculus for the Leibnitz-rule α-derivative.
//!
//! The kernel is generic over the real scalar underneath its complex
//! coefficients: [`Rational`] for exact work, `f64` (or `f32`) where gamma
//! values enter through the Riemann–Liouville operator. The aliases below fix
//! the two domains used throughout.

pub mod alpha_calc;
pub mod alpha_exp;
pub mod checks;
pub mod cli;
pub mod encoding;
pub mod error;
pub mod madelung;
pub mod numeric;
pub mod parser;
pub mod puiseux;
pub mod random;

pub use alpha_calc::{AlphaOrder, MultiPoly, RLCoefficient};
pub use error::{Error, Result};
pub use numeric::{ApproxComplex, Coefficient, Domain, ExactComplex, Rational, Scalar};
pub use puiseux::{AnySeries, PuiseuxSeries, Trunc};

/// Series with exact rational complex coefficients.
pub type ExactSeries = PuiseuxSeries<Rational>;
/// Series with double-precision complex coefficients.
pub type ApproxSeries = PuiseuxSeries<f64>;
/// Single-precision variant, mainly for the Riemann–Liouville operators.
pub type ApproxSeries32 = PuiseuxSeries<f32>;
