//! Exact computation of colored Jones polynomials of links from braid words,
//! together with the stabilized head/tail q-series they define.
//!
//! Everything is computed in the ring `Z[q^{1/4}, q^{-1/4}]` with
//! arbitrary-precision integer coefficients; there is no floating point and
//! no rounding anywhere. Three independent evaluation routes are provided
//! and cross-checked against each other:
//!
//! - [`statesum`]: an R-matrix state sum over braid labelings,
//! - [`skein`]: Kauffman-bracket skein theory for 2-strand twist regions,
//! - [`torusformulas`]: closed-form sums for torus knots and links.
//!
//! The [`tails`] module extracts the stabilized leading coefficients (the
//! tail, or the head after `q -> 1/q`) from any of those sources, and
//! [`series`] builds the classical q-series (Ramanujan theta, false theta,
//! Euler product, Andrews-Gordon sums) that those tails equal.
//!
//! ```
//! use qtail_core::braid::BraidWord;
//! use qtail_core::series::euler_inf;
//! use qtail_core::statesum::{jones_statesum, StateSumConfig};
//! use qtail_core::tails::tail_extract;
//!
//! // the left-handed trefoil's tail is the Euler function
//! let braid = BraidWord::parse("2: -1 -1 -1")?;
//! let report = tail_extract(
//!     |n| jones_statesum(&braid, &StateSumConfig::new(n as usize)),
//!     5,
//!     8,
//! )?;
//! assert_eq!(report.stabilized.poly(), euler_inf(report.stabilized.order()).poly());
//! # Ok::<(), qtail_core::Error>(())
//! ```

pub mod bracket;
pub mod braid;
pub mod knots;
pub mod qlaurent;
pub mod series;
pub mod skein;
pub mod statesum;
pub mod tails;
pub mod torusformulas;

pub use braid::BraidWord;
pub use qlaurent::{CanonicalForm, QExp, QPoly, Sign, SignedMonomial};
pub use series::TruncatedSeries;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Exact polynomial division left a nonzero remainder.
    #[error("polynomial division left a nonzero remainder")]
    NonDivisible,
    /// Division by the zero polynomial.
    #[error("division by zero polynomial")]
    DivisionByZero,
    /// Series division needs a denominator whose lowest coefficient is a unit.
    #[error("series division requires a unit lowest coefficient, found {0}")]
    NonUnitLeadingTerm(String),
    /// An infinite q-Pochhammer product with a non-positive base exponent.
    #[error("infinite product diverges: argument exponent must be positive")]
    DivergentProduct,
    /// A bilateral theta sum whose exponents do not grow.
    #[error("theta series diverges: exp(a) + exp(b) must be positive")]
    DivergentSeries,
    /// A numeric argument outside the documented domain.
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    /// Malformed braid-word text.
    #[error("braid syntax error: {0}")]
    Syntax(String),
    /// A braid letter referring to a nonexistent strand pair.
    #[error("braid letter out of range: {0}")]
    LetterRange(String),
    /// An operation that requires a knot got a multi-component closure.
    #[error("closure is not a knot ({0} components)")]
    NotAKnot(usize),
    /// A skein triple violating parity or the triangle inequality.
    #[error("triple ({0},{1},{2}) is not admissible")]
    NotAdmissible(usize, usize, usize),
    /// Torus parameters that must be coprime but are not.
    #[error("torus parameters {0} and {1} must be coprime")]
    NotCoprime(i64, i64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
