//! `lpq` treats the Banach space L^p(X, mu) as a quasi *-algebra over the
//! bounded functions and makes its structure computable at desk scale:
//!
//! * exact arithmetic on extended Hölder exponents and exponent intervals,
//! * two function backends (finite discrete measure spaces, symbolic
//!   positive power sums on (0,1] or (0,∞)),
//! * the weight representation of positive invariant sesquilinear forms,
//! * the alpha/beta/gamma norms, each computed by a closed form and by an
//!   independent optimizer,
//! * GNS models (quotient, weighted Hilbert space, diagonal representation),
//! * Gelfand-type embeddings into sup-norm L^2 spaces over measure families,
//! * partial-multiplication domains (Γ₁, Γ₂, weak and strong multipliers),
//!   closability, approximating sequences and the distributivity-failure
//!   search on infinite measure.

pub mod exponent;
pub mod form;
pub mod gelfand;
pub mod gns;
pub mod partialmul;
pub mod quad;
pub mod report;
pub mod sampling;
pub mod seminorm;
pub mod space;
pub mod suite;

pub use exponent::{Exponent, ExponentInterval, Rat};
pub use form::FormWeight;
pub use space::{
    DiscreteFunction, DiscreteSpace, Function, PowerTerm, Support, SymbolicDomain,
    SymbolicFunction,
};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("exponent out of range: {0}")]
    ExponentRange(String),
    #[error("incompatible exponents: {0}")]
    ExponentArith(String),
    #[error("backend mismatch: {0}")]
    Backend(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
