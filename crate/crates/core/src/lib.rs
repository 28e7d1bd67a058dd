//! Exact weighted-flag computations on monomial varieties.
//!
//! The crate computes degrees of contact of weighted flags, Chow
//! semistability margins, Hilbert-Samuel multiplicities of monomial ideals,
//! intersection-theoretic contact bounds on surfaces and blow-ups, heights
//! over the rationals, and threshold certificates for diophantine
//! approximation systems. All arithmetic is exact: weights, margins and
//! invariants are [`Q`] rationals, never floating point.
//!
//! Data-parallel inner loops (graded enumeration, weight scans, point
//! searches) go through [`par::Execution`]. With the default `parallel`
//! feature they run on rayon; without it every call is sequential. Results
//! are identical either way.

pub mod blowup;
pub mod certificate;
pub mod config;
pub mod contact;
pub mod error;
pub mod exact;
pub mod heights;
pub mod local;
pub mod monomial;
pub mod par;
pub mod surface;

pub use error::{Error, Result};
pub use exact::Q;
pub use par::Execution;
