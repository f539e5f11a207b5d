//! Exact symbolic calculus for Nambu structures.
//!
//! A Nambu structure is a multivector field that is integrable in the
//! Frobenius sense; every such field cuts the space into a singular
//! foliation carrying a leafwise contravariant volume. This crate works
//! with polynomial coefficients over the rationals and keeps every
//! computation exact: Schouten brackets, tangency and conformal-invariance
//! tests, singular loci, associated-structure extraction, reduction, and
//! the commutativity criteria for pairs and families of structures.

pub mod commute;
pub mod context;
pub mod error;
pub mod exterior;
pub mod limits;
pub mod nambu;
pub mod polyring;
pub mod textio;

pub use context::{Context, Point};
pub use error::{Error, Result};
