//! Exact arithmetic for cubic norm structures, the Freudenthal construction,
//! lifting laws, and the orbit parametrizations by balanced ideals.
//!
//! Everything is computed over `Q` or over finite quotient algebras of `Q`,
//! with zero tolerance: identities either hold exactly or are reported as
//! failures.

pub mod cli;
pub mod cns;
pub mod composition;
pub mod error;
pub mod freudenthal;
pub mod lifting;
pub mod random;
pub mod report;
pub mod rings_ideals;
pub mod scalars;

pub use error::{Error, Result};
