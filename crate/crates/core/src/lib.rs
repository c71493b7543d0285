//! Exact computation of the weighted Eves invariant `E_p` of colored point
//! configurations, weighted projective equivalence, and reconstruction of a
//! weighted point from its axis projections.

pub mod configuration;
pub mod error;
pub mod format;
pub mod invariant;
pub mod linalg;
pub mod numtheory;
pub mod oracle;
pub mod reconstruct;
pub mod wps;

pub use error::{Error, Result};
