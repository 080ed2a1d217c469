//! Multiplicative approximation of complex-valued partition functions on
//! bounded-degree graphs by polynomial interpolation in a certified
//! zero-free disc, with exact brute-force routes for validation.
//!
//! - [`graph`]: simple graphs and connected-subset enumeration.
//! - [`interp`]: Newton power sums and the truncated log-Taylor expansion.
//! - [`regimes`]: zero-free radii and polydisc/polyregion membership.
//! - [`hom`]: the restricted multivariate graph homomorphism engine.
//! - [`ising`]: complex Ising partition functions and the pendant-gadget
//!   reduction onto [`hom`].
//! - [`iqp`]: graph-induced X-program amplitudes via the Ising identity,
//!   plus a statevector oracle.
//! - [`oracle`]: test-support brute-force oracles and seeded generators.
//! - [`io`]: JSON instance/result formats used by the CLI and C API.

pub mod error;
pub mod graph;
pub mod hom;
pub mod interp;
pub mod io;
pub mod iqp;
pub mod ising;
pub mod oracle;
pub mod regimes;

pub use error::{HomqError, Result};
