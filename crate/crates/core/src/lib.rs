//! Exact arithmetic for intersection numbers on moduli spaces of curves and
//! Masur-Veech volumes of principal strata of quadratic differentials.
//!
//! The crate is organized around a handful of exact number types
//! ([`Rational`], [`PiValue`]) and the pipelines built on them:
//!
//! - [`correlators`]: normalized intersection numbers via the string,
//!   dilaton, and Virasoro recursions, with a shared memo cache.
//! - [`walk`]: the absorbing asymmetric random walk and the exact
//!   lower/upper correlator bounds derived from it.
//! - [`graphs`]: enumeration of stable graphs with exact automorphism
//!   group orders.
//! - [`volumes`]: the stable-graph volume sum for principal strata.
//! - [`sv`]: area Siegel-Veech constants and Lyapunov exponent sums.
//! - [`harmonic`]: multivariate harmonic sums, their generating series,
//!   and saddle-point expansion coefficients.
//!
//! All quantities that are rational (or rational multiples of powers of pi)
//! are computed exactly; floating point enters only in explicitly
//! float-valued reports, at a configurable precision (default 60 digits).

pub mod combinatorics;
pub mod correlators;
mod error;
pub mod exec;
pub mod float;
pub mod graphs;
pub mod harmonic;
pub mod inequalities;
pub mod pi_value;
pub mod rational;
pub mod sv;
pub mod volumes;
pub mod walk;

pub use correlators::Correlators;
pub use error::{Error, Result};
pub use pi_value::PiValue;
pub use rational::Rational;
