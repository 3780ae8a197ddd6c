//! Likelihood-tempered model averaging over a prepared set of candidate
//! densities, with the inverse temperature matched to the sample size, plus
//! the harnesses that verify the matched temperature is the right one.
//!
//! * [`engine`] -- samples, candidate densities, tempered weights, and the
//!   predictive mixture.
//! * [`discrete`] -- finite-alphabet distributions and KL divergences.
//! * [`gaussian`] -- closed forms for two Gaussian families and the flat
//!   (mean, sigma) grid oracle.
//! * [`harness`] -- exact enumeration checks of the internal-energy identity
//!   and matched-temperature optimality; seeded Monte Carlo for continuous
//!   sets.
//! * [`extension`] -- first-order effect of adding one candidate model, and
//!   candidate scoring.
//! * [`bayes`] -- sequential single-point updates, batch equivalence, and
//!   repeated-sweep trajectories.
//!
//! Everything is a pure function of its inputs plus explicit RNG seeds, so
//! results are reproducible bit for bit.

pub mod bayes;
pub mod discrete;
pub mod engine;
pub mod error;
pub mod extension;
pub mod gaussian;
pub mod harness;
pub mod numeric;
pub mod quad;

pub use error::{Error, ErrorKind, Result};
pub use rand::RngCore;
