//! Fault-tolerant bitwise phase estimation with quantum Reed-Muller codes.
//!
//! The crate is organised bottom-up:
//!
//! - [`gf2`]: bit-packed vectors and matrices over GF(2).
//! - [`codes`]: classical Reed-Muller codes, their shortened/punctured/dual
//!   variants, weight distributions, the MacWilliams transform and the
//!   QRM(1,m) CSS structure.
//! - [`channel`]: the i.i.d. single-qubit Pauli channel and a pattern sampler.
//! - [`analytics`]: closed-form margins, failure and pass probabilities,
//!   threshold equations (solved by bisection), resource counts and the
//!   standard deviation of the estimator.
//! - [`protocols`]: Monte Carlo state machines for the estimation protocols
//!   (Ia, Ib, Ic and the mixed-radix protocol II) plus a physical-level
//!   error-detection trial used to validate the closed forms.
//! - [`oracle`]: sparse and dense statevector checks of the logical shift and
//!   the postselection rejection bound.
//! - [`rng`]: seeded, splittable random streams.
//!
//! The `ftqm` binary wraps these as a command-line tool.
//!
//! ```
//! use ftqm::analytics::threshold_ia;
//! let p_th = threshold_ia(std::f64::consts::PI / 32.0, 4).unwrap();
//! assert!((p_th - 0.00626).abs() < 3e-5);
//! ```

pub mod analytics;
pub mod channel;
pub mod codes;
pub mod error;
pub mod gf2;
pub mod oracle;
pub mod protocols;
pub mod rng;

pub use error::{Error, Result};

/// Tool version embedded in every CSV header.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
