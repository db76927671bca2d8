//! Continuous-time Markov models of Reed-Solomon protected memory words.
//!
//! A single word (simplex) or a replicated pair of words read through an
//! arbiter (duplex) accumulates random errors from SEUs and erasures from
//! located permanent faults, and is optionally scrubbed. [`chain`] enumerates
//! the finite state space and generator, [`solver`] computes transient state
//! probabilities and the resulting bit error rate, and [`oracle`] provides an
//! independent Monte Carlo fault-injection simulator to check them against.
//!
//! ```
//! use rsmem_core::{ber_curve, validate_code, Arrangement, FaultRates, Scenario, ScrubConfig};
//!
//! let scenario = Scenario::at_horizon(
//!     Arrangement::Duplex,
//!     validate_code(18, 16, 8)?,
//!     FaultRates::new(1.7e-5, 0.0)?,
//!     ScrubConfig::every(1.0)?,
//!     48.0,
//! )?;
//! let series = ber_curve(&scenario, 1e-10)?;
//! assert!(series.rows[0].ber < 1e-6);
//! # Ok::<(), rsmem_core::Error>(())
//! ```

pub mod chain;
pub mod error;
pub mod metrics;
pub mod model;
pub mod oracle;
pub mod solver;
pub mod text;

pub use chain::{build_ctmc, build_ctmc_with_cap, ChainState, Ctmc, Transition, TransitionKind};
pub use error::{Error, Result};
pub use metrics::{decode_latency, storage_overhead};
pub use model::{
    validate_code, Arrangement, CodeParams, DecodeRule, DuplexState, FaultRates, RateMode,
    Scenario, ScrubConfig, SimplexState,
};
pub use oracle::{estimate, McConfig, McEstimate, ScrubDiscipline};
pub use solver::{ber_curve, fail_probability, transient, BerSeries, Distribution, DEFAULT_TOL};
