//! Sensing-capacity analysis for fixed-SNR linear observation models
//! `Y = sqrt(SNR) G X + N`.
//!
//! The crate answers one question from several directions: how many sensor
//! measurements per signal dimension are needed to reconstruct a sparse
//! signal to a target distortion?
//!
//! - [`models`]: signal priors, ensemble specs, scenarios, bound metadata.
//! - [`infotheory`]: entropies, rate-distortion functions, and the
//!   hypergeometric overlap distribution, all in bits.
//! - [`bounds`]: closed-form capacity upper/lower bounds, Fano-type error
//!   lower bounds, a union-bound upper arm, and sensor-count comparisons.
//! - [`ensembles`]: matrix samplers and log-det mutual-information values.
//! - [`simulator`]: Monte Carlo trials with an exhaustive ML decoder,
//!   sandwiching empirical error probability between the analytic arms.
//! - [`rng`]: counter-based streams keyed by `(seed, tag, index)` so every
//!   result is reproducible independent of thread count.

pub mod bounds;
pub mod ensembles;
pub mod infotheory;
pub mod models;
pub mod rng;
pub mod simulator;

pub use bounds::{CapacityBound, DeterministicMode, SensorComparison};
pub use ensembles::SensingMatrix;
pub use infotheory::OverlapDistribution;
pub use models::{
    BoundResult, BoundValue, Distortion, EnsembleKind, EnsembleSpec, Scenario, SignalKind,
    SignalModel, Unit, ValidationReport,
};
pub use simulator::{SimulationConfig, SimulationReport, Verdict};
