//! Finite-dimensional decomposition theory for symmetric alpha-stable (SaS)
//! and alpha-Frechet max-stable processes.
//!
//! A process is specified by a finite weighted point space together with a
//! matrix of spectral function values, one column per point and one row per
//! time label.  Everything observable about the process law is a function of
//! that data: the scale functional gives every finite-dimensional
//! characteristic function, and a canonical discrete spectral measure on the
//! projective sphere decides equality in distribution outright.
//!
//! On top of that fingerprint the crate makes the classical decomposition
//! theory executable:
//!
//! * [`rep`] — representations, validation, scale functionals, canonical
//!   spectral measures, equality in distribution, disjoint unions.
//! * [`decompose`] — ratio partitions, minimal representations, component
//!   construction/verification, weight recovery, common components, and
//!   independent-increments analysis.
//! * [`stationary`] — group actions of finite tori with cocycles and
//!   Radon-Nikodym factors, stationarity tests, invariant partitions,
//!   indecomposability verdicts, mixed moving averages, and ergodic
//!   decomposition.
//! * [`maxstable`] — the parallel max-stable theory: joint Frechet
//!   distribution functions, the association bridge to the sum-stable world,
//!   and max-decomposition verification/recovery.
//! * [`simulate`] — exact samplers for both families plus statistical
//!   verifiers (characteristic-function envelopes and Kolmogorov-Smirnov
//!   tests).
//! * [`cli`] — a file-driven command-line front end with deterministic,
//!   byte-reproducible reports.
//!
//! The `examples/` directory is the primary tour: each file is a runnable
//! walkthrough of one capability (`cargo run --example <name>`).

pub mod cli;
pub mod decompose;
pub mod error;
pub mod maxstable;
pub mod rep;
pub mod simulate;
pub mod stationary;

pub use error::{Error, Result};
pub use rep::{Alpha, Atom, CanonicalSpectralMeasure, FinitePointSpace, SpectralRep, DEFAULT_TOL};
