//! Entropy toolkit for classical and quantum information scenarios.
//!
//! `entrobell` computes Shannon and von Neumann entropic quantities, builds
//! Markov-chain and entangled-qubit scenarios, and evaluates entropic Bell
//! inequalities of the Cerf-Adami type together with the second-law
//! statements they rest on: positivity of relative entropy, entropy
//! non-decrease under projective measurement, the mixing order on spectra,
//! and the entropy of mixing for lattice gases.
//!
//! Module map:
//!
//! - [`prob`] — finite discrete distributions and classical entropies (bits)
//! - [`linalg`] — small dense complex matrices and a Hermitian eigensolver
//! - [`quantum`] — density operators, measurement channels, quantum entropies
//! - [`mixing`] — mixing order on spectra (partial-sum dominance)
//! - [`inequality`] — inequality evaluation and reporting
//! - [`thermo`] — statistical-thermodynamic entropies
//! - [`rng`] — seeded substreams for reproducible random campaigns
//!
//! Subsystem indexing is big-endian throughout: the first listed subsystem
//! is the most significant tensor factor.
//!
//! ```
//! use entrobell::quantum::{bell_pair, partial_trace, von_neumann_entropy};
//!
//! let rho = bell_pair();
//! assert!(von_neumann_entropy(&rho).abs() < 1e-12);          // pure joint state
//! let half = partial_trace(&rho, &[0]).unwrap();
//! assert!((von_neumann_entropy(&half) - 1.0).abs() < 1e-12); // maximally mixed half
//! ```

pub mod inequality;
pub mod linalg;
pub mod mixing;
pub mod prob;
pub mod quantum;
pub mod rng;
pub mod thermo;
pub mod tol;

pub use inequality::InequalityReport;
pub use linalg::ComplexMatrix;
pub use mixing::MixingComparison;
pub use prob::{JointDist2, JointDist3, ProbDist, StochasticMatrix};
pub use quantum::{DensityOperator, MeasurementKind, MeasurementSet, Spectrum};
pub use thermo::{LatticeScenario, ThermoConfig};

use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// A probability object failed validation at construction.
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    /// An operator (density matrix, measurement set, spectrum) failed
    /// validation at construction.
    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    /// Arguments are individually fine but mutually incompatible.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// An argument is outside the operation's domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The Jacobi eigensolver hit its sweep cap before converging.
    #[error(
        "eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
