//! Numerical tolerances used across the toolkit.
//!
//! Everything runs in f64 at matrix dimensions of at most 16, so most
//! thresholds sit roughly a decade above accumulated double-precision
//! rounding at that scale. Constructors fail loudly when an input misses a
//! tolerance; nothing is silently rescaled unless the caller asks for it.

/// |sum − 1| allowed for probability vectors, joint tensors, and stochastic
/// rows at construction.
pub const NORMALIZATION: f64 = 1e-9;

/// A cell with |p| below this counts as zero, implementing 0·log 0 = 0.
pub const ZERO_CELL: f64 = 1e-15;

/// Mutual-entropy values in (−NEGATIVE_NOISE, 0) are rounding noise and get
/// clipped to 0; anything more negative is treated as a logic bug.
pub const NEGATIVE_NOISE: f64 = 1e-9;

/// Max-norm Hermiticity defect ‖M − M†‖ allowed for density operators and
/// measurement operators.
pub const HERMITICITY: f64 = 1e-10;

/// |tr(ρ) − 1| allowed for density operators; also bounds the spectrum sum.
pub const TRACE: f64 = 1e-9;

/// Eigenvalues of a density operator may dip to −PSD_FLOOR before the
/// operator is rejected; survivors are clamped to 0 for entropy evaluation.
pub const PSD_FLOOR: f64 = 1e-10;

/// Completeness and idempotency slack for measurement sets
/// (Σ Pᵢ = I, P² = P, PᵢPⱼ = 0, Σ MᵢᵗMᵢ = I), in max norm.
pub const COMPLETENESS: f64 = 1e-9;

/// Off-diagonal Frobenius norm at which the Jacobi eigensolver stops.
pub const JACOBI_OFF_NORM: f64 = 1e-13;

/// Sweep cap for the Jacobi eigensolver; hitting it is a numeric error.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Partial-sum differences below this count as ties in mixing comparisons,
/// avoiding spurious Incomparable verdicts from rounding.
pub const DOMINANCE_TIE: f64 = 1e-12;

/// An inequality report is satisfied when its margin (bound − lhs) is at
/// least −MARGIN.
pub const MARGIN: f64 = 1e-9;

/// The two evaluation routes for the classical Cerf-Adami left-hand side
/// (mutual entropies vs. joint entropies) must agree within this.
pub const ROUTE_AGREEMENT: f64 = 1e-9;

/// A marginal counts as a unit-entropy (uniform binary) marginal when its
/// entropy is within this of 1 bit; also gates the strong-subadditivity
/// precondition S(A) = 1.
pub const UNIT_MARGINAL: f64 = 1e-6;
