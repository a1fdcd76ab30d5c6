//! Density operators, spectra, measurement sets, and quantum entropies, in
//! bits.
//!
//! Subsystem indexing is big-endian: for `subsystem_dims = [d0, d1, …]` the
//! basis index decomposes as i = i₀·(d₁·d₂·…) + i₁·(d₂·…) + …, so the first
//! listed subsystem is the most significant tensor factor. [`tensor`] and
//! [`partial_trace`] both follow this convention.
//!
//! The von Neumann entropy S(ρ) = −Σ λ log₂ λ over the spectrum of ρ. It is
//! invariant under unitary conjugation ρ ↦ UρU†, never decreases under the
//! projective-measurement channel ρ ↦ Σ PᵢρPᵢ, and *can* decrease under a
//! general Kraus channel; [`kraus_channel`]'s tests carry the standard
//! two-operator counterexample that maps the maximally mixed qubit to a
//! pure state.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::linalg::{eigh, ComplexMatrix};
use crate::prob::{self, ProbDist};
use crate::rng::substream;
use crate::tol;
use crate::{Error, Result};

/// Eigenvalues of a density operator, sorted descending.
///
/// Invariants: every value ≥ 0 (entries down to −[`tol::PSD_FLOOR`] are
/// clamped), the list is descending, and the values sum to 1 within
/// [`tol::TRACE`].
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn new(eigenvalues: Vec<f64>) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::InvalidOperator("empty spectrum".into()));
        }
        if eigenvalues.iter().any(|l| !l.is_finite()) {
            return Err(Error::InvalidOperator(
                "spectrum entries must be finite".into(),
            ));
        }
        for w in eigenvalues.windows(2) {
            if w[1] > w[0] + tol::DOMINANCE_TIE {
                return Err(Error::InvalidOperator(format!(
                    "spectrum must be sorted descending, got {} after {}",
                    w[1], w[0]
                )));
            }
        }
        for &l in &eigenvalues {
            if l < -tol::PSD_FLOOR {
                return Err(Error::InvalidOperator(format!(
                    "spectrum entry {l:e} below the PSD floor"
                )));
            }
        }
        let sum: f64 = eigenvalues.iter().sum();
        if (sum - 1.0).abs() > tol::TRACE {
            return Err(Error::InvalidOperator(format!(
                "spectrum sums to {sum}, expected 1 within {:e}",
                tol::TRACE
            )));
        }
        let eigenvalues = eigenvalues.into_iter().map(|l| l.max(0.0)).collect();
        Ok(Self { eigenvalues })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Shannon entropy of the eigenvalue distribution, in bits.
    pub fn entropy_bits(&self) -> f64 {
        prob::entropy_bits(&self.eigenvalues)
    }
}

/// A density operator: Hermitian, unit-trace, positive-semidefinite matrix
/// with an attached subsystem layout.
///
/// The spectrum is computed once at construction (the positivity check
/// needs it anyway) and cached, so entropy evaluations are cheap and
/// infallible afterwards.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DensityOperatorJson", into = "DensityOperatorJson")]
pub struct DensityOperator {
    matrix: ComplexMatrix,
    subsystem_dims: Vec<usize>,
    spectrum: Spectrum,
}

impl DensityOperator {
    pub fn new(matrix: ComplexMatrix, subsystem_dims: Vec<usize>) -> Result<Self> {
        if subsystem_dims.is_empty() || subsystem_dims.contains(&0) {
            return Err(Error::InvalidArgument(
                "subsystem dimensions must be nonempty and positive".into(),
            ));
        }
        let product: usize = subsystem_dims.iter().product();
        if product != matrix.dim() {
            return Err(Error::DimensionMismatch(format!(
                "subsystem dims {subsystem_dims:?} multiply to {product}, matrix is {}×{}",
                matrix.dim(),
                matrix.dim()
            )));
        }
        let defect = matrix.hermiticity_defect();
        if defect > tol::HERMITICITY {
            return Err(Error::InvalidOperator(format!(
                "not Hermitian: defect {defect:.3e} exceeds {:.0e}",
                tol::HERMITICITY
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol::TRACE || tr.im.abs() > tol::TRACE {
            return Err(Error::InvalidOperator(format!(
                "trace {tr} differs from 1 beyond {:.0e}",
                tol::TRACE
            )));
        }
        let (eigenvalues, _) = eigh(&matrix)?;
        if let Some(&min) = eigenvalues.last() {
            if min < -tol::PSD_FLOOR {
                return Err(Error::InvalidOperator(format!(
                    "not positive semidefinite: eigenvalue {min:e}"
                )));
            }
        }
        let spectrum = Spectrum::new(eigenvalues)?;
        Ok(Self {
            matrix,
            subsystem_dims,
            spectrum,
        })
    }

    /// ρ = |ψ⟩⟨ψ| from a state vector, normalizing it first.
    pub fn from_pure_state(amplitudes: &[Complex64], subsystem_dims: Vec<usize>) -> Result<Self> {
        let norm_sq: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if norm_sq <= tol::ZERO_CELL {
            return Err(Error::InvalidOperator("zero state vector".into()));
        }
        let norm = norm_sq.sqrt();
        let v: Vec<Complex64> = amplitudes.iter().map(|c| c / norm).collect();
        Self::new(ComplexMatrix::outer(&v), subsystem_dims)
    }

    /// I/d on the given subsystem layout.
    pub fn maximally_mixed(subsystem_dims: Vec<usize>) -> Result<Self> {
        let d: usize = subsystem_dims.iter().product();
        if d == 0 {
            return Err(Error::InvalidArgument(
                "subsystem dimensions must be positive".into(),
            ));
        }
        let m = ComplexMatrix::identity(d).scale(Complex64::new(1.0 / d as f64, 0.0));
        Self::new(m, subsystem_dims)
    }

    /// Reinterprets the subsystem layout without touching the matrix; the
    /// new dimensions must multiply to the same total dimension.
    pub fn with_subsystem_dims(mut self, subsystem_dims: Vec<usize>) -> Result<Self> {
        if subsystem_dims.is_empty() || subsystem_dims.contains(&0) {
            return Err(Error::InvalidArgument(
                "subsystem dimensions must be nonempty and positive".into(),
            ));
        }
        let product: usize = subsystem_dims.iter().product();
        if product != self.matrix.dim() {
            return Err(Error::DimensionMismatch(format!(
                "subsystem dims {subsystem_dims:?} multiply to {product}, operator is {}-dimensional",
                self.matrix.dim()
            )));
        }
        self.subsystem_dims = subsystem_dims;
        Ok(self)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn subsystem_dims(&self) -> &[usize] {
        &self.subsystem_dims
    }

    /// Total Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// tr(ρ²); 1 for pure states, 1/d for maximally mixed.
    pub fn purity(&self) -> f64 {
        self.spectrum.eigenvalues().iter().map(|l| l * l).sum()
    }
}

#[derive(Serialize, Deserialize)]
struct DensityOperatorJson {
    dims: Vec<usize>,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl TryFrom<DensityOperatorJson> for DensityOperator {
    type Error = Error;
    fn try_from(json: DensityOperatorJson) -> Result<Self> {
        let m = ComplexMatrix::from_re_im(&json.re, &json.im)?;
        DensityOperator::new(m, json.dims)
    }
}

impl From<DensityOperator> for DensityOperatorJson {
    fn from(rho: DensityOperator) -> Self {
        Self {
            dims: rho.subsystem_dims.clone(),
            re: rho.matrix.re_rows(),
            im: rho.matrix.im_rows(),
        }
    }
}

/// What completeness relation a [`MeasurementSet`] satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasurementKind {
    /// Idempotent, Hermitian, mutually orthogonal projectors summing to I.
    Projective,
    /// Hermitian PSD effects summing to I.
    PovmEffects,
    /// Operators with Σ MᵢᵗMᵢ = I.
    Kraus,
}

impl std::fmt::Display for MeasurementKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Projective => write!(f, "projective"),
            Self::PovmEffects => write!(f, "povm_effects"),
            Self::Kraus => write!(f, "kraus"),
        }
    }
}

/// A set of measurement operators with a kind-specific completeness
/// invariant, checked at construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MeasurementSetJson", into = "MeasurementSetJson")]
pub struct MeasurementSet {
    operators: Vec<ComplexMatrix>,
    kind: MeasurementKind,
}

impl MeasurementSet {
    pub fn new(operators: Vec<ComplexMatrix>, kind: MeasurementKind) -> Result<Self> {
        if operators.is_empty() {
            return Err(Error::InvalidOperator("empty measurement set".into()));
        }
        let dim = operators[0].dim();
        if operators.iter().any(|m| m.dim() != dim) {
            return Err(Error::DimensionMismatch(
                "measurement operators differ in dimension".into(),
            ));
        }
        match kind {
            MeasurementKind::Projective => {
                for (i, p) in operators.iter().enumerate() {
                    if !p.is_hermitian(tol::HERMITICITY) {
                        return Err(Error::InvalidOperator(format!(
                            "projector {i} is not Hermitian"
                        )));
                    }
                    let idem = p.mul(p).sub(p).max_abs();
                    if idem > tol::COMPLETENESS {
                        return Err(Error::InvalidOperator(format!(
                            "projector {i} is not idempotent (defect {idem:.3e})"
                        )));
                    }
                }
                for i in 0..operators.len() {
                    for j in (i + 1)..operators.len() {
                        let cross = operators[i].mul(&operators[j]).max_abs();
                        if cross > tol::COMPLETENESS {
                            return Err(Error::InvalidOperator(format!(
                                "projectors {i} and {j} are not orthogonal ({cross:.3e})"
                            )));
                        }
                    }
                }
                check_sum_is_identity(&operators, dim, "projector sum")?;
            }
            MeasurementKind::PovmEffects => {
                for (i, a) in operators.iter().enumerate() {
                    if !a.is_hermitian(tol::HERMITICITY) {
                        return Err(Error::InvalidOperator(format!(
                            "effect {i} is not Hermitian"
                        )));
                    }
                    let (vals, _) = eigh(a)?;
                    if let Some(&min) = vals.last() {
                        if min < -tol::PSD_FLOOR {
                            return Err(Error::InvalidOperator(format!(
                                "effect {i} is not PSD (eigenvalue {min:e})"
                            )));
                        }
                    }
                }
                check_sum_is_identity(&operators, dim, "effect sum")?;
            }
            MeasurementKind::Kraus => {
                let mut sum = ComplexMatrix::zeros(dim);
                for m in &operators {
                    sum = sum.add(&m.adjoint().mul(m));
                }
                let defect = sum.sub(&ComplexMatrix::identity(dim)).max_abs();
                if defect > tol::COMPLETENESS {
                    return Err(Error::InvalidOperator(format!(
                        "Kraus completeness violated: ‖Σ MᵗM − I‖ = {defect:.3e}"
                    )));
                }
            }
        }
        Ok(Self { operators, kind })
    }

    pub fn projective(operators: Vec<ComplexMatrix>) -> Result<Self> {
        Self::new(operators, MeasurementKind::Projective)
    }

    pub fn povm_effects(operators: Vec<ComplexMatrix>) -> Result<Self> {
        Self::new(operators, MeasurementKind::PovmEffects)
    }

    pub fn kraus(operators: Vec<ComplexMatrix>) -> Result<Self> {
        Self::new(operators, MeasurementKind::Kraus)
    }

    /// Rank-1 projectors onto the computational basis states.
    pub fn computational_basis(dim: usize) -> Self {
        let ops = (0..dim)
            .map(|i| {
                let mut v = vec![Complex64::ZERO; dim];
                v[i] = Complex64::ONE;
                ComplexMatrix::outer(&v)
            })
            .collect();
        Self::new(ops, MeasurementKind::Projective).expect("basis projectors are projective")
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn kind(&self) -> MeasurementKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.operators[0].dim()
    }
}

fn check_sum_is_identity(operators: &[ComplexMatrix], dim: usize, what: &str) -> Result<()> {
    let mut sum = ComplexMatrix::zeros(dim);
    for m in operators {
        sum = sum.add(m);
    }
    let defect = sum.sub(&ComplexMatrix::identity(dim)).max_abs();
    if defect > tol::COMPLETENESS {
        return Err(Error::InvalidOperator(format!(
            "{what} differs from identity by {defect:.3e}"
        )));
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct OperatorJson {
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct MeasurementSetJson {
    kind: MeasurementKind,
    operators: Vec<OperatorJson>,
}

impl TryFrom<MeasurementSetJson> for MeasurementSet {
    type Error = Error;
    fn try_from(json: MeasurementSetJson) -> Result<Self> {
        let ops = json
            .operators
            .iter()
            .map(|o| ComplexMatrix::from_re_im(&o.re, &o.im))
            .collect::<Result<Vec<_>>>()?;
        MeasurementSet::new(ops, json.kind)
    }
}

impl From<MeasurementSet> for MeasurementSetJson {
    fn from(set: MeasurementSet) -> Self {
        Self {
            kind: set.kind,
            operators: set
                .operators
                .iter()
                .map(|m| OperatorJson {
                    re: m.re_rows(),
                    im: m.im_rows(),
                })
                .collect(),
        }
    }
}

/// Kronecker product of two density operators; subsystem layouts are
/// concatenated, with `a` as the most significant factor.
pub fn tensor(a: &DensityOperator, b: &DensityOperator) -> DensityOperator {
    let dims: Vec<usize> = a
        .subsystem_dims()
        .iter()
        .chain(b.subsystem_dims())
        .copied()
        .collect();
    DensityOperator::new(a.matrix().kron(b.matrix()), dims)
        .expect("tensor product of valid density operators is valid")
}

/// Reduced density operator on the kept subsystems, tracing out the rest.
///
/// `keep` must list subsystem indices in strictly increasing order.
pub fn partial_trace(rho: &DensityOperator, keep: &[usize]) -> Result<DensityOperator> {
    let dims = rho.subsystem_dims();
    let ns = dims.len();
    if keep.is_empty() {
        return Err(Error::InvalidArgument("keep set must be nonempty".into()));
    }
    if keep.windows(2).any(|w| w[0] >= w[1]) || keep[keep.len() - 1] >= ns {
        return Err(Error::InvalidArgument(format!(
            "keep set must be strictly increasing within 0..{ns}, got {keep:?}"
        )));
    }
    if keep.len() == ns {
        return Ok(rho.clone());
    }

    let traced: Vec<usize> = (0..ns).filter(|i| !keep.contains(i)).collect();
    let kept_dims: Vec<usize> = keep.iter().map(|&i| dims[i]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&i| dims[i]).collect();
    let dk: usize = kept_dims.iter().product();
    let dt: usize = traced_dims.iter().product();

    // big-endian strides of the full space
    let mut strides = vec![1usize; ns];
    for i in (0..ns - 1).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let kept_base: Vec<usize> = (0..dk)
        .map(|a| scatter_index(a, &kept_dims, keep, &strides))
        .collect();
    let traced_base: Vec<usize> = (0..dt)
        .map(|t| scatter_index(t, &traced_dims, &traced, &strides))
        .collect();

    let mut out = ComplexMatrix::zeros(dk);
    for a in 0..dk {
        for b in 0..dk {
            let mut acc = Complex64::ZERO;
            for base in &traced_base {
                acc += rho.matrix().get(kept_base[a] + base, kept_base[b] + base);
            }
            out.set(a, b, acc);
        }
    }
    DensityOperator::new(out, kept_dims)
}

/// Decodes `sub` as big-endian digits over `sub_dims` and scatters them to
/// the full-space index via the subsystem positions.
fn scatter_index(
    mut sub: usize,
    sub_dims: &[usize],
    positions: &[usize],
    strides: &[usize],
) -> usize {
    let mut idx = 0;
    for slot in (0..sub_dims.len()).rev() {
        let digit = sub % sub_dims[slot];
        sub /= sub_dims[slot];
        idx += digit * strides[positions[slot]];
    }
    idx
}

/// Spectral decomposition of a unit-trace Hermitian matrix: descending
/// [`Spectrum`] plus the unitary of eigenvectors (as columns).
///
/// For general Hermitian matrices (arbitrary trace, signed eigenvalues)
/// use [`crate::linalg::eigh`] directly; the `Spectrum` invariants assume a
/// density-operator input.
pub fn hermitian_eigensystem(m: &ComplexMatrix) -> Result<(Spectrum, ComplexMatrix)> {
    let (vals, vecs) = eigh(m)?;
    Ok((Spectrum::new(vals)?, vecs))
}

/// Von Neumann entropy S(ρ) = −Σ λ log₂ λ, in bits.
///
/// 0 for pure states, log₂(dim) for the maximally mixed state; for a
/// diagonal ρ this is exactly the Shannon entropy of the diagonal.
pub fn von_neumann_entropy(rho: &DensityOperator) -> f64 {
    rho.spectrum().entropy_bits()
}

/// Classical outcome distribution pᵢ = tr(ρ Aᵢ) induced by a POVM.
///
/// Each trace must be real and nonnegative within tolerance; the resulting
/// vector is renormalized (its deviation from 1 is bounded by the
/// measurement set's completeness slack) so the output is always a valid
/// [`ProbDist`], making its Shannon entropy well-defined and ≥ 0.
pub fn povm_distribution(rho: &DensityOperator, m: &MeasurementSet) -> Result<ProbDist> {
    if m.kind() != MeasurementKind::PovmEffects {
        return Err(Error::InvalidArgument(format!(
            "povm_distribution needs PovmEffects, got {}",
            m.kind()
        )));
    }
    if m.dim() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "effects are {}-dimensional, state is {}-dimensional",
            m.dim(),
            rho.dim()
        )));
    }
    let mut ps = Vec::with_capacity(m.operators().len());
    for (i, a) in m.operators().iter().enumerate() {
        let t = rho.matrix().mul(a).trace();
        if t.im.abs() > tol::NEGATIVE_NOISE {
            return Err(Error::InvalidOperator(format!(
                "tr(ρA_{i}) has imaginary part {:e}",
                t.im
            )));
        }
        if t.re < -tol::NEGATIVE_NOISE {
            return Err(Error::InvalidOperator(format!(
                "tr(ρA_{i}) = {:e} is negative beyond tolerance",
                t.re
            )));
        }
        ps.push(t.re.max(0.0));
    }
    let sum: f64 = ps.iter().sum();
    if (sum - 1.0).abs() > 1e-6 {
        return Err(Error::InvalidOperator(format!(
            "POVM outcome probabilities sum to {sum}"
        )));
    }
    ProbDist::renormalized(ps)
}

/// Projective measurement channel ρ' = Σ Pᵢ ρ Pᵢ.
///
/// Never decreases the von Neumann entropy: S(ρ') ≥ S(ρ). States already
/// diagonal in the measurement basis (in particular I/d) are fixed points.
pub fn projective_measure_channel(
    rho: &DensityOperator,
    m: &MeasurementSet,
) -> Result<DensityOperator> {
    if m.kind() != MeasurementKind::Projective {
        return Err(Error::InvalidArgument(format!(
            "projective_measure_channel needs Projective, got {}",
            m.kind()
        )));
    }
    if m.dim() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "projectors are {}-dimensional, state is {}-dimensional",
            m.dim(),
            rho.dim()
        )));
    }
    let mut out = ComplexMatrix::zeros(rho.dim());
    for p in m.operators() {
        out = out.add(&p.mul(rho.matrix()).mul(p));
    }
    DensityOperator::new(out, rho.subsystem_dims().to_vec())
}

/// Generalized measurement channel ρ' = Σ Mᵢ ρ Mᵢᵗ.
///
/// No entropy ordering is guaranteed here: unlike the projective case the
/// output entropy can drop below the input entropy.
pub fn kraus_channel(rho: &DensityOperator, m: &MeasurementSet) -> Result<DensityOperator> {
    if m.kind() != MeasurementKind::Kraus {
        return Err(Error::InvalidArgument(format!(
            "kraus_channel needs Kraus, got {}",
            m.kind()
        )));
    }
    if m.dim() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "Kraus operators are {}-dimensional, state is {}-dimensional",
            m.dim(),
            rho.dim()
        )));
    }
    let mut out = ComplexMatrix::zeros(rho.dim());
    for k in m.operators() {
        out = out.add(&k.mul(rho.matrix()).mul(&k.adjoint()));
    }
    DensityOperator::new(out, rho.subsystem_dims().to_vec())
}

/// The entangled two-qubit state (|00⟩ + |11⟩)/√2 as a density operator on
/// subsystem layout (2, 2).
pub fn bell_pair() -> DensityOperator {
    let a = std::f64::consts::FRAC_1_SQRT_2;
    let v = [
        Complex64::new(a, 0.0),
        Complex64::ZERO,
        Complex64::ZERO,
        Complex64::new(a, 0.0),
    ];
    DensityOperator::from_pure_state(&v, vec![2, 2]).expect("Bell pair is a valid state")
}

/// Quantum mutual entropy S(A:B) = S(A) + S(B) − S(A,B), in bits, for two
/// disjoint groups of subsystems.
///
/// Complement subsystems are traced out first. Unlike the classical case
/// the value can exceed 1 for a pair of qubits (it reaches 2 on a Bell
/// pair). Symmetric in the two groups; tiny negative rounding is clipped
/// to zero.
pub fn quantum_mutual_entropy(
    rho: &DensityOperator,
    part_a: &[usize],
    part_b: &[usize],
) -> Result<f64> {
    validate_part("part_a", part_a, rho.subsystem_dims().len())?;
    validate_part("part_b", part_b, rho.subsystem_dims().len())?;
    if part_a.iter().any(|i| part_b.contains(i)) {
        return Err(Error::InvalidArgument(format!(
            "parts must be disjoint, got {part_a:?} and {part_b:?}"
        )));
    }
    let mut union: Vec<usize> = part_a.iter().chain(part_b).copied().collect();
    union.sort_unstable();
    let rho_ab = partial_trace(rho, &union)?;
    let local = |part: &[usize]| -> Vec<usize> {
        part.iter()
            .map(|i| union.binary_search(i).expect("part is inside the union"))
            .collect()
    };
    let ra = partial_trace(&rho_ab, &local(part_a))?;
    let rb = partial_trace(&rho_ab, &local(part_b))?;
    let s = von_neumann_entropy(&ra) + von_neumann_entropy(&rb) - von_neumann_entropy(&rho_ab);
    assert!(
        s >= -tol::NEGATIVE_NOISE,
        "quantum mutual entropy {s:e} below the rounding-noise floor"
    );
    Ok(s.max(0.0))
}

fn validate_part(name: &str, part: &[usize], ns: usize) -> Result<()> {
    if part.is_empty() {
        return Err(Error::InvalidArgument(format!("{name} must be nonempty")));
    }
    if part.windows(2).any(|w| w[0] >= w[1]) || part[part.len() - 1] >= ns {
        return Err(Error::InvalidArgument(format!(
            "{name} must be strictly increasing within 0..{ns}, got {part:?}"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Seeded random generators for property campaigns.
// ---------------------------------------------------------------------------

fn random_gaussian_matrix<R: Rng>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let mut g = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            g.set(i, j, Complex64::new(re, im));
        }
    }
    g
}

/// Random Hermitian matrix: complex Gaussian entries, symmetrized.
pub fn random_hermitian<R: Rng>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let g = random_gaussian_matrix(dim, rng);
    g.add(&g.adjoint()).scale(Complex64::new(0.5, 0.0))
}

/// Random unitary: the eigenvector matrix of a random Hermitian matrix
/// (Haar-adjacent, exactly reproducible from the RNG state).
pub fn random_unitary<R: Rng>(dim: usize, rng: &mut R) -> ComplexMatrix {
    eigh(&random_hermitian(dim, rng))
        .expect("random Hermitian matrices converge")
        .1
}

/// Random density operator by purification sampling: a uniformly random
/// pure state on dim² with one factor traced out, i.e. ρ = GG†/tr(GG†) for
/// Gaussian G. Has full support with probability 1.
pub fn random_density_with<R: Rng>(dim: usize, rng: &mut R) -> DensityOperator {
    assert!(dim >= 1, "dimension must be positive");
    let g = random_gaussian_matrix(dim, rng);
    let gg = g.mul(&g.adjoint());
    let tr = gg.trace().re;
    DensityOperator::new(gg.scale(Complex64::new(1.0 / tr, 0.0)), vec![dim])
        .expect("purification sampling yields a valid density operator")
}

/// Seeded convenience wrapper around [`random_density_with`]; the same
/// (dim, seed) pair always yields the same operator.
pub fn random_density(dim: usize, seed: u64) -> DensityOperator {
    random_density_with(dim, &mut substream(seed, 0))
}

/// Random orthonormal measurement basis as rank-1 projectors: the columns
/// of a random unitary.
pub fn random_projective_basis<R: Rng>(dim: usize, rng: &mut R) -> MeasurementSet {
    let u = random_unitary(dim, rng);
    let ops = (0..dim)
        .map(|k| {
            let col: Vec<Complex64> = (0..dim).map(|i| u.get(i, k)).collect();
            ComplexMatrix::outer(&col)
        })
        .collect();
    MeasurementSet::new(ops, MeasurementKind::Projective)
        .expect("orthonormal columns give a projective set")
}

/// Random POVM with `n_effects` outcomes: random PSD blocks Bᵢ = GᵢGᵢᵗ
/// whitened by S^(−1/2) on both sides, S = Σ Bᵢ, so completeness holds by
/// construction.
pub fn random_povm<R: Rng>(dim: usize, n_effects: usize, rng: &mut R) -> MeasurementSet {
    assert!(dim >= 1 && n_effects >= 1, "need dim ≥ 1 and n_effects ≥ 1");
    let blocks: Vec<ComplexMatrix> = (0..n_effects)
        .map(|_| {
            let g = random_gaussian_matrix(dim, rng);
            g.mul(&g.adjoint())
        })
        .collect();
    let mut s = ComplexMatrix::zeros(dim);
    for b in &blocks {
        s = s.add(b);
    }
    let (vals, vecs) = eigh(&s).expect("PSD sums converge");
    let mut inv_sqrt = ComplexMatrix::zeros(dim);
    for (k, &val) in vals.iter().enumerate() {
        let w = 1.0 / val.max(f64::MIN_POSITIVE).sqrt();
        for i in 0..dim {
            for j in 0..dim {
                let v = inv_sqrt.get(i, j) + vecs.get(i, k) * w * vecs.get(j, k).conj();
                inv_sqrt.set(i, j, v);
            }
        }
    }
    let effects = blocks
        .iter()
        .map(|b| inv_sqrt.mul(b).mul(&inv_sqrt))
        .collect();
    MeasurementSet::new(effects, MeasurementKind::PovmEffects).expect("whitened blocks form a POVM")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::shannon_entropy;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn qubit_zero() -> DensityOperator {
        DensityOperator::from_pure_state(&[Complex64::ONE, Complex64::ZERO], vec![2]).unwrap()
    }

    fn qubit_plus() -> DensityOperator {
        let a = std::f64::consts::FRAC_1_SQRT_2;
        DensityOperator::from_pure_state(&[c(a, 0.0), c(a, 0.0)], vec![2]).unwrap()
    }

    fn mixed_qubit() -> DensityOperator {
        DensityOperator::maximally_mixed(vec![2]).unwrap()
    }

    #[test]
    fn density_operator_validation() {
        // not unit trace
        let m = ComplexMatrix::identity(2);
        assert!(DensityOperator::new(m, vec![2]).is_err());
        // not Hermitian
        let m = ComplexMatrix::from_rows(vec![
            vec![c(0.5, 0.0), c(0.1, 0.0)],
            vec![c(0.3, 0.0), c(0.5, 0.0)],
        ])
        .unwrap();
        assert!(DensityOperator::new(m, vec![2]).is_err());
        // not PSD: eigenvalues 1.2 and −0.2
        let m = ComplexMatrix::from_real_rows(vec![vec![1.2, 0.0], vec![0.0, -0.2]]).unwrap();
        assert!(DensityOperator::new(m, vec![2]).is_err());
        // dims must multiply to the matrix dimension
        let m = ComplexMatrix::identity(2).scale(c(0.5, 0.0));
        assert!(DensityOperator::new(m, vec![3]).is_err());
    }

    #[test]
    fn tensor_examples() {
        let zz = tensor(&qubit_zero(), &qubit_zero());
        assert_relative_eq!(zz.matrix().get(0, 0).re, 1.0, epsilon = 1e-15);
        assert_eq!(zz.subsystem_dims(), &[2, 2]);

        let mm = tensor(&mixed_qubit(), &mixed_qubit());
        for i in 0..4 {
            assert_relative_eq!(mm.matrix().get(i, i).re, 0.25, epsilon = 1e-15);
        }
        assert_relative_eq!(mm.matrix().trace().re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn bell_pair_entries_and_purity() {
        let rho = bell_pair();
        assert_relative_eq!(rho.matrix().trace().re, 1.0, epsilon = 1e-15);
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            assert_relative_eq!(rho.matrix().get(i, j).re, 0.5, epsilon = 1e-15);
        }
        assert_relative_eq!(rho.matrix().get(1, 1).re, 0.0, epsilon = 1e-15);
        assert_relative_eq!(rho.purity(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn partial_trace_bell_gives_maximally_mixed() {
        let rho = bell_pair();
        for keep in [[0usize], [1usize]] {
            let half = partial_trace(&rho, &keep).unwrap();
            let diff = half.matrix().sub(mixed_qubit().matrix()).max_abs();
            assert!(diff < 1e-12, "reduced Bell half differs from I/2 by {diff}");
        }
    }

    #[test]
    fn partial_trace_of_product_recovers_factors() {
        let a = random_density(3, 7);
        let b = random_density(2, 8);
        let ab = tensor(&a, &b);
        let ra = partial_trace(&ab, &[0]).unwrap();
        let rb = partial_trace(&ab, &[1]).unwrap();
        assert!(ra.matrix().sub(a.matrix()).max_abs() < 1e-12);
        assert!(rb.matrix().sub(b.matrix()).max_abs() < 1e-12);
        assert_relative_eq!(ra.matrix().trace().re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn partial_trace_keep_validation() {
        let rho = bell_pair();
        assert!(partial_trace(&rho, &[]).is_err());
        assert!(partial_trace(&rho, &[1, 0]).is_err());
        assert!(partial_trace(&rho, &[2]).is_err());
        assert!(partial_trace(&rho, &[0, 1]).is_ok());
    }

    #[test]
    fn eigensystem_examples() {
        let (spec, _) = hermitian_eigensystem(
            &ComplexMatrix::from_real_rows(vec![vec![0.7, 0.0], vec![0.0, 0.3]]).unwrap(),
        )
        .unwrap();
        assert_eq!(spec.eigenvalues(), &[0.7, 0.3]);

        let (spec, _) = hermitian_eigensystem(bell_pair().matrix()).unwrap();
        assert_relative_eq!(spec.eigenvalues()[0], 1.0, epsilon = 1e-12);
        for &l in &spec.eigenvalues()[1..] {
            assert!(l.abs() < 1e-12);
        }
    }

    #[test]
    fn entropy_examples() {
        assert_relative_eq!(von_neumann_entropy(&qubit_zero()), 0.0, epsilon = 1e-12);
        assert_relative_eq!(von_neumann_entropy(&mixed_qubit()), 1.0, epsilon = 1e-12);
        assert_relative_eq!(von_neumann_entropy(&bell_pair()), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn povm_distribution_examples() {
        // computational-basis projectors double as PSD effects
        let effects = MeasurementSet::povm_effects(
            MeasurementSet::computational_basis(2).operators().to_vec(),
        )
        .unwrap();
        let p = povm_distribution(&mixed_qubit(), &effects).unwrap();
        assert_relative_eq!(p.probs()[0], 0.5, epsilon = 1e-12);

        let p = povm_distribution(&qubit_zero(), &effects).unwrap();
        assert_relative_eq!(p.probs()[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(p.probs()[1], 0.0, epsilon = 1e-12);

        let p = povm_distribution(&qubit_plus(), &effects).unwrap();
        assert_relative_eq!(p.probs()[0], 0.5, epsilon = 1e-12);
        assert!(shannon_entropy(&p) >= 0.0);

        // kind and dimension misuse
        let proj = MeasurementSet::computational_basis(2);
        assert!(povm_distribution(&mixed_qubit(), &proj).is_err());
        let effects3 = MeasurementSet::povm_effects(
            MeasurementSet::computational_basis(3).operators().to_vec(),
        )
        .unwrap();
        assert!(povm_distribution(&mixed_qubit(), &effects3).is_err());
    }

    #[test]
    fn projective_channel_examples() {
        let basis = MeasurementSet::computational_basis(2);
        let out = projective_measure_channel(&qubit_plus(), &basis).unwrap();
        assert!(out.matrix().sub(mixed_qubit().matrix()).max_abs() < 1e-12);
        assert_relative_eq!(von_neumann_entropy(&qubit_plus()), 0.0, epsilon = 1e-12);
        assert_relative_eq!(von_neumann_entropy(&out), 1.0, epsilon = 1e-12);

        // diagonal states are fixed points
        let diag = DensityOperator::new(
            ComplexMatrix::from_real_rows(vec![vec![0.7, 0.0], vec![0.0, 0.3]]).unwrap(),
            vec![2],
        )
        .unwrap();
        let fixed = projective_measure_channel(&diag, &basis).unwrap();
        assert!(fixed.matrix().sub(diag.matrix()).max_abs() < 1e-15);

        let fixed = projective_measure_channel(&mixed_qubit(), &basis).unwrap();
        assert!(fixed.matrix().sub(mixed_qubit().matrix()).max_abs() < 1e-15);

        // a POVM set is not accepted here
        let effects = MeasurementSet::povm_effects(basis.operators().to_vec()).unwrap();
        assert!(projective_measure_channel(&mixed_qubit(), &effects).is_err());
    }

    #[test]
    fn kraus_channel_collapse_counterexample() {
        // {|0⟩⟨0|, |0⟩⟨1|}: complete, maps I/2 to the pure state |0⟩⟨0|
        let m00 = ComplexMatrix::from_real_rows(vec![vec![1.0, 0.0], vec![0.0, 0.0]]).unwrap();
        let m01 = ComplexMatrix::from_real_rows(vec![vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let set = MeasurementSet::kraus(vec![m00, m01]).unwrap();
        let out = kraus_channel(&mixed_qubit(), &set).unwrap();
        assert!(out.matrix().sub(qubit_zero().matrix()).max_abs() < 1e-12);
        assert_relative_eq!(von_neumann_entropy(&out), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn kraus_identity_and_projective_agreement() {
        let id = MeasurementSet::kraus(vec![ComplexMatrix::identity(2)]).unwrap();
        let rho = random_density(2, 3);
        let out = kraus_channel(&rho, &id).unwrap();
        assert!(out.matrix().sub(rho.matrix()).max_abs() < 1e-14);

        // projectors satisfy the Kraus completeness too (P† = P, P² = P)
        let basis = MeasurementSet::computational_basis(2);
        let as_kraus = MeasurementSet::kraus(basis.operators().to_vec()).unwrap();
        let a = projective_measure_channel(&rho, &basis).unwrap();
        let b = kraus_channel(&rho, &as_kraus).unwrap();
        assert!(a.matrix().sub(b.matrix()).max_abs() < 1e-14);
    }

    #[test]
    fn kraus_completeness_enforced() {
        let m00 = ComplexMatrix::from_real_rows(vec![vec![1.0, 0.0], vec![0.0, 0.0]]).unwrap();
        assert!(MeasurementSet::kraus(vec![m00]).is_err());
    }

    #[test]
    fn projective_validation_rejects_non_idempotent() {
        let half = ComplexMatrix::identity(2).scale(c(0.5, 0.0));
        assert!(MeasurementSet::projective(vec![half.clone(), half]).is_err());
    }

    #[test]
    fn quantum_mutual_entropy_examples() {
        let rho = bell_pair();
        assert_relative_eq!(
            quantum_mutual_entropy(&rho, &[0], &[1]).unwrap(),
            2.0,
            epsilon = 1e-9
        );

        let prod = tensor(&qubit_plus(), &qubit_zero());
        assert_relative_eq!(
            quantum_mutual_entropy(&prod, &[0], &[1]).unwrap(),
            0.0,
            epsilon = 1e-9
        );

        // symmetric in the two parts
        let three = tensor(&random_density(2, 21), &bell_pair());
        for (a, b) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let ab = quantum_mutual_entropy(&three, &[a], &[b]).unwrap();
            let ba = quantum_mutual_entropy(&three, &[b], &[a]).unwrap();
            assert_relative_eq!(ab, ba, epsilon = 1e-12);
        }

        // overlapping parts and unsorted parts are rejected
        assert!(quantum_mutual_entropy(&three, &[0, 1], &[1]).is_err());
        assert!(quantum_mutual_entropy(&three, &[1, 0], &[2]).is_err());
        assert!(quantum_mutual_entropy(&three, &[], &[1]).is_err());
    }

    #[test]
    fn random_density_contract() {
        for dim in 2..=4 {
            let rho = random_density(dim, 42);
            assert!(rho.matrix().is_hermitian(1e-12));
            assert_relative_eq!(rho.matrix().trace().re, 1.0, epsilon = 1e-12);
            assert!(rho.spectrum().eigenvalues().iter().all(|&l| l >= 0.0));
        }
        // determinism
        assert_eq!(random_density(3, 9), random_density(3, 9));
        assert_ne!(random_density(3, 9), random_density(3, 10));
    }

    #[test]
    fn random_density_entropy_spans_the_qubit_range() {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for seed in 0..400 {
            let s = von_neumann_entropy(&random_density(2, seed));
            assert!((0.0..=1.0 + 1e-12).contains(&s));
            lo = lo.min(s);
            hi = hi.max(s);
        }
        assert!(lo < 0.25, "min entropy {lo} not near the pure end");
        assert!(hi > 0.75, "max entropy {hi} not near the mixed end");
    }

    #[test]
    fn with_subsystem_dims_checks_product() {
        let rho = random_density(4, 5);
        assert!(rho.clone().with_subsystem_dims(vec![2, 2]).is_ok());
        assert!(rho.with_subsystem_dims(vec![3]).is_err());
    }
}
