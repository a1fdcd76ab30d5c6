//! Finite discrete probability distributions and classical entropic
//! functionals, in bits.
//!
//! All entropies use base-2 logarithms with the convention 0·log 0 = 0:
//! cells with |p| < [`tol::ZERO_CELL`] are skipped. Values are validated at
//! construction and immutable afterwards, so every operation here is a pure
//! function and safe to share across threads.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::tol;
use crate::{Error, Result};

fn check_cells(what: &str, cells: &[f64]) -> Result<()> {
    if cells.is_empty() {
        return Err(Error::InvalidDistribution(format!("{what}: empty")));
    }
    for (i, &p) in cells.iter().enumerate() {
        if !p.is_finite() {
            return Err(Error::InvalidDistribution(format!(
                "{what}: entry {i} is not finite"
            )));
        }
        if p < -tol::ZERO_CELL {
            return Err(Error::InvalidDistribution(format!(
                "{what}: negative entry {p:e} at index {i}"
            )));
        }
    }
    Ok(())
}

fn check_normalized(what: &str, sum: f64) -> Result<()> {
    if (sum - 1.0).abs() > tol::NORMALIZATION {
        return Err(Error::InvalidDistribution(format!(
            "{what}: entries sum to {sum}, expected 1 within {:e} \
             (use a renormalizing constructor for raw weights)",
            tol::NORMALIZATION
        )));
    }
    Ok(())
}

/// Entries in [−ZERO_CELL, 0) survive validation; store them as exact zeros.
fn clamp_negatives(mut cells: Vec<f64>) -> Vec<f64> {
    for p in &mut cells {
        if *p < 0.0 {
            *p = 0.0;
        }
    }
    cells
}

/// −Σ p log₂ p over the cells, skipping cells that count as zero.
pub(crate) fn entropy_bits(cells: &[f64]) -> f64 {
    let mut h = 0.0;
    for &p in cells {
        if p >= tol::ZERO_CELL {
            h -= p * p.log2();
        }
    }
    h
}

/// A probability distribution over a finite, optionally labeled alphabet.
///
/// Invariants: every entry ≥ 0 and the entries sum to 1 within
/// [`tol::NORMALIZATION`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ProbDistJson", into = "ProbDistJson")]
pub struct ProbDist {
    probs: Vec<f64>,
    labels: Option<Vec<String>>,
}

impl ProbDist {
    /// Validates nonnegativity and normalization; nothing is rescaled.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        check_cells("ProbDist", &probs)?;
        check_normalized("ProbDist", probs.iter().sum())?;
        Ok(Self {
            probs: clamp_negatives(probs),
            labels: None,
        })
    }

    /// Builds a distribution from nonnegative weights, rescaling them to sum
    /// to 1. This is the explicit opt-in; [`ProbDist::new`] never rescales.
    pub fn renormalized(weights: Vec<f64>) -> Result<Self> {
        check_cells("ProbDist", &weights)?;
        let sum: f64 = weights.iter().sum();
        if sum <= 0.0 {
            return Err(Error::InvalidDistribution(
                "ProbDist: weights sum to zero".into(),
            ));
        }
        let probs = clamp_negatives(weights).iter().map(|p| p / sum).collect();
        Ok(Self {
            probs,
            labels: None,
        })
    }

    /// Uniform distribution on `n` symbols.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "uniform distribution needs at least one symbol".into(),
            ));
        }
        Self::new(vec![1.0 / n as f64; n])
    }

    /// Attaches symbol labels; the list must match the alphabet size.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.probs.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} probabilities",
                labels.len(),
                self.probs.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }
}

#[derive(Serialize, Deserialize)]
struct ProbDistJson {
    probs: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl TryFrom<ProbDistJson> for ProbDist {
    type Error = Error;
    fn try_from(json: ProbDistJson) -> Result<Self> {
        let d = ProbDist::new(json.probs)?;
        match json.labels {
            Some(labels) => d.with_labels(labels),
            None => Ok(d),
        }
    }
}

impl From<ProbDist> for ProbDistJson {
    fn from(d: ProbDist) -> Self {
        Self {
            probs: d.probs,
            labels: d.labels,
        }
    }
}

/// Shannon entropy H(X) = −Σ p log₂ p, in bits.
///
/// Lands in [0, log₂ |alphabet|] for every valid distribution.
pub fn shannon_entropy(d: &ProbDist) -> f64 {
    entropy_bits(d.probs())
}

/// A joint distribution p(x, y) over two finite alphabets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "JointDist2Json", into = "JointDist2Json")]
pub struct JointDist2 {
    probs: Vec<f64>, // row-major, x = row
    nx: usize,
    ny: usize,
}

impl JointDist2 {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let nx = rows.len();
        if nx == 0 {
            return Err(Error::InvalidDistribution("JointDist2: empty".into()));
        }
        let ny = rows[0].len();
        if rows.iter().any(|r| r.len() != ny) {
            return Err(Error::InvalidDistribution("JointDist2: ragged rows".into()));
        }
        let flat: Vec<f64> = rows.into_iter().flatten().collect();
        check_cells("JointDist2", &flat)?;
        check_normalized("JointDist2", flat.iter().sum())?;
        Ok(Self {
            probs: clamp_negatives(flat),
            nx,
            ny,
        })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.probs[x * self.ny + y]
    }

    pub fn transpose(&self) -> JointDist2 {
        let mut probs = vec![0.0; self.probs.len()];
        for x in 0..self.nx {
            for y in 0..self.ny {
                probs[y * self.nx + x] = self.get(x, y);
            }
        }
        JointDist2 {
            probs,
            nx: self.ny,
            ny: self.nx,
        }
    }

    /// Marginal distribution of one axis (0 = x, 1 = y), summing out the
    /// other.
    pub fn marginal(&self, keep: usize) -> Result<ProbDist> {
        match keep {
            0 => {
                let mut m = vec![0.0; self.nx];
                for (x, mx) in m.iter_mut().enumerate() {
                    for y in 0..self.ny {
                        *mx += self.get(x, y);
                    }
                }
                ProbDist::new(m)
            }
            1 => {
                let mut m = vec![0.0; self.ny];
                for (y, my) in m.iter_mut().enumerate() {
                    for x in 0..self.nx {
                        *my += self.get(x, y);
                    }
                }
                ProbDist::new(m)
            }
            _ => Err(Error::InvalidArgument(format!(
                "JointDist2 has axes 0 and 1, got keep = {keep}"
            ))),
        }
    }

    pub(crate) fn cells(&self) -> &[f64] {
        &self.probs
    }

    fn rows_vec(&self) -> Vec<Vec<f64>> {
        (0..self.nx)
            .map(|x| self.probs[x * self.ny..(x + 1) * self.ny].to_vec())
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct JointDist2Json {
    probs: Vec<Vec<f64>>,
    shape: [usize; 2],
}

impl TryFrom<JointDist2Json> for JointDist2 {
    type Error = Error;
    fn try_from(json: JointDist2Json) -> Result<Self> {
        let j = JointDist2::new(json.probs)?;
        if [j.nx, j.ny] != json.shape {
            return Err(Error::DimensionMismatch(format!(
                "declared shape {:?} does not match probs ({}, {})",
                json.shape, j.nx, j.ny
            )));
        }
        Ok(j)
    }
}

impl From<JointDist2> for JointDist2Json {
    fn from(j: JointDist2) -> Self {
        Self {
            shape: [j.nx, j.ny],
            probs: j.rows_vec(),
        }
    }
}

/// A joint distribution p(x, y, z) over three finite alphabets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "JointDist3Json", into = "JointDist3Json")]
pub struct JointDist3 {
    probs: Vec<f64>, // x-major, then y, then z
    nx: usize,
    ny: usize,
    nz: usize,
}

impl JointDist3 {
    pub fn new(tensor: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        let nx = tensor.len();
        if nx == 0 {
            return Err(Error::InvalidDistribution("JointDist3: empty".into()));
        }
        let ny = tensor[0].len();
        if ny == 0 || tensor.iter().any(|p| p.len() != ny) {
            return Err(Error::InvalidDistribution(
                "JointDist3: ragged or empty planes".into(),
            ));
        }
        let nz = tensor[0][0].len();
        if tensor.iter().any(|p| p.iter().any(|r| r.len() != nz)) {
            return Err(Error::InvalidDistribution("JointDist3: ragged rows".into()));
        }
        let flat: Vec<f64> = tensor.into_iter().flatten().flatten().collect();
        check_cells("JointDist3", &flat)?;
        check_normalized("JointDist3", flat.iter().sum())?;
        Ok(Self {
            probs: clamp_negatives(flat),
            nx,
            ny,
            nz,
        })
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.nx, self.ny, self.nz)
    }

    pub fn get(&self, x: usize, y: usize, z: usize) -> f64 {
        self.probs[(x * self.ny + y) * self.nz + z]
    }

    /// Marginal distribution of a single axis (0 = x, 1 = y, 2 = z).
    pub fn marginal1(&self, keep: usize) -> Result<ProbDist> {
        let n = match keep {
            0 => self.nx,
            1 => self.ny,
            2 => self.nz,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "JointDist3 has axes 0..=2, got keep = {keep}"
                )))
            }
        };
        let mut m = vec![0.0; n];
        for x in 0..self.nx {
            for y in 0..self.ny {
                for z in 0..self.nz {
                    let i = [x, y, z][keep];
                    m[i] += self.get(x, y, z);
                }
            }
        }
        ProbDist::new(m)
    }

    /// Pairwise marginal; the kept axes must be given in strictly increasing
    /// order, e.g. `(0, 2)` for p(x, z).
    pub fn marginal_pair(&self, keep: (usize, usize)) -> Result<JointDist2> {
        let (a, b) = keep;
        if a >= b || b > 2 {
            return Err(Error::InvalidArgument(format!(
                "keep axes must be strictly increasing within 0..=2, got ({a}, {b})"
            )));
        }
        let dims = [self.nx, self.ny, self.nz];
        let (na, nb) = (dims[a], dims[b]);
        let mut m = vec![vec![0.0; nb]; na];
        for x in 0..self.nx {
            for y in 0..self.ny {
                for z in 0..self.nz {
                    let idx = [x, y, z];
                    m[idx[a]][idx[b]] += self.get(x, y, z);
                }
            }
        }
        JointDist2::new(m)
    }

    fn tensor_vec(&self) -> Vec<Vec<Vec<f64>>> {
        (0..self.nx)
            .map(|x| {
                (0..self.ny)
                    .map(|y| (0..self.nz).map(|z| self.get(x, y, z)).collect())
                    .collect()
            })
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct JointDist3Json {
    probs: Vec<Vec<Vec<f64>>>,
    shape: [usize; 3],
}

impl TryFrom<JointDist3Json> for JointDist3 {
    type Error = Error;
    fn try_from(json: JointDist3Json) -> Result<Self> {
        let j = JointDist3::new(json.probs)?;
        if [j.nx, j.ny, j.nz] != json.shape {
            return Err(Error::DimensionMismatch(format!(
                "declared shape {:?} does not match probs ({}, {}, {})",
                json.shape, j.nx, j.ny, j.nz
            )));
        }
        Ok(j)
    }
}

impl From<JointDist3> for JointDist3Json {
    fn from(j: JointDist3) -> Self {
        Self {
            shape: [j.nx, j.ny, j.nz],
            probs: j.tensor_vec(),
        }
    }
}

/// Joint entropy H(X,Y) = −Σ p(x,y) log₂ p(x,y), in bits.
pub fn joint_entropy2(j: &JointDist2) -> f64 {
    entropy_bits(j.cells())
}

/// Relative entropy H(p(x,y) ‖ p(x)p(y)) of a joint distribution from the
/// product of its marginals, in bits.
///
/// Evaluated cell by cell as Σ p log₂(p / (p(x)p(y))) with the conventions
/// 0·log 0 = 0 and p·log(p/0) = +∞ for p > 0. The +∞ case is a legitimate
/// value, returned as `f64::INFINITY` rather than an error. It cannot occur
/// when the marginals are computed in exact arithmetic, but user-supplied
/// cells straddling the zero-cell threshold can trigger it.
///
/// Zero exactly when the joint is the product of its marginals; equals
/// [`mutual_entropy`] up to rounding otherwise.
pub fn relative_entropy(j: &JointDist2) -> f64 {
    let px = j.marginal(0).expect("axis 0 is valid");
    let py = j.marginal(1).expect("axis 1 is valid");
    let (nx, ny) = j.shape();
    let mut sum = 0.0;
    for x in 0..nx {
        for y in 0..ny {
            let p = j.get(x, y);
            if p < tol::ZERO_CELL {
                continue;
            }
            let q = px.probs()[x] * py.probs()[y];
            if q < tol::ZERO_CELL {
                return f64::INFINITY;
            }
            sum += p * (p / q).log2();
        }
    }
    sum
}

/// Mutual entropy H(X:Y) = H(X) + H(Y) − H(X,Y), in bits.
///
/// Nonnegative for every valid joint and symmetric in the two axes.
/// Rounding noise down to −[`tol::NEGATIVE_NOISE`] is clipped to zero;
/// anything more negative panics, since it can only come from a logic bug,
/// not floating-point error.
pub fn mutual_entropy(j: &JointDist2) -> f64 {
    let hx = shannon_entropy(&j.marginal(0).expect("axis 0 is valid"));
    let hy = shannon_entropy(&j.marginal(1).expect("axis 1 is valid"));
    let h = hx + hy - joint_entropy2(j);
    assert!(
        h >= -tol::NEGATIVE_NOISE,
        "mutual entropy {h:e} below the rounding-noise floor; \
         this indicates a logic bug, not rounding"
    );
    h.max(0.0)
}

/// A row-stochastic transition matrix: rows index the source symbol, every
/// entry is ≥ 0, and every row sums to 1 within [`tol::NORMALIZATION`].
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMatrix {
    rows: Vec<f64>, // row-major
    n_from: usize,
    n_to: usize,
}

impl StochasticMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n_from = rows.len();
        if n_from == 0 {
            return Err(Error::InvalidDistribution("StochasticMatrix: empty".into()));
        }
        let n_to = rows[0].len();
        if rows.iter().any(|r| r.len() != n_to) {
            return Err(Error::InvalidDistribution(
                "StochasticMatrix: ragged rows".into(),
            ));
        }
        for (i, row) in rows.iter().enumerate() {
            check_cells(&format!("StochasticMatrix row {i}"), row)?;
            check_normalized(&format!("StochasticMatrix row {i}"), row.iter().sum())?;
        }
        Ok(Self {
            rows: clamp_negatives(rows.into_iter().flatten().collect()),
            n_from,
            n_to,
        })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        Self::new(rows).expect("identity rows are stochastic")
    }

    pub fn n_from(&self) -> usize {
        self.n_from
    }

    pub fn n_to(&self) -> usize {
        self.n_to
    }

    pub fn get(&self, from: usize, to: usize) -> f64 {
        self.rows[from * self.n_to + to]
    }
}

/// Joint distribution p(x,y,z) = p(x)·t1[x,y]·t2[y,z] of the chain
/// X ⇒ Y ⇒ Z.
///
/// Conditional independence of Z from X given Y holds by construction, so
/// the data-pipelining inequalities are guaranteed for the result.
pub fn markov_chain(
    px: &ProbDist,
    t1: &StochasticMatrix,
    t2: &StochasticMatrix,
) -> Result<JointDist3> {
    if px.len() != t1.n_from() {
        return Err(Error::DimensionMismatch(format!(
            "|X| = {} but the first transition has {} rows",
            px.len(),
            t1.n_from()
        )));
    }
    if t1.n_to() != t2.n_from() {
        return Err(Error::DimensionMismatch(format!(
            "first transition maps to {} symbols but the second has {} rows",
            t1.n_to(),
            t2.n_from()
        )));
    }
    let tensor = (0..px.len())
        .map(|x| {
            (0..t1.n_to())
                .map(|y| {
                    (0..t2.n_to())
                        .map(|z| px.probs()[x] * t1.get(x, y) * t2.get(y, z))
                        .collect()
                })
                .collect()
        })
        .collect();
    JointDist3::new(tensor)
}

// ---------------------------------------------------------------------------
// Seeded random generators for property campaigns.
// ---------------------------------------------------------------------------

/// Alphabet sizes used by the random-chain generators.
pub const CAMPAIGN_ALPHABETS: std::ops::RangeInclusive<usize> = 2..=4;

/// Distribution with entries drawn uniform(0,1) and normalized.
pub fn random_prob_dist<R: Rng>(n: usize, rng: &mut R) -> ProbDist {
    let weights: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
    ProbDist::renormalized(weights).expect("positive weights normalize")
}

/// Row-stochastic matrix with rows drawn by normalizing independent
/// uniform(0,1) entries.
pub fn random_stochastic<R: Rng>(n_from: usize, n_to: usize, rng: &mut R) -> StochasticMatrix {
    let rows = (0..n_from)
        .map(|_| {
            let row: Vec<f64> = (0..n_to).map(|_| rng.random::<f64>()).collect();
            let sum: f64 = row.iter().sum();
            row.into_iter().map(|w| w / sum).collect()
        })
        .collect();
    StochasticMatrix::new(rows).expect("normalized rows are stochastic")
}

/// Doubly stochastic matrix: a positive random matrix balanced by Sinkhorn
/// iteration until rows and columns all sum to 1 within 1e-12.
///
/// Pushing a uniform distribution through such a matrix keeps it uniform,
/// which is how the uniform-marginal chain family is built.
pub fn random_doubly_stochastic<R: Rng>(n: usize, rng: &mut R) -> StochasticMatrix {
    let mut m: Vec<f64> = (0..n * n).map(|_| rng.random::<f64>()).collect();
    for _ in 0..10_000 {
        for r in 0..n {
            let s: f64 = m[r * n..(r + 1) * n].iter().sum();
            for c in 0..n {
                m[r * n + c] /= s;
            }
        }
        let mut worst = 0.0f64;
        for c in 0..n {
            let s: f64 = (0..n).map(|r| m[r * n + c]).sum();
            worst = worst.max((s - 1.0).abs());
        }
        if worst <= 1e-13 {
            break;
        }
        for c in 0..n {
            let s: f64 = (0..n).map(|r| m[r * n + c]).sum();
            for r in 0..n {
                m[r * n + c] /= s;
            }
        }
    }
    let rows = (0..n).map(|r| m[r * n..(r + 1) * n].to_vec()).collect();
    StochasticMatrix::new(rows).expect("Sinkhorn-balanced rows are stochastic")
}

/// Random three-step chain with alphabet sizes drawn independently from
/// [`CAMPAIGN_ALPHABETS`].
pub fn random_markov_chain<R: Rng>(rng: &mut R) -> JointDist3 {
    let nx = rng.random_range(CAMPAIGN_ALPHABETS);
    let ny = rng.random_range(CAMPAIGN_ALPHABETS);
    let nz = rng.random_range(CAMPAIGN_ALPHABETS);
    let px = random_prob_dist(nx, rng);
    let t1 = random_stochastic(nx, ny, rng);
    let t2 = random_stochastic(ny, nz, rng);
    markov_chain(&px, &t1, &t2).expect("dimensions match by construction")
}

/// Random chain whose three marginals are all uniform: a uniform input
/// pushed through two doubly stochastic transitions over a common alphabet
/// drawn from [`CAMPAIGN_ALPHABETS`].
pub fn random_uniform_marginal_chain<R: Rng>(rng: &mut R) -> JointDist3 {
    let n = rng.random_range(CAMPAIGN_ALPHABETS);
    let px = ProbDist::uniform(n).expect("n >= 2");
    let t1 = random_doubly_stochastic(n, rng);
    let t2 = random_doubly_stochastic(n, rng);
    markov_chain(&px, &t1, &t2).expect("dimensions match by construction")
}
