//! Mixing order on spectra via partial-sum dominance.
//!
//! A spectrum `b` is *more mixed* than `a` when every leading partial sum
//! of `a` weakly dominates the corresponding partial sum of `b`; in
//! textbook majorization notation that is exactly "`a` majorizes `b`".
//! Spectra of different lengths are zero-padded before comparison.
//!
//! Entropy preserves this order (it is mixing homomorphic): whenever `b` is
//! more mixed than `a`, the entropy of `b` is at least that of `a`. The
//! uniform spectrum is the most mixed element of its dimension and the pure
//! spectrum (1, 0, …, 0) the least.

use rand::Rng;

use crate::quantum::Spectrum;
use crate::tol;

/// Outcome of a dominance comparison between two spectra.
///
/// "Less mixed" means the spectrum whose partial sums dominate (it is more
/// concentrated); its entropy is the smaller of the two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixingComparison {
    /// The left spectrum is less mixed; the right one is more mixed.
    LeftLessMixed,
    /// The right spectrum is less mixed; the left one is more mixed.
    RightLessMixed,
    /// All partial sums tie within tolerance.
    EquallyMixed,
    /// Dominance flips direction between prefix lengths.
    Incomparable,
}

/// Cumulative sums of a descending spectrum.
///
/// The result is nondecreasing with concave increments and its last entry
/// is 1 within the spectrum's own tolerance. Sortedness is an invariant of
/// [`Spectrum`] itself, so this cannot fail.
pub fn partial_sums(s: &Spectrum) -> Vec<f64> {
    s.eigenvalues()
        .iter()
        .scan(0.0, |acc, &l| {
            *acc += l;
            Some(*acc)
        })
        .collect()
}

/// Compares two spectra in the mixing order after zero-padding them to a
/// common length.
///
/// Partial-sum differences smaller than [`tol::DOMINANCE_TIE`] count as
/// ties at that prefix, so rounding noise cannot produce a spurious
/// `Incomparable` verdict.
pub fn compare_mixing(a: &Spectrum, b: &Spectrum) -> MixingComparison {
    let n = a.len().max(b.len());
    let padded = |s: &Spectrum| -> Vec<f64> {
        let mut sums = partial_sums(s);
        let last = *sums.last().expect("spectra are nonempty");
        sums.resize(n, last);
        sums
    };
    let pa = padded(a);
    let pb = padded(b);

    let mut a_dominates = true;
    let mut b_dominates = true;
    for (&x, &y) in pa.iter().zip(&pb) {
        if x < y - tol::DOMINANCE_TIE {
            a_dominates = false;
        }
        if y < x - tol::DOMINANCE_TIE {
            b_dominates = false;
        }
    }
    match (a_dominates, b_dominates) {
        (true, true) => MixingComparison::EquallyMixed,
        (true, false) => MixingComparison::LeftLessMixed,
        (false, true) => MixingComparison::RightLessMixed,
        (false, false) => MixingComparison::Incomparable,
    }
}

/// Random spectrum: uniform(0,1) entries normalized and sorted descending.
pub fn random_spectrum<R: Rng>(n: usize, rng: &mut R) -> Spectrum {
    let mut vals: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
    let sum: f64 = vals.iter().sum();
    for v in &mut vals {
        *v /= sum;
    }
    vals.sort_by(|a, b| b.total_cmp(a));
    Spectrum::new(vals).expect("normalized descending values form a spectrum")
}
