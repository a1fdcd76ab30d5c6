//! Statistical-thermodynamic entropies: microstate counting on a hard-core
//! lattice, the phase-space volume form with its uncertainty floor, and the
//! Sackur-Tetrode ideal-gas entropy.
//!
//! Entropies here are k·ln(multiplicity or volume ratio). [`ThermoConfig`]
//! carries k (defaulting to 1, i.e. entropy in nats) and the action
//! constant h (defaulting to the SI Planck constant); switch k to
//! [`BOLTZMANN_K`] for J/K.
//!
//! The uncertainty floor in [`phase_space_entropy`] is Δp·Δq ≥ h — the
//! bound that makes the logarithm's argument at least 1 — not the ħ/2 of
//! the variance form of the uncertainty relation.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::{Error, Result};

/// Planck constant, J·s (exact SI value).
pub const PLANCK_H: f64 = 6.626_070_15e-34;

/// Boltzmann constant, J/K (exact SI value).
pub const BOLTZMANN_K: f64 = 1.380_649e-23;

/// Avogadro constant, 1/mol (exact SI value).
pub const AVOGADRO: f64 = 6.022_140_76e23;

/// Atomic mass unit, kg.
pub const ATOMIC_MASS_KG: f64 = 1.660_539_066_60e-27;

/// Unit configuration: k in entropy units per nat, h in action units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ThermoConfigJson", into = "ThermoConfigJson")]
pub struct ThermoConfig {
    k: f64,
    h: f64,
}

impl ThermoConfig {
    pub fn new(k: f64, h: f64) -> Result<Self> {
        if k <= 0.0 || h <= 0.0 || !k.is_finite() || !h.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "k and h must be positive and finite, got k = {k}, h = {h}"
            )));
        }
        Ok(Self { k, h })
    }

    /// SI units: k in J/K, h in J·s.
    pub fn si() -> Self {
        Self {
            k: BOLTZMANN_K,
            h: PLANCK_H,
        }
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn h(&self) -> f64 {
        self.h
    }
}

impl Default for ThermoConfig {
    /// Dimensionless entropy (k = 1) with the SI Planck constant.
    fn default() -> Self {
        Self {
            k: 1.0,
            h: PLANCK_H,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ThermoConfigJson {
    #[serde(default = "default_k")]
    k: f64,
    #[serde(default = "default_h")]
    h: f64,
}

fn default_k() -> f64 {
    1.0
}

fn default_h() -> f64 {
    PLANCK_H
}

impl TryFrom<ThermoConfigJson> for ThermoConfig {
    type Error = Error;
    fn try_from(json: ThermoConfigJson) -> Result<Self> {
        ThermoConfig::new(json.k, json.h)
    }
}

impl From<ThermoConfig> for ThermoConfigJson {
    fn from(cfg: ThermoConfig) -> Self {
        Self { k: cfg.k, h: cfg.h }
    }
}

/// Two hard-core lattice compartments (at most one particle per site) that
/// can be joined into one lattice of `sites_a + sites_b` sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeScenario {
    pub sites_a: usize,
    pub sites_b: usize,
    pub particles_a: usize,
    pub particles_b: usize,
    pub same_species: bool,
}

impl LatticeScenario {
    pub fn new(
        sites_a: usize,
        sites_b: usize,
        particles_a: usize,
        particles_b: usize,
        same_species: bool,
    ) -> Result<Self> {
        if sites_a == 0 || sites_b == 0 {
            return Err(Error::InvalidArgument(
                "compartments need at least one site".into(),
            ));
        }
        if particles_a > sites_a || particles_b > sites_b {
            return Err(Error::InvalidArgument(format!(
                "particles exceed sites: ({particles_a} of {sites_a}, {particles_b} of {sites_b})"
            )));
        }
        Ok(Self {
            sites_a,
            sites_b,
            particles_a,
            particles_b,
            same_species,
        })
    }
}

/// Exact C(n, k) within u128 via Pascal's rule; covers the joined lattice
/// up to 128 sites (C(128, 64) still fits in u128).
fn pascal_binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    if n > 128 {
        return None;
    }
    let mut row = vec![0u128; n + 1];
    row[0] = 1;
    for _ in 1..=n {
        for j in (1..row.len()).rev() {
            row[j] += row[j - 1];
        }
    }
    Some(row[k])
}

/// ln C(n, k): exact integer path up to n = 128, log-gamma beyond.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    match pascal_binomial(n as usize, k as usize) {
        Some(c) => (c as f64).ln(),
        None => {
            let (n, k) = (n as f64, k as f64);
            ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0)
        }
    }
}

/// S = k·ln Ω for a multiplicity Ω ≥ 1; zero for a single microstate.
pub fn boltzmann_entropy(multiplicity: u128, cfg: &ThermoConfig) -> Result<f64> {
    if multiplicity < 1 {
        return Err(Error::InvalidArgument(
            "multiplicity must be at least 1".into(),
        ));
    }
    Ok(cfg.k * (multiplicity as f64).ln())
}

/// Evaluates k·ln Ω directly alongside the entropy of the explicit uniform
/// distribution (1/Ω, …, 1/Ω), summed term by term.
///
/// The two agree within 1e-10 relative — the uniform case is where the
/// multiplicity form and the distribution form coincide. Returns
/// (boltzmann, gibbs_shannon).
///
/// Ω above 10⁶ is refused to keep the explicit summation honest; use
/// [`boltzmann_entropy`] for large multiplicities.
pub fn uniform_equivalence(omega: u64, cfg: &ThermoConfig) -> Result<(f64, f64)> {
    if omega < 1 {
        return Err(Error::InvalidArgument(
            "multiplicity must be at least 1".into(),
        ));
    }
    if omega > 1_000_000 {
        return Err(Error::InvalidArgument(format!(
            "Ω = {omega} is too large for explicit summation; use boltzmann_entropy"
        )));
    }
    let boltzmann = boltzmann_entropy(omega as u128, cfg)?;
    let p = 1.0 / omega as f64;
    let mut gibbs_shannon = 0.0;
    for _ in 0..omega {
        gibbs_shannon -= cfg.k * p * p.ln();
    }
    Ok((boltzmann, gibbs_shannon))
}

fn ln_multiplicities(s: &LatticeScenario) -> (f64, f64) {
    let before = ln_binomial(s.sites_a as u64, s.particles_a as u64)
        + ln_binomial(s.sites_b as u64, s.particles_b as u64);
    let sites = (s.sites_a + s.sites_b) as u64;
    let after = if s.same_species {
        ln_binomial(sites, (s.particles_a + s.particles_b) as u64)
    } else {
        // place species A, then species B on the remaining sites
        ln_binomial(sites, s.particles_a as u64)
            + ln_binomial(sites - s.particles_a as u64, s.particles_b as u64)
    };
    (before, after)
}

/// Entropy of mixing S = k·(ln Ω_after − ln Ω_before) for joining the two
/// compartments.
///
/// Ω_before counts placements within the separate compartments; Ω_after
/// counts placements on the joined lattice, as a single combined count for
/// one species or as sequential exclusive placement for two. Joining never
/// removes configurations, so the result is nonnegative (≥ −1e-12 after
/// rounding); it is zero when identical particles fill every site.
pub fn entropy_of_mixing(s: &LatticeScenario, cfg: &ThermoConfig) -> f64 {
    let (before, after) = ln_multiplicities(s);
    cfg.k * (after - before)
}

/// Phase-space entropy S = k·ln((Δp·Δq)^d / h^d) for d degrees of freedom.
///
/// The boolean flags the regime Δp·Δq < h where the logarithm's argument
/// drops below 1 and the entropy goes negative — the region excluded by
/// the uncertainty floor. S ≥ 0 exactly when the flag is false.
pub fn phase_space_entropy(dp: f64, dq: f64, dof: u32, cfg: &ThermoConfig) -> Result<(f64, bool)> {
    if dp <= 0.0 || dq <= 0.0 || !dp.is_finite() || !dq.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "spreads must be positive and finite, got Δp = {dp}, Δq = {dq}"
        )));
    }
    if dof == 0 {
        return Err(Error::InvalidArgument(
            "need at least one degree of freedom".into(),
        ));
    }
    let ratio = dp * dq / cfg.h;
    Ok((cfg.k * dof as f64 * ratio.ln(), ratio < 1.0))
}

/// Sackur-Tetrode entropy of a monatomic ideal gas:
///
/// ```text
/// S = N·k·[ln(V / (N·λ³)) + 5/2],   λ = h / √(2π·m·k_B·T)
/// ```
///
/// The thermal wavelength always uses the SI Boltzmann constant (and
/// `cfg.h`) so the logarithm's argument stays dimensionless; `cfg.k` only
/// sets the output units. The value goes negative at low temperature —
/// that sign change is the behavior under test, not an error.
pub fn sackur_tetrode(
    n_particles: f64,
    volume_m3: f64,
    temperature_k: f64,
    mass_kg: f64,
    cfg: &ThermoConfig,
) -> Result<f64> {
    for (name, v) in [
        ("n_particles", n_particles),
        ("volume", volume_m3),
        ("temperature", temperature_k),
        ("mass", mass_kg),
    ] {
        if v <= 0.0 || !v.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "{name} must be positive and finite, got {v}"
            )));
        }
    }
    let lambda =
        cfg.h / (2.0 * std::f64::consts::PI * mass_kg * BOLTZMANN_K * temperature_k).sqrt();
    let arg = volume_m3 / (n_particles * lambda.powi(3));
    Ok(n_particles * cfg.k * (arg.ln() + 2.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn k1() -> ThermoConfig {
        ThermoConfig::default()
    }

    #[test]
    fn boltzmann_examples() {
        assert_relative_eq!(boltzmann_entropy(1, &k1()).unwrap(), 0.0);
        assert_relative_eq!(
            boltzmann_entropy(6, &k1()).unwrap(),
            6.0f64.ln(),
            epsilon = 1e-12
        );
        assert_relative_eq!(6.0f64.ln(), 1.791_759_469_228_055, epsilon = 1e-12);
        assert!(boltzmann_entropy(0, &k1()).is_err());
        // k scales the result linearly
        let cfg = ThermoConfig::new(2.0, PLANCK_H).unwrap();
        assert_relative_eq!(
            boltzmann_entropy(6, &cfg).unwrap(),
            2.0 * 6.0f64.ln(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn pascal_binomial_small_values() {
        assert_eq!(pascal_binomial(4, 2), Some(6));
        assert_eq!(pascal_binomial(5, 0), Some(1));
        assert_eq!(pascal_binomial(5, 5), Some(1));
        assert_eq!(pascal_binomial(2, 3), Some(0));
        assert_eq!(pascal_binomial(64, 32), Some(1_832_624_140_942_590_534));
        assert!(pascal_binomial(129, 2).is_none());
    }

    #[test]
    fn ln_binomial_exact_and_gamma_paths_agree() {
        // compare the exact path at n = 120 with the log-gamma evaluation
        for k in [0u64, 1, 17, 60, 119, 120] {
            let exact = (pascal_binomial(120, k as usize).unwrap() as f64).ln();
            let gamma = ln_gamma(121.0) - ln_gamma(k as f64 + 1.0) - ln_gamma(121.0 - k as f64);
            assert_relative_eq!(exact, gamma, epsilon = 1e-10);
            assert_relative_eq!(ln_binomial(120, k), exact, epsilon = 1e-12);
        }
        // beyond the exact range the gamma path takes over and stays finite
        assert!(ln_binomial(500, 250).is_finite());
    }

    #[test]
    fn uniform_equivalence_examples() {
        let (b, g) = uniform_equivalence(2, &k1()).unwrap();
        assert_relative_eq!(b, 2.0f64.ln(), epsilon = 1e-14);
        assert_relative_eq!(g, 2.0f64.ln(), epsilon = 1e-12);

        let (b, g) = uniform_equivalence(1, &k1()).unwrap();
        assert_eq!(b, 0.0);
        assert_eq!(g, 0.0);

        let (b, g) = uniform_equivalence(1000, &k1()).unwrap();
        assert!((b - g).abs() / b < 1e-10);

        assert!(uniform_equivalence(0, &k1()).is_err());
        assert!(uniform_equivalence(1_000_001, &k1()).is_err());
    }

    #[test]
    fn mixing_full_lattice_distinct_species() {
        // both compartments full: before 1·1 = 1, after C(4,2)·C(2,2) = 6
        let s = LatticeScenario::new(2, 2, 2, 2, false).unwrap();
        assert_relative_eq!(entropy_of_mixing(&s, &k1()), 6.0f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn mixing_full_lattice_same_species_is_zero() {
        let s = LatticeScenario::new(2, 2, 2, 2, true).unwrap();
        assert_relative_eq!(entropy_of_mixing(&s, &k1()), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn mixing_no_particles_is_zero() {
        for same in [false, true] {
            let s = LatticeScenario::new(3, 4, 0, 0, same).unwrap();
            assert_relative_eq!(entropy_of_mixing(&s, &k1()), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn mixing_is_nonnegative_over_small_scan() {
        for sa in 1..=8usize {
            for sb in 1..=8usize {
                for pa in 0..=sa {
                    for pb in 0..=sb {
                        let distinct = LatticeScenario::new(sa, sb, pa, pb, false).unwrap();
                        let same = LatticeScenario::new(sa, sb, pa, pb, true).unwrap();
                        let sd = entropy_of_mixing(&distinct, &k1());
                        let ss = entropy_of_mixing(&same, &k1());
                        assert!(sd >= -1e-12, "distinct ({sa},{sb},{pa},{pb}) gave {sd}");
                        assert!(ss >= -1e-12, "same ({sa},{sb},{pa},{pb}) gave {ss}");
                        assert!(
                            ss <= sd + 1e-12,
                            "same exceeds distinct at ({sa},{sb},{pa},{pb})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn scenario_validation() {
        assert!(LatticeScenario::new(0, 2, 0, 0, false).is_err());
        assert!(LatticeScenario::new(2, 2, 3, 0, false).is_err());
    }

    #[test]
    fn phase_space_examples() {
        let cfg = k1();
        // Δp·Δq = h: the boundary of the floor, entropy exactly zero
        let (s, flag) = phase_space_entropy(PLANCK_H, 1.0, 3, &cfg).unwrap();
        assert_relative_eq!(s, 0.0, epsilon = 1e-12);
        assert!(!flag);

        // Δp·Δq = h·e with one degree of freedom: entropy is exactly k
        let (s, flag) = phase_space_entropy(PLANCK_H * std::f64::consts::E, 1.0, 1, &cfg).unwrap();
        assert_relative_eq!(s, 1.0, epsilon = 1e-12);
        assert!(!flag);

        // Δp·Δq = h/2: the forbidden regime, negative entropy and the flag
        let (s, flag) = phase_space_entropy(PLANCK_H / 2.0, 1.0, 1, &cfg).unwrap();
        assert_relative_eq!(s, -(2.0f64.ln()), epsilon = 1e-12);
        assert!(flag);

        assert!(phase_space_entropy(-1.0, 1.0, 1, &cfg).is_err());
        assert!(phase_space_entropy(1.0, 0.0, 1, &cfg).is_err());
        assert!(phase_space_entropy(1.0, 1.0, 0, &cfg).is_err());
    }

    #[test]
    fn phase_space_sign_matches_the_floor_flag() {
        let cfg = k1();
        for i in 1..=200 {
            let ratio = 0.05 * i as f64; // spans both sides of the floor
            let (s, flag) = phase_space_entropy(ratio * PLANCK_H, 1.0, 2, &cfg).unwrap();
            assert_eq!(flag, ratio < 1.0);
            if flag {
                assert!(s < 0.0);
            } else {
                assert!(s >= 0.0);
            }
        }
    }

    #[test]
    fn sackur_tetrode_helium_near_room_temperature() {
        let cfg = ThermoConfig::si();
        let mass = 4.002_602 * ATOMIC_MASS_KG;
        // one mole in 0.025 m³ at 300 K: positive, order 10² J/K
        let s = sackur_tetrode(AVOGADRO, 0.025, 300.0, mass, &cfg).unwrap();
        assert!(s > 100.0 && s < 200.0, "got {s} J/K");

        // standard conditions (298.15 K, 1 bar): tabulated molar entropy of
        // helium is 126.15 J/(mol·K)
        let v = AVOGADRO * BOLTZMANN_K * 298.15 / 1.0e5;
        let s = sackur_tetrode(AVOGADRO, v, 298.15, mass, &cfg).unwrap();
        assert_relative_eq!(s, 126.15, max_relative = 5e-3);
    }

    #[test]
    fn sackur_tetrode_increases_with_temperature() {
        let cfg = ThermoConfig::si();
        let mass = 4.002_602 * ATOMIC_MASS_KG;
        let mut prev = f64::NEG_INFINITY;
        let mut t = 1e-4;
        while t < 1e4 {
            let s = sackur_tetrode(1e24, 1.0, t, mass, &cfg).unwrap();
            assert!(s > prev, "not increasing at T = {t}");
            prev = s;
            t *= 3.0;
        }
    }

    #[test]
    fn sackur_tetrode_rejects_nonpositive_inputs() {
        let cfg = ThermoConfig::si();
        assert!(sackur_tetrode(0.0, 1.0, 1.0, 1.0, &cfg).is_err());
        assert!(sackur_tetrode(1.0, -1.0, 1.0, 1.0, &cfg).is_err());
        assert!(sackur_tetrode(1.0, 1.0, 0.0, 1.0, &cfg).is_err());
        assert!(sackur_tetrode(1.0, 1.0, 1.0, f64::NAN, &cfg).is_err());
    }

    #[test]
    fn thermo_config_validation_and_defaults() {
        assert!(ThermoConfig::new(0.0, 1.0).is_err());
        assert!(ThermoConfig::new(1.0, -2.0).is_err());
        let cfg = ThermoConfig::default();
        assert_eq!(cfg.k(), 1.0);
        assert_eq!(cfg.h(), PLANCK_H);
    }
}
