//! Named demonstration scenarios with fixed constructions.

use anyhow::Context;
use entrobell::inequality::{
    bounded_difference_checks, cerf_adami_classical, cerf_adami_quantum, pipelining_check,
    subadditivity_check, triangle_check,
};
use entrobell::linalg::Complex64;
use entrobell::prob::{markov_chain, JointDist3, ProbDist, StochasticMatrix};
use entrobell::quantum::{bell_pair, partial_trace, tensor, von_neumann_entropy, DensityOperator};
use entrobell::thermo::{
    entropy_of_mixing, phase_space_entropy, sackur_tetrode, LatticeScenario, ThermoConfig,
    ATOMIC_MASS_KG,
};
use entrobell::InequalityReport;

/// Helium-gas number density (per m³) whose Sackur-Tetrode sign change sits
/// at ≈1.0597e-2 K; the default for the sweep scenario.
pub const SWEEP_DENSITY_PER_M3: f64 = 2.0e25;

/// Helium-4 mass in unified atomic mass units.
pub const HELIUM_MASS_AMU: f64 = 4.002_602;

#[derive(Debug, Clone)]
pub struct Sweep {
    pub columns: (String, String),
    pub rows: Vec<(f64, f64)>,
}

/// What a scenario produced: inequality reports, named values, an optional
/// sweep table, and free-form notes.
#[derive(Debug, Clone, Default)]
pub struct ScenarioResult {
    pub reports: Vec<InequalityReport>,
    pub values: Vec<(String, f64)>,
    pub sweep: Option<Sweep>,
    pub notes: Vec<String>,
}

/// The bound-2 configuration: a pure unentangled qubit next to a Bell pair.
pub fn bell_violation() -> anyhow::Result<ScenarioResult> {
    let qubit = DensityOperator::from_pure_state(&[Complex64::ONE, Complex64::ZERO], vec![2])?;
    let rho = tensor(&qubit, &bell_pair());

    let (reports, mut notes) = quantum_reports(&rho)?;
    let lhs = reports
        .iter()
        .find(|r| r.name == "cerf_adami_quantum")
        .map(|r| r.lhs)
        .expect("quantum report is always present");

    let s_b = von_neumann_entropy(&partial_trace(&rho, &[1])?);
    let s_c = von_neumann_entropy(&partial_trace(&rho, &[2])?);
    let s_bc = von_neumann_entropy(&partial_trace(&rho, &[1, 2])?);

    notes.insert(
        0,
        "entangled pair: joint entropy 0, each half entropy 1; the classical bound 1 \
         is exceeded while the quantum bound 2 is met exactly"
            .into(),
    );
    Ok(ScenarioResult {
        values: vec![
            ("lhs".into(), lhs),
            ("entropy_b".into(), s_b),
            ("entropy_c".into(), s_c),
            ("entropy_bc".into(), s_bc),
        ],
        reports,
        sweep: None,
        notes,
    })
}

/// Uniform bit copied through two identity transitions: every classical
/// inequality lands on its margin-0 or margin-1 edge.
pub fn noiseless_chain() -> anyhow::Result<ScenarioResult> {
    let px = ProbDist::uniform(2)?;
    let id = StochasticMatrix::identity(2);
    let j = markov_chain(&px, &id, &id)?;
    Ok(ScenarioResult {
        reports: classical_reports(&j),
        ..Default::default()
    })
}

/// All seven classical checks for one joint.
pub fn classical_reports(j: &JointDist3) -> Vec<InequalityReport> {
    let mut reports = Vec::with_capacity(7);
    reports.extend(pipelining_check(j));
    reports.push(triangle_check(j));
    reports.extend(bounded_difference_checks(j));
    reports.push(cerf_adami_classical(j));
    reports
}

/// All quantum checks for one three-qubit operator, plus notes (e.g. when
/// the strong-subadditivity precondition fails and that check is skipped).
pub fn quantum_reports(
    rho: &DensityOperator,
) -> anyhow::Result<(Vec<InequalityReport>, Vec<String>)> {
    let bell = cerf_adami_quantum(rho)?;
    let sub = subadditivity_check(rho)?;
    let mut reports = bell.reports();
    reports.push(sub.pair_sum);
    let mut notes = Vec::new();
    match sub.strong {
        Some(strong) => reports.push(strong),
        None => notes.push("strong subadditivity skipped: S(A) is not 1 within 1e-6".to_string()),
    }
    Ok((reports, notes))
}

/// Entropy of mixing for a two-compartment hard-core lattice.
pub fn mixing_lattice(
    sites: (usize, usize),
    particles: (usize, usize),
    distinct: bool,
    cfg: &ThermoConfig,
) -> anyhow::Result<ScenarioResult> {
    let scenario = LatticeScenario::new(sites.0, sites.1, particles.0, particles.1, !distinct)
        .context("invalid lattice scenario")?;
    let s = entropy_of_mixing(&scenario, cfg);
    Ok(ScenarioResult {
        values: vec![("entropy_of_mixing".into(), s)],
        notes: vec![format!(
            "{} species on a {}+{} site lattice with {}+{} particles (k = {})",
            if distinct { "distinct" } else { "same" },
            sites.0,
            sites.1,
            particles.0,
            particles.1,
            cfg.k(),
        )],
        ..Default::default()
    })
}

/// Logarithmic (T, S) sweep of the Sackur-Tetrode entropy at fixed density,
/// crossing zero near the low-temperature limit of the formula's validity.
pub fn sackur_tetrode_sweep(
    density_per_m3: f64,
    mass_amu: f64,
    t_min: f64,
    t_max: f64,
    points: usize,
    cfg: &ThermoConfig,
) -> anyhow::Result<ScenarioResult> {
    if t_min <= 0.0 || t_max <= t_min {
        anyhow::bail!("need 0 < tmin < tmax");
    }
    if points < 2 {
        anyhow::bail!("need at least 2 sweep points");
    }
    let mass_kg = mass_amu * ATOMIC_MASS_KG;
    let ratio = (t_max / t_min).powf(1.0 / (points - 1) as f64);
    let mut rows = Vec::with_capacity(points);
    let mut t = t_min;
    for _ in 0..points {
        let s = sackur_tetrode(density_per_m3, 1.0, t, mass_kg, cfg)?;
        rows.push((t, s));
        t *= ratio;
    }
    let sign_changes = rows
        .windows(2)
        .filter(|w| w[0].1 < 0.0 && w[1].1 >= 0.0)
        .count();
    Ok(ScenarioResult {
        notes: vec![format!(
            "density {density_per_m3:e} /m³, mass {mass_amu} u, {points} points, \
             {sign_changes} sign change(s) in the sweep"
        )],
        sweep: Some(Sweep {
            columns: ("temperature_k".into(), "entropy".into()),
            rows,
        }),
        ..Default::default()
    })
}

/// Phase-space entropy with the uncertainty-floor flag.
pub fn phase_space(
    dp: f64,
    dq: f64,
    dof: u32,
    cfg: &ThermoConfig,
) -> anyhow::Result<ScenarioResult> {
    let (s, below_floor) = phase_space_entropy(dp, dq, dof, cfg)?;
    let mut notes = vec![format!("Δp·Δq / h = {:e}", dp * dq / cfg.h())];
    if below_floor {
        notes
            .push("Δp·Δq < h: below the uncertainty floor, where the entropy goes negative".into());
    }
    Ok(ScenarioResult {
        values: vec![
            ("entropy".into(), s),
            (
                "below_uncertainty_floor".into(),
                if below_floor { 1.0 } else { 0.0 },
            ),
        ],
        notes,
        ..Default::default()
    })
}
