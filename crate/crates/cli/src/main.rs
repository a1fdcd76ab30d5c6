use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use entrobell::prob::JointDist3;
use entrobell::quantum::DensityOperator;
use entrobell::thermo::ThermoConfig;
use entrobell::InequalityReport;
use entrobell_cli::campaign::{run_campaign, CampaignKind, CampaignSpec};
use entrobell_cli::output::{
    report_line, reports_to_csv, sig6, table_to_csv, to_json_string, values_to_csv,
};
use entrobell_cli::scenario::{self, ScenarioResult};
use entrobell_cli::{scenario_must_hold, universally_must_hold, OutputDoc};

#[derive(Parser)]
#[command(
    name = "entrobell",
    version,
    about = "Entropic Bell inequality checks, entropy campaigns, and thermodynamic scenarios",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the inequality battery on a JSON input file
    Check(CheckArgs),
    /// Run a seeded random property campaign
    Campaign(CampaignArgs),
    /// Run a named demonstration scenario
    Scenario(ScenarioArgs),
    /// Re-emit a JSON results document as text, CSV, or normalized JSON
    Report(ReportArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// Log base for displayed entropy values. Inequality reports are defined in
/// bits; choosing `e` rescales the displayed lhs/bound/margin by ln 2.
/// Thermo quantities always carry k·nats and ignore this flag.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LogBase {
    #[value(name = "2")]
    Two,
    #[value(name = "e")]
    E,
}

impl LogBase {
    fn scale(self) -> f64 {
        match self {
            LogBase::Two => 1.0,
            LogBase::E => std::f64::consts::LN_2,
        }
    }
}

#[derive(Args, Clone)]
struct OutputOpts {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    /// Input is a JointDist3 document: {"probs": [[[...]]], "shape": [x,y,z]}
    Classical,
    /// Input is a three-qubit DensityOperator document: {"dims":[2,2,2],"re":...,"im":...}
    Quantum,
}

#[derive(Args)]
struct CheckArgs {
    /// JSON input file
    #[arg(long)]
    input: PathBuf,
    /// How to interpret the input
    #[arg(long, value_enum)]
    kind: CheckKind,
    /// Entropy log base for displayed values (2 = bits, e = nats)
    #[arg(long, value_enum, default_value = "2")]
    log_base: LogBase,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct CampaignArgs {
    /// Campaign family
    #[arg(long, value_enum)]
    kind: CampaignKind,
    /// Number of random trials
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// Master seed; trial i draws from the (seed, i) substream
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Campaign-level violation threshold on report margins
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Compartment-size cap for the thermo-mixing scan
    #[arg(long, default_value_t = 6)]
    max_sites: usize,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct ScenarioArgs {
    #[command(subcommand)]
    which: ScenarioCmd,
}

#[derive(Args, Clone)]
struct ThermoOpts {
    /// Entropy units per nat (defaults to 1; use 1.380649e-23 for J/K)
    #[arg(long)]
    k: Option<f64>,
    /// Action constant (defaults to the SI Planck constant)
    #[arg(long)]
    h: Option<f64>,
    /// JSON config file {"k": ..., "h": ...}; flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
}

impl ThermoOpts {
    fn resolve(&self) -> anyhow::Result<ThermoConfig> {
        let base = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                serde_json::from_str::<ThermoConfig>(&text)
                    .with_context(|| format!("parsing {}", path.display()))?
            }
            None => ThermoConfig::default(),
        };
        Ok(ThermoConfig::new(
            self.k.unwrap_or(base.k()),
            self.h.unwrap_or(base.h()),
        )?)
    }
}

#[derive(Subcommand)]
enum ScenarioCmd {
    /// Pure qubit next to an entangled pair: lhs = 2, violating the
    /// classical bound and meeting the quantum bound
    BellViolation {
        #[arg(long, value_enum, default_value = "2")]
        log_base: LogBase,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Uniform bit copied through identity transitions
    NoiselessChain {
        #[arg(long, value_enum, default_value = "2")]
        log_base: LogBase,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Entropy of mixing for two hard-core lattice compartments
    MixingLattice {
        /// Compartment sizes
        #[arg(long, num_args = 2, value_names = ["A", "B"], required = true)]
        sites: Vec<usize>,
        /// Particle counts per compartment
        #[arg(long, num_args = 2, value_names = ["A", "B"], required = true)]
        particles: Vec<usize>,
        /// Treat the compartments as holding distinct species
        #[arg(long)]
        distinct: bool,
        #[command(flatten)]
        thermo: ThermoOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// (T, S) sweep of the Sackur-Tetrode entropy across its sign change
    SackurTetrodeSweep {
        /// Number density in particles per m³
        #[arg(long, default_value_t = scenario::SWEEP_DENSITY_PER_M3)]
        density: f64,
        /// Particle mass in atomic mass units
        #[arg(long, default_value_t = scenario::HELIUM_MASS_AMU)]
        mass_amu: f64,
        #[arg(long, default_value_t = 1e-3)]
        tmin: f64,
        #[arg(long, default_value_t = 1e-1)]
        tmax: f64,
        #[arg(long, default_value_t = 60)]
        points: usize,
        #[command(flatten)]
        thermo: ThermoOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Phase-space entropy k·ln((Δp·Δq)^d / h^d) with the uncertainty floor
    PhaseSpace {
        /// Momentum spread
        #[arg(long)]
        dp: f64,
        /// Position spread
        #[arg(long)]
        dq: f64,
        /// Degrees of freedom
        #[arg(long, default_value_t = 1)]
        dof: u32,
        #[command(flatten)]
        thermo: ThermoOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
}

#[derive(Args)]
struct ReportArgs {
    /// A JSON results document previously produced by this tool
    #[arg(long)]
    input: PathBuf,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if e.kind() == clap::error::ErrorKind::InvalidSubcommand
                && e.to_string().contains("entrobell scenario")
            {
                eprint!("{e}");
                eprintln!(
                    "available scenarios: bell-violation, noiseless-chain, mixing-lattice, \
                     sackur-tetrode-sweep, phase-space"
                );
                return ExitCode::from(2);
            }
            // help/version exit 0, parse errors exit 2
            e.exit()
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.cmd {
        Cmd::Check(args) => run_check(args),
        Cmd::Campaign(args) => run_campaign_cmd(args),
        Cmd::Scenario(args) => run_scenario_cmd(args.which),
        Cmd::Report(args) => run_report(args),
    }
}

fn emit(output: &OutputOpts, text: String) -> anyhow::Result<()> {
    match &output.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

/// Rescales displayed entropy values; the satisfied flag is untouched
/// (a positive factor preserves every margin sign).
fn scale_reports(reports: &mut [InequalityReport], factor: f64) {
    if factor == 1.0 {
        return;
    }
    for r in reports.iter_mut() {
        r.lhs *= factor;
        r.bound *= factor;
        r.margin *= factor;
    }
}

fn values_map(values: &[(String, f64)]) -> serde_json::Value {
    let map: BTreeMap<&str, f64> = values.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    serde_json::json!(map)
}

fn render_reports_text(
    title: &str,
    reports: &[InequalityReport],
    values: &[(String, f64)],
    notes: &[String],
    gating_failures: usize,
) -> String {
    let mut s = format!("{title}\n");
    for (k, v) in values {
        s.push_str(&format!("  {k} = {}\n", sig6(*v)));
    }
    for r in reports {
        s.push_str("  ");
        s.push_str(&report_line(r));
        s.push('\n');
    }
    for n in notes {
        s.push_str(&format!("  note: {n}\n"));
    }
    s.push_str(&format!(
        "result: {}\n",
        if gating_failures == 0 {
            "ok".to_string()
        } else {
            format!("{gating_failures} must-hold violation(s)")
        }
    ));
    s
}

fn run_check(args: CheckArgs) -> anyhow::Result<ExitCode> {
    let text = std::fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let (mut reports, mut notes, kind_name) = match args.kind {
        CheckKind::Classical => {
            let j: JointDist3 = serde_json::from_str(&text)
                .with_context(|| format!("parsing {} as a JointDist3", args.input.display()))?;
            let notes = vec![
                "pipelining and triangle checks are informational for arbitrary inputs \
                 (they require the Markov structure)"
                    .to_string(),
            ];
            (scenario::classical_reports(&j), notes, "classical")
        }
        CheckKind::Quantum => {
            let rho: DensityOperator = serde_json::from_str(&text).with_context(|| {
                format!("parsing {} as a DensityOperator", args.input.display())
            })?;
            let (reports, notes) = scenario::quantum_reports(&rho)?;
            (reports, notes, "quantum")
        }
    };
    let gating = reports
        .iter()
        .filter(|r| universally_must_hold(&r.name) && !r.satisfied)
        .count();
    scale_reports(&mut reports, args.log_base.scale());
    if args.log_base == LogBase::E {
        notes.push("entropy values displayed in nats (scaled by ln 2)".to_string());
    }

    let spec = serde_json::json!({
        "command": "check",
        "kind": kind_name,
        "input": args.input.display().to_string(),
    });
    let summary = serde_json::json!({
        "reports": reports.len(),
        "notes": notes,
        "must_hold_failures": gating,
        "passed": gating == 0,
    });
    let text_out = match args.output.format {
        Format::Json => to_json_string(&OutputDoc::new(None, spec, reports, summary)),
        Format::Csv => reports_to_csv(&reports),
        Format::Text => render_reports_text(
            &format!("check ({kind_name}) on {}", args.input.display()),
            &reports,
            &[],
            &notes,
            gating,
        ),
    };
    emit(&args.output, text_out)?;
    Ok(if gating == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_campaign_cmd(args: CampaignArgs) -> anyhow::Result<ExitCode> {
    let spec = CampaignSpec {
        kind: args.kind,
        trials: args.trials,
        seed: args.seed,
        tolerance: args.tolerance,
        max_sites: args.max_sites,
    };
    let outcome = run_campaign(&spec)?;
    let passed = outcome.summary.passed;

    let text_out = match args.output.format {
        Format::Json => to_json_string(&OutputDoc::new(
            Some(spec.seed),
            serde_json::to_value(&outcome.spec)?,
            outcome.failures.clone(),
            serde_json::to_value(&outcome.summary)?,
        )),
        Format::Csv => reports_to_csv(&outcome.failures),
        Format::Text => {
            let s = &outcome.summary;
            let mut t = format!(
                "campaign {}: {} trials (seed {})\n",
                spec.kind, s.trials_run, spec.seed
            );
            t.push_str(&format!(
                "  checks evaluated: {}, worst margin: {}\n",
                s.checks_evaluated,
                sig6(s.worst_margin)
            ));
            for (name, stats) in &s.per_inequality {
                t.push_str(&format!(
                    "  {name:<34} satisfied {:>7}  violations {:>3}  min margin {}\n",
                    stats.satisfied,
                    stats.violations,
                    sig6(stats.min_margin)
                ));
            }
            for n in &s.notes {
                t.push_str(&format!("  note: {n}\n"));
            }
            for f in &outcome.failures {
                t.push_str("  FAILED ");
                t.push_str(&report_line(f));
                t.push('\n');
            }
            t.push_str(&format!(
                "result: {}\n",
                if passed {
                    "ok".to_string()
                } else {
                    format!("{} must-hold failure(s)", s.must_hold_failures)
                }
            ));
            t
        }
    };
    emit(&args.output, text_out)?;
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn scenario_doc(
    name: &str,
    params: serde_json::Value,
    result: &ScenarioResult,
    gating: usize,
) -> OutputDoc {
    let mut summary = serde_json::Map::new();
    summary.insert("values".into(), values_map(&result.values));
    summary.insert("notes".into(), serde_json::json!(result.notes));
    if let Some(sweep) = &result.sweep {
        summary.insert(
            "sweep".into(),
            serde_json::json!({
                "columns": [sweep.columns.0, sweep.columns.1],
                "rows": sweep.rows,
            }),
        );
    }
    summary.insert("passed".into(), serde_json::json!(gating == 0));
    OutputDoc::new(
        None,
        serde_json::json!({"command": "scenario", "scenario": name, "params": params}),
        result.reports.clone(),
        serde_json::Value::Object(summary),
    )
}

fn emit_scenario(
    name: &str,
    params: serde_json::Value,
    mut result: ScenarioResult,
    output: &OutputOpts,
    log_base: LogBase,
) -> anyhow::Result<ExitCode> {
    let gating = result
        .reports
        .iter()
        .filter(|r| scenario_must_hold(&r.name) && !r.satisfied)
        .count();
    scale_reports(&mut result.reports, log_base.scale());
    if log_base.scale() != 1.0 {
        for (_, v) in result.values.iter_mut() {
            *v *= log_base.scale();
        }
    }
    let text_out = match output.format {
        Format::Json => to_json_string(&scenario_doc(name, params, &result, gating)),
        Format::Csv => {
            if let Some(sweep) = &result.sweep {
                table_to_csv(
                    (sweep.columns.0.as_str(), sweep.columns.1.as_str()),
                    &sweep.rows,
                )
            } else if !result.reports.is_empty() {
                reports_to_csv(&result.reports)
            } else {
                values_to_csv(&result.values)
            }
        }
        Format::Text => {
            let mut t = render_reports_text(
                &format!("scenario {name}"),
                &result.reports,
                &result.values,
                &result.notes,
                gating,
            );
            if let Some(sweep) = &result.sweep {
                t.push_str(&format!(
                    "  sweep: {} rows ({} → {}); use --format csv for the table\n",
                    sweep.rows.len(),
                    sig6(sweep.rows.first().map(|r| r.0).unwrap_or(0.0)),
                    sig6(sweep.rows.last().map(|r| r.0).unwrap_or(0.0)),
                ));
            }
            t
        }
    };
    emit(output, text_out)?;
    Ok(if gating == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_scenario_cmd(cmd: ScenarioCmd) -> anyhow::Result<ExitCode> {
    match cmd {
        ScenarioCmd::BellViolation { log_base, output } => emit_scenario(
            "bell-violation",
            serde_json::json!({}),
            scenario::bell_violation()?,
            &output,
            log_base,
        ),
        ScenarioCmd::NoiselessChain { log_base, output } => emit_scenario(
            "noiseless-chain",
            serde_json::json!({}),
            scenario::noiseless_chain()?,
            &output,
            log_base,
        ),
        ScenarioCmd::MixingLattice {
            sites,
            particles,
            distinct,
            thermo,
            output,
        } => {
            let cfg = thermo.resolve()?;
            let params = serde_json::json!({
                "sites": sites, "particles": particles, "distinct": distinct,
                "k": cfg.k(), "h": cfg.h(),
            });
            emit_scenario(
                "mixing-lattice",
                params,
                scenario::mixing_lattice(
                    (sites[0], sites[1]),
                    (particles[0], particles[1]),
                    distinct,
                    &cfg,
                )?,
                &output,
                LogBase::Two,
            )
        }
        ScenarioCmd::SackurTetrodeSweep {
            density,
            mass_amu,
            tmin,
            tmax,
            points,
            thermo,
            output,
        } => {
            let cfg = thermo.resolve()?;
            let params = serde_json::json!({
                "density": density, "mass_amu": mass_amu,
                "tmin": tmin, "tmax": tmax, "points": points,
                "k": cfg.k(), "h": cfg.h(),
            });
            emit_scenario(
                "sackur-tetrode-sweep",
                params,
                scenario::sackur_tetrode_sweep(density, mass_amu, tmin, tmax, points, &cfg)?,
                &output,
                LogBase::Two,
            )
        }
        ScenarioCmd::PhaseSpace {
            dp,
            dq,
            dof,
            thermo,
            output,
        } => {
            let cfg = thermo.resolve()?;
            let params = serde_json::json!({
                "dp": dp, "dq": dq, "dof": dof, "k": cfg.k(), "h": cfg.h(),
            });
            emit_scenario(
                "phase-space",
                params,
                scenario::phase_space(dp, dq, dof, &cfg)?,
                &output,
                LogBase::Two,
            )
        }
    }
}

fn run_report(args: ReportArgs) -> anyhow::Result<ExitCode> {
    let text = std::fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let doc: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", args.input.display()))?;
    let results = doc
        .get("results")
        .cloned()
        .ok_or_else(|| anyhow::anyhow!("document has no \"results\" array"))?;
    let reports: Vec<InequalityReport> = serde_json::from_value(results)
        .context("\"results\" is not a list of inequality reports")?;

    let out = OutputOpts {
        format: args.format,
        out: args.out.clone(),
    };
    let text_out = match args.format {
        Format::Json => to_json_string(&doc),
        Format::Csv => reports_to_csv(&reports),
        Format::Text => {
            let mut t = format!("report from {}\n", args.input.display());
            for r in &reports {
                t.push_str("  ");
                t.push_str(&report_line(r));
                t.push('\n');
            }
            if let Some(summary) = doc.get("summary") {
                t.push_str(&format!("summary: {summary}\n"));
            }
            t
        }
    };
    emit(&out, text_out)?;
    Ok(ExitCode::SUCCESS)
}
