//! Orchestration: resolves a mode + config into experiments, writes the
//! artifact set (config echo, CSV tables, report.txt, optional SVG charts),
//! and maps outcomes to exit codes — 0 pass, 1 experiment failure, 2 config
//! error (raised before this layer), 3 hypothesis unmet under strict mode.

use std::path::PathBuf;

use crate::catalog::{
    block_end, dc1_pair_for_shift, identity_system, logistic_convergent_system,
    monomial_escalation_system, sample_e, shift_counterexample, shift_system,
};
use crate::config::{to_canonical_toml, RunConfig};
use crate::emit;
use crate::harness::{
    counterexample_grid, run_dc2prime_invariance, run_dc3_counterexample, run_kato_invariance,
    run_liyorke_invariance, run_open_question_probe, run_sequence_chaos_construction, CheckStatus,
    Dc2PrimeParams, Dc3CounterexampleParams, ExperimentReport, KatoInvarianceParams,
    LiYorkeInvarianceParams, OpenQuestionParams, Overall, SequenceChaosParams,
};
use crate::kato::{default_probes, kato_verdict, KatoParams};
use crate::maps::MapSpec;
use crate::metrics::{
    classify_profile, distribution_estimate, pair_profile, ChaosVerdict, ClassifyThresholds,
    DistributionEstimate, LiYorkeOutcome, PairDistanceProfile, SampleTimes, GRID_TOP_FACTOR,
};
use crate::sampling::{deterministic_points, point_pairs};
use crate::space::{Point, Space};
use crate::system::{DecayRule, FamilyKind, Generator, NDSystem, TailRule};
use crate::{Error, Result};

/// What the CLI asked for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Run pairs forward and record distance profiles.
    Simulate,
    /// Profiles plus fraction tables and windowed estimates.
    Metrics,
    /// Metrics plus the verdict ladder per pair.
    Classify,
    /// Sensitivity + accessibility probes on the configured system.
    Kato,
    /// Bit-exact comparison of the k-th iterate orbit against the base.
    IterateCheck,
    /// One named harness experiment (config key `experiment`).
    Theorem,
    /// A canned end-to-end run: counterexample, sequence-chaos,
    /// logistic-invariance, or identity.
    Preset(String),
}

/// Exit status plus a one-line summary for the terminal.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub summary: String,
}

pub const KNOWN_PRESETS: [&str; 4] =
    ["counterexample", "sequence-chaos", "logistic-invariance", "identity"];

/// Builds the configured system.
pub fn build_system(cfg: &RunConfig) -> Result<NDSystem> {
    let sys = match cfg.system.as_str() {
        "logistic" => NDSystem::autonomous(
            Space::UnitInterval,
            MapSpec::logistic(cfg.parameter.unwrap_or(4.0)),
        ),
        "tent" => {
            NDSystem::autonomous(Space::UnitInterval, MapSpec::tent(cfg.parameter.unwrap_or(2.0)))
        }
        "doubling" => NDSystem::autonomous(Space::UnitInterval, MapSpec::Doubling),
        "identity" => identity_system(Space::UnitInterval),
        "monomial-escalation" => monomial_escalation_system(cfg.length),
        "shift" => shift_system(false),
        "shift-two-sided" => shift_system(true),
        "counterexample" => shift_counterexample(),
        "logistic-family" => logistic_convergent_system(),
        "tent-family" => NDSystem {
            space: Space::UnitInterval,
            generator: Generator::ConvergentFamily {
                family: FamilyKind::Tent,
                limit: cfg.parameter.unwrap_or(2.0),
                offset: 1.0,
                decay: DecayRule::Harmonic,
            },
        },
        "tent-doubling-cycle" => NDSystem {
            space: Space::UnitInterval,
            generator: Generator::ExplicitList {
                maps: vec![MapSpec::tent(2.0), MapSpec::Doubling],
                tail: TailRule::Cycle,
            },
        },
        other => {
            return Err(Error::Validation(vec![format!("system: unknown system {other:?}")]))
        }
    };
    sys.validate()?;
    Ok(sys)
}

/// The evenly spaced threshold grid for a space, honoring `grid_points`.
pub fn t_grid_for(cfg: &RunConfig, space: Space) -> Vec<f64> {
    let diam = space.diameter();
    let gp = cfg.grid_points.max(2);
    let mut grid: Vec<f64> = (1..=gp).map(|i| diam * i as f64 / gp as f64).collect();
    grid.push(diam * GRID_TOP_FACTOR);
    grid
}

fn thresholds_from(cfg: &RunConfig) -> ClassifyThresholds {
    ClassifyThresholds {
        eps_zero: cfg.eps_zero,
        one_tol: cfg.one_tol,
        gap: cfg.gap,
        ..ClassifyThresholds::default()
    }
}

/// Mode-specific defaults for keys the user left unset, so e.g. the
/// counterexample experiment gets the horizon its verdicts need without
/// forcing every other mode to that scale.
pub fn resolve(mode: &Mode, cfg: &RunConfig) -> RunConfig {
    let mut r = cfg.clone();
    match mode {
        Mode::Theorem => {
            let exp = r.experiment.clone().unwrap_or_default();
            match exp.as_str() {
                "dc3-counterexample" => {
                    if !r.is_set("horizon") {
                        r.horizon = 362_880;
                    }
                    if !r.is_set("window") {
                        r.window = 1.0;
                    }
                    if !r.is_set("eps_sep") {
                        r.eps_sep = 0.1;
                    }
                }
                "liyorke-invariance" => {
                    if !r.is_set("horizon") {
                        r.horizon = 20_000;
                    }
                    if !r.is_set("pairs") {
                        r.pairs = 40;
                    }
                    if !r.is_set("system") {
                        r.system = "logistic-family".into();
                    }
                }
                "dc2prime-invariance" => {
                    if !r.is_set("system") {
                        r.system = "tent".into();
                    }
                }
                "kato-invariance" => {
                    if !r.is_set("horizon") {
                        r.horizon = 128;
                    }
                    if !r.is_set("system") {
                        r.system = "tent".into();
                    }
                }
                "open-question" => {
                    if !r.is_set("system") {
                        r.system = "monomial-escalation".into();
                    }
                    if !r.is_set("horizon") {
                        r.horizon = 4096;
                    }
                    if !r.is_set("pairs") {
                        r.pairs = 10;
                    }
                }
                _ => {}
            }
        }
        Mode::Preset(name) => {
            match name.as_str() {
                "counterexample" => {
                    r.experiment = Some("dc3-counterexample".into());
                    r.system = "counterexample".into();
                    if !r.is_set("horizon") {
                        r.horizon = 362_880;
                    }
                    if !r.is_set("window") {
                        r.window = 1.0;
                    }
                    if !r.is_set("eps_sep") {
                        r.eps_sep = 0.1;
                    }
                }
                "sequence-chaos" => {
                    r.experiment = Some("sequence-chaos".into());
                    r.system = "shift".into();
                    if !r.is_set("count") {
                        r.count = 4;
                    }
                    if !r.is_set("max_block") {
                        r.max_block = 6;
                    }
                }
                "logistic-invariance" => {
                    r.experiment = Some("liyorke-invariance".into());
                    r.system = "logistic-family".into();
                    if !r.is_set("horizon") {
                        r.horizon = 20_000;
                    }
                    if !r.is_set("pairs") {
                        r.pairs = 40;
                    }
                    if !r.is_set("ks") {
                        r.ks = vec![2];
                    }
                }
                "identity" => {
                    r.system = "identity".into();
                    if !r.is_set("horizon") {
                        r.horizon = 1_000;
                    }
                    if !r.is_set("pairs") {
                        r.pairs = 8;
                    }
                }
                _ => {}
            }
        }
        _ => {}
    }
    r
}

fn exit_code_for(reports: &[ExperimentReport], strict: bool) -> i32 {
    if reports.iter().any(|r| r.overall == Overall::Fail) {
        1
    } else if strict && reports.iter().any(|r| r.overall == Overall::HypothesisUnmet) {
        3
    } else {
        0
    }
}

struct PairData {
    id: String,
    profile: PairDistanceProfile,
    estimate: Option<DistributionEstimate>,
    verdict: Option<ChaosVerdict>,
    li_yorke: Option<LiYorkeOutcome>,
}

fn emit_pair_files(cfg: &RunConfig, grid: &[f64], pairs: &[PairData], with_xi: bool) -> Result<()> {
    let out = &cfg.output;
    let profile_items: Vec<(String, &PairDistanceProfile)> =
        pairs.iter().map(|p| (p.id.clone(), &p.profile)).collect();
    emit::write_text(&out.join("profiles.csv"), &emit::profiles_csv(&profile_items))?;
    if with_xi {
        emit::write_text(
            &out.join("xi.csv"),
            &emit::xi_csv(&profile_items, grid, cfg.window)?,
        )?;
    }
    let est_items: Vec<(String, &DistributionEstimate)> = pairs
        .iter()
        .filter_map(|p| p.estimate.as_ref().map(|e| (p.id.clone(), e)))
        .collect();
    if !est_items.is_empty() {
        emit::write_text(&out.join("estimates.csv"), &emit::estimates_csv(&est_items))?;
    }
    let verdict_items: Vec<(String, &ChaosVerdict, Option<&LiYorkeOutcome>)> = pairs
        .iter()
        .filter_map(|p| p.verdict.as_ref().map(|v| (p.id.clone(), v, p.li_yorke.as_ref())))
        .collect();
    if !verdict_items.is_empty() {
        emit::write_text(&out.join("verdicts.csv"), &emit::verdicts_csv(&verdict_items))?;
    }
    if cfg.svg {
        let g = grid.len();
        let ts = [grid[g / 4], grid[g / 2], grid[3 * g / 4]];
        for p in pairs {
            emit::write_text(
                &out.join(format!("xi_{}.svg", p.id)),
                &emit::xi_vs_n_chart(&p.profile, &ts, 512)?,
            )?;
            if let Some(est) = &p.estimate {
                emit::write_text(
                    &out.join(format!("phi_{}.svg", p.id)),
                    &emit::phi_vs_t_chart(est),
                )?;
            }
        }
    }
    Ok(())
}

/// Simulate / metrics / classify share one pipeline with increasing depth.
fn run_profile_pipeline(cfg: &RunConfig, depth: u8) -> Result<Vec<ExperimentReport>> {
    let sys = build_system(cfg)?;
    let grid = t_grid_for(cfg, sys.space);
    let sampled = point_pairs(sys.space, cfg.pairs, cfg.seed)?;
    let thresholds = thresholds_from(cfg);
    let mut pairs = Vec::with_capacity(sampled.len());
    let mut report = ExperimentReport::new(
        match depth {
            0 => "simulate",
            1 => "metrics",
            _ => "classify",
        },
        format!("{} ({} pairs, horizon {})", cfg.system, cfg.pairs, cfg.horizon),
    );
    report.param("seed", cfg.seed);
    report.param("window", cfg.window);
    let mut flagged = 0usize;
    for (i, (x, y)) in sampled.iter().enumerate() {
        let id = format!("pair{i}");
        let profile = pair_profile(&sys, x, y, cfg.horizon, &SampleTimes::FromZero)?;
        let (estimate, verdict, li_yorke) = if depth >= 1 {
            let est = distribution_estimate(&profile, &grid, cfg.window)?;
            if depth >= 2 {
                let (v, ly) = classify_profile(
                    &profile,
                    &grid,
                    cfg.window,
                    thresholds,
                    cfg.eps_prox,
                    cfg.eps_sep,
                )?;
                flagged += usize::from(v.dc1 || v.dc2 || v.dc2_prime || v.dc3);
                (Some(est), Some(v), Some(ly))
            } else {
                (Some(est), None, None)
            }
        } else {
            (None, None, None)
        };
        pairs.push(PairData { id, profile, estimate, verdict, li_yorke });
    }
    if depth >= 2 {
        report.info(
            "verdict_summary",
            format!("{flagged} of {} pairs carry at least one chaos flag", pairs.len()),
        );
    } else {
        report.info("pairs_profiled", format!("{}", pairs.len()));
    }
    emit_pair_files(cfg, &grid, &pairs, depth >= 1)?;
    Ok(vec![report.finalize()])
}

fn kato_params_from(cfg: &RunConfig, space: Space) -> KatoParams {
    let mut params = KatoParams::default_for(space);
    params.delta = cfg.delta;
    params.epsilon = cfg.epsilon;
    params.horizon = cfg.horizon as u64;
    if let Some(s) = cfg.samples {
        params.samples = s;
    }
    if let Some(p) = cfg.probes {
        params.probes = default_probes(space, p);
    }
    params
}

fn run_kato_mode(cfg: &RunConfig) -> Result<Vec<ExperimentReport>> {
    let sys = build_system(cfg)?;
    let params = kato_params_from(cfg, sys.space);
    let outcome = kato_verdict(&sys, &params)?;
    let mut report = ExperimentReport::new(
        "kato-probe",
        format!("{} at delta {:?}, epsilon {:?}", cfg.system, cfg.delta, cfg.epsilon),
    );
    report.param("horizon", params.horizon);
    report.param("probes", params.probes.len());
    report.param("samples", params.samples);
    report.info(
        "sensitivity",
        format!(
            "sensitive: {} (worst probe separation {:?})",
            outcome.sensitivity.sensitive, outcome.sensitivity.worst_separation
        ),
    );
    report.info(
        "accessibility",
        format!(
            "accessible: {} over {} probe pairs",
            outcome.accessible, outcome.access_pairs_tested
        ),
    );
    report.info("verdict", format!("sensitivity and accessibility both hold: {}", outcome.verdict));
    Ok(vec![report.finalize()])
}

fn run_iterate_check(cfg: &RunConfig) -> Result<Vec<ExperimentReport>> {
    let sys = build_system(cfg)?;
    let k = cfg.k;
    let iter_sys = sys.clone().iterate(k);
    let starts = deterministic_points(sys.space, cfg.pairs, cfg.seed);
    let steps = (cfg.horizon as u64 / k).max(1);
    let mut report = ExperimentReport::new(
        "iterate-check",
        format!("{} vs its {k}-th iterate over {steps} iterate steps", cfg.system),
    );
    report.param("k", k);
    report.param("starts", starts.len());
    report.param("iterate_steps", steps);
    let mut mismatches = 0usize;
    for p in &starts {
        let mut base = p.clone();
        let mut fast = p.clone();
        for n in 1..=steps {
            for j in 0..k {
                base = sys.map_at((n - 1) * k + j + 1)?.apply(&base)?;
            }
            fast = iter_sys.map_at(n)?.apply(&fast)?;
            if base != fast {
                mismatches += 1;
                break;
            }
        }
    }
    report.check(
        "orbits_bit_exact",
        mismatches == 0,
        format!(
            "{} starts x {steps} iterate steps compared bit-exactly; {mismatches} diverged",
            starts.len()
        ),
    );
    Ok(vec![report.finalize()])
}

fn run_theorem(cfg: &RunConfig) -> Result<Vec<ExperimentReport>> {
    let Some(exp) = cfg.experiment.clone() else {
        return Err(Error::Validation(vec![
            "experiment: the theorem mode needs an experiment id".into(),
        ]));
    };
    let report = match exp.as_str() {
        "liyorke-invariance" => {
            let sys = build_system(cfg)?;
            let params = LiYorkeInvarianceParams {
                pairs: cfg.pairs,
                horizon: cfg.horizon,
                ks: cfg.ks.clone(),
                eps_prox: cfg.eps_prox,
                eps_sep: cfg.eps_sep,
                window: cfg.window,
                min_preserved: cfg.min_preserved,
                seed: cfg.seed,
            };
            run_liyorke_invariance(&sys, &params)?
        }
        "dc2prime-invariance" => {
            let sys = build_system(cfg)?;
            let pair = point_pairs(sys.space, 1, cfg.seed)?.remove(0);
            let mut params = Dc2PrimeParams::new(cfg.block, cfg.horizon);
            params.sep_threshold = cfg.sep_threshold;
            params.grid = t_grid_for(cfg, sys.space);
            params.window = cfg.window;
            params.thresholds = thresholds_from(cfg);
            params.eps_prox = cfg.eps_prox;
            params.eps_sep = cfg.eps_sep;
            run_dc2prime_invariance(&sys, (&pair.0, &pair.1), &params)?
        }
        "kato-invariance" => {
            let sys = build_system(cfg)?;
            let params = KatoInvarianceParams {
                ks: cfg.ks.clone(),
                kato: kato_params_from(cfg, sys.space),
            };
            run_kato_invariance(&sys, &params)?
        }
        "sequence-chaos" => {
            let params = SequenceChaosParams {
                count: cfg.count,
                max_block: cfg.max_block,
                seed: cfg.seed,
            };
            run_sequence_chaos_construction(&params)?
        }
        "dc3-counterexample" => {
            let params = Dc3CounterexampleParams {
                horizon: cfg.horizon,
                window: cfg.window,
                eps_prox: cfg.eps_prox,
                eps_sep: cfg.eps_sep,
                thresholds: thresholds_from(cfg),
                ..Dc3CounterexampleParams::default()
            };
            run_dc3_counterexample(&params)?
        }
        "open-question" => {
            let sys = build_system(cfg)?;
            let params = OpenQuestionParams {
                ks: cfg.ks.clone(),
                horizon: cfg.horizon,
                pairs: cfg.pairs,
                seed: cfg.seed,
                window: cfg.window,
                thresholds: thresholds_from(cfg),
            };
            run_open_question_probe(&sys, &params)?
        }
        other => {
            return Err(Error::Validation(vec![format!(
                "experiment: unknown experiment {other:?}"
            )]))
        }
    };
    Ok(vec![report])
}

/// The counterexample preset: the full experiment plus classified pair files
/// for the witness pair on the base system and its second iterate.
fn run_counterexample_preset(cfg: &RunConfig) -> Result<Vec<ExperimentReport>> {
    let reports = run_theorem(cfg)?;
    let sys = shift_counterexample();
    let (z, w) = dc1_pair_for_shift(cfg.horizon as u64)?;
    let grid = counterexample_grid();
    let thresholds = thresholds_from(cfg);
    let mut pairs = Vec::new();
    for (id, system, horizon) in [
        ("base", sys.clone(), cfg.horizon),
        ("iterate2", sys.clone().iterate(2), (cfg.horizon / 2).max(4)),
    ] {
        let profile = pair_profile(&system, &z, &w, horizon, &SampleTimes::FromZero)?;
        let (verdict, li_yorke) =
            classify_profile(&profile, &grid, cfg.window, thresholds, cfg.eps_prox, cfg.eps_sep)?;
        let estimate = distribution_estimate(&profile, &grid, cfg.window)?;
        pairs.push(PairData {
            id: id.into(),
            profile,
            estimate: Some(estimate),
            verdict: Some(verdict),
            li_yorke: Some(li_yorke),
        });
    }
    emit_pair_files(cfg, &grid, &pairs, true)?;
    Ok(reports)
}

/// The logistic-invariance preset: the preservation experiment plus the full
/// artifact set for a small representative subset of the sampled pairs, at a
/// capped profile length so the tables stay inspectable.
fn run_logistic_invariance_preset(cfg: &RunConfig) -> Result<Vec<ExperimentReport>> {
    let reports = run_theorem(cfg)?;
    let sys = build_system(cfg)?;
    let grid = t_grid_for(cfg, sys.space);
    let thresholds = thresholds_from(cfg);
    let subset = cfg.pairs.min(10);
    let horizon = cfg.horizon.min(5_000);
    let mut pairs = Vec::with_capacity(subset);
    for (i, (x, y)) in point_pairs(sys.space, subset, cfg.seed)?.iter().enumerate() {
        let profile = pair_profile(&sys, x, y, horizon, &SampleTimes::FromZero)?;
        let estimate = distribution_estimate(&profile, &grid, cfg.window)?;
        let (verdict, li_yorke) =
            classify_profile(&profile, &grid, cfg.window, thresholds, cfg.eps_prox, cfg.eps_sep)?;
        pairs.push(PairData {
            id: format!("pair{i}"),
            profile,
            estimate: Some(estimate),
            verdict: Some(verdict),
            li_yorke: Some(li_yorke),
        });
    }
    emit_pair_files(cfg, &grid, &pairs, true)?;
    Ok(reports)
}

/// The sequence-chaos preset: the construction experiment plus distance
/// profiles for the constant-schedule pair and the sampled family.
fn run_sequence_chaos_preset(cfg: &RunConfig) -> Result<Vec<ExperimentReport>> {
    let reports = run_theorem(cfg)?;
    let sys = shift_system(false);
    let horizon = block_end(cfg.max_block) + 1;
    let family = sample_e(cfg.count, horizon, cfg.seed)?;
    let mut points: Vec<(String, Point)> = vec![
        ("const0".into(), Point::Symbolic(crate::symbolic::SymbolicSeq::constant(0, false))),
        ("const1".into(), Point::Symbolic(crate::symbolic::SymbolicSeq::constant(1, false))),
    ];
    for (i, seq) in family.sequences.iter().enumerate().take(4) {
        points.push((format!("e{i}"), Point::Symbolic(seq.clone())));
    }
    let n_times = block_end(cfg.max_block) as usize;
    let mut pairs = Vec::new();
    for i in 0..points.len() {
        for j in 0..i {
            let profile =
                pair_profile(&sys, &points[i].1, &points[j].1, n_times, &SampleTimes::FromOne)?;
            pairs.push(PairData {
                id: format!("{}-{}", points[j].0, points[i].0),
                profile,
                estimate: None,
                verdict: None,
                li_yorke: None,
            });
        }
    }
    let grid = t_grid_for(cfg, sys.space);
    emit_pair_files(cfg, &grid, &pairs, false)?;
    Ok(reports)
}

/// Dispatches a fully resolved config. Writes the config echo first so even
/// failed runs record what was attempted.
pub fn run(mode: &Mode, base_cfg: &RunConfig) -> Result<RunOutcome> {
    let cfg = resolve(mode, base_cfg);
    crate::config::revalidate(&cfg)?;
    emit::write_text(&cfg.output.join("config.toml"), &to_canonical_toml(&cfg))?;

    let reports = match mode {
        Mode::Simulate => run_profile_pipeline(&cfg, 0)?,
        Mode::Metrics => run_profile_pipeline(&cfg, 1)?,
        Mode::Classify => run_profile_pipeline(&cfg, 2)?,
        Mode::Kato => run_kato_mode(&cfg)?,
        Mode::IterateCheck => run_iterate_check(&cfg)?,
        Mode::Theorem => run_theorem(&cfg)?,
        Mode::Preset(name) => match name.as_str() {
            "counterexample" => run_counterexample_preset(&cfg)?,
            "sequence-chaos" => run_sequence_chaos_preset(&cfg)?,
            "logistic-invariance" => run_logistic_invariance_preset(&cfg)?,
            "identity" => run_profile_pipeline(&cfg, 2)?,
            other => {
                return Err(Error::Validation(vec![format!(
                    "preset: unknown preset {other:?}; one of {KNOWN_PRESETS:?}"
                )]))
            }
        },
    };

    emit::write_text(&cfg.output.join("report.txt"), &emit::report_txt(&reports))?;
    let exit_code = exit_code_for(&reports, cfg.strict_hypotheses);
    let fails =
        reports.iter().flat_map(|r| &r.checks).filter(|c| c.status == CheckStatus::Fail).count();
    let unmet =
        reports.iter().flat_map(|r| &r.checks).filter(|c| c.status == CheckStatus::Unmet).count();
    let summary = format!(
        "{} report(s) written to {}; {} failing check(s), {} unmet hypothesis line(s); exit {exit_code}",
        reports.len(),
        cfg.output.display(),
        fails,
        unmet,
    );
    Ok(RunOutcome { exit_code, summary })
}

/// Convenience used by tests: run into a specific output directory.
pub fn run_into(mode: &Mode, cfg: &RunConfig, output: PathBuf) -> Result<RunOutcome> {
    let mut cfg = cfg.clone();
    cfg.output = output;
    run(mode, &cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn temp_cfg(dir: &tempfile::TempDir) -> RunConfig {
        let mut cfg = RunConfig::default();
        cfg.output = dir.path().to_path_buf();
        cfg.horizon = 600;
        cfg.pairs = 3;
        cfg
    }

    #[test]
    fn classify_mode_writes_the_full_artifact_set() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = temp_cfg(&dir);
        cfg.svg = true;
        let outcome = run(&Mode::Classify, &cfg).unwrap();
        assert_eq!(outcome.exit_code, 0);
        for f in ["config.toml", "profiles.csv", "xi.csv", "estimates.csv", "verdicts.csv",
                  "report.txt", "xi_pair0.svg", "phi_pair0.svg"] {
            assert!(dir.path().join(f).is_file(), "missing {f}");
        }
        let config_echo = std::fs::read_to_string(dir.path().join("config.toml")).unwrap();
        assert!(config_echo.contains("horizon = 600"));
    }

    #[test]
    fn identity_preset_classifies_everything_false() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = temp_cfg(&dir);
        let outcome = run(&Mode::Preset("identity".into()), &cfg).unwrap();
        assert_eq!(outcome.exit_code, 0);
        let verdicts = std::fs::read_to_string(dir.path().join("verdicts.csv")).unwrap();
        for line in verdicts.lines().skip(1) {
            let cols: Vec<&str> = line.split(',').collect();
            assert_eq!(&cols[1..5], &["false", "false", "false", "false"], "{line}");
        }
    }

    #[test]
    fn iterate_check_passes_and_unknown_preset_is_a_config_error() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = temp_cfg(&dir);
        cfg.system = "tent-doubling-cycle".into();
        cfg.k = 3;
        let outcome = run(&Mode::IterateCheck, &cfg).unwrap();
        assert_eq!(outcome.exit_code, 0);

        let err = run(&Mode::Preset("nope".into()), &cfg).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn reruns_are_byte_identical() {
        let dir_a = tempfile::tempdir().unwrap();
        let dir_b = tempfile::tempdir().unwrap();
        let mut cfg = RunConfig::default();
        cfg.horizon = 400;
        cfg.pairs = 2;
        cfg.seed = 9;
        let a = run_into(&Mode::Metrics, &cfg, dir_a.path().to_path_buf()).unwrap();
        let b = run_into(&Mode::Metrics, &cfg, dir_b.path().to_path_buf()).unwrap();
        assert_eq!(a.exit_code, b.exit_code);
        for f in ["profiles.csv", "xi.csv", "estimates.csv"] {
            let x = std::fs::read(dir_a.path().join(f)).unwrap();
            let y = std::fs::read(dir_b.path().join(f)).unwrap();
            assert_eq!(x, y, "{f} differs between identical runs");
        }
    }

    #[test]
    fn theorem_mode_needs_an_experiment_id() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = temp_cfg(&dir);
        assert!(matches!(run(&Mode::Theorem, &cfg), Err(Error::Validation(_))));
    }

    #[test]
    fn strict_hypotheses_maps_unmet_to_exit_3() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = temp_cfg(&dir);
        // The alternating construction declares no uniform limit and is not
        // finitely generated, so the invariance hypothesis cannot be met.
        cfg.system = "counterexample".into();
        cfg.mark_set("system");
        cfg.experiment = Some("kato-invariance".into());
        cfg.horizon = 32;
        cfg.mark_set("horizon");
        cfg.probes = Some(4);
        cfg.samples = Some(4);
        cfg.strict_hypotheses = true;
        let outcome = run(&Mode::Theorem, &cfg).unwrap();
        assert_eq!(outcome.exit_code, 3, "{}", outcome.summary);
        cfg.strict_hypotheses = false;
        let outcome = run(&Mode::Theorem, &cfg).unwrap();
        assert_eq!(outcome.exit_code, 0);
    }
}
