//! Run configuration: a flat key = value file (TOML-compatible subset),
//! flag overrides, and the `NDS_CHAOSLAB_SEED` environment override. Parsing
//! validates everything and reports **all** problems at once — unknown keys
//! (with a closest-match suggestion), type mismatches, and constraint
//! violations — rather than stopping at the first.

use std::fmt::Write as _;
use std::path::PathBuf;

use crate::{Error, Result};

/// Records which keys were explicitly set (file or flag), so subcommands can
/// fill mode-specific defaults without clobbering user choices. Transparent
/// to equality: two configs with the same effective values compare equal.
#[derive(Clone, Debug, Default)]
pub struct KeySet(std::collections::BTreeSet<String>);

impl KeySet {
    pub fn mark(&mut self, key: &str) {
        self.0.insert(key.to_string());
    }

    pub fn contains(&self, key: &str) -> bool {
        self.0.contains(key)
    }
}

impl PartialEq for KeySet {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

/// Effective settings for one run. Field semantics are shared across
/// subcommands; each uses the subset it needs.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    /// Experiment id for `theorem` runs (liyorke-invariance,
    /// dc2prime-invariance, kato-invariance, sequence-chaos,
    /// dc3-counterexample, open-question).
    pub experiment: Option<String>,
    /// System kind: logistic, tent, doubling, identity, monomial-escalation,
    /// shift, shift-two-sided, counterexample, logistic-family, tent-family,
    /// tent-doubling-cycle.
    pub system: String,
    /// Map parameter (logistic height, tent slope); per-map default if unset.
    pub parameter: Option<f64>,
    /// Escalation list length for monomial-escalation.
    pub length: u32,
    pub horizon: usize,
    pub pairs: usize,
    /// Iterate step for iterate-check and classify.
    pub k: u64,
    /// Iterate steps exercised by invariance experiments.
    pub ks: Vec<u64>,
    /// Iterate step N for the dc2prime counting experiment.
    pub block: u64,
    pub seed: u64,
    /// Trailing fraction of prefixes over which the lower/upper fractions
    /// are extremized.
    pub window: f64,
    pub eps_zero: f64,
    pub one_tol: f64,
    pub gap: f64,
    pub eps_prox: f64,
    pub eps_sep: f64,
    /// Sensitivity threshold.
    pub delta: f64,
    /// Accessibility threshold.
    pub epsilon: f64,
    /// Separation threshold s for the dc2prime counting experiment.
    pub sep_threshold: f64,
    /// Probe count for sensitivity/accessibility (space default if unset).
    pub probes: Option<usize>,
    /// Per-probe sample count (space default if unset).
    pub samples: Option<usize>,
    /// Number of evenly spaced thresholds in the default t-grid.
    pub grid_points: usize,
    /// Largest factorial block index for the sequence-chaos construction.
    pub max_block: u32,
    /// Family size for the sequence-chaos construction.
    pub count: usize,
    /// Minimum fraction of flagged pairs that must stay flagged in
    /// invariance experiments.
    pub min_preserved: f64,
    pub output: PathBuf,
    pub svg: bool,
    pub strict_hypotheses: bool,
    /// Which keys were explicitly set; see [`KeySet`].
    pub set_keys: KeySet,
}

impl RunConfig {
    /// True when the user set this key via file or flag (as opposed to the
    /// documented default).
    pub fn is_set(&self, key: &str) -> bool {
        self.set_keys.contains(key)
    }

    /// Marks a key explicitly set (used by flag merging).
    pub fn mark_set(&mut self, key: &str) {
        self.set_keys.mark(key);
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            experiment: None,
            system: "logistic".into(),
            parameter: None,
            length: 32,
            horizon: 10_000,
            pairs: 20,
            k: 2,
            ks: vec![2, 3],
            block: 2,
            seed: 0,
            window: crate::metrics::DEFAULT_WINDOW,
            eps_zero: 0.05,
            one_tol: 0.05,
            gap: 0.2,
            eps_prox: crate::metrics::DEFAULT_EPS_PROX,
            eps_sep: crate::metrics::DEFAULT_EPS_SEP,
            delta: crate::kato::DEFAULT_DELTA,
            epsilon: crate::kato::DEFAULT_EPSILON,
            sep_threshold: 0.25,
            probes: None,
            samples: None,
            grid_points: 64,
            max_block: 6,
            count: 8,
            min_preserved: 0.9,
            output: PathBuf::from("nds-out"),
            svg: false,
            strict_hypotheses: false,
            set_keys: KeySet::default(),
        }
    }
}

pub const KNOWN_SYSTEMS: [&str; 11] = [
    "logistic",
    "tent",
    "doubling",
    "identity",
    "monomial-escalation",
    "shift",
    "shift-two-sided",
    "counterexample",
    "logistic-family",
    "tent-family",
    "tent-doubling-cycle",
];

pub const KNOWN_EXPERIMENTS: [&str; 6] = [
    "liyorke-invariance",
    "dc2prime-invariance",
    "kato-invariance",
    "sequence-chaos",
    "dc3-counterexample",
    "open-question",
];

const KNOWN_KEYS: [&str; 28] = [
    "experiment",
    "system",
    "parameter",
    "length",
    "horizon",
    "pairs",
    "k",
    "ks",
    "block",
    "seed",
    "window",
    "eps_zero",
    "one_tol",
    "gap",
    "eps_prox",
    "eps_sep",
    "delta",
    "epsilon",
    "sep_threshold",
    "probes",
    "samples",
    "grid_points",
    "max_block",
    "count",
    "min_preserved",
    "output",
    "svg",
    "strict_hypotheses",
];

fn edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0usize; b.len() + 1];
    for i in 1..=a.len() {
        cur[0] = i;
        for j in 1..=b.len() {
            let sub = prev[j - 1] + usize::from(a[i - 1] != b[j - 1]);
            cur[j] = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// The known key within edit distance 1 of `key`, if any.
fn suggest(key: &str) -> Option<&'static str> {
    KNOWN_KEYS.iter().copied().find(|k| edit_distance(key, k) == 1)
}

struct Collector {
    errors: Vec<String>,
}

impl Collector {
    fn push(&mut self, field: &str, message: String) {
        self.errors.push(format!("{field}: {message}"));
    }
}

fn take_f64(v: &toml::Value, key: &str, c: &mut Collector) -> Option<f64> {
    match v {
        toml::Value::Float(x) => Some(*x),
        toml::Value::Integer(n) => Some(*n as f64),
        other => {
            c.push(key, format!("expected a number, got {}", other.type_str()));
            None
        }
    }
}

fn take_u64(v: &toml::Value, key: &str, min: u64, c: &mut Collector) -> Option<u64> {
    match v {
        toml::Value::Integer(n) if *n >= 0 && *n as u64 >= min => Some(*n as u64),
        toml::Value::Integer(n) => {
            c.push(key, format!("must be an integer >= {min}, got {n}"));
            None
        }
        other => {
            c.push(key, format!("expected an integer, got {}", other.type_str()));
            None
        }
    }
}

fn take_string(v: &toml::Value, key: &str, c: &mut Collector) -> Option<String> {
    match v {
        toml::Value::String(s) => Some(s.clone()),
        other => {
            c.push(key, format!("expected a string, got {}", other.type_str()));
            None
        }
    }
}

fn take_bool(v: &toml::Value, key: &str, c: &mut Collector) -> Option<bool> {
    match v {
        toml::Value::Boolean(b) => Some(*b),
        other => {
            c.push(key, format!("expected true or false, got {}", other.type_str()));
            None
        }
    }
}

/// Parses and fully validates a config file. On success every field is
/// populated (documented defaults fill the gaps); on failure the error lists
/// every problem found.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let table: toml::Table =
        text.parse().map_err(|e: toml::de::Error| Error::Parse(e.to_string()))?;
    let mut cfg = RunConfig::default();
    let mut c = Collector { errors: Vec::new() };

    for (key, value) in &table {
        if KNOWN_KEYS.contains(&key.as_str()) {
            cfg.mark_set(key);
        }
        match key.as_str() {
            "experiment" => {
                if let Some(s) = take_string(value, key, &mut c) {
                    if KNOWN_EXPERIMENTS.contains(&s.as_str()) {
                        cfg.experiment = Some(s);
                    } else {
                        c.push(
                            key,
                            format!("unknown experiment {s:?}; one of {KNOWN_EXPERIMENTS:?}"),
                        );
                    }
                }
            }
            "system" => {
                if let Some(s) = take_string(value, key, &mut c) {
                    if KNOWN_SYSTEMS.contains(&s.as_str()) {
                        cfg.system = s;
                    } else {
                        c.push(key, format!("unknown system {s:?}; one of {KNOWN_SYSTEMS:?}"));
                    }
                }
            }
            "parameter" => cfg.parameter = take_f64(value, key, &mut c),
            "length" => {
                if let Some(n) = take_u64(value, key, 1, &mut c) {
                    cfg.length = n.min(u32::MAX as u64) as u32;
                }
            }
            "horizon" => {
                if let Some(n) = take_u64(value, key, 1, &mut c) {
                    cfg.horizon = n as usize;
                }
            }
            "pairs" => {
                if let Some(n) = take_u64(value, key, 1, &mut c) {
                    cfg.pairs = n as usize;
                }
            }
            "k" => {
                if let Some(n) = take_u64(value, key, 1, &mut c) {
                    cfg.k = n;
                }
            }
            "ks" => match value {
                toml::Value::Array(items) => {
                    let mut ks = Vec::with_capacity(items.len());
                    for item in items {
                        if let Some(n) = take_u64(item, key, 1, &mut c) {
                            ks.push(n);
                        }
                    }
                    if !ks.is_empty() {
                        cfg.ks = ks;
                    } else {
                        c.push(key, "needs at least one iterate step".into());
                    }
                }
                other => {
                    c.push(key, format!("expected an array of integers, got {}", other.type_str()))
                }
            },
            "block" => {
                if let Some(n) = take_u64(value, key, 1, &mut c) {
                    cfg.block = n;
                }
            }
            "seed" => {
                if let Some(n) = take_u64(value, key, 0, &mut c) {
                    cfg.seed = n;
                }
            }
            "window" => cfg.window = take_f64(value, key, &mut c).unwrap_or(cfg.window),
            "eps_zero" => cfg.eps_zero = take_f64(value, key, &mut c).unwrap_or(cfg.eps_zero),
            "one_tol" => cfg.one_tol = take_f64(value, key, &mut c).unwrap_or(cfg.one_tol),
            "gap" => cfg.gap = take_f64(value, key, &mut c).unwrap_or(cfg.gap),
            "eps_prox" => cfg.eps_prox = take_f64(value, key, &mut c).unwrap_or(cfg.eps_prox),
            "eps_sep" => cfg.eps_sep = take_f64(value, key, &mut c).unwrap_or(cfg.eps_sep),
            "delta" => cfg.delta = take_f64(value, key, &mut c).unwrap_or(cfg.delta),
            "epsilon" => cfg.epsilon = take_f64(value, key, &mut c).unwrap_or(cfg.epsilon),
            "sep_threshold" => {
                cfg.sep_threshold = take_f64(value, key, &mut c).unwrap_or(cfg.sep_threshold)
            }
            "probes" => {
                if let Some(n) = take_u64(value, key, 1, &mut c) {
                    cfg.probes = Some(n as usize);
                }
            }
            "samples" => {
                if let Some(n) = take_u64(value, key, 2, &mut c) {
                    cfg.samples = Some(n as usize);
                }
            }
            "grid_points" => {
                if let Some(n) = take_u64(value, key, 2, &mut c) {
                    cfg.grid_points = n as usize;
                }
            }
            "max_block" => {
                if let Some(n) = take_u64(value, key, 1, &mut c) {
                    cfg.max_block = n.min(20) as u32;
                }
            }
            "count" => {
                if let Some(n) = take_u64(value, key, 2, &mut c) {
                    cfg.count = n as usize;
                }
            }
            "min_preserved" => {
                cfg.min_preserved = take_f64(value, key, &mut c).unwrap_or(cfg.min_preserved)
            }
            "output" => {
                if let Some(s) = take_string(value, key, &mut c) {
                    cfg.output = PathBuf::from(s);
                }
            }
            "svg" => cfg.svg = take_bool(value, key, &mut c).unwrap_or(cfg.svg),
            "strict_hypotheses" => {
                cfg.strict_hypotheses =
                    take_bool(value, key, &mut c).unwrap_or(cfg.strict_hypotheses)
            }
            unknown => match suggest(unknown) {
                Some(s) => c.push(unknown, format!("unknown key (did you mean `{s}`?)")),
                None => c.push(unknown, "unknown key".into()),
            },
        }
    }

    validate(&cfg, &mut c);
    if c.errors.is_empty() {
        Ok(cfg)
    } else {
        Err(Error::Validation(c.errors))
    }
}

/// Range checks shared by file parsing and flag merging.
fn validate(cfg: &RunConfig, c: &mut Collector) {
    let positives = [
        ("eps_zero", cfg.eps_zero),
        ("one_tol", cfg.one_tol),
        ("gap", cfg.gap),
        ("eps_prox", cfg.eps_prox),
        ("eps_sep", cfg.eps_sep),
        ("delta", cfg.delta),
        ("epsilon", cfg.epsilon),
        ("sep_threshold", cfg.sep_threshold),
        ("min_preserved", cfg.min_preserved),
    ];
    for (name, v) in positives {
        if !(v > 0.0) || !v.is_finite() {
            c.push(name, format!("must be a positive finite number, got {v}"));
        }
    }
    if !(cfg.window > 0.0 && cfg.window <= 1.0) {
        c.push("window", format!("must lie in (0, 1], got {}", cfg.window));
    }
    if cfg.eps_prox > cfg.eps_sep {
        c.push("eps_prox", format!("must not exceed eps_sep ({} > {})", cfg.eps_prox, cfg.eps_sep));
    }
    if let Some(p) = cfg.parameter {
        if !p.is_finite() {
            c.push("parameter", format!("must be finite, got {p}"));
        }
    }
}

/// Re-validates after programmatic mutation (flag overrides); returns all
/// problems at once like `parse_config`.
pub fn revalidate(cfg: &RunConfig) -> Result<()> {
    let mut c = Collector { errors: Vec::new() };
    validate(cfg, &mut c);
    if cfg.horizon < 1 {
        c.push("horizon", "must be at least 1".into());
    }
    if cfg.pairs < 1 {
        c.push("pairs", "must be at least 1".into());
    }
    if cfg.k < 1 {
        c.push("k", "must be at least 1".into());
    }
    if cfg.block < 1 {
        c.push("block", "must be at least 1".into());
    }
    if cfg.ks.is_empty() || cfg.ks.iter().any(|&k| k < 1) {
        c.push("ks", "needs at least one iterate step, each >= 1".into());
    }
    if cfg.grid_points < 2 {
        c.push("grid_points", "needs at least 2 thresholds".into());
    }
    if cfg.count < 2 {
        c.push("count", "needs at least 2 sequences".into());
    }
    if !KNOWN_SYSTEMS.contains(&cfg.system.as_str()) {
        c.push("system", format!("unknown system {:?}; one of {KNOWN_SYSTEMS:?}", cfg.system));
    }
    if let Some(e) = &cfg.experiment {
        if !KNOWN_EXPERIMENTS.contains(&e.as_str()) {
            c.push(
                "experiment",
                format!("unknown experiment {e:?}; one of {KNOWN_EXPERIMENTS:?}"),
            );
        }
    }
    if c.errors.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation(c.errors))
    }
}

/// Applies the `NDS_CHAOSLAB_SEED` environment override, which wins over both
/// flags and file values. Invalid contents are a config error.
pub fn apply_env_seed(cfg: &mut RunConfig) -> Result<()> {
    match std::env::var("NDS_CHAOSLAB_SEED") {
        Ok(raw) => match raw.trim().parse::<u64>() {
            Ok(seed) => {
                cfg.seed = seed;
                cfg.mark_set("seed");
                Ok(())
            }
            Err(_) => Err(Error::Validation(vec![format!(
                "NDS_CHAOSLAB_SEED: expected an unsigned integer, got {raw:?}"
            )])),
        },
        Err(_) => Ok(()),
    }
}

/// Canonical serialization of the effective config, echoed into the output
/// directory so every artifact records exactly what produced it. Stable key
/// order; floats print in shortest round-trip form.
pub fn to_canonical_toml(cfg: &RunConfig) -> String {
    let mut out = String::new();
    if let Some(e) = &cfg.experiment {
        let _ = writeln!(out, "experiment = {e:?}");
    }
    let _ = writeln!(out, "system = {:?}", cfg.system);
    if let Some(p) = cfg.parameter {
        let _ = writeln!(out, "parameter = {p:?}");
    }
    let _ = writeln!(out, "length = {}", cfg.length);
    let _ = writeln!(out, "horizon = {}", cfg.horizon);
    let _ = writeln!(out, "pairs = {}", cfg.pairs);
    let _ = writeln!(out, "k = {}", cfg.k);
    let _ = writeln!(out, "ks = {:?}", cfg.ks);
    let _ = writeln!(out, "block = {}", cfg.block);
    let _ = writeln!(out, "seed = {}", cfg.seed);
    let _ = writeln!(out, "window = {:?}", cfg.window);
    let _ = writeln!(out, "eps_zero = {:?}", cfg.eps_zero);
    let _ = writeln!(out, "one_tol = {:?}", cfg.one_tol);
    let _ = writeln!(out, "gap = {:?}", cfg.gap);
    let _ = writeln!(out, "eps_prox = {:?}", cfg.eps_prox);
    let _ = writeln!(out, "eps_sep = {:?}", cfg.eps_sep);
    let _ = writeln!(out, "delta = {:?}", cfg.delta);
    let _ = writeln!(out, "epsilon = {:?}", cfg.epsilon);
    let _ = writeln!(out, "sep_threshold = {:?}", cfg.sep_threshold);
    if let Some(p) = cfg.probes {
        let _ = writeln!(out, "probes = {p}");
    }
    if let Some(s) = cfg.samples {
        let _ = writeln!(out, "samples = {s}");
    }
    let _ = writeln!(out, "grid_points = {}", cfg.grid_points);
    let _ = writeln!(out, "max_block = {}", cfg.max_block);
    let _ = writeln!(out, "count = {}", cfg.count);
    let _ = writeln!(out, "min_preserved = {:?}", cfg.min_preserved);
    let _ = writeln!(out, "output = {:?}", cfg.output.display().to_string());
    let _ = writeln!(out, "svg = {}", cfg.svg);
    let _ = writeln!(out, "strict_hypotheses = {}", cfg.strict_hypotheses);
    out
}
