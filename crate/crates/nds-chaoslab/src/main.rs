//! Command-line front end. Subcommands map one-to-one onto [`runner::Mode`];
//! configuration merges in order: built-in defaults, then a `--config` TOML
//! file, then flags, then the `NDS_CHAOSLAB_SEED` environment variable.
//!
//! Exit codes: 0 success, 1 experiment failure, 2 configuration error,
//! 3 hypothesis unmet under `--strict-hypotheses`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nds_chaoslab::config::{apply_env_seed, parse_config, RunConfig};
use nds_chaoslab::runner::{self, Mode};
use nds_chaoslab::Error;

#[derive(Parser)]
#[command(
    name = "nds-chaoslab",
    version,
    about = "Simulate non-autonomous discrete systems and classify chaotic behavior"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run sampled pairs forward and record their distance profiles.
    Simulate(CommonArgs),
    /// Profiles plus proximity-fraction tables and windowed density estimates.
    Metrics(CommonArgs),
    /// Metrics plus the per-pair chaos verdict ladder (DC1/DC2/DC2'/DC3, Li-Yorke).
    Classify(CommonArgs),
    /// Sensitivity and accessibility probes on the configured system.
    Kato(CommonArgs),
    /// Bit-exact orbit comparison between a system and its k-th iterate.
    IterateCheck(CommonArgs),
    /// One named experiment: liyorke-invariance, dc2prime-invariance,
    /// kato-invariance, sequence-chaos, dc3-counterexample, open-question.
    Theorem {
        /// Experiment id.
        experiment: String,
        #[command(flatten)]
        args: CommonArgs,
    },
    /// A canned end-to-end run: counterexample, sequence-chaos,
    /// logistic-invariance, identity.
    Preset {
        /// Preset name.
        name: String,
        #[command(flatten)]
        args: CommonArgs,
    },
}

impl Command {
    fn split(self) -> (Mode, Option<String>, CommonArgs) {
        match self {
            Command::Simulate(a) => (Mode::Simulate, None, a),
            Command::Metrics(a) => (Mode::Metrics, None, a),
            Command::Classify(a) => (Mode::Classify, None, a),
            Command::Kato(a) => (Mode::Kato, None, a),
            Command::IterateCheck(a) => (Mode::IterateCheck, None, a),
            Command::Theorem { experiment, args } => (Mode::Theorem, Some(experiment), args),
            Command::Preset { name, args } => (Mode::Preset(name), None, args),
        }
    }
}

/// Flags shared by every subcommand. Each one overrides the matching config
/// file key; unset flags leave the file value (or default) in place.
#[derive(Args)]
struct CommonArgs {
    /// TOML configuration file read before flags are applied.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory for config.toml, CSV tables, report.txt, charts.
    #[arg(long)]
    output: Option<PathBuf>,
    /// System id (e.g. logistic, tent, counterexample, logistic-family).
    #[arg(long)]
    system: Option<String>,
    /// System parameter (logistic mu, tent slope).
    #[arg(long)]
    parameter: Option<f64>,
    /// Two-sided shift truncation length for the escalation system.
    #[arg(long)]
    length: Option<u32>,
    /// Number of orbit steps (profile length).
    #[arg(long)]
    horizon: Option<usize>,
    /// Number of sampled pairs.
    #[arg(long)]
    pairs: Option<usize>,
    /// Iterate order for iterate-check.
    #[arg(long)]
    k: Option<u64>,
    /// Comma-separated iterate orders for invariance experiments.
    #[arg(long, value_delimiter = ',')]
    ks: Option<Vec<u64>>,
    /// Block length for the counting-relation experiment.
    #[arg(long)]
    block: Option<u64>,
    /// Sampling seed (NDS_CHAOSLAB_SEED overrides this too).
    #[arg(long)]
    seed: Option<u64>,
    /// Tail window fraction for density estimates, in (0, 1].
    #[arg(long)]
    window: Option<f64>,
    /// Lower-density threshold treated as zero.
    #[arg(long)]
    eps_zero: Option<f64>,
    /// Tolerance below 1 still treated as full upper density.
    #[arg(long)]
    one_tol: Option<f64>,
    /// Minimum upper-lower density gap for a DC3 witness.
    #[arg(long)]
    gap: Option<f64>,
    /// Li-Yorke proximity threshold.
    #[arg(long)]
    eps_prox: Option<f64>,
    /// Li-Yorke separation threshold.
    #[arg(long)]
    eps_sep: Option<f64>,
    /// Sensitivity separation threshold.
    #[arg(long)]
    delta: Option<f64>,
    /// Accessibility closeness threshold.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Separation threshold for block-modulus estimation.
    #[arg(long)]
    sep_threshold: Option<f64>,
    /// Probe count for sensitivity/accessibility grids.
    #[arg(long)]
    probes: Option<usize>,
    /// Sample count per probe.
    #[arg(long)]
    samples: Option<usize>,
    /// Number of evenly spaced thresholds in the t grid.
    #[arg(long)]
    grid_points: Option<usize>,
    /// Largest factorial block index for the construction experiment.
    #[arg(long)]
    max_block: Option<u32>,
    /// Family size for the construction experiment.
    #[arg(long)]
    count: Option<usize>,
    /// Minimum fraction of flagged pairs an iterate must preserve.
    #[arg(long)]
    min_preserved: Option<f64>,
    /// Also write SVG charts next to the CSV tables.
    #[arg(long)]
    svg: bool,
    /// Exit 3 instead of 0 when an experiment's hypothesis is unmet.
    #[arg(long)]
    strict_hypotheses: bool,
}

impl CommonArgs {
    fn apply(&self, cfg: &mut RunConfig) {
        macro_rules! set {
            ($field:ident, $key:literal) => {
                if let Some(v) = &self.$field {
                    cfg.$field = v.clone();
                    cfg.mark_set($key);
                }
            };
        }
        set!(output, "output");
        set!(system, "system");
        set!(length, "length");
        set!(horizon, "horizon");
        set!(pairs, "pairs");
        set!(k, "k");
        set!(ks, "ks");
        set!(block, "block");
        set!(seed, "seed");
        set!(window, "window");
        set!(eps_zero, "eps_zero");
        set!(one_tol, "one_tol");
        set!(gap, "gap");
        set!(eps_prox, "eps_prox");
        set!(eps_sep, "eps_sep");
        set!(delta, "delta");
        set!(epsilon, "epsilon");
        set!(sep_threshold, "sep_threshold");
        set!(grid_points, "grid_points");
        set!(max_block, "max_block");
        set!(count, "count");
        set!(min_preserved, "min_preserved");
        if let Some(v) = self.parameter {
            cfg.parameter = Some(v);
            cfg.mark_set("parameter");
        }
        if let Some(v) = self.probes {
            cfg.probes = Some(v);
            cfg.mark_set("probes");
        }
        if let Some(v) = self.samples {
            cfg.samples = Some(v);
            cfg.mark_set("samples");
        }
        if self.svg {
            cfg.svg = true;
            cfg.mark_set("svg");
        }
        if self.strict_hypotheses {
            cfg.strict_hypotheses = true;
            cfg.mark_set("strict_hypotheses");
        }
    }
}

fn report_error(err: &Error) -> u8 {
    match err {
        Error::Validation(messages) => {
            for m in messages {
                eprintln!("config error: {m}");
            }
            2
        }
        Error::Parse(m) => {
            eprintln!("config error: {m}");
            2
        }
        other => {
            eprintln!("error: {other}");
            1
        }
    }
}

fn real_main() -> u8 {
    let cli = Cli::parse();
    let (mode, experiment, args) = cli.command.split();

    let mut cfg = match &args.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => match parse_config(&text) {
                Ok(c) => c,
                Err(e) => return report_error(&e),
            },
            Err(e) => {
                eprintln!("config error: cannot read {}: {e}", path.display());
                return 2;
            }
        },
        None => RunConfig::default(),
    };
    args.apply(&mut cfg);
    if let Some(exp) = experiment {
        cfg.experiment = Some(exp);
        cfg.mark_set("experiment");
    }
    if let Err(e) = apply_env_seed(&mut cfg) {
        return report_error(&e);
    }

    match runner::run(&mode, &cfg) {
        Ok(outcome) => {
            if let Ok(report) = std::fs::read_to_string(cfg.output.join("report.txt")) {
                print!("{report}");
            }
            println!("{}", outcome.summary);
            outcome.exit_code as u8
        }
        Err(e) => report_error(&e),
    }
}

fn main() -> ExitCode {
    ExitCode::from(real_main())
}
