//! The alternating-powers counterexample on the two-sided shift: the base
//! system shows interval-gap distributional chaos (and a Li-Yorke pair)
//! while its second iterate is the identity in every composition, so all
//! chaos verdicts vanish under iteration.
//!
//! Run with: cargo run --release --example dc3_counterexample

use nds_chaoslab::harness::{run_dc3_counterexample, Dc3CounterexampleParams};

fn main() -> nds_chaoslab::Result<()> {
    let params = Dc3CounterexampleParams::default();
    eprintln!(
        "profiling the witness pair over {} steps; this takes a moment...",
        params.horizon
    );
    let report = run_dc3_counterexample(&params)?;
    print!("{}", report.render());
    std::process::exit(if report.passed() { 0 } else { 1 });
}
