//! Li-Yorke flags survive iteration: pairs flagged on a uniformly
//! convergent logistic family stay flagged on its k-th iterate systems,
//! and iterate-flagged pairs stay flagged on the base over the same span
//! of base steps.
//!
//! Run with: cargo run --release --example liyorke_invariance

use nds_chaoslab::catalog::logistic_convergent_system;
use nds_chaoslab::harness::{run_liyorke_invariance, LiYorkeInvarianceParams};

fn main() -> nds_chaoslab::Result<()> {
    let sys = logistic_convergent_system();
    // A lighter run than the defaults (200 pairs at 100k steps) so the
    // example finishes quickly; the preservation rates behave the same.
    let params = LiYorkeInvarianceParams {
        pairs: 60,
        horizon: 20_000,
        ks: vec![2, 3],
        ..LiYorkeInvarianceParams::default()
    };
    let report = run_liyorke_invariance(&sys, &params)?;
    print!("{}", report.render());
    std::process::exit(if report.passed() { 0 } else { 1 });
}
