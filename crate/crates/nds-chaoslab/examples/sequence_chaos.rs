//! Exact counting identities behind a scrambled family on the one-sided
//! shift. Points are constant on factorial-length blocks; at each checkpoint
//! N = (n+1)! a pair that agrees on block n has been close for at least
//! N - n! of the first N times, and a pair that disagrees has been close for
//! at most n! of them — integer identities, checked with zero tolerance.
//!
//! Run with: cargo run --example sequence_chaos

use nds_chaoslab::harness::{run_sequence_chaos_construction, SequenceChaosParams};

fn main() -> nds_chaoslab::Result<()> {
    let params = SequenceChaosParams { count: 6, max_block: 6, seed: 11 };
    let report = run_sequence_chaos_construction(&params)?;
    print!("{}", report.render());
    std::process::exit(if report.passed() { 0 } else { 1 });
}
