//! The counting relations that carry the zero-proximity/positive-separation
//! chaos variant from a system to its k-th iterate: the iterate's proximity
//! counts are dominated by the base's at every time, and each separated
//! iterate time (after the first) forces a whole block of base times apart
//! beyond an estimated equicontinuity modulus.
//!
//! Run with: cargo run --example dc2prime_inequalities

use nds_chaoslab::harness::{run_dc2prime_invariance, Dc2PrimeParams};
use nds_chaoslab::maps::MapSpec;
use nds_chaoslab::sampling::point_pairs;
use nds_chaoslab::space::Space;
use nds_chaoslab::system::NDSystem;

fn main() -> nds_chaoslab::Result<()> {
    let sys = NDSystem::autonomous(Space::UnitInterval, MapSpec::tent(2.0));
    let (x, y) = point_pairs(sys.space, 1, 5)?.remove(0);
    let params = Dc2PrimeParams::new(2, 4_000);
    let report = run_dc2prime_invariance(&sys, (&x, &y), &params)?;
    print!("{}", report.render());
    std::process::exit(if report.passed() { 0 } else { 1 });
}
