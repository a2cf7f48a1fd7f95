//! Sensitivity + accessibility probes, and their stability under iteration
//! on finitely generated interval systems: if every ball separates beyond
//! delta and every two balls approach within epsilon, the same holds for the
//! k-th iterate at the same resolution.
//!
//! Run with: cargo run --example kato_invariance

use nds_chaoslab::harness::{run_kato_invariance, KatoInvarianceParams};
use nds_chaoslab::kato::{kato_verdict, KatoParams};
use nds_chaoslab::maps::MapSpec;
use nds_chaoslab::space::Space;
use nds_chaoslab::system::{Generator, NDSystem, TailRule};

fn main() -> nds_chaoslab::Result<()> {
    let tent = NDSystem::autonomous(Space::UnitInterval, MapSpec::tent(2.0));
    let identity = NDSystem::autonomous(Space::UnitInterval, MapSpec::Identity);

    // The raw probe verdict: tent separates and mixes, the identity does
    // neither.
    let params = KatoParams::default_for(Space::UnitInterval);
    let tent_outcome = kato_verdict(&tent, &params)?;
    let id_outcome = kato_verdict(&identity, &params)?;
    println!(
        "tent(2): sensitive {} + accessible {} => verdict {}",
        tent_outcome.sensitivity.sensitive, tent_outcome.accessible, tent_outcome.verdict
    );
    println!(
        "identity: sensitive {} + accessible {} => verdict {}",
        id_outcome.sensitivity.sensitive, id_outcome.accessible, id_outcome.verdict
    );

    // Invariance under iteration for a finitely generated alternation.
    let alternation = NDSystem {
        space: Space::UnitInterval,
        generator: Generator::ExplicitList {
            maps: vec![MapSpec::tent(2.0), MapSpec::Doubling],
            tail: TailRule::Cycle,
        },
    };
    let report =
        run_kato_invariance(&alternation, &KatoInvarianceParams::default_for(Space::UnitInterval))?;
    print!("{}", report.render());
    std::process::exit(if report.passed() { 0 } else { 1 });
}
