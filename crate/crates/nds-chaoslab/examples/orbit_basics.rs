//! Building systems and running orbits: an autonomous logistic map, a
//! two-map alternation, and a family converging to the tent map, plus the
//! composition-block operator behind everything else in the crate.
//!
//! Run with: cargo run --example orbit_basics

use nds_chaoslab::maps::MapSpec;
use nds_chaoslab::space::{Point, Space};
use nds_chaoslab::system::{DecayRule, FamilyKind, Generator, NDSystem, TailRule};

fn show(name: &str, sys: &NDSystem, x0: &Point, steps: u64) -> nds_chaoslab::Result<()> {
    let orbit = sys.orbit(x0, steps)?;
    let rendered: Vec<String> = orbit
        .iter()
        .map(|p| match p {
            Point::Real(v) if v.len() == 1 => format!("{:.6}", v[0]),
            other => format!("{other:?}"),
        })
        .collect();
    println!("{name}: {}", rendered.join(" -> "));
    Ok(())
}

fn main() -> nds_chaoslab::Result<()> {
    let x0 = Point::scalar(0.2);

    let logistic = NDSystem::autonomous(Space::UnitInterval, MapSpec::logistic(4.0));
    show("logistic(4), 6 steps", &logistic, &x0, 6)?;

    let alternation = NDSystem {
        space: Space::UnitInterval,
        generator: Generator::ExplicitList {
            maps: vec![MapSpec::tent(2.0), MapSpec::Doubling],
            tail: TailRule::Cycle,
        },
    };
    show("tent/doubling alternation, 6 steps", &alternation, &x0, 6)?;

    // Map n is a tent map with slope 2 - 1/n: different at every step, but
    // converging uniformly to the slope-2 tent map.
    let family = NDSystem {
        space: Space::UnitInterval,
        generator: Generator::ConvergentFamily {
            family: FamilyKind::Tent,
            limit: 2.0,
            offset: 1.0,
            decay: DecayRule::Harmonic,
        },
    };
    show("tent family (slope 2 - 1/n), 6 steps", &family, &x0, 6)?;

    // The block operator composes maps i, i+1, ..., i+n-1 in one call; the
    // state after n steps is exactly the n-block started at time 1.
    let six_steps = alternation.apply_block(1, 6, &x0)?;
    let orbit_end = alternation.orbit(&x0, 6)?.pop().unwrap();
    assert_eq!(six_steps, orbit_end);
    println!("apply_block(1, 6) equals the 6th orbit point exactly");

    // Individual maps are inspectable: time indices are 1-based.
    println!("alternation map at time 1: {:?}", alternation.map_at(1)?);
    println!("alternation map at time 2: {:?}", alternation.map_at(2)?);
    Ok(())
}
