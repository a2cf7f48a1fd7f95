//! Finite-resolution tests of sensitivity and accessibility, and their
//! conjunction. "For any nonempty open set" is not finitely checkable, so
//! open sets are a declared deterministic grid of metric-ball probes, and
//! points inside a probe come from a low-discrepancy sequence seeded by the
//! probe index. Negative verdicts mean "not detected at this resolution",
//! never refutation.

use crate::space::{Point, Space};
use crate::symbolic::SymbolicSeq;
use crate::system::NDSystem;
use crate::{Error, Result};

pub const DEFAULT_DELTA: f64 = 0.25;
pub const DEFAULT_EPSILON: f64 = 1e-3;
pub const DEFAULT_HORIZON: u64 = 256;

/// A metric ball standing in for a nonempty open set.
#[derive(Clone, Debug)]
pub struct OpenSetProbe {
    pub center: Point,
    pub radius: f64,
}

/// Which side of the threshold the hitting-time set records.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GapSide {
    /// Times where some sampled pair is closer than the threshold.
    Below,
    /// Times where some sampled pair is farther than the threshold.
    Above,
}

/// Golden-ratio low-discrepancy point in (0, 1), stream `seed`, index `i`.
fn golden(i: u64, seed: u64) -> f64 {
    const PHI_CONJ: f64 = 0.618_033_988_749_894_9;
    const SPREAD: f64 = 0.324_717_957_244_746;
    let v = (i + 1) as f64 * PHI_CONJ + seed as f64 * SPREAD;
    v.fract()
}

/// Deterministic sample points inside a probe ball. Interval/square probes
/// spread along golden-ratio offsets; sequence-space probes agree with the
/// center to the ball's cylinder depth and then carry distinct short words
/// (with matching all-zero tails beyond them).
pub fn sample_in_probe(
    space: Space,
    probe: &OpenSetProbe,
    m: usize,
    seed: u64,
) -> Result<Vec<Point>> {
    if m < 2 {
        return Err(Error::DomainViolation("need at least 2 samples per probe".into()));
    }
    if !(probe.radius > 0.0) {
        return Err(Error::DomainViolation("probe radius must be positive".into()));
    }
    space.validate(&probe.center)?;
    let mut out = Vec::with_capacity(m);
    match (&probe.center, space) {
        (Point::Real(c), Space::UnitInterval | Space::UnitSquare) => {
            for i in 0..m {
                let coords: Vec<f64> = c
                    .iter()
                    .enumerate()
                    .map(|(axis, &x)| {
                        let u = golden(i as u64, seed.wrapping_add(axis as u64));
                        // Stay strictly inside the ball and the space.
                        (x + (2.0 * u - 1.0) * probe.radius * 0.999).clamp(0.0, 1.0)
                    })
                    .collect();
                out.push(Point::Real(coords));
            }
        }
        (Point::Symbolic(c), Space::ShiftOneSided | Space::ShiftTwoSided) => {
            // Depth D with 2^-D <= radius: agreeing with the center through
            // depth D keeps the tail weight within the ball.
            let depth = (-probe.radius.log2()).ceil().max(1.0) as i64 + 1;
            for i in 0..m {
                let tag = (i as u64).wrapping_mul(0x9e37_79b9).wrapping_add(seed);
                let word_len = 16i64;
                let lo = if c.is_two_sided() { -depth } else { 0 };
                let hi = depth + word_len;
                let core: Vec<u8> = (lo..hi)
                    .map(|pos| {
                        if pos < depth {
                            c.symbol_at(pos)
                        } else {
                            ((tag >> (pos - depth)) & 1) as u8
                        }
                    })
                    .collect();
                let s = if c.is_two_sided() {
                    // Keep the center's pattern on the far left as well.
                    SymbolicSeq::two_sided(&[c.symbol_at(lo - 1)], &core, &[0], lo)
                } else {
                    SymbolicSeq::one_sided(&core, &[0])
                };
                out.push(Point::Symbolic(s));
            }
        }
        _ => {
            return Err(Error::DomainViolation(
                "probe center does not match the space".into(),
            ))
        }
    }
    Ok(out)
}

/// Advances every point one time step under the system.
fn advance(sys: &NDSystem, pts: &mut [Point], now: &mut u64) -> Result<()> {
    let m = sys.map_at(*now + 1)?;
    for p in pts.iter_mut() {
        *p = m.apply(p)?;
    }
    *now += 1;
    Ok(())
}

/// Extreme pairwise distances within one point cloud: (min, max).
/// Interval clouds sort once; other spaces compare all pairs.
fn cloud_extremes(space: Space, pts: &[Point]) -> (f64, f64) {
    if space == Space::UnitInterval {
        let mut xs: Vec<f64> = pts.iter().map(|p| p.as_scalar().unwrap()).collect();
        xs.sort_unstable_by(f64::total_cmp);
        let max = xs[xs.len() - 1] - xs[0];
        let mut min = f64::INFINITY;
        for w in xs.windows(2) {
            min = min.min(w[1] - w[0]);
        }
        (min, max)
    } else {
        let mut min = f64::INFINITY;
        let mut max: f64 = 0.0;
        for i in 0..pts.len() {
            for j in 0..i {
                let d = space.distance(&pts[i], &pts[j]);
                min = min.min(d);
                max = max.max(d);
            }
        }
        (min, max)
    }
}

/// Smallest distance between two point clouds, with the achieving indices.
fn cross_min(space: Space, us: &[Point], vs: &[Point], skip: &[(usize, usize)]) -> (f64, usize, usize) {
    let mut best = (f64::INFINITY, 0usize, 0usize);
    for (i, u) in us.iter().enumerate() {
        for (j, v) in vs.iter().enumerate() {
            if skip.binary_search(&(i, j)).is_ok() {
                continue;
            }
            let d = space.distance(u, v);
            if d < best.0 {
                best = (d, i, j);
            }
        }
    }
    best
}

/// The hitting-time set over one probe: times n in [1, horizon] at which some
/// sampled pair in the probe has distance below (or above) the threshold.
pub fn n_set(
    sys: &NDSystem,
    probe: &OpenSetProbe,
    threshold: f64,
    horizon: u64,
    m: usize,
    side: GapSide,
) -> Result<Vec<u64>> {
    sys.validate()?;
    let mut pts = sample_in_probe(sys.space, probe, m, 0)?;
    let mut now = 0u64;
    let mut hits = Vec::new();
    while now < horizon {
        advance(sys, &mut pts, &mut now)?;
        let (min, max) = cloud_extremes(sys.space, &pts);
        let hit = match side {
            GapSide::Below => min < threshold,
            GapSide::Above => max > threshold,
        };
        if hit {
            hits.push(now);
        }
    }
    Ok(hits)
}

/// Per-probe outcome of the sensitivity scan.
#[derive(Clone, Debug)]
pub struct ProbeSeparation {
    /// Largest pairwise separation reached within the horizon.
    pub achieved: f64,
    /// First time the separation exceeded the threshold, if it did.
    pub first_time: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct SensitivityOutcome {
    pub sensitive: bool,
    pub delta: f64,
    /// Index of the probe with the smallest achieved separation.
    pub worst_probe: usize,
    pub worst_separation: f64,
    pub per_probe: Vec<ProbeSeparation>,
}

/// Tests whether every probe contains a pair that separates beyond `delta`
/// within the horizon.
pub fn sensitivity_test(
    sys: &NDSystem,
    delta: f64,
    probes: &[OpenSetProbe],
    horizon: u64,
    m: usize,
) -> Result<SensitivityOutcome> {
    if probes.is_empty() {
        return Err(Error::EmptyInput("sensitivity probe grid"));
    }
    if !(delta > 0.0) {
        return Err(Error::DomainViolation("sensitivity threshold must be positive".into()));
    }
    sys.validate()?;
    let mut per_probe = Vec::with_capacity(probes.len());
    for (pi, probe) in probes.iter().enumerate() {
        let mut pts = sample_in_probe(sys.space, probe, m, pi as u64)?;
        let mut now = 0u64;
        let mut achieved: f64 = 0.0;
        let mut first_time = None;
        while now < horizon {
            advance(sys, &mut pts, &mut now)?;
            let (_, max) = cloud_extremes(sys.space, &pts);
            if max > achieved {
                achieved = max;
            }
            if max > delta {
                first_time = Some(now);
                break;
            }
        }
        per_probe.push(ProbeSeparation { achieved, first_time });
    }
    let worst_probe = (0..per_probe.len())
        .min_by(|&a, &b| per_probe[a].achieved.total_cmp(&per_probe[b].achieved))
        .unwrap();
    Ok(SensitivityOutcome {
        sensitive: per_probe.iter().all(|p| p.first_time.is_some()),
        delta,
        worst_probe,
        worst_separation: per_probe[worst_probe].achieved,
        per_probe,
    })
}

#[derive(Clone, Debug)]
pub struct AccessOutcome {
    pub accessible: bool,
    pub epsilon: f64,
    /// (sample index in U, sample index in V, time, distance) on success.
    pub witness: Option<(usize, usize, u64, f64)>,
}

/// Tests whether some x in U and y in V approach within `epsilon` at some
/// time in [1, horizon]. Pairs whose picks coincide initially are excluded,
/// so overlapping probes cannot win for free.
pub fn accessibility_test(
    sys: &NDSystem,
    epsilon: f64,
    u: &OpenSetProbe,
    v: &OpenSetProbe,
    horizon: u64,
    m: usize,
) -> Result<AccessOutcome> {
    if !(epsilon > 0.0) {
        return Err(Error::DomainViolation("accessibility threshold must be positive".into()));
    }
    sys.validate()?;
    let mut us = sample_in_probe(sys.space, u, m, 101)?;
    let mut vs = sample_in_probe(sys.space, v, m, 202)?;
    let mut coincident: Vec<(usize, usize)> = Vec::new();
    for (i, a) in us.iter().enumerate() {
        for (j, b) in vs.iter().enumerate() {
            if a == b {
                coincident.push((i, j));
            }
        }
    }
    coincident.sort_unstable();
    let mut now = 0u64;
    while now < horizon {
        advance(sys, &mut us, &mut now)?;
        advance_second(sys, &mut vs, now)?;
        let (d, i, j) = if sys.space == Space::UnitInterval && coincident.is_empty() {
            // Sorted sweep: the closest cross pair is adjacent in the merged
            // order, so one sort per side suffices.
            sorted_cross_min(&us, &vs)
        } else {
            cross_min(sys.space, &us, &vs, &coincident)
        };
        if d < epsilon {
            return Ok(AccessOutcome {
                accessible: true,
                epsilon,
                witness: Some((i, j, now, d)),
            });
        }
    }
    Ok(AccessOutcome { accessible: false, epsilon, witness: None })
}

/// Advances the second cloud to the given (already advanced) time.
fn advance_second(sys: &NDSystem, pts: &mut [Point], now: u64) -> Result<()> {
    let m = sys.map_at(now)?;
    for p in pts.iter_mut() {
        *p = m.apply(p)?;
    }
    Ok(())
}

fn sorted_cross_min(us: &[Point], vs: &[Point]) -> (f64, usize, usize) {
    let mut xs: Vec<(f64, usize)> =
        us.iter().enumerate().map(|(i, p)| (p.as_scalar().unwrap(), i)).collect();
    let mut ys: Vec<(f64, usize)> =
        vs.iter().enumerate().map(|(j, p)| (p.as_scalar().unwrap(), j)).collect();
    xs.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
    ys.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
    let mut best = (f64::INFINITY, 0usize, 0usize);
    let mut j = 0usize;
    for &(x, xi) in &xs {
        while j + 1 < ys.len() && ys[j].0 < x {
            j += 1;
        }
        for cand in j.saturating_sub(1)..=(j).min(ys.len() - 1) {
            let (y, yj) = ys[cand];
            let d = (x - y).abs();
            if d < best.0 {
                best = (d, xi, yj);
            }
        }
    }
    best
}

/// Parameters for the combined verdict.
#[derive(Clone, Debug)]
pub struct KatoParams {
    pub delta: f64,
    pub epsilon: f64,
    pub horizon: u64,
    pub samples: usize,
    pub probes: Vec<OpenSetProbe>,
    /// Every `access_stride`-th probe joins the accessibility pair grid.
    pub access_stride: usize,
}

impl KatoParams {
    pub fn default_for(space: Space) -> Self {
        let probes = default_probes(space, if space.is_symbolic() { 16 } else { 64 });
        let access_stride = if space.is_symbolic() { 4 } else { 8 };
        KatoParams {
            delta: DEFAULT_DELTA,
            epsilon: DEFAULT_EPSILON,
            horizon: DEFAULT_HORIZON,
            samples: if space.is_symbolic() { 8 } else { 16 },
            probes,
            access_stride,
        }
    }
}

/// A deterministic spread of ball probes for a space.
pub fn default_probes(space: Space, count: usize) -> Vec<OpenSetProbe> {
    let radius = 0.01;
    (0..count)
        .map(|i| {
            let center = match space {
                Space::UnitInterval => Point::scalar((i as f64 + 0.5) / count as f64),
                Space::UnitSquare => Point::Real(vec![
                    (i as f64 + 0.5) / count as f64,
                    golden(i as u64, 7),
                ]),
                Space::ShiftOneSided | Space::ShiftTwoSided => {
                    let tag = (i as u64).wrapping_mul(0x9e37_79b9).wrapping_add(1);
                    let word: Vec<u8> = (0..12).map(|b| ((tag >> b) & 1) as u8).collect();
                    let s = if space == Space::ShiftTwoSided {
                        SymbolicSeq::two_sided(&[0], &word, &[0], 0)
                    } else {
                        SymbolicSeq::one_sided(&word, &[0])
                    };
                    Point::Symbolic(s)
                }
            };
            OpenSetProbe { center, radius }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct KatoReport {
    pub sensitivity: SensitivityOutcome,
    pub accessible: bool,
    pub access_pairs_tested: usize,
    /// First probe pair that failed accessibility, if any.
    pub inaccessible_pair: Option<(usize, usize)>,
    pub verdict: bool,
}

/// Conjunction of sensitivity over the probe grid and accessibility over all
/// unordered pairs of the strided probe subset, at a shared horizon.
pub fn kato_verdict(sys: &NDSystem, params: &KatoParams) -> Result<KatoReport> {
    let sensitivity =
        sensitivity_test(sys, params.delta, &params.probes, params.horizon, params.samples)?;
    let subset: Vec<usize> =
        (0..params.probes.len()).step_by(params.access_stride.max(1)).collect();
    let mut accessible = true;
    let mut inaccessible_pair = None;
    let mut tested = 0usize;
    'outer: for (ai, &i) in subset.iter().enumerate() {
        for &j in subset.iter().skip(ai + 1) {
            tested += 1;
            let out = accessibility_test(
                sys,
                params.epsilon,
                &params.probes[i],
                &params.probes[j],
                params.horizon,
                params.samples,
            )?;
            if !out.accessible {
                accessible = false;
                inaccessible_pair = Some((i, j));
                break 'outer;
            }
        }
    }
    let verdict = sensitivity.sensitive && accessible;
    Ok(KatoReport {
        sensitivity,
        accessible,
        access_pairs_tested: tested,
        inaccessible_pair,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::MapSpec;

    fn tent() -> NDSystem {
        NDSystem::autonomous(Space::UnitInterval, MapSpec::tent(2.0))
    }

    fn identity() -> NDSystem {
        NDSystem::autonomous(Space::UnitInterval, MapSpec::Identity)
    }

    #[test]
    fn identity_is_not_sensitive_and_hit_sets_are_extreme() {
        let probes = default_probes(Space::UnitInterval, 16);
        let out = sensitivity_test(&identity(), 0.25, &probes, 32, 8).unwrap();
        assert!(!out.sensitive, "identity never separates beyond probe width");
        assert!(out.worst_separation < 0.25);

        let probe = &probes[3];
        let below = n_set(&identity(), probe, 0.25, 16, 8, GapSide::Below).unwrap();
        assert_eq!(below, (1..=16).collect::<Vec<u64>>(), "threshold above probe width");
        let tiny = n_set(&identity(), probe, 1e-9, 16, 8, GapSide::Below).unwrap();
        assert!(tiny.is_empty(), "threshold below min sample gap");
        // At threshold = diameter the below-set is everything, for any system.
        let full = n_set(&tent(), probe, 1.0, 16, 8, GapSide::Below).unwrap();
        assert_eq!(full, (1..=16).collect::<Vec<u64>>());
    }

    #[test]
    fn tent_is_sensitive_on_the_default_grid() {
        let probes = default_probes(Space::UnitInterval, 64);
        let out = sensitivity_test(&tent(), 0.25, &probes, 64, 16).unwrap();
        assert!(out.sensitive, "doubling slope separates every probe");
        // Antitone in delta: the same scan passes at a smaller threshold.
        let smaller = sensitivity_test(&tent(), 0.1, &probes, 64, 16).unwrap();
        assert!(smaller.sensitive);
    }

    #[test]
    fn doubling_first_hit_matches_expansion_arithmetic() {
        let sys = NDSystem::autonomous(Space::UnitInterval, MapSpec::Doubling);
        let probe = OpenSetProbe { center: Point::scalar(0.3), radius: 0.01 };
        let pts = sample_in_probe(Space::UnitInterval, &probe, 8, 0).unwrap();
        let (_, spread0) = cloud_extremes(Space::UnitInterval, &pts);
        let predicted = (0.25f64 / spread0).log2().ceil() as u64;
        let above = n_set(&sys, &probe, 0.25, 16, 8, GapSide::Above).unwrap();
        assert_eq!(above.first().copied(), Some(predicted), "spread doubles each step");
    }

    #[test]
    fn accessibility_identity_vs_mixing() {
        let u = OpenSetProbe { center: Point::scalar(0.2), radius: 0.01 };
        let v = OpenSetProbe { center: Point::scalar(0.8), radius: 0.01 };
        let out = accessibility_test(&identity(), 1e-3, &u, &v, 64, 16).unwrap();
        assert!(!out.accessible, "identity keeps the probes 0.6 apart");

        let out = accessibility_test(&tent(), 1e-3, &u, &v, 1000, 200).unwrap();
        assert!(out.accessible, "expanding orbits pass within 1e-3");
        let (i, j, n, d) = out.witness.unwrap();
        assert!(d < 1e-3 && n >= 1);
        assert!(i < 200 && j < 200);
        // Monotone in epsilon.
        let wider = accessibility_test(&tent(), 1e-2, &u, &v, 1000, 200).unwrap();
        assert!(wider.accessible);
    }

    #[test]
    fn shift_accessibility_by_matching_tails() {
        let sys = NDSystem::autonomous(Space::ShiftOneSided, MapSpec::shift());
        let probes = default_probes(Space::ShiftOneSided, 4);
        let out = accessibility_test(&sys, 1e-3, &probes[0], &probes[1], 64, 6).unwrap();
        assert!(out.accessible, "zero tails coincide after the words pass");
        let (_, _, n, d) = out.witness.unwrap();
        assert!(d < 1e-3, "witness distance {d} at time {n}");
    }

    #[test]
    fn kato_verdict_identity_false_tent_true() {
        let mut params = KatoParams::default_for(Space::UnitInterval);
        params.horizon = 128;
        params.probes = default_probes(Space::UnitInterval, 16);
        params.access_stride = 5;
        let id_report = kato_verdict(&identity(), &params).unwrap();
        assert!(!id_report.verdict && !id_report.sensitivity.sensitive);

        let tent_report = kato_verdict(&tent(), &params).unwrap();
        assert!(tent_report.sensitivity.sensitive);
        assert!(tent_report.accessible);
        assert!(tent_report.verdict);
        // Conjunction invariant.
        assert_eq!(
            tent_report.verdict,
            tent_report.sensitivity.sensitive && tent_report.accessible
        );

        let iter2 = tent().iterate(2);
        let it_report = kato_verdict(&iter2, &params).unwrap();
        assert!(it_report.verdict, "second iterate stays chaotic");
    }
}
