//! Distance profiles of orbit pairs and the finite-horizon chaos estimators
//! built on them: the lower/upper distribution functions, the proximity and
//! separation counting functions, and the pair classifier.

use crate::space::Point;
use crate::system::NDSystem;
use crate::{Error, Result};

pub const DEFAULT_EPS_ZERO: f64 = 0.05;
pub const DEFAULT_ONE_TOL: f64 = 0.05;
pub const DEFAULT_GAP: f64 = 0.2;
pub const DEFAULT_WINDOW: f64 = 0.5;
pub const DEFAULT_EPS_PROX: f64 = 1e-3;
pub const DEFAULT_EPS_SEP: f64 = 0.5;

/// The default t-grid tops out slightly above the diameter so the largest
/// grid point dominates every distance: there the proximity fraction is
/// exactly 1 for every n, which keeps the verdict hierarchy (a DC1 verdict
/// entails DC2) structural rather than accidental.
pub const GRID_TOP_FACTOR: f64 = 1.0000001;

/// An exact fraction count/total, kept in integers so complementarity
/// identities hold exactly rather than up to rounding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountFraction {
    pub count: u64,
    pub total: u64,
}

impl CountFraction {
    pub fn as_f64(self) -> f64 {
        self.count as f64 / self.total as f64
    }

    /// The complementary fraction over the same total.
    pub fn complement(self) -> CountFraction {
        CountFraction { count: self.total - self.count, total: self.total }
    }
}

/// Which orbit times a distance profile samples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SampleTimes {
    /// Times 0, 1, ..., N-1. Entry 0 is the initial distance d(x, y).
    FromZero,
    /// Times 1, 2, ..., N: the profile starts after one step. Block-counting
    /// identities for factorial constructions are exact in this convention.
    FromOne,
    /// An arbitrary strictly increasing list of orbit times.
    Explicit(Vec<u64>),
}

impl SampleTimes {
    fn times(&self, n: usize) -> Result<Vec<u64>> {
        match self {
            SampleTimes::FromZero => Ok((0..n as u64).collect()),
            SampleTimes::FromOne => Ok((1..=n as u64).collect()),
            SampleTimes::Explicit(ts) => {
                if ts.len() != n {
                    return Err(Error::DomainViolation(format!(
                        "requested {n} samples but the explicit time list has {}",
                        ts.len()
                    )));
                }
                if !ts.windows(2).all(|w| w[0] < w[1]) {
                    return Err(Error::DomainViolation(
                        "explicit sample times must be strictly increasing".into(),
                    ));
                }
                Ok(ts.clone())
            }
        }
    }
}

/// Distances between two orbits at a list of sampled times.
#[derive(Clone, Debug)]
pub struct PairDistanceProfile {
    /// d(x_t, y_t) for each sampled time t, in time order.
    pub distances: Vec<f64>,
    /// The sampled orbit times, strictly increasing, same length.
    pub times: Vec<u64>,
}

impl PairDistanceProfile {
    pub fn from_parts(distances: Vec<f64>, times: Vec<u64>) -> Result<Self> {
        if distances.is_empty() {
            return Err(Error::EmptyInput("distance profile"));
        }
        if distances.len() != times.len() {
            return Err(Error::DomainViolation(format!(
                "{} distances vs {} times",
                distances.len(),
                times.len()
            )));
        }
        if distances.iter().any(|d| !d.is_finite() || *d < 0.0) {
            return Err(Error::DomainViolation(
                "distances must be finite and nonnegative".into(),
            ));
        }
        if !times.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::DomainViolation(
                "profile times must be strictly increasing".into(),
            ));
        }
        Ok(PairDistanceProfile { distances, times })
    }

    pub fn len(&self) -> usize {
        self.distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distances.is_empty()
    }

    /// Sub-profile at positions `idx` (indices into this profile, strictly
    /// increasing). Entries equal the parent's entries at those positions.
    pub fn subsample(&self, idx: &[usize]) -> Result<PairDistanceProfile> {
        if idx.iter().any(|&i| i >= self.len()) {
            return Err(Error::HorizonExceeded {
                requested: *idx.iter().max().unwrap_or(&0),
                available: self.len(),
            });
        }
        PairDistanceProfile::from_parts(
            idx.iter().map(|&i| self.distances[i]).collect(),
            idx.iter().map(|&i| self.times[i]).collect(),
        )
    }
}

/// Computes the distance profile of the pair (x, y) under the system, with
/// `n` samples at the times chosen by `sample`. Both orbits advance together
/// in a single pass.
pub fn pair_profile(
    sys: &NDSystem,
    x: &Point,
    y: &Point,
    n: usize,
    sample: &SampleTimes,
) -> Result<PairDistanceProfile> {
    if n == 0 {
        return Err(Error::EmptyInput("profile horizon"));
    }
    sys.space.validate(x)?;
    sys.space.validate(y)?;
    let times = sample.times(n)?;
    let mut cx = x.clone();
    let mut cy = y.clone();
    let mut now = 0u64;
    let mut distances = Vec::with_capacity(n);
    for &target in &times {
        while now < target {
            let m = sys.map_at(now + 1)?;
            cx = m.apply(&cx)?;
            cy = m.apply(&cy)?;
            now += 1;
        }
        distances.push(sys.space.distance(&cx, &cy));
    }
    PairDistanceProfile::from_parts(distances, times)
}

/// Proximity fraction: the fraction of the first `n` profile entries with
/// distance strictly below `t`.
pub fn xi_n(profile: &PairDistanceProfile, t: f64, n: usize) -> Result<CountFraction> {
    count_prefix(profile, n).map(|slice| CountFraction {
        count: slice.iter().filter(|&&d| d < t).count() as u64,
        total: n as u64,
    })
}

/// Separation fraction: entries with distance >= t. Exact complement of
/// [`xi_n`]: the two counts always sum to n.
pub fn delta_n(profile: &PairDistanceProfile, t: f64, n: usize) -> Result<CountFraction> {
    count_prefix(profile, n).map(|slice| CountFraction {
        count: slice.iter().filter(|&&d| d >= t).count() as u64,
        total: n as u64,
    })
}

fn count_prefix(profile: &PairDistanceProfile, n: usize) -> Result<&[f64]> {
    if n == 0 {
        return Err(Error::EmptyInput("prefix length"));
    }
    if n > profile.len() {
        return Err(Error::HorizonExceeded { requested: n, available: profile.len() });
    }
    Ok(&profile.distances[..n])
}

/// Finite-horizon stand-ins for the lower and upper distribution functions:
/// for each grid point t, the minimum and maximum of the proximity fraction
/// over prefix lengths n in the tail window.
#[derive(Clone, Debug)]
pub struct DistributionEstimate {
    pub t_grid: Vec<f64>,
    /// min over the window of the proximity fraction, per grid point.
    pub phi_lower: Vec<f64>,
    /// max over the window, per grid point.
    pub phi_upper: Vec<f64>,
    /// Tail window fraction in (0, 1].
    pub window: f64,
    /// Number of profile entries used.
    pub horizon: usize,
    /// First prefix length in the window (window covers n in
    /// [window_start, horizon]).
    pub window_start: usize,
}

/// Computes [`DistributionEstimate`] over an increasing positive grid.
/// The window covers prefix lengths n from max(1, ceil((1-w) N)) to N.
pub fn distribution_estimate(
    profile: &PairDistanceProfile,
    t_grid: &[f64],
    window: f64,
) -> Result<DistributionEstimate> {
    if t_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if !t_grid.windows(2).all(|w| w[0] < w[1]) || t_grid[0] <= 0.0 {
        return Err(Error::DomainViolation(
            "t-grid must be strictly increasing and positive".into(),
        ));
    }
    if !(window > 0.0 && window <= 1.0) {
        return Err(Error::DomainViolation(format!("window {window} outside (0, 1]")));
    }
    let n_total = profile.len();
    let window_start = (((1.0 - window) * n_total as f64).ceil() as usize).max(1);
    let g = t_grid.len();
    let mut counts = vec![0u64; g];
    let mut lo = vec![f64::INFINITY; g];
    let mut hi = vec![f64::NEG_INFINITY; g];
    for n in 1..=n_total {
        let d = profile.distances[n - 1];
        // d contributes to every grid point with t > d (strict proximity).
        let first = t_grid.partition_point(|&t| t <= d);
        for c in &mut counts[first..] {
            *c += 1;
        }
        if n >= window_start {
            // True division, matching CountFraction::as_f64 bit for bit
            // (a reciprocal multiply would differ in the last ulp).
            let nf = n as f64;
            for gi in 0..g {
                let xi = counts[gi] as f64 / nf;
                if xi < lo[gi] {
                    lo[gi] = xi;
                }
                if xi > hi[gi] {
                    hi[gi] = xi;
                }
            }
        }
    }
    Ok(DistributionEstimate {
        t_grid: t_grid.to_vec(),
        phi_lower: lo,
        phi_upper: hi,
        window,
        horizon: n_total,
        window_start,
    })
}

/// A default grid for a space of diameter `diam`: 64 evenly spaced points up
/// to the diameter, plus a top point slightly above it (see
/// [`GRID_TOP_FACTOR`]).
pub fn default_t_grid(diam: f64) -> Vec<f64> {
    let mut grid: Vec<f64> = (1..=64).map(|i| diam * i as f64 / 64.0).collect();
    grid.push(diam * GRID_TOP_FACTOR);
    grid
}

/// Outcome of the finite-horizon proximal/separated test on one pair.
#[derive(Clone, Copy, Debug)]
pub struct LiYorkeOutcome {
    pub chaotic: bool,
    /// Smallest distance in the tail window and the orbit time attaining it.
    pub min_distance: f64,
    pub min_time: u64,
    /// Largest distance in the tail window and the orbit time attaining it.
    pub max_distance: f64,
    pub max_time: u64,
    pub eps_prox: f64,
    pub eps_sep: f64,
}

/// Tests the pair for proximality (tail min < eps_prox) together with
/// separation (tail max > eps_sep) over the tail window.
pub fn li_yorke_test(
    profile: &PairDistanceProfile,
    eps_prox: f64,
    eps_sep: f64,
    window: f64,
) -> Result<LiYorkeOutcome> {
    if !(eps_prox > 0.0 && eps_prox <= eps_sep) {
        return Err(Error::DomainViolation(format!(
            "need 0 < eps_prox <= eps_sep, got {eps_prox} and {eps_sep}"
        )));
    }
    if !(window > 0.0 && window <= 1.0) {
        return Err(Error::DomainViolation(format!("window {window} outside (0, 1]")));
    }
    let n_total = profile.len();
    let start = (((1.0 - window) * n_total as f64).ceil() as usize).max(1);
    let tail = &profile.distances[start - 1..];
    let times = &profile.times[start - 1..];
    let (mut min_d, mut min_t) = (f64::INFINITY, 0u64);
    let (mut max_d, mut max_t) = (f64::NEG_INFINITY, 0u64);
    for (&d, &t) in tail.iter().zip(times) {
        if d < min_d {
            min_d = d;
            min_t = t;
        }
        if d > max_d {
            max_d = d;
            max_t = t;
        }
    }
    Ok(LiYorkeOutcome {
        chaotic: min_d < eps_prox && max_d > eps_sep,
        min_distance: min_d,
        min_time: min_t,
        max_distance: max_d,
        max_time: max_t,
        eps_prox,
        eps_sep,
    })
}

/// Thresholds for mapping estimates to verdicts. "Equals 0" and "equals 1"
/// are not decidable at finite horizon, so small tolerances stand in.
#[derive(Clone, Copy, Debug)]
pub struct ClassifyThresholds {
    /// A fraction at or below this counts as "zero".
    pub eps_zero: f64,
    /// An upper fraction at or above 1 - one_tol counts as "one".
    pub one_tol: f64,
    /// Required lower/upper separation on an interval for the third variant.
    pub gap: f64,
    /// When set, the interval variant additionally requires the upper
    /// function to be "one" on the interval (the stricter reading).
    pub dc3_requires_full_upper: bool,
}

impl Default for ClassifyThresholds {
    fn default() -> Self {
        ClassifyThresholds {
            eps_zero: DEFAULT_EPS_ZERO,
            one_tol: DEFAULT_ONE_TOL,
            gap: DEFAULT_GAP,
            dc3_requires_full_upper: true,
        }
    }
}

/// Verdicts for one pair, with the witnesses that produced them.
#[derive(Clone, Debug)]
pub struct ChaosVerdict {
    pub dc1: bool,
    pub dc2: bool,
    pub dc2_prime: bool,
    pub dc3: bool,
    /// Filled by [`classify_profile`]; `classify_pair` leaves it unset since
    /// the estimate alone cannot decide proximality.
    pub li_yorke: Option<bool>,
    /// First grid t with lower fraction <= eps_zero.
    pub zero_witness_t: Option<f64>,
    /// First grid t with lower fraction > eps_zero.
    pub positive_witness_t: Option<f64>,
    /// Smallest upper fraction over the grid (1-ish everywhere iff >= 1-tol).
    pub min_phi_upper: f64,
    /// Longest grid interval witnessing the gap condition, as (t_lo, t_hi).
    pub dc3_interval: Option<(f64, f64)>,
    pub thresholds: ClassifyThresholds,
    pub window: f64,
    pub horizon: usize,
}

/// Maps a distribution estimate to verdicts:
/// - DC1: some t has lower fraction "zero", and the upper fraction is "one"
///   at every t.
/// - DC2: some t has lower fraction above zero-threshold, and the upper
///   fraction is "one" everywhere.
/// - DC2': some t has lower fraction "zero", and the upper fraction exceeds
///   the zero-threshold everywhere.
/// - DC3: some nondegenerate grid interval where lower + gap <= upper
///   throughout (plus, in the strict variant, upper "one" throughout).
///
/// With the default grid (top point above the diameter) a DC1 verdict
/// entails DC2, and with eps_zero < 1 - one_tol it entails DC2'.
pub fn classify_pair(est: &DistributionEstimate, th: ClassifyThresholds) -> ChaosVerdict {
    let g = est.t_grid.len();
    let one_level = 1.0 - th.one_tol;
    let upper_all_one = est.phi_upper.iter().all(|&u| u >= one_level);
    let upper_all_positive = est.phi_upper.iter().all(|&u| u > th.eps_zero);
    let mut zero_witness_t = None;
    let mut positive_witness_t = None;
    for i in 0..g {
        if zero_witness_t.is_none() && est.phi_lower[i] <= th.eps_zero {
            zero_witness_t = Some(est.t_grid[i]);
        }
        if positive_witness_t.is_none() && est.phi_lower[i] > th.eps_zero {
            positive_witness_t = Some(est.t_grid[i]);
        }
    }
    let min_phi_upper = est.phi_upper.iter().cloned().fold(f64::INFINITY, f64::min);

    // Longest run of consecutive grid points satisfying the gap condition.
    let ok = |i: usize| {
        est.phi_lower[i] + th.gap <= est.phi_upper[i]
            && (!th.dc3_requires_full_upper || est.phi_upper[i] >= one_level)
    };
    let mut best: Option<(usize, usize)> = None;
    let mut run_start = None;
    for i in 0..=g {
        if i < g && ok(i) {
            run_start.get_or_insert(i);
        } else if let Some(s) = run_start.take() {
            let len = i - s;
            if len >= 2 && best.map_or(true, |(bs, be)| be - bs + 1 < len) {
                best = Some((s, i - 1));
            }
        }
    }
    let dc3_interval = best.map(|(s, e)| (est.t_grid[s], est.t_grid[e]));

    ChaosVerdict {
        dc1: zero_witness_t.is_some() && upper_all_one,
        dc2: positive_witness_t.is_some() && upper_all_one,
        dc2_prime: zero_witness_t.is_some() && upper_all_positive,
        dc3: dc3_interval.is_some(),
        li_yorke: None,
        zero_witness_t,
        positive_witness_t,
        min_phi_upper,
        dc3_interval,
        thresholds: th,
        window: est.window,
        horizon: est.horizon,
    }
}

/// Full classification of a pair profile: distribution verdicts plus the
/// proximal/separated flag, on one grid and window.
pub fn classify_profile(
    profile: &PairDistanceProfile,
    t_grid: &[f64],
    window: f64,
    th: ClassifyThresholds,
    eps_prox: f64,
    eps_sep: f64,
) -> Result<(ChaosVerdict, LiYorkeOutcome)> {
    let est = distribution_estimate(profile, t_grid, window)?;
    let ly = li_yorke_test(profile, eps_prox, eps_sep, window)?;
    let mut verdict = classify_pair(&est, th);
    verdict.li_yorke = Some(ly.chaotic);
    Ok((verdict, ly))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::MapSpec;
    use crate::space::Space;

    fn profile(ds: &[f64]) -> PairDistanceProfile {
        PairDistanceProfile::from_parts(ds.to_vec(), (0..ds.len() as u64).collect()).unwrap()
    }

    #[test]
    fn xi_hand_count_and_strictness() {
        let p = profile(&[0.1, 0.5, 0.9]);
        let xi = xi_n(&p, 0.5, 3).unwrap();
        assert_eq!(xi, CountFraction { count: 1, total: 3 }, "strict <, only 0.1 counts");
        assert_eq!(xi_n(&p, 0.0, 3).unwrap().count, 0, "t = 0 counts nothing");
        let all = xi_n(&profile(&[0.0, 0.0]), 1e-9, 2).unwrap();
        assert_eq!(all, CountFraction { count: 2, total: 2 });
    }

    #[test]
    fn xi_delta_complement_exactly() {
        let p = profile(&[0.3, 0.7, 0.7, 0.2, 1.0, 0.0]);
        for n in 1..=p.len() {
            for t in [0.0, 0.2, 0.3, 0.5, 0.7, 1.0, 2.0] {
                let xi = xi_n(&p, t, n).unwrap();
                let de = delta_n(&p, t, n).unwrap();
                assert_eq!(xi.count + de.count, n as u64);
                assert_eq!(xi.complement(), de);
            }
        }
    }

    #[test]
    fn horizon_errors() {
        let p = profile(&[0.5]);
        assert!(matches!(xi_n(&p, 0.1, 2), Err(Error::HorizonExceeded { .. })));
        assert!(xi_n(&p, 0.1, 0).is_err());
    }

    #[test]
    fn constant_profile_estimate_is_step_function() {
        let p = profile(&[0.4; 20]);
        let est = distribution_estimate(&p, &[0.2, 0.4, 0.6], 0.5).unwrap();
        // t <= 0.4: nothing below; t = 0.6: everything.
        assert_eq!(est.phi_lower, vec![0.0, 0.0, 1.0]);
        assert_eq!(est.phi_upper, vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn estimate_window_bounds_and_monotonicity() {
        let p = profile(&[0.9, 0.1, 0.5, 0.3, 0.8, 0.2, 0.6, 0.4]);
        let grid = default_t_grid(1.0);
        let est = distribution_estimate(&p, &grid, 0.5).unwrap();
        assert_eq!(est.window_start, 4);
        for i in 0..grid.len() {
            assert!(est.phi_lower[i] >= 0.0 && est.phi_lower[i] <= est.phi_upper[i]);
            assert!(est.phi_upper[i] <= 1.0);
            if i > 0 {
                assert!(est.phi_lower[i] >= est.phi_lower[i - 1], "lower monotone in t");
                assert!(est.phi_upper[i] >= est.phi_upper[i - 1], "upper monotone in t");
            }
        }
        // Top grid point exceeds the diameter: proximity fraction is 1 there.
        assert_eq!(est.phi_lower[grid.len() - 1], 1.0);
        assert_eq!(est.phi_upper[grid.len() - 1], 1.0);
    }

    #[test]
    fn estimate_matches_brute_force() {
        let p = profile(&[0.15, 0.62, 0.05, 0.33, 0.71, 0.28, 0.44, 0.09, 0.57, 0.81]);
        let grid = [0.1, 0.3, 0.5, 0.7, 1.0];
        let est = distribution_estimate(&p, &grid, 0.7).unwrap();
        let n_total = p.len();
        let start = (((1.0 - 0.7) * n_total as f64).ceil() as usize).max(1);
        for (gi, &t) in grid.iter().enumerate() {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for n in start..=n_total {
                let xi = xi_n(&p, t, n).unwrap().as_f64();
                lo = lo.min(xi);
                hi = hi.max(xi);
            }
            assert_eq!(est.phi_lower[gi], lo, "lower at t={t}");
            assert_eq!(est.phi_upper[gi], hi, "upper at t={t}");
        }
    }

    #[test]
    fn subsampled_profile_matches_parent_entries() {
        let sys = NDSystem::autonomous(Space::UnitInterval, MapSpec::logistic(4.0));
        let full = pair_profile(
            &sys,
            &Point::scalar(0.3),
            &Point::scalar(0.31),
            50,
            &SampleTimes::FromZero,
        )
        .unwrap();
        let idx = [0usize, 3, 7, 12, 30, 49];
        let sub = full.subsample(&idx).unwrap();
        for (k, &i) in idx.iter().enumerate() {
            assert_eq!(sub.distances[k], full.distances[i]);
            assert_eq!(sub.times[k], full.times[i]);
        }
        // Explicit times through pair_profile agree with subsampling.
        let times: Vec<u64> = idx.iter().map(|&i| i as u64).collect();
        let direct = pair_profile(
            &sys,
            &Point::scalar(0.3),
            &Point::scalar(0.31),
            idx.len(),
            &SampleTimes::Explicit(times),
        )
        .unwrap();
        assert_eq!(direct.distances, sub.distances);
    }

    #[test]
    fn identity_system_trivial_estimates() {
        let sys = NDSystem::autonomous(Space::UnitInterval, MapSpec::Identity);
        let p = pair_profile(
            &sys,
            &Point::scalar(0.25),
            &Point::scalar(0.75),
            16,
            &SampleTimes::FromZero,
        )
        .unwrap();
        assert!(p.distances.iter().all(|&d| d == 0.5));
        let est = distribution_estimate(&p, &[0.3, 0.75], 0.5).unwrap();
        assert_eq!((est.phi_lower[0], est.phi_upper[0]), (0.0, 0.0));
        assert_eq!((est.phi_lower[1], est.phi_upper[1]), (1.0, 1.0));
    }

    #[test]
    fn li_yorke_trivial_cases() {
        // Equal starts: separation fails.
        let same = profile(&[0.0; 10]);
        let out = li_yorke_test(&same, 1e-3, 0.5, 0.5).unwrap();
        assert!(!out.chaotic && out.max_distance == 0.0);
        // Identity with distinct starts: proximity fails.
        let apart = profile(&[0.4; 10]);
        let out = li_yorke_test(&apart, 1e-3, 0.2, 0.5).unwrap();
        assert!(!out.chaotic && out.min_distance == 0.4);
        // Oscillating profile passes both.
        let osc = profile(&[0.9, 1e-6, 0.8, 1e-5, 0.7, 1e-6, 0.9, 1e-7]);
        let out = li_yorke_test(&osc, 1e-3, 0.5, 1.0).unwrap();
        assert!(out.chaotic);
        assert_eq!(out.min_distance, 1e-7);
        assert_eq!(out.max_distance, 0.9);
        assert!(li_yorke_test(&osc, 0.5, 0.1, 1.0).is_err(), "prox must be <= sep");
    }

    #[test]
    fn identity_system_classifies_flagless() {
        let p = profile(&[0.4; 32]);
        let grid = default_t_grid(1.0);
        let (verdict, ly) = classify_profile(
            &p,
            &grid,
            DEFAULT_WINDOW,
            ClassifyThresholds::default(),
            DEFAULT_EPS_PROX,
            DEFAULT_EPS_SEP,
        )
        .unwrap();
        assert!(!verdict.dc1 && !verdict.dc2 && !verdict.dc2_prime && !verdict.dc3);
        assert_eq!(verdict.li_yorke, Some(false));
        assert!(!ly.chaotic);
    }

    #[test]
    fn dc1_entails_dc2_and_dc2prime_on_default_grid() {
        // Profile that is near 0 half the time and large half the time, with
        // long runs so the window extremes swing between 0-ish and 1.
        let mut ds = Vec::new();
        for block in 0..8 {
            let v = if block % 2 == 0 { 1e-9 } else { 0.9 };
            ds.extend(std::iter::repeat(v).take(1 << block));
        }
        let p = profile(&ds);
        let grid = default_t_grid(1.0);
        let est = distribution_estimate(&p, &grid, 1.0).unwrap();
        let verdict = classify_pair(&est, ClassifyThresholds::default());
        if verdict.dc1 {
            assert!(verdict.dc2, "top grid point forces a positive lower fraction");
            assert!(verdict.dc2_prime);
        }
        // Regardless of dc1, the top grid point witnesses positivity.
        assert!(verdict.positive_witness_t.is_some());
    }

    #[test]
    fn widening_one_tol_preserves_dc1_dc2() {
        let mut ds = Vec::new();
        for block in 0..10 {
            let v = if block % 2 == 0 { 1e-9 } else { 0.9 };
            ds.extend(std::iter::repeat(v).take(1 << block));
        }
        let p = profile(&ds);
        let grid = default_t_grid(1.0);
        let est = distribution_estimate(&p, &grid, 1.0).unwrap();
        for tol in [0.05, 0.2, 0.5] {
            let th = ClassifyThresholds { one_tol: tol, ..Default::default() };
            let v = classify_pair(&est, th);
            let th2 = ClassifyThresholds { one_tol: tol + 0.2, ..Default::default() };
            let v2 = classify_pair(&est, th2);
            assert!(!v.dc1 || v2.dc1, "raising one_tol kept dc1");
            assert!(!v.dc2 || v2.dc2, "raising one_tol kept dc2");
        }
    }
}
