//! Ready-made systems, points, and set constructions with factorial block
//! structure: the alternating-powers system whose even-time compositions
//! collapse to the identity, a witness pair for distributional chaos under
//! the two-sided shift, sampled scrambled families, nested ball families,
//! and block-scheduled selector points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::maps::MapSpec;
use crate::space::{Point, Space};
use crate::symbolic::{self, SymbolicSeq};
use crate::system::{DecayRule, FamilyKind, Generator, NDSystem, TailRule};
use crate::{Error, Result};

/// n! for small n (n <= 20 fits in u64).
pub fn factorial(n: u32) -> u64 {
    assert!(n <= 20, "factorial overflow");
    (1..=n as u64).product()
}

/// Block index of a position: positions 0 and 1 form block 0; position k >= 2
/// lies in the unique block n >= 1 with n! < k <= (n+1)!.
pub fn block_of(k: u64) -> u32 {
    if k <= 1 {
        return 0;
    }
    let mut n = 1u32;
    while factorial(n + 1) < k {
        n += 1;
    }
    n
}

/// First position of a block: 0 for block 0, n! + 1 otherwise.
pub fn block_start(n: u32) -> u64 {
    if n == 0 {
        0
    } else {
        factorial(n) + 1
    }
}

/// Last position of a block: (n+1)!.
pub fn block_end(n: u32) -> u64 {
    factorial(n + 1)
}

/// Symbol of a block in the alternating pattern: even blocks are 0s
/// (zeros first), odd blocks are 1s.
pub fn block_symbol(n: u32) -> u8 {
    (n % 2) as u8
}

/// Fills positions 0..len-1 with per-block symbols, block by block.
fn fill_blocks(len: u64, bit_of_block: impl Fn(u32) -> u8) -> Vec<u8> {
    let mut out = vec![0u8; len as usize];
    let mut n = 0u32;
    while block_start(n) < len {
        let lo = block_start(n);
        let hi = block_end(n).min(len - 1);
        let bit = bit_of_block(n);
        for slot in &mut out[lo as usize..=hi as usize] {
            *slot = bit;
        }
        n += 1;
    }
    out
}

/// The alternating-powers system over an invertible map F:
/// `f_i = F^(i+1)` at odd times and `f_i = F^(-i)` at even times, so that
/// `f_1^(2n) = id` exactly while `f_1^(2n-1) = F^(2n)`.
pub fn build_counterexample(space: Space, f: MapSpec) -> Result<NDSystem> {
    let sys = NDSystem { space, generator: Generator::CounterexampleAlternating { f } };
    sys.validate()?;
    Ok(sys)
}

/// The default instance: the two-sided full shift as the invertible,
/// distributionally chaotic base map.
pub fn shift_counterexample() -> NDSystem {
    build_counterexample(Space::ShiftTwoSided, MapSpec::shift())
        .expect("the two-sided shift is invertible")
}

/// A witness pair (z, w) for distributional chaos under the two-sided shift:
/// z is all zeros; w is all zeros on the negative side and alternates
/// factorial-length blocks of 0s and 1s (zeros first) on the nonnegative
/// side.
///
/// The returned w truncates the infinite pattern: its core covers every
/// position any in-horizon metric evaluation can reach (horizon plus the
/// metric scan depth), then continues with zeros. Shift offsets up to
/// `horizon` therefore see exactly the untruncated distances.
pub fn dc1_pair_for_shift(horizon: u64) -> Result<(Point, Point)> {
    if horizon < 24 {
        return Err(Error::HorizonTooSmall(format!(
            "witness pair needs at least 4 complete blocks (horizon >= 24), got {horizon}"
        )));
    }
    let core_len = horizon + symbolic::SCAN_CAP as u64 + 2;
    let core = fill_blocks(core_len, block_symbol);
    let w = SymbolicSeq::two_sided(&[0], &core, &[0], 0);
    let z = SymbolicSeq::constant(0, true);
    Ok((Point::Symbolic(z), Point::Symbolic(w)))
}

/// A finite family of one-sided sequences that are constant on each factorial
/// block, pairwise agreeing on at least one complete block and disagreeing on
/// at least one. Stands in for an uncountable scrambled set at finite horizon.
#[derive(Clone, Debug)]
pub struct SampledFamily {
    /// One-sided sequences of the requested horizon (continued past it by
    /// repeating the partial block's bit).
    pub sequences: Vec<SymbolicSeq>,
    /// Per-sequence block bits covering the complete blocks then the partial
    /// one.
    pub block_bits: Vec<Vec<u8>>,
    /// Number of blocks that lie entirely within the horizon.
    pub complete_blocks: u32,
    pub horizon: u64,
}

/// Draws `count` block-constant sequences of length `horizon`, deterministic
/// in `seed`. Every pair of distinct outputs agrees on some complete block
/// and disagrees on some complete block; draws violating that are rejected
/// and redrawn.
///
/// At L complete blocks at most 2^(L-1) sequences can pairwise satisfy the
/// pattern (one per complementation class), so larger requests fail.
pub fn sample_e(count: usize, horizon: u64, seed: u64) -> Result<SampledFamily> {
    if count < 2 {
        return Err(Error::DomainViolation("need at least 2 sequences".into()));
    }
    if horizon == 0 {
        return Err(Error::EmptyInput("sample horizon"));
    }
    // Complete blocks: block n fits iff its last position is < horizon.
    let mut complete = 0u32;
    while block_end(complete) <= horizon - 1 {
        complete += 1;
    }
    if complete < 2 {
        return Err(Error::HorizonTooSmall(format!(
            "horizon {horizon} holds {complete} complete blocks; the agreement/disagreement \
             pattern needs at least 2"
        )));
    }
    if complete < 63 {
        let capacity = 1u64 << (complete - 1);
        if count as u64 > capacity {
            return Err(Error::HorizonTooSmall(format!(
                "{count} sequences over {complete} complete blocks is impossible: beyond \
                 2^{} = {capacity} sequences some pair is equal or complementary on every \
                 complete block",
                complete - 1
            )));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw_len = complete as usize + 1; // complete blocks + the partial one
    let mut chosen: Vec<Vec<u8>> = Vec::with_capacity(count);
    let mut attempts = 0u64;
    while chosen.len() < count {
        attempts += 1;
        if attempts > 1_000_000 {
            return Err(Error::HorizonTooSmall(
                "sampling failed to find a compatible family (capacity too tight)".into(),
            ));
        }
        let bits: Vec<u8> = (0..draw_len).map(|_| rng.gen_range(0..=1u8)).collect();
        let ok = chosen.iter().all(|prev| {
            let agree = prev[..complete as usize]
                .iter()
                .zip(&bits[..complete as usize])
                .any(|(a, b)| a == b);
            let disagree = prev[..complete as usize]
                .iter()
                .zip(&bits[..complete as usize])
                .any(|(a, b)| a != b);
            agree && disagree
        });
        if ok {
            chosen.push(bits);
        }
    }

    let sequences = chosen
        .iter()
        .map(|bits| {
            let core = fill_blocks(horizon, |n| bits[(n as usize).min(draw_len - 1)]);
            SymbolicSeq::one_sided(&core, &[bits[draw_len - 1]])
        })
        .collect();
    Ok(SampledFamily { sequences, block_bits: chosen, complete_blocks: complete, horizon })
}

/// How nested ball radii shrink with the index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadiusDecay {
    /// r_i = r0 / 2^i.
    Halving,
    /// r_i = r0 / (i + 1).
    Harmonic,
}

/// A decreasing family of closed balls around one center; the intersection
/// over all indices is exactly the center.
#[derive(Clone, Debug)]
pub struct NestedBalls {
    pub space: Space,
    pub center: Point,
    pub r0: f64,
    pub decay: RadiusDecay,
}

pub fn nested_balls(
    space: Space,
    center: Point,
    r0: f64,
    decay: RadiusDecay,
) -> Result<NestedBalls> {
    space.validate(&center)?;
    if !(r0 > 0.0) || !r0.is_finite() {
        return Err(Error::DomainViolation(format!("initial radius {r0} must be positive")));
    }
    Ok(NestedBalls { space, center, r0, decay })
}

impl NestedBalls {
    pub fn radius(&self, i: u32) -> f64 {
        match self.decay {
            RadiusDecay::Halving => self.r0 / f64::powi(2.0, i as i32),
            RadiusDecay::Harmonic => self.r0 / (i as f64 + 1.0),
        }
    }

    /// Closed-ball membership at index i: d(p, center) <= r_i.
    pub fn contains(&self, p: &Point, i: u32) -> bool {
        self.space.distance(p, &self.center) <= self.radius(i)
    }
}

/// Assigns a choice bit to every factorial block up to a horizon: positions
/// in block n draw from the 0-family when `selector[n] = 0`, the 1-family
/// otherwise.
#[derive(Clone, Debug)]
pub struct BlockSchedule {
    pub selector: Vec<u8>,
    pub horizon: u64,
}

impl BlockSchedule {
    pub fn new(selector: Vec<u8>, horizon: u64) -> Result<Self> {
        if selector.is_empty() {
            return Err(Error::EmptyInput("block selector"));
        }
        if selector.iter().any(|&b| b > 1) {
            return Err(Error::DomainViolation("selector bits must be 0 or 1".into()));
        }
        let needed = block_of(horizon) + 1;
        if (selector.len() as u32) < needed {
            return Err(Error::HorizonTooSmall(format!(
                "selector covers {} blocks but horizon {horizon} reaches block {}",
                selector.len(),
                needed - 1
            )));
        }
        Ok(BlockSchedule { selector, horizon })
    }

    pub fn constant(bit: u8, horizon: u64) -> Result<Self> {
        let blocks = block_of(horizon) + 1;
        Self::new(vec![bit; blocks as usize], horizon)
    }

    pub fn alternating(horizon: u64) -> Result<Self> {
        let blocks = block_of(horizon) + 1;
        Self::new((0..blocks).map(|n| (n % 2) as u8).collect(), horizon)
    }

    /// The family chosen at position k.
    pub fn choice_at(&self, k: u64) -> u8 {
        self.selector[block_of(k) as usize]
    }
}

/// The one-sided sequence whose symbol at each position is the schedule's
/// choice bit for that position's block (continued past the horizon with the
/// final selector bit).
///
/// Under the autonomous one-sided shift, shifting by k lands near the
/// all-zeros point when block(k) chooses 0 and near all-ones otherwise —
/// except within a bounded window before each block boundary, where the next
/// block's symbols are already visible at small depth and membership in a
/// shrinking ball is impossible for any arrangement of symbols. Constant
/// schedules produce exactly the center's fixed point, with no violations
/// at any shift.
pub fn selector_point(schedule: &BlockSchedule) -> SymbolicSeq {
    let core = fill_blocks(schedule.horizon + 1, |n| {
        let i = (n as usize).min(schedule.selector.len() - 1);
        schedule.selector[i]
    });
    let tail = [*schedule.selector.last().unwrap()];
    SymbolicSeq::one_sided(&core, &tail)
}

/// Membership check of a selector point along its shift orbit.
#[derive(Clone, Debug)]
pub struct MembershipReport {
    /// Shift offsets k in 1..=checked with d(shift^k x, center_k) > r_k.
    pub violations: Vec<u64>,
    pub checked: u64,
}

/// Verifies `shift^k x` against the scheduled ball at every k up to `k_max`:
/// the 0-family ball when the schedule picks 0, the 1-family ball otherwise,
/// both at radius index k.
pub fn verify_selector_membership(
    x: &SymbolicSeq,
    schedule: &BlockSchedule,
    family0: &NestedBalls,
    family1: &NestedBalls,
    k_max: u64,
) -> Result<MembershipReport> {
    if k_max > schedule.horizon {
        return Err(Error::HorizonExceeded {
            requested: k_max as usize,
            available: schedule.horizon as usize,
        });
    }
    let mut violations = Vec::new();
    let mut shifted = x.clone();
    for k in 1..=k_max {
        shifted = shifted.shift_forward();
        let p = Point::Symbolic(shifted.clone());
        let fam = if schedule.choice_at(k) == 0 { family0 } else { family1 };
        if k > u32::MAX as u64 || !fam.contains(&p, k as u32) {
            violations.push(k);
        }
    }
    Ok(MembershipReport { violations, checked: k_max })
}

/// Identity system on any space.
pub fn identity_system(space: Space) -> NDSystem {
    NDSystem::autonomous(space, MapSpec::Identity)
}

/// Interval family with parameter rising harmonically to the full logistic
/// map: param_n = 4 - 1/n.
pub fn logistic_convergent_system() -> NDSystem {
    NDSystem {
        space: Space::UnitInterval,
        generator: Generator::ConvergentFamily {
            family: FamilyKind::Logistic,
            limit: 4.0,
            offset: 1.0,
            decay: DecayRule::Harmonic,
        },
    }
}

/// The autonomous full shift, one- or two-sided.
pub fn shift_system(two_sided: bool) -> NDSystem {
    let space = if two_sided { Space::ShiftTwoSided } else { Space::ShiftOneSided };
    NDSystem::autonomous(space, MapSpec::shift())
}

/// Interval system whose n-th map is `x -> x^(n+1)`, up to degree `len + 1`,
/// repeating the last map afterwards. Within the escalation window the maps
/// converge pointwise on [0, 1) while points near 1 lag behind, so the sup
/// gap between f_n and any candidate limit stays order-1: the standard
/// pointwise-but-not-uniform picture at finite resolution.
pub fn monomial_escalation_system(len: u32) -> NDSystem {
    assert!(len >= 1, "need at least one escalation step");
    NDSystem {
        space: Space::UnitInterval,
        generator: Generator::ExplicitList {
            maps: (1..=len).map(|d| MapSpec::Monomial { degree: d + 1 }).collect(),
            tail: TailRule::RepeatLast,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, ToPrimitive};

    #[test]
    fn block_arithmetic() {
        assert_eq!(block_of(0), 0);
        assert_eq!(block_of(1), 0);
        assert_eq!(block_of(2), 1);
        assert_eq!(block_of(3), 2);
        assert_eq!(block_of(6), 2);
        assert_eq!(block_of(7), 3);
        assert_eq!(block_of(24), 3);
        assert_eq!(block_of(25), 4);
        assert_eq!(block_of(120), 4);
        assert_eq!(block_of(5040), 6);
        assert_eq!(block_of(5041), 7);
        for n in 0..8 {
            assert_eq!(block_of(block_start(n)), n);
            assert_eq!(block_of(block_end(n)), n);
            if n > 0 {
                assert_eq!(block_end(n - 1) + 1, block_start(n), "blocks tile the line");
            }
        }
    }

    /// Exact initial distance of the witness pair: the 1-positions of w are
    /// blocks 1, 3, 5 (2^-3, 2^-7 - 2^-25, 2^-121 - 2^-721) plus the part of
    /// block 7 the truncated core retains: positions 5041..=6141 under a
    /// horizon of 5040 with scan padding 1102.
    #[test]
    fn witness_pair_initial_distance_oracle() {
        let (z, w) = dc1_pair_for_shift(5040).unwrap();
        let exact = symbolic::distance_exact(z.as_symbolic().unwrap(), w.as_symbolic().unwrap());
        let two = BigInt::from(2);
        let pw = |e: u32| BigRational::new(BigInt::one(), two.pow(e));
        let expected =
            pw(3) + (pw(7) - pw(25)) + (pw(121) - pw(721)) + (pw(5041) - pw(6142));
        assert_eq!(exact, expected, "geometric-series oracle");
        let d0 = Space::ShiftTwoSided.distance(&z, &w);
        let approx = expected.to_f64().unwrap();
        assert!((d0 - approx).abs() < 1e-15, "double {d0} vs exact {approx}");
        assert!((d0 - 0.1328).abs() < 1e-4);
    }

    #[test]
    fn witness_pair_block_regime_distances() {
        let (z, w) = dc1_pair_for_shift(5040).unwrap();
        let w = w.as_symbolic().unwrap();
        let z = z.as_symbolic().unwrap();
        // Shift deep into the zeros block 4 (positions 25..120): both the
        // ones ahead (>= 121) and behind (<= 24) are far, so d is tiny.
        let deep = w.shift_by(70).unwrap();
        let d = symbolic::distance(&deep, z);
        assert!(d > 0.0 && d < 1e-10, "deep zeros-block distance {d}");
        // Inside a ones block the origin symbol differs: d >= 1/2 exactly.
        for k in [10u64, 15, 200, 400] {
            let inside = w.shift_by(k as i64).unwrap();
            let d = symbolic::distance(&inside, z);
            assert!(d >= 0.5, "ones-block distance {d} at shift {k}");
        }
    }

    #[test]
    fn counterexample_even_time_identity_and_odd_powers() {
        let sys = shift_counterexample();
        let (_, w) = dc1_pair_for_shift(720).unwrap();
        for n in [1u64, 2, 5, 25] {
            assert_eq!(sys.apply_block(1, 2 * n, &w).unwrap(), w, "f_1^{} = id", 2 * n);
        }
        for n in [1u64, 3, 10, 20] {
            let via_sys = sys.apply_block(1, 2 * n - 1, &w).unwrap();
            let direct = MapSpec::power(MapSpec::shift(), 2 * n as i64).apply(&w).unwrap();
            assert_eq!(via_sys, direct, "f_1^(2n-1) = F^(2n) at n={n}");
        }
    }

    #[test]
    fn sampled_family_pattern_and_determinism() {
        let fam = sample_e(8, 25, 42).unwrap();
        assert_eq!(fam.complete_blocks, 4, "horizon 25 completes blocks 0..3");
        assert_eq!(fam.sequences.len(), 8);
        let l = fam.complete_blocks as usize;
        for i in 0..fam.block_bits.len() {
            for j in 0..i {
                let a = &fam.block_bits[i][..l];
                let b = &fam.block_bits[j][..l];
                assert!(a.iter().zip(b).any(|(x, y)| x == y), "pair {i},{j} never agrees");
                assert!(a.iter().zip(b).any(|(x, y)| x != y), "pair {i},{j} never disagrees");
            }
        }
        let again = sample_e(8, 25, 42).unwrap();
        assert_eq!(fam.block_bits, again.block_bits, "same seed, same family");
        let other = sample_e(8, 25, 43).unwrap();
        assert_ne!(fam.block_bits, other.block_bits, "different seed differs");
    }

    #[test]
    fn sampled_family_capacity_limits() {
        // Horizon 25 completes 4 blocks: capacity 2^3 = 8.
        assert!(sample_e(9, 25, 1).is_err(), "9 > 2^3 must fail");
        assert!(sample_e(2, 2, 1).is_err(), "fewer than 2 complete blocks");
        // 33 sequences need 7 blocks (capacity 64): horizon must reach 5041.
        assert!(matches!(sample_e(33, 721, 1), Err(Error::HorizonTooSmall(_))));
        let ok = sample_e(33, 5041, 7).unwrap();
        assert_eq!(ok.complete_blocks, 7);
        assert_eq!(ok.sequences.len(), 33);
    }

    #[test]
    fn sequences_realize_their_block_bits() {
        let fam = sample_e(4, 121, 9).unwrap();
        for (seq, bits) in fam.sequences.iter().zip(&fam.block_bits) {
            for pos in [0u64, 1, 2, 3, 6, 7, 24, 25, 120] {
                let b = block_of(pos) as usize;
                assert_eq!(seq.symbol_at(pos as i64), bits[b.min(bits.len() - 1)]);
            }
        }
    }

    #[test]
    fn nested_ball_membership() {
        let balls = nested_balls(
            Space::UnitInterval,
            Point::scalar(0.5),
            0.8,
            RadiusDecay::Halving,
        )
        .unwrap();
        assert!(balls.contains(&Point::scalar(0.5), 30), "center in every ball");
        // Point at non-dyadic distance 0.3: the first index without
        // membership is ceil(log2(r0/eps)) = ceil(log2(0.8/0.3)) = 2.
        let p = Point::scalar(0.8);
        let dist: f64 = 0.30000000000000004; // |0.8 - 0.5| in doubles
        assert_eq!(Space::UnitInterval.distance(&p, &Point::scalar(0.5)), dist);
        let predicted = (0.8f64 / dist).log2().ceil() as u32;
        assert_eq!(predicted, 2);
        for i in 0..predicted {
            assert!(balls.contains(&p, i), "member at {i}");
        }
        assert!(!balls.contains(&p, predicted), "first failure at {predicted}");
        // Boundary point: closed balls include their boundary.
        let b = nested_balls(Space::UnitInterval, Point::scalar(0.5), 0.25, RadiusDecay::Halving)
            .unwrap();
        assert!(b.contains(&Point::scalar(0.75), 0));
        assert!(!b.contains(&Point::scalar(0.75), 1));
        // Monotone: membership at i+1 implies membership at i.
        for i in 0..10 {
            if b.contains(&p, i + 1) {
                assert!(b.contains(&p, i));
            }
        }
    }

    #[test]
    fn constant_selector_is_the_fixed_point_with_no_violations() {
        let horizon = 720;
        let sched = BlockSchedule::constant(1, horizon).unwrap();
        let x = selector_point(&sched);
        assert_eq!(x, SymbolicSeq::constant(1, false), "constant schedule collapses");
        let zeros = nested_balls(
            Space::ShiftOneSided,
            Point::Symbolic(SymbolicSeq::constant(0, false)),
            0.25,
            RadiusDecay::Harmonic,
        )
        .unwrap();
        let ones = nested_balls(
            Space::ShiftOneSided,
            Point::Symbolic(SymbolicSeq::constant(1, false)),
            0.25,
            RadiusDecay::Harmonic,
        )
        .unwrap();
        let report = verify_selector_membership(&x, &sched, &zeros, &ones, horizon).unwrap();
        assert!(report.violations.is_empty(), "exact fixed point never violates");
        assert_eq!(report.checked, horizon);
    }

    #[test]
    fn alternating_selector_violations_confined_to_boundaries() {
        let horizon = 720;
        let sched = BlockSchedule::alternating(horizon).unwrap();
        let x = selector_point(&sched);
        let zeros = nested_balls(
            Space::ShiftOneSided,
            Point::Symbolic(SymbolicSeq::constant(0, false)),
            0.25,
            RadiusDecay::Harmonic,
        )
        .unwrap();
        let ones = nested_balls(
            Space::ShiftOneSided,
            Point::Symbolic(SymbolicSeq::constant(1, false)),
            0.25,
            RadiusDecay::Harmonic,
        )
        .unwrap();
        let report = verify_selector_membership(&x, &sched, &zeros, &ones, horizon).unwrap();
        assert!(!report.violations.is_empty(), "switching schedules must violate near edges");
        for &k in &report.violations {
            let n = block_of(k);
            let to_edge = block_end(n) + 1 - k;
            assert!(
                to_edge <= 16,
                "violation at k={k} is {to_edge} before the boundary (expected <= 16)"
            );
        }
        // Distinct schedules give distinct points.
        let other = selector_point(&BlockSchedule::constant(0, horizon).unwrap());
        assert_ne!(x, other);
    }
}
