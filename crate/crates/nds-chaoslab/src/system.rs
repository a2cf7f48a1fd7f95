//! Non-autonomous discrete systems: a space plus a time-indexed family of
//! self-maps `f_1, f_2, ...`. The time-n action from time i is the block
//! composition `f_i^n = f_{i+n-1} ∘ ... ∘ f_i`, and an orbit is
//! `x_n = f_1^n(x_0)`.

use crate::maps::MapSpec;
use crate::space::{Point, Space};
use crate::{Error, Result};

/// What to do past the end of an explicit map list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailRule {
    /// Repeat the final map forever.
    RepeatLast,
    /// Cycle through the whole list forever.
    Cycle,
}

/// One-parameter interval families used by [`Generator::ConvergentFamily`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Logistic,
    Tent,
}

/// How fast a convergent family's parameter approaches its limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DecayRule {
    /// `param_n = limit - offset / n`.
    Harmonic,
    /// `param_n = limit - offset * rho^n`.
    Geometric(f64),
    /// `param_n = limit - offset` for every n.
    Constant,
}

impl DecayRule {
    fn factor(self, n: u64) -> f64 {
        match self {
            DecayRule::Harmonic => 1.0 / n as f64,
            DecayRule::Geometric(rho) => rho.powi(n as i32),
            DecayRule::Constant => 1.0,
        }
    }
}

/// Rule producing the map family `f_1, f_2, ...`.
#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    /// Every `f_i` is the same map (the autonomous case).
    Autonomous(MapSpec),
    /// Finitely many maps plus a tail rule.
    ExplicitList { maps: Vec<MapSpec>, tail: TailRule },
    /// An interval family with time-varying parameter converging to a limit.
    ConvergentFamily {
        family: FamilyKind,
        limit: f64,
        offset: f64,
        decay: DecayRule,
    },
    /// Alternating signed powers of one invertible map F:
    /// `f_i = F^(i+1)` for odd i, `f_i = F^(-i)` for even i. Every even-time
    /// block composition from time 1 collapses to the identity.
    CounterexampleAlternating { f: MapSpec },
    /// The k-th iterate system: its n-th map is the base block
    /// `f_{k(n-1)+1}^k`.
    Iterate { base: Box<NDSystem>, k: u64 },
}

/// A non-autonomous system on one of the supported spaces.
#[derive(Clone, Debug, PartialEq)]
pub struct NDSystem {
    pub space: Space,
    pub generator: Generator,
}

impl NDSystem {
    pub fn autonomous(space: Space, map: MapSpec) -> Self {
        NDSystem { space, generator: Generator::Autonomous(map) }
    }

    /// Wraps this system as its k-th iterate system.
    pub fn iterate(self, k: u64) -> Self {
        let space = self.space;
        NDSystem { space, generator: Generator::Iterate { base: Box::new(self), k } }
    }

    /// Parameter of a convergent family at time n (1-based).
    pub fn family_param_at(&self, n: u64) -> Option<f64> {
        match &self.generator {
            Generator::ConvergentFamily { limit, offset, decay, .. } => {
                Some(limit - offset * decay.factor(n))
            }
            _ => None,
        }
    }

    /// The map acting at time `i` (1-based): `x_i = f_i(x_{i-1})`.
    pub fn map_at(&self, i: u64) -> Result<MapSpec> {
        if i == 0 {
            return Err(Error::DomainViolation("time indices are 1-based".into()));
        }
        Ok(match &self.generator {
            Generator::Autonomous(m) => m.clone(),
            Generator::ExplicitList { maps, tail } => {
                if maps.is_empty() {
                    return Err(Error::EmptyInput("explicit map list"));
                }
                let idx = (i - 1) as usize;
                if idx < maps.len() {
                    maps[idx].clone()
                } else {
                    match tail {
                        TailRule::RepeatLast => maps.last().unwrap().clone(),
                        TailRule::Cycle => maps[idx % maps.len()].clone(),
                    }
                }
            }
            Generator::ConvergentFamily { family, .. } => {
                let p = self.family_param_at(i).unwrap();
                match family {
                    FamilyKind::Logistic => MapSpec::logistic(p),
                    FamilyKind::Tent => MapSpec::tent(p),
                }
            }
            Generator::CounterexampleAlternating { f } => {
                let exp = if i % 2 == 1 { i as i64 + 1 } else { -(i as i64) };
                MapSpec::power(f.clone(), exp)
            }
            Generator::Iterate { base, k } => {
                // Maps f_{k(n-1)+1} .. f_{kn}, listed leftmost-last-applied.
                let lo = k * (i - 1) + 1;
                let mut block = Vec::with_capacity(*k as usize);
                for j in (lo..lo + k).rev() {
                    block.push(base.map_at(j)?);
                }
                MapSpec::Composite(block)
            }
        })
    }

    /// Applies the block composition `f_i^n` to a point, stepping one map at
    /// a time (no intermediate composite is built).
    pub fn apply_block(&self, i: u64, n: u64, x: &Point) -> Result<Point> {
        let mut p = x.clone();
        for j in i..i + n {
            p = self.map_at(j)?.apply(&p)?;
        }
        Ok(p)
    }

    /// The orbit `[x_0, x_1, ..., x_n]` (n + 1 points).
    pub fn orbit(&self, x0: &Point, n: u64) -> Result<Vec<Point>> {
        self.space.validate(x0)?;
        let mut out = Vec::with_capacity((n + 1) as usize);
        out.push(x0.clone());
        let mut p = x0.clone();
        for j in 1..=n {
            p = self.map_at(j)?.apply(&p)?;
            out.push(p.clone());
        }
        Ok(out)
    }

    /// Whether the family `{f_i}` contains only finitely many distinct maps.
    pub fn finitely_generated(&self) -> bool {
        match &self.generator {
            Generator::Autonomous(_) | Generator::ExplicitList { .. } => true,
            Generator::ConvergentFamily { decay, offset, .. } => {
                matches!(decay, DecayRule::Constant) || *offset == 0.0
            }
            Generator::CounterexampleAlternating { .. } => false,
            Generator::Iterate { base, .. } => base.finitely_generated(),
        }
    }

    /// Validates the generator against the space, including parameter ranges
    /// at their extremes.
    pub fn validate(&self) -> Result<()> {
        match &self.generator {
            Generator::Autonomous(m) => m.validate_for(self.space),
            Generator::ExplicitList { maps, .. } => {
                if maps.is_empty() {
                    return Err(Error::EmptyInput("explicit map list"));
                }
                maps.iter().try_for_each(|m| m.validate_for(self.space))
            }
            Generator::ConvergentFamily { family, limit, offset, decay } => {
                if self.space != Space::UnitInterval {
                    return Err(Error::UnsupportedSystem(
                        "convergent families live on the unit interval".into(),
                    ));
                }
                if let DecayRule::Geometric(rho) = decay {
                    if !(0.0..=1.0).contains(rho) {
                        return Err(Error::DomainViolation(format!(
                            "geometric decay ratio {rho} outside [0, 1]"
                        )));
                    }
                }
                // The parameter path is monotone from param_1 toward the
                // limit, so both extremes being valid covers every n.
                let first = limit - offset * decay.factor(1);
                for p in [first, *limit] {
                    let m = match family {
                        FamilyKind::Logistic => MapSpec::logistic(p),
                        FamilyKind::Tent => MapSpec::tent(p),
                    };
                    m.validate_for(self.space)?;
                }
                Ok(())
            }
            Generator::CounterexampleAlternating { f } => {
                f.validate_for(self.space)?;
                if !f.is_invertible(self.space) {
                    return Err(Error::NonInvertibleMap(format!(
                        "alternating construction needs an invertible map, got {f}"
                    )));
                }
                Ok(())
            }
            Generator::Iterate { base, k } => {
                if *k == 0 {
                    return Err(Error::DomainViolation("iterate order k must be >= 1".into()));
                }
                if base.space != self.space {
                    return Err(Error::UnsupportedSystem(
                        "iterate system must share the base space".into(),
                    ));
                }
                base.validate()
            }
        }
    }
}

/// Max over a finite grid of d(f_n(x), limit(x)): a finite stand-in for the
/// uniform distance between the time-n map and a limit map.
pub fn uniform_convergence_gap(
    sys: &NDSystem,
    limit: &MapSpec,
    n: u64,
    grid: &[Point],
) -> Result<f64> {
    if grid.is_empty() {
        return Err(Error::EmptyInput("convergence probe grid"));
    }
    let f_n = sys.map_at(n)?;
    let mut worst = 0.0f64;
    for p in grid {
        sys.space.validate(p)?;
        let a = f_n.apply(p)?;
        let b = limit.apply(p)?;
        worst = worst.max(sys.space.distance(&a, &b));
    }
    Ok(worst)
}

/// Pigeonhole extraction of a residue class from an increasing sequence of
/// positive integers: picks the residue r mod n with the most entries
/// (smallest r on ties) and returns the entries in that class together with
/// their quotients q_j = (entry - r) / n.
pub fn residue_subsequence(seq: &[u64], n: u64) -> Result<(u64, Vec<u64>, Vec<u64>)> {
    if seq.is_empty() {
        return Err(Error::EmptyInput("residue extraction input"));
    }
    if n == 0 {
        return Err(Error::DomainViolation("modulus must be positive".into()));
    }
    if !seq.windows(2).all(|w| w[0] < w[1]) || seq[0] == 0 {
        return Err(Error::DomainViolation(
            "sequence must be strictly increasing and positive".into(),
        ));
    }
    let mut tally = vec![0usize; n as usize];
    for &e in seq {
        tally[(e % n) as usize] += 1;
    }
    let r = (0..n).max_by_key(|&r| (tally[r as usize], std::cmp::Reverse(r))).unwrap();
    let class: Vec<u64> = seq.iter().copied().filter(|e| e % n == r).collect();
    let quotients: Vec<u64> = class.iter().map(|e| (e - r) / n).collect();
    Ok((r, class, quotients))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::SymbolicSeq;

    fn tent_then_doubling() -> NDSystem {
        NDSystem {
            space: Space::UnitInterval,
            generator: Generator::ExplicitList {
                maps: vec![MapSpec::tent(2.0), MapSpec::Doubling],
                tail: TailRule::Cycle,
            },
        }
    }

    #[test]
    fn explicit_list_tail_rules() {
        let sys = tent_then_doubling();
        assert_eq!(sys.map_at(1).unwrap(), MapSpec::tent(2.0));
        assert_eq!(sys.map_at(2).unwrap(), MapSpec::Doubling);
        assert_eq!(sys.map_at(3).unwrap(), MapSpec::tent(2.0));
        assert_eq!(sys.map_at(10).unwrap(), MapSpec::Doubling);

        let rep = NDSystem {
            space: Space::UnitInterval,
            generator: Generator::ExplicitList {
                maps: vec![MapSpec::tent(2.0), MapSpec::Doubling],
                tail: TailRule::RepeatLast,
            },
        };
        assert_eq!(rep.map_at(7).unwrap(), MapSpec::Doubling);
    }

    #[test]
    fn block_composition_cocycle() {
        // f_i^(m+n) = f_{i+m}^n ∘ f_i^m on a heterogeneous list.
        let sys = NDSystem {
            space: Space::UnitInterval,
            generator: Generator::ExplicitList {
                maps: vec![
                    MapSpec::logistic(3.7),
                    MapSpec::tent(1.9),
                    MapSpec::Doubling,
                    MapSpec::logistic(3.2),
                ],
                tail: TailRule::Cycle,
            },
        };
        let x = Point::scalar(0.3141);
        for i in 1..4 {
            for m in 0..5 {
                for n in 0..5 {
                    let whole = sys.apply_block(i, m + n, &x).unwrap();
                    let first = sys.apply_block(i, m, &x).unwrap();
                    let split = sys.apply_block(i + m, n, &first).unwrap();
                    assert_eq!(whole, split, "cocycle failed at i={i} m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn convergent_family_parameters() {
        let sys = NDSystem {
            space: Space::UnitInterval,
            generator: Generator::ConvergentFamily {
                family: FamilyKind::Logistic,
                limit: 4.0,
                offset: 1.0,
                decay: DecayRule::Harmonic,
            },
        };
        sys.validate().unwrap();
        assert_eq!(sys.family_param_at(1).unwrap(), 3.0);
        assert_eq!(sys.family_param_at(2).unwrap(), 3.5);
        assert_eq!(sys.family_param_at(4).unwrap(), 3.75);
        assert!(!sys.finitely_generated());
        assert_eq!(sys.map_at(2).unwrap(), MapSpec::logistic(3.5));
    }

    #[test]
    fn alternating_construction_collapses_at_even_times() {
        let sys = NDSystem {
            space: Space::ShiftTwoSided,
            generator: Generator::CounterexampleAlternating { f: MapSpec::shift() },
        };
        sys.validate().unwrap();
        let x = Point::Symbolic(SymbolicSeq::two_sided(&[0], &[1, 0, 1, 1, 0], &[0], -1));
        for n in [2u64, 4, 6, 10] {
            assert_eq!(sys.apply_block(1, n, &x).unwrap(), x, "f_1^{n} must be the identity");
        }
        // Odd times are the (n+1)-th forward power: f_1^1 = F^2.
        let odd = sys.apply_block(1, 1, &x).unwrap();
        let expected = MapSpec::power(MapSpec::shift(), 2).apply(&x).unwrap();
        assert_eq!(odd, expected);
        // f_1^3 = f_3 f_2 f_1 = F^4 F^-2 F^2 = F^4.
        let odd3 = sys.apply_block(1, 3, &x).unwrap();
        let expected3 = MapSpec::power(MapSpec::shift(), 4).apply(&x).unwrap();
        assert_eq!(odd3, expected3);
    }

    #[test]
    fn iterate_system_matches_base_blocks() {
        let sys = tent_then_doubling();
        for k in 1..=4u64 {
            let it = sys.clone().iterate(k);
            let x = Point::scalar(0.2718);
            for n in 1..=6u64 {
                let via_iterate = it.apply_block(1, n, &x).unwrap();
                let via_base = sys.apply_block(1, k * n, &x).unwrap();
                assert_eq!(via_iterate, via_base, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn iterate_of_alternating_is_identity_family() {
        let sys = NDSystem {
            space: Space::ShiftTwoSided,
            generator: Generator::CounterexampleAlternating { f: MapSpec::shift() },
        };
        let it = sys.iterate(2);
        let x = Point::Symbolic(SymbolicSeq::two_sided(&[1], &[0, 0, 1], &[0, 1], 2));
        for n in 1..=8u64 {
            assert_eq!(it.apply_block(1, n, &x).unwrap(), x);
        }
    }

    #[test]
    fn orbit_validates_start_point() {
        let sys = tent_then_doubling();
        assert!(sys.orbit(&Point::scalar(1.25), 3).is_err());
        let orbit = sys.orbit(&Point::scalar(0.375), 4).unwrap();
        // tent: .375 -> .75; doubling: -> .5; tent: -> 1; doubling: -> 1.
        let want = [0.375, 0.75, 0.5, 1.0, 1.0];
        for (p, w) in orbit.iter().zip(want) {
            assert_eq!(p.as_scalar().unwrap(), w);
        }
    }

    #[test]
    fn residue_extraction_hand_cases() {
        let (r, sub, q) = residue_subsequence(&[3, 6, 9, 12], 3).unwrap();
        assert_eq!((r, sub, q), (0, vec![3, 6, 9, 12], vec![1, 2, 3, 4]));

        let (r, sub, q) = residue_subsequence(&[1, 2, 4, 8, 16], 2).unwrap();
        assert_eq!((r, sub.clone(), q), (0, vec![2, 4, 8, 16], vec![1, 2, 4, 8]));
        assert!(sub.iter().all(|e| e % 2 == 0));

        let (r, sub, q) = residue_subsequence(&[5], 3).unwrap();
        assert_eq!((r, sub, q), (2, vec![5], vec![1]));

        assert!(residue_subsequence(&[], 3).is_err());
        assert!(residue_subsequence(&[2, 2], 3).is_err());
    }

    #[test]
    fn convergence_gap_trivial_and_decaying() {
        let auto = NDSystem::autonomous(Space::UnitInterval, MapSpec::logistic(4.0));
        let grid: Vec<Point> = (0..=20).map(|i| Point::scalar(i as f64 / 20.0)).collect();
        assert_eq!(
            uniform_convergence_gap(&auto, &MapSpec::logistic(4.0), 7, &grid).unwrap(),
            0.0
        );

        let fam = NDSystem {
            space: Space::UnitInterval,
            generator: Generator::ConvergentFamily {
                family: FamilyKind::Logistic,
                limit: 4.0,
                offset: 1.0,
                decay: DecayRule::Harmonic,
            },
        };
        // |f_n(x) - f(x)| = (1/n) x(1-x) <= 1/(4n).
        let g1000 = uniform_convergence_gap(&fam, &MapSpec::logistic(4.0), 1000, &grid).unwrap();
        assert!(g1000 > 0.0 && g1000 <= 0.25 / 1000.0 + 1e-15, "gap {g1000}");
        let g10 = uniform_convergence_gap(&fam, &MapSpec::logistic(4.0), 10, &grid).unwrap();
        assert!(g10 > g1000, "gap shrinks with n");
    }

    #[test]
    fn non_invertible_alternation_is_rejected() {
        let sys = NDSystem {
            space: Space::UnitInterval,
            generator: Generator::CounterexampleAlternating { f: MapSpec::Doubling },
        };
        assert!(matches!(sys.validate(), Err(Error::NonInvertibleMap(_))));
    }
}
