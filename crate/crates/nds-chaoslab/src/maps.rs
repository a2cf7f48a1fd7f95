//! Self-maps of the supported spaces, closed under composition, powers, and
//! (where defined) inversion.

use std::fmt;

use crate::space::{Point, Space};
use crate::{Error, Result};

/// A self-map of one of the spaces.
#[derive(Clone, Debug, PartialEq)]
pub enum MapSpec {
    Identity,
    /// `x -> mu * x * (1 - x)` on the unit interval; `mu` in [0, 4].
    Logistic { mu: f64 },
    /// `x -> slope * min(x, 1 - x)`; `slope` in [0, 2].
    Tent { slope: f64 },
    /// `x -> 2x mod 1`, with the endpoint convention that 1 maps to 1.
    Doubling,
    /// `x -> x^degree` on the unit interval. For degree >= 2 this contracts
    /// toward 0 at an x-dependent rate, so families of rising degree converge
    /// pointwise but not uniformly.
    Monomial { degree: u32 },
    /// The shift on sequence spaces. Backward is defined only two-sided.
    Shift { backward: bool },
    /// Signed iteration power. Negative exponents require an invertible base.
    Power { base: Box<MapSpec>, exp: i64 },
    /// Composition; the list reads left to right as `g_k ∘ ... ∘ g_1`, so the
    /// LAST entry is applied first.
    Composite(Vec<MapSpec>),
}

impl MapSpec {
    pub fn logistic(mu: f64) -> Self {
        MapSpec::Logistic { mu }
    }

    pub fn tent(slope: f64) -> Self {
        MapSpec::Tent { slope }
    }

    pub fn shift() -> Self {
        MapSpec::Shift { backward: false }
    }

    pub fn shift_back() -> Self {
        MapSpec::Shift { backward: true }
    }

    pub fn power(base: MapSpec, exp: i64) -> Self {
        MapSpec::Power { base: Box::new(base), exp }
    }

    /// Checks parameters and map/space compatibility.
    pub fn validate_for(&self, space: Space) -> Result<()> {
        match self {
            MapSpec::Identity => Ok(()),
            MapSpec::Logistic { mu } => {
                if space != Space::UnitInterval {
                    return Err(Error::UnsupportedSystem(
                        "logistic map needs the unit interval".into(),
                    ));
                }
                if !(0.0..=4.0).contains(mu) || !mu.is_finite() {
                    return Err(Error::DomainViolation(format!(
                        "logistic parameter {mu} outside [0, 4]"
                    )));
                }
                Ok(())
            }
            MapSpec::Tent { slope } => {
                if space != Space::UnitInterval {
                    return Err(Error::UnsupportedSystem(
                        "tent map needs the unit interval".into(),
                    ));
                }
                if !(0.0..=2.0).contains(slope) || !slope.is_finite() {
                    return Err(Error::DomainViolation(format!(
                        "tent slope {slope} outside [0, 2]"
                    )));
                }
                Ok(())
            }
            MapSpec::Doubling => {
                if space != Space::UnitInterval {
                    return Err(Error::UnsupportedSystem(
                        "doubling map needs the unit interval".into(),
                    ));
                }
                Ok(())
            }
            MapSpec::Monomial { degree } => {
                if space != Space::UnitInterval {
                    return Err(Error::UnsupportedSystem(
                        "monomial map needs the unit interval".into(),
                    ));
                }
                if *degree == 0 {
                    return Err(Error::DomainViolation(
                        "monomial degree must be at least 1".into(),
                    ));
                }
                Ok(())
            }
            MapSpec::Shift { backward } => {
                if !space.is_symbolic() {
                    return Err(Error::UnsupportedSystem(
                        "shift map needs a sequence space".into(),
                    ));
                }
                if *backward && space != Space::ShiftTwoSided {
                    return Err(Error::NonInvertibleMap(
                        "backward shift is undefined on the one-sided space".into(),
                    ));
                }
                Ok(())
            }
            MapSpec::Power { base, exp } => {
                base.validate_for(space)?;
                if *exp < 0 && !base.is_invertible(space) {
                    return Err(Error::NonInvertibleMap(format!(
                        "negative power of non-invertible map {base}"
                    )));
                }
                Ok(())
            }
            MapSpec::Composite(maps) => {
                if maps.is_empty() {
                    return Err(Error::EmptyInput("composite of no maps"));
                }
                maps.iter().try_for_each(|m| m.validate_for(space))
            }
        }
    }

    /// Whether the map has a two-sided inverse on `space`.
    pub fn is_invertible(&self, space: Space) -> bool {
        match self {
            MapSpec::Identity => true,
            MapSpec::Logistic { .. } | MapSpec::Tent { .. } | MapSpec::Doubling => false,
            MapSpec::Monomial { degree } => *degree == 1,
            MapSpec::Shift { .. } => space == Space::ShiftTwoSided,
            MapSpec::Power { base, exp } => *exp == 0 || base.is_invertible(space),
            MapSpec::Composite(maps) => maps.iter().all(|m| m.is_invertible(space)),
        }
    }

    /// The inverse map, when one exists.
    pub fn inverse(&self, space: Space) -> Result<MapSpec> {
        if !self.is_invertible(space) {
            return Err(Error::NonInvertibleMap(format!("{self} has no inverse here")));
        }
        Ok(match self {
            MapSpec::Identity => MapSpec::Identity,
            // Only degree 1 passes is_invertible, and x^1 is the identity.
            MapSpec::Monomial { .. } => MapSpec::Identity,
            MapSpec::Shift { backward } => MapSpec::Shift { backward: !backward },
            MapSpec::Power { base, exp } => MapSpec::Power { base: base.clone(), exp: -exp },
            MapSpec::Composite(maps) => {
                let mut inv: Vec<MapSpec> = Vec::with_capacity(maps.len());
                for m in maps.iter().rev() {
                    inv.push(m.inverse(space)?);
                }
                MapSpec::Composite(inv)
            }
            _ => unreachable!("is_invertible admitted a rigid map"),
        })
    }

    /// Net displacement when the map acts purely by shifting, allowing O(1)
    /// application of arbitrary shift powers. `None` when the map involves
    /// anything besides shifts and the identity.
    fn shift_net(&self) -> Option<i64> {
        match self {
            MapSpec::Identity => Some(0),
            MapSpec::Shift { backward } => Some(if *backward { -1 } else { 1 }),
            MapSpec::Power { base, exp } => base.shift_net().map(|n| n.checked_mul(*exp).unwrap()),
            MapSpec::Composite(maps) => {
                let mut total = 0i64;
                for m in maps {
                    total = total.checked_add(m.shift_net()?).unwrap();
                }
                Some(total)
            }
            _ => None,
        }
    }

    /// Applies the map to a point. The point must belong to a space the map
    /// is valid for.
    pub fn apply(&self, p: &Point) -> Result<Point> {
        if let Point::Symbolic(s) = p {
            if let Some(net) = self.shift_net() {
                return s
                    .shift_by(net)
                    .map(Point::Symbolic)
                    .ok_or_else(|| {
                        Error::NonInvertibleMap(format!(
                            "net backward shift by {} on a one-sided sequence",
                            -net
                        ))
                    });
            }
        }
        match self {
            MapSpec::Identity => Ok(p.clone()),
            MapSpec::Logistic { mu } => {
                let x = p.as_scalar()?;
                Ok(Point::scalar((mu * x * (1.0 - x)).clamp(0.0, 1.0)))
            }
            MapSpec::Tent { slope } => {
                let x = p.as_scalar()?;
                Ok(Point::scalar((slope * x.min(1.0 - x)).clamp(0.0, 1.0)))
            }
            MapSpec::Doubling => {
                let x = p.as_scalar()?;
                Ok(Point::scalar(if x < 0.5 { 2.0 * x } else { 2.0 * x - 1.0 }))
            }
            MapSpec::Monomial { degree } => {
                let x = p.as_scalar()?;
                Ok(Point::scalar(x.powi(*degree as i32).clamp(0.0, 1.0)))
            }
            // Symbolic points take the net-offset path above, so reaching
            // here means the point kind is wrong.
            MapSpec::Shift { .. } => Err(Error::DomainViolation(
                "shift applied to a non-sequence point".into(),
            )),
            MapSpec::Power { base, exp } => {
                let mut q = p.clone();
                if *exp >= 0 {
                    for _ in 0..*exp {
                        q = base.apply(&q)?;
                    }
                } else {
                    let inv = base.inverse(point_space_kind(p)?)?;
                    for _ in 0..exp.unsigned_abs() {
                        q = inv.apply(&q)?;
                    }
                }
                Ok(q)
            }
            MapSpec::Composite(maps) => {
                let mut q = p.clone();
                for m in maps.iter().rev() {
                    q = m.apply(&q)?;
                }
                Ok(q)
            }
        }
    }
}

/// Infers which space kind a point can live in, for inverse resolution.
/// Euclidean points of dimension 1 resolve to the interval.
fn point_space_kind(p: &Point) -> Result<Space> {
    Ok(match p {
        Point::Real(v) if v.len() == 1 => Space::UnitInterval,
        Point::Real(_) => Space::UnitSquare,
        Point::Symbolic(s) if s.is_two_sided() => Space::ShiftTwoSided,
        Point::Symbolic(_) => Space::ShiftOneSided,
    })
}

impl fmt::Display for MapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapSpec::Identity => write!(f, "id"),
            MapSpec::Logistic { mu } => write!(f, "logistic({mu})"),
            MapSpec::Tent { slope } => write!(f, "tent({slope})"),
            MapSpec::Doubling => write!(f, "doubling"),
            MapSpec::Monomial { degree } => write!(f, "x^{degree}"),
            MapSpec::Shift { backward: false } => write!(f, "shift"),
            MapSpec::Shift { backward: true } => write!(f, "shift_back"),
            MapSpec::Power { base, exp } => write!(f, "({base})^{exp}"),
            MapSpec::Composite(maps) => {
                write!(f, "comp[")?;
                for (i, m) in maps.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{m}")?;
                }
                write!(f, "]")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::SymbolicSeq;

    fn seq2(core: &[u8]) -> Point {
        Point::Symbolic(SymbolicSeq::two_sided(&[0], core, &[0], 0))
    }

    #[test]
    fn logistic_peak_orbit() {
        let f = MapSpec::logistic(4.0);
        let x1 = f.apply(&Point::scalar(0.5)).unwrap();
        assert_eq!(x1.as_scalar().unwrap(), 1.0);
        let x2 = f.apply(&x1).unwrap();
        assert_eq!(x2.as_scalar().unwrap(), 0.0);
    }

    #[test]
    fn tent_dyadic_orbit_is_exact() {
        let f = MapSpec::tent(2.0);
        let mut x = Point::scalar(0.375);
        let expected = [0.75, 0.5, 1.0, 0.0, 0.0];
        for e in expected {
            x = f.apply(&x).unwrap();
            assert_eq!(x.as_scalar().unwrap(), e);
        }
    }

    #[test]
    fn doubling_endpoint_convention() {
        let f = MapSpec::Doubling;
        assert_eq!(f.apply(&Point::scalar(1.0)).unwrap().as_scalar().unwrap(), 1.0);
        assert_eq!(f.apply(&Point::scalar(0.5)).unwrap().as_scalar().unwrap(), 0.0);
        assert_eq!(f.apply(&Point::scalar(0.375)).unwrap().as_scalar().unwrap(), 0.75);
    }

    #[test]
    fn shift_powers_fold_to_offsets() {
        let p = seq2(&[1, 0, 1, 1]);
        let fwd3 = MapSpec::power(MapSpec::shift(), 3);
        let back3 = MapSpec::power(MapSpec::shift(), -3);
        let there = fwd3.apply(&p).unwrap();
        let back = back3.apply(&there).unwrap();
        assert_eq!(p, back);
        // A power of the backward shift equals the negative power of the shift.
        let alt = MapSpec::power(MapSpec::shift_back(), 3).apply(&there).unwrap();
        assert_eq!(p, alt);
    }

    #[test]
    fn one_sided_backward_shift_is_rejected() {
        let p = Point::Symbolic(SymbolicSeq::one_sided(&[1, 0], &[0]));
        let err = MapSpec::power(MapSpec::shift(), -1).apply(&p);
        assert!(matches!(err, Err(Error::NonInvertibleMap(_))));
        assert!(MapSpec::shift_back().validate_for(Space::ShiftOneSided).is_err());
    }

    #[test]
    fn composite_applies_rightmost_first() {
        // comp[tent(2), logistic(4)](x) must equal tent(2)(logistic(4)(x)).
        let comp = MapSpec::Composite(vec![MapSpec::tent(2.0), MapSpec::logistic(4.0)]);
        let x = Point::scalar(0.2);
        let via_comp = comp.apply(&x).unwrap().as_scalar().unwrap();
        let inner = MapSpec::logistic(4.0).apply(&x).unwrap();
        let via_steps = MapSpec::tent(2.0).apply(&inner).unwrap().as_scalar().unwrap();
        assert_eq!(via_comp, via_steps);
    }

    #[test]
    fn negative_power_of_rigid_map_rejected() {
        let f = MapSpec::power(MapSpec::Doubling, -1);
        assert!(f.validate_for(Space::UnitInterval).is_err());
        assert!(f.apply(&Point::scalar(0.25)).is_err());
    }

    #[test]
    fn composite_inverse_reverses_order() {
        let f = MapSpec::Composite(vec![
            MapSpec::power(MapSpec::shift(), 2),
            MapSpec::shift_back(),
        ]);
        let inv = f.inverse(Space::ShiftTwoSided).unwrap();
        let p = seq2(&[1, 1, 0]);
        let q = f.apply(&p).unwrap();
        assert_eq!(inv.apply(&q).unwrap(), p);
        assert_ne!(q, p);
    }

    #[test]
    fn monomial_contracts_pointwise_not_uniformly() {
        let f = MapSpec::Monomial { degree: 3 };
        assert_eq!(f.apply(&Point::scalar(0.5)).unwrap().as_scalar().unwrap(), 0.125);
        assert_eq!(f.apply(&Point::scalar(1.0)).unwrap().as_scalar().unwrap(), 1.0);
        assert!(MapSpec::Monomial { degree: 0 }.validate_for(Space::UnitInterval).is_err());
        assert!(f.validate_for(Space::ShiftOneSided).is_err());
        assert!(!f.is_invertible(Space::UnitInterval));
        // Even at high degree, points near 1 have barely moved: the sup gap
        // to the pointwise limit (0 on [0,1)) stays order-1.
        let g = MapSpec::Monomial { degree: 64 };
        assert!(g.apply(&Point::scalar(0.995)).unwrap().as_scalar().unwrap() > 0.7);
    }

    #[test]
    fn parameter_validation() {
        assert!(MapSpec::logistic(4.2).validate_for(Space::UnitInterval).is_err());
        assert!(MapSpec::tent(2.0).validate_for(Space::UnitInterval).is_ok());
        assert!(MapSpec::tent(-0.1).validate_for(Space::UnitInterval).is_err());
        assert!(MapSpec::logistic(4.0).validate_for(Space::ShiftOneSided).is_err());
    }
}
