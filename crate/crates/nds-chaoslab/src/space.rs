//! Compact metric spaces the simulator runs on, and their points.

use crate::symbolic::{self, SymbolicSeq};
use crate::{Error, Result};

/// The supported compact metric spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    /// `[0, 1]` with `d(x, y) = |x - y|`.
    UnitInterval,
    /// `[0, 1]^2` with the Euclidean metric.
    UnitSquare,
    /// One-sided binary sequence space with `d(s,t) = sum |s_i-t_i| 2^-(i+1)`.
    ShiftOneSided,
    /// Two-sided binary sequence space, weights `2^-(|i|+1)` over all integers.
    ShiftTwoSided,
}

/// A point of one of the spaces.
#[derive(Clone, Debug, PartialEq)]
pub enum Point {
    /// Coordinates in a Euclidean box; length 1 or 2 depending on the space.
    Real(Vec<f64>),
    Symbolic(SymbolicSeq),
}

impl Point {
    pub fn scalar(x: f64) -> Self {
        Point::Real(vec![x])
    }

    /// The single coordinate of an interval point.
    pub fn as_scalar(&self) -> Result<f64> {
        match self {
            Point::Real(v) if v.len() == 1 => Ok(v[0]),
            _ => Err(Error::DomainViolation("expected a scalar point".into())),
        }
    }

    pub fn as_symbolic(&self) -> Result<&SymbolicSeq> {
        match self {
            Point::Symbolic(s) => Ok(s),
            _ => Err(Error::DomainViolation("expected a symbolic point".into())),
        }
    }
}

impl Space {
    /// Dimension of the coordinate vector for Euclidean spaces.
    pub fn euclidean_dim(self) -> Option<usize> {
        match self {
            Space::UnitInterval => Some(1),
            Space::UnitSquare => Some(2),
            _ => None,
        }
    }

    pub fn is_symbolic(self) -> bool {
        matches!(self, Space::ShiftOneSided | Space::ShiftTwoSided)
    }

    /// Diameter of the space (exact in double precision for all four).
    pub fn diameter(self) -> f64 {
        match self {
            Space::UnitInterval => 1.0,
            Space::UnitSquare => std::f64::consts::SQRT_2,
            Space::ShiftOneSided => 1.0,
            Space::ShiftTwoSided => 1.5,
        }
    }

    /// Checks that `p` is a well-formed point of this space.
    pub fn validate(self, p: &Point) -> Result<()> {
        match (self, p) {
            (Space::UnitInterval | Space::UnitSquare, Point::Real(v)) => {
                let dim = self.euclidean_dim().unwrap();
                if v.len() != dim {
                    return Err(Error::DomainViolation(format!(
                        "point has {} coordinates, space needs {dim}",
                        v.len()
                    )));
                }
                for &x in v {
                    if !(0.0..=1.0).contains(&x) {
                        return Err(Error::DomainViolation(format!(
                            "coordinate {x} outside [0, 1]"
                        )));
                    }
                }
                Ok(())
            }
            (Space::ShiftOneSided, Point::Symbolic(s)) if !s.is_two_sided() => Ok(()),
            (Space::ShiftTwoSided, Point::Symbolic(s)) if s.is_two_sided() => Ok(()),
            (Space::ShiftOneSided | Space::ShiftTwoSided, Point::Symbolic(_)) => Err(
                Error::DomainViolation("sequence sidedness does not match the space".into()),
            ),
            _ => Err(Error::DomainViolation(
                "point kind does not match the space".into(),
            )),
        }
    }

    /// Metric of the space. Panics on malformed points (validate first when
    /// input is untrusted).
    pub fn distance(self, a: &Point, b: &Point) -> f64 {
        match (self, a, b) {
            (Space::UnitInterval, Point::Real(x), Point::Real(y)) => (x[0] - y[0]).abs(),
            (Space::UnitSquare, Point::Real(x), Point::Real(y)) => {
                let dx = x[0] - y[0];
                let dy = x[1] - y[1];
                dx.hypot(dy)
            }
            (Space::ShiftOneSided | Space::ShiftTwoSided, Point::Symbolic(s), Point::Symbolic(t)) => {
                symbolic::distance(s, t)
            }
            _ => panic!("point kind does not match space {self:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_metric_and_domain() {
        let s = Space::UnitInterval;
        assert_eq!(s.distance(&Point::scalar(0.25), &Point::scalar(1.0)), 0.75);
        assert!(s.validate(&Point::scalar(0.5)).is_ok());
        assert!(s.validate(&Point::scalar(1.5)).is_err());
        assert!(s.validate(&Point::Real(vec![0.1, 0.2])).is_err());
        assert!(s.validate(&Point::Symbolic(SymbolicSeq::constant(0, false))).is_err());
    }

    #[test]
    fn square_metric_is_euclidean() {
        let s = Space::UnitSquare;
        let a = Point::Real(vec![0.0, 0.0]);
        let b = Point::Real(vec![1.0, 1.0]);
        assert_eq!(s.distance(&a, &b), std::f64::consts::SQRT_2);
        assert_eq!(s.diameter(), std::f64::consts::SQRT_2);
    }

    #[test]
    fn shift_spaces_check_sidedness() {
        let one = Point::Symbolic(SymbolicSeq::constant(1, false));
        let two = Point::Symbolic(SymbolicSeq::constant(1, true));
        assert!(Space::ShiftOneSided.validate(&one).is_ok());
        assert!(Space::ShiftOneSided.validate(&two).is_err());
        assert!(Space::ShiftTwoSided.validate(&two).is_ok());
        assert!(Space::ShiftTwoSided.validate(&one).is_err());
    }

    #[test]
    fn shift_diameters_are_attained() {
        let z1 = Point::Symbolic(SymbolicSeq::constant(0, false));
        let o1 = Point::Symbolic(SymbolicSeq::constant(1, false));
        assert_eq!(Space::ShiftOneSided.distance(&z1, &o1), Space::ShiftOneSided.diameter());
        let z2 = Point::Symbolic(SymbolicSeq::constant(0, true));
        let o2 = Point::Symbolic(SymbolicSeq::constant(1, true));
        assert_eq!(Space::ShiftTwoSided.distance(&z2, &o2), Space::ShiftTwoSided.diameter());
    }
}
