//! Exact circles in the `(x, y' sqrt d)` frame.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{self, rat_floor_sqrt, rat_sqrt_exact, BigRat};
use crate::lattice::{BasisCase, Isometry, LatticePoint, LatticeSpec, QPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeomError {
    /// The three points lie on a line (or two of them coincide).
    Collinear,
    /// A circle must have positive squared radius.
    NonPositiveRadius,
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::Collinear => f.write_str("points are collinear"),
            GeomError::NonPositiveRadius => f.write_str("squared radius must be positive"),
        }
    }
}

impl core::error::Error for GeomError {}

/// A circle with rational center `(x0, y0' sqrt d)` and rational squared
/// radius.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circle {
    pub center: QPoint,
    pub radius2: BigRat,
}

impl Circle {
    pub fn new(center: QPoint, radius2: BigRat) -> Result<Self, GeomError> {
        if !radius2.is_positive() {
            return Err(GeomError::NonPositiveRadius);
        }
        Ok(Circle { center, radius2 })
    }

    pub fn key(&self) -> CircleKey {
        canonical_key(self)
    }

    pub fn contains(&self, spec: &LatticeSpec, p: LatticePoint) -> bool {
        spec.dist2(&spec.embed(p), &self.center) == self.radius2
    }

    pub fn transformed(&self, g: Isometry) -> Circle {
        Circle {
            center: g.apply(&self.center),
            radius2: self.radius2.clone(),
        }
    }

    pub fn translated(&self, by: &QPoint) -> Circle {
        Circle {
            center: self.center.add(by),
            radius2: self.radius2.clone(),
        }
    }
}

/// Reduced-fraction identity of a circle:
/// `(x0 num, x0 den, y0' num, y0' den, radius2 num, radius2 den)`.
///
/// Ordering is lexicographic on the integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircleKey(pub [BigInt; 6]);

pub fn canonical_key(c: &Circle) -> CircleKey {
    // BigRat is always reduced with a positive denominator.
    CircleKey([
        c.center.x.numer().clone(),
        c.center.x.denom().clone(),
        c.center.yp.numer().clone(),
        c.center.yp.denom().clone(),
        c.radius2.numer().clone(),
        c.radius2.denom().clone(),
    ])
}

/// The circle through three lattice points.
pub fn circumcircle(
    spec: &LatticeSpec,
    p1: LatticePoint,
    p2: LatticePoint,
    p3: LatticePoint,
) -> Result<Circle, GeomError> {
    let base = spec.embed(p1);
    let q2 = spec.embed(p2).sub(&base);
    let q3 = spec.embed(p3).sub(&base);
    let d = BigInt::from(spec.d());

    // With p1 at the origin the center c solves
    //   2 <c, q_i> = |q_i|^2,   <(x, y'), (s, t')> = x s + d y' t'.
    let cross = &q2.x * &q3.yp - &q3.x * &q2.yp;
    if cross.is_zero() {
        return Err(GeomError::Collinear);
    }
    let n2 = spec.norm2(&q2);
    let n3 = spec.norm2(&q3);
    let two_cross = &cross * BigInt::from(2);
    let cx = (&n2 * &q3.yp - &n3 * &q2.yp) / &two_cross;
    let cy = (&q2.x * &n3 - &q3.x * &n2) / (&two_cross * &d);
    let center = QPoint::new(cx, cy);
    let radius2 = spec.norm2(&center);
    Circle::new(center.add(&base), radius2)
}

/// All lattice points on `c`, sorted by `(x, y')`.
///
/// Scans the admissible columns `x` (integers, or half-integers in the
/// centered case) with `|x - x0| <= sqrt(D)`, and in each column asks
/// whether `(D - (x - x0)^2) / d` is the square of a rational `r`; the
/// candidates are then `y' = y0' +- r`.
pub fn count_on_circle(spec: &LatticeSpec, c: &Circle) -> (usize, Vec<LatticePoint>) {
    let d = BigInt::from(spec.d());
    let two = BigInt::from(2);
    let cx2 = &c.center.x * &two;
    let m = rat_floor_sqrt(&(&c.radius2 * BigInt::from(4))).expect("positive radius");
    let lo = (arith::rat_floor(&cx2) - &m).to_i64().expect("circle too large");
    let hi = (arith::rat_ceil(&cx2) + &m).to_i64().expect("circle too large");

    let mut points = Vec::new();
    for col in lo..=hi {
        if spec.basis_case() == BasisCase::Rectangular && col % 2 != 0 {
            continue;
        }
        let x = arith::rat(col as i128, 2);
        let dx = &x - &c.center.x;
        let rest = &c.radius2 - &dx * &dx;
        if rest.is_negative() {
            continue;
        }
        let Some(r) = rat_sqrt_exact(&(rest / &d)).expect("nonnegative") else {
            continue;
        };
        let mut push = |yp: BigRat| {
            if let Some(p) = spec.membership(&QPoint::new(x.clone(), yp)) {
                points.push(p);
            }
        };
        if r.is_zero() {
            push(c.center.yp.clone());
        } else {
            push(&c.center.yp - &r);
            push(&c.center.yp + &r);
        }
    }
    (points.len(), points)
}
