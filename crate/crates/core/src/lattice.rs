//! The nine rings of integers of class number one, viewed as planar
//! lattices.
//!
//! Points of the plane are carried in the frame `(x, y' * sqrt(d))` so that
//! every stored coordinate is rational. A lattice point with basis
//! coordinates `(a, b)` embeds as
//!
//! * `(a, b)` when `-d = 2, 3 (mod 4)` (basis `(1, 0), (0, sqrt d)`), and
//! * `(a - b/2, b/2)` otherwise (basis `(1, 0), (-1/2, sqrt(d)/2)`).
//!
//! The second basis generates the same lattice as `(1, 0), (1/2, sqrt(d)/2)`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{self, rat_floor_sqrt, rat_int, BigRat};

/// The class-number-one values of `d` for `Q(sqrt(-d))`.
pub const CLASS_NUMBER_ONE: [u32; 9] = [1, 2, 3, 7, 11, 19, 43, 67, 163];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeError {
    /// `d` is not one of the nine class-number-one values.
    UnsupportedD(u32),
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::UnsupportedD(d) => write!(
                f,
                "d = {d} is not one of the class-number-one values 1, 2, 3, 7, 11, 19, 43, 67, 163"
            ),
        }
    }
}

impl core::error::Error for LatticeError {}

/// Shape of the integral basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisCase {
    /// `-d = 2, 3 (mod 4)`: basis `(1, 0), (0, sqrt d)`.
    Rectangular,
    /// `-d = 1 (mod 4)`: basis `(1, 0), (-1/2, sqrt(d)/2)`.
    Centered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeSpec {
    d: u32,
    case: BasisCase,
}

impl LatticeSpec {
    pub fn new(d: u32) -> Result<Self, LatticeError> {
        if !CLASS_NUMBER_ONE.contains(&d) {
            return Err(LatticeError::UnsupportedD(d));
        }
        // -d = 1 (mod 4)  <=>  d = 3 (mod 4)
        let case = if d % 4 == 3 {
            BasisCase::Centered
        } else {
            BasisCase::Rectangular
        };
        Ok(LatticeSpec { d, case })
    }

    /// All nine lattices, in increasing `d`.
    pub fn all() -> impl Iterator<Item = LatticeSpec> {
        CLASS_NUMBER_ONE.iter().map(|&d| LatticeSpec::new(d).unwrap())
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn basis_case(&self) -> BasisCase {
        self.case
    }

    /// Field discriminant: `-4d` for the rectangular case, `-d` otherwise.
    pub fn discriminant(&self) -> i64 {
        match self.case {
            BasisCase::Rectangular => -4 * self.d as i64,
            BasisCase::Centered => -(self.d as i64),
        }
    }

    /// Squared area of a fundamental cell.
    pub fn covolume_squared(&self) -> BigRat {
        match self.case {
            BasisCase::Rectangular => rat_int(self.d as i64),
            BasisCase::Centered => arith::rat(self.d as i128, 4),
        }
    }

    pub fn embed(&self, p: LatticePoint) -> QPoint {
        let h = self.to_half(p);
        QPoint {
            x: arith::rat(h.x as i128, 2),
            yp: arith::rat(h.y as i128, 2),
        }
    }

    /// Basis coordinates of `q`, if `q` is a point of the lattice.
    pub fn membership(&self, q: &QPoint) -> Option<LatticePoint> {
        match self.case {
            BasisCase::Rectangular => {
                if !arith::is_integer(&q.x) || !arith::is_integer(&q.yp) {
                    return None;
                }
                Some(LatticePoint {
                    a: q.x.numer().to_i64()?,
                    b: q.yp.numer().to_i64()?,
                })
            }
            BasisCase::Centered => {
                let b = &q.yp * BigInt::from(2);
                let a = &q.x + &q.yp;
                if !arith::is_integer(&b) || !arith::is_integer(&a) {
                    return None;
                }
                Some(LatticePoint {
                    a: a.numer().to_i64()?,
                    b: b.numer().to_i64()?,
                })
            }
        }
    }

    /// Squared Euclidean length `x^2 + d y'^2`.
    pub fn norm2(&self, q: &QPoint) -> BigRat {
        &q.x * &q.x + &q.yp * &q.yp * BigInt::from(self.d)
    }

    pub fn dist2(&self, p: &QPoint, q: &QPoint) -> BigRat {
        let dx = &p.x - &q.x;
        let dy = &p.yp - &q.yp;
        &dx * &dx + &dy * &dy * BigInt::from(self.d)
    }

    /// Every lattice point within squared distance `radius2_bound` of
    /// `center`, each exactly once, ordered by `x` then `y'`.
    pub fn points_in_disk(&self, center: &QPoint, radius2_bound: &BigRat) -> Vec<LatticePoint> {
        let mut out = Vec::new();
        if radius2_bound.is_negative() {
            return out;
        }
        let two = BigInt::from(2);
        let d = BigInt::from(self.d);
        // Columns are X = 2x with |X - 2 x0| <= 2 sqrt(bound).
        let cx2 = &center.x * &two;
        let cy2 = &center.yp * &two;
        let m = rat_floor_sqrt(&(radius2_bound * BigInt::from(4))).expect("nonnegative");
        let lo = (arith::rat_floor(&cx2) - &m - 1u32).to_i64().expect("disk too large");
        let hi = (arith::rat_ceil(&cx2) + &m + 1u32).to_i64().expect("disk too large");
        for col in lo..=hi {
            if self.case == BasisCase::Rectangular && col % 2 != 0 {
                continue;
            }
            let x = arith::rat(col as i128, 2);
            let dx = &x - &center.x;
            let rest = radius2_bound - &dx * &dx;
            if rest.is_negative() {
                continue;
            }
            // d (Y/2 - y0')^2 <= rest  <=>  (Y - 2 y0')^2 <= 4 rest / d
            let my = rat_floor_sqrt(&(&rest * BigInt::from(4) / &d)).expect("nonnegative");
            let ylo = (arith::rat_floor(&cy2) - &my - 1u32).to_i64().expect("disk too large");
            let yhi = (arith::rat_ceil(&cy2) + &my + 1u32).to_i64().expect("disk too large");
            for row in ylo..=yhi {
                let h = HalfPoint { x: col, y: row };
                if !self.is_lattice_half(h) {
                    continue;
                }
                let dy = arith::rat(row as i128, 2) - &center.yp;
                if &dy * &dy * &d <= rest {
                    out.push(self.from_half(h).expect("parity checked"));
                }
            }
        }
        out
    }

    /// Doubled coordinates `(2x, 2y')` of a lattice point.
    #[inline]
    pub fn to_half(&self, p: LatticePoint) -> HalfPoint {
        match self.case {
            BasisCase::Rectangular => HalfPoint {
                x: 2 * p.a,
                y: 2 * p.b,
            },
            BasisCase::Centered => HalfPoint {
                x: 2 * p.a - p.b,
                y: p.b,
            },
        }
    }

    #[inline]
    pub fn is_lattice_half(&self, h: HalfPoint) -> bool {
        match self.case {
            BasisCase::Rectangular => h.x % 2 == 0 && h.y % 2 == 0,
            BasisCase::Centered => (h.x - h.y) % 2 == 0,
        }
    }

    #[inline]
    pub fn from_half(&self, h: HalfPoint) -> Option<LatticePoint> {
        if !self.is_lattice_half(h) {
            return None;
        }
        Some(match self.case {
            BasisCase::Rectangular => LatticePoint {
                a: h.x / 2,
                b: h.y / 2,
            },
            BasisCase::Centered => LatticePoint {
                a: (h.x + h.y) / 2,
                b: h.y,
            },
        })
    }
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.case {
            BasisCase::Rectangular => write!(f, "[1, sqrt(-{})]", self.d),
            BasisCase::Centered => write!(f, "[1, (-1+sqrt(-{}))/2]", self.d),
        }
    }
}

/// Integer basis coordinates of a lattice point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub a: i64,
    pub b: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { a: 0, b: 0 };

    pub fn new(a: i64, b: i64) -> Self {
        LatticePoint { a, b }
    }
}

/// A point of the plane, `(x, yp * sqrt(d))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPoint {
    pub x: BigRat,
    pub yp: BigRat,
}

impl QPoint {
    pub fn new(x: BigRat, yp: BigRat) -> Self {
        QPoint { x, yp }
    }

    pub fn origin() -> Self {
        QPoint {
            x: BigRat::zero(),
            yp: BigRat::zero(),
        }
    }

    /// Convenience constructor from two fractions.
    pub fn from_fracs(x: (i128, i128), yp: (i128, i128)) -> Self {
        QPoint {
            x: arith::rat(x.0, x.1),
            yp: arith::rat(yp.0, yp.1),
        }
    }

    pub fn add(&self, other: &QPoint) -> QPoint {
        QPoint {
            x: &self.x + &other.x,
            yp: &self.yp + &other.yp,
        }
    }

    pub fn sub(&self, other: &QPoint) -> QPoint {
        QPoint {
            x: &self.x - &other.x,
            yp: &self.yp - &other.yp,
        }
    }
}

/// Doubled coordinates `(2x, 2y')`; every lattice point has integral
/// doubled coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfPoint {
    pub x: i64,
    pub y: i64,
}

/// Elements of the order-4 group generated by negation and complex
/// conjugation. Each maps all nine lattices onto themselves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Isometry {
    Identity,
    /// `(x, y') -> (-x, -y')`
    Negation,
    /// `(x, y') -> (x, -y')`
    Conjugation,
    /// `(x, y') -> (-x, y')`, negation composed with conjugation.
    Reflection,
}

impl Isometry {
    pub const ALL: [Isometry; 4] = [
        Isometry::Identity,
        Isometry::Negation,
        Isometry::Conjugation,
        Isometry::Reflection,
    ];

    fn signs(self) -> (bool, bool) {
        match self {
            Isometry::Identity => (false, false),
            Isometry::Negation => (true, true),
            Isometry::Conjugation => (false, true),
            Isometry::Reflection => (true, false),
        }
    }

    fn from_signs(flip_x: bool, flip_y: bool) -> Self {
        match (flip_x, flip_y) {
            (false, false) => Isometry::Identity,
            (true, true) => Isometry::Negation,
            (false, true) => Isometry::Conjugation,
            (true, false) => Isometry::Reflection,
        }
    }

    /// `self` after `other`.
    pub fn compose(self, other: Isometry) -> Isometry {
        let (ax, ay) = self.signs();
        let (bx, by) = other.signs();
        Isometry::from_signs(ax ^ bx, ay ^ by)
    }

    pub fn apply(self, q: &QPoint) -> QPoint {
        let (fx, fy) = self.signs();
        QPoint {
            x: if fx { -q.x.clone() } else { q.x.clone() },
            yp: if fy { -q.yp.clone() } else { q.yp.clone() },
        }
    }

    #[inline]
    pub fn apply_half(self, h: HalfPoint) -> HalfPoint {
        let (fx, fy) = self.signs();
        HalfPoint {
            x: if fx { -h.x } else { h.x },
            y: if fy { -h.y } else { h.y },
        }
    }

    pub fn apply_lattice(self, spec: &LatticeSpec, p: LatticePoint) -> LatticePoint {
        spec.from_half(self.apply_half(spec.to_half(p)))
            .expect("the group preserves every lattice")
    }
}

/// The point-group elements used for symmetry reduction.
pub fn point_group(_spec: &LatticeSpec) -> Vec<Isometry> {
    Isometry::ALL.to_vec()
}

/// Whether `h` lies in the closed quarter plane `x >= 0, y' >= 0`, a
/// fundamental domain of [`Isometry`] acting on nonzero points.
#[inline]
pub fn in_sector(h: HalfPoint) -> bool {
    h.x >= 0 && h.y >= 0 && (h.x, h.y) != (0, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn spec(d: u32) -> LatticeSpec {
        LatticeSpec::new(d).unwrap()
    }

    #[test]
    fn specs_and_discriminants() {
        let disc: Vec<i64> = LatticeSpec::all().map(|s| s.discriminant()).collect();
        assert_eq!(disc, [-4, -8, -3, -7, -11, -19, -43, -67, -163]);
        assert_eq!(spec(1).basis_case(), BasisCase::Rectangular);
        assert_eq!(spec(2).basis_case(), BasisCase::Rectangular);
        for d in [3, 7, 11, 19, 43, 67, 163] {
            assert_eq!(spec(d).basis_case(), BasisCase::Centered);
        }
        assert_eq!(LatticeSpec::new(5), Err(LatticeError::UnsupportedD(5)));
        assert_eq!(LatticeSpec::new(0), Err(LatticeError::UnsupportedD(0)));
    }

    #[test]
    fn membership_examples() {
        let q = QPoint::from_fracs((3, 1), (-2, 1));
        assert_eq!(spec(1).membership(&q), Some(LatticePoint::new(3, -2)));
        let q = QPoint::from_fracs((1, 2), (1, 2));
        assert_eq!(spec(3).membership(&q), Some(LatticePoint::new(1, 1)));
        let q = QPoint::from_fracs((1, 2), (1, 3));
        assert_eq!(spec(3).membership(&q), None);
        // Half-integers are not points of Z^2.
        let q = QPoint::from_fracs((1, 2), (1, 2));
        assert_eq!(spec(1).membership(&q), None);
        // (x + y') must be integral in the centered case.
        let q = QPoint::from_fracs((1, 1), (1, 2));
        assert_eq!(spec(7).membership(&q), None);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(spec(1).norm2(&QPoint::from_fracs((1, 1), (1, 1))), rat(2, 1));
        assert_eq!(spec(3).norm2(&QPoint::from_fracs((1, 2), (1, 2))), rat(1, 1));
        // (1 + 163) / 4
        assert_eq!(spec(163).norm2(&QPoint::from_fracs((1, 2), (1, 2))), rat(41, 1));
    }

    #[test]
    fn disk_examples() {
        let o = QPoint::origin();
        let mut z2 = spec(1).points_in_disk(&o, &rat(1, 1));
        z2.sort();
        assert_eq!(
            z2,
            [(-1, 0), (0, -1), (0, 0), (0, 1), (1, 0)].map(|(a, b)| LatticePoint::new(a, b))
        );
        assert_eq!(spec(3).points_in_disk(&o, &rat(1, 1)).len(), 7);

        // Brute force for d = 2 over a, b in [-2, 2].
        let s = spec(2);
        let mut brute = Vec::new();
        for a in -2..=2 {
            for b in -2..=2 {
                if a * a + 2 * b * b <= 2 {
                    brute.push(LatticePoint::new(a, b));
                }
            }
        }
        let mut got = s.points_in_disk(&o, &rat(2, 1));
        got.sort();
        brute.sort();
        assert_eq!(got, brute);
        assert_eq!(got.len(), 5);

        assert!(s.points_in_disk(&o, &rat(-1, 1)).is_empty());
    }

    #[test]
    fn disk_matches_brute_force_off_center() {
        for s in LatticeSpec::all() {
            let c = QPoint::from_fracs((1, 3), (-2, 7));
            let bound = rat(29, 2);
            let mut got = s.points_in_disk(&c, &bound);
            got.sort();
            let mut brute = Vec::new();
            for a in -12..=12 {
                for b in -12..=12 {
                    let p = LatticePoint::new(a, b);
                    if s.dist2(&s.embed(p), &c) <= bound {
                        brute.push(p);
                    }
                }
            }
            brute.sort();
            assert_eq!(got, brute, "d = {}", s.d());
        }
    }

    #[test]
    fn group_examples() {
        let s = spec(7);
        let g = point_group(&s);
        assert_eq!(g.len(), 4);
        assert!(g.contains(&Isometry::Identity));
        let p = LatticePoint::new(0, 1);
        assert_eq!(s.embed(p), QPoint::from_fracs((-1, 2), (1, 2)));
        let image = Isometry::Conjugation.apply(&s.embed(p));
        assert_eq!(image, QPoint::from_fracs((-1, 2), (-1, 2)));
        assert_eq!(s.membership(&image), Some(LatticePoint::new(-1, -1)));
        assert_eq!(Isometry::Conjugation.apply_lattice(&s, p), LatticePoint::new(-1, -1));

        let nc = Isometry::Negation.compose(Isometry::Conjugation);
        assert_eq!(nc, Isometry::Reflection);
        assert_eq!(nc.compose(nc), Isometry::Identity);
        for a in Isometry::ALL {
            for b in Isometry::ALL {
                assert!(Isometry::ALL.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn sector_is_fundamental_domain() {
        for x in -4..=4 {
            for y in -4..=4 {
                let h = HalfPoint { x, y };
                if (x, y) == (0, 0) {
                    assert!(!in_sector(h));
                    continue;
                }
                assert!(Isometry::ALL.iter().any(|g| in_sector(g.apply_half(h))));
            }
        }
    }
}
