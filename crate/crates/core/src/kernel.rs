//! Machine-integer geometry for circles through the origin.
//!
//! In doubled coordinates `(X, Y) = (2x, 2y')` with the quadratic form
//! `N(X, Y) = X^2 + d Y^2`, the circle through the origin and two further
//! points `P`, `Q` is
//!
//! ```text
//! k N(X, Y) = u X + v Y
//! k = X_P Y_Q - X_Q Y_P
//! u = N_P Y_Q - N_Q Y_P
//! v = X_P N_Q - X_Q N_P
//! ```
//!
//! Its true center is `(u / 4k, v / 4dk)` in the `(x, y')` frame and its
//! squared radius is `(d u^2 + v^2) / (16 d k^2)`.
//!
//! Magnitudes stay well inside `i128` as long as every generating point has
//! `N <= MAX_NORM`; the search enforces that.

use crate::arith::{self, cmp_frac_i128, exact_sqrt_i128, gcd_i128, isqrt_i128, rat};
use crate::circle::Circle;
use crate::lattice::{BasisCase, HalfPoint, QPoint};

/// Largest doubled norm a generating point may have.
pub const MAX_NORM: i128 = 1 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OriginCircle {
    k: i128,
    u: i128,
    v: i128,
}

/// Reduced `(x0 num, x0 den, y0' num, y0' den, D num, D den)`, the machine
/// counterpart of [`crate::circle::CircleKey`], with the same ordering.
pub type KernelKey = [i128; 6];

impl OriginCircle {
    /// The circle through the origin, `p` and `q`, or `None` when the three
    /// are collinear.
    #[inline]
    pub fn through(d: i128, p: HalfPoint, q: HalfPoint) -> Option<Self> {
        let (px, py) = (p.x as i128, p.y as i128);
        let (qx, qy) = (q.x as i128, q.y as i128);
        let np = px * px + d * py * py;
        let nq = qx * qx + d * qy * qy;
        Self::from_parts(px, py, np, qx, qy, nq)
    }

    #[inline]
    pub(crate) fn from_parts(
        px: i128,
        py: i128,
        np: i128,
        qx: i128,
        qy: i128,
        nq: i128,
    ) -> Option<Self> {
        let k = px * qy - qx * py;
        if k == 0 {
            return None;
        }
        let u = np * qy - nq * py;
        let v = px * nq - qx * np;
        Some(if k > 0 {
            OriginCircle { k, u, v }
        } else {
            OriginCircle {
                k: -k,
                u: -u,
                v: -v,
            }
        })
    }

    /// Unreduced squared radius `(d u^2 + v^2, 16 d k^2)`.
    #[inline]
    pub fn radius2_frac(&self, d: i128) -> (i128, i128) {
        (
            d * self.u * self.u + self.v * self.v,
            16 * d * self.k * self.k,
        )
    }

    pub fn key(&self, d: i128) -> KernelKey {
        let reduce = |n: i128, m: i128| {
            let g = gcd_i128(n, m);
            (n / g, m / g)
        };
        let (xn, xd) = reduce(self.u, 4 * self.k);
        let (yn, yd) = reduce(self.v, 4 * d * self.k);
        let (m, den) = self.radius2_frac(d);
        let (rn, rd) = reduce(m, den);
        [xn, xd, yn, yd, rn, rd]
    }

    pub fn to_circle(&self, d: i128) -> Circle {
        let (m, den) = self.radius2_frac(d);
        Circle::new(
            QPoint::new(rat(self.u, 4 * self.k), rat(self.v, 4 * d * self.k)),
            rat(m, den),
        )
        .expect("a circle through three distinct points has positive radius")
    }

    /// Visits every lattice point on the circle in increasing `(Y, X)`
    /// order. Stops early, returning `false`, as soon as `visit` does.
    #[inline]
    pub fn scan(&self, d: i128, case: BasisCase, mut visit: impl FnMut(HalfPoint) -> bool) -> bool {
        let OriginCircle { k, u, v } = *self;
        // With T = 2kdY - v and S = 2kX - u the circle reads d S^2 + T^2 = M.
        let m = d * u * u + v * v;
        let s = isqrt_i128(m);
        let two_kd = 2 * k * d;
        let mut y = arith::div_ceil_i128(v - s, two_kd);
        let y_hi = arith::div_floor_i128(v + s, two_kd);
        let step = match case {
            BasisCase::Rectangular => {
                if y % 2 != 0 {
                    y += 1;
                }
                2
            }
            BasisCase::Centered => 1,
        };
        let uu = u * u;
        let two_k = 2 * k;
        let four_k = 4 * k;
        let kd = k * d;
        while y <= y_hi {
            let c = kd * y * y - v * y;
            if let Some(r) = exact_sqrt_i128(uu - four_k * c) {
                let lo = u - r;
                if lo % two_k == 0 {
                    let x = lo / two_k;
                    if parity_ok(case, x, y) && !visit(HalfPoint { x: x as i64, y: y as i64 }) {
                        return false;
                    }
                }
                if r != 0 {
                    let hi = u + r;
                    if hi % two_k == 0 {
                        let x = hi / two_k;
                        if parity_ok(case, x, y) && !visit(HalfPoint { x: x as i64, y: y as i64 }) {
                            return false;
                        }
                    }
                }
            }
            y += step;
        }
        true
    }
}

#[inline]
fn parity_ok(case: BasisCase, x: i128, y: i128) -> bool {
    match case {
        BasisCase::Rectangular => x % 2 == 0,
        BasisCase::Centered => (x - y) % 2 == 0,
    }
}

/// Orders two kernel candidates by squared radius, then by key.
pub fn cmp_candidates(a: &KernelKey, b: &KernelKey) -> core::cmp::Ordering {
    cmp_frac_i128(a[4], a[5], b[4], b[5]).then_with(|| a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::{circumcircle, count_on_circle};
    use crate::lattice::{LatticePoint, LatticeSpec};
    use alloc::vec::Vec;

    #[test]
    fn agrees_with_exact_geometry() {
        for s in LatticeSpec::all() {
            let d = s.d() as i128;
            let mut checked = 0;
            for a2 in -3..=3 {
                for b2 in -3..=3 {
                    for (a3, b3) in [(2, -1), (-3, 2), (1, 3), (4, 4), (-2, -3)] {
                        let p = LatticePoint::new(a2, b2);
                        let q = LatticePoint::new(a3, b3);
                        let exact = circumcircle(&s, LatticePoint::ORIGIN, p, q);
                        let fast = OriginCircle::through(d, s.to_half(p), s.to_half(q));
                        match (exact, fast) {
                            (Err(_), None) => {}
                            (Ok(c), Some(f)) => {
                                assert_eq!(f.to_circle(d), c);
                                let key = f.key(d);
                                let big = c.key();
                                for (i, x) in key.iter().enumerate() {
                                    assert_eq!(num_bigint::BigInt::from(*x), big.0[i]);
                                }
                                let mut pts = Vec::new();
                                assert!(f.scan(d, s.basis_case(), |h| {
                                    pts.push(s.from_half(h).unwrap());
                                    true
                                }));
                                let (n, mut exact_pts) = count_on_circle(&s, &c);
                                assert_eq!(pts.len(), n);
                                pts.sort();
                                exact_pts.sort();
                                assert_eq!(pts, exact_pts);
                                checked += 1;
                            }
                            (e, f) => panic!("disagree: {e:?} {f:?}"),
                        }
                    }
                }
            }
            assert!(checked > 100);
        }
    }

    #[test]
    fn scan_order_is_row_major() {
        let s = LatticeSpec::new(1).unwrap();
        // Circle through (0,0), (5,0), (0,5) in basis coordinates.
        let f = OriginCircle::through(1, s.to_half(LatticePoint::new(5, 0)), s.to_half(LatticePoint::new(0, 5)))
            .unwrap();
        let mut seen = Vec::new();
        f.scan(1, s.basis_case(), |h| {
            seen.push((h.y, h.x));
            true
        });
        let mut sorted = seen.clone();
        sorted.sort();
        assert_eq!(seen, sorted);
        assert!(seen.len() >= 3);
    }
}
