//! Property suites: circumcircle substitution, point-group invariance of
//! counting, embed/membership round trip, the parity lemma and the exact
//! rational laws. Run on their own with
//! `cargo test -p concyclic-core --test properties`.

use concyclic_core::arith::{rat_floor_sqrt, rat_sqrt_exact};
use concyclic_core::rings::{primes_in_class, rep_count_gauss, ResidueClass};
use concyclic_core::{
    circumcircle, count_on_circle, point_group, BigRat, GeomError, LatticePoint, LatticeSpec, QPoint,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

const DS: [u32; 9] = [1, 2, 3, 7, 11, 19, 43, 67, 163];

fn lattice() -> impl Strategy<Value = LatticeSpec> {
    proptest::sample::select(DS.to_vec()).prop_map(|d| LatticeSpec::new(d).unwrap())
}

fn point(r: i64) -> impl Strategy<Value = LatticePoint> {
    (-r..=r, -r..=r).prop_map(|(a, b)| LatticePoint::new(a, b))
}

fn rational() -> impl Strategy<Value = BigRat> {
    (any::<i64>(), 1..=i64::MAX).prop_map(|(n, d)| BigRat::new(BigInt::from(n), BigInt::from(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// The circumcircle passes through its three points, exactly.
    #[test]
    fn circumcircle_substitution(spec in lattice(), p1 in point(60), p2 in point(60), p3 in point(60)) {
        match circumcircle(&spec, p1, p2, p3) {
            Ok(c) => {
                for p in [p1, p2, p3] {
                    prop_assert_eq!(spec.dist2(&spec.embed(p), &c.center), c.radius2.clone());
                }
            }
            Err(GeomError::Collinear) => {
                // Collinear: the doubled signed area vanishes.
                let (q1, q2, q3) = (spec.embed(p1), spec.embed(p2), spec.embed(p3));
                let u = q2.sub(&q1);
                let v = q3.sub(&q1);
                prop_assert!((&u.x * &v.yp - &v.x * &u.yp).is_zero());
            }
            Err(e) => prop_assert!(false, "unexpected {:?}", e),
        }
    }

    /// Every lattice point maps back to its coordinates; shifted copies that
    /// leave the lattice are rejected.
    #[test]
    fn membership_round_trip(spec in lattice(), p in point(1_000_000)) {
        let q = spec.embed(p);
        prop_assert_eq!(spec.membership(&q), Some(p));
        let third = BigRat::new(BigInt::from(1), BigInt::from(3));
        let off = QPoint::new(&q.x + &third, q.yp.clone());
        prop_assert_eq!(spec.membership(&off), None);
    }

    /// Exact rational arithmetic: field laws and normal form.
    #[test]
    fn bigrat_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) / &b, a.clone());
        }
        let s = &a + &b;
        prop_assert!(s.denom().is_positive());
        prop_assert_eq!(s.numer().gcd(s.denom()), BigInt::from(1));
        // Exact square roots of squares, and floor square roots bracket.
        let sq = &a * &a;
        prop_assert_eq!(rat_sqrt_exact(&sq).unwrap(), Some(a.abs()));
        let r = rat_floor_sqrt(&sq).unwrap();
        let r_rat = BigRat::from_integer(r.clone());
        let r1 = BigRat::from_integer(r + 1);
        prop_assert!(&r_rat * &r_rat <= sq && sq < &r1 * &r1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// Counting commutes with the point group.
    #[test]
    fn count_is_point_group_invariant(spec in lattice(), p1 in point(40), p2 in point(40), p3 in point(40)) {
        let Ok(c) = circumcircle(&spec, p1, p2, p3) else { return Ok(()) };
        let (n, pts) = count_on_circle(&spec, &c);
        prop_assert!(n >= 3);
        for g in point_group(&spec) {
            let (m, mut img) = count_on_circle(&spec, &c.transformed(g));
            prop_assert_eq!(m, n);
            let mut expect: Vec<_> = pts.iter().map(|p| g.apply_lattice(&spec, *p)).collect();
            expect.sort();
            img.sort();
            prop_assert_eq!(img, expect);
        }
    }
}

/// Parity lemma of Section 3: every representation of `2 prod p_k` as a sum
/// of two squares has both terms odd.
#[test]
fn parity_lemma() {
    for l in 0..=6 {
        let n = 2 * primes_in_class(ResidueClass::OneModFour, l).product_through(l).unwrap();
        assert_eq!(rep_count_gauss(n, true), rep_count_gauss(n, false), "l={l}");
        assert_eq!(rep_count_gauss(n, true), 1 << (l + 2), "l={l}");
    }
}
