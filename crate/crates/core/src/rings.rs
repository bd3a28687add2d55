//! Gaussian and Eisenstein integers: primes in progressions, norm
//! decompositions, representation counts, and the explicit circles with
//! `2^(l+2)` points on `Z^2` and `6 * 2^m` points on the hexagonal lattice.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::arith::{self, BigRat};
use crate::circle::{count_on_circle, Circle};
use crate::lattice::{LatticePoint, LatticeSpec, QPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingError {
    /// Input is not a prime of the form the decomposition needs.
    Inadmissible(u64),
    /// Product of primes does not fit in 64 bits.
    Overflow,
    /// A constructed circle does not have the predicted number of points.
    CountMismatch { expected: u64, found: u64 },
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::Inadmissible(p) => write!(f, "{p} is not an admissible prime"),
            RingError::Overflow => f.write_str("prime product overflows 64 bits"),
            RingError::CountMismatch { expected, found } => {
                write!(f, "circle has {found} lattice points, expected {expected}")
            }
        }
    }
}

impl core::error::Error for RingError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResidueClass {
    /// Primes `= 1 (mod 4)`, the split primes of `Z[i]`.
    OneModFour,
    /// Primes `= 1 (mod 3)`, the split primes of `Z[zeta]`.
    OneModThree,
}

impl ResidueClass {
    fn modulus(self) -> u64 {
        match self {
            ResidueClass::OneModFour => 4,
            ResidueClass::OneModThree => 3,
        }
    }
}

/// `1` followed by the primes of a residue class in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSequence {
    pub residue_class: ResidueClass,
    pub values: Vec<u64>,
}

impl PrimeSequence {
    /// `values[0] * ... * values[k]`.
    pub fn product_through(&self, k: usize) -> Result<u64, RingError> {
        self.values[..=k]
            .iter()
            .try_fold(1u64, |acc, &p| acc.checked_mul(p))
            .ok_or(RingError::Overflow)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut f = 3u64;
    while f.saturating_mul(f) <= n {
        if n % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

pub fn primes_in_class(class: ResidueClass, count: usize) -> PrimeSequence {
    let m = class.modulus();
    let mut values = Vec::with_capacity(count + 1);
    values.push(1);
    let mut p = 1u64;
    while values.len() <= count {
        p += m;
        if is_prime(p) {
            values.push(p);
        }
    }
    PrimeSequence {
        residue_class: class,
        values,
    }
}

/// `a + b i` with `a^2 + b^2` equal to 2 or a prime `= 1 (mod 4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaussFactor {
    pub a: i64,
    pub b: i64,
}

impl GaussFactor {
    pub fn norm(&self) -> i64 {
        self.a * self.a + self.b * self.b
    }
}

/// `a + b zeta` with `zeta = (1 + sqrt(-3)) / 2`, of norm `a^2 + ab + b^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EisensteinFactor {
    pub a: i64,
    pub b: i64,
}

impl EisensteinFactor {
    pub fn norm(&self) -> i64 {
        self.a * self.a + self.a * self.b + self.b * self.b
    }
}

fn exact_sqrt_u64(n: u64) -> Option<u64> {
    arith::exact_sqrt_i128(n as i128).map(|r| r as u64)
}

/// `p = a^2 + b^2` with `0 < a <= b`.
pub fn two_squares(p: u64) -> Result<GaussFactor, RingError> {
    if !is_prime(p) || !(p == 2 || p % 4 == 1) {
        return Err(RingError::Inadmissible(p));
    }
    let mut a = 1u64;
    while 2 * a * a <= p {
        if let Some(b) = exact_sqrt_u64(p - a * a) {
            return Ok(GaussFactor {
                a: a as i64,
                b: b as i64,
            });
        }
        a += 1;
    }
    unreachable!("every admissible prime is a sum of two squares")
}

/// `q = a^2 + ab + b^2` with `0 < a <= b`.
pub fn eisenstein_norm_decomp(q: u64) -> Result<EisensteinFactor, RingError> {
    if !is_prime(q) || q % 3 != 1 {
        return Err(RingError::Inadmissible(q));
    }
    // b = (-a + sqrt(4q - 3a^2)) / 2, and a <= b iff 3a^2 <= q.
    let mut a = 1u64;
    while 3 * a * a <= q {
        if let Some(r) = exact_sqrt_u64(4 * q - 3 * a * a) {
            if r > a && (r - a) % 2 == 0 {
                return Ok(EisensteinFactor {
                    a: a as i64,
                    b: ((r - a) / 2) as i64,
                });
            }
        }
        a += 1;
    }
    unreachable!("every admissible prime is a norm from Z[zeta]")
}

/// Number of `(X, Y)` with `X^2 + Y^2 = n`, optionally only both odd.
pub fn rep_count_gauss(n: u64, odd_only: bool) -> u64 {
    let n = n as i128;
    let s = arith::isqrt_i128(n);
    let mut count = 0;
    for x in -s..=s {
        if odd_only && x % 2 == 0 {
            continue;
        }
        if let Some(y) = arith::exact_sqrt_i128(n - x * x) {
            if odd_only && y % 2 == 0 {
                continue;
            }
            count += if y == 0 { 1 } else { 2 };
        }
    }
    count
}

/// Number of `(x, y)` with `x^2 + xy + y^2 = n`.
pub fn rep_count_eisenstein(n: u64) -> u64 {
    let n = n as i128;
    // 4n = (2y + x)^2 + 3x^2 bounds |x| by 2 sqrt(n/3).
    let s = arith::isqrt_i128(4 * n / 3) + 1;
    let mut count = 0;
    for x in -s..=s {
        let disc = 4 * n - 3 * x * x;
        let Some(r) = arith::exact_sqrt_i128(disc) else {
            continue;
        };
        // y = (-x +- r) / 2
        if (r - x) % 2 != 0 {
            continue;
        }
        count += if r == 0 { 1 } else { 2 };
    }
    count
}

/// An explicit circle with its verified point count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructedCircle {
    pub circle: Circle,
    pub count: u64,
    pub predicted: u64,
    pub points: Vec<LatticePoint>,
}

/// The circle `(x - 1/2)^2 + (y - 1/2)^2 = (1/2) p_0 ... p_l` on `Z^2`,
/// where `p_i` is the i-th prime `= 1 (mod 4)` and `p_0 = 1`.
pub fn thm2_gauss_circle(ell: usize) -> Result<ConstructedCircle, RingError> {
    let primes = primes_in_class(ResidueClass::OneModFour, ell);
    let prod = primes.product_through(ell)?;
    let z2 = LatticeSpec::new(1).expect("d = 1");
    let circle = Circle::new(
        QPoint::from_fracs((1, 2), (1, 2)),
        BigRat::new(BigInt::from(prod), BigInt::from(2)),
    )
    .expect("positive");
    let (found, points) = count_on_circle(&z2, &circle);
    let predicted = 1u64 << (ell + 2);
    let twice = prod.checked_mul(2).ok_or(RingError::Overflow)?;
    // (2x - 1)^2 + (2y - 1)^2 = 2 prod; every representation must be odd.
    let odd = rep_count_gauss(twice, true);
    let all = rep_count_gauss(twice, false);
    for count in [found as u64, odd, all] {
        if count != predicted {
            return Err(RingError::CountMismatch {
                expected: predicted,
                found: count,
            });
        }
    }
    Ok(ConstructedCircle {
        circle,
        count: found as u64,
        predicted,
        points,
    })
}

/// The origin-centred circle of squared radius `q_0 ... q_m` on the
/// hexagonal lattice, where `q_j` is the j-th prime `= 1 (mod 3)`.
pub fn thm2_eisenstein_circle(m: usize) -> Result<ConstructedCircle, RingError> {
    let primes = primes_in_class(ResidueClass::OneModThree, m);
    let prod = primes.product_through(m)?;
    let hex = LatticeSpec::new(3).expect("d = 3");
    let circle = Circle::new(QPoint::origin(), BigRat::from_integer(BigInt::from(prod))).expect("positive");
    let (found, points) = count_on_circle(&hex, &circle);
    let predicted = 6u64 << m;
    for count in [found as u64, rep_count_eisenstein(prod)] {
        if count != predicted {
            return Err(RingError::CountMismatch {
                expected: predicted,
                found: count,
            });
        }
    }
    Ok(ConstructedCircle {
        circle,
        count: found as u64,
        predicted,
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingVariant {
    Gauss,
    Eisenstein,
}

type Elem = (i128, i128);

fn gauss_mul(x: Elem, y: Elem) -> Elem {
    (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)
}

// (a + b zeta)(c + e zeta) with zeta^2 = zeta - 1.
fn eisenstein_mul(x: Elem, y: Elem) -> Elem {
    (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0 + x.1 * y.1)
}

/// Counts the elements of norm `2 p_1 ... p_k` in `Z[i]` (or `q_1 ... q_k`
/// in `Z[zeta]`) by building every product `unit * prod(pi_j or conj(pi_j))`
/// and collecting the distinct results.
///
/// For `Z[i]` the factor over 2 is `1 + i` or `1 - i`; the two differ by the
/// unit `-i`, so that choice never produces a new element and the total is
/// `4 * 2^(k+1) / 2 = 2^(k+2)`. For `Z[zeta]` the total is `6 * 2^k`.
pub fn rep_count_via_factorization(variant: RingVariant, k: usize) -> Result<u64, RingError> {
    let (mul, units, mut factors): (fn(Elem, Elem) -> Elem, Vec<Elem>, Vec<(Elem, Elem)>) = match variant {
        RingVariant::Gauss => {
            let primes = primes_in_class(ResidueClass::OneModFour, k);
            let mut factors = alloc::vec![((1, 1), (1, -1))];
            for &p in &primes.values[1..] {
                let g = two_squares(p)?;
                factors.push(((g.a as i128, g.b as i128), (g.a as i128, -g.b as i128)));
            }
            (gauss_mul, alloc::vec![(1, 0), (-1, 0), (0, 1), (0, -1)], factors)
        }
        RingVariant::Eisenstein => {
            let primes = primes_in_class(ResidueClass::OneModThree, k);
            let mut factors = Vec::new();
            for &q in &primes.values[1..] {
                let e = eisenstein_norm_decomp(q)?;
                let (a, b) = (e.a as i128, e.b as i128);
                // conj(a + b zeta) = (a + b) - b zeta
                factors.push(((a, b), (a + b, -b)));
            }
            let units = alloc::vec![(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)];
            (eisenstein_mul, units, factors)
        }
    };
    if factors.len() > 40 {
        return Err(RingError::Overflow);
    }
    let mut products: BTreeSet<Elem> = BTreeSet::new();
    let choices = 1u64 << factors.len();
    for &u in &units {
        for mask in 0..choices {
            let mut acc = u;
            for (j, (f, fc)) in factors.iter_mut().enumerate() {
                acc = mul(acc, if mask >> j & 1 == 1 { *fc } else { *f });
            }
            products.insert(acc);
        }
    }
    Ok(products.len() as u64)
}
