//! Table 1 of the paper, embedded as reduced fractions.
//!
//! The paper writes `a/b\cdot c` for `a/(b c)`: uc(Z^2, 4) = 1/2 and
//! uc(Z^2, 8) = 5/2 agree with Theorem 1.3 only under that reading. Each
//! entry keeps the paper's notation next to the fraction; a unit test parses
//! the notation and checks the two agree.

use concyclic_core::BigRat;
use num_bigint::BigInt;

/// Smallest and largest `n` covered by Table 1.
pub const N_LO: usize = 3;
pub const N_HI: usize = 10;

/// One cell: reduced `(numerator, denominator)` and the paper's notation.
#[derive(Debug, Clone, Copy)]
pub struct GoldenCell {
    pub num: i64,
    pub den: i64,
    pub paper: &'static str,
}

const fn c(num: i64, den: i64, paper: &'static str) -> GoldenCell {
    GoldenCell { num, den, paper }
}

/// Rows in the paper's order; columns are n = 3..=10.
pub const TABLE1: [(u32, [GoldenCell; 8]); 9] = [
    (
        1,
        [
            c(25, 18, r"5^2/2\cdot3^2"),
            c(1, 2, r"1/2"),
            c(625, 18, r"5^4/2\cdot3^2"),
            c(25, 4, r"5^2/2^2"),
            c(138125, 242, r"5^4\cdot13\cdot17/2\cdot11^2"),
            c(5, 2, r"5/2"),
            c(4225, 18, r"5^2\cdot13^2/2\cdot3^2"),
            c(625, 4, r"5^4/2^2"),
        ],
    ),
    (
        2,
        [
            c(9, 8, r"3^2/2^3"),
            c(3, 4, r"3/2^2"),
            c(81, 8, r"3^4/2^3"),
            c(9, 4, r"3^2/2^2"),
            c(729, 8, r"3^6/2^3"),
            c(27, 4, r"3^3/2^2"),
            c(1089, 8, r"3^2\cdot11^2/2^3"),
            c(81, 4, r"3^4/2^2"),
        ],
    ),
    (
        3,
        [
            c(1, 3, r"1/3"),
            c(7, 4, r"7/2^2"),
            c(8281, 121, r"7^2\cdot13^2/11^2"),
            c(1, 1, r"1"),
            c(520429, 363, r"7^2\cdot13\cdot19\cdot43/3\cdot11^2"),
            c(91, 4, r"7\cdot13/2^2"),
            c(49, 3, r"7^2/3"),
            c(2401, 4, r"7^4/2^2"),
        ],
    ),
    (
        7,
        [
            c(4, 7, r"2^2/7"),
            c(8, 7, r"2^3/7"),
            c(16, 7, r"2^4/7"),
            c(4, 1, r"2^2"),
            c(64, 7, r"2^6/7"),
            c(8, 1, r"2^3"),
            c(256, 7, r"2^8/7"),
            c(16, 1, r"2^4"),
        ],
    ),
    (
        11,
        [
            c(9, 11, r"3^2/11"),
            c(15, 11, r"3\cdot5/11"),
            c(81, 11, r"3^4/11"),
            c(45, 11, r"3^2\cdot5/11"),
            c(729, 11, r"3^6/11"),
            c(135, 11, r"3^3\cdot5/11"),
            c(225, 11, r"3^2\cdot5^2/11"),
            c(405, 11, r"3^4\cdot 5/11"),
        ],
    ),
    (
        19,
        [
            c(25, 19, r"5^2/19"),
            c(35, 19, r"5\cdot7/19"),
            c(625, 19, r"5^4/19"),
            c(175, 19, r"5^2\cdot7/19"),
            c(45815, 171, r"5\cdot7^2\cdot11\cdot17/3^2\cdot19"),
            c(385, 19, r"5\cdot7\cdot11/19"),
            c(1225, 19, r"5^2\cdot7^2/19"),
            c(4375, 19, r"5^4\cdot 7/19"),
        ],
    ),
    (
        43,
        [
            c(121, 43, r"11^2/43"),
            c(143, 43, r"11\cdot13/43"),
            c(55913, 172, r"11\cdot13\cdot17\cdot23/2^2\cdot43"),
            c(1573, 43, r"11^2\cdot13/43"),
            c(726869, 387, r"11\cdot13^2\cdot17\cdot23/3^2\cdot43"),
            c(2431, 43, r"11\cdot13\cdot17/43"),
            c(20449, 43, r"11^2\cdot13^2/43"),
            c(190333, 43, r"11^4\cdot 13/43"),
        ],
    ),
    (
        67,
        [
            c(289, 67, r"17^2/67"),
            c(323, 67, r"17\cdot19/67"),
            c(215441, 268, r"17\cdot19\cdot23\cdot29/2^2\cdot67"),
            c(5491, 67, r"17^2\cdot19/67"),
            c(4093379, 603, r"17\cdot19^2\cdot23\cdot29/3^2\cdot67"),
            c(7429, 67, r"17\cdot19\cdot23/67"),
            c(104329, 67, r"17^2\cdot19^2/67"),
            c(1586899, 67, r"17^4\cdot 19/67"),
        ],
    ),
    (
        163,
        [
            c(1681, 163, r"41^2/163"),
            c(1763, 163, r"41\cdot43/163"),
            c(6880129, 1467, r"43^2\cdot61^2/3^2\cdot163"),
            c(72283, 163, r"41^2\cdot43/163"),
            c(633750899, 5868, r"41\cdot43\cdot61\cdot71\cdot83 / 2^2\cdot3^2\cdot163"),
            c(82861, 163, r"41\cdot43\cdot47/163"),
            c(3108169, 163, r"41^2\cdot 43^2/163"),
            c(601857983, 1467, r"41\cdot47\cdot53\cdot71\cdot83 / 3^2\cdot163"),
        ],
    ),
];

impl GoldenCell {
    pub fn value(&self) -> BigRat {
        BigRat::new(BigInt::from(self.num), BigInt::from(self.den))
    }
}

/// The Table 1 cell for `(d, n)`, if the table has one.
pub fn golden_cell(d: u32, n: usize) -> Option<&'static GoldenCell> {
    if !(N_LO..=N_HI).contains(&n) {
        return None;
    }
    TABLE1
        .iter()
        .find(|(row_d, _)| *row_d == d)
        .map(|(_, row)| &row[n - N_LO])
}

pub fn golden(d: u32, n: usize) -> Option<BigRat> {
    golden_cell(d, n).map(GoldenCell::value)
}

/// Evaluates the paper's notation: `num/den` where each side is a
/// `\cdot`-separated product of `p` or `p^e`, and everything after the
/// slash is the denominator.
pub fn parse_paper_notation(s: &str) -> Option<BigRat> {
    fn product(side: &str) -> Option<BigInt> {
        let mut acc = BigInt::from(1);
        for factor in side.split(r"\cdot") {
            let factor = factor.trim();
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim().parse::<u32>().ok()?),
                None => (factor, 1),
            };
            let base: BigInt = base.parse().ok()?;
            acc *= num_traits::pow(base, exp as usize);
        }
        Some(acc)
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (product(n)?, product(d)?),
        None => (product(s)?, BigInt::from(1)),
    };
    if den == BigInt::from(0) {
        return None;
    }
    Some(BigRat::new(num, den))
}
