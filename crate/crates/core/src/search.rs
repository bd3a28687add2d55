//! Search for the smallest circle through exactly `n` lattice points.
//!
//! Every circle through at least three lattice points can be translated by
//! a lattice vector so that one of its points is the origin; it then lies
//! inside the disk of radius `2 sqrt(D)` around the origin, and one of the
//! four images under [`Isometry`](crate::lattice::Isometry) has a further
//! point in the closed first quadrant. A pass therefore fixes `p1 = 0`, runs
//! `p2` over the quadrant part of the search disk and `p3` over the whole
//! disk, and counts the circle through `(0, p2, p3)`.
//!
//! A circle through the origin is reported from one generating pair only:
//! among its points inside the search region, `p2` must be the first
//! quadrant point and `p3` the first point other than `0` and `p2`, both in
//! `(y', x)` order. Points outside the region cannot generate the circle,
//! so they must not disqualify a pair; in certified mode there are none.
//! The count scan visits points in exactly that order, so a non-canonical
//! pair is detected (and the scan abandoned) as soon as an earlier point
//! turns up. This deduplicates without storing keys.
//!
//! In certified mode the region is the disk `x^2 + d y'^2 <= 4B` and
//! circles with `D > B` are dropped, so every minimum found is global.
//! Heuristic mode is the procedure of the paper's Section 2: the region is
//! `x^2 + y'^2 <= l^2` (the `y` coordinate counted in units of `sqrt(d)`),
//! with no limit on `D`, and yields upper bounds. That region contains the
//! Euclidean disk of radius `l`, and for `d = 1` it is that disk.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::arith::{self, cmp_frac_i128, BigRat};
use crate::circle::{count_on_circle, Circle};
use crate::kernel::{cmp_candidates, KernelKey, OriginCircle, MAX_NORM};
use crate::lattice::{in_sector, HalfPoint, LatticePoint, LatticeSpec};

/// Cap on the certified bound when none is configured.
pub const DEFAULT_BOUND_CAP: i64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SearchMode {
    /// Iterative deepening on an upper bound `B` for the squared radius.
    Certified,
    /// A single pass over a disk of fixed radius `l`.
    Heuristic,
}

impl SearchMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchMode::Certified => "certified",
            SearchMode::Heuristic => "heuristic",
        }
    }
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub mode: SearchMode,
    /// Certified: initial bound `B` on `D`. Heuristic: region radius `l`.
    pub bound: BigRat,
    /// Certified only: largest `B` tried before giving up.
    pub bound_cap: BigRat,
}

impl SearchConfig {
    pub fn certified(bound: BigRat) -> Self {
        SearchConfig {
            mode: SearchMode::Certified,
            bound,
            bound_cap: arith::rat_int(DEFAULT_BOUND_CAP),
        }
    }

    pub fn heuristic(ell: BigRat) -> Self {
        SearchConfig {
            mode: SearchMode::Heuristic,
            bound: ell.clone(),
            bound_cap: ell,
        }
    }

    pub fn with_cap(mut self, cap: BigRat) -> Self {
        self.bound_cap = cap;
        self
    }

    fn validate(&self) -> Result<(), SearchError> {
        if !self.bound.is_positive() {
            return Err(SearchError::InvalidConfig("bound must be positive"));
        }
        if self.mode == SearchMode::Certified && self.bound_cap < self.bound {
            return Err(SearchError::InvalidConfig("bound cap is below the initial bound"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchError {
    /// Only `n >= 3` has an attained minimum.
    UnsupportedN(usize),
    /// No circle with exactly `n` points was found within the bound.
    BoundExhausted {
        n: usize,
        /// Smallest squared radius seen for `n` beyond the certified bound,
        /// if any.
        best_upper_bound: Option<BigRat>,
        bound: BigRat,
    },
    InvalidConfig(&'static str),
    /// An internal consistency check failed.
    Integrity(&'static str),
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::UnsupportedN(n) => {
                write!(f, "n = {n} is not supported; the minimum is only attained for n >= 3")
            }
            SearchError::BoundExhausted {
                n,
                best_upper_bound,
                bound,
            } => {
                write!(f, "no circle through exactly {n} points found within bound {bound}")?;
                match best_upper_bound {
                    Some(b) => write!(f, " (best upper bound {b})"),
                    None => f.write_str(" (no upper bound found)"),
                }
            }
            SearchError::InvalidConfig(msg) => write!(f, "invalid search configuration: {msg}"),
            SearchError::Integrity(msg) => write!(f, "internal integrity check failed: {msg}"),
        }
    }
}

impl core::error::Error for SearchError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UcResult {
    pub lattice_d: u32,
    pub n: usize,
    pub min_radius2: BigRat,
    pub witness: Circle,
    pub witness_points: Vec<LatticePoint>,
    pub certified: bool,
    pub mode: SearchMode,
    /// Certified: the bound `B` of the pass that found the minimum.
    /// Heuristic: the region radius `l`.
    pub bound_used: BigRat,
}

impl UcResult {
    /// Squared radius of a Euclidean disk around the origin inside the
    /// region that was searched for `p2`, `p3`.
    pub fn search_disk_radius2(&self) -> BigRat {
        search_disk_radius2(self.mode, &self.bound_used)
    }
}

fn search_disk_radius2(mode: SearchMode, bound: &BigRat) -> BigRat {
    match mode {
        SearchMode::Certified => bound * BigInt::from(4),
        SearchMode::Heuristic => bound * bound,
    }
}

/// Whether the disk searched for `candidate` was wide enough to contain a
/// translate of every circle with squared radius at most
/// `candidate.min_radius2`: any chord of such a circle is at most
/// `2 sqrt(D)` long.
pub fn certify_completeness(_spec: &LatticeSpec, candidate: &UcResult) -> bool {
    candidate.search_disk_radius2() >= &candidate.min_radius2 * BigInt::from(4)
}

/// The best circle seen for one count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Candidate {
    pub circle: OriginCircle,
    pub key: KernelKey,
}

impl Candidate {
    /// `(numerator, denominator)` of the squared radius, reduced.
    pub fn radius2(&self) -> (i128, i128) {
        (self.key[4], self.key[5])
    }
}

/// Per-count minima of a pass, mergeable in any order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Bins {
    best: BTreeMap<usize, Candidate>,
    /// Generating pairs examined.
    pub pairs: u64,
    /// Distinct circles reported.
    pub circles: u64,
}

impl Bins {
    pub fn get(&self, n: usize) -> Option<&Candidate> {
        self.best.get(&n)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Candidate)> {
        self.best.iter().map(|(n, c)| (*n, c))
    }

    /// Keeps `cand` for `n` if it beats the current entry. Returns whether
    /// it did.
    pub fn offer(&mut self, n: usize, cand: Candidate) -> bool {
        match self.best.get(&n) {
            Some(cur) if cmp_candidates(&cand.key, &cur.key) != Ordering::Less => false,
            _ => {
                self.best.insert(n, cand);
                true
            }
        }
    }

    pub fn merge(&mut self, other: Bins) {
        self.pairs += other.pairs;
        self.circles += other.circles;
        for (n, c) in other.best {
            self.offer(n, c);
        }
    }

    /// Largest minimum over `lo..=hi`, once every count in range has a
    /// candidate. No circle above it can change the answer.
    pub fn prune_threshold(&self, lo: usize, hi: usize) -> Option<(i128, i128)> {
        let mut worst: Option<(i128, i128)> = None;
        for n in lo..=hi {
            let r = self.best.get(&n)?.radius2();
            worst = match worst {
                Some(w) if cmp_frac_i128(w.0, w.1, r.0, r.1) != Ordering::Less => Some(w),
                _ => Some(r),
            };
        }
        worst
    }
}

/// Counts of interest for a pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountRange {
    pub lo: usize,
    pub hi: usize,
}

/// One enumeration over a fixed disk.
#[derive(Debug, Clone)]
pub struct SearchPass {
    spec: LatticeSpec,
    d: i128,
    points: Vec<HalfPoint>,
    norms: Vec<i128>,
    sector: Vec<usize>,
    /// The search region is `X^2 + y_weight Y^2 <= norm_limit`.
    norm_limit: i128,
    y_weight: i128,
    /// Certified passes drop circles with `D > B = (num, den)`.
    radius2_limit: Option<(i128, i128)>,
    mode: SearchMode,
    bound: BigRat,
}

/// A circle reported by an enumeration, in kernel form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Found {
    pub circle: OriginCircle,
    pub count: usize,
}

impl SearchPass {
    pub fn new(spec: &LatticeSpec, mode: SearchMode, bound: &BigRat) -> Result<Self, SearchError> {
        if !bound.is_positive() {
            return Err(SearchError::InvalidConfig("bound must be positive"));
        }
        // Region X^2 + w Y^2 <= norm_limit in doubled coordinates, where
        // w = d makes it a Euclidean disk and w = 1 the Section 2 region.
        let (limit, y_weight) = match mode {
            SearchMode::Certified => (bound * BigInt::from(16), spec.d() as i128),
            SearchMode::Heuristic => (bound * bound * BigInt::from(4), 1),
        };
        let norm_limit = arith::rat_floor(&limit);
        let norm_limit = match norm_limit.to_i128() {
            Some(v) if v <= MAX_NORM => v,
            _ => return Err(SearchError::InvalidConfig("search disk too large")),
        };
        let radius2_limit = match mode {
            SearchMode::Certified => Some(
                arith::rat_to_i128(bound)
                    .ok_or(SearchError::InvalidConfig("bound does not fit machine integers"))?,
            ),
            SearchMode::Heuristic => None,
        };
        let d = spec.d() as i128;
        let mut points = Vec::new();
        let y_max = arith::isqrt_i128(norm_limit / y_weight);
        for y in -y_max..=y_max {
            let rest = norm_limit - y_weight * y * y;
            let x_max = arith::isqrt_i128(rest);
            for x in -x_max..=x_max {
                let h = HalfPoint {
                    x: x as i64,
                    y: y as i64,
                };
                if (x, y) != (0, 0) && spec.is_lattice_half(h) {
                    points.push(h);
                }
            }
        }
        let norms = points
            .iter()
            .map(|h| (h.x as i128).pow(2) + d * (h.y as i128).pow(2))
            .collect();
        let sector = (0..points.len()).filter(|&i| in_sector(points[i])).collect();
        Ok(SearchPass {
            spec: *spec,
            d,
            points,
            norms,
            sector,
            norm_limit,
            y_weight,
            radius2_limit,
            mode,
            bound: bound.clone(),
        })
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn mode(&self) -> SearchMode {
        self.mode
    }

    pub fn bound(&self) -> &BigRat {
        &self.bound
    }

    /// Number of independent partitions (one per `p2`).
    pub fn partitions(&self) -> usize {
        self.sector.len()
    }

    /// Lattice points of the search disk, origin excluded.
    pub fn disk_len(&self) -> usize {
        self.points.len()
    }

    /// Visits the canonical circles generated with the `part`-th `p2`.
    ///
    /// Circles with more than `max_count` points, or with squared radius
    /// above `prune` (as an exact fraction), are skipped. Returns the number
    /// of pairs examined.
    pub fn visit_partition(
        &self,
        part: usize,
        max_count: usize,
        mut prune: Option<(i128, i128)>,
        mut update_prune: impl FnMut(&Found) -> Option<(i128, i128)>,
        mut on_found: impl FnMut(&Found),
    ) -> u64 {
        let d = self.d;
        let case = self.spec.basis_case();
        let pi = self.sector[part];
        let p = self.points[pi];
        let (px, py, np) = (p.x as i128, p.y as i128, self.norms[pi]);
        let mut pairs = 0u64;
        for (qi, &q) in self.points.iter().enumerate() {
            if qi == pi {
                continue;
            }
            pairs += 1;
            let Some(circle) =
                OriginCircle::from_parts(px, py, np, q.x as i128, q.y as i128, self.norms[qi])
            else {
                continue;
            };
            let (m, den) = circle.radius2_frac(d);
            if let Some((bn, bd)) = self.radius2_limit {
                if cmp_frac_i128(m, den, bn, bd) == Ordering::Greater {
                    continue;
                }
            }
            if let Some((tn, td)) = prune {
                if cmp_frac_i128(m, den, tn, td) == Ordering::Greater {
                    continue;
                }
            }
            let mut count = 0usize;
            let mut seen_p = false;
            let mut seen_other = false;
            let complete = circle.scan(d, case, |h| {
                // Canonicity is judged among the circle's points inside the
                // region, since only those can generate it. (In certified
                // mode that is all of them.)
                let inside = (h.x as i128)
                    .pow(2)
                    .saturating_add(self.y_weight.saturating_mul((h.y as i128).pow(2)))
                    <= self.norm_limit;
                if h == p {
                    seen_p = true;
                } else if inside && (h.x != 0 || h.y != 0) {
                    if !seen_p && in_sector(h) {
                        return false;
                    }
                    if !seen_other {
                        if h != q {
                            return false;
                        }
                        seen_other = true;
                    }
                }
                count += 1;
                count <= max_count
            });
            if complete {
                let found = Found { circle, count };
                on_found(&found);
                if let Some(t) = update_prune(&found) {
                    prune = Some(match prune {
                        Some(old) if cmp_frac_i128(old.0, old.1, t.0, t.1) != Ordering::Greater => old,
                        _ => t,
                    });
                }
            }
        }
        pairs
    }

    /// Per-count minima over `range` for one partition, tightening the
    /// prune threshold as candidates appear.
    pub fn run_partition(&self, part: usize, range: CountRange, prune: Option<(i128, i128)>) -> Bins {
        let d = self.d;
        let bins = core::cell::RefCell::new(Bins::default());
        let pairs = self.visit_partition(
            part,
            range.hi,
            prune,
            |_| bins.borrow().prune_threshold(range.lo, range.hi),
            |f| {
                let mut b = bins.borrow_mut();
                b.circles += 1;
                if f.count >= range.lo {
                    b.offer(
                        f.count,
                        Candidate {
                            circle: f.circle,
                            key: f.circle.key(d),
                        },
                    );
                }
            },
        );
        let mut bins = bins.into_inner();
        bins.pairs = pairs;
        bins
    }
}

/// Drives the partitions of a pass and merges their bins.
pub trait PassRunner {
    fn run(&self, pass: &SearchPass, range: CountRange) -> Bins;
}

/// Runs partitions one after another, feeding the running prune threshold
/// into each.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl PassRunner for Sequential {
    fn run(&self, pass: &SearchPass, range: CountRange) -> Bins {
        let mut bins = Bins::default();
        for part in 0..pass.partitions() {
            let prune = bins.prune_threshold(range.lo, range.hi);
            let local = pass.run_partition(part, range, prune);
            bins.merge(local);
        }
        bins
    }
}

/// A circle of an enumeration together with its lattice points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumeratedCircle {
    pub circle: Circle,
    pub count: usize,
    pub points: Vec<LatticePoint>,
}

/// Every canonical circle of one pass of `cfg` (no iterative deepening),
/// each reported once.
pub fn enumerate_circles(spec: &LatticeSpec, cfg: &SearchConfig) -> Result<Vec<EnumeratedCircle>, SearchError> {
    cfg.validate()?;
    let pass = SearchPass::new(spec, cfg.mode, &cfg.bound)?;
    let d = pass.d;
    let mut out = Vec::new();
    for part in 0..pass.partitions() {
        pass.visit_partition(
            part,
            usize::MAX,
            None,
            |_| None,
            |f| {
                let mut points = Vec::with_capacity(f.count);
                f.circle.scan(d, spec.basis_case(), |h| {
                    points.push(spec.from_half(h).expect("scan yields lattice points"));
                    true
                });
                out.push(EnumeratedCircle {
                    circle: f.circle.to_circle(d),
                    count: f.count,
                    points,
                });
            },
        );
    }
    Ok(out)
}

/// `uc(spec, n)`: squared radius of the smallest circle through exactly `n`
/// lattice points.
pub fn uc(spec: &LatticeSpec, n: usize, cfg: &SearchConfig) -> Result<UcResult, SearchError> {
    uc_with(spec, n, cfg, &Sequential)
}

pub fn uc_with<R: PassRunner>(
    spec: &LatticeSpec,
    n: usize,
    cfg: &SearchConfig,
    runner: &R,
) -> Result<UcResult, SearchError> {
    uc_table_with(spec, n, n, cfg, runner)?
        .pop()
        .expect("one entry per n")
}

/// `uc(spec, n)` for every `n` in `n_lo..=n_hi` from shared enumerations.
/// Counts that could not be resolved come back as
/// [`SearchError::BoundExhausted`] entries.
pub fn uc_table(
    spec: &LatticeSpec,
    n_lo: usize,
    n_hi: usize,
    cfg: &SearchConfig,
) -> Result<Vec<Result<UcResult, SearchError>>, SearchError> {
    uc_table_with(spec, n_lo, n_hi, cfg, &Sequential)
}

pub fn uc_table_with<R: PassRunner>(
    spec: &LatticeSpec,
    n_lo: usize,
    n_hi: usize,
    cfg: &SearchConfig,
    runner: &R,
) -> Result<Vec<Result<UcResult, SearchError>>, SearchError> {
    if n_lo < 3 {
        return Err(SearchError::UnsupportedN(n_lo));
    }
    if n_hi < n_lo {
        return Err(SearchError::InvalidConfig("empty range of n"));
    }
    cfg.validate()?;

    let mut results: BTreeMap<usize, Result<UcResult, SearchError>> = BTreeMap::new();
    match cfg.mode {
        SearchMode::Heuristic => {
            let pass = SearchPass::new(spec, cfg.mode, &cfg.bound)?;
            let bins = runner.run(&pass, CountRange { lo: n_lo, hi: n_hi });
            for n in n_lo..=n_hi {
                let entry = match bins.get(n) {
                    Some(c) => build_result(spec, n, c, false, &pass),
                    None => Err(SearchError::BoundExhausted {
                        n,
                        best_upper_bound: None,
                        bound: cfg.bound.clone(),
                    }),
                };
                results.insert(n, entry);
            }
        }
        SearchMode::Certified => {
            let mut remaining: Vec<usize> = (n_lo..=n_hi).collect();
            let mut bound = cfg.bound.clone();
            loop {
                let pass = SearchPass::new(spec, cfg.mode, &bound)?;
                let range = CountRange {
                    lo: remaining[0],
                    hi: *remaining.last().unwrap(),
                };
                let bins = runner.run(&pass, range);
                remaining.retain(|&n| match bins.get(n) {
                    Some(c) => {
                        results.insert(n, build_result(spec, n, c, true, &pass));
                        false
                    }
                    None => true,
                });
                if remaining.is_empty() {
                    break;
                }
                if bound >= cfg.bound_cap {
                    for &n in &remaining {
                        results.insert(
                            n,
                            Err(SearchError::BoundExhausted {
                                n,
                                best_upper_bound: None,
                                bound: bound.clone(),
                            }),
                        );
                    }
                    break;
                }
                bound = (&bound * BigInt::from(2)).min(cfg.bound_cap.clone());
            }
        }
    }
    // Integrity failures abort the whole table.
    let mut out = Vec::with_capacity(results.len());
    for (_, r) in results {
        if let Err(e @ SearchError::Integrity(_)) = r {
            return Err(e);
        }
        out.push(r);
    }
    Ok(out)
}

fn build_result(
    spec: &LatticeSpec,
    n: usize,
    cand: &Candidate,
    certified: bool,
    pass: &SearchPass,
) -> Result<UcResult, SearchError> {
    let d = spec.d() as i128;
    let witness = cand.circle.to_circle(d);
    // Recount with the exact rational scan, independently of the kernel.
    let (count, witness_points) = count_on_circle(spec, &witness);
    if count != n {
        return Err(SearchError::Integrity("witness count differs from its bin"));
    }
    if witness_points.iter().any(|p| !witness.contains(spec, *p)) {
        return Err(SearchError::Integrity("witness point off its circle"));
    }
    let (rn, rd) = cand.radius2();
    let min_radius2 = arith::rat(rn, rd);
    if min_radius2 != witness.radius2 {
        return Err(SearchError::Integrity("bin radius differs from witness"));
    }
    Ok(UcResult {
        lattice_d: spec.d(),
        n,
        min_radius2,
        witness,
        witness_points,
        certified,
        mode: pass.mode,
        bound_used: pass.bound.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn spec(d: u32) -> LatticeSpec {
        LatticeSpec::new(d).unwrap()
    }

    #[test]
    fn certified_small_bounds() {
        let z2 = spec(1);
        let circles = enumerate_circles(&z2, &SearchConfig::certified(rat(1, 2))).unwrap();
        assert!(circles.iter().any(|c| c.circle.center == crate::lattice::QPoint::from_fracs((1, 2), (1, 2))
            && c.circle.radius2 == rat(1, 2)
            && c.count == 4));
        assert!(enumerate_circles(&z2, &SearchConfig::certified(rat(1, 4))).unwrap().is_empty());

        let e = spec(3);
        let circles = enumerate_circles(&e, &SearchConfig::certified(rat(1, 1))).unwrap();
        assert!(circles.iter().any(|c| c.circle.radius2 == rat(1, 1) && c.count == 6));
        assert!(circles.iter().any(|c| c.circle.radius2 == rat(1, 3) && c.count == 3));
    }

    #[test]
    fn small_uc_values() {
        let r = uc(&spec(1), 4, &SearchConfig::certified(rat(1, 1))).unwrap();
        assert_eq!(r.min_radius2, rat(1, 2));
        assert!(r.certified);
        assert_eq!(r.witness_points.len(), 4);

        let r = uc(&spec(1), 3, &SearchConfig::certified(rat(1, 1))).unwrap();
        assert_eq!(r.min_radius2, rat(25, 18));

        let r = uc(&spec(7), 3, &SearchConfig::certified(rat(1, 1))).unwrap();
        assert_eq!(r.min_radius2, rat(4, 7));
    }

    #[test]
    fn table_examples() {
        let vals = |d, lo, hi| -> Vec<BigRat> {
            uc_table(&spec(d), lo, hi, &SearchConfig::certified(rat(1, 1)))
                .unwrap()
                .into_iter()
                .map(|r| r.unwrap().min_radius2)
                .collect()
        };
        assert_eq!(vals(2, 3, 5), [rat(9, 8), rat(3, 4), rat(81, 8)]);
        assert_eq!(vals(11, 3, 4), [rat(9, 11), rat(15, 11)]);

        let capped = SearchConfig::certified(rat(1, 1)).with_cap(rat(1, 1));
        let t = uc_table(&spec(1), 3, 3, &capped).unwrap();
        assert_eq!(
            t[0],
            Err(SearchError::BoundExhausted {
                n: 3,
                best_upper_bound: None,
                bound: rat(1, 1)
            })
        );
    }

    #[test]
    fn rejects_small_n_and_bad_config() {
        let cfg = SearchConfig::certified(rat(1, 1));
        assert_eq!(uc(&spec(1), 2, &cfg), Err(SearchError::UnsupportedN(2)));
        assert_eq!(uc(&spec(1), 0, &cfg), Err(SearchError::UnsupportedN(0)));
        assert!(matches!(
            uc(&spec(1), 4, &SearchConfig::certified(rat(0, 1))),
            Err(SearchError::InvalidConfig(_))
        ));
        assert!(matches!(
            uc(&spec(1), 4, &SearchConfig::certified(rat(4, 1)).with_cap(rat(2, 1))),
            Err(SearchError::InvalidConfig(_))
        ));
    }

    fn fake(mode: SearchMode, d: u32, n: usize, r2: BigRat, bound: BigRat) -> UcResult {
        UcResult {
            lattice_d: d,
            n,
            min_radius2: r2.clone(),
            witness: Circle::new(crate::lattice::QPoint::origin(), r2).unwrap(),
            witness_points: Vec::new(),
            certified: false,
            mode,
            bound_used: bound,
        }
    }

    #[test]
    fn completeness_examples() {
        let h = SearchMode::Heuristic;
        assert!(certify_completeness(&spec(1), &fake(h, 1, 4, rat(1, 2), rat(2, 1))));
        assert!(!certify_completeness(&spec(1), &fake(h, 1, 10, rat(625, 4), rat(10, 1))));
        assert!(certify_completeness(&spec(3), &fake(h, 3, 6, rat(1, 1), rat(2, 1))));
        // Certified passes search radius 2 sqrt(B).
        let c = SearchMode::Certified;
        assert!(certify_completeness(&spec(1), &fake(c, 1, 4, rat(1, 2), rat(1, 2))));
        assert!(!certify_completeness(&spec(1), &fake(c, 1, 4, rat(1, 1), rat(1, 2))));
    }

    #[test]
    fn emitted_keys_are_distinct() {
        for s in LatticeSpec::all() {
            let circles = enumerate_circles(&s, &SearchConfig::certified(rat(12, 1))).unwrap();
            let mut keys: Vec<_> = circles.iter().map(|c| c.circle.key()).collect();
            let total = keys.len();
            keys.sort();
            keys.dedup();
            assert_eq!(keys.len(), total, "d = {}", s.d());
            for c in &circles {
                assert!(c.count >= 3);
                assert_eq!(c.points.len(), c.count);
                assert!(c.points.contains(&LatticePoint::ORIGIN));
                assert!(c.circle.radius2 <= rat(12, 1));
            }
        }
    }
}
