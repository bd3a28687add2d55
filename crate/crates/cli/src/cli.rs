//! Command-line surface: argument parsing, the cache-aware search driver,
//! and the five subcommands.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use concyclic_core::arith::approx_f64;
use concyclic_core::rings::{
    primes_in_class, thm2_eisenstein_circle, thm2_gauss_circle, ConstructedCircle, ResidueClass, RingError,
};
use concyclic_core::search::uc_table_with;
use concyclic_core::{
    count_on_circle, BigRat, Circle, LatticePoint, LatticeSpec, QPoint, SearchConfig, SearchError, SearchMode,
    UcResult,
};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::cache::{Cache, CacheError, CacheRecord};
use crate::golden::{self, golden_cell};
use crate::runner::Parallel;

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exit {
    Ok = 0,
    Usage = 1,
    BoundExhausted = 2,
    GoldenMismatch = 3,
    Integrity = 4,
}

/// Default heuristic region radius.
pub const DEFAULT_ELL: u32 = 50;
/// Environment variable naming the default cache file.
pub const CACHE_ENV: &str = "CONCYCLIC_CACHE";
pub const DEFAULT_CACHE: &str = "concyclic-cache.jsonl";

#[derive(Parser, Debug)]
#[command(
    name = "concyclic",
    version,
    about = "Smallest circles through exactly n points of the class-number-one quadratic lattices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute uc(d, n) for the given lattices and counts.
    Uc(UcArgs),
    /// Reproduce Table 1 (rows d, columns uc(3)..uc(10)).
    Table(TableArgs),
    /// Build and verify the circles of Theorem 1.3.
    Thm2(Thm2Args),
    /// Count the lattice points on one circle.
    Count(CountArgs),
    /// Tabulate uc(Z^2, 4n) or uc(Eisenstein, 6n) for n = 1..K.
    Sequence(SequenceArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeArg {
    Certified,
    Heuristic,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Md,
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Gauss,
    Eisenstein,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    #[value(name = "gauss-4n")]
    Gauss4n,
    #[value(name = "eisenstein-6n")]
    Eisenstein6n,
}

/// A list of supported `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DList(pub Vec<u32>);

/// Inclusive range of counts `n >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange(pub usize, pub usize);

/// A point given by its two rational coordinates `x0, y0'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPair(pub BigRat, pub BigRat);

#[derive(Args, Debug, Clone)]
pub struct SearchOpts {
    /// Search mode; defaults to certified, or heuristic for d = 67, 163.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Heuristic region radius l (default 50).
    #[arg(long)]
    pub ell: Option<u32>,
    /// Certified initial bound B on D, as num/den (default 1).
    #[arg(long, value_parser = parse_positive_rat)]
    pub bound: Option<BigRat>,
    /// Certified: largest B tried before giving up (default 65536).
    #[arg(long = "bound-cap", value_parser = parse_positive_rat)]
    pub bound_cap: Option<BigRat>,
    /// Use certified mode for d = 67 and 163 too.
    #[arg(long)]
    pub force_certified: bool,
    /// Worker threads for the search (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct CacheOpts {
    /// Results cache (JSON lines). Default: $CONCYCLIC_CACHE or ./concyclic-cache.jsonl.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Neither read nor write the cache.
    #[arg(long, conflicts_with = "cache")]
    pub no_cache: bool,
}

#[derive(Args, Debug, Clone)]
pub struct OutputOpts {
    #[arg(long, value_enum, default_value = "md")]
    pub format: Format,
    /// Also print decimal approximations (Markdown only, marked with ≈).
    #[arg(long)]
    pub approx: bool,
}

#[derive(Args, Debug)]
pub struct UcArgs {
    /// Lattice(s): one of 1,2,3,7,11,19,43,67,163, or a comma list.
    #[arg(long, value_parser = parse_d_list)]
    pub d: DList,
    /// Count(s): `n` or `lo..hi` (inclusive), n >= 3.
    #[arg(long, value_parser = parse_n_range)]
    pub n: NRange,
    #[command(flatten)]
    pub search: SearchOpts,
    #[command(flatten)]
    pub cache: CacheOpts,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Rows (default: all nine lattices).
    #[arg(long, value_parser = parse_d_list)]
    pub d: Option<DList>,
    /// Columns (default 3..10).
    #[arg(long, value_parser = parse_n_range)]
    pub n: Option<NRange>,
    /// Compare with the embedded Table 1; exit 3 on any difference.
    #[arg(long)]
    pub check: bool,
    #[command(flatten)]
    pub search: SearchOpts,
    #[command(flatten)]
    pub cache: CacheOpts,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args, Debug)]
pub struct Thm2Args {
    #[arg(long, value_enum)]
    pub variant: Variant,
    /// Index l (Gauss) or m (Eisenstein), 0..=10.
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value = "md")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[arg(long, value_parser = parse_single_d)]
    pub d: u32,
    /// Center `x0,y0'`: the point (x0, y0' sqrt(d)), as fractions.
    #[arg(long, value_parser = parse_rat_pair, allow_hyphen_values = true)]
    pub center: RatPair,
    /// Squared radius as num/den.
    #[arg(long, value_parser = parse_rat)]
    pub r2: BigRat,
    #[arg(long, value_enum, default_value = "md")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SequenceArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Largest index K (rows n = 1..K).
    #[arg(long, alias = "max")]
    pub k: usize,
    /// Certified initial bound B (default 1).
    #[arg(long, value_parser = parse_positive_rat)]
    pub bound: Option<BigRat>,
    /// Largest B tried before giving up (default 65536).
    #[arg(long = "bound-cap", value_parser = parse_positive_rat)]
    pub bound_cap: Option<BigRat>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[command(flatten)]
    pub cache: CacheOpts,
    #[arg(long, value_enum, default_value = "md")]
    pub format: Format,
}

// ---------------------------------------------------------------------------
// Value parsers

pub fn parse_rat(s: &str) -> Result<BigRat, String> {
    let s = s.trim();
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let num: BigInt = n.trim().parse().map_err(|_| format!("not a fraction: {s:?}"))?;
    let den: BigInt = d.trim().parse().map_err(|_| format!("not a fraction: {s:?}"))?;
    if den == BigInt::from(0) {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRat::new(num, den))
}

pub fn parse_positive_rat(s: &str) -> Result<BigRat, String> {
    let q = parse_rat(s)?;
    if q <= BigRat::from_integer(0.into()) {
        return Err(format!("must be positive: {s:?}"));
    }
    Ok(q)
}

fn parse_rat_pair(s: &str) -> Result<RatPair, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y: {s:?}"))?;
    Ok(RatPair(parse_rat(x)?, parse_rat(y)?))
}

fn parse_single_d(s: &str) -> Result<u32, String> {
    let d: u32 = s.trim().parse().map_err(|_| format!("not an integer: {s:?}"))?;
    LatticeSpec::new(d).map_err(|e| e.to_string())?;
    Ok(d)
}

pub fn parse_d_list(s: &str) -> Result<DList, String> {
    if s.trim() == "all" {
        return Ok(DList(LatticeSpec::all().map(|l| l.d()).collect()));
    }
    let mut out = Vec::new();
    for part in s.split(',') {
        let d = parse_single_d(part)?;
        if !out.contains(&d) {
            out.push(d);
        }
    }
    Ok(DList(out))
}

pub fn parse_n_range(s: &str) -> Result<NRange, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("not a count: {t:?}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if lo < 3 {
        return Err("n must be at least 3 (circles through 1 or 2 points have no smallest radius)".into());
    }
    if hi < lo {
        return Err(format!("empty range {s:?}"));
    }
    Ok(NRange(lo, hi))
}

// ---------------------------------------------------------------------------
// Errors and the search driver

/// A failure that ends the command.
#[derive(Debug)]
pub enum Fatal {
    Usage(String),
    Integrity(String),
}

impl Fatal {
    fn exit(&self) -> Exit {
        match self {
            Fatal::Usage(_) => Exit::Usage,
            Fatal::Integrity(_) => Exit::Integrity,
        }
    }
}

impl From<CacheError> for Fatal {
    fn from(e: CacheError) -> Self {
        match e {
            CacheError::Io(_) => Fatal::Usage(e.to_string()),
            _ => Fatal::Integrity(e.to_string()),
        }
    }
}

fn search_fatal(e: SearchError) -> Fatal {
    match e {
        SearchError::Integrity(_) => Fatal::Integrity(e.to_string()),
        _ => Fatal::Usage(e.to_string()),
    }
}

/// The default mode for a lattice: certified where it is affordable.
pub fn default_mode(d: u32) -> SearchMode {
    if matches!(d, 67 | 163) {
        SearchMode::Heuristic
    } else {
        SearchMode::Certified
    }
}

impl SearchOpts {
    fn check(&self) -> Result<(), Fatal> {
        match self.mode {
            Some(ModeArg::Heuristic) if self.force_certified => {
                Err(Fatal::Usage("--force-certified contradicts --mode heuristic".into()))
            }
            Some(ModeArg::Heuristic) if self.bound.is_some() || self.bound_cap.is_some() => {
                Err(Fatal::Usage("--bound/--bound-cap only apply to certified mode".into()))
            }
            Some(ModeArg::Certified) if self.ell.is_some() => {
                Err(Fatal::Usage("--ell only applies to heuristic mode".into()))
            }
            _ if self.ell == Some(0) => Err(Fatal::Usage("--ell must be positive".into())),
            _ => Ok(()),
        }
    }

    pub fn config_for(&self, d: u32) -> Result<SearchConfig, Fatal> {
        let mode = match self.mode {
            Some(ModeArg::Certified) => SearchMode::Certified,
            Some(ModeArg::Heuristic) => SearchMode::Heuristic,
            None if self.force_certified => SearchMode::Certified,
            None => default_mode(d),
        };
        Ok(match mode {
            SearchMode::Certified => certified_config(self.bound.clone(), self.bound_cap.clone())?,
            SearchMode::Heuristic => {
                SearchConfig::heuristic(BigRat::from_integer(self.ell.unwrap_or(DEFAULT_ELL).into()))
            }
        })
    }
}

fn certified_config(bound: Option<BigRat>, cap: Option<BigRat>) -> Result<SearchConfig, Fatal> {
    let mut cfg = SearchConfig::certified(bound.unwrap_or_else(|| BigRat::from_integer(1.into())));
    if let Some(cap) = cap {
        cfg = cfg.with_cap(cap);
    }
    if cfg.bound_cap < cfg.bound {
        return Err(Fatal::Usage("--bound-cap is below --bound".into()));
    }
    Ok(cfg)
}

/// Runs searches on a thread pool, consulting and filling the cache.
pub struct Engine {
    cache: Option<Cache>,
    pool: rayon::ThreadPool,
}

/// One answered count.
pub struct Entry {
    pub n: usize,
    pub result: Result<UcResult, SearchError>,
}

impl Engine {
    pub fn new(cache: &CacheOpts, threads: Option<usize>) -> Result<Engine, Fatal> {
        let cache = if cache.no_cache {
            None
        } else {
            let path = cache
                .cache
                .clone()
                .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE));
            Some(Cache::open(path)?)
        };
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(t) = threads {
            if t == 0 {
                return Err(Fatal::Usage("--threads must be positive".into()));
            }
            builder = builder.num_threads(t);
        }
        let pool = builder.build().map_err(|e| Fatal::Usage(e.to_string()))?;
        Ok(Engine { cache, pool })
    }

    /// `uc(d, n)` for `n` in `lo..=hi`, from the cache where possible.
    pub fn solve(&mut self, d: u32, lo: usize, hi: usize, cfg: &SearchConfig) -> Result<Vec<Entry>, Fatal> {
        let spec = LatticeSpec::new(d).map_err(|e| Fatal::Usage(e.to_string()))?;
        let mut cached: Vec<Option<UcResult>> = Vec::new();
        for n in lo..=hi {
            let hit = match &self.cache {
                Some(c) => c.lookup(d, n, cfg.mode, &cfg.bound).map(CacheRecord::to_result).transpose()?,
                None => None,
            };
            cached.push(hit);
        }
        let missing: Vec<usize> = (lo..=hi).filter(|n| cached[n - lo].is_none()).collect();
        let mut computed = Vec::new();
        if let (Some(&m_lo), Some(&m_hi)) = (missing.first(), missing.last()) {
            eprintln!("searching d={d} n={m_lo}..{m_hi} ({})", cfg.mode);
            computed = self
                .pool
                .install(|| uc_table_with(&spec, m_lo, m_hi, cfg, &Parallel))
                .map_err(search_fatal)?;
            // Counts in between that were cached must agree with the search.
            for r in computed.iter().flatten() {
                if let Some(c) = &cached[r.n - lo] {
                    if c.mode == r.mode && c.min_radius2 != r.min_radius2 {
                        return Err(Fatal::Integrity(format!(
                            "cache has uc(d={d}, n={}) = {} but the search found {}",
                            r.n, c.min_radius2, r.min_radius2
                        )));
                    }
                }
            }
        }
        let mut out = Vec::new();
        for n in lo..=hi {
            if let Some(hit) = cached[n - lo].take() {
                eprintln!("d={d} n={n}: served from cache");
                out.push(Entry { n, result: Ok(hit) });
                continue;
            }
            let pos = computed.iter().position(|r| match r {
                Ok(u) => u.n == n,
                Err(SearchError::BoundExhausted { n: m, .. }) => *m == n,
                Err(_) => false,
            });
            let result = computed.swap_remove(pos.expect("every missing n is answered"));
            if let (Ok(u), Some(cache)) = (&result, &mut self.cache) {
                if let Some(rec) = CacheRecord::from_result(u) {
                    cache.append(rec)?;
                }
            }
            out.push(Entry { n, result });
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Rendering helpers

fn rat_str(q: &BigRat) -> String {
    q.to_string()
}

fn points_json(points: &[LatticePoint]) -> Value {
    Value::Array(points.iter().map(|p| json!([p.a, p.b])).collect())
}

fn points_text(points: &[LatticePoint]) -> String {
    points.iter().map(|p| format!("({},{})", p.a, p.b)).collect::<Vec<_>>().join(" ")
}

fn status_text(u: &UcResult) -> String {
    match u.mode {
        SearchMode::Certified => "certified".into(),
        SearchMode::Heuristic => format!("upper bound, heuristic l={}", u.bound_used),
    }
}

fn exhausted_text(e: &SearchError) -> String {
    match e {
        SearchError::BoundExhausted {
            n,
            best_upper_bound,
            bound,
        } => {
            let best = match best_upper_bound {
                Some(b) => rat_str(b),
                None => "none found".into(),
            };
            format!("bound exhausted: no circle through exactly {n} points within bound {bound}; best upper bound: {best}")
        }
        other => other.to_string(),
    }
}

fn entry_json(d: u32, e: &Entry) -> Value {
    match &e.result {
        Ok(u) => json!({
            "lattice_d": d,
            "n": e.n,
            "status": "ok",
            "min_radius2": rat_str(&u.min_radius2),
            "certified": u.certified,
            "mode": u.mode.as_str(),
            "bound": rat_str(&u.bound_used),
            "witness_center": [rat_str(&u.witness.center.x), rat_str(&u.witness.center.yp)],
            "witness_points": points_json(&u.witness_points),
        }),
        Err(err) => {
            let (bound, best) = match err {
                SearchError::BoundExhausted {
                    bound,
                    best_upper_bound,
                    ..
                } => (Value::String(rat_str(bound)), best_upper_bound.as_ref().map(rat_str)),
                _ => (Value::Null, None),
            };
            json!({
                "lattice_d": d,
                "n": e.n,
                "status": "bound-exhausted",
                "bound": bound,
                "best_upper_bound": best,
            })
        }
    }
}

fn worst_exit(entries: &[(u32, Vec<Entry>)]) -> Exit {
    if entries.iter().flat_map(|(_, es)| es).any(|e| e.result.is_err()) {
        Exit::BoundExhausted
    } else {
        Exit::Ok
    }
}

// ---------------------------------------------------------------------------
// Commands

fn cmd_uc(args: UcArgs, out: &mut String) -> Result<Exit, Fatal> {
    args.search.check()?;
    let mut engine = Engine::new(&args.cache, args.search.threads)?;
    let NRange(lo, hi) = args.n;
    let mut all = Vec::new();
    for &d in &args.d.0 {
        let cfg = args.search.config_for(d)?;
        all.push((d, engine.solve(d, lo, hi, &cfg)?));
    }
    match args.output.format {
        Format::Md => {
            for (d, entries) in &all {
                for e in entries {
                    match &e.result {
                        Ok(u) => {
                            let approx = if args.output.approx {
                                format!(" ≈ {:.9}", approx_f64(&u.min_radius2))
                            } else {
                                String::new()
                            };
                            let _ = writeln!(out, "d={d} n={}: uc = {}{approx} ({})", e.n, u.min_radius2, status_text(u));
                            let _ = writeln!(
                                out,
                                "  witness center (x0, y0') = ({}, {}); points (a,b): {}",
                                u.witness.center.x,
                                u.witness.center.yp,
                                points_text(&u.witness_points)
                            );
                        }
                        Err(err) => {
                            let _ = writeln!(out, "d={d} n={}: {}", e.n, exhausted_text(err));
                        }
                    }
                }
            }
        }
        Format::Csv => {
            out.push_str("d,n,status,min_radius2,certified,mode,bound\n");
            for (d, entries) in &all {
                for e in entries {
                    match &e.result {
                        Ok(u) => {
                            let _ = writeln!(
                                out,
                                "{d},{},ok,{},{},{},{}",
                                e.n,
                                u.min_radius2,
                                u.certified,
                                u.mode.as_str(),
                                u.bound_used
                            );
                        }
                        Err(SearchError::BoundExhausted { bound, .. }) => {
                            let _ = writeln!(out, "{d},{},bound-exhausted,,false,,{bound}", e.n);
                        }
                        Err(other) => {
                            let _ = writeln!(out, "{d},{},error,,false,,{other}", e.n);
                        }
                    }
                }
            }
        }
        Format::Json => {
            let records: Vec<Value> = all
                .iter()
                .flat_map(|(d, es)| es.iter().map(move |e| entry_json(*d, e)))
                .collect();
            out.push_str(&serde_json::to_string_pretty(&records).expect("json"));
            out.push('\n');
        }
    }
    Ok(worst_exit(&all))
}

fn cell_text(e: &Entry, approx: bool) -> String {
    match &e.result {
        Ok(u) => {
            let mut s = rat_str(&u.min_radius2);
            if !u.certified {
                s.push('*');
            }
            if approx {
                let _ = write!(s, " (≈{:.4})", approx_f64(&u.min_radius2));
            }
            s
        }
        Err(_) => "—".into(),
    }
}

fn cmd_table(args: TableArgs, out: &mut String, err: &mut String) -> Result<Exit, Fatal> {
    args.search.check()?;
    let rows = args.d.clone().unwrap_or_else(|| DList(LatticeSpec::all().map(|l| l.d()).collect()));
    let NRange(lo, hi) = args.n.unwrap_or(NRange(golden::N_LO, golden::N_HI));
    let mut engine = Engine::new(&args.cache, args.search.threads)?;
    let mut all = Vec::new();
    let mut modes = Vec::new();
    for &d in &rows.0 {
        let cfg = args.search.config_for(d)?;
        modes.push(cfg.mode);
        all.push((d, engine.solve(d, lo, hi, &cfg)?));
    }

    match args.output.format {
        Format::Md => {
            let _ = write!(out, "| -d |");
            for n in lo..=hi {
                let _ = write!(out, " uc({n}) |");
            }
            out.push('\n');
            out.push_str("|---:|");
            for _ in lo..=hi {
                out.push_str("---:|");
            }
            out.push('\n');
            for (d, entries) in &all {
                let _ = write!(out, "| -{d} |");
                for e in entries {
                    let _ = write!(out, " {} |", cell_text(e, args.output.approx));
                }
                out.push('\n');
            }
            if all.iter().flat_map(|(_, es)| es).any(|e| matches!(&e.result, Ok(u) if !u.certified)) {
                out.push_str("\n\\* heuristic upper bound, not certified minimal\n");
            }
            if all.iter().flat_map(|(_, es)| es).any(|e| e.result.is_err()) {
                out.push_str("— bound exhausted before a circle was found\n");
            }
        }
        Format::Csv => {
            out.push_str("d,mode");
            for n in lo..=hi {
                let _ = write!(out, ",uc({n})");
            }
            out.push('\n');
            for ((d, entries), mode) in all.iter().zip(&modes) {
                let _ = write!(out, "{d},{}", mode.as_str());
                for e in entries {
                    match &e.result {
                        Ok(u) => {
                            let _ = write!(out, ",{}", u.min_radius2);
                        }
                        Err(_) => out.push(','),
                    }
                }
                out.push('\n');
            }
        }
        Format::Json => {
            let rows_json: Vec<Value> = all
                .iter()
                .zip(&modes)
                .map(|((d, entries), mode)| {
                    json!({
                        "d": d,
                        "mode": mode.as_str(),
                        "cells": entries.iter().map(|e| entry_json(*d, e)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            out.push_str(&serde_json::to_string_pretty(&rows_json).expect("json"));
            out.push('\n');
        }
    }

    let mut exit = worst_exit(&all);
    if args.check {
        let (mut matched, mut differ) = (0usize, Vec::new());
        for (d, entries) in &all {
            for e in entries {
                let Some(cell) = golden_cell(*d, e.n) else { continue };
                let want = cell.value();
                match &e.result {
                    Ok(u) if u.min_radius2 == want => matched += 1,
                    Ok(u) => differ.push(format!(
                        "d={d} n={}: computed {} ({}), Table 1 has {} = {}",
                        e.n,
                        u.min_radius2,
                        status_text(u),
                        want,
                        cell.paper
                    )),
                    Err(_) => differ.push(format!(
                        "d={d} n={}: no value computed, Table 1 has {} = {}",
                        e.n, want, cell.paper
                    )),
                }
            }
        }
        for line in &differ {
            let _ = writeln!(err, "mismatch {line}");
        }
        if differ.is_empty() {
            let _ = writeln!(err, "check: {matched} cells matched");
        } else {
            let _ = writeln!(err, "check: {matched} cells matched, {} differ", differ.len());
            exit = exit.max(Exit::GoldenMismatch);
        }
    }
    Ok(exit)
}

/// Largest index accepted by `thm2`; beyond it the brute-force checks
/// leave desk scale.
pub const THM2_MAX_K: usize = 10;

fn cmd_thm2(args: Thm2Args, out: &mut String) -> Result<Exit, Fatal> {
    if args.k > THM2_MAX_K {
        return Err(Fatal::Usage(format!("--k above {THM2_MAX_K} is out of scope")));
    }
    let (built, class, lattice) = match args.variant {
        Variant::Gauss => (thm2_gauss_circle(args.k), ResidueClass::OneModFour, 1),
        Variant::Eisenstein => (thm2_eisenstein_circle(args.k), ResidueClass::OneModThree, 3),
    };
    let c: ConstructedCircle = match built {
        Ok(c) => c,
        Err(e @ RingError::CountMismatch { .. }) => return Err(Fatal::Integrity(e.to_string())),
        Err(e) => return Err(Fatal::Usage(e.to_string())),
    };
    let primes = primes_in_class(class, args.k);
    let factors: Vec<String> = primes.values[..=args.k].iter().map(|p| p.to_string()).collect();
    let product = match args.variant {
        Variant::Gauss => format!("(1/2)·prod p_k = (1/2)·{}", factors.join("·")),
        Variant::Eisenstein => format!("prod q_k = {}", factors.join("·")),
    };
    let (theorem, predicted_formula) = match args.variant {
        Variant::Gauss => ("Theorem 1.3(1)", format!("2^(l+2) = {}", c.predicted)),
        Variant::Eisenstein => ("Theorem 1.3(2)", format!("6·2^m = {}", c.predicted)),
    };
    match args.format {
        Format::Md | Format::Csv => {
            let _ = writeln!(out, "{theorem}, k={}: lattice d={lattice}", args.k);
            let _ = writeln!(
                out,
                "  center (x0, y0') = ({}, {}), D = {} = {product}",
                c.circle.center.x, c.circle.center.yp, c.circle.radius2
            );
            let _ = writeln!(out, "  count = {} (predicted {predicted_formula})", c.count);
            let _ = writeln!(out, "  points (a,b): {}", points_text(&c.points));
        }
        Format::Json => {
            let v = json!({
                "variant": match args.variant { Variant::Gauss => "gauss", Variant::Eisenstein => "eisenstein" },
                "k": args.k,
                "lattice_d": lattice,
                "center": [rat_str(&c.circle.center.x), rat_str(&c.circle.center.yp)],
                "radius2": rat_str(&c.circle.radius2),
                "primes": primes.values[..=args.k].to_vec(),
                "count": c.count,
                "predicted": c.predicted,
                "points": points_json(&c.points),
            });
            out.push_str(&serde_json::to_string_pretty(&v).expect("json"));
            out.push('\n');
        }
    }
    Ok(if c.count == c.predicted { Exit::Ok } else { Exit::Integrity })
}

fn cmd_count(args: CountArgs, out: &mut String) -> Result<Exit, Fatal> {
    let spec = LatticeSpec::new(args.d).map_err(|e| Fatal::Usage(e.to_string()))?;
    let RatPair(x, yp) = args.center;
    let circle = Circle::new(QPoint::new(x, yp), args.r2).map_err(|e| Fatal::Usage(e.to_string()))?;
    let (count, points) = count_on_circle(&spec, &circle);
    match args.format {
        Format::Md | Format::Csv => {
            let _ = writeln!(out, "count = {count}");
            if !points.is_empty() {
                let _ = writeln!(out, "points (a,b): {}", points_text(&points));
            }
        }
        Format::Json => {
            let v = json!({
                "lattice_d": args.d,
                "center": [rat_str(&circle.center.x), rat_str(&circle.center.yp)],
                "radius2": rat_str(&circle.radius2),
                "count": count,
                "points": points_json(&points),
            });
            out.push_str(&serde_json::to_string_pretty(&v).expect("json"));
            out.push('\n');
        }
    }
    Ok(Exit::Ok)
}

/// The Theorem 1.3 bound for the `n`-th entry of a family, when `n` is a
/// power of two.
pub fn theorem_bound(family: Family, n: usize) -> Option<BigRat> {
    if !n.is_power_of_two() {
        return None;
    }
    let k = n.trailing_zeros() as usize;
    let (class, half) = match family {
        Family::Gauss4n => (ResidueClass::OneModFour, true),
        Family::Eisenstein6n => (ResidueClass::OneModThree, false),
    };
    let p = primes_in_class(class, k).product_through(k).ok()?;
    let p = BigRat::from_integer(BigInt::from(p));
    Some(if half { p / BigInt::from(2) } else { p })
}

fn cmd_sequence(args: SequenceArgs, out: &mut String) -> Result<Exit, Fatal> {
    if args.k == 0 {
        return Err(Fatal::Usage("--k must be at least 1".into()));
    }
    let (d, step) = match args.family {
        Family::Gauss4n => (1u32, 4usize),
        Family::Eisenstein6n => (3, 6),
    };
    let cfg = certified_config(args.bound.clone(), args.bound_cap.clone())?;
    let mut engine = Engine::new(&args.cache, args.threads)?;
    let mut rows = Vec::new();
    let mut exit = Exit::Ok;
    for i in 1..=args.k {
        let count = step * i;
        let entry = engine.solve(d, count, count, &cfg)?.pop().expect("one entry");
        let bound = theorem_bound(args.family, i);
        if let (Ok(u), Some(b)) = (&entry.result, &bound) {
            if &u.min_radius2 > b {
                return Err(Fatal::Integrity(format!(
                    "uc(d={d}, {count}) = {} exceeds the Theorem 1.3 bound {b}",
                    u.min_radius2
                )));
            }
        }
        if entry.result.is_err() {
            exit = Exit::BoundExhausted;
        }
        rows.push((i, count, entry, bound));
    }
    match args.format {
        Format::Md => {
            out.push_str("| n | count | uc | status | Theorem 1.3 bound | equal |\n|---:|---:|---:|:---|---:|:---:|\n");
            for (i, count, e, bound) in &rows {
                let (value, status) = match &e.result {
                    Ok(u) => (rat_str(&u.min_radius2), status_text(u)),
                    Err(err) => ("—".into(), exhausted_text(err)),
                };
                let (b, eq) = match (bound, &e.result) {
                    (Some(b), Ok(u)) => (rat_str(b), if &u.min_radius2 == b { "yes" } else { "no" }),
                    (Some(b), Err(_)) => (rat_str(b), ""),
                    (None, _) => (String::new(), ""),
                };
                let _ = writeln!(out, "| {i} | {count} | {value} | {status} | {b} | {eq} |");
            }
        }
        Format::Csv => {
            out.push_str("n,count,uc,certified,theorem_bound,equal\n");
            for (i, count, e, bound) in &rows {
                let value = e.result.as_ref().map(|u| rat_str(&u.min_radius2)).unwrap_or_default();
                let cert = e.result.as_ref().map(|u| u.certified).unwrap_or(false);
                let b = bound.as_ref().map(rat_str).unwrap_or_default();
                let eq = match (bound, &e.result) {
                    (Some(b), Ok(u)) => (&u.min_radius2 == b).to_string(),
                    _ => String::new(),
                };
                let _ = writeln!(out, "{i},{count},{value},{cert},{b},{eq}");
            }
        }
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|(i, count, e, bound)| {
                    let mut rec = entry_json(d, e);
                    rec["index"] = json!(i);
                    rec["count"] = json!(count);
                    rec["theorem_bound"] = json!(bound.as_ref().map(rat_str));
                    rec["equals_bound"] = match (bound, &e.result) {
                        (Some(b), Ok(u)) => json!(&u.min_radius2 == b),
                        _ => Value::Null,
                    };
                    rec
                })
                .collect();
            out.push_str(&serde_json::to_string_pretty(&v).expect("json"));
            out.push('\n');
        }
    }
    Ok(exit)
}

/// Parses `args` (program name first), runs the command, and returns the
/// process exit code. Standard output and error are returned as strings
/// so the driver can be tested in-process.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, text, String::new()),
                _ => (Exit::Usage as i32, String::new(), text),
            };
        }
    };
    let (mut out, mut err) = (String::new(), String::new());
    let result = match cli.command {
        Command::Uc(a) => cmd_uc(a, &mut out),
        Command::Table(a) => cmd_table(a, &mut out, &mut err),
        Command::Thm2(a) => cmd_thm2(a, &mut out),
        Command::Count(a) => cmd_count(a, &mut out),
        Command::Sequence(a) => cmd_sequence(a, &mut out),
    };
    let code = match result {
        Ok(exit) => exit,
        Err(f) => {
            let (kind, msg) = match &f {
                Fatal::Usage(m) => ("error", m),
                Fatal::Integrity(m) => ("integrity error", m),
            };
            let _ = writeln!(err, "{kind}: {msg}");
            f.exit()
        }
    };
    (code as i32, out, err)
}
