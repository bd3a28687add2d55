//! Append-only results cache: one JSON record per line.
//!
//! Records are keyed by `(d, n, mode, bound)`. A certified record answers
//! any certified request for its `(d, n)`, whatever bound was asked for,
//! since a certified minimum is global. A heuristic record only answers a
//! heuristic request with the same region radius `l`.

use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use concyclic_core::{count_on_circle, BigRat, Circle, LatticePoint, LatticeSpec, QPoint, SearchMode, UcResult};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub lattice_d: u32,
    pub n: usize,
    pub mode: String,
    pub bound_num: i64,
    pub bound_den: i64,
    pub min_radius2_num: i64,
    pub min_radius2_den: i64,
    /// `[x0_num, x0_den, y0'_num, y0'_den]`, each pair reduced.
    pub witness_center: [i64; 4],
    /// Lattice coordinates `(a, b)` of the witness points.
    pub witness_points: Vec<[i64; 2]>,
    pub certified: bool,
    pub tool_version: String,
    /// Fields written by other versions, kept verbatim on rewrite.
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

#[derive(Debug)]
pub enum CacheError {
    Io(io::Error),
    /// A line that is not a valid record.
    Parse { line: usize, message: String },
    /// A well-formed record whose contents are inconsistent.
    Integrity(String),
}

impl std::fmt::Display for CacheError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CacheError::Io(e) => write!(f, "cache I/O error: {e}"),
            CacheError::Parse { line, message } => write!(f, "cache line {line}: {message}"),
            CacheError::Integrity(m) => write!(f, "cache integrity error: {m}"),
        }
    }
}

impl std::error::Error for CacheError {}

impl From<io::Error> for CacheError {
    fn from(e: io::Error) -> Self {
        CacheError::Io(e)
    }
}

fn pair(q: &BigRat) -> Option<(i64, i64)> {
    Some((q.numer().to_i64()?, q.denom().to_i64()?))
}

/// Rebuilds a rational and insists the stored pair was already reduced.
fn reduced(num: i64, den: i64, what: &str) -> Result<BigRat, CacheError> {
    if den <= 0 {
        return Err(CacheError::Integrity(format!("{what}: nonpositive denominator")));
    }
    let q = BigRat::new(BigInt::from(num), BigInt::from(den));
    if pair(&q) != Some((num, den)) {
        return Err(CacheError::Integrity(format!("{what}: {num}/{den} is not reduced")));
    }
    Ok(q)
}

pub fn parse_mode(s: &str) -> Option<SearchMode> {
    match s {
        "certified" => Some(SearchMode::Certified),
        "heuristic" => Some(SearchMode::Heuristic),
        _ => None,
    }
}

impl CacheRecord {
    /// `None` if some number does not fit the record's integer fields.
    pub fn from_result(r: &UcResult) -> Option<CacheRecord> {
        let (bound_num, bound_den) = pair(&r.bound_used)?;
        let (min_radius2_num, min_radius2_den) = pair(&r.min_radius2)?;
        let (xn, xd) = pair(&r.witness.center.x)?;
        let (yn, yd) = pair(&r.witness.center.yp)?;
        Some(CacheRecord {
            lattice_d: r.lattice_d,
            n: r.n,
            mode: r.mode.as_str().to_string(),
            bound_num,
            bound_den,
            min_radius2_num,
            min_radius2_den,
            witness_center: [xn, xd, yn, yd],
            witness_points: r.witness_points.iter().map(|p| [p.a, p.b]).collect(),
            certified: r.certified,
            tool_version: TOOL_VERSION.to_string(),
            extra: Map::new(),
        })
    }

    pub fn bound(&self) -> Result<BigRat, CacheError> {
        reduced(self.bound_num, self.bound_den, "bound")
    }

    /// Rebuilds the result and re-verifies it: the witness circle must
    /// carry exactly the stored points and nothing else.
    pub fn to_result(&self) -> Result<UcResult, CacheError> {
        let bad = |m: &str| CacheError::Integrity(format!("d={} n={}: {m}", self.lattice_d, self.n));
        let spec = LatticeSpec::new(self.lattice_d).map_err(|_| bad("lattice not supported"))?;
        let mode = parse_mode(&self.mode).ok_or_else(|| bad("unknown mode"))?;
        if self.certified && mode != SearchMode::Certified {
            return Err(bad("heuristic record marked certified"));
        }
        let min_radius2 = reduced(self.min_radius2_num, self.min_radius2_den, "min_radius2")?;
        let [xn, xd, yn, yd] = self.witness_center;
        let center = QPoint::new(reduced(xn, xd, "center x")?, reduced(yn, yd, "center y'")?);
        let witness = Circle::new(center, min_radius2.clone()).map_err(|_| bad("nonpositive radius"))?;
        let points: Vec<LatticePoint> = self.witness_points.iter().map(|&[a, b]| LatticePoint::new(a, b)).collect();
        let (count, found) = count_on_circle(&spec, &witness);
        if count != self.n || found != points {
            return Err(bad("witness points do not match a recount"));
        }
        Ok(UcResult {
            lattice_d: self.lattice_d,
            n: self.n,
            min_radius2,
            witness,
            witness_points: points,
            certified: self.certified,
            mode,
            bound_used: self.bound()?,
        })
    }

    fn key(&self) -> (u32, usize, &str, i64, i64) {
        (self.lattice_d, self.n, &self.mode, self.bound_num, self.bound_den)
    }
}

pub struct Cache {
    path: PathBuf,
    records: Vec<CacheRecord>,
}

impl Cache {
    /// Loads `path`; a missing file is an empty cache.
    pub fn open(path: impl AsRef<Path>) -> Result<Cache, CacheError> {
        let path = path.as_ref().to_path_buf();
        let mut records = Vec::new();
        match File::open(&path) {
            Ok(f) => {
                for (i, line) in BufReader::new(f).lines().enumerate() {
                    let line = line?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    let rec = serde_json::from_str(&line).map_err(|e| CacheError::Parse {
                        line: i + 1,
                        message: e.to_string(),
                    })?;
                    records.push(rec);
                }
            }
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(e.into()),
        }
        Ok(Cache { path, records })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn records(&self) -> &[CacheRecord] {
        &self.records
    }

    /// The most recent record that answers a request, if any.
    pub fn lookup(&self, d: u32, n: usize, mode: SearchMode, bound: &BigRat) -> Option<&CacheRecord> {
        self.records.iter().rev().find(|r| {
            r.lattice_d == d
                && r.n == n
                && match mode {
                    SearchMode::Certified => r.mode == "certified" && r.certified,
                    SearchMode::Heuristic => {
                        r.mode == "heuristic" && pair(bound) == Some((r.bound_num, r.bound_den))
                    }
                }
        })
    }

    /// Appends one record and flushes it, so an interrupted run keeps
    /// everything written before.
    pub fn append(&mut self, rec: CacheRecord) -> Result<(), CacheError> {
        if let Some(dir) = self.path.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        let line = serde_json::to_string(&rec).expect("records serialize");
        writeln!(f, "{line}")?;
        f.flush()?;
        self.records.push(rec);
        Ok(())
    }

    /// Rewrites the file keeping only the last record per key, unknown
    /// fields included.
    pub fn compact(&mut self) -> Result<(), CacheError> {
        let mut kept: Vec<CacheRecord> = Vec::new();
        for rec in self.records.iter().rev() {
            if !kept.iter().any(|k| k.key() == rec.key()) {
                kept.push(rec.clone());
            }
        }
        kept.reverse();
        let tmp = self.path.with_extension("tmp");
        {
            let mut f = File::create(&tmp)?;
            for rec in &kept {
                writeln!(f, "{}", serde_json::to_string(rec).expect("records serialize"))?;
            }
            f.flush()?;
        }
        fs::rename(&tmp, &self.path)?;
        self.records = kept;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use concyclic_core::{uc, SearchConfig};

    fn result(d: u32, n: usize) -> UcResult {
        let spec = LatticeSpec::new(d).unwrap();
        uc(&spec, n, &SearchConfig::certified(BigRat::from_integer(1.into()))).unwrap()
    }

    #[test]
    fn record_round_trip() {
        for (d, n) in [(1, 3), (1, 4), (3, 5), (7, 6)] {
            let r = result(d, n);
            let rec = CacheRecord::from_result(&r).unwrap();
            let line = serde_json::to_string(&rec).unwrap();
            let back: CacheRecord = serde_json::from_str(&line).unwrap();
            assert_eq!(back, rec);
            assert_eq!(back.to_result().unwrap(), r);
        }
    }

    #[test]
    fn unknown_fields_survive_compaction() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let mut rec = CacheRecord::from_result(&result(1, 4)).unwrap();
        rec.extra.insert("note".into(), Value::String("kept".into()));
        let mut cache = Cache::open(&path).unwrap();
        cache.append(rec.clone()).unwrap();
        cache.append(rec.clone()).unwrap();
        cache.compact().unwrap();
        let reread = Cache::open(&path).unwrap();
        assert_eq!(reread.records(), &[rec]);
        assert!(fs::read_to_string(&path).unwrap().contains("\"note\":\"kept\""));
    }

    #[test]
    fn tampered_record_is_rejected() {
        let mut rec = CacheRecord::from_result(&result(1, 4)).unwrap();
        rec.min_radius2_num = 2;
        rec.min_radius2_den = 4;
        assert!(matches!(rec.to_result(), Err(CacheError::Integrity(_))));
        let mut rec = CacheRecord::from_result(&result(1, 4)).unwrap();
        rec.witness_points.pop();
        assert!(matches!(rec.to_result(), Err(CacheError::Integrity(_))));
    }

    #[test]
    fn lookup_semantics() {
        let dir = tempfile::tempdir().unwrap();
        let mut cache = Cache::open(dir.path().join("c.jsonl")).unwrap();
        cache.append(CacheRecord::from_result(&result(1, 4)).unwrap()).unwrap();
        let any = BigRat::from_integer(1000.into());
        assert!(cache.lookup(1, 4, SearchMode::Certified, &any).is_some());
        assert!(cache.lookup(1, 4, SearchMode::Heuristic, &any).is_none());
        assert!(cache.lookup(1, 5, SearchMode::Certified, &any).is_none());
    }

    #[test]
    fn malformed_line_reports_its_number() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        fs::write(&path, "\n{not json}\n").unwrap();
        match Cache::open(&path) {
            Err(CacheError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {:?}", other.map(|_| ())),
        }
    }
}
