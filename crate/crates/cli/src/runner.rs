//! Parallel pass runner.
//!
//! Partitions (one per `p2`) run on the rayon pool. Each starts from the
//! prune threshold of everything merged so far and merges its bins back
//! when done. The threshold only drops circles strictly above every
//! current per-count minimum, and ties are broken by the circle key, so the
//! merged minima do not depend on scheduling.

use std::sync::Mutex;

use concyclic_core::search::{Bins, CountRange, PassRunner, SearchPass};
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, Default)]
pub struct Parallel;

impl PassRunner for Parallel {
    fn run(&self, pass: &SearchPass, range: CountRange) -> Bins {
        let shared = Mutex::new(Bins::default());
        (0..pass.partitions()).into_par_iter().for_each(|part| {
            let prune = shared.lock().unwrap().prune_threshold(range.lo, range.hi);
            let local = pass.run_partition(part, range, prune);
            shared.lock().unwrap().merge(local);
        });
        shared.into_inner().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use concyclic_core::search::{uc_table_with, Sequential};
    use concyclic_core::{BigRat, LatticeSpec, SearchConfig};

    #[test]
    fn parallel_matches_sequential() {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        for d in [1, 2, 3, 7, 11] {
            let spec = LatticeSpec::new(d).unwrap();
            let cfg = SearchConfig::certified(BigRat::from_integer(1.into()));
            let seq = uc_table_with(&spec, 3, 6, &cfg, &Sequential).unwrap();
            let par = pool.install(|| uc_table_with(&spec, 3, 6, &cfg, &Parallel).unwrap());
            assert_eq!(seq, par, "d={d}");
        }
    }
}
