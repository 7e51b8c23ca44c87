//! Query benchmarks over patterns sampled from the indexed text.

use std::fmt;
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::grammar::Grammar;
use crate::store::RuleStore;

/// Aggregates for one pattern length.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub pattern_len: usize,
    pub queries: usize,
    pub mean_time: Duration,
    pub median_time: Duration,
    pub mean_occ: f64,
    pub mean_occ_core: f64,
    pub mean_visited: f64,
    pub mean_height: f64,
}

impl BenchRow {
    pub const HEADER: &'static str = "len\tqueries\tmean_us\tmedian_us\tocc\tocc_C\tocc_C'\ttau_P";
}

impl fmt::Display for BenchRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{:.2}\t{:.2}\t{:.2}\t{:.2}\t{:.2}\t{:.2}",
            self.pattern_len,
            self.queries,
            self.mean_time.as_secs_f64() * 1e6,
            self.median_time.as_secs_f64() * 1e6,
            self.mean_occ,
            self.mean_occ_core,
            self.mean_visited,
            self.mean_height
        )
    }
}

/// Draws `count` substrings of length `len` at uniformly random positions.
pub fn sample_patterns<S: RuleStore>(
    g: &Grammar<S>,
    len: usize,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<u8>>> {
    let n = g.text_len();
    if len == 0 || len as u64 > n {
        return Ok(Vec::new());
    }
    let last = n - len as u64 + 1;
    (0..count)
        .map(|_| g.extract(g.start(), rng.gen_range(1..=last), len as u64))
        .collect()
}

/// Runs `queries` sampled locate queries per pattern length.
///
/// Lengths longer than the text produce rows with zero queries.
pub fn run<S: RuleStore>(
    g: &Grammar<S>,
    lengths: &[usize],
    queries: usize,
    seed: u64,
) -> Result<Vec<BenchRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(lengths.len());
    for &len in lengths {
        let patterns = sample_patterns(g, len, queries, &mut rng)?;
        let mut times = Vec::with_capacity(patterns.len());
        let (mut occ, mut core, mut visited, mut height) = (0u64, 0u64, 0u64, 0usize);
        for p in &patterns {
            let r = g.locate(p)?;
            times.push(r.total_time);
            occ += r.occ;
            core += r.occ_core;
            visited += r.visited_nodes;
            height += r.pattern_height;
        }
        times.sort_unstable();
        let q = patterns.len();
        let mean = |x: f64| if q == 0 { 0.0 } else { x / q as f64 };
        rows.push(BenchRow {
            pattern_len: len,
            queries: q,
            mean_time: if q == 0 {
                Duration::ZERO
            } else {
                times.iter().sum::<Duration>() / q as u32
            },
            median_time: times.get(q / 2).copied().unwrap_or_default(),
            mean_occ: mean(occ as f64),
            mean_occ_core: mean(core as f64),
            mean_visited: mean(visited as f64),
            mean_height: mean(height as f64),
        });
    }
    Ok(rows)
}
