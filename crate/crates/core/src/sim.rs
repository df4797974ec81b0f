//! Monte-Carlo harness: random `X`, random `k`-subset deletions, encode,
//! decode, and list-size statistics per setup.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::BitSeq;
use crate::decoder::DecoderLimits;
use crate::encoder::SyncCode;
use crate::error::{Error, Result};
use crate::gf::splitmix64;
use crate::params::CodeParams;

/// A code plus the number of deletions applied per trial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetupSpec {
    pub name: String,
    pub params: CodeParams,
    pub k: usize,
}

impl SetupSpec {
    pub fn new(name: impl Into<String>, params: CodeParams, k: usize) -> Result<Self> {
        if k == 0 || k > params.n() {
            return Err(Error::InvalidParams(format!(
                "deletion count {k} must lie in 1..={}",
                params.n()
            )));
        }
        Ok(Self {
            name: name.into(),
            params,
            k,
        })
    }
}

/// Matrix seeds of the two random-binary built-in setups.
pub const SETUP6_MATRIX_SEED: u64 = 6;
pub const SETUP7_MATRIX_SEED: u64 = 7;

/// The seven reference setups: `(k, n_c, l1, l2, z)` with Reed-Solomon
/// parity for setups 1-5 and random binary parity for 6 and 7.
pub fn builtin_setups() -> Vec<SetupSpec> {
    let rs = |n_c, l1, l2, z: usize| CodeParams::reed_solomon(n_c, l1, l2, z / n_c);
    let table = [
        (3, rs(4, 5, 3, 4)),
        (3, rs(4, 5, 3, 8)),
        (3, rs(4, 5, 3, 12)),
        (4, rs(4, 5, 3, 16)),
        (7, rs(6, 9, 7, 42)),
        (7, CodeParams::random_binary(6, 9, 9, 50, SETUP6_MATRIX_SEED)),
        (10, CodeParams::random_binary(7, 20, 20, 60, SETUP7_MATRIX_SEED)),
    ];
    table
        .into_iter()
        .enumerate()
        .map(|(i, (k, params))| SetupSpec {
            name: format!("setup{}", i + 1),
            params: params.expect("built-in parameters are valid"),
            k,
        })
        .collect()
}

/// Built-in setup by 1-based number.
pub fn builtin_setup(number: usize) -> Option<SetupSpec> {
    number.checked_sub(1).and_then(|i| builtin_setups().into_iter().nth(i))
}

/// Per-trial randomness: a ChaCha8 stream keyed by
/// `splitmix64(master_seed ^ splitmix64(index))`, so each trial is a pure
/// function of the master seed and its index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialRng {
    pub master_seed: u64,
    pub index: u64,
}

impl TrialRng {
    pub fn new(master_seed: u64, index: u64) -> Self {
        Self { master_seed, index }
    }

    pub fn stream_seed(&self) -> u64 {
        splitmix64(self.master_seed ^ splitmix64(self.index))
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.stream_seed())
    }
}

/// A uniformly random `n`-bit sequence.
pub fn random_sequence<R: RngCore>(rng: &mut R, n: usize) -> BitSeq {
    BitSeq::from_vec((0..n).map(|_| rng.gen_range(0..2u8)).collect()).expect("binary")
}

/// A uniformly random `k`-subset of `0..n`, sorted.
pub fn sample_deletions<R: RngCore>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    let mut positions = sample(rng, n, k).into_vec();
    positions.sort_unstable();
    positions
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Tally {
    trials: u64,
    r1: u64,
    r3: u64,
    r4: u64,
    r5: u64,
    r6: u64,
    max_r6: u64,
    r6_gt_1: u64,
    inclusion_failures: u64,
    truncated: u64,
}

impl Tally {
    fn merge(self, o: Self) -> Self {
        Self {
            trials: self.trials + o.trials,
            r1: self.r1 + o.r1,
            r3: self.r3 + o.r3,
            r4: self.r4 + o.r4,
            r5: self.r5 + o.r5,
            r6: self.r6 + o.r6,
            max_r6: self.max_r6.max(o.max_r6),
            r6_gt_1: self.r6_gt_1 + o.r6_gt_1,
            inclusion_failures: self.inclusion_failures + o.inclusion_failures,
            truncated: self.truncated + o.truncated,
        }
    }
}

/// Table-style list-size statistics for one setup.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateStats {
    pub setup: String,
    pub n: usize,
    pub k: usize,
    pub rate: f64,
    pub trials: u64,
    pub seed: u64,
    pub mean_r1: f64,
    pub mean_r3: f64,
    pub mean_r4: f64,
    pub mean_r5: f64,
    pub mean_r6: f64,
    pub max_r6: u64,
    pub count_r6_gt_1: u64,
    /// Non-truncated trials whose final list missed the true sequence.
    pub inclusion_failures: u64,
    pub truncated_trials: u64,
    /// Excluded from exports so that repeated runs are byte-identical.
    #[serde(skip)]
    pub wall_time_secs: f64,
}

fn run_one(code: &SyncCode, k: usize, rng: TrialRng, limits: DecoderLimits) -> Tally {
    let mut rng = rng.rng();
    let n = code.params().n();
    let x = random_sequence(&mut rng, n);
    let deletions = sample_deletions(&mut rng, n, k);
    let y = x.delete_positions(&deletions).expect("positions in range");
    let msg = code.encode(&x).expect("valid input");
    let report = code.decode(&y, &msg, limits).expect("valid input");
    let r6 = report.r6 as u64;
    let included = report.final_list.binary_search(&x).is_ok();
    Tally {
        trials: 1,
        r1: report.r1 as u64,
        r3: report.r3 as u64,
        r4: report.r4 as u64,
        r5: report.r5 as u64,
        r6,
        max_r6: r6,
        r6_gt_1: (r6 > 1) as u64,
        inclusion_failures: (!included && !report.truncated) as u64,
        truncated: report.truncated as u64,
    }
}

/// Runs `trials` independent trials. Results depend only on
/// `(setup, trials, seed, limits)`, not on thread scheduling.
pub fn run_trials(setup: &SetupSpec, trials: u64, seed: u64, limits: DecoderLimits) -> Result<AggregateStats> {
    if trials == 0 {
        return Err(Error::InvalidParams("at least one trial is required".into()));
    }
    let code = SyncCode::new(setup.params)?;
    let started = Instant::now();
    let tally = (0..trials)
        .into_par_iter()
        .map(|i| run_one(&code, setup.k, TrialRng::new(seed, i), limits))
        .reduce(Tally::default, Tally::merge);
    let mean = |sum: u64| sum as f64 / trials as f64;
    Ok(AggregateStats {
        setup: setup.name.clone(),
        n: setup.params.n(),
        k: setup.k,
        rate: setup.params.sync_rate(),
        trials,
        seed,
        mean_r1: mean(tally.r1),
        mean_r3: mean(tally.r3),
        mean_r4: mean(tally.r4),
        mean_r5: mean(tally.r5),
        mean_r6: mean(tally.r6),
        max_r6: tally.max_r6,
        count_r6_gt_1: tally.r6_gt_1,
        inclusion_failures: tally.inclusion_failures,
        truncated_trials: tally.truncated,
        wall_time_secs: started.elapsed().as_secs_f64(),
    })
}

/// Same as [`run_trials`] on the calling thread only.
pub fn run_trials_sequential(
    setup: &SetupSpec,
    trials: u64,
    seed: u64,
    limits: DecoderLimits,
) -> Result<AggregateStats> {
    if trials == 0 {
        return Err(Error::InvalidParams("at least one trial is required".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| Error::InvalidParams(e.to_string()))?;
    pool.install(|| run_trials(setup, trials, seed, limits))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

impl fmt::Display for ExportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Csv => "csv",
            Self::Json => "json",
        })
    }
}

/// One CSV row or JSON object per setup, fields in declaration order.
pub fn export_stats(stats: &[AggregateStats], format: ExportFormat) -> Result<Vec<u8>> {
    match format {
        ExportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for s in stats {
                w.serialize(s).map_err(|e| Error::Export(e.to_string()))?;
            }
            w.into_inner().map_err(|e| Error::Export(e.to_string()))
        }
        ExportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(stats).map_err(|e| Error::Export(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::LinearCode;

    #[test]
    fn builtin_table() {
        let setups = builtin_setups();
        let shape: Vec<(usize, usize, usize, usize, usize, usize)> = setups
            .iter()
            .map(|s| {
                let p = &s.params;
                (s.k, p.n(), p.l1(), p.l2(), p.n_c(), p.parity_bits())
            })
            .collect();
        assert_eq!(
            shape,
            vec![
                (3, 60, 5, 3, 4, 4),
                (3, 60, 5, 3, 4, 8),
                (3, 60, 5, 3, 4, 12),
                (4, 60, 5, 3, 4, 16),
                (7, 378, 9, 7, 6, 42),
                (7, 486, 9, 9, 6, 50),
                (10, 2800, 20, 20, 7, 60),
            ]
        );
        assert_eq!(
            setups[4].params.code(),
            LinearCode::ReedSolomon { parity_symbols: 7 }
        );
        assert_eq!(
            setups[5].params.code(),
            LinearCode::RandomBinary {
                checks: 50,
                seed: SETUP6_MATRIX_SEED
            }
        );
        assert_eq!(builtin_setup(1).unwrap().name, "setup1");
        assert!(builtin_setup(0).is_none() && builtin_setup(8).is_none());
    }

    #[test]
    fn trial_streams_are_pure() {
        let a = TrialRng::new(42, 7);
        assert_eq!(a.stream_seed(), TrialRng::new(42, 7).stream_seed());
        assert_ne!(a.stream_seed(), TrialRng::new(42, 8).stream_seed());
        assert_ne!(a.stream_seed(), TrialRng::new(43, 7).stream_seed());
        let mut r1 = a.rng();
        let mut r2 = a.rng();
        assert_eq!(random_sequence(&mut r1, 64), random_sequence(&mut r2, 64));
    }

    #[test]
    fn deletion_sets_are_sorted_and_distinct() {
        let mut rng = TrialRng::new(1, 0).rng();
        for k in 0..=10 {
            let d = sample_deletions(&mut rng, 10, k);
            assert_eq!(d.len(), k);
            assert!(d.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn rejects_bad_setups() {
        let p = CodeParams::reed_solomon(4, 5, 3, 1).unwrap();
        assert!(SetupSpec::new("s", p, 0).is_err());
        assert!(SetupSpec::new("s", p, 61).is_err());
        let s = SetupSpec::new("s", p, 2).unwrap();
        assert!(run_trials(&s, 0, 1, DecoderLimits::default()).is_err());
    }

    #[test]
    fn format_names() {
        assert_eq!("CSV".parse::<ExportFormat>().unwrap(), ExportFormat::Csv);
        assert_eq!(ExportFormat::Json.to_string(), "json");
        assert!(matches!("xml".parse::<ExportFormat>(), Err(Error::UnsupportedFormat(_))));
    }
}
