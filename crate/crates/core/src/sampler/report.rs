use std::thread;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::Model;
use crate::numeric::{ln_integer_f64, normal_cdf, CompensatedSum};
use crate::sampler::root_count::RootCountSampler;

/// Trials are dealt to this many independent RNG streams, so results do
/// not depend on the number of worker threads.
pub const LANES: u64 = 16;
pub const RNG_NAME: &str = "ChaCha8 (rand_chacha), stream = lane index, 16 lanes";

/// Generator for one lane of a run seeded with `seed`.
pub fn lane_rng(seed: u64, lane: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(lane);
    rng
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CdfPoint {
    pub y: f64,
    pub cdf: f64,
    pub normal: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleReport {
    pub model: Model,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub rng: String,
    pub mean_c_r: f64,
    pub var_c_r: f64,
    pub mean_log_c_r: f64,
    pub var_log_c_r: f64,
    /// Empirical CDF of `(ln c_r - mean) / sd` with sample moments.
    pub cdf: Vec<CdfPoint>,
    /// Kolmogorov–Smirnov distance between the standardized sample and the
    /// standard normal CDF.
    pub ks_statistic: f64,
    /// Dvoretzky–Kiefer–Wolfowitz half-width at `dkw_alpha`.
    pub dkw_epsilon: f64,
    pub dkw_alpha: f64,
}

impl SampleReport {
    pub fn within_dkw_band(&self) -> bool {
        self.ks_statistic <= self.dkw_epsilon
    }

    /// `(y, cdf, normal)` rows.
    pub fn cdf_rows(&self) -> Vec<(f64, f64, f64)> {
        self.cdf.iter().map(|p| (p.y, p.cdf, p.normal)).collect()
    }
}

pub const DEFAULT_DKW_ALPHA: f64 = 1e-3;

/// `sqrt(ln(2/alpha) / (2N))`.
pub fn dkw_epsilon(trials: u64, alpha: f64) -> f64 {
    ((2.0 / alpha).ln() / (2.0 * trials as f64)).sqrt()
}

struct LaneOutput {
    logs: Vec<f64>,
    sum: CompensatedSum,
    sum_sq: CompensatedSum,
}

fn run_lane(sampler: &RootCountSampler, seed: u64, lane: u64, trials: u64) -> LaneOutput {
    let mut rng = lane_rng(seed, lane);
    let mut out = LaneOutput {
        logs: Vec::with_capacity(trials as usize),
        sum: CompensatedSum::default(),
        sum_sq: CompensatedSum::default(),
    };
    for _ in 0..trials {
        let r = sampler.sample(&mut rng);
        let c = r.to_f64();
        out.sum.add(c);
        out.sum_sq.add(c * c);
        out.logs.push(ln_integer_f64(&r));
    }
    out
}

/// Monte Carlo summary of `c_r` from the split recurrence.
pub fn empirical_report(n: usize, model: Model, trials: u64, y_grid: &[f64], seed: u64) -> Result<SampleReport> {
    empirical_report_with_threads(n, model, trials, y_grid, seed, None)
}

pub fn empirical_report_with_threads(
    n: usize,
    model: Model,
    trials: u64,
    y_grid: &[f64],
    seed: u64,
    threads: Option<usize>,
) -> Result<SampleReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be positive".into()));
    }
    if n < 2 {
        return Err(Error::InvalidArgument("sampling needs at least 2 leaves".into()));
    }
    let sampler = RootCountSampler::new(n, model);
    let per_lane = |lane: u64| trials / LANES + u64::from(lane < trials % LANES);
    let threads = threads
        .unwrap_or_else(|| thread::available_parallelism().map_or(1, |n| n.get()))
        .clamp(1, LANES as usize);
    let mut outputs: Vec<Option<LaneOutput>> = (0..LANES).map(|_| None).collect();
    thread::scope(|scope| {
        let sampler = &sampler;
        let handles: Vec<_> = (0..threads)
            .map(|w| {
                scope.spawn(move || {
                    (0..LANES)
                        .filter(|lane| *lane as usize % threads == w)
                        .map(|lane| (lane, run_lane(sampler, seed, lane, per_lane(lane))))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (lane, out) in h.join().expect("sampler worker") {
                outputs[lane as usize] = Some(out);
            }
        }
    });
    let outputs: Vec<LaneOutput> = outputs.into_iter().map(|o| o.expect("every lane ran")).collect();

    let (mut sum, mut sum_sq) = (CompensatedSum::default(), CompensatedSum::default());
    for o in &outputs {
        sum.merge(&o.sum);
        sum_sq.merge(&o.sum_sq);
    }
    let nf = trials as f64;
    let mean_c_r = sum.value() / nf;
    let var_c_r = if trials > 1 {
        (sum_sq.value() - nf * mean_c_r * mean_c_r) / (nf - 1.0)
    } else {
        0.0
    };

    let mut logs: Vec<f64> = outputs.into_iter().flat_map(|o| o.logs).collect();
    let mut s = CompensatedSum::default();
    logs.iter().for_each(|&x| s.add(x));
    let mean_log = s.value() / nf;
    let mut sq = CompensatedSum::default();
    logs.iter().for_each(|&x| sq.add((x - mean_log) * (x - mean_log)));
    let var_log = if trials > 1 { sq.value() / (nf - 1.0) } else { 0.0 };
    let sd = var_log.sqrt();

    logs.sort_by(f64::total_cmp);
    let standardized = |x: f64| if sd > 0.0 { (x - mean_log) / sd } else { 0.0 };
    let cdf = y_grid
        .iter()
        .map(|&y| {
            let count = logs.partition_point(|&x| standardized(x) <= y);
            CdfPoint {
                y,
                cdf: count as f64 / nf,
                normal: normal_cdf(y),
            }
        })
        .collect();
    // Sup distance, checked on both sides of every jump.
    let mut ks: f64 = 0.0;
    let mut i = 0;
    while i < logs.len() {
        let mut j = i;
        while j < logs.len() && logs[j] == logs[i] {
            j += 1;
        }
        let phi = normal_cdf(standardized(logs[i]));
        ks = ks.max((phi - i as f64 / nf).abs()).max((j as f64 / nf - phi).abs());
        i = j;
    }
    Ok(SampleReport {
        model,
        n,
        trials,
        seed,
        rng: RNG_NAME.to_string(),
        mean_c_r,
        var_c_r,
        mean_log_c_r: mean_log,
        var_log_c_r: var_log,
        cdf,
        ks_statistic: ks,
        dkw_epsilon: dkw_epsilon(trials, DEFAULT_DKW_ALPHA),
        dkw_alpha: DEFAULT_DKW_ALPHA,
    })
}
