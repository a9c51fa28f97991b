use rug::{Float, Rational};
use serde::Serialize;

use crate::distribution::moments::{ln_of, raw_log_moments, DEFAULT_FRACTIONAL_BITS};
use crate::distribution::pmf::{pmf, Pmf};
use crate::error::Result;
use crate::model::Model;
use crate::numeric::{normal_cdf, serialize_rational};

/// Comparisons still unresolved at this precision are treated as ties,
/// which satisfy `<=`.
const MAX_PRECISION: u32 = 1 << 14;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CdfRow {
    pub y: f64,
    /// `P[ln c_r <= E + y * sigma]`, exact.
    #[serde(serialize_with = "serialize_rational")]
    pub probability: Rational,
    pub cdf: f64,
}

/// The grid `-3, -2.9, ..., 3`.
pub fn figure_grid() -> Vec<f64> {
    (-30..=30).map(|k| f64::from(k) / 10.0).collect()
}

pub fn cdf_table(n: usize, model: Model, y_grid: &[f64]) -> Result<Vec<CdfRow>> {
    cdf_table_for(&pmf(n, model)?, y_grid)
}

/// Standardized CDF of `ln c_r` at each `y`.
pub fn cdf_table_for(p: &Pmf, y_grid: &[f64]) -> Result<Vec<CdfRow>> {
    // Validates the support.
    crate::distribution::moments::log_moments(p)?;
    let values: Vec<_> = p.entries.keys().cloned().collect();
    let mut prefix = Vec::with_capacity(values.len() + 1);
    prefix.push(Rational::new());
    for w in p.entries.values() {
        let next = Rational::from(prefix.last().unwrap() + w);
        prefix.push(next);
    }
    let mut cmp = Comparator::new(p);
    let rows = y_grid
        .iter()
        .map(|&y| {
            let count = if values.len() == 1 {
                1
            } else {
                // Number of support points with ln(rho) <= threshold(y).
                let (mut lo, mut hi) = (0, values.len());
                while lo < hi {
                    let mid = (lo + hi) / 2;
                    if cmp.at_most_threshold(mid, y) {
                        lo = mid + 1;
                    } else {
                        hi = mid;
                    }
                }
                lo
            };
            let probability = prefix[count].clone();
            CdfRow {
                y,
                cdf: probability.to_f64(),
                probability,
            }
        })
        .collect();
    Ok(rows)
}

/// Largest `|cdf(y) - Phi(y)|` over the rows.
pub fn max_normal_deviation(rows: &[CdfRow]) -> f64 {
    rows.iter()
        .map(|r| (r.cdf - normal_cdf(r.y)).abs())
        .fold(0.0, f64::max)
}

struct Level {
    prec: u32,
    mean: Float,
    sigma: Float,
    logs: Vec<Float>,
    err_mean: Float,
    err_sigma: Float,
}

/// Decides `ln(rho_i) <= E + y * sigma` with error-bounded evaluation,
/// doubling the working precision until the sign is certain.
struct Comparator<'a> {
    pmf: &'a Pmf,
    levels: Vec<Level>,
}

impl<'a> Comparator<'a> {
    fn new(pmf: &'a Pmf) -> Self {
        Comparator {
            pmf,
            levels: Vec::new(),
        }
    }

    fn level(&mut self, idx: usize) -> &Level {
        while self.levels.len() <= idx {
            let prec = (DEFAULT_FRACTIONAL_BITS + 32) << self.levels.len();
            self.levels.push(self.build(prec));
        }
        &self.levels[idx]
    }

    fn build(&self, prec: u32) -> Level {
        let (mean, variance) = raw_log_moments(self.pmf, prec);
        let logs: Vec<Float> = self.pmf.entries.keys().map(|r| ln_of(r, prec)).collect();
        let lmax = logs.last().unwrap().to_f64() + 1.0;
        let k = self.pmf.entries.len() as f64 + 4.0;
        let u = Float::with_val(64, -(prec as f64)).exp2();
        // Running-sum bounds for nonnegative terms, each rounded a few times.
        let err_mean = Float::with_val(64, &u * (4.0 * k * lmax));
        let delta = Float::with_val(64, &err_mean + Float::with_val(64, &u * (4.0 * lmax)));
        let err_var = Float::with_val(64, &delta * (2.0 * lmax + 2.0))
            + Float::with_val(64, &u * (4.0 * k * lmax * lmax));
        let sigma = Float::with_val(prec, variance.sqrt_ref());
        let err_sigma = err_var.sqrt() + Float::with_val(64, &u * (sigma.to_f64() + 1.0));
        Level {
            prec,
            mean,
            sigma,
            logs,
            err_mean,
            err_sigma,
        }
    }

    fn at_most_threshold(&mut self, i: usize, y: f64) -> bool {
        let mut idx = 0;
        loop {
            let level = self.level(idx);
            let prec = level.prec;
            let threshold = Float::with_val(prec, &level.sigma * y) + &level.mean;
            let d = Float::with_val(prec, &threshold - &level.logs[i]);
            let u = Float::with_val(64, -(prec as f64)).exp2();
            let scale = threshold.to_f64().abs() + level.logs[i].to_f64().abs() + 1.0;
            let bound = Float::with_val(64, &level.err_sigma * y.abs())
                + &level.err_mean
                + Float::with_val(64, &u * (8.0 * scale));
            let bound = bound * 2u32;
            if Float::with_val(64, d.abs_ref()) > bound {
                return d.is_sign_positive();
            }
            if prec >= MAX_PRECISION {
                return true;
            }
            idx += 1;
        }
    }
}
