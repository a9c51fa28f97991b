use rug::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::momentseries::seq::RationalSeq;
use crate::numeric::ln_rational;

/// Working precision for growth ratios.
pub const GROWTH_PRECISION: u32 = 256;

pub const MIN_GROWTH_ENTRIES: usize = 50;

/// `k_e = 1/(1 - exp(-2 pi sqrt(3)/9))`, growth base of the Yule–Harding mean.
pub fn k_e(precision: u32) -> Float {
    let pi = Float::with_val(precision, rug::float::Constant::Pi);
    let arg = -(pi * Float::with_val(precision, 3).sqrt() * 2u32) / 9u32;
    let one_minus = Float::with_val(precision, 1) - arg.exp();
    one_minus.recip()
}

/// Growth base `4/3` of the uniform mean.
pub fn uniform_mean_base(precision: u32) -> Float {
    Float::with_val(precision, 4) / 3u32
}

/// `sqrt(3/2)`, the uniform mean constant.
pub fn uniform_mean_constant(precision: u32) -> Float {
    (Float::with_val(precision, 3) / 2u32).sqrt()
}

/// `4/(7(8 sqrt(2) - 11)) ~ 1.8215`, growth base of the uniform variance.
pub fn uniform_variance_base(precision: u32) -> Float {
    let s2 = Float::with_val(precision, 2).sqrt();
    let den = (s2 * 8u32 - 11u32) * 7u32;
    Float::with_val(precision, 4) / den
}

/// `sqrt(7(11 - sqrt(2))/34) ~ 1.405`, the uniform variance constant.
pub fn uniform_variance_constant(precision: u32) -> Float {
    let s2 = Float::with_val(precision, 2).sqrt();
    ((Float::with_val(precision, 11) - s2) * 7u32 / 34u32).sqrt()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    /// `a_n / base^n`.
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    pub name: String,
    pub base: f64,
    pub rows: Vec<GrowthRow>,
    pub last_ratio: f64,
    /// Ratio at the midpoint of the range, for the trend.
    pub mid_ratio: f64,
    /// `(last - mid) / last`.
    pub relative_drift: f64,
    /// `a_N / a_{N-1}`, a direct estimate of the growth base.
    pub successive_quotient: f64,
}

impl GrowthReport {
    pub fn ratio_at(&self, n: usize) -> Option<f64> {
        self.rows.iter().find(|r| r.n == n).map(|r| r.ratio)
    }
}

/// `a_n / base^n` through logarithms of the exact entries. Zero entries are
/// skipped.
pub fn growth_report(seq: &RationalSeq, base: &Float) -> Result<GrowthReport> {
    if seq.len() < MIN_GROWTH_ENTRIES {
        return Err(Error::InvalidArgument(format!(
            "growth report needs at least {MIN_GROWTH_ENTRIES} entries, got {}",
            seq.len()
        )));
    }
    let prec = GROWTH_PRECISION;
    let ln_base = Float::with_val(prec, base.ln_ref());
    let mut logs: Vec<(usize, Float)> = Vec::with_capacity(seq.len());
    for (n, a) in seq.indexed() {
        if *a > 0 {
            logs.push((n, ln_rational(a, prec)));
        }
    }
    let rows: Vec<GrowthRow> = logs
        .iter()
        .map(|(n, l)| {
            let scaled = Float::with_val(prec, l - Float::with_val(prec, &ln_base * *n as u32));
            GrowthRow {
                n: *n,
                ratio: scaled.exp().to_f64(),
            }
        })
        .collect();
    let last = rows.last().expect("non-empty");
    let target = last.n.div_ceil(2);
    let mid = rows.iter().find(|r| r.n >= target).expect("non-empty");
    let successive_quotient = match logs.as_slice() {
        [.., (n1, a), (n2, b)] if n2 - n1 == 1 => Float::with_val(prec, b - a).exp().to_f64(),
        _ => f64::NAN,
    };
    Ok(GrowthReport {
        name: seq.kind.name().to_string(),
        base: base.to_f64(),
        last_ratio: last.ratio,
        mid_ratio: mid.ratio,
        relative_drift: (last.ratio - mid.ratio) / last.ratio,
        successive_quotient,
        rows,
    })
}
