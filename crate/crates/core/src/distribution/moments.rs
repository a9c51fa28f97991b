use rug::{Float, Integer};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::distribution::pmf::Pmf;
use crate::error::{Error, Result};
use crate::model::Model;
use crate::numeric::{fmt_float, rational_to_float};

pub const DEFAULT_FRACTIONAL_BITS: u32 = 128;

/// Headroom above the requested fractional bits for the integer part of
/// `ln c_r` (at most about `n`) and for accumulated rounding.
const GUARD_BITS: u32 = 32;

/// Mean and variance of `ln c_r` for one PMF.
#[derive(Clone, Debug, PartialEq)]
pub struct LogMoments {
    pub model: Model,
    pub n: usize,
    pub fractional_bits: u32,
    pub mean: Float,
    pub variance: Float,
}

impl LogMoments {
    pub fn std_dev(&self) -> Float {
        Float::with_val(self.mean.prec(), self.variance.sqrt_ref())
    }
}

impl Serialize for LogMoments {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LogMoments", 5)?;
        st.serialize_field("model", &self.model)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("fractional_bits", &self.fractional_bits)?;
        st.serialize_field("mean", &fmt_float(&self.mean, 40))?;
        st.serialize_field("variance", &fmt_float(&self.variance, 40))?;
        st.end()
    }
}

pub fn log_moments(p: &Pmf) -> Result<LogMoments> {
    log_moments_with_bits(p, DEFAULT_FRACTIONAL_BITS)
}

/// `E[ln c_r]` and `Var[ln c_r]` carried with at least `fractional_bits`
/// bits after the binary point.
pub fn log_moments_with_bits(p: &Pmf, fractional_bits: u32) -> Result<LogMoments> {
    if p.entries.keys().any(|rho| *rho <= 0) {
        return Err(Error::InvalidArgument(
            "log-moments need c_r >= 1 (tree size at least 2)".into(),
        ));
    }
    let prec = fractional_bits + GUARD_BITS;
    let (mean, variance) = raw_log_moments(p, prec);
    Ok(LogMoments {
        model: p.model,
        n: p.n,
        fractional_bits,
        mean,
        variance,
    })
}

/// Two-pass mean and variance at `prec` bits.
pub(crate) fn raw_log_moments(p: &Pmf, prec: u32) -> (Float, Float) {
    let weighted: Vec<(Float, Float)> = p
        .entries
        .iter()
        .map(|(rho, w)| (ln_of(rho, prec), rational_to_float(w, prec)))
        .collect();
    let mut mean = Float::new(prec);
    for (l, w) in &weighted {
        mean += Float::with_val(prec, l * w);
    }
    let mut variance = Float::new(prec);
    for (l, w) in &weighted {
        let d = Float::with_val(prec, l - &mean);
        variance += Float::with_val(prec, d.square_ref()) * w;
    }
    (mean, variance)
}

pub(crate) fn ln_of(rho: &Integer, prec: u32) -> Float {
    Float::with_val(prec, rho).ln()
}

/// `E[ln c_r]` in double precision.
pub fn mean_log_f64(p: &Pmf) -> f64 {
    p.entries
        .iter()
        .map(|(rho, w)| crate::numeric::ln_integer_f64(rho) * w.to_f64())
        .sum()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::pmf::pmf;

    #[test]
    fn degenerate_and_small() {
        for model in Model::ALL {
            let m = log_moments(&pmf(2, model).unwrap()).unwrap();
            assert!(m.mean.is_zero() && m.variance.is_zero());
            assert!(log_moments(&pmf(1, model).unwrap()).is_err());
        }
        let m = log_moments(&pmf(4, Model::YuleHarding).unwrap()).unwrap();
        let expect = Float::with_val(200, 3).ln() * 2u32 / 3u32 + Float::with_val(200, 4).ln() / 3u32;
        let diff = Float::with_val(200, &m.mean - &expect).abs();
        assert!(diff < Float::with_val(200, -125f64).exp2());
    }

    #[test]
    fn doubling_precision_is_stable() {
        let p = pmf(12, Model::Uniform).unwrap();
        let a = log_moments(&p).unwrap();
        let b = log_moments_with_bits(&p, 256).unwrap();
        let tol = Float::with_val(64, -64f64).exp2();
        for (x, y) in [(&a.mean, &b.mean), (&a.variance, &b.variance)] {
            let rel = Float::with_val(300, x - y).abs() / y;
            assert!(rel < tol);
        }
    }
}
