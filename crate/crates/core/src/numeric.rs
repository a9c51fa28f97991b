//! Small numeric helpers shared across modules: logarithms of exact values,
//! decimal rendering, compensated summation and correlation.

use rug::float::Round;
use rug::ops::AssignRound;
use rug::{Float, Integer, Rational};
use serde::Serializer;

/// `ln(x)` for a positive integer, correctly rounded at `precision` bits.
pub fn ln_integer(x: &Integer, precision: u32) -> Float {
    assert!(*x > 0, "logarithm of a non-positive integer");
    Float::with_val(precision, x).ln()
}

/// `ln(x)` for a positive rational at `precision` bits.
pub fn ln_rational(x: &Rational, precision: u32) -> Float {
    assert!(*x > 0, "logarithm of a non-positive rational");
    let work = precision + 16;
    let num = Float::with_val(work, x.numer()).ln();
    let den = Float::with_val(work, x.denom()).ln();
    Float::with_val(precision, num - den)
}

/// Natural logarithm of a positive integer in `f64`, exact for any size.
pub fn ln_integer_f64(x: &Integer) -> f64 {
    let (mantissa, exp) = x.to_f64_exp();
    mantissa.ln() + f64::from(exp) * std::f64::consts::LN_2
}

pub fn rational_to_float(x: &Rational, precision: u32) -> Float {
    let mut f = Float::new(precision);
    f.assign_round(x, Round::Nearest);
    f
}

/// Renders `x` with `digits` significant digits, plain notation when the
/// exponent is moderate and scientific otherwise (like `%.{digits}g`).
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        return format!("{mantissa}e{exp}");
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Renders a float with `digits` significant decimal digits.
pub fn fmt_float(x: &Float, digits: usize) -> String {
    let s = x.to_string_radix(10, Some(digits));
    // MPFR style is "d.ddde±x"; rewrite small exponents to plain notation.
    match s.split_once('e') {
        Some((mantissa, exp)) => {
            let exp: i64 = exp.parse().unwrap_or(0);
            if (-5..digits as i64).contains(&exp) {
                let neg = mantissa.starts_with('-');
                let body: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
                let point = exp + 1;
                let plain = if point <= 0 {
                    format!("0.{}{}", "0".repeat((-point) as usize), body)
                } else if (point as usize) >= body.len() {
                    format!("{}{}", body, "0".repeat(point as usize - body.len()))
                } else {
                    format!("{}.{}", &body[..point as usize], &body[point as usize..])
                };
                if neg {
                    format!("-{plain}")
                } else {
                    plain
                }
            } else {
                s
            }
        }
        None => s,
    }
}

/// Neumaier-compensated running sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.compensation);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Pearson correlation coefficient.
pub fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    sxy / (sxx * syy).sqrt()
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    let arg = Float::with_val(64, -x) / Float::with_val(64, 2).sqrt();
    0.5 * arg.erfc().to_f64()
}

pub(crate) fn serialize_integer<S: Serializer>(x: &Integer, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub(crate) fn serialize_integers<S: Serializer>(xs: &[Integer], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

pub(crate) fn serialize_rational<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(x))
}

/// `p/q` rendering (just `p` when `q = 1`).
pub fn format_rational(x: &Rational) -> String {
    if *x.denom() == 1 {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
