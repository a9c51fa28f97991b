use std::cmp::Ordering;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::certify::bounds::tail_bound;
use crate::certify::grid::{beta_tilde, U1_DEGREE};
use crate::error::{Error, Result};
use crate::momentseries::RationalSeq;
use crate::numeric::{fmt_float, format_rational, serialize_rational};

/// Degree of the truncation used for the final bisection.
pub const TILDE_DEGREE: usize = 500;
pub const BISECTION_STEPS: u32 = 50;

/// Polynomial with rational coefficients stored as integers over one
/// common denominator, for exact evaluation at dyadic points.
pub struct ExactPoly {
    coeffs: Vec<Integer>,
    denom: Integer,
}

impl ExactPoly {
    /// `sum_{k <= degree} u_k z^k`.
    pub fn truncation(u: &RationalSeq, degree: usize) -> ExactPoly {
        let terms = &u.entries[..=degree - u.offset];
        let mut denom = Integer::from(1);
        for t in terms {
            denom.lcm_mut(t.denom());
        }
        let coeffs = terms
            .iter()
            .map(|t| Integer::from(&denom / t.denom()) * t.numer())
            .collect();
        ExactPoly { coeffs, denom }
    }

    /// `2^(m d) D p(num / 2^m)`: an integer with the sign of `p(num / 2^m)`.
    fn scaled_at(&self, num: &Integer, m: u32) -> Integer {
        let d = self.coeffs.len() - 1;
        let mut acc = self.coeffs[d].clone();
        for k in (0..d).rev() {
            acc *= num;
            acc += Integer::from(&self.coeffs[k] << (m * (d - k) as u32));
        }
        acc
    }

    pub fn sign_at_dyadic(&self, num: &Integer, m: u32) -> Ordering {
        self.scaled_at(num, m).cmp0()
    }

    /// Exact value at `num / 2^m`.
    pub fn value_at_dyadic(&self, num: &Integer, m: u32) -> Rational {
        let d = (self.coeffs.len() - 1) as u32;
        let den = Integer::from(&self.denom << (m * d));
        Rational::from((self.scaled_at(num, m), den))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertifiedRoot {
    #[serde(serialize_with = "serialize_rational")]
    pub lower: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub upper: Rational,
    /// Sign of the degree-500 truncation (and hence of `U`) at each end.
    pub sign_lower: i8,
    pub sign_upper: i8,
    pub value_lower: String,
    pub value_upper: String,
    #[serde(serialize_with = "serialize_rational")]
    pub tail: Rational,
    /// `alpha` to ten decimals.
    pub alpha: String,
    /// `1 / lower` to twenty significant digits.
    pub k_v: String,
    /// `(upper - lower) / lower^2`, bounding `1/lower - 1/alpha`.
    pub k_v_error: f64,
}

fn sign_i8(o: Ordering) -> i8 {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Bisection on `[0, 1/2]` with exact signs of the degree-500 truncation at
/// dyadic points; the signs transfer to `U` when the truncation exceeds the
/// tail bound in magnitude.
pub fn certify_alpha(u: &RationalSeq) -> Result<CertifiedRoot> {
    if u.last_index() < TILDE_DEGREE {
        return Err(Error::InvalidArgument(format!(
            "root certification needs u_0..u_{TILDE_DEGREE}"
        )));
    }
    let poly = ExactPoly::truncation(u, TILDE_DEGREE);
    let m = BISECTION_STEPS + 1;
    // Endpoints are lo / 2^m and hi / 2^m.
    let mut lo = Integer::new();
    let mut hi = Integer::from(1) << (m - 1);
    let s_lo = poly.sign_at_dyadic(&lo, m);
    let s_hi = poly.sign_at_dyadic(&hi, m);
    if s_lo == Ordering::Equal || s_hi == Ordering::Equal || s_lo == s_hi {
        return Err(Error::Certification("no sign change of the truncation on [0, 1/2]".into()));
    }
    for _ in 0..BISECTION_STEPS {
        let mid = Integer::from(&lo + &hi) >> 1;
        match poly.sign_at_dyadic(&mid, m) {
            Ordering::Equal => {
                return Err(Error::Certification("bisection hit an exact root".into()));
            }
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    let tail = tail_bound(TILDE_DEGREE);
    let v_lo = poly.value_at_dyadic(&lo, m);
    let v_hi = poly.value_at_dyadic(&hi, m);
    for (v, name) in [(&v_lo, "lower"), (&v_hi, "upper")] {
        if Rational::from(v.abs_ref()) <= tail {
            return Err(Error::Certification(format!(
                "|truncation| at the {name} endpoint does not exceed the tail bound"
            )));
        }
    }
    let scale = Integer::from(1) << m;
    let lower = Rational::from((lo, scale.clone()));
    let upper = Rational::from((hi, scale));
    let prec = 256;
    let inv = Float::with_val(prec, &lower).recip();
    let width = Rational::from(&upper - &lower);
    let k_v_error = (width / Rational::from(lower.square_ref())).to_f64();
    Ok(CertifiedRoot {
        sign_lower: sign_i8(v_lo.cmp0()),
        sign_upper: sign_i8(v_hi.cmp0()),
        value_lower: fmt_float(&Float::with_val(prec, &v_lo), 10),
        value_upper: fmt_float(&Float::with_val(prec, &v_hi), 10),
        alpha: decimals(&Float::with_val(prec, &lower), 10),
        k_v: fmt_float(&inv, 20),
        k_v_error,
        tail,
        lower,
        upper,
    })
}

/// `x` truncated to `places` decimals.
fn decimals(x: &Float, places: usize) -> String {
    let scaled = Float::with_val(x.prec(), x * Integer::from(10).pow(places as u32)).floor();
    let digits = scaled.to_integer().expect("finite").to_string();
    let pad = format!("{:0>width$}", digits, width = places + 1);
    let (int, frac) = pad.split_at(pad.len() - places);
    format!("{int}.{frac}")
}

/// Exact checks on `U_1` (degree 100): a sign change on `[0, 1/2]` and one
/// across `beta~ -+ 2^-50`, so `|beta - beta~| <= 2^-50`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolynomialRootChecks {
    pub sign_change_on_half_disk_radius: bool,
    pub beta_tilde: String,
    pub beta_enclosed: bool,
}

pub fn polynomial_root_checks(u: &RationalSeq) -> PolynomialRootChecks {
    let poly = ExactPoly::truncation(u, U1_DEGREE);
    let half = poly.sign_at_dyadic(&Integer::from(1), 1);
    let zero = poly.sign_at_dyadic(&Integer::new(), 1);
    let beta = beta_tilde();
    // beta~ = b / 2^51; beta~ -+ 2^-50 = (b -+ 2) / 2^51.
    let b = beta.numer().clone();
    let left = poly.sign_at_dyadic(&Integer::from(&b - 2u32), 51);
    let right = poly.sign_at_dyadic(&Integer::from(&b + 2u32), 51);
    PolynomialRootChecks {
        sign_change_on_half_disk_radius: zero != Ordering::Equal && half != Ordering::Equal && zero != half,
        beta_tilde: format_rational(&beta),
        beta_enclosed: left != Ordering::Equal && right != Ordering::Equal && left != right,
    }
}
