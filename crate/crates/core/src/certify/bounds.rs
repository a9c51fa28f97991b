use rug::ops::Pow;
use rug::Rational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::momentseries::RationalSeq;
use crate::numeric::serialize_rational;

/// Ranges checked by the inductive proofs' base cases.
pub const MEAN_BOUND_BASE: usize = 41;
pub const U_BOUND_BASE: usize = 25;
/// Extended regression range.
pub const EXTENDED_RANGE: usize = 500;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCertificate {
    /// Human-readable inequality.
    pub lemma: String,
    pub from: usize,
    pub to: usize,
    /// Smallest relative slack `1 - |a_n| / bound_n` over `margin_from..=to`.
    #[serde(serialize_with = "serialize_rational")]
    pub margin: Rational,
    pub margin_decimal: f64,
    pub margin_index: usize,
    /// First index included in the margin.
    pub margin_from: usize,
    /// Indices where the bound holds with equality.
    pub tight_indices: Vec<usize>,
}

/// Checks `|a_n| <= c * q^n` for `n` in `from..=to`. Equality is allowed and
/// recorded; the margin is taken over indices `>= margin_from`.
pub fn check_geometric_bound(
    lemma: &str,
    seq: &RationalSeq,
    c: &Rational,
    q: &Rational,
    range: (usize, usize),
    margin_from: usize,
) -> Result<BoundCertificate> {
    let (from, to) = range;
    let mut margin: Option<(Rational, usize)> = None;
    let mut tight = Vec::new();
    for n in from..=to {
        let a = seq
            .get(n)
            .ok_or_else(|| Error::InvalidArgument(format!("{lemma}: missing entry {n}")))?;
        let bound = c * Rational::from(q.pow(n as u32));
        let abs = Rational::from(a.abs_ref());
        if abs > bound {
            return Err(Error::Certification(format!("{lemma} violated at n = {n}")));
        }
        if abs == bound {
            tight.push(n);
        }
        if n >= margin_from {
            let slack = Rational::from(1) - abs / bound;
            if margin.as_ref().is_none_or(|(m, _)| slack < *m) {
                margin = Some((slack, n));
            }
        }
    }
    let (margin, margin_index) =
        margin.ok_or_else(|| Error::InvalidArgument(format!("{lemma}: empty margin range")))?;
    if margin <= 0 {
        return Err(Error::Certification(format!(
            "{lemma}: no positive margin (tight at n = {margin_index})"
        )));
    }
    Ok(BoundCertificate {
        lemma: lemma.to_string(),
        from,
        to,
        margin_decimal: margin.to_f64(),
        margin,
        margin_index,
        margin_from,
        tight_indices: tight,
    })
}

pub const MEAN_BOUND_LEMMA: &str = "e_n <= (9/10)(3/2)^n";
pub const U_BOUND_LEMMA: &str = "|u_n| <= (9/5)^n";

/// The mean bound over `0..=to`, given `e` indexed from 1 (`e_0 = 0`).
pub fn mean_bound(e: &RationalSeq, to: usize) -> Result<BoundCertificate> {
    let mut with_zero = e.clone();
    if with_zero.offset == 1 {
        with_zero.entries.insert(0, Rational::new());
        with_zero.offset = 0;
    }
    check_geometric_bound(
        MEAN_BOUND_LEMMA,
        &with_zero,
        &Rational::from((9, 10)),
        &Rational::from((3, 2)),
        (0, to),
        0,
    )
}

/// The `u` bound over `0..=to`. `u_0 = 1` meets it with equality, so the
/// margin starts at `n = 1`.
pub fn u_bound(u: &RationalSeq, to: usize) -> Result<BoundCertificate> {
    check_geometric_bound(
        U_BOUND_LEMMA,
        u,
        &Rational::from(1),
        &Rational::from((9, 5)),
        (0, to),
        1,
    )
}

/// `sum_{k > K} (9/5)^k (1/2)^k = 10 (9/10)^(K+1)`, bounding the tail of
/// `U` beyond degree `K` on `|z| <= 1/2`.
pub fn tail_bound(k: usize) -> Rational {
    Rational::from((9, 10)).pow(k as u32 + 1) * 10u32
}
