use rug::Rational;

use crate::error::{check_cap, Result};
use crate::model::Model;
use crate::momentseries::{mean_seq, RationalSeq, SeqKind};

pub const U_SEQ_CAP: usize = 600;

/// Coefficients `u_0..u_N` of `U(z) = exp(-int_0^z S(x)/x dx)`, from the
/// linear recurrence driven by the Yule–Harding means (`e_0 = 0`):
///
/// `n(n-1) u_n = sum_k [(3n-k-3) - 4(n-2k-1) e_{n-k} + 4 (e_0 + ... + e_{n-k-1})] u_k`
/// for `n >= 2`, with `u_0 = 1`, `u_1 = 0`.
pub fn u_seq(n: usize) -> Result<RationalSeq> {
    check_cap("u sequence", n, U_SEQ_CAP)?;
    let mut e = vec![Rational::new()];
    if n >= 1 {
        e.extend(mean_seq(Model::YuleHarding, n)?.entries);
    }
    // prefix[m] = e_0 + ... + e_m
    let mut prefix = Vec::with_capacity(e.len());
    let mut acc = Rational::new();
    for x in &e {
        acc += x;
        prefix.push(acc.clone());
    }
    let mut u = vec![Rational::from(1)];
    if n >= 1 {
        u.push(Rational::new());
    }
    for m in 2..=n {
        let mut sum = Rational::new();
        for (k, uk) in u.iter().enumerate() {
            if *uk == 0 {
                continue;
            }
            let (mi, ki) = (m as i64, k as i64);
            let mut c = Rational::from(3 * mi - ki - 3);
            c -= Rational::from(&e[m - k] * (4 * (mi - 2 * ki - 1)));
            c += Rational::from(&prefix[m - k - 1] * 4u32);
            sum += c * uk;
        }
        u.push(sum / (m as u64 * (m as u64 - 1)));
    }
    Ok(RationalSeq {
        kind: SeqKind::U,
        offset: 0,
        entries: u,
    })
}
