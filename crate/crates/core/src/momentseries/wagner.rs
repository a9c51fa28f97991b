use rug::{Integer, Rational};
use serde::Serialize;

use crate::error::{check_cap, Error, Result};
use crate::numeric::CompensatedSum;
use crate::treekit::ShapeCatalog;

pub const MU_CAP: usize = 18;
pub const SIGMA_CAP: usize = 14;
pub const CHERRY_CAP: usize = 18;

/// Per-shape data under the Yule–Harding model.
#[derive(Clone, Debug)]
pub(crate) struct YuleShape {
    pub probability: Rational,
    pub c_r: Integer,
    pub cherries: u32,
}

/// Every shape up to `n_max` with its Yule–Harding probability: a split
/// `(t_L, t_R)` has weight `(2 - [t_L = t_R]) P(t_L) P(t_R) / (n - 1)`.
pub(crate) fn yule_shape_table(n_max: usize) -> Result<Vec<Vec<YuleShape>>> {
    let catalog = ShapeCatalog::new(n_max)?;
    Ok(catalog.tabulate(
        || YuleShape {
            probability: Rational::from(1),
            c_r: Integer::new(),
            cherries: 0,
        },
        |l, r, symmetric, n| {
            let mut probability = Rational::from(&l.probability * &r.probability) / (n as u32 - 1);
            if !symmetric {
                probability *= 2u32;
            }
            let c_r = Integer::from(&l.c_r + 1u32) * Integer::from(&r.c_r + 1u32);
            let cherries = if n == 2 { 1 } else { l.cherries + r.cherries };
            YuleShape {
                probability,
                c_r,
                cherries,
            }
        },
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WagnerConstants {
    pub mu_cap: usize,
    pub sigma_cap: usize,
    pub mu: f64,
    pub sigma2: f64,
}

/// Truncated lognormal constants for the Yule–Harding model, with toll
/// `f = ln(1 + 1/c_r)` and additive parameter `F = ln(c_r + 1)`.
///
/// Sums over ordered histories of size `n` are `(n-1)!` times the
/// Yule–Harding expectation over shapes, so every term depends only on the
/// sizes involved. Sizes below 2 carry `f = 0`. The `mu^2` inside `sigma2` is
/// the truncated `mu` at `mu_cap`.
pub fn wagner_constants(mu_cap: usize, sigma_cap: usize) -> Result<WagnerConstants> {
    check_cap("wagner mu", mu_cap, MU_CAP)?;
    check_cap("wagner sigma", sigma_cap, SIGMA_CAP)?;
    if mu_cap < 2 || sigma_cap < 2 {
        return Err(Error::InvalidArgument("wagner caps must be at least 2".into()));
    }
    let table = yule_shape_table(mu_cap.max(sigma_cap))?;
    // Expectations of f and f(2F - f) per size.
    let mut ef = vec![0.0; table.len()];
    let mut eg = vec![0.0; table.len()];
    for n in 2..table.len() {
        let (mut sf, mut sg) = (CompensatedSum::default(), CompensatedSum::default());
        for s in &table[n] {
            let c = s.c_r.to_f64();
            let f = (1.0 / c).ln_1p();
            let big_f = c.ln_1p();
            let p = s.probability.to_f64();
            sf.add(p * f);
            sg.add(p * f * (2.0 * big_f - f));
        }
        ef[n] = sf.value();
        eg[n] = sg.value();
    }
    // 2 S_f(n) / (n+1)! = 2 E_n[f] / (n (n+1)).
    let weight = |n: usize| 2.0 / (n as f64 * (n as f64 + 1.0));
    let mut mu = CompensatedSum::default();
    for (n, f) in ef.iter().enumerate().take(mu_cap + 1).skip(2) {
        mu.add(weight(n) * f);
    }
    let mu = mu.value();
    let mut sigma2 = CompensatedSum::default();
    for (n, g) in eg.iter().enumerate().take(sigma_cap + 1).skip(2) {
        sigma2.add(weight(n) * g);
    }
    sigma2.add(-mu * mu);
    for n1 in 2..=sigma_cap {
        for n2 in 2..=sigma_cap {
            let (a, b) = (n1 as f64, n2 as f64);
            let s = a + b;
            let bracket = (a - 1.0) * (b - 1.0) / (s - 1.0) - s
                + 2.0
                + (a - 1.0) * (b - 1.0) / (s * (s + 1.0))
                + (a - 1.0).powi(2) * (b - 1.0).powi(2) / ((s - 1.0) * s * (s + 1.0));
            sigma2.add(weight(n1) * ef[n1] * weight(n2) * ef[n2] * bracket);
        }
    }
    Ok(WagnerConstants {
        mu_cap,
        sigma_cap,
        mu,
        sigma2: sigma2.value(),
    })
}

/// `E_n[2^-ch]` under the Yule–Harding model, exact.
pub fn two_pow_neg_cherries_mean(n: usize) -> Result<Rational> {
    if n < 2 {
        return Err(Error::InvalidArgument("cherries need at least 2 leaves".into()));
    }
    check_cap("cherry transform", n, CHERRY_CAP)?;
    let table = yule_shape_table(n)?;
    Ok(table[n].iter().fold(Rational::new(), |acc, s| {
        acc + Rational::from(&s.probability >> s.cherries)
    }))
}
