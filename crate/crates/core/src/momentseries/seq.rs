use std::fmt;

use rug::{Integer, Rational};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{check_cap, Error, Result};
use crate::model::Model;
use crate::numeric::format_rational;

pub const DEFAULT_SEQ_CAP: usize = 4000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeqKind {
    EYh,
    SYh,
    VarYh,
    EUni,
    SUni,
    VarUni,
    U,
}

impl SeqKind {
    pub fn name(self) -> &'static str {
        match self {
            SeqKind::EYh => "e_yh",
            SeqKind::SYh => "s_yh",
            SeqKind::VarYh => "var_yh",
            SeqKind::EUni => "e_uni",
            SeqKind::SUni => "s_uni",
            SeqKind::VarUni => "var_uni",
            SeqKind::U => "u",
        }
    }

    fn mean(model: Model) -> SeqKind {
        match model {
            Model::Uniform => SeqKind::EUni,
            Model::YuleHarding => SeqKind::EYh,
        }
    }

    fn second(model: Model) -> SeqKind {
        match model {
            Model::Uniform => SeqKind::SUni,
            Model::YuleHarding => SeqKind::SYh,
        }
    }

    fn variance(model: Model) -> SeqKind {
        match model {
            Model::Uniform => SeqKind::VarUni,
            Model::YuleHarding => SeqKind::VarYh,
        }
    }
}

impl fmt::Display for SeqKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exact sequence `a_offset, a_{offset+1}, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeq {
    pub kind: SeqKind,
    pub offset: usize,
    pub entries: Vec<Rational>,
}

impl RationalSeq {
    pub fn get(&self, n: usize) -> Option<&Rational> {
        n.checked_sub(self.offset).and_then(|i| self.entries.get(i))
    }

    /// Panicking accessor.
    pub fn at(&self, n: usize) -> &Rational {
        self.get(n)
            .unwrap_or_else(|| panic!("{} has no entry at index {n}", self.kind))
    }

    pub fn last_index(&self) -> usize {
        self.offset + self.entries.len() - 1
    }

    pub fn indexed(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries.iter().enumerate().map(move |(i, a)| (i + self.offset, a))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(n, numerator, denominator)` rows.
    pub fn rows(&self) -> Vec<(usize, String, String)> {
        self.indexed()
            .map(|(n, a)| (n, a.numer().to_string(), a.denom().to_string()))
            .collect()
    }
}

impl Serialize for RationalSeq {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RationalSeq", 3)?;
        st.serialize_field("name", self.kind.name())?;
        st.serialize_field("offset", &self.offset)?;
        let entries: Vec<String> = self.entries.iter().map(format_rational).collect();
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

/// Scaled first and second moments: `x[n] = N_n e_n`, `y[n] = N_n s_n`
/// with `N_n` the model normalizer. Index 0 is unused.
pub(crate) struct ScaledMoments {
    pub x: Vec<Integer>,
    pub y: Vec<Integer>,
}

/// Both recurrences square the split law: with `R_n = (R_j + 1)(R_{n-j} + 1)`,
/// `E[R_n] = sum_j P[I_n = j] E[R_j + 1] E[R_{n-j} + 1]` and likewise for
/// `E[(R + 1)^2] = s + 2e + 1`.
pub(crate) fn scaled_moments(model: Model, n_max: usize, second: bool) -> ScaledMoments {
    let mut norm = vec![Integer::new()];
    let mut x = vec![Integer::new(), Integer::new()];
    let mut y = vec![Integer::new(), Integer::new()];
    // p[j] = X_j + N_j, q[j] = Y_j + 2 X_j + N_j.
    let mut p = vec![Integer::new()];
    let mut q = vec![Integer::new()];
    for n in 1..=n_max {
        norm.push(model.normalizer(n));
        if n >= 2 {
            let mut xn = Integer::new();
            let mut yn = Integer::new();
            for j in 1..=n / 2 {
                let mut m = model.split_multiplicity(n, j);
                if j != n - j {
                    m <<= 1;
                }
                xn += Integer::from(&p[j] * &p[n - j]) * &m;
                if second {
                    yn += Integer::from(&q[j] * &q[n - j]) * &m;
                }
            }
            x.push(xn);
            y.push(yn);
        }
        p.push(Integer::from(&x[n] + &norm[n]));
        if second {
            q.push(Integer::from(&y[n] + &x[n] * 2u32) + &norm[n]);
        } else {
            q.push(Integer::new());
        }
    }
    ScaledMoments { x, y }
}

fn unscale(model: Model, scaled: &[Integer], n_max: usize) -> Vec<Rational> {
    (1..=n_max)
        .map(|n| Rational::from((scaled[n].clone(), model.normalizer(n))))
        .collect()
}

fn check_size(n: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidArgument("sequence length must be at least 1".into()));
    }
    check_cap("moment sequence", n, DEFAULT_SEQ_CAP)
}

/// `e_1..e_N`, the mean root-configuration count.
pub fn mean_seq(model: Model, n: usize) -> Result<RationalSeq> {
    check_size(n)?;
    let sm = scaled_moments(model, n, false);
    Ok(RationalSeq {
        kind: SeqKind::mean(model),
        offset: 1,
        entries: unscale(model, &sm.x, n),
    })
}

/// `s_1..s_N`, the second moment.
pub fn second_moment_seq(model: Model, n: usize) -> Result<RationalSeq> {
    Ok(moment_seqs(model, n)?.1)
}

/// `s_n - e_n^2`.
pub fn variance_seq(model: Model, n: usize) -> Result<RationalSeq> {
    Ok(moment_seqs(model, n)?.2)
}

/// Mean, second-moment and variance sequences from one pass.
pub fn moment_seqs(model: Model, n: usize) -> Result<(RationalSeq, RationalSeq, RationalSeq)> {
    check_size(n)?;
    let sm = scaled_moments(model, n, true);
    let e = unscale(model, &sm.x, n);
    let s = unscale(model, &sm.y, n);
    let var = e
        .iter()
        .zip(&s)
        .map(|(e, s)| s - Rational::from(e.square_ref()))
        .collect();
    let wrap = |kind, entries| RationalSeq {
        kind,
        offset: 1,
        entries,
    };
    Ok((
        wrap(SeqKind::mean(model), e),
        wrap(SeqKind::second(model), s),
        wrap(SeqKind::variance(model), var),
    ))
}
