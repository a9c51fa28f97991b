use std::collections::BTreeMap;

use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::configcore::root_config_count;
use crate::error::{check_cap, Error, Result};
use crate::model::Model;
use crate::numeric::format_rational;
use crate::treekit::{
    class_count, labelings_and_orientations, yule_probability, ShapeCatalog, TreeClass,
};

pub const DEFAULT_PMF_CAP: usize = 18;
pub const ORACLE_CAP: usize = 15;
pub const DIVISOR_SUM_CAP: usize = 8;

/// Exact law of the root-configuration count `c_r` for one tree size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pmf {
    pub model: Model,
    pub n: usize,
    /// `c_r` value to probability, all strictly positive.
    pub entries: BTreeMap<Integer, Rational>,
}

impl Pmf {
    pub fn total_mass(&self) -> Rational {
        self.entries.values().fold(Rational::new(), |acc, p| acc + p)
    }

    pub fn mean(&self) -> Rational {
        self.raw_moment(1)
    }

    pub fn second_moment(&self) -> Rational {
        self.raw_moment(2)
    }

    fn raw_moment(&self, k: u32) -> Rational {
        let mut acc = Rational::new();
        for (rho, p) in &self.entries {
            let power = Integer::from(rho.pow(k));
            acc += Rational::from(p * power);
        }
        acc
    }

    pub fn support(&self) -> impl Iterator<Item = &Integer> {
        self.entries.keys()
    }

    pub fn max_value(&self) -> &Integer {
        self.entries.keys().next_back().expect("non-empty support")
    }

    pub fn probability(&self, rho: &Integer) -> Rational {
        self.entries.get(rho).cloned().unwrap_or_default()
    }

    /// `(rho, numerator, denominator)` rows in ascending `rho`.
    pub fn rows(&self) -> Vec<(String, String, String)> {
        self.entries
            .iter()
            .map(|(rho, p)| (rho.to_string(), p.numer().to_string(), p.denom().to_string()))
            .collect()
    }
}

impl Serialize for Pmf {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            rho: String,
            p: String,
        }
        let entries: Vec<Entry> = self
            .entries
            .iter()
            .map(|(rho, p)| Entry {
                rho: rho.to_string(),
                p: format_rational(p),
            })
            .collect();
        let mut st = s.serialize_struct("Pmf", 3)?;
        st.serialize_field("model", &self.model)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

type Counts = BTreeMap<Integer, Integer>;

/// Integer-scaled laws: `table[n][rho]` is `N_n * P[R_n = rho]` where `N_n`
/// is the model normalizer.
fn scaled_laws(n: usize, model: Model) -> Vec<Counts> {
    let mut table: Vec<Counts> = vec![Counts::new(), Counts::from([(Integer::new(), Integer::from(1))])];
    for m in 2..=n {
        let mut level = Counts::new();
        for j in 1..=m / 2 {
            let mut weight = model.split_multiplicity(m, j);
            if j != m - j {
                weight *= 2u32;
            }
            for (r1, k1) in &table[j] {
                let a = Integer::from(r1 + 1u32);
                let w1 = Integer::from(&weight * k1);
                for (r2, k2) in &table[m - j] {
                    let key = &a * Integer::from(r2 + 1u32);
                    let add = Integer::from(&w1 * k2);
                    *level.entry(key).or_default() += add;
                }
            }
        }
        table.push(level);
    }
    table
}

fn to_pmf(counts: &Counts, n: usize, model: Model) -> Pmf {
    let norm = model.normalizer(n);
    let entries = counts
        .iter()
        .map(|(rho, k)| (rho.clone(), Rational::from((k.clone(), norm.clone()))))
        .collect();
    Pmf { model, n, entries }
}

/// Exact PMF of `c_r` by convolution over split sizes.
pub fn pmf(n: usize, model: Model) -> Result<Pmf> {
    pmf_with_cap(n, model, DEFAULT_PMF_CAP)
}

pub fn pmf_with_cap(n: usize, model: Model, cap: usize) -> Result<Pmf> {
    Ok(pmf_sequence_with_cap(n, model, cap)?.pop().expect("n >= 1"))
}

/// PMFs for every size `1..=n`.
pub fn pmf_sequence(n: usize, model: Model) -> Result<Vec<Pmf>> {
    pmf_sequence_with_cap(n, model, DEFAULT_PMF_CAP)
}

pub fn pmf_sequence_with_cap(n: usize, model: Model, cap: usize) -> Result<Vec<Pmf>> {
    if n < 1 {
        return Err(Error::InvalidArgument("tree size must be at least 1".into()));
    }
    check_cap("pmf", n, cap)?;
    let table = scaled_laws(n, model);
    Ok((1..=n).map(|m| to_pmf(&table[m], m, model)).collect())
}

/// Brute-force PMF: every shape weighted by its probability under the model.
pub fn pmf_oracle(n: usize, model: Model) -> Result<Pmf> {
    if n < 1 {
        return Err(Error::InvalidArgument("tree size must be at least 1".into()));
    }
    check_cap("pmf oracle", n, ORACLE_CAP)?;
    let catalog = ShapeCatalog::new(n)?;
    let labeled_total = class_count(n, TreeClass::LabeledTopologies)?.value;
    let mut entries: BTreeMap<Integer, Rational> = BTreeMap::new();
    for shape in catalog.shapes(n) {
        let (lab, _) = labelings_and_orientations(shape);
        let weight = match model {
            Model::Uniform => Rational::from((lab, labeled_total.clone())),
            Model::YuleHarding => yule_probability(shape) * lab,
        };
        *entries.entry(root_config_count(shape)).or_default() += weight;
    }
    Ok(Pmf { model, n, entries })
}

/// PMF from the divisor-sum recurrence: `P[R_n = rho]` sums, over split
/// sizes and divisors `d` of `rho`, `P[R_j = d - 1] * P[R_{n-j} = rho/d - 1]`.
/// Slow; a cross-check for small `n`.
pub fn pmf_divisor_sum(n: usize, model: Model) -> Result<Pmf> {
    if n < 1 {
        return Err(Error::InvalidArgument("tree size must be at least 1".into()));
    }
    check_cap("divisor-sum pmf", n, DIVISOR_SUM_CAP)?;
    let mut laws: Vec<BTreeMap<u64, Rational>> = vec![BTreeMap::new(), BTreeMap::from([(0, Rational::from(1))])];
    let mut max: Vec<u64> = vec![0, 0];
    for m in 2..=n {
        let bound = (1..m).map(|j| (max[j] + 1) * (max[m - j] + 1)).max().unwrap_or(1);
        let mut law = BTreeMap::new();
        for rho in 1..=bound {
            let mut p = Rational::new();
            for j in 1..m {
                let split = model.split_probability(m, j);
                let mut inner = Rational::new();
                for d in (1..=rho).filter(|d| rho % d == 0) {
                    if let (Some(a), Some(b)) = (laws[j].get(&(d - 1)), laws[m - j].get(&(rho / d - 1))) {
                        inner += Rational::from(a * b);
                    }
                }
                p += split * inner;
            }
            if p != 0 {
                law.insert(rho, p);
            }
        }
        max.push(*law.keys().next_back().expect("non-empty"));
        laws.push(law);
    }
    let entries = laws[n].iter().map(|(rho, p)| (Integer::from(*rho), p.clone())).collect();
    Ok(Pmf { model, n, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    fn law(p: &Pmf) -> Vec<(u64, Rational)> {
        p.entries.iter().map(|(k, v)| (k.to_u64().unwrap(), v.clone())).collect()
    }

    #[test]
    fn small_laws() {
        for model in Model::ALL {
            assert_eq!(law(&pmf(1, model).unwrap()), [(0, r(1, 1))]);
            assert_eq!(law(&pmf(2, model).unwrap()), [(1, r(1, 1))]);
        }
        let yh = pmf(4, Model::YuleHarding).unwrap();
        assert_eq!(law(&yh), [(3, r(2, 3)), (4, r(1, 3))]);
        assert_eq!(yh.mean(), r(10, 3));
        let uni = pmf(4, Model::Uniform).unwrap();
        assert_eq!(law(&uni), [(3, r(4, 5)), (4, r(1, 5))]);
        assert_eq!(uni.mean(), r(16, 5));
    }

    #[test]
    fn oracle_and_divisor_sums_agree() {
        for model in Model::ALL {
            for n in 1..=8 {
                let p = pmf(n, model).unwrap();
                assert_eq!(p, pmf_oracle(n, model).unwrap(), "{model} n={n}");
                assert_eq!(p, pmf_divisor_sum(n, model).unwrap(), "{model} n={n}");
            }
        }
    }

    #[test]
    fn caps() {
        assert!(matches!(pmf(19, Model::Uniform), Err(Error::CapExceeded { .. })));
        assert!(matches!(pmf(0, Model::Uniform), Err(Error::InvalidArgument(_))));
        assert!(pmf_oracle(16, Model::Uniform).is_err());
        assert!(pmf_divisor_sum(9, Model::Uniform).is_err());
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(pmf(4, Model::Uniform).unwrap()).unwrap();
        assert_eq!(v["model"], "uniform");
        assert_eq!(v["entries"][0]["p"], "4/5");
    }
}
