//! The two random-tree models and their root split laws.
//!
//! Both models are handled through the same integer bookkeeping. Each model
//! has a family of *ordered* objects of size `n` drawn uniformly at random:
//! ordered unlabeled topologies (Catalan many) for the uniform model and
//! ordered unlabeled histories (`(n-1)!` many) for Yule–Harding. An ordered
//! object of size `n` with a left subtree of size `j` is assembled from one
//! ordered object of each side in `split_multiplicity(n, j)` ways, so
//!
//! ```text
//! normalizer(n) = sum_j split_multiplicity(n, j) * normalizer(j) * normalizer(n - j)
//! ```
//!
//! and every exact recurrence in the crate runs on integers scaled by
//! `normalizer(n)`.

use std::fmt;
use std::str::FromStr;

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    /// Uniform distribution over labeled topologies.
    Uniform,
    /// Yule–Harding distribution (uniform over labeled histories).
    YuleHarding,
}

impl Model {
    pub const ALL: [Model; 2] = [Model::Uniform, Model::YuleHarding];

    pub fn name(self) -> &'static str {
        match self {
            Model::Uniform => "uniform",
            Model::YuleHarding => "yule",
        }
    }

    /// Number of equiprobable ordered objects of size `n` (`n >= 1`).
    pub fn normalizer(self, n: usize) -> Integer {
        assert!(n >= 1, "normalizer needs n >= 1");
        match self {
            Model::Uniform => catalan(n - 1),
            Model::YuleHarding => factorial(n - 1),
        }
    }

    /// Ways to merge a left ordered object of size `j` with a right one of
    /// size `n - j`.
    pub fn split_multiplicity(self, n: usize, j: usize) -> Integer {
        assert!(n >= 2 && (1..n).contains(&j));
        match self {
            Model::Uniform => Integer::from(1),
            Model::YuleHarding => Integer::from(Integer::binomial_u(n as u32 - 2, j as u32 - 1)),
        }
    }

    /// `P[I_n = j]`, the law of the left root subtree size.
    pub fn split_probability(self, n: usize, j: usize) -> Rational {
        match self {
            Model::Uniform => Rational::from((
                catalan(j - 1) * catalan(n - j - 1),
                catalan(n - 1),
            )),
            Model::YuleHarding => {
                assert!(n >= 2 && (1..n).contains(&j));
                Rational::from((1, n as u64 - 1))
            }
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "uniform" | "uni" => Ok(Model::Uniform),
            "yule" | "yh" | "yule-harding" | "yuleharding" => Ok(Model::YuleHarding),
            other => Err(Error::InvalidArgument(format!("unknown model `{other}`"))),
        }
    }
}

pub fn factorial(n: usize) -> Integer {
    Integer::from(Integer::factorial(n as u32))
}

/// The Catalan number `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> Integer {
    Integer::from(Integer::binomial_u(2 * n as u32, n as u32)) / (n as u64 + 1)
}
