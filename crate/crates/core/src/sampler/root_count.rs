use rand::Rng;
use rug::{Integer, Rational};

use crate::model::{catalan, Model};

/// Samples `R_n` from `R_n = (R_j + 1)(R*_{n-j} + 1)` with `j` drawn from the
/// model's split law, without building a tree.
#[derive(Clone, Debug)]
pub struct RootCountSampler {
    model: Model,
    n: usize,
    /// `cdf[m][j - 1] = P[I_m <= j]` for the uniform model.
    cdf: Vec<Vec<f64>>,
}

impl RootCountSampler {
    pub fn new(n: usize, model: Model) -> Self {
        assert!(n >= 1, "tree size must be at least 1");
        let cdf = match model {
            Model::YuleHarding => Vec::new(),
            Model::Uniform => {
                let cat: Vec<Integer> = (0..n).map(catalan).collect();
                (0..=n)
                    .map(|m| {
                        if m < 2 {
                            return Vec::new();
                        }
                        let mut acc = Integer::new();
                        (1..m)
                            .map(|j| {
                                acc += Integer::from(&cat[j - 1] * &cat[m - j - 1]);
                                Rational::from((acc.clone(), cat[m - 1].clone())).to_f64()
                            })
                            .collect()
                    })
                    .collect()
            }
        };
        RootCountSampler { model, n, cdf }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn model(&self) -> Model {
        self.model
    }

    /// Split size of the left subtree at a node with `m >= 2` leaves.
    pub fn split<R: Rng + ?Sized>(&self, m: usize, rng: &mut R) -> usize {
        match self.model {
            Model::YuleHarding => rng.gen_range(1..m),
            Model::Uniform => {
                let table = &self.cdf[m];
                let x: f64 = rng.gen();
                // The last entry is 1 up to rounding; clamp to the top split.
                table.partition_point(|&c| c <= x).min(m - 2) + 1
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Integer {
        self.sample_size(self.n, rng)
    }

    /// `R_m` for any `m <= n`.
    pub fn sample_size<R: Rng + ?Sized>(&self, m: usize, rng: &mut R) -> Integer {
        enum Task {
            Visit(usize),
            Combine,
        }
        let mut tasks = vec![Task::Visit(m)];
        let mut values: Vec<Integer> = Vec::new();
        while let Some(task) = tasks.pop() {
            match task {
                Task::Visit(1) => values.push(Integer::new()),
                Task::Visit(2) => values.push(Integer::from(1)),
                Task::Visit(size) => {
                    let j = self.split(size, rng);
                    tasks.push(Task::Combine);
                    tasks.push(Task::Visit(size - j));
                    tasks.push(Task::Visit(j));
                }
                Task::Combine => {
                    let b = values.pop().expect("right value");
                    let a = values.pop().expect("left value");
                    values.push((a + 1u32) * (b + 1u32));
                }
            }
        }
        values.pop().expect("root value")
    }
}

pub fn sample_root_count<R: Rng + ?Sized>(n: usize, model: Model, rng: &mut R) -> Integer {
    RootCountSampler::new(n, model).sample(rng)
}
