use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{catalan, factorial};
use crate::treekit::Shape;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TreeClass {
    LabeledTopologies,
    OrderedTopologies,
    LabeledHistories,
    OrderedHistories,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCount {
    pub class: TreeClass,
    pub n: usize,
    pub value: Integer,
}

/// Number of trees of size `n` in the given class.
pub fn class_count(n: usize, class: TreeClass) -> Result<ClassCount> {
    if n == 0 {
        return Err(Error::InvalidArgument("tree size must be at least 1".into()));
    }
    let value = match class {
        // (2n-2)! / (2^(n-1) (n-1)!)
        TreeClass::LabeledTopologies => {
            factorial(2 * n - 2) / (factorial(n - 1) << (n as u32 - 1))
        }
        TreeClass::OrderedTopologies => catalan(n - 1),
        // n! (n-1)! / 2^(n-1)
        TreeClass::LabeledHistories => {
            (factorial(n) * factorial(n - 1)) >> (n as u32 - 1)
        }
        TreeClass::OrderedHistories => factorial(n - 1),
    };
    Ok(ClassCount { class, n, value })
}

/// `(lab, or)`: leaf labelings and planar orientations of a shape.
pub fn labelings_and_orientations(s: &Shape) -> (Integer, Integer) {
    s.fold(
        &|| (Integer::from(1), Integer::from(1)),
        &|node, (lab_l, or_l), (lab_r, or_r)| {
            let (l, _) = node.children().expect("internal");
            let n = node.size() as u32;
            let mut lab = lab_l * lab_r * Integer::from(Integer::binomial_u(n, l.size() as u32));
            let mut or = or_l * or_r;
            if node.is_symmetric() {
                lab >>= 1;
            } else {
                or <<= 1;
            }
            (lab, or)
        },
    )
}

/// Labeled histories per labeling of `s`: `(n-1)! / prod (size(v) - 1)` over
/// internal nodes with at least three descendant leaves.
pub fn labeled_history_count(s: &Shape) -> Integer {
    let n = s.size();
    let denominator: Integer = s
        .internal_sizes()
        .into_iter()
        .filter(|&k| k >= 3)
        .map(|k| Integer::from(k - 1))
        .product();
    factorial(n.saturating_sub(1)) / denominator
}

/// Yule–Harding probability of one labeled topology with shape `s`.
pub fn yule_probability(s: &Shape) -> Rational {
    let n = s.size();
    let denominator: Integer = s
        .internal_sizes()
        .into_iter()
        .filter(|&k| k >= 3)
        .map(|k| Integer::from(k - 1))
        .product::<Integer>()
        * factorial(n);
    Rational::from((Integer::from(1) << (n as u32 - 1), denominator))
}
