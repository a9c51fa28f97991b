use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::treekit::Shape;

/// A labeled topology: a canonical shape plus leaf names listed in the
/// left-to-right order of the canonical traversal.
///
/// Siblings with equal shapes are ordered by their label sequences, so the
/// canonical form is unique for each unordered labeled tree and derived
/// equality is equality of labeled topologies.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabeledTopology {
    shape: Shape,
    labels: Vec<String>,
}

/// A binary tree with named leaves and no canonical ordering imposed.
#[derive(Clone, Debug)]
pub enum RawTree {
    Leaf(String),
    Node(Box<RawTree>, Box<RawTree>),
}

impl RawTree {
    pub fn node(a: RawTree, b: RawTree) -> RawTree {
        RawTree::Node(Box::new(a), Box::new(b))
    }

    fn canonicalize(&self) -> (Shape, Vec<String>) {
        match self {
            RawTree::Leaf(name) => (Shape::leaf(), vec![name.clone()]),
            RawTree::Node(a, b) => {
                let (sa, la) = a.canonicalize();
                let (sb, lb) = b.canonicalize();
                let a_first = match sa.cmp(&sb) {
                    Ordering::Greater => true,
                    Ordering::Less => false,
                    Ordering::Equal => la <= lb,
                };
                let (first, second) = if a_first {
                    ((sa, la), (sb, lb))
                } else {
                    ((sb, lb), (sa, la))
                };
                let mut labels = first.1;
                labels.extend(second.1);
                (Shape::join(first.0, second.0), labels)
            }
        }
    }
}

impl LabeledTopology {
    pub fn from_raw(raw: &RawTree) -> Result<LabeledTopology> {
        let (shape, labels) = raw.canonicalize();
        check_labels(&labels)?;
        Ok(LabeledTopology { shape, labels })
    }

    /// Attaches `labels` (left-to-right over `shape`'s canonical traversal)
    /// and re-canonicalizes the sibling order.
    pub fn from_parts(shape: &Shape, labels: Vec<String>) -> Result<LabeledTopology> {
        if labels.len() != shape.size() {
            return Err(Error::InvalidArgument(format!(
                "{} labels for a shape with {} leaves",
                labels.len(),
                shape.size()
            )));
        }
        let mut it = labels.into_iter();
        let raw = to_raw(shape, &mut it);
        LabeledTopology::from_raw(&raw)
    }

    /// The representative labeling of `shape`: leaves named `a, b, c, ...`
    /// from left to right (or `t01, t02, ...` beyond 26 leaves).
    pub fn representative(shape: &Shape) -> LabeledTopology {
        let labels = representative_labels(shape.size());
        LabeledTopology::from_parts(shape, labels).expect("generated labels are distinct")
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// Rebuilds the raw tree in canonical child order.
    pub fn to_raw(&self) -> RawTree {
        let mut it = self.labels.iter().cloned();
        to_raw(&self.shape, &mut it)
    }
}

fn to_raw(shape: &Shape, labels: &mut impl Iterator<Item = String>) -> RawTree {
    match shape.children() {
        None => RawTree::Leaf(labels.next().expect("label count matches shape size")),
        Some((l, r)) => {
            let a = to_raw(l, labels);
            let b = to_raw(r, labels);
            RawTree::node(a, b)
        }
    }
}

fn check_labels(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(labels.len());
    for label in labels {
        if !seen.insert(label.as_str()) {
            return Err(Error::DuplicateLeaf(label.clone()));
        }
    }
    Ok(())
}

pub fn representative_labels(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        let width = n.to_string().len();
        (1..=n).map(|i| format!("t{i:0width$}")).collect()
    }
}

impl fmt::Debug for LabeledTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabeledTopology({})", crate::treekit::render_newick(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_siblings_ordered_by_labels() {
        let raw = RawTree::node(
            RawTree::node(RawTree::Leaf("c".into()), RawTree::Leaf("d".into())),
            RawTree::node(RawTree::Leaf("b".into()), RawTree::Leaf("a".into())),
        );
        let t = LabeledTopology::from_raw(&raw).unwrap();
        assert_eq!(t.labels(), ["a", "b", "c", "d"]);
    }

    #[test]
    fn duplicate_labels_rejected() {
        let raw = RawTree::node(RawTree::Leaf("a".into()), RawTree::Leaf("a".into()));
        assert_eq!(
            LabeledTopology::from_raw(&raw),
            Err(Error::DuplicateLeaf("a".into()))
        );
    }

    #[test]
    fn representative_is_left_to_right() {
        let s = Shape::join(Shape::caterpillar(3), Shape::caterpillar(3));
        let t = LabeledTopology::representative(&s);
        assert_eq!(t.labels(), ["a", "b", "c", "d", "e", "f"]);
        let big = LabeledTopology::representative(&Shape::caterpillar(30));
        assert_eq!(big.labels()[0], "t01");
        assert_eq!(big.labels()[29], "t30");
    }
}
