use rug::Integer;
use serde::Serialize;

use crate::configcore::layout::{Layout, NodeRef};
use crate::error::{Error, Result};
use crate::treekit::Shape;

/// Number of root configurations `c_r`: 0 for a leaf, otherwise
/// `(c_left + 1)(c_right + 1)`.
pub fn root_config_count(s: &Shape) -> Integer {
    s.fold(&|| Integer::new(), &|_, l, r| (l + 1u32) * (r + 1u32))
}

/// Configuration counts at every internal node, the root count and the total
/// over all nodes (leaves contribute zero).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigProfile {
    /// `c_eta` per internal node, indexed like [`Layout`] (height, then left
    /// to right).
    #[serde(serialize_with = "crate::numeric::serialize_integers")]
    pub internal: Vec<Integer>,
    #[serde(serialize_with = "crate::numeric::serialize_integer")]
    pub root: Integer,
    #[serde(serialize_with = "crate::numeric::serialize_integer")]
    pub total: Integer,
}

pub fn config_profile(s: &Shape) -> ConfigProfile {
    let layout = Layout::new(s);
    let mut internal: Vec<Integer> = Vec::with_capacity(layout.nodes.len());
    // Children always have smaller height, hence smaller layout index.
    for node in &layout.nodes {
        let child = |r: NodeRef| match r {
            NodeRef::Leaf(_) => Integer::from(1),
            NodeRef::Internal(i) => Integer::from(&internal[i] + 1u32),
        };
        let c = child(node.left) * child(node.right);
        internal.push(c);
    }
    let root = internal.last().cloned().unwrap_or_default();
    let total = internal.iter().sum();
    ConfigProfile { internal, root, total }
}

/// Internal nodes whose two children are both leaves.
pub fn cherry_count(s: &Shape) -> usize {
    s.fold(&|| 0usize, &|node, l, r| {
        let (a, b) = node.children().expect("internal");
        l + r + usize::from(a.is_leaf() && b.is_leaf())
    })
}

/// The pruned binary tree of a shape: its internal nodes, ordered by the
/// ancestor relation.
pub struct PrunedTree {
    /// Pruned-tree children of each node (0, 1 or 2 entries).
    pub children: Vec<Vec<usize>>,
    pub root: usize,
}

impl PrunedTree {
    pub fn new(s: &Shape) -> Option<PrunedTree> {
        let layout = Layout::new(s);
        let root = layout.root()?;
        let children = layout
            .nodes
            .iter()
            .map(|n| {
                [n.left, n.right]
                    .into_iter()
                    .filter_map(|r| match r {
                        NodeRef::Internal(i) => Some(i),
                        NodeRef::Leaf(_) => None,
                    })
                    .collect()
            })
            .collect();
        Some(PrunedTree { children, root })
    }

    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        self.children.is_empty()
    }

    /// Antichains of the subtree poset below `v`, the empty one included:
    /// either `{v}` alone, or an independent choice in each child subtree.
    fn antichains_below(&self, v: usize) -> Integer {
        let product: Integer = self.children[v]
            .iter()
            .map(|&c| self.antichains_below(c))
            .product();
        product + 1u32
    }

    pub fn nonempty_antichains(&self) -> Integer {
        self.antichains_below(self.root) - 1u32
    }
}

/// Number of non-empty antichains of the pruned binary tree of `s`.
pub fn antichain_count(s: &Shape) -> Result<Integer> {
    if s.size() < 2 {
        return Err(Error::InvalidArgument(
            "antichain_count needs at least two leaves".into(),
        ));
    }
    let pruned = PrunedTree::new(s).expect("shape has an internal node");
    Ok(pruned.nonempty_antichains())
}
