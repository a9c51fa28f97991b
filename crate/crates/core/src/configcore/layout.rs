use crate::treekit::Shape;

/// A child reference inside a [`Layout`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeRef {
    /// Leaf by left-to-right position.
    Leaf(usize),
    /// Internal node by layout index.
    Internal(usize),
}

#[derive(Clone, Debug)]
pub struct InternalNode {
    pub height: usize,
    pub first_leaf: usize,
    pub size: usize,
    pub left: NodeRef,
    pub right: NodeRef,
}

/// Internal nodes of a shape indexed by increasing height, ties broken left to
/// right. This is the stable id scheme used for internal lineages; for the
/// six-leaf tree `(((a,b),(c,d)),(e,f))` the ids 0..5 are the cherries
/// `(a,b)`, `(c,d)`, `(e,f)`, then the four-leaf clade and the root.
#[derive(Clone, Debug)]
pub struct Layout {
    pub nodes: Vec<InternalNode>,
}

impl Layout {
    pub fn new(shape: &Shape) -> Layout {
        let mut raw = Vec::with_capacity(shape.size().saturating_sub(1));
        let mut next_leaf = 0;
        build(shape, &mut next_leaf, &mut raw);
        // raw indices are post-order; sort into (height, first_leaf) order.
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by_key(|&i| (raw[i].height, raw[i].first_leaf));
        let mut rank = vec![0; raw.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let remap = |r: NodeRef| match r {
            NodeRef::Internal(i) => NodeRef::Internal(rank[i]),
            leaf => leaf,
        };
        let nodes = order
            .iter()
            .map(|&old| {
                let n = &raw[old];
                InternalNode {
                    left: remap(n.left),
                    right: remap(n.right),
                    ..n.clone()
                }
            })
            .collect();
        Layout { nodes }
    }

    pub fn root(&self) -> Option<usize> {
        self.nodes.len().checked_sub(1)
    }
}

fn build(shape: &Shape, next_leaf: &mut usize, out: &mut Vec<InternalNode>) -> (NodeRef, usize) {
    match shape.children() {
        None => {
            let r = NodeRef::Leaf(*next_leaf);
            *next_leaf += 1;
            (r, 0)
        }
        Some((l, r)) => {
            let first_leaf = *next_leaf;
            let (left, hl) = build(l, next_leaf, out);
            let (right, hr) = build(r, next_leaf, out);
            let height = 1 + hl.max(hr);
            out.push(InternalNode {
                height,
                first_leaf,
                size: shape.size(),
                left,
                right,
            });
            (NodeRef::Internal(out.len() - 1), height)
        }
    }
}
