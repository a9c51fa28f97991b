use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// A rooted binary unlabeled topology in canonical form.
///
/// Shapes are totally ordered by `(size, left, right)` with the leaf as the
/// minimum. Every internal node stores its children with the *larger* child
/// first (`left >= right`), so two shapes are equal exactly when their
/// canonical structures coincide. Subtrees are shared through `Arc`, which
/// makes cloning cheap and lets enumerations reuse smaller shapes.
#[derive(Clone)]
pub struct Shape(Arc<Node>);

enum Node {
    Leaf,
    Internal { size: usize, left: Shape, right: Shape },
}

impl Shape {
    pub fn leaf() -> Shape {
        Shape(Arc::new(Node::Leaf))
    }

    /// Joins two subtrees under a new root, ordering them canonically.
    pub fn join(a: Shape, b: Shape) -> Shape {
        let (left, right) = if a >= b { (a, b) } else { (b, a) };
        let size = left.size() + right.size();
        Shape(Arc::new(Node::Internal { size, left, right }))
    }

    /// The comb with `n` leaves.
    pub fn caterpillar(n: usize) -> Shape {
        assert!(n >= 1, "a shape has at least one leaf");
        let mut shape = Shape::leaf();
        for _ in 1..n {
            shape = Shape::join(shape, Shape::leaf());
        }
        shape
    }

    pub fn size(&self) -> usize {
        match &*self.0 {
            Node::Leaf => 1,
            Node::Internal { size, .. } => *size,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(&*self.0, Node::Leaf)
    }

    /// `(left, right)` for an internal node, larger child first.
    pub fn children(&self) -> Option<(&Shape, &Shape)> {
        match &*self.0 {
            Node::Leaf => None,
            Node::Internal { left, right, .. } => Some((left, right)),
        }
    }

    /// Whether both root subtrees are the same shape.
    pub fn is_symmetric(&self) -> bool {
        self.children().is_some_and(|(l, r)| l == r)
    }

    /// Sizes of all internal nodes, in post-order.
    pub fn internal_sizes(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.size().saturating_sub(1));
        fn walk(s: &Shape, out: &mut Vec<usize>) {
            if let Some((l, r)) = s.children() {
                walk(l, out);
                walk(r, out);
                out.push(s.size());
            }
        }
        walk(self, &mut out);
        out
    }

    /// Bottom-up fold over the tree.
    pub fn fold<T>(&self, leaf: &impl Fn() -> T, internal: &impl Fn(&Shape, T, T) -> T) -> T {
        match self.children() {
            None => leaf(),
            Some((l, r)) => {
                let a = l.fold(leaf, internal);
                let b = r.fold(leaf, internal);
                internal(self, a, b)
            }
        }
    }

    /// A compact canonical key: `*` for a leaf, `(L,R)` for an internal node.
    pub fn key(&self) -> String {
        self.to_string()
    }

    /// Re-canonicalizes an arbitrary tree built from `(a, b)` pairs. Shapes
    /// produced by [`Shape::join`] are already canonical, so this is the
    /// identity on them.
    pub fn canonicalize(&self) -> Shape {
        match self.children() {
            None => Shape::leaf(),
            Some((l, r)) => Shape::join(l.canonicalize(), r.canonicalize()),
        }
    }
}

impl PartialEq for Shape {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Shape {}

impl PartialOrd for Shape {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Shape {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        match (&*self.0, &*other.0) {
            (Node::Leaf, Node::Leaf) => Ordering::Equal,
            (Node::Leaf, Node::Internal { .. }) => Ordering::Less,
            (Node::Internal { .. }, Node::Leaf) => Ordering::Greater,
            (
                Node::Internal { size: sa, left: la, right: ra },
                Node::Internal { size: sb, left: lb, right: rb },
            ) => sa.cmp(sb).then_with(|| la.cmp(lb)).then_with(|| ra.cmp(rb)),
        }
    }
}

impl Hash for Shape {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self.children() {
            None => 0u8.hash(state),
            Some((l, r)) => {
                1u8.hash(state);
                l.hash(state);
                r.hash(state);
            }
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.children() {
            None => f.write_str("*"),
            Some((l, r)) => write!(f, "({l},{r})"),
        }
    }
}

impl fmt::Debug for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Shape({self})")
    }
}
