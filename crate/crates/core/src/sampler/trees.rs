use rand::seq::SliceRandom;
use rand::Rng;

use crate::treekit::{representative_labels, LabeledTopology, RawTree};

/// Binary tree under construction; node `i` is a leaf when `kids[i]` is
/// `None`.
struct Arena {
    kids: Vec<Option<(usize, usize)>>,
    parent: Vec<Option<usize>>,
    leaf_label: Vec<usize>,
    root: usize,
}

impl Arena {
    fn single_leaf() -> Arena {
        Arena {
            kids: vec![None],
            parent: vec![None],
            leaf_label: vec![0],
            root: 0,
        }
    }

    fn push(&mut self, kids: Option<(usize, usize)>, label: usize) -> usize {
        self.kids.push(kids);
        self.parent.push(None);
        self.leaf_label.push(label);
        self.kids.len() - 1
    }

    fn to_raw(&self, names: &[String]) -> RawTree {
        // Iterative post-order keeps deep caterpillars off the call stack.
        let mut built: Vec<Option<RawTree>> = (0..self.kids.len()).map(|_| None).collect();
        let mut stack = vec![(self.root, false)];
        while let Some((v, expanded)) = stack.pop() {
            match self.kids[v] {
                None => built[v] = Some(RawTree::Leaf(names[self.leaf_label[v]].clone())),
                Some((a, b)) if expanded => {
                    let (ta, tb) = (built[a].take().unwrap(), built[b].take().unwrap());
                    built[v] = Some(RawTree::node(ta, tb));
                }
                Some((a, b)) => {
                    stack.push((v, true));
                    stack.push((a, false));
                    stack.push((b, false));
                }
            }
        }
        built[self.root].take().unwrap()
    }

    fn into_topology(self, n: usize) -> LabeledTopology {
        let names = representative_labels(n);
        LabeledTopology::from_raw(&self.to_raw(&names)).expect("sampled trees have distinct labels")
    }
}

/// Uniform labeled topology by sequential leaf insertion: leaf `k + 1`
/// lands on one of the `2k - 1` edges (root edge included) uniformly.
pub fn sample_uniform_labeled<R: Rng + ?Sized>(n: usize, rng: &mut R) -> LabeledTopology {
    assert!(n >= 1, "tree size must be at least 1");
    let mut t = Arena::single_leaf();
    for label in 1..n {
        // Every node owns the edge above it.
        let x = rng.gen_range(0..t.kids.len());
        let leaf = t.push(None, label);
        let joint = t.push(Some((x, leaf)), usize::MAX);
        match t.parent[x] {
            None => t.root = joint,
            Some(p) => {
                let (a, b) = t.kids[p].expect("parent is internal");
                t.kids[p] = Some(if a == x { (joint, b) } else { (a, joint) });
                t.parent[joint] = Some(p);
            }
        }
        t.parent[x] = Some(joint);
        t.parent[leaf] = Some(joint);
    }
    t.into_topology(n)
}

/// Yule–Harding labeled topology: split a uniformly chosen current leaf
/// until `n` leaves exist, then label the leaves by a uniform permutation.
pub fn sample_yule_labeled<R: Rng + ?Sized>(n: usize, rng: &mut R) -> LabeledTopology {
    assert!(n >= 1, "tree size must be at least 1");
    let mut t = Arena::single_leaf();
    let mut leaves = vec![0usize];
    while leaves.len() < n {
        let i = rng.gen_range(0..leaves.len());
        let v = leaves[i];
        let a = t.push(None, 0);
        let b = t.push(None, 0);
        t.kids[v] = Some((a, b));
        leaves[i] = a;
        leaves.push(b);
    }
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    for (&v, &l) in leaves.iter().zip(&labels) {
        t.leaf_label[v] = l;
    }
    t.into_topology(n)
}
