//! Structural invariants of shapes, labeled topologies and configuration
//! counts, checked exhaustively for small sizes and by property tests.

use confign_core::configcore::{
    antichain_count, balanced_family, caterpillar, cherry_count, config_profile,
    enumerate_root_configs, k0, root_config_count,
};
use confign_core::treekit::{
    class_count, enumerate_shapes, labeled_history_count, labelings_and_orientations,
    parse_newick, render_newick, yule_probability, LabeledTopology, RawTree, ShapeCatalog,
    TreeClass,
};
use confign_core::Shape;
use proptest::prelude::*;
use proptest::sample::Index;
use rug::{Float, Integer, Rational};

/// Wedderburn–Etherington numbers by their own recurrence.
fn wedderburn_etherington(max: usize) -> Vec<u64> {
    let mut w = vec![0u64, 1];
    for n in 2..=max {
        let mut total: u64 = (1..n.div_ceil(2)).map(|i| w[i] * w[n - i]).sum();
        if n % 2 == 0 {
            let h = w[n / 2];
            total += h * (h + 1) / 2;
        }
        w.push(total);
    }
    w
}

fn factorial(n: usize) -> Integer {
    Integer::from(Integer::factorial(n as u32))
}

/// Rankings of the internal nodes of `s` by merging the children's rankings.
fn rankings(s: &Shape) -> Integer {
    s.fold(&|| (Integer::from(1), 0u32), &|_, (a, i), (b, j)| {
        let merge = Integer::from(Integer::binomial_u(i + j, i));
        (a * b * merge, i + j + 1)
    })
    .0
}

/// Yule–Harding probability of one labeled topology: `2^(n-1)/n!` times
/// `1/(r-1)` for every internal node with `r >= 3` leaves below it.
fn yule_formula(s: &Shape) -> Rational {
    let n = s.size();
    let mut p = Rational::from((Integer::from(1) << (n as u32 - 1), factorial(n)));
    for r in s.internal_sizes() {
        if r >= 3 {
            p /= r as u32 - 1;
        }
    }
    p
}

#[test]
fn shape_counts_are_wedderburn_etherington() {
    let w = wedderburn_etherington(20);
    let catalog = ShapeCatalog::new(20).unwrap();
    for (n, &count) in w.iter().enumerate().take(21).skip(1) {
        let shapes = catalog.shapes(n);
        assert_eq!(shapes.len() as u64, count, "n={n}");
        assert!(shapes.windows(2).all(|p| p[0] < p[1]), "n={n} not strictly sorted");
    }
    assert_eq!(enumerate_shapes(15).unwrap().len(), 4850);
}

#[test]
fn class_sums_over_shapes() {
    for n in 1..=10 {
        let shapes = enumerate_shapes(n).unwrap();
        let mut lab_sum = Integer::new();
        let mut or_sum = Integer::new();
        let mut hist_sum = Integer::new();
        let mut yule_sum = Rational::new();
        let total_lab = class_count(n, TreeClass::LabeledTopologies).unwrap().value;
        let total_or = class_count(n, TreeClass::OrderedTopologies).unwrap().value;
        for s in &shapes {
            let (lab, or) = labelings_and_orientations(s);
            assert_eq!(
                Integer::from(&lab << (n as u32 - 1)),
                Integer::from(&or * &factorial(n)),
                "{s:?}"
            );
            assert_eq!(
                Rational::from((or.clone(), total_or.clone())),
                Rational::from((lab.clone(), total_lab.clone()))
            );
            assert_eq!(labeled_history_count(s), rankings(s), "{s:?}");
            hist_sum += Integer::from(&lab * &labeled_history_count(s));
            if n >= 2 {
                yule_sum += Rational::from(&lab * &yule_probability(s));
            }
            lab_sum += lab;
            or_sum += or;
        }
        assert_eq!(lab_sum, total_lab);
        assert_eq!(or_sum, total_or);
        assert_eq!(hist_sum, class_count(n, TreeClass::LabeledHistories).unwrap().value);
        if n >= 2 {
            assert_eq!(yule_sum, 1, "n={n}");
        }
    }
}

#[test]
fn configuration_bounds_hold_for_every_shape() {
    let catalog = ShapeCatalog::new(20).unwrap();
    for n in 2..=20 {
        for s in catalog.shapes(n) {
            let profile = config_profile(s);
            let c_r = &profile.root;
            assert_eq!(c_r, &root_config_count(s));
            assert!(&profile.total >= c_r);
            assert!(profile.total <= Integer::from(c_r * (2 * n as u32 - 1)), "{s:?}");
            assert!(profile.internal.iter().all(|c| c <= c_r));
            if n >= 3 {
                assert!(*c_r >= Integer::from(1) << cherry_count(s) as u32, "{s:?}");
            }
        }
    }
}

#[test]
fn three_counts_of_root_configurations_agree() {
    for n in 2..=12 {
        for s in enumerate_shapes(n).unwrap() {
            let c_r = root_config_count(&s);
            assert_eq!(antichain_count(&s).unwrap(), c_r, "{s:?}");
            let t = LabeledTopology::representative(&s);
            assert_eq!(enumerate_root_configs(&t).unwrap().len(), c_r, "{s:?}");
        }
    }
}

#[test]
fn extremal_families() {
    for n in 1..=12 {
        let counts: Vec<Integer> = enumerate_shapes(n).unwrap().iter().map(root_config_count).collect();
        let min = counts.iter().min().unwrap();
        let max = counts.iter().max().unwrap();
        assert_eq!(&root_config_count(&caterpillar(n)), min, "n={n}");
        assert_eq!(&root_config_count(&balanced_family(n)), max, "n={n}");
        assert_eq!(root_config_count(&caterpillar(n)), n - 1);
    }
}

#[test]
fn balanced_family_growth_bounds() {
    let prec = 128;
    let ln_k = k0(prec).ln();
    let power = |e: f64| Float::with_val(prec, &ln_k * e).exp() - 1u32;
    for n in 4..=20u32 {
        let c_r = Float::with_val(prec, root_config_count(&balanced_family(n as usize)));
        let lower = power(f64::from(n) - 0.25);
        let upper = power(f64::from(n));
        assert!(lower <= c_r && c_r <= upper, "n={n}: {lower} <= {c_r} <= {upper}");
    }
}

#[test]
fn small_worked_values() {
    let fig = parse_newick("(((a,b),(c,d)),(e,f));").unwrap();
    let s = fig.shape();
    assert_eq!(labelings_and_orientations(s), (Integer::from(45), Integer::from(2)));
    assert_eq!(root_config_count(s), 10);
    assert_eq!(cherry_count(s), 3);
    let profile = config_profile(s);
    assert_eq!(profile.total, 17);
    let balanced4 = Shape::join(Shape::caterpillar(2), Shape::caterpillar(2));
    assert_eq!(yule_probability(&balanced4), Rational::from((1, 9)));
    assert_eq!(yule_probability(&Shape::caterpillar(4)), Rational::from((1, 18)));
    assert_eq!(labeled_history_count(&balanced4), 2);
    assert_eq!(labeled_history_count(&Shape::caterpillar(4)), 1);
    assert_eq!(labeled_history_count(&balanced_family(15)), 2_745_600);
}

/// A random binary tree with `joins.len() + 1` leaves named `x0, x1, ...`,
/// built by repeatedly joining two members of a forest.
fn random_raw(joins: &[(Index, Index)]) -> RawTree {
    let mut forest: Vec<RawTree> =
        (0..=joins.len()).map(|i| RawTree::Leaf(format!("x{i}"))).collect();
    for (a, b) in joins {
        let first = forest.swap_remove(a.index(forest.len()));
        let second = forest.swap_remove(b.index(forest.len()));
        forest.push(RawTree::node(first, second));
    }
    forest.pop().unwrap()
}

fn mirror(t: &RawTree) -> RawTree {
    match t {
        RawTree::Leaf(_) => t.clone(),
        RawTree::Node(a, b) => RawTree::node(mirror(b), mirror(a)),
    }
}

fn raw_shape(t: &RawTree) -> Shape {
    match t {
        RawTree::Leaf(_) => Shape::leaf(),
        RawTree::Node(a, b) => Shape::join(raw_shape(a), raw_shape(b)),
    }
}

fn joins(max: usize) -> impl Strategy<Value = Vec<(Index, Index)>> {
    prop::collection::vec((any::<Index>(), any::<Index>()), 1..max)
}

proptest! {
    #[test]
    fn canonical_form_ignores_child_order(js in joins(30)) {
        let raw = random_raw(&js);
        let t = LabeledTopology::from_raw(&raw).unwrap();
        let m = LabeledTopology::from_raw(&mirror(&raw)).unwrap();
        prop_assert_eq!(&t, &m);
        let s = raw_shape(&raw);
        prop_assert_eq!(&s.canonicalize(), &s);
        prop_assert_eq!(&s.canonicalize().canonicalize(), &s);
        prop_assert_eq!(t.shape(), &s);
    }

    #[test]
    fn newick_round_trip(js in joins(30)) {
        let t = LabeledTopology::from_raw(&random_raw(&js)).unwrap();
        let text = render_newick(&t);
        let back = parse_newick(&text).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(render_newick(&back), text);
    }

    #[test]
    fn counts_agree_on_random_trees(js in joins(40)) {
        let s = raw_shape(&random_raw(&js));
        let n = s.size();
        let c_r = root_config_count(&s);
        prop_assert_eq!(antichain_count(&s).unwrap(), c_r.clone());
        let profile = config_profile(&s);
        prop_assert!(profile.total >= c_r);
        prop_assert!(profile.total <= Integer::from(&c_r * (2 * n as u32 - 1)));
        prop_assert!(c_r <= root_config_count(&balanced_family(n)));
        prop_assert!(c_r >= n - 1);
        let (lab, or) = labelings_and_orientations(&s);
        prop_assert_eq!(Integer::from(&lab << (n as u32 - 1)), or * factorial(n));
        prop_assert_eq!(labeled_history_count(&s), rankings(&s));
        prop_assert_eq!(yule_probability(&s), yule_formula(&s));
    }

    #[test]
    fn configurations_are_antichains_covering_leaves(js in joins(12)) {
        let t = LabeledTopology::from_raw(&random_raw(&js)).unwrap();
        let configs = enumerate_root_configs(&t).unwrap();
        prop_assert_eq!(configs.len(), root_config_count(t.shape()));
        // Leaf positions below the lineages of a configuration must
        // partition the leaves: no nesting and full coverage.
        let layout = confign_core::configcore::Layout::new(t.shape());
        let root = layout.root().unwrap();
        for config in &configs {
            let mut positions = Vec::new();
            for name in config {
                match name.strip_prefix('#') {
                    Some(id) => {
                        let id: usize = id.parse().unwrap();
                        prop_assert!(id != root);
                        let node = &layout.nodes[id];
                        positions.extend(node.first_leaf..node.first_leaf + node.size);
                    }
                    None => positions.push(t.labels().iter().position(|l| l == name).unwrap()),
                }
            }
            positions.sort_unstable();
            prop_assert_eq!(positions, (0..t.size()).collect::<Vec<_>>());
        }
    }
}
