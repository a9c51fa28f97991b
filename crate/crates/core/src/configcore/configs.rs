use std::collections::BTreeSet;

use crate::configcore::layout::{Layout, NodeRef};
use crate::error::{check_cap, Result};
use crate::treekit::LabeledTopology;

pub const DEFAULT_CONFIG_CAP: usize = 16;

/// Identifier of an internal lineage: the edge above internal node `id` in
/// [`Layout`] order.
pub fn internal_lineage_name(id: usize) -> String {
    format!("#{id}")
}

/// A root configuration: the set of lineages present just below the root.
/// Leaf lineages use leaf names, internal ones [`internal_lineage_name`].
pub type Configuration = BTreeSet<String>;

/// The explicit set of root configurations of a labeled topology, sorted.
pub fn enumerate_root_configs(t: &LabeledTopology) -> Result<Vec<Configuration>> {
    enumerate_root_configs_with_cap(t, DEFAULT_CONFIG_CAP)
}

pub fn enumerate_root_configs_with_cap(
    t: &LabeledTopology,
    cap: usize,
) -> Result<Vec<Configuration>> {
    check_cap("enumerate_root_configs", t.size(), cap)?;
    let layout = Layout::new(t.shape());
    let Some(root) = layout.root() else {
        return Ok(Vec::new());
    };
    // configs[i] = C(node i); processed bottom-up by layout order.
    let mut configs: Vec<Vec<Configuration>> = Vec::with_capacity(layout.nodes.len());
    for node in &layout.nodes {
        let options = |r: NodeRef| -> Vec<Configuration> {
            match r {
                NodeRef::Leaf(k) => vec![BTreeSet::from([t.labels()[k].clone()])],
                NodeRef::Internal(i) => {
                    let mut opts = configs[i].clone();
                    opts.push(BTreeSet::from([internal_lineage_name(i)]));
                    opts
                }
            }
        };
        let left = options(node.left);
        let right = options(node.right);
        let mut here = Vec::with_capacity(left.len() * right.len());
        for a in &left {
            for b in &right {
                here.push(a.union(b).cloned().collect());
            }
        }
        configs.push(here);
    }
    let mut out = configs.swap_remove(root);
    out.sort();
    Ok(out)
}

/// Sorted JSON arrays of identifier strings, one per configuration.
pub fn configurations_to_json(configs: &[Configuration]) -> serde_json::Value {
    serde_json::Value::Array(
        configs
            .iter()
            .map(|c| serde_json::Value::Array(c.iter().cloned().map(Into::into).collect()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configcore::root_config_count;
    use crate::error::Error;
    use crate::treekit::{parse_newick, Shape};

    fn set(items: &[&str]) -> Configuration {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn cherry() {
        let t = parse_newick("(a,b);").unwrap();
        assert_eq!(enumerate_root_configs(&t).unwrap(), vec![set(&["a", "b"])]);
    }

    #[test]
    fn three_leaves() {
        let t = parse_newick("((a,b),c);").unwrap();
        let got = enumerate_root_configs(&t).unwrap();
        assert_eq!(got, vec![set(&["#0", "c"]), set(&["a", "b", "c"])]);
    }

    #[test]
    fn counts_match() {
        for n in 2..=9 {
            for s in crate::treekit::enumerate_shapes(n).unwrap() {
                let t = LabeledTopology::representative(&s);
                let configs = enumerate_root_configs(&t).unwrap();
                assert_eq!(configs.len(), root_config_count(&s).to_usize().unwrap());
            }
        }
    }

    #[test]
    fn cap() {
        let t = LabeledTopology::representative(&Shape::caterpillar(17));
        assert!(matches!(enumerate_root_configs(&t), Err(Error::CapExceeded { .. })));
        assert_eq!(enumerate_root_configs_with_cap(&t, 17).unwrap().len(), 16);
    }

    #[test]
    fn json_is_sorted_strings() {
        let t = parse_newick("((a,b),c);").unwrap();
        let json = configurations_to_json(&enumerate_root_configs(&t).unwrap());
        assert_eq!(json.to_string(), r##"[["#0","c"],["a","b","c"]]"##);
    }
}
