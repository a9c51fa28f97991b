//! Ancestral-configuration counts, explicit root configurations, the
//! antichain correspondence, cherries and the extremal shape families.

mod configs;
mod counts;
mod families;
mod layout;

pub use configs::{
    configurations_to_json, enumerate_root_configs, enumerate_root_configs_with_cap,
    internal_lineage_name, Configuration, DEFAULT_CONFIG_CAP,
};
pub use counts::{
    antichain_count, cherry_count, config_profile, root_config_count, ConfigProfile, PrunedTree,
};
pub use families::{
    balanced_family, caterpillar, k0, maximally_balanced, nearest_power_of_two_to_half,
};
pub use layout::{InternalNode, Layout, NodeRef};
