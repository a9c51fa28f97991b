//! Exact combinatorics of root ancestral configurations for matching gene
//! and species trees.
//!
//! * [`treekit`]: shapes, labeled topologies, Newick and the tree-class counts.
//! * [`configcore`]: configuration counts, explicit configurations, antichains.
//! * [`distribution`]: exact laws of the root-configuration count.
//! * [`momentseries`]: exact moment sequences and growth diagnostics.
//! * [`certify`]: certified isolation of the dominant singularity of the
//!   second-moment generating function.
//! * [`sampler`]: Monte Carlo trees and root-configuration counts.

pub mod certify;
pub mod configcore;
pub mod distribution;
pub mod error;
pub mod model;
pub mod momentseries;
pub mod numeric;
pub mod sampler;
pub mod treekit;

pub use error::{Error, Result};
pub use model::Model;
pub use treekit::{LabeledTopology, Shape};
