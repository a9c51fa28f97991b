//! Tree data model, Newick I/O and the counting formulas for labeled and
//! ordered topologies and histories.

mod counts;
mod enumerate;
mod labeled;
mod newick;
mod shape;

pub use counts::{
    class_count, labeled_history_count, labelings_and_orientations, yule_probability, ClassCount,
    TreeClass,
};
pub use enumerate::{
    enumerate_shapes, enumerate_shapes_with_cap, ShapeCatalog, ShapeId, DEFAULT_SHAPE_CAP,
};
pub use labeled::{representative_labels, LabeledTopology, RawTree};
pub use newick::{parse_newick, render_newick};
pub use shape::Shape;
