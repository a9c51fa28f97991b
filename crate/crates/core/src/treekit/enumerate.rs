use crate::error::{check_cap, Error, Result};
use crate::treekit::Shape;

pub const DEFAULT_SHAPE_CAP: usize = 20;

/// Identifies a shape inside a [`ShapeCatalog`]: `(size, index)`.
pub type ShapeId = (usize, usize);

/// Every canonical shape of each size `1..=max_size`, in ascending canonical
/// order, with the catalog ids of each shape's two root subtrees.
///
/// Per-shape quantities that follow a bottom-up recursion can be tabulated
/// with [`ShapeCatalog::tabulate`] at one combine step per shape.
pub struct ShapeCatalog {
    shapes: Vec<Vec<Shape>>,
    children: Vec<Vec<Option<(ShapeId, ShapeId)>>>,
}

impl ShapeCatalog {
    pub fn new(max_size: usize) -> Result<ShapeCatalog> {
        ShapeCatalog::with_cap(max_size, DEFAULT_SHAPE_CAP)
    }

    pub fn with_cap(max_size: usize, cap: usize) -> Result<ShapeCatalog> {
        if max_size == 0 {
            return Err(Error::InvalidArgument("shape size must be at least 1".into()));
        }
        check_cap("enumerate_shapes", max_size, cap)?;
        let mut shapes: Vec<Vec<Shape>> = vec![Vec::new(), vec![Shape::leaf()]];
        let mut children = vec![Vec::new(), vec![None]];
        for n in 2..=max_size {
            let mut level = Vec::new();
            let mut kids = Vec::new();
            // Ascending order on (left, right) with left >= right: left size
            // runs upward from ceil(n/2), then left index, then right index.
            for a in n.div_ceil(2)..n {
                let b = n - a;
                for i in 0..shapes[a].len() {
                    let right_end = if a == b { i + 1 } else { shapes[b].len() };
                    for j in 0..right_end {
                        level.push(Shape::join(shapes[a][i].clone(), shapes[b][j].clone()));
                        kids.push(Some(((a, i), (b, j))));
                    }
                }
            }
            shapes.push(level);
            children.push(kids);
        }
        Ok(ShapeCatalog { shapes, children })
    }

    pub fn max_size(&self) -> usize {
        self.shapes.len() - 1
    }

    pub fn shapes(&self, n: usize) -> &[Shape] {
        &self.shapes[n]
    }

    pub fn shape(&self, id: ShapeId) -> &Shape {
        &self.shapes[id.0][id.1]
    }

    pub fn children(&self, id: ShapeId) -> Option<(ShapeId, ShapeId)> {
        self.children[id.0][id.1]
    }

    /// Computes `leaf()` for the leaf and `combine(left, right, symmetric)`
    /// for every internal shape, reusing the values of its subtrees.
    pub fn tabulate<T>(
        &self,
        leaf: impl Fn() -> T,
        combine: impl Fn(&T, &T, bool, usize) -> T,
    ) -> Vec<Vec<T>> {
        let mut table: Vec<Vec<T>> = vec![Vec::new(), vec![leaf()]];
        for n in 2..=self.max_size() {
            let level = self.children[n]
                .iter()
                .map(|kids| {
                    let ((a, i), (b, j)) = kids.expect("internal shape");
                    combine(&table[a][i], &table[b][j], a == b && i == j, n)
                })
                .collect();
            table.push(level);
        }
        table
    }
}

/// All distinct canonical shapes with `n` leaves, in ascending canonical
/// order.
pub fn enumerate_shapes(n: usize) -> Result<Vec<Shape>> {
    enumerate_shapes_with_cap(n, DEFAULT_SHAPE_CAP)
}

pub fn enumerate_shapes_with_cap(n: usize, cap: usize) -> Result<Vec<Shape>> {
    let catalog = ShapeCatalog::with_cap(n, cap)?;
    Ok(catalog.shapes(n).to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| enumerate_shapes(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 3, 6, 11, 23, 46, 98]);
    }

    #[test]
    fn four_leaves() {
        let shapes = enumerate_shapes(4).unwrap();
        assert_eq!(shapes[0].key(), "((*,*),(*,*))");
        assert_eq!(shapes[1], Shape::caterpillar(4));
    }

    #[test]
    fn sorted_and_distinct() {
        let shapes = enumerate_shapes(11).unwrap();
        assert!(shapes.windows(2).all(|w| w[0] < w[1]));
        assert!(shapes.iter().all(|s| s.canonicalize() == *s && s.size() == 11));
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(
            enumerate_shapes(21),
            Err(Error::CapExceeded { requested: 21, cap: 20, .. })
        ));
        assert!(enumerate_shapes(0).is_err());
    }
}
