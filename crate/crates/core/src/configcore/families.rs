use rug::{Float, Integer};

use crate::treekit::Shape;

/// The balanced family: `t_1` is a leaf and `t_n = (t_d, t_(n-d))` where `d`
/// is the power of two nearest to `n/2`. When two powers are equally near,
/// the larger one is used.
pub fn balanced_family(n: usize) -> Shape {
    assert!(n >= 1, "a shape has at least one leaf");
    let mut memo: Vec<Option<Shape>> = vec![None; n + 1];
    build_balanced(n, &mut memo)
}

fn build_balanced(n: usize, memo: &mut Vec<Option<Shape>>) -> Shape {
    if let Some(s) = &memo[n] {
        return s.clone();
    }
    let s = if n == 1 {
        Shape::leaf()
    } else {
        let d = nearest_power_of_two_to_half(n);
        Shape::join(build_balanced(d, memo), build_balanced(n - d, memo))
    };
    memo[n] = Some(s.clone());
    s
}

/// Power of two nearest to `n/2` (ties go to the larger power), `n >= 2`.
pub fn nearest_power_of_two_to_half(n: usize) -> usize {
    assert!(n >= 2);
    // Compare distances to n/2 in units of 1/2 to stay in integers.
    let mut best = 1usize;
    let mut p = 1usize;
    while p < n {
        let dist = (2 * p).abs_diff(n);
        let best_dist = (2 * best).abs_diff(n);
        if dist <= best_dist {
            best = p;
        }
        p *= 2;
    }
    best
}

pub fn caterpillar(n: usize) -> Shape {
    Shape::caterpillar(n)
}

/// The maximally balanced shape: every internal node splits its leaves into
/// `ceil(m/2)` and `floor(m/2)`.
pub fn maximally_balanced(n: usize) -> Shape {
    assert!(n >= 1, "a shape has at least one leaf");
    let mut memo: Vec<Option<Shape>> = vec![None; n + 1];
    build_even(n, &mut memo)
}

fn build_even(n: usize, memo: &mut Vec<Option<Shape>>) -> Shape {
    if let Some(s) = &memo[n] {
        return s.clone();
    }
    let s = if n == 1 {
        Shape::leaf()
    } else {
        Shape::join(build_even(n.div_ceil(2), memo), build_even(n / 2, memo))
    };
    memo[n] = Some(s.clone());
    s
}

/// The growth constant `k_0 ≈ 1.5028` of the largest root-configuration
/// counts: `lim x_m^(1/2^m)` for `x_0 = 1`, `x_(m+1) = x_m^2 + 1`.
pub fn k0(precision: u32) -> Float {
    // The truncation error after m squarings is below x_m^-2 / 2^(m+1),
    // roughly 2^(-1.17 * 2^m).
    let mut m = 1u32;
    while 1.17 * f64::from(1u32 << m.min(30)) < f64::from(precision) + 16.0 {
        m += 1;
    }
    let mut x = Integer::from(1);
    for _ in 0..m {
        x = x.square() + 1u32;
    }
    let log = Float::with_val(precision + 32, &x).ln() >> m;
    Float::with_val(precision, log.exp())
}
