//! Certification pieces: coefficient bounds, tail bounds, grid scans and the
//! exact bisection for the dominant singularity.

use confign_core::certify::{
    bound_constants, certify_alpha, polynomial_root_checks, quotient_coefficients, scan_g,
    scan_s, tail_bound, u_seq, verify_bounds, DEFAULT_GRID_PRECISION,
};
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

fn close(x: f64, want: f64, rel: f64) -> bool {
    (x / want - 1.0).abs() < rel
}

#[test]
fn u_sequence_start_and_bound() {
    let u = u_seq(100).unwrap();
    assert_eq!(*u.at(0), 1);
    assert_eq!(*u.at(1), 0);
    assert_eq!(u.at(2), &Rational::from((-1, 2)));
    let bound = Rational::from((9, 5)).pow(100u32);
    assert!(Rational::from(u.at(100).abs_ref()) <= bound);
}

#[test]
fn coefficient_bounds_have_positive_margins() {
    let certs = verify_bounds().unwrap();
    assert_eq!(certs.len(), 4);
    for c in &certs {
        assert!(c.margin > 0, "{} {}..{}", c.lemma, c.from, c.to);
    }
    let ranges: Vec<(usize, usize)> = certs.iter().map(|c| (c.from, c.to)).collect();
    assert!(ranges.contains(&(0, 41)));
    assert!(ranges.contains(&(0, 25)));
    assert!(certs.iter().all(|c| c.to >= 25));
    assert!(certs.iter().any(|c| c.to == 500));
}

#[test]
fn tail_bounds() {
    assert_eq!(tail_bound(0), 9);
    let k100 = Rational::from((9, 10)).pow(101u32) * 10u32;
    assert_eq!(tail_bound(100), k100);
    assert!((tail_bound(100).to_f64() - 0.000_239_052_590_0).abs() < 1e-13);
    let tiny = Rational::from((1, Integer::from(10).pow(21u32)));
    assert!(tail_bound(500) <= tiny);
}

#[test]
fn bound_constants_match_reference_digits() {
    let c = bound_constants(&u_seq(100).unwrap());
    assert!(close(c.derivative_bound_decimal, 3598.862135, 1e-6), "{}", c.derivative_bound_decimal);
    assert!(close(c.gradient_bound_decimal, 89.628949, 1e-6), "{}", c.gradient_bound_decimal);
    assert!(close(c.r_bound_decimal, 3234.224489, 1e-6), "{}", c.r_bound_decimal);
}

#[test]
fn grid_minima_on_coarse_grids_hit_the_reference_points() {
    let u = u_seq(100).unwrap();
    let prec = DEFAULT_GRID_PRECISION;
    // The boundary minimum sits at t = 0, which every grid contains.
    let g = scan_g(&u, 1000, prec, 1);
    assert_eq!(g.argmin.0, 0);
    assert!(close(g.value, 0.01949528529, 1e-6), "{}", g.value);
    assert!(g.lower <= g.value && g.value <= g.upper);
    // The interior minimum sits at r = 1/2, theta = 502 pi / 1000.
    let a = quotient_coefficients(&u);
    let s = scan_s(&a, 10, 1000, prec, 1);
    assert_eq!(s.argmin, (10, 502));
    assert!(close(s.value, 0.9518894218, 1e-6), "{}", s.value);
}

#[test]
fn doubling_precision_leaves_minima_unchanged() {
    let u = u_seq(100).unwrap();
    let a = quotient_coefficients(&u);
    let prec = DEFAULT_GRID_PRECISION;
    let g1 = scan_g(&u, 400, prec, 2);
    let g2 = scan_g(&u, 400, 2 * prec, 2);
    assert!(close(g1.value, g2.value, 1e-12));
    let s1 = scan_s(&a, 20, 200, prec, 2);
    let s2 = scan_s(&a, 20, 200, 2 * prec, 2);
    assert!(close(s1.value, s2.value, 1e-12));
    assert_eq!(s1.argmin, s2.argmin);
}

#[test]
fn thread_count_does_not_change_scans() {
    let u = u_seq(100).unwrap();
    let prec = DEFAULT_GRID_PRECISION;
    assert_eq!(scan_g(&u, 300, prec, 1), scan_g(&u, 300, prec, 3));
}

#[test]
fn certified_root_interval() {
    let u = u_seq(500).unwrap();
    let root = certify_alpha(&u).unwrap();
    let lower = Rational::from((550_563_513_910_285u64, Integer::from(1) << 50));
    let upper = Rational::from((1_101_127_027_820_571u64, Integer::from(1) << 51));
    assert_eq!(root.lower, lower);
    assert_eq!(root.upper, upper);
    assert_eq!(Rational::from(&root.upper - &root.lower), Rational::from((1, Integer::from(1) << 51)));
    assert_eq!(root.sign_lower, -root.sign_upper);
    assert_ne!(root.sign_lower, 0);
    assert_eq!(root.alpha, "0.4889986317");
    assert!(root.value_lower.starts_with("2.708185805"), "{}", root.value_lower);
    assert!(root.value_upper.starts_with("-4.953373282"), "{}", root.value_upper);
    assert!(root.k_v_error <= 5e-14);
    let prec = 160;
    let k_v = Float::with_val(prec, Float::parse(&root.k_v).unwrap());
    let want = Float::with_val(prec, Float::parse("2.0449954971518340953").unwrap());
    assert!(Float::with_val(prec, k_v - want).abs() < 5e-14);
    let checks = polynomial_root_checks(&u);
    assert!(checks.sign_change_on_half_disk_radius);
    assert!(checks.beta_enclosed);
}

#[test]
fn root_needs_enough_coefficients() {
    assert!(certify_alpha(&u_seq(100).unwrap()).is_err());
}
