//! Exact laws of the root configuration count against shape enumeration and
//! the moment recurrences.

use std::collections::BTreeSet;

use confign_core::configcore::root_config_count;
use confign_core::distribution::{
    cdf_table, figure_grid, log_moments, log_moments_with_bits, max_normal_deviation, pmf,
    pmf_oracle, pmf_sequence,
};
use confign_core::momentseries::moment_seqs;
use confign_core::treekit::enumerate_shapes;
use confign_core::Model;
use rug::{Float, Integer, Rational};

#[test]
fn recursion_matches_shape_enumeration() {
    for model in Model::ALL {
        for n in 2..=12 {
            assert_eq!(pmf(n, model).unwrap(), pmf_oracle(n, model).unwrap(), "{model:?} n={n}");
        }
    }
}

#[test]
fn moments_match_recurrences() {
    for model in Model::ALL {
        let (e, s, _) = moment_seqs(model, 18).unwrap();
        let laws = pmf_sequence(18, model).unwrap();
        for p in laws.iter().filter(|p| p.n >= 2) {
            assert_eq!(p.total_mass(), 1);
            assert!(p.entries.values().all(|q| *q > 0));
            assert_eq!(&p.mean(), e.at(p.n), "{model:?} n={}", p.n);
            assert_eq!(&p.second_moment(), s.at(p.n), "{model:?} n={}", p.n);
        }
    }
}

#[test]
fn support_is_the_set_of_attainable_counts() {
    for n in 2..=14 {
        let attainable: BTreeSet<Integer> =
            enumerate_shapes(n).unwrap().iter().map(root_config_count).collect();
        for model in Model::ALL {
            let support: BTreeSet<Integer> = pmf(n, model).unwrap().support().cloned().collect();
            assert_eq!(support, attainable, "{model:?} n={n}");
        }
    }
}

#[test]
fn small_laws() {
    for model in Model::ALL {
        let p = pmf(2, model).unwrap();
        assert_eq!(p.entries.len(), 1);
        assert_eq!(p.probability(&Integer::from(1)), 1);
    }
    let yule = pmf(4, Model::YuleHarding).unwrap();
    assert_eq!(yule.probability(&Integer::from(3)), Rational::from((2, 3)));
    assert_eq!(yule.probability(&Integer::from(4)), Rational::from((1, 3)));
    assert_eq!(yule.mean(), Rational::from((10, 3)));
    let uni = pmf(4, Model::Uniform).unwrap();
    assert_eq!(uni.probability(&Integer::from(3)), Rational::from((4, 5)));
    assert_eq!(uni.mean(), Rational::from((16, 5)));
    let big = pmf_oracle(15, Model::Uniform).unwrap();
    assert_eq!(big.total_mass(), 1);
    assert_eq!(*big.max_value(), 416);
    assert_eq!(pmf_oracle(15, Model::YuleHarding).unwrap().total_mass(), 1);
}

#[test]
fn log_moments_small_and_stable() {
    let m = log_moments(&pmf(2, Model::Uniform).unwrap()).unwrap();
    assert_eq!(m.mean, 0);
    assert_eq!(m.variance, 0);

    let p = pmf(4, Model::YuleHarding).unwrap();
    let m = log_moments(&p).unwrap();
    let prec = 256;
    let want = Float::with_val(prec, 3).ln() * 2u32 / 3u32 + Float::with_val(prec, 4).ln() / 3u32;
    let diff = Float::with_val(prec, &m.mean - &want).abs();
    assert!(diff < Float::with_val(prec, Float::i_exp(1, -120)), "{}", m.mean);

    for model in Model::ALL {
        let p = pmf(15, model).unwrap();
        let a = log_moments(&p).unwrap();
        let b = log_moments_with_bits(&p, 256).unwrap();
        assert!(a.variance >= 0);
        for (x, y) in [(&a.mean, &b.mean), (&a.variance, &b.variance)] {
            let rel = Float::with_val(256, x - y).abs() / Float::with_val(256, y.clone().abs());
            assert!(rel < Float::with_val(256, Float::i_exp(1, -64)), "{model:?}");
        }
    }
}

#[test]
fn uniform_log_mean_moves_toward_its_limit() {
    let limit = 0.272;
    let scaled = |n: usize| {
        let m = log_moments(&pmf(n, Model::Uniform).unwrap()).unwrap();
        m.mean.to_f64() / n as f64
    };
    let at15 = scaled(15);
    let at18 = scaled(18);
    assert!((at15 / limit - 1.0).abs() < 0.25, "{at15}");
    assert!((at18 - limit).abs() < (at15 - limit).abs(), "{at15} -> {at18}");
}

#[test]
fn cdf_tables() {
    let grid = figure_grid();
    assert_eq!(grid.len(), 61);
    for model in Model::ALL {
        let rows = cdf_table(15, model, &grid).unwrap();
        assert!(rows.windows(2).all(|w| w[0].probability <= w[1].probability));
        assert!(rows.last().unwrap().cdf >= 0.99, "{model:?}");
        assert!(rows[0].cdf <= 0.02, "{model:?}");
        for r in &rows {
            assert_eq!(r.cdf, r.probability.to_f64());
        }
        let dev12 = max_normal_deviation(&cdf_table(12, model, &grid).unwrap());
        let dev18 = max_normal_deviation(&cdf_table(18, model, &grid).unwrap());
        assert!(dev18 <= dev12, "{model:?}: {dev12} -> {dev18}");
    }
}
