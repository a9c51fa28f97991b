use std::hint::black_box;

use confign_core::certify::{scan_g, u_seq};
use confign_core::configcore::{config_profile, root_config_count};
use confign_core::distribution::{pmf, pmf_oracle};
use confign_core::momentseries::mean_seq;
use confign_core::treekit::enumerate_shapes;
use confign_core::Model;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn shapes(c: &mut Criterion) {
    c.bench_function("enumerate_shapes/15", |b| b.iter(|| enumerate_shapes(black_box(15)).unwrap()));
    let all = enumerate_shapes(15).unwrap();
    c.bench_function("root_config_count/4850 shapes", |b| {
        b.iter(|| all.iter().map(root_config_count).max())
    });
    c.bench_function("config_profile/4850 shapes", |b| {
        b.iter(|| all.iter().map(|s| config_profile(s).total).max())
    });
}

fn distributions(c: &mut Criterion) {
    let mut group = c.benchmark_group("pmf");
    for n in [10, 14, 18] {
        for model in Model::ALL {
            group.bench_with_input(BenchmarkId::new(model.name(), n), &n, |b, &n| {
                b.iter(|| pmf(n, model).unwrap())
            });
        }
    }
    group.finish();
    c.bench_function("pmf_oracle/yule/12", |b| {
        b.iter(|| pmf_oracle(12, Model::YuleHarding).unwrap())
    });
}

fn series(c: &mut Criterion) {
    let mut group = c.benchmark_group("mean_seq");
    group.sample_size(10);
    for model in Model::ALL {
        group.bench_function(BenchmarkId::new(model.name(), 300), |b| {
            b.iter(|| mean_seq(model, 300).unwrap())
        });
    }
    group.finish();
    let u = u_seq(120).unwrap();
    let mut group = c.benchmark_group("certify");
    group.sample_size(10);
    group.bench_function("scan_g/1000 points", |b| b.iter(|| scan_g(&u, 1000, 256, 1)));
    group.finish();
}

criterion_group!(benches, shapes, distributions, series);
criterion_main!(benches);
