use confign_core::sampler::{
    lane_rng, sample_uniform_labeled, sample_yule_labeled, RootCountSampler,
};
use confign_core::Model;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn root_counts(c: &mut Criterion) {
    let mut group = c.benchmark_group("sample_root_count");
    for model in Model::ALL {
        for n in [50, 500] {
            let sampler = RootCountSampler::new(n, model);
            let mut rng = lane_rng(1, 0);
            group.bench_function(BenchmarkId::new(model.name(), n), |b| {
                b.iter(|| sampler.sample(&mut rng))
            });
        }
    }
    group.finish();
}

fn trees(c: &mut Criterion) {
    let mut rng = lane_rng(2, 0);
    c.bench_function("sample_uniform_labeled/100", |b| {
        b.iter(|| sample_uniform_labeled(100, &mut rng))
    });
    c.bench_function("sample_yule_labeled/100", |b| {
        b.iter(|| sample_yule_labeled(100, &mut rng))
    });
}

criterion_group!(benches, root_counts, trees);
criterion_main!(benches);
