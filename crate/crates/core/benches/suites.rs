//! Benchmarks comparing the rayon-parallel suite execution against the
//! sequential path on the same inputs. Run with
//! `cargo bench -p matroid-hom`.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use matroid_hom::catalog::{
    enumerate_matroids, named, verify_facts_suite, verify_facts_suite_seq, verify_theorems_suite,
    verify_theorems_suite_seq, CatalogSpec, SubdivisionSources, TheoremsParams,
};
use matroid_hom::all_homomorphisms;

fn bench_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    for n in [4usize, 5] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| enumerate_matroids(&CatalogSpec::up_to(n)).unwrap().len())
        });
    }
    group.finish();
}

fn bench_facts_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("facts_suite_n4");
    group.sample_size(10);
    let spec = CatalogSpec::up_to(4);
    group.bench_function("parallel", |b| {
        b.iter(|| verify_facts_suite(&spec).unwrap().checks_run())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| verify_facts_suite_seq(&spec).unwrap().checks_run())
    });
    group.finish();
}

fn bench_theorems_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("theorems_suite_n4_to_n3");
    group.sample_size(10);
    let params = TheoremsParams {
        sources: CatalogSpec::up_to(4),
        targets: CatalogSpec::up_to(3),
        subdivision_sources: Some(SubdivisionSources {
            base: CatalogSpec::up_to(3),
            max_fiber: 2,
        }),
    };
    group.bench_function("parallel", |b| {
        b.iter(|| verify_theorems_suite(&params).unwrap().checks_run())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| verify_theorems_suite_seq(&params).unwrap().checks_run())
    });
    group.finish();
}

fn bench_hom_search(c: &mut Criterion) {
    let theta = named("theta").unwrap();
    let u13 = named("u(1,3)").unwrap();
    c.bench_function("all_homomorphisms/theta_to_u13", |b| {
        b.iter(|| all_homomorphisms(&theta, &u13).len())
    });
}

criterion_group!(
    benches,
    bench_enumeration,
    bench_facts_suite,
    bench_theorems_suite,
    bench_hom_search
);
criterion_main!(benches);
