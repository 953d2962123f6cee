use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use stmod_bench::{c3xc3, cyclic, random_matrix, random_quotient};
use stmod_core::artriangles::heart;
use stmod_core::ghosts::universal_window_ghost;
use stmod_core::modules::hom_space;
use stmod_core::stable::{omega, stable_hom};
use stmod_core::Field;

fn linalg(c: &mut Criterion) {
    let mut grp = c.benchmark_group("rank");
    for n in [16usize, 64, 128] {
        let a = random_matrix(Field::new(3).unwrap(), n, n, n as u64);
        grp.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| b.iter(|| a.rank()));
    }
    grp.finish();
}

fn homs(c: &mut Criterion) {
    let g = c3xc3();
    let f = Field::new(3).unwrap();
    let m = random_quotient(&g, f, 1);
    let n = random_quotient(&g, f, 2);
    c.bench_function("hom_space c3xc3", |b| b.iter(|| hom_space(&m, &n)));
    c.bench_function("stable_hom c3xc3", |b| b.iter(|| stable_hom(&m, &n)));
    c.bench_function("omega c3xc3", |b| b.iter(|| omega(&m, 2)));
}

fn ghosts(c: &mut Criterion) {
    let g = c3xc3();
    let m = random_quotient(&g, Field::new(3).unwrap(), 3);
    c.bench_function("universal ghost W=2", |b| b.iter(|| universal_window_ghost(&m, 2)));
    let m4 = cyclic(9, 3, 4);
    c.bench_function("heart of C9 M4", |b| b.iter(|| heart(&m4).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = linalg, homs, ghosts
}
criterion_main!(benches);
