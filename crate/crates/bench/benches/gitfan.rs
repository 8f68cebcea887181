use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gitfan_bench::{fixtures, star};
use gitfan_core::{Cone, GitFanEngine, Mode, Rep, Schofield, Weight, DEFAULT_BUDGET};

fn effective_cone(c: &mut Criterion) {
    let mut group = c.benchmark_group("effective_cone");
    for f in fixtures().into_iter().chain([star(4)]) {
        group.bench_with_input(BenchmarkId::from_parameter(f.name), &f, |b, f| {
            b.iter(|| Schofield::new(&f.quiver).effective_cone(black_box(&f.beta)).unwrap())
        });
    }
    group.finish();
}

fn fan(c: &mut Criterion) {
    let mut group = c.benchmark_group("git_fan");
    group.sample_size(10);
    let modes = [
        ("oracle", Mode::Oracle { p: 2 }),
        ("sampled", Mode::Sampled { p: 1009, samples: 64, seed: 0 }),
    ];
    for f in fixtures() {
        for (label, mode) in modes {
            group.bench_function(BenchmarkId::new(label, f.name), |b| {
                b.iter(|| {
                    GitFanEngine::new(f.quiver.clone(), f.beta.clone(), mode, DEFAULT_BUDGET)
                        .unwrap()
                        .git_fan()
                        .unwrap()
                })
            });
        }
    }
    group.finish();
}

fn double_description(c: &mut Criterion) {
    let f = star(5);
    let cone = Schofield::new(&f.quiver).effective_cone(&f.beta).unwrap();
    let eqs = cone.equations().to_vec();
    let ineqs = cone.inequalities().to_vec();
    c.bench_function("from_hrep/star5", |b| {
        b.iter(|| Cone::from_hrep(black_box(6), black_box(&eqs), black_box(&ineqs)).unwrap())
    });
}

fn jordan_holder(c: &mut Criterion) {
    let f = &fixtures()[1];
    let w = Rep::random(f.quiver.clone(), f.beta.clone(), 2, 3).unwrap();
    let sigma = Weight::from_ints(&[1, -1]);
    c.bench_function("jh_filtration/k2_22", |b| {
        b.iter(|| w.jh_filtration(black_box(&sigma), DEFAULT_BUDGET).unwrap())
    });
}

criterion_group!(benches, effective_cone, fan, double_description, jordan_holder);
criterion_main!(benches);
