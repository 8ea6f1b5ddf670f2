use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tancat::cdc::{cdc_d, cdc_t};
use tancat::parse::parse_polymap;
use tancat::random::random_polymap;
use tancat::{Natural, PolyMap, Rational};

fn differentiation(c: &mut Criterion) {
    let mut group = c.benchmark_group("differentiate");
    for dim in [1usize, 2, 3] {
        let f: PolyMap<Rational> = random_polymap(dim, dim, 3, 5, 11);
        group.bench_with_input(BenchmarkId::new("D/rational", dim), &f, |b, f| b.iter(|| cdc_d(black_box(f))));
        group.bench_with_input(BenchmarkId::new("T/rational", dim), &f, |b, f| b.iter(|| cdc_t(black_box(f))));
        let g: PolyMap<Natural> = random_polymap(dim, dim, 3, 5, 11);
        group.bench_with_input(BenchmarkId::new("D/natural", dim), &g, |b, g| b.iter(|| cdc_d(black_box(g))));
    }
    group.finish();
}

fn composition(c: &mut Criterion) {
    let mut group = c.benchmark_group("compose");
    for dim in [1usize, 2, 3] {
        let f: PolyMap<Rational> = random_polymap(dim, dim, 3, 5, 3);
        let g: PolyMap<Rational> = random_polymap(dim, dim, 3, 5, 4);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &(f, g), |b, (f, g)| {
            b.iter(|| black_box(f).compose(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn parsing(c: &mut Criterion) {
    let f: PolyMap<Rational> = random_polymap(3, 3, 3, 5, 5);
    let text = f.to_string();
    c.bench_function("parse/3x3", |b| b.iter(|| parse_polymap::<Rational>(black_box(&text), Some(3)).unwrap()));
}

criterion_group!(benches, differentiation, composition, parsing);
criterion_main!(benches);
