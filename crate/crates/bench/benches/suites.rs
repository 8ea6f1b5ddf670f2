use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use tancat::report::Params;
use tancat::suites::run_suite;
use tancat::Mode;

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    for name in ["tangent-axioms", "cdc-axioms", "bundle", "bracket-laws", "derived-differential", "fibration"] {
        for mode in [Mode::Rational, Mode::Natural] {
            let params = Params { mode, instances: 10, ..Params::default() };
            group.bench_function(format!("{name}/{mode}"), |b| b.iter(|| run_suite(black_box(name), &params).unwrap()));
        }
    }
    group.finish();
}

criterion_group!(benches, suites);
criterion_main!(benches);
