use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use theta_symbols::{find_k0, ord_closed, overline_theta_family, theta_set, DualPair, GroupTag, Symbol};
use theta_symbols_bench::{TABLE_WORKLOADS, THETA_WORKLOADS};

fn bench_theta_sets(c: &mut Criterion) {
    for &(pair, symbol) in THETA_WORKLOADS {
        let pair: DualPair = pair.parse().unwrap();
        let s: Symbol = symbol.parse().unwrap();
        c.bench_function(&format!("theta_set {pair} {s}"), |b| b.iter(|| theta_set(black_box(&s), &pair).unwrap()));
        c.bench_function(&format!("find_k0 {pair} {s}"), |b| b.iter(|| find_k0(black_box(&s), &pair).unwrap()));
    }
}

fn bench_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("overline_table");
    group.sample_size(20);
    for &(pair, delta) in TABLE_WORKLOADS {
        let pair: DualPair = pair.parse().unwrap();
        group.bench_function(format!("{pair} delta {delta}"), |b| {
            b.iter(|| overline_theta_family(black_box(&pair), delta).unwrap())
        });
    }
    group.finish();
}

fn bench_order(c: &mut Criterion) {
    let symbols = GroupTag::sp(8).symbols();
    c.bench_function("ord_closed over Sp16", |b| b.iter(|| symbols.iter().map(ord_closed).sum::<i64>()));
}

criterion_group!(benches, bench_theta_sets, bench_tables, bench_order);
criterion_main!(benches);
