use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use ppc_bench::{corpus_indexed, corpus_named, elim_indexed, elim_named, nested_named};
use ppc_core::harness::{confluence_sample, fuzz_bisim, GenConfig};
use ppc_core::translate::{to_indexed_default, to_named_default};
use ppc_core::{normalize, Rewrite};

fn reduction(c: &mut Criterion) {
    let named = elim_named();
    let indexed = elim_indexed();
    let nested = nested_named(16);
    let nested_idx = to_indexed_default(&nested);
    c.bench_function("normalize/elim-named", |b| {
        b.iter(|| normalize(black_box(&named), 1000, false).unwrap())
    });
    c.bench_function("normalize/elim-indexed", |b| {
        b.iter(|| normalize(black_box(&indexed), 1000, false).unwrap())
    });
    c.bench_function("normalize/nested16-named", |b| {
        b.iter(|| normalize(black_box(&nested), 1000, false).unwrap())
    });
    c.bench_function("normalize/nested16-indexed", |b| {
        b.iter(|| normalize(black_box(&nested_idx), 1000, false).unwrap())
    });
    let corpus = corpus_indexed(200, 20);
    c.bench_function("redexes/corpus200-indexed", |b| {
        b.iter(|| corpus.iter().map(|t| t.redexes().len()).sum::<usize>())
    });
}

fn translation(c: &mut Criterion) {
    let indexed = corpus_indexed(200, 25);
    let named = corpus_named(200, 25);
    c.bench_function("translate/indexed-round-trip", |b| {
        b.iter(|| {
            for t in &indexed {
                black_box(to_indexed_default(&to_named_default(t).unwrap()));
            }
        })
    });
    c.bench_function("translate/named-round-trip", |b| {
        b.iter(|| {
            for s in &named {
                black_box(to_named_default(&to_indexed_default(s)).unwrap());
            }
        })
    });
}

fn harness(c: &mut Criterion) {
    let cfg = GenConfig::default();
    c.bench_function("harness/bisim-100", |b| {
        b.iter(|| fuzz_bisim(black_box(&cfg), 100))
    });
    let cfg = GenConfig {
        max_size: 12,
        ..GenConfig::default()
    };
    c.bench_function("harness/confluence-sample", |b| {
        b.iter(|| confluence_sample(black_box(&cfg), 7))
    });
}

criterion_group!(benches, reduction, translation, harness);
criterion_main!(benches);
