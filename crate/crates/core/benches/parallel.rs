//! Sequential against parallel runs of the same work: `⊙` tables, a corpus
//! sweep and seeded idempotency sampling.

use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use relq::oracle::corpus::generate_corpus;
use relq::oracle::idem::idempotency_search_sampled;
use relq::oracle::suites::{run_suite, SuiteConfig};
use relq::tensor::DEFAULT_GUARD;
use relq::{par, FinitePoset, TensorBase, TensorQuantale};

const MODES: [(&str, bool); 2] = [("sequential", false), ("parallel", true)];

fn odot_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("odot_table");
    group.sample_size(10);
    for (name, p) in [
        ("M3", FinitePoset::m3()),
        ("N5", FinitePoset::n5()),
        ("B8", FinitePoset::powerset(&["p", "q", "r"])),
    ] {
        let base = TensorBase::lattice_square("B", &p);
        for (mode, on) in MODES {
            par::set_parallel(on);
            group.bench_with_input(BenchmarkId::new(mode, name), &base, |b, base| {
                b.iter(|| TensorQuantale::new(base.clone(), DEFAULT_GUARD).unwrap())
            });
        }
    }
    group.finish();
}

fn corpus_sweeps(c: &mut Criterion) {
    let corpus = generate_corpus(5).unwrap();
    let cfg = SuiteConfig::default();
    let mut group = c.benchmark_group("corpus_sweep");
    group.sample_size(10).measurement_time(Duration::from_secs(20));
    for suite in ["thm82", "prop91"] {
        for (mode, on) in MODES {
            par::set_parallel(on);
            group.bench_with_input(BenchmarkId::new(mode, suite), suite, |b, id| {
                b.iter(|| run_suite(id, &corpus, &cfg).unwrap())
            });
        }
    }
    group.finish();
}

fn sampling(c: &mut Criterion) {
    let base = TensorBase::lattice_square("B", &FinitePoset::powerset(&["p", "q", "r", "s"]));
    let mut group = c.benchmark_group("idempotency_sampling");
    group.sample_size(10);
    for (mode, on) in MODES {
        par::set_parallel(on);
        group.bench_with_input(BenchmarkId::new(mode, "B16"), &base, |b, base| {
            b.iter(|| idempotency_search_sampled(base, 1000, 42).unwrap())
        });
    }
    group.finish();
    par::set_parallel(true);
}

criterion_group!(benches, odot_tables, corpus_sweeps, sampling);
criterion_main!(benches);
