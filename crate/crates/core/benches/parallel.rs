//! Parallel vs sequential comparison for the hot scans: exhaustive subset
//! expansion, motion element scans and coherence verification.
//!
//! Run with `cargo bench -p drg-core`; build with `--no-default-features` to
//! measure the library compiled without rayon at all.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use drg_core::arrays::FamilyTag;
use drg_core::catalog;
use drg_core::config::{self, ExpansionMode};
use drg_core::graphs::{build_family, check_drg, named};
use drg_core::groups::{automorphisms, motion_exact, motion_exact_seq};

fn bench_expansion(c: &mut Criterion) {
    let g = named::petersen();
    let arr = check_drg(&g).unwrap();
    let cfg = config::from_drg(&g, &arr).unwrap();
    let mut group = c.benchmark_group("expansion-exhaustive-petersen");
    group.bench_function("parallel", |b| {
        b.iter(|| config::expansion_check(&cfg, 1, ExpansionMode::Exhaustive).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| config::expansion_check_seq(&cfg, 1, ExpansionMode::Exhaustive).unwrap())
    });
    group.finish();

    let j = build_family(FamilyTag::Johnson { s: 6, d: 3 }, 100).unwrap();
    let arrj = check_drg(&j).unwrap();
    let cfgj = config::from_drg(&j, &arrj).unwrap();
    let mut group = c.benchmark_group("expansion-exhaustive-j63");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| config::expansion_check(&cfgj, 1, ExpansionMode::Exhaustive).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| config::expansion_check_seq(&cfgj, 1, ExpansionMode::Exhaustive).unwrap())
    });
    group.finish();
}

fn bench_motion(c: &mut Criterion) {
    let crown8 = build_family(FamilyTag::Crown { m: 8 }, 100).unwrap();
    let group8 = automorphisms(&crown8, catalog::ORACLE_CAP).unwrap();
    let mut group = c.benchmark_group("motion-crown8");
    group.bench_function("parallel", |b| {
        b.iter_batched(|| &group8, |g| motion_exact(g).unwrap(), BatchSize::SmallInput)
    });
    group.bench_function("sequential", |b| {
        b.iter_batched(|| &group8, |g| motion_exact_seq(g).unwrap(), BatchSize::SmallInput)
    });
    group.finish();
}

fn bench_coherence(c: &mut Criterion) {
    let h33 = build_family(FamilyTag::Hamming { d: 3, s: 3 }, 100).unwrap();
    let arr = check_drg(&h33).unwrap();
    let mut group = c.benchmark_group("coherence-h33");
    group.bench_function("parallel", |b| {
        b.iter(|| config::from_drg(&h33, &arr).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| config::from_drg_seq(&h33, &arr).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_expansion, bench_motion, bench_coherence);
criterion_main!(benches);
