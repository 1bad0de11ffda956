use cantor_core::sample;
use cantor_core::sensitivity::{sensitivity_witness, SensitivityConfig};
use cantor_core::witness::{shared_orbit_witness, transitivity_witness};
use cantor_core::{FiberLabel, FiberWord, SftSystem};
use criterion::{black_box, criterion_group, criterion_main, BatchSize, Criterion};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn space(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(1);
    let points: Vec<_> = (0..64).map(|_| sample::point(&mut rng)).collect();
    c.bench_function("shift 64 points by 7", |b| {
        b.iter(|| points.iter().map(|p| p.shift(black_box(7))).count())
    });
    c.bench_function("canonicalize 12-bit word", |b| {
        let t = vec![true, false, true, true, false, false];
        let p = vec![true, true, false, true, true, false];
        b.iter(|| FiberWord::new(black_box(t.clone()), black_box(p.clone())))
    });
}

fn witnesses(c: &mut Criterion) {
    let anchor = FiberLabel::new("a").unwrap();
    let mut rng = StdRng::seed_from_u64(2);
    c.bench_function("transitivity witness", |b| {
        b.iter_batched(
            || (sample::cylinder(&mut rng), sample::cylinder(&mut rng)),
            |(u, v)| transitivity_witness(&u, &v, &anchor),
            BatchSize::SmallInput,
        )
    });
    c.bench_function("shared orbit witness", |b| {
        b.iter_batched(
            || (sample::cylinder(&mut rng), sample::cylinder(&mut rng)),
            |(u, v)| shared_orbit_witness(&u, &v, &anchor),
            BatchSize::SmallInput,
        )
    });
    let cfg = SensitivityConfig::default();
    c.bench_function("sensitivity pipeline", |b| {
        b.iter_batched(
            || {
                let x = sample::point(&mut rng);
                let n = sample::cylinder_containing(&mut rng, &x);
                (x, n)
            },
            |(x, n)| sensitivity_witness(&x, &n, &cfg),
            BatchSize::SmallInput,
        )
    });
}

fn oracle(c: &mut Criterion) {
    let family = SftSystem::binary_family(2);
    let mut group = c.benchmark_group("sft");
    group.sample_size(10);
    group.bench_function("sweep length 2, depth 5, bound 10", |b| {
        b.iter(|| family.iter().filter(|s| s.proposition_crosscheck(5, 10).equivalence_holds).count())
    });
    let golden: SftSystem = "forbid=11".parse().unwrap();
    group.bench_function("golden mean periodic points n=12", |b| b.iter(|| golden.periodic_points(black_box(12))));
    group.finish();
}

criterion_group!(benches, space, witnesses, oracle);
criterion_main!(benches);
