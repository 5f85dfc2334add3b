//! Benchmarks for the exact kernels and for the trial fan-out, comparing
//! the parallel executor against the sequential reference on the same
//! probe workload.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pfcurves::probe::exec;
use pfcurves::{
    solve_quadric_fibre, MarkedConfig, MatQ, QuadSpace, Rat, SampleParams, SkewMatQ,
};

fn random_skew(size: usize, rng: &mut ChaCha8Rng) -> SkewMatQ {
    let upper: Vec<Rat> = (0..size * (size - 1) / 2)
        .map(|_| Rat::new(rng.gen_range(-99..=99), rng.gen_range(1..=9)))
        .collect();
    SkewMatQ::from_upper(size, &upper).unwrap()
}

fn bench_pfaffian(c: &mut Criterion) {
    let mut group = c.benchmark_group("pfaffian");
    for size in [6usize, 8, 10] {
        let mut rng = ChaCha8Rng::seed_from_u64(size as u64);
        let a = random_skew(size, &mut rng);
        group.bench_function(format!("expansion/{size}"), |b| b.iter(|| a.pfaffian()));
        if size <= 8 {
            group.bench_function(format!("pairing-sum/{size}"), |b| {
                b.iter(|| a.pfaffian_by_pairings())
            });
        }
    }
    group.finish();
}

fn bench_rank(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let rows: Vec<Vec<Rat>> = (0..9)
        .map(|_| {
            (0..9)
                .map(|_| Rat::new(rng.gen_range(-999..=999), rng.gen_range(1..=99)))
                .collect()
        })
        .collect();
    let m = MatQ::from_rows(rows).unwrap();
    c.bench_function("rank/9x9", |b| b.iter(|| m.rank()));
}

/// One parity-probe style trial: sample a degree-4 configuration of five
/// general points on the split quadric threefold and classify its fibre.
fn fibre_trial(quad: &QuadSpace, params: &SampleParams, stream: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(stream);
    let d = 4;
    let z: Vec<Rat> = loop {
        let z: Vec<Rat> = (0..=d).map(|_| params.rat(&mut rng)).collect();
        if z.iter().enumerate().all(|(i, zi)| z[..i].iter().all(|zk| zk != zi)) {
            break z;
        }
    };
    let points: Vec<Vec<Rat>> = (0..=d)
        .map(|_| quad.sample_point(&mut rng, params).unwrap().primitive())
        .collect();
    let config = MarkedConfig::new(z, points).unwrap();
    let fibre = solve_quadric_fibre(quad, &config).unwrap();
    std::hint::black_box(fibre);
}

fn bench_trial_fanout(c: &mut Criterion) {
    let quad = QuadSpace::split(3);
    let params = SampleParams::default();
    let trials = 24u32;
    let mut group = c.benchmark_group("fibre-trials");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter_batched(
            || (),
            |()| exec::run(trials, |t| fibre_trial(&quad, &params, u64::from(t))),
            BatchSize::SmallInput,
        )
    });
    group.bench_function("sequential", |b| {
        b.iter_batched(
            || (),
            |()| exec::run_sequential(trials, |t| fibre_trial(&quad, &params, u64::from(t))),
            BatchSize::SmallInput,
        )
    });
    group.finish();
}

criterion_group!(benches, bench_pfaffian, bench_rank, bench_trial_fanout);
criterion_main!(benches);
