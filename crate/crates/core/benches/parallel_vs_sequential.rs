//! Rayon pool against the calling thread on the three parallel workloads.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use reward_doubling::adversaries::{lower_bound_search, rademacher_stream, SearchConfig};
use reward_doubling::onedim::{verify_smooth_lemmas, LemmaGrid, RewardDoubling1DGuess};
use reward_doubling::{run, AlwaysZero, Exec};

fn modes() -> Vec<Exec> {
    let mut modes = vec![Exec::Sequential];
    #[cfg(feature = "parallel")]
    modes.push(Exec::Parallel);
    modes
}

fn lemma_sweep(c: &mut Criterion) {
    let grid = LemmaGrid {
        same_sign_tau_min: 6,
        sign_change_tau_min: 1,
        tau_max: 100,
        steps_per_unit: 20,
        g_abs_max_steps: 200,
    };
    let mut group = c.benchmark_group("lemma_sweep");
    for exec in modes() {
        group.bench_function(BenchmarkId::from_parameter(exec.name()), |b| {
            b.iter(|| verify_smooth_lemmas(&grid, exec).unwrap())
        });
    }
    group.finish();
}

fn witness_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("witness_search");
    for exec in modes() {
        let cfg = SearchConfig {
            radius: 1.0,
            eps: 0.01,
            rounds: 12,
            budget: 20_000,
            seed: 0,
            stop_at_first: false,
            exec,
        };
        group.bench_function(BenchmarkId::from_parameter(exec.name()), |b| {
            b.iter(|| lower_bound_search(AlwaysZero::scalar, &cfg).unwrap())
        });
    }
    group.finish();
}

fn guess_batch(c: &mut Criterion) {
    let sequences: Vec<Vec<f64>> = (0..64).map(|i| rademacher_stream(2000, 0, i)).collect();
    let mut group = c.benchmark_group("guess_batch");
    for exec in modes() {
        group.bench_function(BenchmarkId::from_parameter(exec.name()), |b| {
            b.iter(|| {
                exec.map_slice(&sequences, |g| {
                    let mut learner = RewardDoubling1DGuess::new(1.0).unwrap();
                    run(&mut learner, g).unwrap().cumulative_reward()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, lemma_sweep, witness_search, guess_batch);
criterion_main!(benches);
