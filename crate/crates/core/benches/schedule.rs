use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use spincnn::analysis::{self, App, Scenario};
use spincnn::{network, Config, Schedule};

const SCHEDULES: [(&str, Schedule); 2] = [("sequential", Schedule::Sequential), ("parallel", Schedule::Parallel)];

fn grid_run(c: &mut Criterion) {
    let cfg = Config::default();
    let sc = Scenario::demo(App::NoiseFilter, &cfg).unwrap();
    let i0 = analysis::sweep_i0(&cfg, 0.1, 1).unwrap();
    let mut group = c.benchmark_group("grid_run_2ns");
    group.sample_size(10);
    for (name, schedule) in SCHEDULES {
        let ctx = cfg.run_context(i0, 2e-9, false, schedule);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                let mut grid = sc.grid(&cfg).unwrap();
                black_box(network::run(&mut grid, &ctx).unwrap())
            })
        });
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let mut cfg = Config::default();
    let mut sc = Scenario::demo(App::NoiseFilter, &cfg).unwrap();
    sc.t_max = 2e-9;
    cfg.sim.t_max = 2e-9;
    let voltages = [0.05, 0.1, 0.2, 0.4];
    let seeds = [1, 2];
    let mut group = c.benchmark_group("sweep_4v_2seeds");
    group.sample_size(10);
    for (name, schedule) in SCHEDULES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(analysis::sweep_voltage(&cfg, &sc, &voltages, 1, &seeds, schedule).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, grid_run, sweep);
criterion_main!(benches);
