use std::f64::consts::PI;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use supercoh::states::{apply_non_gaussian, cat_fock, squeezed_vacuum_fock, DEFAULT_TAIL_TOL};
use supercoh::witnesses::{hillery2, hoa, hong_mandel, hosps};
use supercoh::{CatParams, MomentProvider, NonGaussianOp, SqueezedParams};
use supercoh_cli::presets::preset;
use supercoh_cli::run_sweep;

fn states(c: &mut Criterion) {
    let cat = CatParams::new(1.8, 1.0).unwrap();
    let sq = SqueezedParams::new(0.9, 0.0).unwrap();
    c.bench_function("cat_fock alpha=1.8", |b| {
        b.iter(|| cat_fock(black_box(&cat), DEFAULT_TAIL_TOL).unwrap())
    });
    c.bench_function("squeezed_fock xi=0.9", |b| {
        b.iter(|| squeezed_vacuum_fock(black_box(&sq), DEFAULT_TAIL_TOL).unwrap())
    });
    let v = cat_fock(&cat, DEFAULT_TAIL_TOL).unwrap();
    let op = NonGaussianOp::new(2, 1).unwrap();
    c.bench_function("add 2 subtract 1", |b| {
        b.iter(|| apply_non_gaussian(black_box(&v), op).unwrap())
    });
}

fn witnesses(c: &mut Criterion) {
    let cat = CatParams::new(1.0, PI).unwrap();
    c.bench_function("hoa l=3 analytic cat", |b| {
        b.iter(|| hoa(&MomentProvider::cat(black_box(cat)).unwrap(), 3).unwrap())
    });
    c.bench_function("hosps l=4 analytic cat", |b| {
        b.iter(|| hosps(&MomentProvider::cat(black_box(cat)).unwrap(), 4).unwrap())
    });
    let sq = SqueezedParams::new(0.5, 0.0).unwrap();
    c.bench_function("hong_mandel n=6 analytic squeezed", |b| {
        b.iter(|| {
            hong_mandel(
                &MomentProvider::squeezed(black_box(sq)).unwrap(),
                6,
                PI / 2.0,
            )
            .unwrap()
        })
    });
    let v = apply_non_gaussian(
        &cat_fock(&CatParams::new(2.5, 0.0).unwrap(), DEFAULT_TAIL_TOL).unwrap(),
        NonGaussianOp::new(1, 0).unwrap(),
    )
    .unwrap();
    c.bench_function("hillery2 fock photon-added cat", |b| {
        b.iter(|| hillery2(&MomentProvider::fock(black_box(v.clone())).unwrap()).unwrap())
    });
}

fn sweeps(c: &mut Criterion) {
    let spec = preset("fig1c").unwrap();
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    g.bench_function("fig1c", |b| b.iter(|| run_sweep(black_box(&spec)).unwrap()));
    let spec = preset("fig4a").unwrap();
    g.bench_function("fig4a", |b| b.iter(|| run_sweep(black_box(&spec)).unwrap()));
    g.finish();
}

criterion_group!(benches, states, witnesses, sweeps);
criterion_main!(benches);
