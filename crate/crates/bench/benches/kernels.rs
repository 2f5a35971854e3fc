use criterion::{criterion_group, criterion_main, Criterion};
use delaunay_lab::floquet::{band_structure, sl_form};
use delaunay_lab::indicial::indicial_set;
use delaunay_lab::pohozaev::{default_axis, PohozaevInvariant};
use delaunay_lab::{solve_orbit, PeriodicOrbit};
use std::hint::black_box;

fn orbit(n: usize, eps: f64) -> PeriodicOrbit {
    solve_orbit(n, eps, PeriodicOrbit::default_tolerance()).unwrap()
}

fn orbits(c: &mut Criterion) {
    let tol = PeriodicOrbit::default_tolerance();
    c.bench_function("solve_orbit n=4 eps=0.3", |b| b.iter(|| solve_orbit(4, black_box(0.3), tol).unwrap()));
    c.bench_function("solve_orbit n=6 eps=0.01", |b| b.iter(|| solve_orbit(6, black_box(0.01), tol).unwrap()));
}

fn floquet(c: &mut Criterion) {
    let o = orbit(4, 0.3);
    let sl = sl_form(&o, 1);
    c.bench_function("monodromy j=1", |b| b.iter(|| sl.monodromy(black_box(-2.5)).unwrap()));
    c.bench_function("band_structure j=0 [-8,8]", |b| {
        b.iter(|| band_structure(&sl_form(&o, 0), (-8.0, 8.0), 400).unwrap())
    });
    c.bench_function("indicial_set j_max=4", |b| b.iter(|| indicial_set(&o, 4).unwrap()));
}

fn pohozaev(c: &mut Criterion) {
    let o = orbit(4, 0.3);
    let axis = default_axis(4);
    c.bench_function("pohozaev invariant n=4", |b| {
        b.iter(|| PohozaevInvariant::compute(&o, 0, &axis, black_box(0.7)).unwrap())
    });
}

criterion_group!(benches, orbits, floquet, pohozaev);
criterion_main!(benches);
