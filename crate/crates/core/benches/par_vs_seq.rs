use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;
use novikov_core::flow::{find_critical_points, integrate_flow, lift_critical_points, Dir, Field, Scenario, Tracer};
use novikov_core::par;
use novikov_core::semilinear::{summed_series, SemilinearEndo};
use novikov_core::twisted::{GroupAlgebraElt, TwistedGroup};

fn trajectories(c: &mut Criterion) {
    let sc = Scenario::torus_four_point();
    let map = sc.map();
    let points = lift_critical_points(&find_critical_points(&map, &sc.tolerances).unwrap(), sc.cut);
    let field = Field::gradient_of(&map);
    let tracer = Tracer::new(&field, &points, &sc.tolerances);
    let mut g = c.benchmark_group("fiber_descent");
    g.sample_size(10);
    for n in [64usize, 256] {
        let starts: Vec<[f64; 2]> = (0..n).map(|i| map.fiber_point(sc.cut + 1.0, (i as f64 + 0.5) / n as f64).unwrap()).collect();
        let job = |z: &[f64; 2]| integrate_flow(&tracer, *z, Dir::Down, Some(sc.cut), false).map(|t| t.end_point);
        g.bench_with_input(BenchmarkId::new("parallel", n), &starts, |b, s| b.iter(|| black_box(par::map(s, job))));
        g.bench_with_input(BenchmarkId::new("sequential", n), &starts, |b, s| b.iter(|| black_box(par::map_seq(s, job))));
    }
    g.finish();
}

fn twisted_series(c: &mut Criterion) {
    let group = Arc::new(TwistedGroup::new(vec![vec![0, 1], vec![1, 0]]).unwrap());
    let mono = |h: [i64; 2], k: i64| GroupAlgebraElt::monomial(h.to_vec(), BigInt::from(k));
    let instances: Vec<SemilinearEndo> = (0..32i64)
        .map(|s| {
            let rows = vec![
                vec![mono([s % 3 - 1, 0], 1), mono([0, 1], -1)],
                vec![mono([1, s % 2], 1), GroupAlgebraElt::zero(2)],
            ];
            SemilinearEndo::new(group.clone(), rows).unwrap()
        })
        .collect();
    let v = vec![mono([0, 0], 1), mono([1, 0], 1)];
    let job = |xi: &SemilinearEndo| summed_series(xi, &v, &v, 24).map(|(_, e)| e.levels().len());
    let mut g = c.benchmark_group("twisted_series");
    g.sample_size(10);
    g.bench_function("parallel", |b| b.iter(|| black_box(par::map(&instances, job))));
    g.bench_function("sequential", |b| b.iter(|| black_box(par::map_seq(&instances, job))));
    g.finish();
}

criterion_group!(benches, trajectories, twisted_series);
criterion_main!(benches);
