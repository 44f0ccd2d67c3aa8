use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use honeycombs::honeycomb::enumerate_edges;
use honeycombs::mesh::cyclide_tube;
use honeycombs::render::{default_viewport, depth_field, Centering, RenderSettings};
use honeycombs::simplex::build_simplex;
use honeycombs::{SchlafliSymbol, ThicknessPolicy, Vec3};

fn sym(t: &str) -> SchlafliSymbol {
    t.parse().unwrap()
}

fn canonicalize(c: &mut Criterion) {
    let sx = build_simplex(sym("{4,3,7}")).unwrap();
    let pts: Vec<Vec3> = (0..256)
        .map(|i| {
            let a = i as f64 * 0.618;
            Vec3::new(0.9 * a.cos() * (i as f64 / 256.0), 0.9 * a.sin() * (i as f64 / 256.0), 0.0)
        })
        .collect();
    c.bench_function("canonicalize {4,3,7} x256", |b| {
        b.iter(|| {
            for &p in &pts {
                black_box(sx.canonicalize_vec(black_box(p), 4000));
            }
        })
    });
}

fn render(c: &mut Criterion) {
    let sx = build_simplex(sym("{4,3,7}")).unwrap();
    let vp = default_viewport(&sx, Centering::Cell, 64, 64).unwrap();
    let settings = RenderSettings::default();
    let mut group = c.benchmark_group("depth_field");
    group.sample_size(10);
    group.bench_function("{4,3,7} 64x64", |b| b.iter(|| black_box(depth_field(&sx, &vp, &settings))));
    group.finish();
}

fn edges(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_edges");
    group.sample_size(10);
    for name in ["{4,3,5}", "{4,3,7}"] {
        group.bench_function(name, |b| b.iter(|| black_box(enumerate_edges(sym(name), 0.05, 12).unwrap())));
    }
    group.finish();
}

fn tubes(c: &mut Criterion) {
    let es = enumerate_edges(sym("{4,3,5}"), 0.05, 6).unwrap();
    let e = es.edges[0];
    let policy = ThicknessPolicy::Accurate { r0: 0.02 };
    c.bench_function("cyclide_tube 16x12", |b| {
        b.iter(|| black_box(cyclide_tube(black_box(&e), policy, 16, 12).unwrap()))
    });
}

criterion_group!(benches, canonicalize, render, edges, tubes);
criterion_main!(benches);
