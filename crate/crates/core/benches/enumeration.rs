use bitorsor_kit::equivariant::h1_with;
use bitorsor_kit::group::builtin::{cyclic, dihedral, semidirect_cyclic, symmetric};
use bitorsor_kit::group::enumerate_homs_with;
use bitorsor_kit::local_model::{survey_with, TameParams};
use bitorsor_kit::Exec;
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn homs(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_homs");
    let cases = [
        ("D6->S4", dihedral(6), symmetric(4)),
        (
            "Z7xZ3->S4",
            semidirect_cyclic(7, 3, 2).unwrap(),
            symmetric(4),
        ),
        ("S4->S5", symmetric(4), symmetric(5)),
    ];
    for (name, src, dst) in &cases {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, name), &exec, |b, &exec| {
                b.iter(|| enumerate_homs_with(black_box(src), black_box(dst), exec))
            });
        }
    }
    group.finish();
}

fn cohomology(c: &mut Criterion) {
    let mut group = c.benchmark_group("h1");
    let cases = [
        ("D4,S4", dihedral(4), symmetric(4)),
        ("Z6,D6", cyclic(6), dihedral(6)),
        ("S4,S4", symmetric(4), symmetric(4)),
    ];
    for (name, pi, g) in &cases {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, name), &exec, |b, &exec| {
                b.iter(|| h1_with(black_box(pi), black_box(g), exec))
            });
        }
    }
    group.finish();
}

fn surveys(c: &mut Criterion) {
    let mut group = c.benchmark_group("survey");
    group.sample_size(10);
    let cases = [
        ("q3n4m2,S3", TameParams::new(3, 4, 2).unwrap(), symmetric(3)),
        ("q2n7m3,D4", TameParams::new(2, 7, 3).unwrap(), dihedral(4)),
        ("q2n5m4,S4", TameParams::new(2, 5, 4).unwrap(), symmetric(4)),
        ("q3n8m2,S4", TameParams::new(3, 8, 2).unwrap(), symmetric(4)),
    ];
    for (name, p, g) in &cases {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, name), &exec, |b, &exec| {
                b.iter(|| survey_with(black_box(p), black_box(g), exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, homs, cohomology, surveys);
criterion_main!(benches);
