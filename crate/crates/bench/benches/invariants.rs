use criterion::{black_box, criterion_group, criterion_main, Criterion};
use hodgering_core::jacglobal::{h0_log, jacobian_ideal_dim};
use hodgering_core::linalg::{rank, rank_multimodular};
use hodgering_core::local::{milnor_number, tjurina_number};
use hodgering_core::poly::{parse_polynomial, rat};
use hodgering_core::spectrum::spectrum_qh;
use hodgering_core::{LocalGerm, RationalMatrix};

fn germ(s: &str) -> LocalGerm {
    LocalGerm::new(parse_polynomial(s, &["x", "y", "z"]).unwrap()).unwrap()
}

fn local(c: &mut Criterion) {
    let w27 = germ("x^7+x^4*y^2+x^2*y^4+y^7+z^2");
    c.bench_function("milnor W27", |b| {
        b.iter(|| milnor_number(black_box(&w27)).unwrap())
    });
    c.bench_function("tjurina W27", |b| {
        b.iter(|| tjurina_number(black_box(&w27)).unwrap())
    });
    let e12 = germ("x^3+y^7+x*y^5+z^2");
    c.bench_function("tjurina E12", |b| {
        b.iter(|| tjurina_number(black_box(&e12)).unwrap())
    });
    let b = germ("x^3+y^10+z^19");
    c.bench_function("spectrum x3+y10+z19", |bn| {
        bn.iter(|| spectrum_qh(black_box(&b)).unwrap())
    });
}

fn global(c: &mut Criterion) {
    let vars = ["x0", "x1", "x2", "x3"];
    let quartic = parse_polynomial(
        "x0^2*x1^2+x0^2*x2^2+x0^2*x3^2+x0*x1^3-x0*x2^3+x0*x1*x2*x3+x1^4+2*x2^4+3*x3^4",
        &vars,
    )
    .unwrap();
    c.bench_function("dim R_6 nodal quartic", |b| {
        b.iter(|| jacobian_ideal_dim(black_box(&quartic), 6).unwrap())
    });
    c.bench_function("h0 log nodal quartic", |b| {
        b.iter(|| h0_log(black_box(&quartic)).unwrap())
    });
}

fn matrix(n: usize, rank_bound: usize) -> RationalMatrix {
    // Deterministic low-rank product with moderately sized entries.
    let entry =
        |i: usize, j: usize, s: usize| (((i * 7919 + j * 104_729 + s * 31) % 2001) as i64) - 1000;
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v: i64 = (0..rank_bound)
                        .map(|k| entry(i, k, 1) * entry(k, j, 2))
                        .sum();
                    rat(v, 1)
                })
                .collect()
        })
        .collect();
    RationalMatrix::from_rows(rows)
}

fn linear_algebra(c: &mut Criterion) {
    let m = matrix(60, 45);
    assert_eq!(rank(&m), rank_multimodular(&m));
    c.bench_function("rank fraction-free 60x60", |b| {
        b.iter(|| rank(black_box(&m)))
    });
    c.bench_function("rank multimodular 60x60", |b| {
        b.iter(|| rank_multimodular(black_box(&m)))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = local, global, linear_algebra
}
criterion_main!(benches);
