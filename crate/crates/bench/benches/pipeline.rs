use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use curvirank::{
    binary_rank, decompose_via_curvilinear, generate_instance, mat_kernel, BinaryFormDivided,
    Mat, Rat,
};

fn rat_i64(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn bench_binary_rank(c: &mut Criterion) {
    // degree-8 form with an exceptional branch
    let mut a = vec![Rat::from_integer(0.into()); 9];
    a[0] = rat_i64(1);
    a[1] = rat_i64(3);
    a[4] = rat_i64(-2);
    a[8] = rat_i64(5);
    let f = BinaryFormDivided::new(a).unwrap();
    c.bench_function("binary_rank_d8", |b| {
        b.iter(|| binary_rank(&f, 1).unwrap());
    });
}

fn bench_pipeline(c: &mut Criterion) {
    let (p, z) = generate_instance(2, 4, 3, 17).unwrap();
    c.bench_function("pipeline_n2_d4_k3", |b| {
        b.iter(|| decompose_via_curvilinear(&p, &z, 256, -128, 17).unwrap());
    });
}

fn bench_kernel(c: &mut Criterion) {
    // dense rational kernel, rank-deficient 20x24
    let rows: Vec<Vec<Rat>> = (0..20)
        .map(|i| {
            (0..24)
                .map(|j| rat_i64(((i * 31 + j * 17) % 13) as i64 - 6))
                .collect()
        })
        .collect();
    let m = Mat::from_rows(rows);
    c.bench_function("mat_kernel_20x24", |b| {
        b.iter_batched(|| m.clone(), |m| mat_kernel(&m), BatchSize::SmallInput);
    });
}

criterion_group!(benches, bench_binary_rank, bench_pipeline, bench_kernel);
criterion_main!(benches);
