#![allow(clippy::result_large_err)]

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use maba::formulas::eval_scalar;
use maba::izergin::{determinant, mod_izergin, Variant};
use maba::verify::Sampler;
use maba::{Scalar, ScalarForm, SplitSpace, Twist, WeightOracle};

fn sampler(seed: u64) -> Sampler {
    Sampler::new(seed, Scalar::one(), 12)
}

fn bench_determinant(c: &mut Criterion) {
    let mut group = c.benchmark_group("determinant");
    for n in [4usize, 6, 8] {
        let mut s = sampler(n as u64);
        let rows: Vec<Vec<Scalar>> = (0..n).map(|i| s.spectral(&format!("r{i}"), n).unwrap()).collect();
        group.bench_with_input(BenchmarkId::from_parameter(n), &rows, |b, rows| {
            b.iter(|| determinant(rows))
        });
    }
    group.finish();
}

fn bench_izergin(c: &mut Criterion) {
    let mut group = c.benchmark_group("modified_izergin");
    for n in [3usize, 5, 7] {
        let mut s = sampler(100 + n as u64);
        let u = s.spectral("u", n).unwrap();
        let v = s.spectral("v", n).unwrap();
        let z = s.deformation("z");
        let one = Scalar::one();
        for (name, variant) in [("v-side", Variant::VSide), ("u-side", Variant::USide)] {
            group.bench_function(BenchmarkId::new(name, n), |b| {
                b.iter(|| mod_izergin(&z, &u, &v, &one, variant).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_partition_sum(c: &mut Criterion) {
    let mut group = c.benchmark_group("twisted_scalar_product");
    group.sample_size(10);
    for size in [6usize, 8, 10] {
        let mut s = sampler(200 + size as u64);
        let twist = Twist::from_params(&s.twist().unwrap());
        let oracle = WeightOracle::hashed(s.seed("weights"));
        let u = s.spectral("u", size / 2).unwrap();
        let v = s.spectral("v", size - size / 2).unwrap();
        let one = Scalar::one();
        group.bench_function(BenchmarkId::from_parameter(size), |b| {
            b.iter(|| eval_scalar(ScalarForm::SPfin, &u, &v, &oracle, &twist, &one, 1).unwrap())
        });
    }
    group.finish();
}

fn bench_split_enumeration(c: &mut Criterion) {
    let space = SplitSpace::two(14);
    c.bench_function("split_enumeration/14", |b| {
        b.iter(|| space.sum(1, |_| Ok(Scalar::zero())).unwrap())
    });
}

criterion_group!(
    benches,
    bench_determinant,
    bench_izergin,
    bench_partition_sum,
    bench_split_enumeration
);
criterion_main!(benches);
