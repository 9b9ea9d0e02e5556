use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use jackpfq_cli::suite::{run_criterion, Level};
use jackpfq_core::jack::jack_j;
use jackpfq_core::operators::apply_box;
use jackpfq_core::solver::{solve_theorem_a, solve_theorem_b, solve_theorem_c};
use jackpfq_core::{rat, ParamSet, Partition};

fn params(n: usize) -> ParamSet {
    let a = vec![rat(1, 2).unwrap(), rat(-7, 3).unwrap(), rat(5, 4).unwrap()];
    let b = vec![rat(2, 5).unwrap(), rat(11, 6).unwrap()];
    ParamSet::new(rat(3, 2).unwrap(), a, b, n).unwrap()
}

fn jack(c: &mut Criterion) {
    let alpha = rat(3, 2).unwrap();
    let mut g = c.benchmark_group("jack_j");
    for parts in [vec![3, 2], vec![4, 2, 1], vec![3, 3, 2]] {
        let lambda = Partition::new(parts).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(&lambda), &lambda, |bch, l| {
            bch.iter(|| jack_j(black_box(l), l.size() as usize, &alpha).unwrap())
        });
    }
    g.finish();

    let lambda = Partition::new(vec![3, 2, 1]).unwrap();
    let j = jack_j(&lambda, 3, &alpha).unwrap();
    c.bench_function("apply_box/(3,2,1)", |bch| bch.iter(|| apply_box(black_box(&j), &alpha)));
}

fn solvers(c: &mut Criterion) {
    let mut g = c.benchmark_group("solvers");
    g.sample_size(10);
    let p3 = params(3);
    g.bench_function("lowering/n3_d5", |bch| bch.iter(|| solve_theorem_b(black_box(&p3), 5).unwrap()));
    g.bench_function("raising/n3_d5", |bch| bch.iter(|| solve_theorem_c(black_box(&p3), 5).unwrap()));
    let p2 = params(2);
    g.bench_function("two_alphabet/n2_d4", |bch| bch.iter(|| solve_theorem_a(black_box(&p2), 4).unwrap()));
    g.finish();
}

fn suite(c: &mut Criterion) {
    let mut g = c.benchmark_group("suite_smoke");
    g.sample_size(10);
    for k in [1, 2, 3] {
        g.bench_with_input(BenchmarkId::new("criterion", k), &k, |bch, &k| bch.iter(|| run_criterion(k, Level::Smoke, 1)));
    }
    g.finish();
}

criterion_group!(benches, jack, solvers, suite);
criterion_main!(benches);
