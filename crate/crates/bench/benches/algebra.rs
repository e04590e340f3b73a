use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use awlie::verify::{random_words, StandardMonomialSet};
use awlie::{parse_expr, Engine, HallBasis, Params, RatFunc};

fn scalars(c: &mut Criterion) {
    let a: RatFunc = "q^3 - q^-1".parse().unwrap();
    let b: RatFunc = "(q^2 + 1)/(q^4 - q^2 + 1)".parse().unwrap();
    c.bench_function("ratfunc mul+add", |bench| bench.iter(|| &(&a * &b) + &b));
    c.bench_function("ratfunc div", |bench| bench.iter(|| &a / &b));
}

fn normal_forms(c: &mut Criterion) {
    let words = random_words(7, 64, 8);
    let mut group = c.benchmark_group("normal form");
    group.bench_function("64 words of length <= 8, cold", |bench| {
        bench.iter(|| {
            let engine = Engine::new(awlie::ReductionRules::standard());
            for w in &words {
                black_box(engine.word(w.letters()));
            }
        })
    });
    let engine = Engine::standard();
    group.bench_function("64 words of length <= 8, warm", |bench| {
        bench.iter(|| {
            for w in &words {
                black_box(engine.word(w.letters()));
            }
        })
    });
    group.finish();
}

fn hall(c: &mut Criterion) {
    let lie = parse_expr("[[[H12, H4], A], [C, B]] + [H31, H4]").unwrap().to_lie().unwrap();
    c.bench_function("hall rewrite of a length-6 element", |bench| {
        bench.iter(|| HallBasis::standard().rewrite(black_box(&lie)).unwrap())
    });
}

fn ranks(c: &mut Criterion) {
    let mut group = c.benchmark_group("standard monomials");
    group.sample_size(10);
    for n in [4, 5] {
        group.bench_with_input(BenchmarkId::new("images", n), &n, |bench, &n| {
            bench.iter(|| StandardMonomialSet::new(Engine::standard(), n).unwrap())
        });
    }
    for name in ["L4_rank", "L5_rank"] {
        group.bench_function(name, |bench| bench.iter(|| awlie::run_check(name, &Params::new()).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, scalars, normal_forms, hall, ranks);
criterion_main!(benches);
