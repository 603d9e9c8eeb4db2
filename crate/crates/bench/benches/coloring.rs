use chroma_bench::adversarial;
use chroma_core::certify::{block_graph, verify_counting_argument};
use chroma_core::coloring::{list_feasible, min_distinct_colors};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn feasibility(c: &mut Criterion) {
    let mut group = c.benchmark_group("list_feasible");
    for (r, t) in [(1, 4), (2, 6), (2, 8)] {
        let inst = adversarial(r, t);
        group.bench_with_input(BenchmarkId::from_parameter(format!("r{r}_t{t}")), &inst, |b, inst| {
            b.iter(|| list_feasible(&inst.graph, &inst.lists).unwrap())
        });
    }
    group.finish();
}

fn min_distinct(c: &mut Criterion) {
    let block = block_graph();
    let mut group = c.benchmark_group("min_distinct_block");
    for t in [8, 268] {
        let inst = adversarial(1, t);
        group.bench_with_input(BenchmarkId::from_parameter(t), &inst, |b, inst| {
            b.iter(|| min_distinct_colors(&block, &inst.lists).unwrap())
        });
    }
    group.finish();
}

fn counting(c: &mut Criterion) {
    let inst = adversarial(81, 268);
    c.bench_function("counting_r81_t268", |b| {
        b.iter(|| verify_counting_argument(&inst).unwrap())
    });
}

criterion_group!(benches, feasibility, min_distinct, counting);
criterion_main!(benches);
