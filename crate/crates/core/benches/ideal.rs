use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tambara_core::{Burnside, Exec, Group, TambaraIdeal};

fn principal_ideals(c: &mut Criterion) {
    let mut group = c.benchmark_group("principal ideal");
    group.sample_size(20);
    for name in ["Q8", "D8", "C8"] {
        let b = Burnside::new(Group::builtin(name).unwrap());
        let s = b.group().distinguished_c2().unwrap_or_else(|| b.group().trivial());
        let x = &b.orbit(s, b.group().trivial()).unwrap() - &b.integer(s, 2);
        for (label, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
            group.bench_with_input(BenchmarkId::new(label, name), &exec, |bench, &exec| {
                bench.iter(|| TambaraIdeal::principal_with(&b, &x, exec))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, principal_ideals);
criterion_main!(benches);
