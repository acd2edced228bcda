use criterion::{black_box, criterion_group, criterion_main, Criterion};
use knotcalc::cable::{cable2, CableSpec};
use knotcalc::seifert::{alexander_from_seifert, seifert_matrix, signature};
use knotcalc::skein::{bracket_state_sum, jones_memoized, kauffman_f_with, SkeinConfig, SkeinMemo};
use knotcalc::table::KnotTable;

fn stevedore() -> knotcalc::diagram::Diagram {
    KnotTable::bundled().get("6_1").unwrap().diagram().unwrap().mirror()
}

fn skein(c: &mut Criterion) {
    let k = stevedore();
    let cfg = SkeinConfig::default();
    let cable = cable2(&CableSpec { base: k.clone(), framing: 0 }).unwrap();
    c.bench_function("jones cable 6_1", |b| {
        b.iter(|| jones_memoized(black_box(&cable), &SkeinMemo::new(), &cfg).unwrap())
    });
    c.bench_function("kauffman F 6_1", |b| {
        b.iter(|| kauffman_f_with(black_box(&k), &SkeinMemo::new(), &cfg).unwrap())
    });
    c.bench_function("bracket state sum 6_1", |b| b.iter(|| bracket_state_sum(black_box(&k), &cfg).unwrap()));
}

fn seifert(c: &mut Criterion) {
    let t = KnotTable::bundled();
    let knots: Vec<_> = t.up_to(8).map(|k| k.diagram().unwrap()).collect();
    c.bench_function("seifert table", |b| {
        b.iter(|| {
            for d in &knots {
                let s = seifert_matrix(black_box(d)).unwrap();
                black_box((alexander_from_seifert(&s), signature(&s)));
            }
        })
    });
}

fn table(c: &mut Criterion) {
    let t = KnotTable::bundled();
    let cfg = SkeinConfig::default();
    let mut g = c.benchmark_group("table");
    g.sample_size(10);
    g.bench_function("verify", |b| b.iter(|| t.verify(&SkeinMemo::new(), &cfg)));
    g.finish();
}

criterion_group!(benches, skein, seifert, table);
criterion_main!(benches);
