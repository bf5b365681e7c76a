use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use veltman_core::constructions::{construct_sv, construct_sv2};
use veltman_core::decision::{
    enumerate_simplified_frames, find_countermodel, sample_veltman_model, SearchSemantics,
};
use veltman_core::formula::Axiom;
use veltman_core::{Formula, LogicId, Semantics};

fn parsing(c: &mut Criterion) {
    let text = "([](p -> q) -> (p |> q)) & (<>p |> p) -> ~(q |> p & r)";
    c.bench_function("parse", |b| {
        b.iter(|| black_box(text).parse::<Formula>().unwrap())
    });
    let formula: Formula = text.parse().unwrap();
    c.bench_function("print", |b| b.iter(|| black_box(&formula).to_string()));
}

fn forcing(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let base = sample_veltman_model(&mut rng, 4, LogicId::Cl, &["p", "q"]);
    let formula: Formula = "([](p -> q) -> (p |> q)) & (<>p |> p)".parse().unwrap();
    c.bench_function("veltman_truth_mask_4_worlds", |b| {
        b.iter(|| base.truth_mask(black_box(&formula)))
    });

    let lifted = construct_sv2(&base, LogicId::Cl).unwrap().into_model();
    c.bench_function("simplified_truth_mask_chain_model", |b| {
        b.iter(|| lifted.truth_mask(black_box(&formula), Semantics::Standard))
    });
}

fn validity(c: &mut Criterion) {
    let frame = enumerate_simplified_frames(3, LogicId::IlMinusJ4Plus)
        .unwrap()
        .nth(5000)
        .unwrap();
    c.bench_function("j2plus_validity_sweep_3_worlds", |b| {
        b.iter(|| frame.validates_scheme(Axiom::J2Plus, Semantics::Standard).unwrap())
    });
}

fn construction(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let base = sample_veltman_model(&mut rng, 4, LogicId::IlMinusJ1J4PlusJ5, &["p", "q"]);
    c.bench_function("construct_sv_4_worlds", |b| {
        b.iter(|| construct_sv(black_box(&base), LogicId::IlMinusJ1J4PlusJ5).unwrap())
    });
    let base2 = sample_veltman_model(&mut rng, 4, LogicId::Cl, &["p", "q"]);
    c.bench_function("construct_sv2_4_worlds", |b| {
        b.iter(|| construct_sv2(black_box(&base2), LogicId::Cl).unwrap())
    });
}

fn search(c: &mut Criterion) {
    let j5 = Axiom::J5.fresh_instance();
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    group.bench_function("j5_countermodel_simplified_3", |b| {
        b.iter(|| {
            find_countermodel(
                black_box(&j5),
                LogicId::IlMinusJ4Plus,
                SearchSemantics::Simplified,
                3,
            )
            .unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, parsing, forcing, validity, construction, search);
criterion_main!(benches);
