use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use hecke_bench::sweep_elements;
use hecke_core::closedform::closed_form;
use hecke_core::{length, multiply, parse_element, Engine, Mode, TAU};

fn bench_group_ops(c: &mut Criterion) {
    let a = parse_element("t[3,-2].s12.tau^1").unwrap();
    let b = parse_element("t[-1,4].s121.tau^2").unwrap();
    c.bench_function("multiply", |bench| {
        bench.iter(|| multiply(std::hint::black_box(&a), std::hint::black_box(&b)))
    });
    c.bench_function("length", |bench| {
        bench.iter(|| length(std::hint::black_box(&multiply(&a, &TAU))))
    });
}

fn bench_class_polynomials(c: &mut Criterion) {
    for (name, mode) in [
        ("split", Mode::Split),
        ("coset", Mode::SplitTau),
        ("twisted", Mode::Twisted),
    ] {
        let elems = sweep_elements(mode, 14);
        c.bench_function(&format!("class_polynomial_sweep_14_{name}"), |bench| {
            bench.iter_batched(
                || Engine::new(mode),
                |mut engine| {
                    for a in &elems {
                        std::hint::black_box(engine.class_polynomial(a).unwrap());
                    }
                },
                BatchSize::LargeInput,
            )
        });
    }
}

fn bench_closed_forms(c: &mut Criterion) {
    let elems = sweep_elements(Mode::Split, 16);
    c.bench_function("closed_form_sweep_16_split", |bench| {
        bench.iter(|| {
            for a in &elems {
                std::hint::black_box(closed_form(a, Mode::Split).unwrap());
            }
        })
    });
}

criterion_group!(benches, bench_group_ops, bench_class_polynomials, bench_closed_forms);
criterion_main!(benches);
