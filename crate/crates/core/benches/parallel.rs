//! Sequential against rayon on the two exhaustive loops that dominate run
//! time: identity testing over every wing-basis tuple, and the sandwich
//! search over all of a finite-field algebra.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use glk::jordan::JordanPair;
use glk::pi::{is_identity_with, sl_graded, IdentityOptions};
use glk::radical::{sandwich_elements, RadicalMode, RadicalOptions};
use glk::tkk::tkk_construct;
use glk::{Exec, FieldSpec};

fn strategies() -> [(&'static str, Exec); 2] {
    [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)]
}

fn identity_search(c: &mut Criterion) {
    // an identity, so every tuple is evaluated
    let f = "[[x1+, x2-], x3+] - [[x3+, x2-], x1+]".parse().unwrap();
    let l = sl_graded(3, 3, &FieldSpec::rationals()).unwrap();
    let mut g = c.benchmark_group("identity sl(3,3)");
    g.sample_size(10);
    for (name, exec) in strategies() {
        let opts = IdentityOptions {
            exec,
            ..Default::default()
        };
        g.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, o| {
            b.iter(|| assert!(is_identity_with(&f, &l, o).unwrap().identity))
        });
    }
    g.finish();
}

fn sandwich_search(c: &mut Criterion) {
    let f5 = FieldSpec::prime_field(5).unwrap();
    let l = tkk_construct(&JordanPair::rectangular(&f5, 1, 2).unwrap()).unwrap().algebra;
    let mut g = c.benchmark_group("sandwiches TKK(rect(1,2))/F5");
    g.sample_size(10);
    for (name, exec) in strategies() {
        let opts = RadicalOptions {
            mode: RadicalMode::enumerate(),
            exec,
        };
        g.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, o| {
            b.iter(|| sandwich_elements(&l, o).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, identity_search, sandwich_search);
criterion_main!(benches);
