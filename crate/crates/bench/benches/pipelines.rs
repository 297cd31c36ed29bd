use criterion::{black_box, criterion_group, criterion_main, Criterion};

use qtk_core::catalog;
use qtk_core::exactnum::int;
use qtk_core::invsys::{ann_hilbert, bundle_potential_direct, bundle_potential_integral};
use qtk_core::multipoly::{bkk_check, volume_polynomial, MultiPolytope};
use qtk_core::ppbrion::brion_bundle_dims;

fn volume(c: &mut Criterion) {
    let cp3 = catalog::lookup("cp3").unwrap().cp;
    let h = vec![int(1), int(2), int(3), int(4)];
    c.bench_function("volume/cp3", |b| {
        b.iter(|| MultiPolytope::new(&cp3, black_box(h.clone())).unwrap().volume().unwrap())
    });
    let toric = catalog::lookup("hirzebruch-toric?a=3").unwrap().cp;
    c.bench_function("volume_polynomial/hirzebruch-toric", |b| b.iter(|| volume_polynomial(black_box(&toric)).unwrap()));
}

fn rings(c: &mut Criterion) {
    let ring = catalog::lookup("cp2-over-cp1").unwrap().ring().unwrap();
    c.bench_function("betti/cp2-over-cp1", |b| b.iter(|| black_box(&ring).betti()));
    c.bench_function("brion/cp2-over-cp1", |b| b.iter(|| brion_bundle_dims(black_box(&ring), 6)));
    let one = ring.base().one();
    let h = vec![int(2), int(-1), int(3)];
    c.bench_function("bkk/cp2-over-cp1", |b| b.iter(|| bkk_check(&ring, &one, 1, black_box(&h)).unwrap()));
}

fn potentials(c: &mut Criterion) {
    let ring = catalog::lookup("cp1-over-cp1xcp1").unwrap().ring().unwrap();
    c.bench_function("potential_integral/cp1-over-cp1xcp1", |b| {
        b.iter(|| bundle_potential_integral(black_box(&ring)).unwrap())
    });
    c.bench_function("potential_direct/cp1-over-cp1xcp1", |b| {
        b.iter(|| bundle_potential_direct(black_box(&ring)).unwrap())
    });
    let p = bundle_potential_integral(&ring).unwrap();
    c.bench_function("ann_hilbert/cp1-over-cp1xcp1", |b| b.iter(|| ann_hilbert(black_box(&p))));
}

criterion_group!(benches, volume, rings, potentials);
criterion_main!(benches);
