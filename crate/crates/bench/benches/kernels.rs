use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use simplexkit::cayley::{cayley_decompose, delta_family_i64};
use simplexkit::charsum::stickelberger_rank;
use simplexkit::quotsing::SingularityType;
use simplexkit_bench::{mixing_matrix, scrambled_family};

fn bench_smith_form(c: &mut Criterion) {
    let m6 = mixing_matrix(6, 7);
    c.bench_function("smith_form_6x6", |b| b.iter(|| black_box(&m6).smith_form()));
}

fn bench_h_star(c: &mut Criterion) {
    let family = delta_family_i64(&[1, 2, 3], 7).unwrap();
    c.bench_function("h_star_delta_1237", |b| {
        b.iter(|| black_box(&family).h_star().unwrap())
    });
    let scrambled = scrambled_family(&[2, 3], 11, 5);
    c.bench_function("h_star_scrambled_5dim", |b| {
        b.iter(|| black_box(&scrambled).h_star().unwrap())
    });
}

fn bench_decompose(c: &mut Criterion) {
    let scrambled = scrambled_family(&[1, 2], 5, 42);
    c.bench_function("cayley_decompose_scrambled", |b| {
        b.iter(|| cayley_decompose(black_box(&scrambled)).unwrap())
    });
}

fn bench_dilate_scan(c: &mut Criterion) {
    let family = delta_family_i64(&[1, 2], 7).unwrap();
    c.bench_function("dilate_scan_2x", |b| {
        b.iter(|| {
            black_box(&family)
                .lattice_points_in_dilate(2, false, 10_000_000)
                .unwrap()
        })
    });
}

fn bench_charsum(c: &mut Criterion) {
    c.bench_function("stickelberger_rank_60", |b| {
        b.iter(|| stickelberger_rank(black_box(60)))
    });
}

fn bench_mld(c: &mut Criterion) {
    let s = SingularityType::new(499, &[1, 498, 37, 462, 101, 398]).unwrap();
    c.bench_function("mld_n499_dim6", |b| b.iter(|| black_box(&s).mld().unwrap()));
}

criterion_group!(
    benches,
    bench_smith_form,
    bench_h_star,
    bench_decompose,
    bench_dilate_scan,
    bench_charsum,
    bench_mld
);
criterion_main!(benches);
