//! Shared fixtures: the worked-example matrices and comparison helpers.

#![allow(dead_code)]

pub mod oracle;

use ginv_core::{normalized_residual, ComplexMatrix, C64};

pub fn m(rows: &[&[f64]]) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(rows)
}

pub fn scaled(s: f64, rows: &[&[f64]]) -> ComplexMatrix {
    m(rows).scale_real(s)
}

/// Largest entrywise modulus of `x - y`.
pub fn max_entry_diff(x: &ComplexMatrix, y: &ComplexMatrix) -> f64 {
    assert_eq!(x.dims(), y.dims());
    x.data()
        .iter()
        .zip(y.data())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

#[track_caller]
pub fn assert_entries(x: &ComplexMatrix, y: &ComplexMatrix, eps: f64) {
    let d = max_entry_diff(x, y);
    assert!(
        d <= eps,
        "entrywise gap {d:e} > {eps:e}\nleft  {x:?}\nright {y:?}"
    );
}

#[track_caller]
pub fn assert_residual(x: &ComplexMatrix, y: &ComplexMatrix, eps: f64) {
    let r = normalized_residual(x, y);
    assert!(
        r <= eps,
        "residual {r:e} > {eps:e}\nleft  {x:?}\nright {y:?}"
    );
}

pub fn s2() -> f64 {
    2f64.sqrt()
}

pub fn s3() -> f64 {
    3f64.sqrt()
}

/// Nilpotent 3x3 with `A^3 = 0`.
pub fn nilpotent3() -> ComplexMatrix {
    m(&[&[1., 1., 3.], &[5., 2., 6.], &[-2., -1., -3.]])
}

/// Index-3, 3-EP, not CEPD.
pub fn b6() -> ComplexMatrix {
    m(&[
        &[-1., 1., 0., 0., 1., 0.],
        &[1., -1., 0., 0., -1., 0.],
        &[0., 0., 0., 1., -1., 1.],
        &[-1., -1., 0., 0., 1., -1.],
        &[1., -1., 0., 0., 1., -1.],
        &[1., -1., 0., 0., 0., 0.],
    ])
}

/// `B^D` as printed, with four-digit decimal entries.
pub fn b6_drazin_printed() -> ComplexMatrix {
    let e = 1e-4;
    m(&[
        &[0., 0., 0., 0., e, 4999. * e],
        &[0., 0., 0., 0., -e, -4999. * e],
        &[0., 0., 0., 0., 0., 0.],
        &[0., 0., 0., 0., 1., -1.],
        &[0.5, -0.5, 0., 0., 3. * e, 9996. * e],
        &[0.5, -0.5, 0., 0., -9997. * e, 4999. / 2500.],
    ])
}

pub fn b6_core_ep_printed() -> ComplexMatrix {
    scaled(
        1. / 6.,
        &[
            &[0., 0., 0., -1., 1., 2.],
            &[0., 0., 0., 1., -1., -2.],
            &[0., 0., 0., 0., 0., 0.],
            &[0., 0., 0., 4., 2., -2.],
            &[3., -3., 0., -2., 2., 4.],
            &[3., -3., 0., -6., 0., 6.],
        ],
    )
}

/// Not a partial isometry; `A^D A* A != A^D`.
pub fn ex_not_pi() -> ComplexMatrix {
    m(&[&[2., 0., 0.], &[-1., 1., 1.], &[-1., -1., -1.]])
}

/// Index-1 partial isometry with √3 entries.
pub fn ex_pi_sqrt3() -> ComplexMatrix {
    scaled(0.5, &[&[2., 0., 0.], &[0., s3(), 0.], &[0., 1., 0.]])
}

/// Non-normal matrix whose Drazin inverse is a partial isometry.
pub fn ex_swap_block() -> ComplexMatrix {
    m(&[
        &[0., 1., 0., 0.],
        &[1., 0., 0., 0.],
        &[0., 0., 0., 1.],
        &[0., 0., 0., 0.],
    ])
}

/// Index-2, not a partial isometry.
pub fn ex_upper3() -> ComplexMatrix {
    m(&[&[0., 1., 1.], &[0., 0., 0.], &[0., 0., 1.]])
}

/// 2-EP, index 2, CEPD.
pub fn ex_block_two_ep() -> ComplexMatrix {
    m(&[
        &[1., 2., 0., 0.],
        &[2., 1., 0., 0.],
        &[0., 0., 0., 1.],
        &[0., 0., 0., 0.],
    ])
}

/// 6x6 partial isometry of index 2 that is not CEPD.
pub fn ex_pi6() -> ComplexMatrix {
    let (a, b) = (s2(), 1.0);
    scaled(
        0.5,
        &[
            &[0., 0., 0., 0., 0., 0.],
            &[a, -a, 0., 0., 0., 0.],
            &[b, b, 0., 0., 0., 0.],
            &[b, b, 0., 0., 0., 0.],
            &[0., 0., 0., 0., 0., a],
            &[0., 0., 0., 0., 0., a],
        ],
    )
}

pub fn ex_pi6_drazin_printed() -> ComplexMatrix {
    let a = s2();
    m(&[
        &[0., 0., 0., 0., 0., 0.],
        &[a, -a, 0., 0., 0., 0.],
        &[-1., 1., 0., 0., 0., 0.],
        &[-1., 1., 0., 0., 0., 0.],
        &[0., 0., 0., 0., 0., a],
        &[0., 0., 0., 0., 0., a],
    ])
}

pub fn ex_pi6_core_ep_printed() -> ComplexMatrix {
    let a = s2();
    scaled(
        0.25,
        &[
            &[0., 0., 0., 0., 0., 0.],
            &[0., -2. * a, 2., 2., 0., 0.],
            &[0., 2., -a, -a, 0., 0.],
            &[0., 2., -a, -a, 0., 0.],
            &[0., 0., 0., 0., 2. * a, 2. * a],
            &[0., 0., 0., 0., 2. * a, 2. * a],
        ],
    )
}

/// Every worked-example matrix, labelled.
pub fn worked_examples() -> Vec<(&'static str, ComplexMatrix)> {
    vec![
        ("nilpotent 3x3", nilpotent3()),
        ("B 6x6", b6()),
        ("non-isometry 3x3", ex_not_pi()),
        ("isometry with sqrt3", ex_pi_sqrt3()),
        ("swap block 4x4", ex_swap_block()),
        ("upper 3x3", ex_upper3()),
        ("block 2-EP 4x4", ex_block_two_ep()),
        ("isometry 6x6", ex_pi6()),
    ]
}

pub fn i() -> C64 {
    C64::new(0.0, 1.0)
}

use ginv_core::randgen::{
    gen_cepd, gen_partial_isometry, gen_with_index, random_index_spec, GenRng,
};

/// Sample `i` of a seeded stream cycling through the CEPD, prescribed-index
/// and partial-isometry generators (n <= 8, index <= 3).
pub fn structured(rng: &mut GenRng, i: usize) -> ComplexMatrix {
    let spec = random_index_spec(rng, 8, 3);
    match i % 3 {
        0 => gen_cepd(&spec).unwrap(),
        1 => gen_with_index(&spec).unwrap(),
        _ => gen_partial_isometry(&spec).unwrap(),
    }
}

/// `rows x cols` matrix of rank `min(r, rows, cols)` as a product of Gaussian
/// factors.
pub fn low_rank(rng: &mut GenRng, rows: usize, cols: usize, r: usize) -> ComplexMatrix {
    let left = rng.gaussian(rows, r);
    let right = rng.gaussian(r, cols);
    &left * &right
}

pub fn random_column(rng: &mut GenRng, n: usize) -> ComplexMatrix {
    rng.gaussian(n, 1)
}
