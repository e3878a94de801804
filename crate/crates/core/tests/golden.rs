mod common;

use common::oracle::{self, QMatrix};
use common::*;
use ginv_core::classify::{cepd_equivalences, check_pi_theorems, classify, is_cepd};
use ginv_core::geninv::InverseKind;
use ginv_core::geninv::{self, RowStatus};
use ginv_core::{ComplexMatrix, Tolerance};

fn tol() -> Tolerance {
    Tolerance::default()
}

#[test]
fn upper3_inverses() {
    let a = ex_upper3();
    let t = tol();
    assert_eq!(geninv::index(&a, &t).unwrap(), 2);
    assert_entries(
        &geninv::moore_penrose(&a, &t).unwrap(),
        &m(&[&[0., 0., 0.], &[1., 0., -1.], &[0., 0., 1.]]),
        1e-9,
    );
    let d = geninv::drazin(&a, &t).unwrap();
    assert_entries(&d, &m(&[&[0., 0., 1.], &[0., 0., 0.], &[0., 0., 1.]]), 1e-9);
    assert_entries(
        &geninv::core_ep(&a, &t).unwrap(),
        &scaled(0.5, &[&[1., 0., 1.], &[0., 0., 0.], &[1., 0., 1.]]),
        1e-9,
    );
    // (A^D)† and (A†)^D differ for this non-isometry
    let d_p = geninv::moore_penrose(&d, &t).unwrap();
    assert_entries(
        &d_p,
        &scaled(0.5, &[&[0., 0., 0.], &[0., 0., 0.], &[1., 0., 1.]]),
        1e-9,
    );
    let p_d = geninv::drazin(&geninv::moore_penrose(&a, &t).unwrap(), &t).unwrap();
    assert_entries(
        &p_d,
        &m(&[&[0., 0., 0.], &[0., 0., -1.], &[0., 0., 1.]]),
        1e-9,
    );
    // A^2 = A^3 and their pseudoinverse
    let a2 = a.pow(2).unwrap();
    assert_eq!(a2, a.pow(3).unwrap());
    assert_entries(
        &geninv::moore_penrose(&a2, &t).unwrap(),
        &scaled(0.5, &[&[0., 0., 0.], &[0., 0., 0.], &[1., 0., 1.]]),
        1e-9,
    );
}

#[test]
fn non_isometry_drazin_and_drazin_star() {
    let a = ex_not_pi();
    let t = tol();
    let d = geninv::drazin(&a, &t).unwrap();
    assert_entries(
        &d,
        &scaled(0.5, &[&[1., 0., 0.], &[-1., 0., 0.], &[0., 0., 0.]]),
        1e-9,
    );
    let lhs = &(&d * &a.conj_transpose()) * &a;
    assert_entries(
        &lhs,
        &m(&[&[3., 0., 0.], &[-3., 0., 0.], &[0., 0., 0.]]),
        1e-10,
    );

    // exact composition A^D A A* from the rational oracle
    let qa = QMatrix::from_ints(&[&[2, 0, 0], &[-1, 1, 1], &[-1, -1, -1]]);
    let qd = oracle::drazin(&qa);
    let expect = qd.mul(&qa).mul(&qa.transpose()).to_complex();
    assert_entries(&geninv::drazin_star(&a, &t).unwrap(), &expect, 1e-9);
    assert_entries(
        &expect,
        &m(&[&[2., -1., -1.], &[-2., 1., 1.], &[0., 0., 0.]]),
        0.0,
    );
}

#[test]
fn sqrt3_isometry_inverses() {
    let a = ex_pi_sqrt3();
    let t = tol();
    let (r3, third, sixth) = (s3(), 1. / 3., 1. / 6.);
    let d = scaled(third, &[&[3., 0., 0.], &[0., 2. * r3, 0.], &[0., 2., 0.]]);
    let dmp = scaled(sixth, &[&[6., 0., 0.], &[0., 3. * r3, 3.], &[0., 3., r3]]);
    let mpd = scaled(third, &[&[3., 0., 0.], &[0., 2. * r3, 0.], &[0., 0., 0.]]);
    let bundle = geninv::InverseBundle::compute(&a, &t).unwrap();
    assert_eq!(bundle.index, 1);
    assert_entries(&bundle.drazin, &d, 1e-10);
    assert_entries(&bundle.dmp, &dmp, 1e-10);
    assert_entries(&bundle.mpd, &mpd, 1e-10);
    assert_entries(&bundle.core_ep, &dmp, 1e-10);
    assert_entries(bundle.group.as_ref().unwrap(), &d, 1e-10);

    // CMP from the printed factors: A† = A*, A^D as printed
    let p = a.conj_transpose();
    let cmp = &(&(&(&p * &a) * &d) * &a) * &p;
    assert_entries(&bundle.cmp, &cmp, 1e-10);
    assert_entries(
        &cmp,
        &m(&[&[1., 0., 0.], &[0., r3 / 2., 0.5], &[0., 0., 0.]]),
        1e-12,
    );

    // pseudoinverses of the derived inverses
    let eighth = 1. / 8.;
    assert_entries(
        &geninv::moore_penrose(&d, &t).unwrap(),
        &scaled(eighth, &[&[8., 0., 0.], &[0., 3. * r3, 3.], &[0., 0., 0.]]),
        1e-10,
    );
    assert_entries(
        &geninv::moore_penrose(&dmp, &t).unwrap(),
        &scaled(eighth, &[&[8., 0., 0.], &[0., 3. * r3, 3.], &[0., 3., r3]]),
        1e-10,
    );
    assert_entries(
        &geninv::moore_penrose(&mpd, &t).unwrap(),
        &scaled(0.5, &[&[2., 0., 0.], &[0., r3, 0.], &[0., 0., 0.]]),
        1e-10,
    );
}

#[test]
fn swap_block_drazin_is_isometry() {
    let a = ex_swap_block();
    let t = tol();
    let d = geninv::drazin(&a, &t).unwrap();
    assert_entries(
        &d,
        &m(&[
            &[0., 1., 0., 0.],
            &[1., 0., 0., 0.],
            &[0., 0., 0., 0.],
            &[0., 0., 0., 0.],
        ]),
        1e-9,
    );
    let r = classify(&a, &t).unwrap();
    assert!(!r.normal.holds);
    assert!(classify(&d, &t).unwrap().partial_isometry.holds);
}

#[test]
fn b6_core_ep_and_oracle_drazin() {
    let b = b6();
    let t = tol();
    let bundle = geninv::InverseBundle::compute(&b, &t).unwrap();
    assert_eq!(bundle.index, 3);
    assert_entries(&bundle.core_ep, &b6_core_ep_printed(), 1e-9);

    let exact = oracle::drazin(&QMatrix::from_ints(&[
        &[-1, 1, 0, 0, 1, 0],
        &[1, -1, 0, 0, -1, 0],
        &[0, 0, 0, 1, -1, 1],
        &[-1, -1, 0, 0, 1, -1],
        &[1, -1, 0, 0, 1, -1],
        &[1, -1, 0, 0, 0, 0],
    ]));
    assert_entries(&bundle.drazin, &exact.to_complex(), 1e-9);
    // the printed four-digit decimals sit 4e-4 away from the exact value
    let gap = max_entry_diff(&exact.to_complex(), &b6_drazin_printed());
    assert!((gap - 4e-4).abs() < 1e-12, "gap {gap}");
}

#[test]
fn isometry6_inverses() {
    let a = ex_pi6();
    let t = tol();
    let bundle = geninv::InverseBundle::compute(&a, &t).unwrap();
    assert_eq!(bundle.index, 2);
    assert_entries(&bundle.drazin, &ex_pi6_drazin_printed(), 1e-9);
    assert_entries(&bundle.core_ep, &ex_pi6_core_ep_printed(), 1e-9);

    let (r, q) = (s2(), 0.25);
    let a2p = scaled(
        q,
        &[
            &[0., -2., r, r, 0., 0.],
            &[0., 2., -r, -r, 0., 0.],
            &[0.; 6],
            &[0.; 6],
            &[0.; 6],
            &[0., 0., 0., 0., 4., 4.],
        ],
    );
    let a3p = scaled(
        0.5,
        &[
            &[0., r, -1., -1., 0., 0.],
            &[0., -r, 1., 1., 0., 0.],
            &[0.; 6],
            &[0.; 6],
            &[0.; 6],
            &[0., 0., 0., 0., 2. * r, 2. * r],
        ],
    );
    let a2 = a.pow(2).unwrap();
    let a3 = a.pow(3).unwrap();
    assert_entries(&geninv::moore_penrose(&a2, &t).unwrap(), &a2p, 1e-9);
    assert_entries(&geninv::moore_penrose(&a3, &t).unwrap(), &a3p, 1e-9);
    assert!(!classify(&a2, &t).unwrap().partial_isometry.holds);
    assert!(!classify(&a3, &t).unwrap().partial_isometry.holds);
}

#[test]
fn classification_goldens() {
    let t = tol();
    assert!(is_cepd(&nilpotent3(), &t).unwrap());
    assert!(!is_cepd(&b6(), &t).unwrap());
    assert!(!is_cepd(&ex_pi6(), &t).unwrap());
    assert!(classify(&ex_pi_sqrt3(), &t).unwrap().partial_isometry.holds);
    assert!(classify(&ex_pi6(), &t).unwrap().partial_isometry.holds);
    assert!(!classify(&ex_not_pi(), &t).unwrap().partial_isometry.holds);
    assert!(!classify(&ex_upper3(), &t).unwrap().partial_isometry.holds);
    let id = classify(&ComplexMatrix::identity(5), &t).unwrap();
    assert_eq!(id.index, 0);
}

#[test]
fn block_two_ep_is_cepd() {
    let a = ex_block_two_ep();
    let t = tol();
    let r = classify(&a, &t).unwrap();
    assert_eq!(r.index, 2);
    assert!(r.k_ep.holds);
    assert!(!r.ep.holds);
    assert!(r.cepd.holds);
    let a2p = scaled(
        1. / 9.,
        &[&[5., -4., 0., 0.], &[-4., 5., 0., 0.], &[0.; 4], &[0.; 4]],
    );
    let a3p = scaled(
        1. / 27.,
        &[
            &[-13., 14., 0., 0.],
            &[14., -13., 0., 0.],
            &[0.; 4],
            &[0.; 4],
        ],
    );
    assert_entries(
        &geninv::moore_penrose(&a.pow(2).unwrap(), &t).unwrap(),
        &a2p,
        1e-9,
    );
    assert_entries(
        &geninv::moore_penrose(&a.pow(3).unwrap(), &t).unwrap(),
        &a3p,
        1e-9,
    );
    assert!(
        !classify(&a.pow(2).unwrap(), &t)
            .unwrap()
            .partial_isometry
            .holds
    );
    assert!(
        !classify(&a.pow(3).unwrap(), &t)
            .unwrap()
            .partial_isometry
            .holds
    );
}

#[test]
fn equivalence_reports_on_examples() {
    let t = tol();
    let r = cepd_equivalences(&b6(), &t).unwrap();
    assert!(r.agreement);
    assert!(r.conditions.iter().all(|c| c.holds() == Some(false)));
    let r = cepd_equivalences(&nilpotent3(), &t).unwrap();
    assert!(r.agreement);
    assert_eq!(r.verdict(), Some(true));
    for (name, a) in worked_examples() {
        assert!(cepd_equivalences(&a, &t).unwrap().agreement, "{name}");
    }
}

#[test]
fn theorem_rows_on_examples() {
    let t = tol();
    let r = check_pi_theorems(&ex_pi_sqrt3(), &t).unwrap();
    for row in r
        .rows
        .iter()
        .filter(|r| r.label.starts_with("partial isometry:"))
    {
        assert_eq!(row.status, RowStatus::Pass, "{}", row.label);
    }
    let r = check_pi_theorems(&ex_not_pi(), &t).unwrap();
    assert!(r
        .rows
        .iter()
        .filter(|r| r.label.starts_with("partial isometry:"))
        .all(|r| r.status == RowStatus::HypothesisNotMet));

    let r = check_pi_theorems(&ex_pi6(), &t).unwrap();
    assert_eq!(
        r.row("isometric powers: (A^⊕)† = (A^⊕)*").unwrap().status,
        RowStatus::HypothesisNotMet
    );
    assert_eq!(
        r.row("Hermitian isometric power: A^⊕ = A^D")
            .unwrap()
            .status,
        RowStatus::HypothesisNotMet
    );
    assert!(r.all_pass());
}

#[test]
fn identities_hold_on_examples() {
    let t = tol();
    for (name, a) in worked_examples() {
        let rep = geninv::verify_identities(&a, &t).unwrap();
        let bad: Vec<_> = rep.failures().map(|r| (&r.label, r.residual)).collect();
        assert!(bad.is_empty(), "{name}: {bad:?}");
        let bundle = geninv::InverseBundle::compute(&a, &t).unwrap();
        for (kind, x) in [
            (InverseKind::MoorePenrose, &bundle.mp),
            (InverseKind::Drazin, &bundle.drazin),
            (InverseKind::CoreEp, &bundle.core_ep),
            (InverseKind::Dmp, &bundle.dmp),
            (InverseKind::Mpd, &bundle.mpd),
            (InverseKind::Cmp, &bundle.cmp),
        ] {
            for eq in geninv::defining_equations(kind, &a, x, &t).unwrap() {
                assert!(eq.pass, "{name} {kind:?} {} {:e}", eq.equation, eq.residual);
            }
        }
    }
}
