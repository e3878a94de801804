use super::{hermitian_flag, partial_isometry_flag, Flag, Powers};
use crate::error::Result;
use crate::geninv::{drazin, moore_penrose, IdentityReport, IdentityRow, InverseBundle, RowStatus};
use crate::matrix::{normalized_residual, ComplexMatrix};
use crate::tolerance::Tolerance;

/// Partial-isometry theorem rows, each gated by its own hypothesis.
///
/// Rows whose premise fails carry their residuals but are reported as
/// [`RowStatus::HypothesisNotMet`].
pub fn check_pi_theorems(a: &ComplexMatrix, tol: &Tolerance) -> Result<IdentityReport> {
    let mut powers = Powers::new(a)?;
    let inv = InverseBundle::from_powers(a, &mut powers, tol)?;
    let k = inv.index;
    let ak = powers.get(k).clone();
    let ak1 = powers.get(k + 1).clone();
    let ak_pinv = powers.pinv(k, tol)?;
    let astar = a.conj_transpose();
    let d = &inv.drazin;
    let cep = &inv.core_ep;
    let cep_star = cep.conj_transpose();
    let core = &(a * d) * a;

    let a_pi = partial_isometry_flag(a, tol).holds;
    let ak_pi = partial_isometry_flag(&ak, tol).holds;
    let ak1_pi = partial_isometry_flag(&ak1, tol).holds;
    let powers_pi = ak_pi && ak1_pi;
    let cepd = Flag::compare(cep, d, tol).holds;
    let herm_pi =
        |m: &ComplexMatrix| hermitian_flag(m, tol).holds && partial_isometry_flag(m, tol).holds;
    let t49 = a_pi && (herm_pi(&ak) || herm_pi(&ak1));

    let mut report = IdentityReport::default();
    let mut add = |label: &str, lhs: ComplexMatrix, rhs: ComplexMatrix, hyp: bool| {
        report
            .rows
            .push(IdentityRow::compare(label, lhs, rhs, tol).gated(hyp));
    };

    // Drazin-star identities for a partial isometry
    let ds = &inv.drazin_star;
    add(
        "partial isometry: A A* (A^(D,*))^2 A = A^D",
        &(&(&(a * &astar) * ds) * ds) * a,
        d.clone(),
        a_pi,
    );
    add(
        "partial isometry: A^D A* A = A^D",
        &(d * &astar) * a,
        d.clone(),
        a_pi,
    );
    add(
        "partial isometry: A^k A^D A* A^2 = A^k",
        &(&(&ak * d) * &astar) * &(a * a),
        ak.clone(),
        a_pi,
    );
    add(
        "partial isometry: A^k A* A^2 = A^(k+1)",
        &(&ak * &astar) * &(a * a),
        ak1.clone(),
        a_pi,
    );

    // [A^D is P.I.] iff [(A†)^D = (A^D)†]
    {
        let lhs = drazin(&inv.mp, tol)?;
        let rhs = moore_penrose(d, tol)?;
        let residual = normalized_residual(&lhs, &rhs);
        let d_pi = partial_isometry_flag(d, tol).holds;
        let status = if !a_pi {
            RowStatus::HypothesisNotMet
        } else if (residual <= tol.eq_atol) == d_pi {
            RowStatus::Pass
        } else {
            RowStatus::Fail
        };
        report.rows.push(IdentityRow {
            label: "partial isometry: A^D is a partial isometry iff (A†)^D = (A^D)†".into(),
            lhs,
            rhs,
            residual,
            status,
        });
    }

    let mut add = |label: &str, lhs: ComplexMatrix, rhs: ComplexMatrix, hyp: bool| {
        report
            .rows
            .push(IdentityRow::compare(label, lhs, rhs, tol).gated(hyp));
    };

    add(
        "isometric powers: (A^⊕)† = (A^⊕)*",
        moore_penrose(cep, tol)?,
        cep_star.clone(),
        powers_pi,
    );

    let hyp48 = powers_pi && cepd;
    add(
        "isometric powers, CEPD: A^D (A^⊕)* A^⊕ = (A^⊕)^2 A^(k+1) (A^k)†",
        &(d * &cep_star) * cep,
        &(&(cep * cep) * &ak1) * &ak_pinv,
        hyp48,
    );
    add(
        "isometric powers, CEPD: (A^⊕)* A^k = A^D A^k",
        &cep_star * &ak,
        d * &ak,
        hyp48,
    );
    add(
        "isometric powers, CEPD: A^D A^k = A1 A^k",
        d * &ak,
        &core * &ak,
        hyp48,
    );
    add(
        "isometric powers, CEPD: (A^⊕)* A^k = A1 A^k",
        &cep_star * &ak,
        &core * &ak,
        hyp48,
    );

    add(
        "Hermitian isometric power: A^⊕ = A^D",
        cep.clone(),
        d.clone(),
        t49,
    );

    Ok(report)
}
