//! Residual suite for the algebraic identities linking the generalized
//! inverses to each other and to the Hartwig–Spindelböck blocks.

use serde::Serialize;

use super::{group_inverse, pinv_with_floor, InverseBundle, Powers};
use crate::decomp::hs_decompose;
use crate::error::Result;
use crate::matrix::{normalized_residual, ComplexMatrix};
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Pass,
    Fail,
    /// The row's premise does not hold for this input; nothing was asserted.
    HypothesisNotMet,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityRow {
    pub label: String,
    pub lhs: ComplexMatrix,
    pub rhs: ComplexMatrix,
    pub residual: f64,
    pub status: RowStatus,
}

impl IdentityRow {
    /// Row whose status is decided by `residual <= eq_atol`.
    pub fn compare(
        label: impl Into<String>,
        lhs: ComplexMatrix,
        rhs: ComplexMatrix,
        tol: &Tolerance,
    ) -> Self {
        let residual = normalized_residual(&lhs, &rhs);
        let status = if residual <= tol.eq_atol {
            RowStatus::Pass
        } else {
            RowStatus::Fail
        };
        Self {
            label: label.into(),
            lhs,
            rhs,
            residual,
            status,
        }
    }

    /// Same values as [`IdentityRow::compare`] but marked as not asserted.
    pub fn gated(self, hypothesis_holds: bool) -> Self {
        if hypothesis_holds {
            self
        } else {
            Self {
                status: RowStatus::HypothesisNotMet,
                ..self
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.status == RowStatus::Pass
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct IdentityReport {
    pub rows: Vec<IdentityRow>,
}

impl IdentityReport {
    /// No row failed. Rows whose hypothesis is not met do not count.
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.status != RowStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityRow> {
        self.rows.iter().filter(|r| r.status == RowStatus::Fail)
    }

    pub fn row(&self, label: &str) -> Option<&IdentityRow> {
        self.rows.iter().find(|r| r.label == label)
    }

    fn push(&mut self, label: &str, lhs: ComplexMatrix, rhs: ComplexMatrix, tol: &Tolerance) {
        self.rows.push(IdentityRow::compare(label, lhs, rhs, tol));
    }
}

/// Evaluates every identity for a square matrix.
///
/// Composite-inverse rows check the defining systems of the DMP, MPD and CMP
/// inverses at their closed forms; core EP rows compare independent
/// constructions; block rows rebuild inverses from the Hartwig–Spindelböck
/// blocks. Block rows are marked [`RowStatus::HypothesisNotMet`] for the
/// zero matrix, which has no such decomposition.
pub fn verify_identities(a: &ComplexMatrix, tol: &Tolerance) -> Result<IdentityReport> {
    let mut powers = Powers::new(a)?;
    let inv = InverseBundle::from_powers(a, &mut powers, tol)?;
    let k = inv.index;
    let n = a.rows();
    let ak = powers.get(k).clone();
    let ak1 = powers.get(k + 1).clone();
    let ak_pinv = powers.pinv(k, tol)?;
    let ak1_pinv = powers.pinv(k + 1, tol)?;
    let (p, d, cep) = (&inv.mp, &inv.drazin, &inv.core_ep);
    let core = &(a * d) * a;
    let mut rep = IdentityReport::default();

    // composite inverses at their closed forms
    let x = &inv.dmp;
    rep.push("dmp: X A = A^D A", x * a, d * a, tol);
    rep.push("dmp: X A X = X", &(x * a) * x, x.clone(), tol);
    rep.push("dmp: A^k X = A^k A†", &ak * x, &ak * p, tol);
    let x = &inv.mpd;
    rep.push("mpd: A X = A A^D", a * x, a * d, tol);
    rep.push("mpd: X A X = X", &(x * a) * x, x.clone(), tol);
    rep.push("mpd: X A^k = A† A^k", x * &ak, p * &ak, tol);
    let x = &inv.cmp;
    rep.push("cmp: A X A = A1", &(a * x) * a, core.clone(), tol);
    rep.push("cmp: X A X = X", &(x * a) * x, x.clone(), tol);
    rep.push("cmp: X A = A† A1", x * a, p * &core, tol);
    rep.push("cmp: A X = A1 A†", a * x, &core * p, tol);
    rep.push("dmp: A^(D,†) A^D = (A^D)^2", &inv.dmp * d, d * d, tol);
    rep.push("dmp: A^(D,†) A = A A^D", &inv.dmp * a, a * d, tol);
    rep.push(
        "core part: (A^D)^# = A1",
        group_inverse(d, tol)?,
        core.clone(),
        tol,
    );
    rep.push("core part: A^2 A^D = A1", &(a * a) * d, core.clone(), tol);

    // core EP inverse
    rep.push("core EP: A^⊕ A^(k+1) = A^k", cep * &ak1, ak.clone(), tol);
    let acep = a * cep;
    rep.push(
        "core EP: A A^⊕ is Hermitian",
        acep.clone(),
        acep.conj_transpose(),
        tol,
    );
    rep.push(
        "core EP: A^⊕ = A^D A^k (A^k)†",
        cep.clone(),
        &(d * &ak) * &ak_pinv,
        tol,
    );
    rep.push(
        "core EP: A^⊕ = A^D A^(k+1) (A^(k+1))†",
        cep.clone(),
        &(d * &ak1) * &ak1_pinv,
        tol,
    );
    let x = &ak * &ak1_pinv;
    let xp = pinv_with_floor(&x, tol, 0.0)?;
    let proj = &ak * &ak_pinv;
    rep.push(
        "core EP: X A X = X at X = A^k (A^(k+1))†",
        &(&x * a) * &x,
        x.clone(),
        tol,
    );
    rep.push(
        "core EP: R(X) = R(A^k) at X = A^k (A^(k+1))†",
        &x * &xp,
        proj.clone(),
        tol,
    );
    rep.push(
        "core EP: R(X*) = R(A^k) at X = A^k (A^(k+1))†",
        &xp * &x,
        proj.clone(),
        tol,
    );
    rep.push("core EP: A^⊕ A^k = A^D A^k", cep * &ak, d * &ak, tol);
    let alt = pinv_with_floor(&(&ak1 * &ak_pinv), tol, 0.0)?;
    rep.push("core EP: A^⊕ = (A^(k+1) (A^k)†)†", cep.clone(), alt, tol);
    let cep_pinv = pinv_with_floor(cep, tol, 0.0)?;
    rep.push("core EP: A^⊕ is EP", cep * &cep_pinv, &cep_pinv * cep, tol);
    rep.push("core EP: A (A^⊕)^2 = A^⊕", &acep * cep, cep.clone(), tol);
    rep.push("core EP: A A^⊕ = A^k (A^k)†", acep.clone(), proj, tol);
    rep.push("core EP: A^D A^⊕ = (A^⊕)^2", d * cep, cep * cep, tol);

    // block formulas
    match hs_decompose(a, tol) {
        Ok(hs) => {
            let sk = hs.sigma_k();
            let sl = hs.sigma_l();
            let blk = InverseBundle::compute_block(&sk, powers.reference(1), tol)?;
            let skd = &blk.drazin;
            let zero_tr = ComplexMatrix::zeros(hs.rank, n - hs.rank);
            let tr = &(skd * skd) * &sl;
            rep.push(
                "HS block: A^D = U [(ΣK)^D ((ΣK)^D)^2 ΣL; 0 0] U*",
                d.clone(),
                hs.assemble(skd, &tr)?,
                tol,
            );
            rep.push(
                "HS block: A^⊕ = U [(ΣK)^⊕ 0; 0 0] U*",
                cep.clone(),
                hs.assemble(&blk.core_ep, &zero_tr)?,
                tol,
            );
            rep.push(
                "HS block: A^(D,†) = U [(ΣK)^D 0; 0 0] U*",
                inv.dmp.clone(),
                hs.assemble(skd, &zero_tr)?,
                tol,
            );
            rep.push(
                "HS block: A^(D,*) = U [(ΣK)^D Σ Σ* 0; 0 0] U*",
                inv.drazin_star.clone(),
                hs.assemble(&(skd * &hs.sigma_sq()), &zero_tr)?,
                tol,
            );
        }
        Err(crate::Error::ZeroMatrix) => {
            for label in [
                "HS block: A^D = U [(ΣK)^D ((ΣK)^D)^2 ΣL; 0 0] U*",
                "HS block: A^⊕ = U [(ΣK)^⊕ 0; 0 0] U*",
                "HS block: A^(D,†) = U [(ΣK)^D 0; 0 0] U*",
                "HS block: A^(D,*) = U [(ΣK)^D Σ Σ* 0; 0 0] U*",
            ] {
                let z = ComplexMatrix::zeros(n, n);
                rep.rows
                    .push(IdentityRow::compare(label, z.clone(), z, tol).gated(false));
            }
        }
        Err(e) => return Err(e),
    }
    Ok(rep)
}
