//! Matrix-class predicates and the CEPD (core EP Drazin) machinery.
//!
//! A square matrix is CEPD when its core EP inverse commutes with its Drazin
//! inverse, equivalently when the two inverses coincide. [`is_cepd`] tests the
//! latter; [`cepd_equivalences`] evaluates every equivalent condition so the
//! equivalence itself can be checked.

mod cepd;
mod pi;

pub use cepd::{cepd_equivalences, CepdEquivalenceReport, Condition, Outcome};
pub use pi::check_pi_theorems;

use serde::Serialize;

use crate::error::Result;
use crate::geninv::{InverseBundle, Powers};
use crate::matrix::{normalized_residual, ComplexMatrix};
use crate::tolerance::Tolerance;

/// A predicate value with the residual that decided it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Flag {
    pub holds: bool,
    pub residual: f64,
}

impl Flag {
    pub fn from_residual(residual: f64, tol: &Tolerance) -> Self {
        Self {
            holds: residual <= tol.eq_atol,
            residual,
        }
    }

    pub(crate) fn compare(x: &ComplexMatrix, y: &ComplexMatrix, tol: &Tolerance) -> Self {
        Self::from_residual(normalized_residual(x, y), tol)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub index: usize,
    /// `A A* = A* A`
    pub normal: Flag,
    pub hermitian: Flag,
    /// `A A† = A† A`
    pub ep: Flag,
    /// `A^k A† = A† A^k` with `k = ind(A)`
    pub k_ep: Flag,
    /// `A† A₁ = A₁ A†`
    pub core_ep_matrix: Flag,
    /// star-dagger: `A* A† = A† A*`
    pub sd: Flag,
    /// `A A* A = A`
    pub partial_isometry: Flag,
    /// `A^⊕ = A^D`
    pub cepd: Flag,
    pub core_part: ComplexMatrix,
    pub inverses: InverseBundle,
}

pub fn classify(a: &ComplexMatrix, tol: &Tolerance) -> Result<ClassificationReport> {
    let mut powers = Powers::new(a)?;
    let inv = InverseBundle::from_powers(a, &mut powers, tol)?;
    let k = inv.index;
    let ak = powers.get(k).clone();
    let astar = a.conj_transpose();
    let p = &inv.mp;
    let core = &(a * &inv.drazin) * a;
    Ok(ClassificationReport {
        index: k,
        normal: Flag::compare(&(a * &astar), &(&astar * a), tol),
        hermitian: Flag::compare(a, &astar, tol),
        ep: Flag::compare(&(a * p), &(p * a), tol),
        k_ep: Flag::compare(&(&ak * p), &(p * &ak), tol),
        core_ep_matrix: Flag::compare(&(p * &core), &(&core * p), tol),
        sd: Flag::compare(&(&astar * p), &(p * &astar), tol),
        partial_isometry: partial_isometry_flag(a, tol),
        cepd: Flag::compare(&inv.core_ep, &inv.drazin, tol),
        core_part: core,
        inverses: inv,
    })
}

pub(crate) fn partial_isometry_flag(a: &ComplexMatrix, tol: &Tolerance) -> Flag {
    Flag::compare(&(&(a * &a.conj_transpose()) * a), a, tol)
}

pub(crate) fn hermitian_flag(a: &ComplexMatrix, tol: &Tolerance) -> Flag {
    Flag::compare(a, &a.conj_transpose(), tol)
}

/// `A A* A ≈ A`.
pub fn is_partial_isometry(a: &ComplexMatrix, tol: &Tolerance) -> bool {
    partial_isometry_flag(a, tol).holds
}

/// Normalized residual `‖A^⊕ − A^D‖`.
pub fn cepd_residual(a: &ComplexMatrix, tol: &Tolerance) -> Result<f64> {
    let mut powers = Powers::new(a)?;
    let inv = InverseBundle::from_powers(a, &mut powers, tol)?;
    Ok(normalized_residual(&inv.core_ep, &inv.drazin))
}

/// CEPD test via `A^⊕ ≈ A^D`.
pub fn is_cepd(a: &ComplexMatrix, tol: &Tolerance) -> Result<bool> {
    Ok(cepd_residual(a, tol)? <= tol.eq_atol)
}
