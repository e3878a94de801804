//! Linear systems `A x = b` solved through generalized inverses.
//!
//! Right-hand sides are `n x 1` matrices. Each solver checks its hypothesis
//! first (CEPD or partial isometry, and range membership of `b` where the
//! solution formula needs it) and reports the residual of the equation it
//! guarantees.

use serde::Serialize;

use crate::classify::partial_isometry_flag;
use crate::error::{Error, Result};
use crate::geninv::{moore_penrose, InverseBundle, Powers};
use crate::matrix::{normalized_residual, ComplexMatrix};
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, Serialize)]
pub struct SolveResult {
    /// The particular solution `x`.
    pub particular: ComplexMatrix,
    /// `P` in the general solution `x + P y`, for solvers that have one.
    pub homogeneous_projector: Option<ComplexMatrix>,
    /// Normalized residual of the equation the solver guarantees.
    pub residual: f64,
    /// Normalized residual of the membership test `x ∈ space`, when the
    /// solution is unique in a subspace.
    pub space_residual: Option<f64>,
    pub solution_space_note: String,
}

struct Prepared {
    powers: Powers,
    inv: InverseBundle,
}

fn prepare(a: &ComplexMatrix, b: &ComplexMatrix, tol: &Tolerance) -> Result<Prepared> {
    let n = a.ensure_square()?;
    if b.dims() != (n, 1) {
        return Err(Error::DimensionMismatch {
            expected: format!("{n}x1"),
            actual: format!("{}x{}", b.rows(), b.cols()),
        });
    }
    let mut powers = Powers::new(a)?;
    let inv = InverseBundle::from_powers(a, &mut powers, tol)?;
    Ok(Prepared { powers, inv })
}

fn require_cepd(p: &Prepared, tol: &Tolerance) -> Result<()> {
    let residual = normalized_residual(&p.inv.core_ep, &p.inv.drazin);
    if residual > tol.eq_atol {
        return Err(Error::NotCepd { residual });
    }
    Ok(())
}

fn require_pi(a: &ComplexMatrix, tol: &Tolerance) -> Result<()> {
    let f = partial_isometry_flag(a, tol);
    if !f.holds {
        return Err(Error::NotPartialIsometry {
            residual: f.residual,
        });
    }
    Ok(())
}

/// `‖x - y‖ / max(1, ‖b‖)`, the scale used for consistency decisions.
fn rhs_scaled(x: &ComplexMatrix, y: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (x - y).frobenius_norm() / b.frobenius_norm().max(1.0)
}

/// General solution `x = A^(c†) b + (I - A† A) y` of `A (x - A^⊕ b) = 0` for
/// a CEPD matrix.
pub fn solve_cmp_system(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    tol: &Tolerance,
) -> Result<SolveResult> {
    let p = prepare(a, b, tol)?;
    require_cepd(&p, tol)?;
    let x = &p.inv.cmp * b;
    let proj = &ComplexMatrix::identity(a.rows()) - &(&p.inv.mp * a);
    let residual = normalized_residual(&(a * &x), &(a * &(&p.inv.core_ep * b)));
    Ok(SolveResult {
        particular: x,
        homogeneous_projector: Some(proj),
        residual,
        space_residual: None,
        solution_space_note: "x + (I - A†A) y solves A(x - A^⊕ b) = 0 for every y".into(),
    })
}

/// General solution `x = A^D b + (I - A^D A) y` of `A^D (A x - b) = 0` for a
/// CEPD matrix.
pub fn solve_drazin_system(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    tol: &Tolerance,
) -> Result<SolveResult> {
    let p = prepare(a, b, tol)?;
    require_cepd(&p, tol)?;
    let d = &p.inv.drazin;
    let x = d * b;
    let proj = &ComplexMatrix::identity(a.rows()) - &(d * a);
    let residual = normalized_residual(&(d * &(a * &x)), &(d * b));
    Ok(SolveResult {
        particular: x,
        homogeneous_projector: Some(proj),
        residual,
        space_residual: None,
        solution_space_note: "x + (I - A^D A) y solves A^D(Ax - b) = 0 for every y".into(),
    })
}

/// Unique solution `x = A^⊕ b` in `R(A^⊕)` of a consistent system with a
/// CEPD matrix. Consistency is decided after solving: `‖Ax - b‖` must not
/// exceed `eq_atol · max(1, ‖b‖)`.
pub fn solve_in_corange(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    tol: &Tolerance,
) -> Result<SolveResult> {
    let p = prepare(a, b, tol)?;
    require_cepd(&p, tol)?;
    let cep = &p.inv.core_ep;
    let x = cep * b;
    let ax = a * &x;
    let gap = rhs_scaled(&ax, b, b);
    if gap > tol.eq_atol {
        return Err(Error::ConsistencyViolated { residual: gap });
    }
    let cep_pinv = moore_penrose(cep, tol)?;
    let space = normalized_residual(&(&(cep * &cep_pinv) * &x), &x);
    Ok(SolveResult {
        residual: normalized_residual(&ax, b),
        particular: x,
        homogeneous_projector: None,
        space_residual: Some(space),
        solution_space_note: "unique solution in R(A^⊕) = R(A^k)".into(),
    })
}

/// `x = A* b` for a partial isometry `A` and `b ∈ R(A)`.
pub fn solve_pi(a: &ComplexMatrix, b: &ComplexMatrix, tol: &Tolerance) -> Result<SolveResult> {
    let _ = prepare(a, b, tol)?;
    require_pi(a, tol)?;
    let mp = moore_penrose(a, tol)?;
    let gap = rhs_scaled(&(a * &(&mp * b)), b, b);
    if gap > tol.eq_atol {
        return Err(Error::RightSideNotInRange { residual: gap });
    }
    let x = &a.conj_transpose() * b;
    Ok(SolveResult {
        residual: normalized_residual(&(a * &x), b),
        particular: x,
        homogeneous_projector: None,
        space_residual: None,
        solution_space_note: "x = A*b = A†b, the minimum-norm solution".into(),
    })
}

/// `x = A^(D,*) b` for a partial isometry `A` and `b ∈ R(A A^D) = R(A^k)`;
/// unique in `R(A^k)`.
pub fn solve_drazin_star(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    tol: &Tolerance,
) -> Result<SolveResult> {
    let mut p = prepare(a, b, tol)?;
    require_pi(a, tol)?;
    let d = &p.inv.drazin;
    let gap = rhs_scaled(&(&(a * d) * b), b, b);
    if gap > tol.eq_atol {
        return Err(Error::RightSideNotInRange { residual: gap });
    }
    let x = &p.inv.drazin_star * b;
    let k = p.inv.index;
    let ak_pinv = p.powers.pinv(k, tol)?;
    let space = normalized_residual(&(&(p.powers.get(k) * &ak_pinv) * &x), &x);
    Ok(SolveResult {
        residual: normalized_residual(&(a * &x), b),
        particular: x,
        homogeneous_projector: None,
        space_residual: Some(space),
        solution_space_note: "unique solution in R(A^k)".into(),
    })
}
