//! Generalized inverse constructors.
//!
//! All square-matrix inverses are built from two primitives: the SVD-based
//! Moore–Penrose inverse and the matrix index. The Drazin inverse uses the
//! single closed form `A^l (A^(2l+1))† A^l` with `l = ind(A)`; the core EP
//! inverse uses `A^k (A^(k+1))†`. The composite inverses (DMP, MPD, CMP,
//! Drazin-star) are products of those.
//!
//! Drazin and core EP results are checked against their defining equations
//! after construction; a residual above `100 * eq_atol` is reported as
//! [`Error::DefiningEquationsViolated`] since it almost always means a rank
//! decision landed on the wrong side of the threshold.

mod identities;

pub use identities::{verify_identities, IdentityReport, IdentityRow, RowStatus};

use serde::Serialize;

use crate::decomp::svd::svd;
use crate::error::{Error, Result};
use crate::matrix::{normalized_residual, rank_from_singular_values, ComplexMatrix, ZERO};
use crate::tolerance::Tolerance;

/// Computed powers carry rounding noise of order `eps * ‖A‖^p`; singular values
/// below this multiple of that level are discarded even when they dominate a
/// (numerically zero) power.
const ROUNDOFF_FACTOR: f64 = 1e3 * f64::EPSILON;

/// Post-check slack relative to `eq_atol`.
const POST_CHECK_FACTOR: f64 = 100.0;

/// Moore–Penrose inverse with an extra absolute singular-value floor of
/// `ROUNDOFF_FACTOR * max(m, n) * reference`.
pub(crate) fn pinv_with_floor(
    a: &ComplexMatrix,
    tol: &Tolerance,
    reference: f64,
) -> Result<ComplexMatrix> {
    let (m, n) = a.dims();
    if m == 0 || n == 0 {
        return Ok(ComplexMatrix::zeros(n, m));
    }
    let s = svd(a)?;
    let smax = s.sigma.first().copied().unwrap_or(0.0);
    let cut = tol
        .rank_cutoff(m, n, smax)
        .max(ROUNDOFF_FACTOR * m.max(n) as f64 * reference);
    // X = V Σ⁺ U*, only the retained columns contribute
    let mut x = ComplexMatrix::zeros(n, m);
    for (idx, &sig) in s.sigma.iter().enumerate() {
        if sig <= cut || sig == 0.0 {
            break;
        }
        let inv = 1.0 / sig;
        for i in 0..n {
            let vi = s.v[(i, idx)] * inv;
            if vi == ZERO {
                continue;
            }
            for j in 0..m {
                x[(i, j)] += vi * s.u[(j, idx)].conj();
            }
        }
    }
    Ok(x)
}

/// Rank of a matrix with the same absolute floor as [`pinv_with_floor`].
pub(crate) fn rank_with_floor(a: &ComplexMatrix, tol: &Tolerance, reference: f64) -> Result<usize> {
    let (m, n) = a.dims();
    if m == 0 || n == 0 {
        return Ok(0);
    }
    let s = svd(a)?.sigma;
    let smax = s.first().copied().unwrap_or(0.0);
    if smax <= ROUNDOFF_FACTOR * m.max(n) as f64 * reference {
        return Ok(0);
    }
    Ok(rank_from_singular_values(&s, m, n, tol))
}

/// Spectral norm.
pub(crate) fn spectral_norm(a: &ComplexMatrix) -> Result<f64> {
    if a.rows() == 0 || a.cols() == 0 {
        return Ok(0.0);
    }
    Ok(svd(a)?.sigma.first().copied().unwrap_or(0.0))
}

/// Lazily grown table of `A^p` together with the noise reference `‖A‖₂^p`.
#[derive(Debug, Clone)]
pub(crate) struct Powers {
    list: Vec<ComplexMatrix>,
    norm: f64,
}

impl Powers {
    pub(crate) fn new(a: &ComplexMatrix) -> Result<Self> {
        let n = a.ensure_square()?;
        Ok(Self {
            list: vec![ComplexMatrix::identity(n), a.clone()],
            norm: spectral_norm(a)?,
        })
    }

    /// Like [`Powers::new`] but with noise measured against at least
    /// `reference`, for blocks cut out of a larger matrix.
    pub(crate) fn with_reference(a: &ComplexMatrix, reference: f64) -> Result<Self> {
        let mut p = Self::new(a)?;
        p.norm = p.norm.max(reference);
        Ok(p)
    }

    pub(crate) fn get(&mut self, p: usize) -> &ComplexMatrix {
        while self.list.len() <= p {
            let next = &self.list[self.list.len() - 1] * &self.list[1];
            self.list.push(next);
        }
        &self.list[p]
    }

    pub(crate) fn reference(&self, p: usize) -> f64 {
        self.norm.powi(p as i32)
    }

    pub(crate) fn rank(&mut self, p: usize, tol: &Tolerance) -> Result<usize> {
        let r = self.reference(p);
        rank_with_floor(self.get(p), tol, r)
    }

    pub(crate) fn pinv(&mut self, p: usize, tol: &Tolerance) -> Result<ComplexMatrix> {
        let r = self.reference(p);
        pinv_with_floor(self.get(p), tol, r)
    }

    pub(crate) fn index(&mut self, tol: &Tolerance) -> Result<usize> {
        let n = self.list[0].rows();
        let mut prev = self.rank(0, tol)?;
        for k in 0..=n {
            let next = self.rank(k + 1, tol)?;
            if next == prev {
                return Ok(k);
            }
            prev = next;
        }
        // rank(A^n) = rank(A^(n+1)) always holds exactly; reaching here means
        // the threshold produced an inconsistent rank chain.
        Ok(n)
    }
}

/// Moore–Penrose inverse `A†` via SVD; singular values at or below the rank
/// cutoff are treated as zero.
pub fn moore_penrose(a: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    pinv_with_floor(a, tol, 0.0)
}

/// Rank of `A^p`, with roundoff below `‖A‖₂^p` treated as zero.
pub fn power_rank(a: &ComplexMatrix, p: usize, tol: &Tolerance) -> Result<usize> {
    Powers::new(a)?.rank(p, tol)
}

/// `(A^p)†` with the same noise floor as [`power_rank`].
pub fn power_pinv(a: &ComplexMatrix, p: usize, tol: &Tolerance) -> Result<ComplexMatrix> {
    Powers::new(a)?.pinv(p, tol)
}

/// Smallest `k` with `rank(A^k) = rank(A^(k+1))`.
pub fn index(a: &ComplexMatrix, tol: &Tolerance) -> Result<usize> {
    Powers::new(a)?.index(tol)
}

fn max_residual(pairs: &[(&ComplexMatrix, &ComplexMatrix)]) -> f64 {
    pairs
        .iter()
        .map(|(x, y)| normalized_residual(x, y))
        .fold(0.0, f64::max)
}

fn drazin_from_powers(
    a: &ComplexMatrix,
    powers: &mut Powers,
    k: usize,
    tol: &Tolerance,
) -> Result<ComplexMatrix> {
    let ak = powers.get(k).clone();
    let mid = powers.pinv(2 * k + 1, tol)?;
    let x = &(&ak * &mid) * &ak;
    let ak1 = powers.get(k + 1).clone();
    let residual = max_residual(&[
        (&(a * &x), &(&x * a)),
        (&(&(&x * a) * &x), &x),
        (&(&x * &ak1), &ak),
    ]);
    if residual > POST_CHECK_FACTOR * tol.eq_atol {
        return Err(Error::DefiningEquationsViolated {
            inverse: "Drazin inverse",
            residual,
        });
    }
    Ok(x)
}

fn core_ep_from_powers(powers: &mut Powers, k: usize, tol: &Tolerance) -> Result<ComplexMatrix> {
    let a = powers.get(1).clone();
    let ak = powers.get(k).clone();
    let x = &ak * &powers.pinv(k + 1, tol)?;
    let x_pinv = pinv_with_floor(&x, tol, 0.0)?;
    let range_proj = &ak * &powers.pinv(k, tol)?;
    let residual = max_residual(&[
        (&(&(&x * &a) * &x), &x),
        (&(&x * &x_pinv), &range_proj),
        (&(&x_pinv * &x), &range_proj),
    ]);
    if residual > POST_CHECK_FACTOR * tol.eq_atol {
        return Err(Error::DefiningEquationsViolated {
            inverse: "core EP inverse",
            residual,
        });
    }
    Ok(x)
}

/// Drazin inverse `A^D = A^l (A^(2l+1))† A^l`, `l = ind(A)`.
pub fn drazin(a: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    let mut powers = Powers::new(a)?;
    let k = powers.index(tol)?;
    drazin_from_powers(a, &mut powers, k, tol)
}

/// Group inverse `A^#`; exists only for `ind(A) <= 1`.
pub fn group_inverse(a: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    let mut powers = Powers::new(a)?;
    let k = powers.index(tol)?;
    if k > 1 {
        return Err(Error::IndexTooLarge { index: k });
    }
    drazin_from_powers(a, &mut powers, k, tol)
}

/// Core EP inverse `A^⊕ = A^k (A^(k+1))†`.
pub fn core_ep(a: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    let mut powers = Powers::new(a)?;
    let k = powers.index(tol)?;
    core_ep_from_powers(&mut powers, k, tol)
}

/// DMP inverse `A^(D,†) = A^D A A†`.
pub fn dmp(a: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    let d = drazin(a, tol)?;
    Ok(&(&d * a) * &moore_penrose(a, tol)?)
}

/// MPD inverse `A^(†,D) = A† A A^D`.
pub fn mpd(a: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    let d = drazin(a, tol)?;
    Ok(&(&moore_penrose(a, tol)? * a) * &d)
}

/// CMP inverse `A^(c†) = A† A A^D A A†`.
pub fn cmp(a: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    let d = drazin(a, tol)?;
    let p = moore_penrose(a, tol)?;
    Ok(&(&(&(&p * a) * &d) * a) * &p)
}

/// Drazin-star matrix `A^(D,*) = A^D A A*`.
pub fn drazin_star(a: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    let d = drazin(a, tol)?;
    Ok(&(&d * a) * &a.conj_transpose())
}

/// Which generalized inverse to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InverseKind {
    MoorePenrose,
    Group,
    Drazin,
    CoreEp,
    Dmp,
    Mpd,
    Cmp,
    DrazinStar,
}

impl InverseKind {
    pub fn compute(self, a: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
        match self {
            Self::MoorePenrose => moore_penrose(a, tol),
            Self::Group => group_inverse(a, tol),
            Self::Drazin => drazin(a, tol),
            Self::CoreEp => core_ep(a, tol),
            Self::Dmp => dmp(a, tol),
            Self::Mpd => mpd(a, tol),
            Self::Cmp => cmp(a, tol),
            Self::DrazinStar => drazin_star(a, tol),
        }
    }
}

/// One equation of a defining system evaluated at a candidate inverse.
#[derive(Debug, Clone, Serialize)]
pub struct EquationCheck {
    pub equation: &'static str,
    pub residual: f64,
    pub pass: bool,
}

/// Evaluates the defining equations of `kind` at `x`.
///
/// For the Drazin-star matrix, which is a composite rather than the solution
/// of an equation system, the single check is the composition itself.
pub fn defining_equations(
    kind: InverseKind,
    a: &ComplexMatrix,
    x: &ComplexMatrix,
    tol: &Tolerance,
) -> Result<Vec<EquationCheck>> {
    let mut powers = Powers::new(a)?;
    let k = powers.index(tol)?;
    let ak = powers.get(k).clone();
    let ak1 = powers.get(k + 1).clone();
    let p = moore_penrose(a, tol)?;
    let xax = &x.try_mul(a)? * x;
    let ax = a.try_mul(x)?;
    let xa = x.try_mul(a)?;

    let mut rows: Vec<(&'static str, ComplexMatrix, ComplexMatrix)> = Vec::new();
    match kind {
        InverseKind::MoorePenrose => {
            rows.push(("X A X = X", xax, x.clone()));
            rows.push(("A X A = A", &ax * a, a.clone()));
            rows.push(("(A X)* = A X", ax.conj_transpose(), ax));
            rows.push(("(X A)* = X A", xa.conj_transpose(), xa));
        }
        InverseKind::Drazin | InverseKind::Group => {
            rows.push(("A X = X A", ax, xa));
            rows.push(("X A X = X", xax, x.clone()));
            rows.push(("X A^(k+1) = A^k", x * &ak1, ak));
        }
        InverseKind::CoreEp => {
            let xp = pinv_with_floor(x, tol, 0.0)?;
            let proj = &ak * &powers.pinv(k, tol)?;
            rows.push(("X A X = X", xax, x.clone()));
            rows.push(("R(X) = R(A^k)", x * &xp, proj.clone()));
            rows.push(("R(X*) = R(A^k)", &xp * x, proj));
        }
        InverseKind::Dmp => {
            let d = drazin_from_powers(a, &mut powers, k, tol)?;
            rows.push(("X A = A^D A", xa, &d * a));
            rows.push(("X A X = X", xax, x.clone()));
            rows.push(("A^k X = A^k A†", &ak * x, &ak * &p));
        }
        InverseKind::Mpd => {
            let d = drazin_from_powers(a, &mut powers, k, tol)?;
            rows.push(("A X = A A^D", ax, a * &d));
            rows.push(("X A X = X", xax, x.clone()));
            rows.push(("X A^k = A† A^k", x * &ak, &p * &ak));
        }
        InverseKind::Cmp => {
            let d = drazin_from_powers(a, &mut powers, k, tol)?;
            let core = &(a * &d) * a;
            rows.push(("A X A = A1", &ax * a, core.clone()));
            rows.push(("X A X = X", xax, x.clone()));
            rows.push(("X A = A† A1", xa, &p * &core));
            rows.push(("A X = A1 A†", ax, &core * &p));
        }
        InverseKind::DrazinStar => {
            let d = drazin_from_powers(a, &mut powers, k, tol)?;
            rows.push(("X = A^D A A*", x.clone(), &(&d * a) * &a.conj_transpose()));
        }
    }
    Ok(rows
        .into_iter()
        .map(|(equation, l, r)| {
            let residual = normalized_residual(&l, &r);
            EquationCheck {
                equation,
                residual,
                pass: residual <= tol.eq_atol,
            }
        })
        .collect())
}

/// All generalized inverses of a square matrix.
#[derive(Debug, Clone, Serialize)]
pub struct InverseBundle {
    pub index: usize,
    pub mp: ComplexMatrix,
    pub drazin: ComplexMatrix,
    /// Present iff `index <= 1`.
    pub group: Option<ComplexMatrix>,
    pub core_ep: ComplexMatrix,
    pub dmp: ComplexMatrix,
    pub mpd: ComplexMatrix,
    pub cmp: ComplexMatrix,
    pub drazin_star: ComplexMatrix,
}

impl InverseBundle {
    pub fn compute(a: &ComplexMatrix, tol: &Tolerance) -> Result<Self> {
        let mut powers = Powers::new(a)?;
        Self::from_powers(a, &mut powers, tol)
    }

    /// Bundle of a block cut out of a matrix with spectral norm `reference`,
    /// so that rounding noise in the block is not mistaken for rank.
    pub(crate) fn compute_block(
        block: &ComplexMatrix,
        reference: f64,
        tol: &Tolerance,
    ) -> Result<Self> {
        let mut powers = Powers::with_reference(block, reference)?;
        Self::from_powers(block, &mut powers, tol)
    }

    pub(crate) fn from_powers(
        a: &ComplexMatrix,
        powers: &mut Powers,
        tol: &Tolerance,
    ) -> Result<Self> {
        let k = powers.index(tol)?;
        let mp = pinv_with_floor(a, tol, powers.reference(1))?;
        let d = drazin_from_powers(a, powers, k, tol)?;
        let cep = core_ep_from_powers(powers, k, tol)?;
        let da = &d * a;
        let pa = &mp * a;
        Ok(Self {
            index: k,
            group: (k <= 1).then(|| d.clone()),
            dmp: &da * &mp,
            mpd: &pa * &d,
            cmp: &(&(&pa * &d) * a) * &mp,
            drazin_star: &da * &a.conj_transpose(),
            core_ep: cep,
            drazin: d,
            mp,
        })
    }
}
