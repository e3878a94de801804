//! Singular value decomposition by one-sided (Hestenes) Jacobi rotations.
//!
//! Jacobi SVD is slower than bidiagonalization + QR iteration but delivers
//! singular values with high relative accuracy, which is what the rank
//! decisions downstream depend on. Matrices here are at most a few hundred
//! rows.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, ONE, ZERO};

const MAX_SWEEPS: usize = 80;

/// `A = U · diag(sigma) · V*` with `U` (m x m) and `V` (n x n) unitary.
#[derive(Debug, Clone, Serialize)]
pub struct SvdResult {
    pub u: ComplexMatrix,
    /// Non-increasing, length `min(m, n)`.
    pub sigma: Vec<f64>,
    pub v: ComplexMatrix,
}

impl SvdResult {
    /// Rebuilds `U · Σ · V*` as an `m x n` matrix.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let (m, n) = (self.u.rows(), self.v.rows());
        let mut s = ComplexMatrix::zeros(m, n);
        for (i, &x) in self.sigma.iter().enumerate() {
            s[(i, i)] = C64::new(x, 0.0);
        }
        &(&self.u * &s) * &self.v.conj_transpose()
    }
}

/// Full SVD.
pub fn svd(a: &ComplexMatrix) -> Result<SvdResult> {
    let (m, n) = a.dims();
    if m >= n {
        tall_svd(a)
    } else {
        let t = tall_svd(&a.conj_transpose())?;
        Ok(SvdResult {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
        })
    }
}

pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(svd(a)?.sigma)
}

/// Column-major working copy of a matrix.
fn columns(a: &ComplexMatrix) -> Vec<Vec<C64>> {
    (0..a.cols())
        .map(|j| (0..a.rows()).map(|i| a[(i, j)]).collect())
        .collect()
}

fn from_columns(rows: usize, cols: &[Vec<C64>]) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols.len(), |i, j| cols[j][i])
}

fn dot(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

fn norm(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn rotate(cols: &mut [Vec<C64>], p: usize, q: usize, c: f64, s: f64, phase: C64) {
    let (lo, hi) = cols.split_at_mut(q);
    let (cp, cq) = (&mut lo[p], &mut hi[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let yq = *y * phase;
        let xp = *x;
        *x = xp * c - yq * s;
        *y = xp * s + yq * c;
    }
}

fn tall_svd(a: &ComplexMatrix) -> Result<SvdResult> {
    let (m, n) = a.dims();
    let mut w = columns(a);
    let mut v = columns(&ComplexMatrix::identity(n));
    let eps = f64::EPSILON * (m.max(1) as f64);
    // columns below this squared norm are rounding noise; rotating them
    // against each other never settles
    let negligible = (f64::EPSILON * m.max(n) as f64 * a.frobenius_norm()).powi(2);

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha: f64 = w[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = w[q].iter().map(|z| z.norm_sqr()).sum();
                if alpha <= negligible || beta <= negligible {
                    continue;
                }
                let gamma = dot(&w[p], &w[q]);
                let g = gamma.norm();
                if g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // rotate q by conj(gamma/|gamma|) so that the 2x2 problem is real
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut w, p, q, c, s, phase);
                rotate(&mut v, p, q, c, s, phase);
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::ConvergenceFailure { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<(f64, usize)> = w.iter().enumerate().map(|(j, c)| (norm(c), j)).collect();
    order.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)));
    let sigma: Vec<f64> = order.iter().map(|&(s, _)| s).collect();
    let v_sorted: Vec<Vec<C64>> = order.iter().map(|&(_, j)| v[j].clone()).collect();

    let smax = sigma.first().copied().unwrap_or(0.0);
    let floor = smax * f64::EPSILON * (m.max(n) as f64);
    let mut u_cols: Vec<Vec<C64>> = Vec::with_capacity(m);
    for &(s, j) in &order {
        if s > floor && s > 0.0 {
            let mut col: Vec<C64> = w[j].iter().map(|z| z / s).collect();
            orthonormalize_against(&mut col, &u_cols);
            u_cols.push(col);
        } else {
            break;
        }
    }
    complete_basis(&mut u_cols, m);

    Ok(SvdResult {
        u: from_columns(m, &u_cols),
        sigma,
        v: from_columns(n, &v_sorted),
    })
}

/// Two passes of modified Gram-Schmidt followed by normalization. Returns the
/// norm left after projection (before normalization).
fn orthonormalize_against(x: &mut [C64], basis: &[Vec<C64>]) -> f64 {
    for _ in 0..2 {
        for b in basis {
            let h = dot(b, x);
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi -= h * bi;
            }
        }
    }
    let nrm = norm(x);
    if nrm > 0.0 {
        for xi in x.iter_mut() {
            *xi /= nrm;
        }
    }
    nrm
}

/// Extends an orthonormal set to a basis of C^m using standard basis vectors.
pub(crate) fn complete_basis(basis: &mut Vec<Vec<C64>>, m: usize) {
    while basis.len() < m {
        let mut best: Option<(f64, Vec<C64>)> = None;
        for i in 0..m {
            let mut e = vec![ZERO; m];
            e[i] = ONE;
            let mut probe = e.clone();
            let r = orthonormalize_against(&mut probe, basis);
            if best.as_ref().is_none_or(|(br, _)| r > *br) {
                best = Some((r, probe));
            }
        }
        let (_, col) = best.expect("m > 0 when basis is incomplete");
        basis.push(col);
    }
}
