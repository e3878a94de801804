//! Householder QR for complex matrices.

use crate::matrix::{ComplexMatrix, C64, ZERO};

/// `A = Q · R` with `Q` (m x m) unitary and `R` (m x n) upper triangular.
pub fn householder_qr(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let (m, n) = a.dims();
    let mut r = a.clone();
    let mut q = ComplexMatrix::identity(m);
    for k in 0..n.min(m.saturating_sub(1)) {
        let xnorm = (k..m).map(|i| r[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = r[(k, k)];
        let phase = if x0.norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * xnorm;
        let mut v: Vec<C64> = (k..m).map(|i| r[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;
        // R <- H R on rows k..m
        for j in k..n {
            let mut s = ZERO;
            for (t, vi) in v.iter().enumerate() {
                s += vi.conj() * r[(k + t, j)];
            }
            s *= beta;
            for (t, vi) in v.iter().enumerate() {
                r[(k + t, j)] -= vi * s;
            }
        }
        // Q <- Q H on columns k..m
        for i in 0..m {
            let mut s = ZERO;
            for (t, vi) in v.iter().enumerate() {
                s += q[(i, k + t)] * vi;
            }
            s *= beta;
            for (t, vi) in v.iter().enumerate() {
                q[(i, k + t)] -= s * vi.conj();
            }
        }
        for i in (k + 1)..m {
            r[(i, k)] = ZERO;
        }
    }
    (q, r)
}
