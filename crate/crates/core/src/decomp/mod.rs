//! Matrix decompositions: SVD, Hartwig–Spindelböck form and the
//! core-nilpotent split.

pub mod qr;
pub mod svd;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geninv::Powers;
use crate::matrix::{rank_from_singular_values, ComplexMatrix};
use crate::tolerance::Tolerance;

pub use qr::householder_qr;
pub use svd::{svd, SvdResult};

/// A group of (numerically) equal singular values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaBlock {
    pub value: f64,
    pub multiplicity: usize,
}

/// `A = U [ΣK ΣL; 0 0] U*` with `U` unitary and `K K* + L L* = I_r`.
///
/// `sigma` holds the `r` nonzero singular values in non-increasing order and
/// is what `Σ` means in the products below. `sigma_blocks` groups those
/// values into strictly decreasing classes.
#[derive(Debug, Clone, Serialize)]
pub struct HsDecomposition {
    pub u: ComplexMatrix,
    pub sigma: Vec<f64>,
    pub sigma_blocks: Vec<SigmaBlock>,
    pub k_block: ComplexMatrix,
    pub l_block: ComplexMatrix,
    pub rank: usize,
}

impl HsDecomposition {
    pub fn n(&self) -> usize {
        self.u.rows()
    }

    fn sigma_diag(&self) -> ComplexMatrix {
        ComplexMatrix::from_real_diagonal(&self.sigma)
    }

    /// `Σ K` (r x r).
    pub fn sigma_k(&self) -> ComplexMatrix {
        &self.sigma_diag() * &self.k_block
    }

    /// `Σ L` (r x (n - r)).
    pub fn sigma_l(&self) -> ComplexMatrix {
        &self.sigma_diag() * &self.l_block
    }

    /// `Σ Σ*` (r x r).
    pub fn sigma_sq(&self) -> ComplexMatrix {
        let sq: Vec<f64> = self.sigma.iter().map(|s| s * s).collect();
        ComplexMatrix::from_real_diagonal(&sq)
    }

    /// `U [top_left top_right; 0 0] U*`.
    pub fn assemble(
        &self,
        top_left: &ComplexMatrix,
        top_right: &ComplexMatrix,
    ) -> Result<ComplexMatrix> {
        let (n, r) = (self.n(), self.rank);
        let bl = ComplexMatrix::zeros(n - r, r);
        let br = ComplexMatrix::zeros(n - r, n - r);
        let mid = ComplexMatrix::from_blocks(top_left, top_right, &bl, &br)?;
        Ok(&(&self.u * &mid) * &self.u.conj_transpose())
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.assemble(&self.sigma_k(), &self.sigma_l())
            .expect("HS blocks are conformable by construction")
    }

    /// `K K* + L L*`, which should be `I_r`.
    pub fn kl_gram(&self) -> ComplexMatrix {
        &(&self.k_block * &self.k_block.conj_transpose())
            + &(&self.l_block * &self.l_block.conj_transpose())
    }
}

/// Groups non-increasing positive values into blocks, starting a new block
/// whenever `prev / cur - 1 > gap`.
fn group_sigma(sigma: &[f64], gap: f64) -> Vec<SigmaBlock> {
    let mut groups: Vec<Vec<f64>> = Vec::new();
    for &s in sigma {
        match groups.last_mut() {
            Some(g) if g[g.len() - 1] / s - 1.0 <= gap => g.push(s),
            _ => groups.push(vec![s]),
        }
    }
    groups
        .into_iter()
        .map(|g| SigmaBlock {
            value: g.iter().sum::<f64>() / g.len() as f64,
            multiplicity: g.len(),
        })
        .collect()
}

/// Hartwig–Spindelböck decomposition built from the SVD `A = W Σ V*`:
/// `U = W` and `[K L]` is the top `r` rows of `V* U`.
pub fn hs_decompose(a: &ComplexMatrix, tol: &Tolerance) -> Result<HsDecomposition> {
    let n = a.ensure_square()?;
    let s = svd(a)?;
    let r = rank_from_singular_values(&s.sigma, n, n, tol);
    if r == 0 {
        return Err(Error::ZeroMatrix);
    }
    let vu = &s.v.conj_transpose() * &s.u;
    let sigma = s.sigma[..r].to_vec();
    Ok(HsDecomposition {
        sigma_blocks: group_sigma(&sigma, 10.0 * tol.rank_rtol),
        sigma,
        k_block: vu.block(0, 0, r, r),
        l_block: vu.block(0, r, r, n - r),
        u: s.u,
        rank: r,
    })
}

/// `A = A₁ + A₂` with core part `A₁ = A A^D A` and nilpotent part `A₂`.
#[derive(Debug, Clone, Serialize)]
pub struct CoreNilpotentParts {
    pub core: ComplexMatrix,
    pub nilpotent: ComplexMatrix,
    /// Nilpotency index of `A₂`, equal to `ind(A)`.
    pub index_of_nilpotent: usize,
}

pub fn core_nilpotent(a: &ComplexMatrix, tol: &Tolerance) -> Result<CoreNilpotentParts> {
    let mut powers = Powers::new(a)?;
    let k = powers.index(tol)?;
    let d = crate::geninv::drazin(a, tol)?;
    let core = &(a * &d) * a;
    Ok(CoreNilpotentParts {
        nilpotent: a - &core,
        core,
        index_of_nilpotent: k,
    })
}
