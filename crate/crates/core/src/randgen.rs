//! Seeded generators of structured random matrices.
//!
//! The random stream is part of the public contract: a [`GenRng`] is a
//! ChaCha8 generator seeded with `ChaCha8Rng::seed_from_u64(seed)`. Uniform
//! draws take the top 53 bits of `next_u64` scaled by `2^-53`; normal draws
//! use the Box–Muller transform `sqrt(-2 ln(1 - u1)) cos(2π u2)`. A complex
//! Gaussian entry is `(x + iy) / sqrt(2)` from two consecutive normals.
//!
//! Random factors are built with bounded condition numbers (singular values
//! in `[1, 1.5]`) so rank and index decisions on the outputs sit far from the
//! rank threshold.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::decomp::householder_qr;
use crate::decomp::svd::singular_values;
use crate::error::{Error, Result};
use crate::matrix::{rank_from_singular_values, ComplexMatrix, C64};
use crate::tolerance::Tolerance;

pub const DEFAULT_SPECTRUM_FLOOR: f64 = 0.1;

/// Attempts made with derived seeds before a spectrum-floor failure is
/// reported as infeasible.
const MAX_ATTEMPTS: u64 = 64;

/// Generator parameters.
///
/// For [`gen_with_index`] and [`gen_cepd`], `r` is the size of the invertible
/// core block and `k` the nilpotency index of the remaining block, so the
/// output has rank `r + k - 1` when `k >= 1` and rank `n` when `k = 0`.
/// For [`gen_partial_isometry`], `r` is the rank and `k` is ignored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub seed: u64,
    pub spectrum_floor: f64,
}

impl GenSpec {
    pub fn new(n: usize, r: usize, k: usize, seed: u64) -> Self {
        Self {
            n,
            r,
            k,
            seed,
            spectrum_floor: DEFAULT_SPECTRUM_FLOOR,
        }
    }

    pub fn with_spectrum_floor(mut self, floor: f64) -> Self {
        self.spectrum_floor = floor;
        self
    }

    fn check_common(&self) -> Result<()> {
        if self.r > self.n {
            return Err(Error::InfeasibleSpec(format!(
                "rank {} exceeds dimension {}",
                self.r, self.n
            )));
        }
        if !(self.spectrum_floor.is_finite() && self.spectrum_floor > 0.0) {
            return Err(Error::InfeasibleSpec(format!(
                "spectrum floor must be positive and finite, got {}",
                self.spectrum_floor
            )));
        }
        Ok(())
    }

    fn check_index(&self) -> Result<()> {
        self.check_common()?;
        let room = self.n - self.r;
        if self.k == 0 && room > 0 {
            return Err(Error::InfeasibleSpec(format!(
                "index 0 requires an invertible matrix (r = n), got r = {} < n = {}",
                self.r, self.n
            )));
        }
        if self.k > room {
            return Err(Error::InfeasibleSpec(format!(
                "a nilpotent block of index {} does not fit in dimension n - r = {}",
                self.k, room
            )));
        }
        Ok(())
    }
}

/// The documented random stream.
#[derive(Debug, Clone)]
pub struct GenRng(ChaCha8Rng);

impl GenRng {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: usize, hi: usize) -> usize {
        lo + (self.0.next_u64() % (hi - lo + 1) as u64) as usize
    }

    pub fn normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    pub fn complex_normal(&mut self) -> C64 {
        let re = self.normal();
        let im = self.normal();
        C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }

    /// `rows x cols` matrix of independent complex Gaussian entries.
    pub fn gaussian(&mut self, rows: usize, cols: usize) -> ComplexMatrix {
        let data = (0..rows * cols).map(|_| self.complex_normal()).collect();
        ComplexMatrix::new(rows, cols, data).expect("Gaussian samples are finite")
    }

    /// Unitary from the QR factorization of a Gaussian matrix, with the
    /// phases of `diag(R)` folded into `Q`.
    pub fn unitary(&mut self, n: usize) -> ComplexMatrix {
        let g = self.gaussian(n, n);
        let (q, r) = householder_qr(&g);
        let phases: Vec<C64> = (0..n)
            .map(|i| {
                let d = r[(i, i)];
                if d.norm() == 0.0 {
                    C64::new(1.0, 0.0)
                } else {
                    d / d.norm()
                }
            })
            .collect();
        &q * &ComplexMatrix::from_diagonal(&phases)
    }

    fn spread(&mut self, len: usize, lo: f64, hi: f64) -> Vec<f64> {
        (0..len).map(|_| self.uniform_in(lo, hi)).collect()
    }

    /// `W1 diag(s) W2*` with `s` in `[1, 1.5]`, together with its inverse.
    fn conditioned_pair(&mut self, n: usize) -> (ComplexMatrix, ComplexMatrix) {
        let w1 = self.unitary(n);
        let w2 = self.unitary(n);
        let s = self.spread(n, 1.0, 1.5);
        let inv_s: Vec<f64> = s.iter().map(|x| 1.0 / x).collect();
        let fwd = &(&w1 * &ComplexMatrix::from_real_diagonal(&s)) * &w2.conj_transpose();
        let bwd = &(&w2 * &ComplexMatrix::from_real_diagonal(&inv_s)) * &w1.conj_transpose();
        (fwd, bwd)
    }

    /// Invertible `W diag(d)` with `d` in `[1, 1.5]`.
    fn core_block(&mut self, r: usize) -> ComplexMatrix {
        let w = self.unitary(r);
        let d = self.spread(r, 1.0, 1.5);
        &w * &ComplexMatrix::from_real_diagonal(&d)
    }

    /// `size x size` nilpotent with a single Jordan-style chain of length
    /// `k` (superdiagonal entries in `[0.5, 1]`) and zeros elsewhere.
    fn nilpotent_block(&mut self, size: usize, k: usize) -> ComplexMatrix {
        let mut nil = ComplexMatrix::zeros(size, size);
        for i in 0..k.saturating_sub(1) {
            nil[(i, i + 1)] = C64::new(self.uniform_in(0.5, 1.0), 0.0);
        }
        nil
    }

    fn core_plus_nilpotent(&mut self, spec: &GenSpec) -> ComplexMatrix {
        let m = self.core_block(spec.r);
        let nil = self.nilpotent_block(spec.n - spec.r, spec.k);
        m.direct_sum(&nil)
    }
}

fn smallest_nonzero_sigma(a: &ComplexMatrix) -> Result<Option<f64>> {
    let s = singular_values(a)?;
    let r = rank_from_singular_values(&s, a.rows(), a.cols(), &Tolerance::default());
    Ok(if r == 0 { None } else { Some(s[r - 1]) })
}

/// Runs `build` with seeds derived from `spec.seed` until the output's
/// smallest nonzero singular value reaches the floor.
fn with_floor(
    spec: &GenSpec,
    mut build: impl FnMut(&mut GenRng) -> ComplexMatrix,
) -> Result<ComplexMatrix> {
    for attempt in 0..MAX_ATTEMPTS {
        let seed = spec
            .seed
            .wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let a = build(&mut GenRng::new(seed));
        match smallest_nonzero_sigma(&a)? {
            Some(s) if s < spec.spectrum_floor => continue,
            _ => return Ok(a),
        }
    }
    Err(Error::InfeasibleSpec(format!(
        "no sample reached spectrum floor {} in {} attempts",
        spec.spectrum_floor, MAX_ATTEMPTS
    )))
}

/// `S (M ⊕ N) S⁻¹` with `M` invertible `r x r`, `N` nilpotent of index `k`
/// and `S` invertible with condition number at most 1.5.
pub fn gen_with_index(spec: &GenSpec) -> Result<ComplexMatrix> {
    spec.check_index()?;
    with_floor(spec, |rng| {
        let core = rng.core_plus_nilpotent(spec);
        let (s, s_inv) = rng.conditioned_pair(spec.n);
        &(&s * &core) * &s_inv
    })
}

/// `U diag(I_r, 0) V*` with random unitaries `U`, `V`.
pub fn gen_partial_isometry(spec: &GenSpec) -> Result<ComplexMatrix> {
    spec.check_common()?;
    let mut rng = GenRng::new(spec.seed);
    let u = rng.unitary(spec.n);
    let v = rng.unitary(spec.n);
    let mut d = vec![0.0; spec.n];
    d[..spec.r].iter_mut().for_each(|x| *x = 1.0);
    Ok(&(&u * &ComplexMatrix::from_real_diagonal(&d)) * &v.conj_transpose())
}

/// `U (M ⊕ N) U*` with `U` unitary; the unitary similarity keeps the core EP
/// inverse equal to the Drazin inverse.
pub fn gen_cepd(spec: &GenSpec) -> Result<ComplexMatrix> {
    spec.check_index()?;
    with_floor(spec, |rng| {
        let core = rng.core_plus_nilpotent(spec);
        let u = rng.unitary(spec.n);
        &(&u * &core) * &u.conj_transpose()
    })
}

/// `U (W ⊕ J) U*` with `U`, `W` unitary and `J` a 0/1 shift chain of length
/// `k`: a partial isometry of index `k` whose powers are all partial
/// isometries.
pub fn gen_isometric_powers(spec: &GenSpec) -> Result<ComplexMatrix> {
    spec.check_index()?;
    let mut rng = GenRng::new(spec.seed);
    let w = rng.unitary(spec.r);
    let mut shift = ComplexMatrix::zeros(spec.n - spec.r, spec.n - spec.r);
    for i in 0..spec.k.saturating_sub(1) {
        shift[(i, i + 1)] = C64::new(1.0, 0.0);
    }
    let u = rng.unitary(spec.n);
    Ok(&(&u * &w.direct_sum(&shift)) * &u.conj_transpose())
}

/// `U ([[1,2],[2,1]] ⊕ [[0,1],[0,0]]) U*` with `U` a random 4x4 unitary: a
/// 2-EP matrix of index 2 whose core block is not a multiple of a unitary.
pub fn gen_block_two_ep(seed: u64) -> ComplexMatrix {
    let base = ComplexMatrix::from_real_rows(&[
        &[1., 2., 0., 0.],
        &[2., 1., 0., 0.],
        &[0., 0., 0., 1.],
        &[0., 0., 0., 0.],
    ]);
    let u = GenRng::new(seed).unitary(4);
    &(&u * &base) * &u.conj_transpose()
}

/// `rows x cols` complex Gaussian matrix.
pub fn gen_gaussian(rows: usize, cols: usize, seed: u64) -> ComplexMatrix {
    GenRng::new(seed).gaussian(rows, cols)
}

/// Random spec with `n <= max_n` and index `<= max_k` for property suites.
pub fn random_index_spec(rng: &mut GenRng, max_n: usize, max_k: usize) -> GenSpec {
    let n = rng.int_in(1, max_n);
    let k = rng.int_in(0, max_k.min(n));
    let r = if k == 0 { n } else { rng.int_in(0, n - k) };
    GenSpec::new(n, r, k, rng.0.next_u64())
}
