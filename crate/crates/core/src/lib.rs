//! Dense complex-matrix toolkit for generalized inverses.
//!
//! Provides the Moore–Penrose, group, Drazin, core EP, DMP, MPD and CMP
//! inverses and the Drazin-star matrix; the SVD, Hartwig–Spindelböck and
//! core-nilpotent decompositions; classification predicates (EP, k-EP, SD,
//! normal, partial isometry, CEPD) with residual reports; seeded structured
//! random matrices; and linear-system solvers built on those inverses.
//!
//! Every approximate decision goes through a [`Tolerance`].

pub mod classify;
pub mod decomp;
pub mod error;
pub mod geninv;
pub mod matrix;
pub mod randgen;
pub mod solvers;
pub mod tolerance;

pub use error::{Error, Result};
pub use matrix::{
    approx_eq, conj_transpose, matrix_power, normalized_residual, rank, ComplexMatrix, C64,
};
pub use tolerance::Tolerance;
