use serde::Serialize;

use super::{Flag, Powers};
use crate::decomp::hs_decompose;
use crate::error::{Error, Result};
use crate::geninv::InverseBundle;
use crate::matrix::ComplexMatrix;
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome {
    Evaluated { holds: bool, residual: f64 },
    Skipped { reason: String },
}

impl From<Flag> for Outcome {
    fn from(f: Flag) -> Self {
        Outcome::Evaluated {
            holds: f.holds,
            residual: f.residual,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Condition {
    pub name: &'static str,
    pub statement: &'static str,
    #[serde(flatten)]
    pub outcome: Outcome,
}

impl Condition {
    pub fn holds(&self) -> Option<bool> {
        match self.outcome {
            Outcome::Evaluated { holds, .. } => Some(holds),
            Outcome::Skipped { .. } => None,
        }
    }

    pub fn residual(&self) -> Option<f64> {
        match self.outcome {
            Outcome::Evaluated { residual, .. } => Some(residual),
            Outcome::Skipped { .. } => None,
        }
    }
}

/// The ten equivalent characterizations of a CEPD matrix, each evaluated
/// independently.
#[derive(Debug, Clone, Serialize)]
pub struct CepdEquivalenceReport {
    pub index: usize,
    pub conditions: Vec<Condition>,
    /// Every evaluated condition carries the same boolean.
    pub agreement: bool,
}

impl CepdEquivalenceReport {
    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }

    /// The common value when all evaluated conditions agree.
    pub fn verdict(&self) -> Option<bool> {
        if !self.agreement {
            return None;
        }
        self.conditions.iter().find_map(Condition::holds)
    }
}

/// Conjunction of two flags; the residual is the larger of the two.
fn both(x: Flag, y: Flag) -> Flag {
    Flag {
        holds: x.holds && y.holds,
        residual: x.residual.max(y.residual),
    }
}

pub fn cepd_equivalences(a: &ComplexMatrix, tol: &Tolerance) -> Result<CepdEquivalenceReport> {
    let mut powers = Powers::new(a)?;
    let inv = InverseBundle::from_powers(a, &mut powers, tol)?;
    let k = inv.index;
    let (d, cep) = (&inv.drazin, &inv.core_ep);
    let core = &(a * d) * a;
    let ak_pinv = powers.pinv(k, tol)?;
    // A^(k+1) (A^k)†, the group inverse of A^⊕
    let t = powers.get(k + 1) * &ak_pinv;
    let ak2 = powers.get(k + 2).clone();

    let mut conditions = vec![
        Condition {
            name: "commute",
            statement: "A^⊕ A^D = A^D A^⊕",
            outcome: Flag::compare(&(cep * d), &(d * cep), tol).into(),
        },
        Condition {
            name: "core_part_commutes",
            statement: "A1 A^⊕ = A^⊕ A1",
            outcome: Flag::compare(&(&core * cep), &(cep * &core), tol).into(),
        },
        Condition {
            name: "drazin_commutes_with_group_of_core_ep",
            statement: "A^D A^(k+1) (A^k)† = A^(k+1) (A^k)† A^D",
            outcome: Flag::compare(&(d * &t), &(&t * d), tol).into(),
        },
        Condition {
            name: "core_part_commutes_with_group_of_core_ep",
            statement: "A1 A^(k+1) (A^k)† = A^(k+1) (A^k)† A1",
            outcome: Flag::compare(&(&core * &t), &(&t * &core), tol).into(),
        },
        Condition {
            name: "power_identity",
            statement: "A^(k+2) (A^k)† = A A1",
            outcome: Flag::compare(&(&ak2 * &ak_pinv), &(a * &core), tol).into(),
        },
        Condition {
            name: "equal_inverses",
            statement: "A^⊕ = A^D",
            outcome: Flag::compare(cep, d, tol).into(),
        },
        Condition {
            name: "equal_squares",
            statement: "(A^⊕)^2 = (A^D)^2",
            outcome: Flag::compare(&(cep * cep), &(d * d), tol).into(),
        },
        Condition {
            name: "equal_cubes",
            statement: "(A^⊕)^3 = (A^D)^3",
            outcome: Flag::compare(&(&(cep * cep) * cep), &(&(d * d) * d), tol).into(),
        },
    ];

    match hs_decompose(a, tol) {
        Ok(hs) => {
            let sk = hs.sigma_k();
            let sl = hs.sigma_l();
            let blk = InverseBundle::compute_block(&sk, powers.reference(1), tol)?;
            let sk_cepd = Flag::compare(&blk.core_ep, &blk.drazin, tol);
            let coupling = if k == 0 {
                // invertible: L is empty
                ComplexMatrix::zeros(hs.rank, a.rows() - hs.rank)
            } else {
                &sk.pow((k - 1) as u32)? * &sl
            };
            let zero = ComplexMatrix::zeros(coupling.rows(), coupling.cols());
            let coupling_vanishes = Flag::compare(&coupling, &zero, tol);
            let dmp_match = Flag::compare(cep, &inv.dmp, tol);
            conditions.push(Condition {
                name: "hs_block_cepd",
                statement: "ΣK is CEPD and (ΣK)^(k-1) ΣL = 0",
                outcome: both(sk_cepd, coupling_vanishes).into(),
            });
            conditions.push(Condition {
                name: "hs_dmp",
                statement: "A^⊕ = A^(D,†) and (ΣK)^(k-1) ΣL = 0",
                outcome: both(dmp_match, coupling_vanishes).into(),
            });
        }
        Err(Error::ZeroMatrix) => {
            for (name, statement) in [
                ("hs_block_cepd", "ΣK is CEPD and (ΣK)^(k-1) ΣL = 0"),
                ("hs_dmp", "A^⊕ = A^(D,†) and (ΣK)^(k-1) ΣL = 0"),
            ] {
                conditions.push(Condition {
                    name,
                    statement,
                    outcome: Outcome::Skipped {
                        reason: "zero matrix has no Hartwig-Spindelböck decomposition".into(),
                    },
                });
            }
        }
        Err(e) => return Err(e),
    }

    let mut seen = conditions.iter().filter_map(Condition::holds);
    let first = seen.next();
    let agreement = seen.all(|h| Some(h) == first);
    Ok(CepdEquivalenceReport {
        index: k,
        conditions,
        agreement,
    })
}
