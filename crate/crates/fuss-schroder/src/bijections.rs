//! Moving diagonal steps between residues: large (k,i) ↔ large (k,j).

use thiserror::Error;

use crate::path::{is_member, FamilyClass, FamilySpec, LatticePath, Step};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShiftError {
    #[error("residues must satisfy 1 <= i, j <= k = {k} (got {i}, {j})")]
    Residues { i: usize, j: usize, k: usize },
    #[error("{0} is not a large (k, {1}) Fuss-Schröder path")]
    NotMember(String, usize),
}

/// Rewrites each diagonal `μ₁ D μ₂ ω N μ₃ ↦ μ₁ N μ₂ ω D μ₃`: the diagonal
/// climbing from level `kt+i-1` trades places with the north step leaving
/// level `kt+j-1` of the same block. For `j < i` the same exchange runs
/// backwards. Diagonals are handled bottom to top; each exchange stays inside
/// its own block, so the order is immaterial.
pub fn shift_r(p: &LatticePath, i: usize, j: usize) -> Result<LatticePath, ShiftError> {
    let k = p.k();
    if i == 0 || j == 0 || i > k || j > k {
        return Err(ShiftError::Residues { i, j, k });
    }
    let spec = FamilySpec::new(FamilyClass::LargeFuss, p.n(), k, i).expect("checked residues");
    if !is_member(p, &spec) {
        return Err(ShiftError::NotMember(p.to_string(), i));
    }
    let steps = p.steps();
    let mut levels = Vec::with_capacity(steps.len());
    let mut y = 0;
    for s in steps {
        levels.push(y);
        y += s.delta().1;
    }
    let mut out = steps.to_vec();
    for d in (0..steps.len()).filter(|&d| steps[d] == Step::D) {
        let target = (levels[d] / k) * k + j - 1;
        if target == levels[d] {
            continue;
        }
        let m = (0..steps.len())
            .find(|&m| steps[m] == Step::N && levels[m] == target)
            .expect("every level below kn is left by one step");
        out[d] = Step::N;
        out[m] = Step::D;
    }
    Ok(LatticePath::new(out, p.n(), k).expect("exchange keeps displacement"))
}
