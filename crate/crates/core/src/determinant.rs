//! Continuants: determinants of tridiagonal matrices with unit
//! off-diagonals, and the `det(I_r + M_r(c_1, ..., c_r))` route to `a(n)`.

use num_traits::{One, Zero};

use crate::encoding::gaps_of;
use crate::{Int, Nat, Result};

/// Tridiagonal matrix given by its main diagonal; every sub- and
/// super-diagonal entry is 1. An empty diagonal is the 0×0 matrix.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TridiagSpec {
    pub diag: Vec<Int>,
}

impl TridiagSpec {
    pub fn new(diag: Vec<Int>) -> Self {
        TridiagSpec { diag }
    }

    pub fn size(&self) -> usize {
        self.diag.len()
    }

    /// Dense row-major form.
    pub fn to_dense(&self) -> Vec<Vec<Int>> {
        let r = self.diag.len();
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| match i.abs_diff(j) {
                        0 => self.diag[i].clone(),
                        1 => Int::one(),
                        _ => Int::zero(),
                    })
                    .collect()
            })
            .collect()
    }
}

/// Leading principal minors `D_0 = 1`, `D_1 = y_1`,
/// `D_i = y_i D_{i-1} - D_{i-2}`; returns `D_r`.
pub fn continuant_det(spec: &TridiagSpec) -> Int {
    let mut cur = Int::one();
    let mut prev = Int::zero();
    for y in &spec.diag {
        let next = y * &cur - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Forward continuant for diagonal entries `>= 2`; the minors are then
/// non-decreasing and stay non-negative.
fn continuant_unsigned(diag: impl Iterator<Item = u64>) -> Nat {
    let mut cur = Nat::one();
    let mut prev = Nat::zero();
    let mut scratch = Nat::zero();
    for y in diag {
        scratch.clone_from(&cur);
        scratch *= y;
        scratch -= &prev;
        std::mem::swap(&mut prev, &mut cur);
        std::mem::swap(&mut cur, &mut scratch);
    }
    cur
}

/// `a(n)` for odd `n` as the determinant of `I_r + M_r(c_1, ..., c_r)`.
pub fn stern_via_det(n: &Nat) -> Result<Nat> {
    let code = gaps_of(n)?;
    Ok(continuant_unsigned(code.gaps().iter().map(|&c| c + 1)))
}
