//! Numeric evaluation of the generalized Chebyshev polynomials
//!
//! ```text
//! q_0 = 1,  q_1(y_1) = y_1,
//! q_r(y_1, ..., y_r) = y_1 q_{r-1}(y_2, ..., y_r) - q_{r-2}(y_3, ..., y_r)
//! ```
//!
//! and their specializations: the gap-code route to `a(n)`, constant and
//! periodic arguments, the residue of `a(n)` modulo a common divisor of its
//! bit exponents, and the exact Binet form in `Z[λ]`.

use std::ops::Mul;

use num_bigint::Sign;
use num_traits::{One, Zero};

use crate::encoding::{digit_sum, gaps_of, one_bits};
use crate::{Error, Int, Nat, Result};

/// `q_r(ys)` by the suffix recurrence `e_i = y_i e_{i+1} - e_{i+2}` with
/// `e_{r+1} = 1`, `e_r = y_r`.
pub fn q_eval(ys: &[Int]) -> Int {
    suffix_recurrence(ys.iter().rev())
}

fn suffix_recurrence<'a>(ys_from_right: impl Iterator<Item = &'a Int>) -> Int {
    // (e_{i+1}, e_{i+2})
    let mut cur = Int::one();
    let mut prev = Int::zero();
    for y in ys_from_right {
        let next = y * &cur - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Suffix recurrence for arguments `>= 2`, where every intermediate value is
/// non-negative and non-decreasing, so the whole computation stays in `Nat`
/// with reused buffers.
pub(crate) fn q_eval_unsigned(ys_from_right: impl Iterator<Item = u64>) -> Nat {
    let mut cur = Nat::one();
    let mut prev = Nat::zero();
    let mut scratch = Nat::zero();
    for y in ys_from_right {
        debug_assert!(y >= 2);
        scratch.clone_from(&cur);
        scratch *= y;
        scratch -= &prev;
        std::mem::swap(&mut prev, &mut cur);
        std::mem::swap(&mut cur, &mut scratch);
    }
    cur
}

/// `a(n)` for odd `n` as `q_r(c_1 + 1, ..., c_r + 1)` over the gap code of `n`.
pub fn stern_via_gaps(n: &Nat) -> Result<Nat> {
    let code = gaps_of(n)?;
    Ok(q_eval_unsigned(code.gaps().iter().rev().map(|&c| c + 1)))
}

/// `q_r(v, ..., v)` via `q_i = v q_{i-1} - q_{i-2}`, `q_0 = 1`, `q_1 = v`.
pub fn q_const(v: &Int, r: usize) -> Int {
    let mut cur = Int::one();
    let mut prev = Int::zero();
    for _ in 0..r {
        let next = v * &cur - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `q_r(x_1, ..., x_r)` with `x_i = pattern[(i - 1) mod len]`.
pub fn q_periodic(pattern: &[Int], r: usize) -> Result<Int> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let len = pattern.len();
    Ok(suffix_recurrence((0..r).rev().map(|i| &pattern[i % len])))
}

/// Element `a + b·λ` of `Z[λ]`, where `λ² = (t + 1)λ - 1`.
///
/// `λ` and `μ = (t + 1) - λ` are the two roots of `x² - (t + 1)x + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadElem {
    pub a: Int,
    pub b: Int,
    t: u64,
}

impl QuadElem {
    pub fn new(a: Int, b: Int, t: u64) -> Self {
        QuadElem { a, b, t }
    }

    pub fn one(t: u64) -> Self {
        QuadElem::new(Int::one(), Int::zero(), t)
    }

    pub fn lambda(t: u64) -> Self {
        QuadElem::new(Int::zero(), Int::one(), t)
    }

    pub fn mu(t: u64) -> Self {
        QuadElem::new(Int::from(t + 1), -Int::one(), t)
    }

    pub fn parameter(&self) -> u64 {
        self.t
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn pow(&self, mut e: u64) -> QuadElem {
        let mut acc = QuadElem::one(self.t);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Mul for &QuadElem {
    type Output = QuadElem;

    fn mul(self, rhs: &QuadElem) -> QuadElem {
        assert_eq!(self.t, rhs.t, "QuadElem parameters differ");
        // (a + bλ)(c + dλ) = (ac - bd) + (ad + bc + (t+1)bd)λ
        let bd = &self.b * &rhs.b;
        let a = &self.a * &rhs.a - &bd;
        let b = &self.a * &rhs.b + &self.b * &rhs.a + bd * (self.t + 1);
        QuadElem::new(a, b, self.t)
    }
}

/// `a((2^{rt} - 1) / (2^t - 1)) = (λ^r - μ^r) / (λ - μ)`.
///
/// With `λ^r = a + bλ` the conjugate is `μ^r = a + bμ`, so the quotient is
/// exactly `b`.
pub fn binet(r: u64, t: u64) -> Result<Nat> {
    if r < 1 || t < 2 {
        return Err(Error::BinetDomain { r, t });
    }
    let power = QuadElem::lambda(t).pow(r);
    Ok(power
        .b
        .to_biguint()
        .expect("λ^r has a positive λ-coefficient for t >= 2"))
}

/// Predicted residue of `a(n)` modulo `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Residue {
    Zero,
    PlusOne,
    MinusOne,
}

impl Residue {
    pub fn as_i8(self) -> i8 {
        match self {
            Residue::Zero => 0,
            Residue::PlusOne => 1,
            Residue::MinusOne => -1,
        }
    }

    /// The residue as an element of `0..k`.
    pub fn mod_k(self, k: u64) -> u64 {
        match self {
            Residue::Zero => 0,
            Residue::PlusOne => 1 % k,
            Residue::MinusOne => (k - 1) % k,
        }
    }
}

/// Exact period-6 values of `q_m(1, ..., 1)`, starting at `m = 0`.
pub const ONES_PERIOD: [i8; 6] = [1, 1, 0, -1, -1, 0];

/// Residue of `a(n)` mod `k` when `k` divides every exponent of the binary
/// expansion of `n`, keyed on the digit sum `s(n)`:
/// `s ≡ 0, 3 → 0`, `s ≡ 1, 2 → +1`, `s ≡ 4, 5 → -1` (mod 6).
pub fn divisibility_class(n: &Nat, k: u64) -> Result<Residue> {
    if k == 0 {
        return Err(Error::ZeroDivisor);
    }
    if let Some(exponent) = one_bits(n).find(|p| p % k != 0) {
        return Err(Error::ExponentNotDivisible { exponent, k });
    }
    // q with s(n) - 1 arguments, all ≡ 1 (mod k)
    let s = digit_sum(n);
    Ok(match s % 6 {
        0 | 3 => Residue::Zero,
        1 | 2 => Residue::PlusOne,
        _ => Residue::MinusOne,
    })
}

/// `v mod k` mapped into `0..k` for a possibly negative `v`.
pub(crate) fn int_mod(v: &Int, k: u64) -> u64 {
    let r = v % Int::from(k);
    let r = if r.sign() == Sign::Minus { r + k } else { r };
    r.to_u64_digits().1.first().copied().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stern::stern_pair;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn nat(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn q_eval_examples() {
        assert_eq!(q_eval(&[]), Int::from(1));
        assert_eq!(q_eval(&ints(&[7])), Int::from(7));
        assert_eq!(q_eval(&ints(&[3, 4])), Int::from(11));
        assert_eq!(q_eval(&ints(&[2, 2, 2])), Int::from(4));
        assert_eq!(q_eval(&ints(&[-1, 5, 0])), Int::from(1));
    }

    #[test]
    fn stern_via_gaps_examples() {
        assert_eq!(stern_via_gaps(&nat(1)).unwrap(), nat(1));
        assert_eq!(stern_via_gaps(&nat(5)).unwrap(), nat(3));
        assert_eq!(stern_via_gaps(&nat(21)).unwrap(), nat(8));
        assert_eq!(stern_via_gaps(&nat(20)), Err(Error::NotOdd));
    }

    #[test]
    fn q_const_examples() {
        for v in [-3i64, 0, 5] {
            assert_eq!(q_const(&Int::from(v), 0), Int::from(1));
        }
        assert_eq!(q_const(&Int::from(3), 2), Int::from(8));
        for m in 0..30 {
            assert_eq!(q_const(&Int::from(1), m), Int::from(ONES_PERIOD[m % 6]));
        }
    }

    #[test]
    fn q_periodic_examples() {
        for r in 0..10 {
            assert_eq!(
                q_periodic(&ints(&[4]), r).unwrap(),
                q_const(&Int::from(4), r)
            );
        }
        assert_eq!(q_periodic(&ints(&[3, 2]), 2).unwrap(), Int::from(5));
        assert_eq!(q_periodic(&ints(&[3, 2]), 3).unwrap(), Int::from(12));
        assert_eq!(q_periodic(&[], 3), Err(Error::EmptyPattern));
    }

    #[test]
    fn binet_examples() {
        for t in 2..8 {
            assert_eq!(binet(1, t).unwrap(), nat(1));
        }
        assert_eq!(binet(2, 2).unwrap(), nat(3));
        assert_eq!(binet(3, 2).unwrap(), nat(8));
        assert_eq!(binet(0, 2), Err(Error::BinetDomain { r: 0, t: 2 }));
        assert_eq!(binet(3, 1), Err(Error::BinetDomain { r: 3, t: 1 }));
    }

    #[test]
    fn quad_norm_is_one() {
        for t in 2..6 {
            let prod = &QuadElem::lambda(t) * &QuadElem::mu(t);
            assert!(prod.is_one());
            for r in [1, 2, 7, 33, 64] {
                let p = &QuadElem::lambda(t).pow(r) * &QuadElem::mu(t).pow(r);
                assert!(p.is_one(), "t={t} r={r}");
            }
        }
    }

    #[test]
    fn divisibility_examples() {
        assert_eq!(divisibility_class(&nat(5), 2).unwrap(), Residue::PlusOne);
        assert_eq!(divisibility_class(&nat(21), 2).unwrap(), Residue::Zero);
        assert_eq!(divisibility_class(&nat(9), 3).unwrap(), Residue::PlusOne);
        for k in 1..5 {
            assert_eq!(divisibility_class(&nat(1), k).unwrap(), Residue::PlusOne);
        }
        assert_eq!(
            divisibility_class(&nat(7), 2),
            Err(Error::ExponentNotDivisible { exponent: 1, k: 2 })
        );
        assert_eq!(divisibility_class(&nat(7), 0), Err(Error::ZeroDivisor));
        // a(5) = 3 ≡ 1, a(21) = 8 ≡ 0
        assert_eq!(stern_pair(&nat(5)) % 2u32, nat(1));
        assert_eq!(stern_pair(&nat(21)) % 2u32, nat(0));
    }

    #[test]
    fn residue_mod_k() {
        assert_eq!(Residue::MinusOne.mod_k(5), 4);
        assert_eq!(Residue::PlusOne.mod_k(1), 0);
        assert_eq!(Residue::MinusOne.mod_k(1), 0);
        assert_eq!(int_mod(&Int::from(-7), 5), 3);
        assert_eq!(int_mod(&Int::from(10), 5), 0);
    }
}
