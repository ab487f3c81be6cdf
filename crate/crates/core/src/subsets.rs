//! Increasing index sequences of alternating parity and the expansion
//!
//! ```text
//! q_r(y_1, ..., y_r) = Σ_s ω(r, s) Σ_{u ∈ A(r, s)} y_u
//! ```
//!
//! where `A(r, s)` holds the sequences `1 <= i_1 < ... < i_s <= r` with
//! `i_j ≡ j (mod 2)` and `y_u` is the product of the indexed variables.

use num_traits::{One, Zero};

use crate::encoding::{digit_sum, gaps_of};
use crate::{Error, Int, Nat, Result};

/// Largest `r` for which [`enumerate_a`] materializes a list.
pub const MATERIALIZE_MAX_R: usize = 32;

/// Largest digit sum `s(n)` accepted by [`stern_via_subsets`].
pub const SUBSET_DIGIT_SUM_LIMIT: u64 = 17;

/// One element of `A(r, s)`. The empty sequence stands for the empty
/// product `y_∅ = 1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AltSeq {
    indices: Vec<usize>,
}

impl AltSeq {
    /// Validates against the ambient `r`.
    pub fn new(indices: Vec<usize>, r: usize) -> Result<Self> {
        let seq = AltSeq { indices };
        if seq.is_valid_for(r) {
            Ok(seq)
        } else {
            Err(Error::NotAltSeq {
                seq: seq.indices,
                r,
            })
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn is_valid_for(&self, r: usize) -> bool {
        let increasing = self.indices.windows(2).all(|w| w[0] < w[1]);
        let in_range = self.indices.iter().all(|&i| (1..=r).contains(&i));
        let parity = self
            .indices
            .iter()
            .enumerate()
            .all(|(j, &i)| i % 2 == (j + 1) % 2);
        increasing && in_range && parity
    }

    /// `y_u` for 1-based variables `ys`.
    pub fn product(&self, ys: &[Int]) -> Int {
        self.indices
            .iter()
            .fold(Int::one(), |acc, &i| acc * &ys[i - 1])
    }
}

/// Lexicographic stream over `A(r, s)`.
#[derive(Debug, Clone)]
pub struct AltSeqIter {
    r: usize,
    next: Option<Vec<usize>>,
}

impl AltSeqIter {
    fn new(r: usize, s: usize) -> Self {
        // (1, 2, ..., s) is the lexicographically first element
        let next = (s <= r).then(|| (1..=s).collect());
        AltSeqIter { r, next }
    }
}

impl Iterator for AltSeqIter {
    type Item = AltSeq;

    fn next(&mut self) -> Option<AltSeq> {
        let current = self.next.take()?;
        let s = current.len();
        // Rightmost position that can step by 2 and still fit a consecutive
        // tail below r.
        let mut succ = current.clone();
        let pivot = (0..s).rev().find(|&j| succ[j] + 2 + (s - 1 - j) <= self.r);
        if let Some(j) = pivot {
            succ[j] += 2;
            for k in j + 1..s {
                succ[k] = succ[j] + (k - j);
            }
            self.next = Some(succ);
        }
        Some(AltSeq { indices: current })
    }
}

/// Streams `A(r, s)` in lexicographic order. `s = 0` yields the single
/// empty sequence.
pub fn iter_a(r: usize, s: usize) -> Result<AltSeqIter> {
    if r < 1 || s > r {
        return Err(Error::InvalidAltParams { r, s });
    }
    Ok(AltSeqIter::new(r, s))
}

/// All of `A(r, s)` in lexicographic order, for `r <= 32`.
pub fn enumerate_a(r: usize, s: usize) -> Result<Vec<AltSeq>> {
    if r > MATERIALIZE_MAX_R {
        return Err(Error::EnumerationTooLarge {
            r,
            max: MATERIALIZE_MAX_R,
        });
    }
    Ok(iter_a(r, s)?.collect())
}

/// `ω(r, s) = (-1)^r cos(π(r + s)/2)` in exact parity arithmetic.
pub fn omega(r: usize, s: usize) -> i8 {
    if (r + s) % 2 == 1 {
        return 0;
    }
    let sign_r = if r % 2 == 0 { 1 } else { -1 };
    let sign_half = if ((r + s) / 2) % 2 == 0 { 1 } else { -1 };
    sign_r * sign_half
}

/// `β(r, s)`: `i'_j = r - i_{s-j+1} + 1`. Defined when `r ≡ s (mod 2)`.
pub fn beta_involution(u: &AltSeq, r: usize) -> Result<AltSeq> {
    let s = u.len();
    if !u.is_valid_for(r) {
        return Err(Error::NotAltSeq {
            seq: u.indices.clone(),
            r,
        });
    }
    if r % 2 != s % 2 {
        return Err(Error::ParityMismatch { r, s });
    }
    let indices = u.indices.iter().rev().map(|&i| r - i + 1).collect();
    Ok(AltSeq { indices })
}

/// Per-`s` sums `Σ_{u ∈ A(r, s)} y_u` by depth-first search over the
/// sequences, carrying the running product.
fn subset_sums(ys: &[Int]) -> Vec<Int> {
    fn walk(ys: &[Int], start: usize, depth: usize, product: &Int, sums: &mut [Int]) {
        // next index has parity of position depth + 1
        let first = if (start + depth + 1) % 2 == 0 { start } else { start + 1 };
        for i in (first..=ys.len()).step_by(2) {
            let p = product * &ys[i - 1];
            sums[depth + 1] += &p;
            walk(ys, i + 1, depth + 1, &p, sums);
        }
    }
    let mut sums = vec![Int::zero(); ys.len() + 1];
    sums[0] = Int::one();
    walk(ys, 1, 0, &Int::one(), &mut sums);
    sums
}

/// `q_r(ys)` as the weighted sum over alternating-parity sequences.
/// Holds for every `r >= 0`, including `q_0 = 1` and `q_1 = y_1`.
pub fn q_via_subsets(ys: &[Int]) -> Int {
    let r = ys.len();
    subset_sums(ys)
        .into_iter()
        .enumerate()
        .fold(Int::zero(), |acc, (s, sum)| match omega(r, s) {
            0 => acc,
            1 => acc + sum,
            _ => acc - sum,
        })
}

/// `a(n)` for odd `n` through the subset expansion of `q_r`.
/// Refuses `s(n) > 17`, where the sequence count blows up.
pub fn stern_via_subsets(n: &Nat) -> Result<Nat> {
    let digit_sum = digit_sum(n);
    let code = gaps_of(n)?;
    if digit_sum > SUBSET_DIGIT_SUM_LIMIT {
        return Err(Error::SubsetBlowup {
            digit_sum,
            max: SUBSET_DIGIT_SUM_LIMIT,
        });
    }
    let ys: Vec<Int> = code.gaps().iter().map(|&c| Int::from(c + 1)).collect();
    Ok(q_via_subsets(&ys)
        .to_biguint()
        .expect("a(n) is non-negative"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seqs(v: &[&[usize]]) -> Vec<Vec<usize>> {
        v.iter().map(|s| s.to_vec()).collect()
    }

    fn listed(r: usize, s: usize) -> Vec<Vec<usize>> {
        enumerate_a(r, s)
            .unwrap()
            .into_iter()
            .map(|u| u.indices)
            .collect()
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(
            listed(5, 3),
            seqs(&[&[1, 2, 3], &[1, 2, 5], &[1, 4, 5], &[3, 4, 5]])
        );
        for r in 1..6 {
            assert_eq!(listed(r, 0), seqs(&[&[]]));
        }
        assert_eq!(listed(4, 1), seqs(&[&[1], &[3]]));
        assert_eq!(listed(4, 4), seqs(&[&[1, 2, 3, 4]]));
        assert_eq!(
            enumerate_a(0, 0).unwrap_err(),
            Error::InvalidAltParams { r: 0, s: 0 }
        );
        assert_eq!(
            enumerate_a(3, 4).unwrap_err(),
            Error::InvalidAltParams { r: 3, s: 4 }
        );
        assert!(matches!(
            enumerate_a(33, 1),
            Err(Error::EnumerationTooLarge { .. })
        ));
        assert_eq!(iter_a(40, 1).unwrap().count(), 20);
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(3, 2), 0);
        assert_eq!(omega(2, 0), -1);
        assert_eq!(omega(5, 1), 1);
        assert_eq!(omega(0, 0), 1);
        // q_5: leading +, degree 3 -, degree 1 +
        assert_eq!(omega(5, 5), 1);
        assert_eq!(omega(5, 3), -1);
    }

    #[test]
    fn q_via_subsets_examples() {
        let ints = |v: &[i64]| v.iter().map(|&x| Int::from(x)).collect::<Vec<_>>();
        assert_eq!(q_via_subsets(&[]), Int::from(1));
        assert_eq!(q_via_subsets(&ints(&[-4])), Int::from(-4));
        assert_eq!(q_via_subsets(&ints(&[3, 4])), Int::from(11));
        assert_eq!(q_via_subsets(&ints(&[2, 2, 2, 2, 2])), Int::from(6));
    }

    #[test]
    fn beta_examples() {
        let u = |v: &[usize], r| AltSeq::new(v.to_vec(), r).unwrap();
        assert_eq!(beta_involution(&u(&[1, 2, 3], 5), 5).unwrap(), u(&[3, 4, 5], 5));
        assert_eq!(beta_involution(&u(&[1, 2, 5], 5), 5).unwrap(), u(&[1, 4, 5], 5));
        assert_eq!(beta_involution(&u(&[3], 5), 5).unwrap(), u(&[3], 5));
        assert_eq!(
            beta_involution(&u(&[1], 4), 4).unwrap_err(),
            Error::ParityMismatch { r: 4, s: 1 }
        );
        assert!(AltSeq::new(vec![2], 3).is_err());
        assert!(AltSeq::new(vec![1, 3], 3).is_err());
        assert!(AltSeq::new(vec![1, 2, 7], 5).is_err());
    }

    #[test]
    fn stern_via_subsets_examples() {
        assert_eq!(stern_via_subsets(&Nat::from(1u32)).unwrap(), Nat::from(1u32));
        assert_eq!(stern_via_subsets(&Nat::from(21u32)).unwrap(), Nat::from(8u32));
        assert_eq!(stern_via_subsets(&Nat::from(22u32)), Err(Error::NotOdd));
        let wide = (Nat::from(1u32) << 18u32) - 1u32;
        assert_eq!(
            stern_via_subsets(&wide),
            Err(Error::SubsetBlowup { digit_sum: 18, max: 17 })
        );
    }
}
