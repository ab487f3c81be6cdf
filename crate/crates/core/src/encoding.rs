//! Binary expansions and gap codes.
//!
//! A gap code `[c_1, ..., c_r]` denotes `2^{d_r} + ... + 2^{d_1} + 1` with
//! `d_i = c_1 + ... + c_i`. For an odd `n` whose code has every `c_i >= 1`
//! the entries are the distances between consecutive 1-bits of `n`, read
//! from the least significant end.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Nat, Result};

/// Ordered gaps `c_1, ..., c_r` of a gap code. The empty code encodes 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GapCode(Vec<u64>);

impl GapCode {
    pub fn new(gaps: Vec<u64>) -> Self {
        GapCode(gaps)
    }

    pub fn gaps(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<u64> {
        self.0
    }

    pub fn reversed(&self) -> GapCode {
        GapCode(self.0.iter().rev().copied().collect())
    }

    /// The code with its first entry dropped, `[c_2, ..., c_r]`.
    pub fn tail(&self) -> GapCode {
        GapCode(self.0.iter().skip(1).copied().collect())
    }

    pub fn value(&self) -> Nat {
        value_of(self)
    }
}

impl From<Vec<u64>> for GapCode {
    fn from(gaps: Vec<u64>) -> Self {
        GapCode(gaps)
    }
}

impl fmt::Display for GapCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for GapCode {
    type Err = Error;

    /// Parses `[c1,c2,...]`; whitespace around entries is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|rest| rest.strip_suffix(']'))
            .ok_or_else(|| parse_err("gap code must be a bracketed list like [2,2]"))?;
        if inner.trim().is_empty() {
            return Ok(GapCode::default());
        }
        inner
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u64>()
                    .map_err(|_| parse_err("gap entries must be non-negative integers"))
            })
            .collect::<Result<Vec<_>>>()
            .map(GapCode)
    }
}

/// Positions of the 1-bits of `n`, ascending.
pub fn one_bits(n: &Nat) -> impl Iterator<Item = u64> + '_ {
    n.iter_u64_digits().enumerate().flat_map(|(limb, word)| {
        let base = limb as u64 * 64;
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let bit = rest.trailing_zeros() as u64;
            rest &= rest - 1;
            Some(base + bit)
        })
    })
}

/// Builds a `Nat` from 1-bit positions, adding with carry so that repeated
/// positions are summed arithmetically.
fn from_bit_positions(positions: impl Iterator<Item = u64>, max_bit: u64) -> Nat {
    let mut limbs = vec![0u32; (max_bit / 32) as usize + 2];
    for p in positions {
        let mut idx = (p / 32) as usize;
        let (sum, mut carry) = limbs[idx].overflowing_add(1 << (p % 32));
        limbs[idx] = sum;
        while carry {
            idx += 1;
            if idx == limbs.len() {
                limbs.push(0);
            }
            let (sum, c) = limbs[idx].overflowing_add(1);
            limbs[idx] = sum;
            carry = c;
        }
    }
    Nat::new(limbs)
}

/// The gap code of an odd `n`. Every returned gap is at least 1.
pub fn gaps_of(n: &Nat) -> Result<GapCode> {
    if !n.bit(0) {
        return Err(Error::NotOdd);
    }
    let mut prev = 0u64;
    let gaps = one_bits(n)
        .skip(1)
        .map(|p| {
            let gap = p - prev;
            prev = p;
            gap
        })
        .collect();
    Ok(GapCode(gaps))
}

/// `2^{d_r} + ... + 2^{d_1} + 1` with `d_i` the prefix sums of the code.
/// Zero gaps repeat a power of two; the arithmetic sum is returned.
pub fn value_of(code: &GapCode) -> Nat {
    let mut d = 0u64;
    let positions: Vec<u64> = std::iter::once(0)
        .chain(code.0.iter().map(|&c| {
            d += c;
            d
        }))
        .collect();
    from_bit_positions(positions.iter().copied(), d)
}

/// The integer whose binary digits are those of `n` in reverse order.
pub fn bit_reverse(n: &Nat) -> Result<Nat> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    let top = n.bits() - 1;
    Ok(from_bit_positions(one_bits(n).map(|p| top - p), top))
}

/// Number of 1-bits of `n`.
pub fn digit_sum(n: &Nat) -> u64 {
    n.count_ones()
}

/// Splits `n = odd * 2^twos` with `odd` odd.
pub fn to_odd(n: &Nat) -> Result<(Nat, u64)> {
    let twos = n.trailing_zeros().ok_or(Error::Zero)?;
    Ok((n >> twos, twos))
}

/// `(2^{rt} - 1) / (2^t - 1)`, i.e. the code `[t, ..., t]` with `r - 1`
/// entries.
pub fn ratio_integer(r: u64, t: u64) -> Result<Nat> {
    if r == 0 || t == 0 {
        return Err(Error::Precondition(format!(
            "ratio needs r >= 1 and t >= 1 (r={r}, t={t})"
        )));
    }
    Ok(value_of(&GapCode(vec![t; (r - 1) as usize])))
}

/// Parses a decimal literal or a `0x`-prefixed hexadecimal literal.
pub fn parse_nat(s: &str) -> Result<Nat> {
    let s = s.trim();
    let (digits, radix) = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => (hex, 16),
        None => (s, 10),
    };
    if digits.is_empty() || !digits.chars().all(|ch| ch.is_digit(radix)) {
        return Err(Error::Parse {
            input: s.to_string(),
            reason: "expected a decimal or 0x-prefixed hexadecimal integer".into(),
        });
    }
    Nat::parse_bytes(digits.as_bytes(), radix).ok_or_else(|| Error::Parse {
        input: s.to_string(),
        reason: "invalid integer literal".into(),
    })
}

/// Deterministic pseudorandom odd integer with exactly `bits` bits.
pub fn random_odd(bits: u64, seed: u64) -> Result<Nat> {
    if bits == 0 {
        return Err(Error::Precondition("bit length must be at least 1".into()));
    }
    let mut bytes = vec![0u8; bits.div_ceil(8) as usize];
    ChaCha8Rng::seed_from_u64(seed).fill_bytes(&mut bytes);
    let mut n = Nat::from_bytes_le(&bytes) >> (bytes.len() as u64 * 8 - bits);
    n.set_bit(bits - 1, true);
    n.set_bit(0, true);
    Ok(n)
}

/// `Nat` for a positive power of two, used by identity sweeps.
pub(crate) fn pow2(e: u64) -> Nat {
    Nat::one() << e
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Nat {
        Nat::from(v)
    }

    fn code(v: &[u64]) -> GapCode {
        GapCode(v.to_vec())
    }

    #[test]
    fn gaps_of_examples() {
        assert_eq!(gaps_of(&nat(1)).unwrap(), code(&[]));
        assert_eq!(gaps_of(&nat(5)).unwrap(), code(&[2]));
        assert_eq!(gaps_of(&nat(21)).unwrap(), code(&[2, 2]));
        assert_eq!(gaps_of(&nat(0)), Err(Error::NotOdd));
        assert_eq!(gaps_of(&nat(12)), Err(Error::NotOdd));
    }

    #[test]
    fn value_of_examples() {
        assert_eq!(value_of(&code(&[])), nat(1));
        assert_eq!(value_of(&code(&[2])), nat(5));
        assert_eq!(value_of(&code(&[0])), nat(2));
        // [0,1] = 2^0 + 2^1 + 1
        assert_eq!(value_of(&code(&[0, 1])), nat(4));
        assert_eq!(value_of(&code(&[0, 0, 0])), nat(4));
    }

    #[test]
    fn value_of_carries_across_limbs() {
        // 2^31 counted twice carries into bit 32.
        assert_eq!(value_of(&code(&[31, 0])), nat((1 << 32) + 1));
        assert_eq!(value_of(&code(&[64])), nat(1) + (nat(1) << 64u32));
    }

    #[test]
    fn bit_reverse_examples() {
        assert_eq!(bit_reverse(&nat(1)).unwrap(), nat(1));
        assert_eq!(bit_reverse(&nat(11)).unwrap(), nat(13));
        assert_eq!(bit_reverse(&nat(21)).unwrap(), nat(21));
        assert_eq!(bit_reverse(&nat(6)).unwrap(), nat(3));
        assert_eq!(bit_reverse(&nat(0)), Err(Error::Zero));
    }

    #[test]
    fn digit_sum_examples() {
        assert_eq!(digit_sum(&nat(0)), 0);
        assert_eq!(digit_sum(&nat(21)), 3);
        for k in [0u64, 1, 63, 64, 1000] {
            assert_eq!(digit_sum(&pow2(k)), 1);
        }
    }

    #[test]
    fn to_odd_examples() {
        assert_eq!(to_odd(&nat(1)).unwrap(), (nat(1), 0));
        assert_eq!(to_odd(&nat(12)).unwrap(), (nat(3), 2));
        assert_eq!(to_odd(&nat(1 << 10)).unwrap(), (nat(1), 10));
        assert_eq!(to_odd(&nat(0)), Err(Error::Zero));
    }

    #[test]
    fn ratio_integer_matches_division() {
        for r in 1..8u64 {
            for t in 1..6u64 {
                let expect = (pow2(r * t) - 1u32) / (pow2(t) - 1u32);
                assert_eq!(ratio_integer(r, t).unwrap(), expect);
            }
        }
        assert_eq!(ratio_integer(3, 2).unwrap(), nat(21));
    }

    #[test]
    fn random_odd_shape() {
        for bits in [1u64, 2, 7, 64, 65, 1000] {
            let n = random_odd(bits, 9).unwrap();
            assert_eq!(n.bits(), bits);
            assert!(n.bit(0));
            assert_eq!(n, random_odd(bits, 9).unwrap());
        }
        assert!(random_odd(0, 1).is_err());
    }

    #[test]
    fn parse_literals() {
        assert_eq!(parse_nat("21").unwrap(), nat(21));
        assert_eq!(parse_nat("0x15").unwrap(), nat(21));
        assert!(parse_nat("").is_err());
        assert!(parse_nat("-3").is_err());
        assert!(parse_nat("0x").is_err());
        assert!(parse_nat("12a").is_err());
        assert_eq!("[2,2]".parse::<GapCode>().unwrap(), code(&[2, 2]));
        assert_eq!("[ 3, 0 ,1 ]".parse::<GapCode>().unwrap(), code(&[3, 0, 1]));
        assert_eq!("[]".parse::<GapCode>().unwrap(), code(&[]));
        assert!("2,2".parse::<GapCode>().is_err());
        assert!("[2,-1]".parse::<GapCode>().is_err());
        assert_eq!(code(&[3, 1, 2]).to_string(), "[3,1,2]");
    }

    #[test]
    fn round_trip_and_reversal_small_range() {
        for n in (1..1u64 << 14).step_by(2) {
            let n = nat(n);
            let g = gaps_of(&n).unwrap();
            assert_eq!(value_of(&g), n);
            assert_eq!(g.len() as u64 + 1, digit_sum(&n));
            let rev = bit_reverse(&n).unwrap();
            assert_eq!(value_of(&g.reversed()), rev);
            assert_eq!(bit_reverse(&rev).unwrap(), n);
        }
    }
}
