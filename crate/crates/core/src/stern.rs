//! Ground-truth evaluators built directly on the defining recurrence.

use num_traits::{One, Zero};

use crate::{Error, Nat, Result};

/// Dense table of `a(0), ..., a(N-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SternTable {
    values: Vec<u64>,
}

impl SternTable {
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn get(&self, m: usize) -> Option<u64> {
        self.values.get(m).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// First `n` values of the sequence in machine words. Errors if any entry
/// would overflow `u64`.
pub fn build_table(n: usize) -> Result<SternTable> {
    if n < 2 {
        return Err(Error::TableTooSmall(n));
    }
    let mut values = Vec::with_capacity(n);
    values.push(0u64);
    values.push(1u64);
    for m in 2..n {
        let half = m / 2;
        let v = if m % 2 == 0 {
            values[half]
        } else {
            values[half]
                .checked_add(values[half + 1])
                .ok_or(Error::TableOverflow(m))?
        };
        values.push(v);
    }
    Ok(SternTable { values })
}

/// `a(n)` by one most-significant-first pass over the bits of `n`.
///
/// Keeps the pair `(a(m), a(m+1))` for the prefix `m` read so far: a 0 bit
/// maps `(x, y)` to `(x, x + y)` and a 1 bit maps it to `(x + y, y)`.
pub fn stern_pair(n: &Nat) -> Nat {
    let mut x = Nat::zero();
    let mut y = Nat::one();
    for word in n.iter_u64_digits().rev() {
        for bit in (0..64).rev() {
            if (word >> bit) & 1 == 1 {
                x += &y;
            } else if !x.is_zero() {
                y += &x;
            }
        }
    }
    x
}

/// `a(n)` for machine-word `n`; the same scan without allocation.
pub fn stern_u64(n: u64) -> u64 {
    let (mut x, mut y) = (0u64, 1u64);
    for bit in (0..64).rev() {
        if (n >> bit) & 1 == 1 {
            x += y;
        } else {
            y += x;
        }
    }
    x
}
