//! Exact arithmetic for the Stern diatomic sequence
//! `a(0) = 0, a(1) = 1, a(2n) = a(n), a(2n+1) = a(n) + a(n+1)`.
//!
//! The sequence is computed by five independent routes that are checked
//! against each other:
//!
//! - [`stern::stern_pair`]: a single most-significant-first bit scan over the
//!   defining recurrence (the oracle).
//! - [`chebyshev::stern_via_gaps`]: the generalized Chebyshev polynomial `q_r`
//!   evaluated at the binary gaps of `n`, each increased by one.
//! - [`determinant::stern_via_det`]: the continuant `det(I + M_r)` of a
//!   tridiagonal matrix with the gaps on its diagonal.
//! - [`subsets::stern_via_subsets`]: the expansion of `q_r` over increasing
//!   index sequences of alternating parity.
//! - [`chebyshev::binet`]: a closed form for `a((2^{rt}-1)/(2^t-1))` evaluated
//!   in the quadratic ring `Z[λ]`.
//!
//! [`sympoly`] builds `q_r` and `p_r` as exact multilinear polynomials and
//! [`identities`] machine-checks the classical identities of the sequence
//! over finite ranges.

pub mod chebyshev;
pub mod determinant;
pub mod encoding;
mod error;
pub mod identities;
pub mod stern;
pub mod subsets;
pub mod sympoly;

pub use error::{Error, Result};

/// Arbitrary-precision non-negative integer.
pub type Nat = num_bigint::BigUint;
/// Arbitrary-precision signed integer.
pub type Int = num_bigint::BigInt;

pub use chebyshev::{binet, q_eval, stern_via_gaps};
pub use determinant::stern_via_det;
pub use encoding::GapCode;
pub use stern::stern_pair;
pub use subsets::stern_via_subsets;
