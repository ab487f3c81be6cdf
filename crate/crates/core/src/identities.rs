//! Finite-range verification of the classical identities of the sequence.
//!
//! Every verifier evaluates the sequence through [`stern_pair`] only, and
//! returns a [`Report`] listing counterexamples instead of failing on the
//! first one. Sweeps run in parallel over disjoint chunks; chunk reports are
//! merged in input order, so the kept witnesses (the first
//! [`DEFAULT_FAILURE_CAP`] in sweep order) do not depend on partitioning.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chebyshev::{binet, divisibility_class, int_mod, q_const, q_eval};
use crate::determinant::stern_via_det;
use crate::encoding::{bit_reverse, digit_sum, pow2, ratio_integer, value_of, GapCode};
use crate::stern::stern_pair;
use crate::subsets::{stern_via_subsets, SUBSET_DIGIT_SUM_LIMIT};
use crate::{chebyshev::stern_via_gaps, Error, Int, Nat, Result};

pub const DEFAULT_FAILURE_CAP: usize = 10;

/// A counterexample: the replayable input and both sides of the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub input: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    fn new(input: &[(&str, String)], lhs: impl ToString, rhs: impl ToString) -> Self {
        Witness {
            input: input.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

/// Outcome of one verification sweep. Passes iff `failures` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub identity: String,
    pub checked: u64,
    pub failures: Vec<Witness>,
    pub seed: Option<u64>,
    #[serde(rename = "elapsed_ms", with = "millis")]
    pub elapsed: Duration,
}

mod millis {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_millis() as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        u64::deserialize(d).map(Duration::from_millis)
    }
}

impl Report {
    pub fn new(identity: impl Into<String>) -> Self {
        Report {
            identity: identity.into(),
            checked: 0,
            failures: Vec::new(),
            seed: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, outcome: Option<Witness>) {
        self.checked += 1;
        if let Some(w) = outcome {
            if self.failures.len() < DEFAULT_FAILURE_CAP {
                self.failures.push(w);
            }
        }
    }

    /// Concatenates `other` after `self`. Associative; the witness list is
    /// the first [`DEFAULT_FAILURE_CAP`] of the concatenation.
    pub fn merge(mut self, other: Report) -> Report {
        self.checked += other.checked;
        let room = DEFAULT_FAILURE_CAP.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
        self.elapsed += other.elapsed;
        self.seed = self.seed.or(other.seed);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(json: &str) -> Result<Report> {
        serde_json::from_str(json).map_err(|e| Error::Parse {
            input: json.to_string(),
            reason: e.to_string(),
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {}: {} checked, {} failures",
            self.identity,
            self.checked,
            self.failures.len()
        )?;
        if let Some(seed) = self.seed {
            write!(f, ", seed {seed}")?;
        }
        for w in &self.failures {
            let input: Vec<String> = w.input.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "\n  {}: lhs={} rhs={}", input.join(" "), w.lhs, w.rhs)?;
        }
        Ok(())
    }
}

/// Parallel sweep over `items`; `check` returns a witness on failure.
fn sweep<T, I, F>(identity: &str, items: I, check: F) -> Report
where
    T: Send,
    I: IndexedParallelIterator<Item = T>,
    F: Fn(T) -> Option<Witness> + Sync + Send,
{
    let start = Instant::now();
    let mut report = items
        .fold(
            || Report::new(identity),
            |mut acc, item| {
                acc.record(check(item));
                acc
            },
        )
        .reduce(|| Report::new(identity), Report::merge);
    report.elapsed = start.elapsed();
    report
}

fn a(n: &Nat) -> Nat {
    stern_pair(n)
}

fn a_u(n: u64) -> Nat {
    stern_pair(&Nat::from(n))
}

fn compare(input: &[(&str, String)], lhs: Nat, rhs: Nat) -> Option<Witness> {
    (lhs != rhs).then(|| Witness::new(input, lhs, rhs))
}

/// `a(2^c n + 1) = c a(n) + a(n + 1)` for `1 <= n < n_max`, `0 <= c <= c_max`.
pub fn verify_shift(n_max: u64, c_max: u32) -> Report {
    let pairs: Vec<(u64, u32)> = (1..n_max)
        .flat_map(|n| (0..=c_max).map(move |c| (n, c)))
        .collect();
    sweep("shift", pairs.into_par_iter(), |(n, c)| {
        let big = Nat::from(n);
        let lhs = a(&((&big << c) + 1u32));
        let rhs = a(&big) * c + a(&(big + 1u32));
        compare(&[("n", n.to_string()), ("c", c.to_string())], lhs, rhs)
    })
}

/// The four gap-code relations for a code with `c_1 >= 1`:
/// `[c] = 2[c_1 - 1, ...] - 1`, `[c] = 1 + 2^{c_1}[c_2, ...]`,
/// `a([c] - 1) = a([c_2, ...])`, `a([c] + 1) = a([c_1 - 1, c_2, ...])`.
pub fn verify_code_identities(code: &GapCode) -> Result<Report> {
    let start = Instant::now();
    let c1 = match code.gaps().first() {
        Some(&c1) if c1 > 0 => c1,
        _ => {
            return Err(Error::Precondition(format!(
                "code identities need c_1 > 0, got {code}"
            )))
        }
    };
    let mut report = Report::new("code");
    report.extend_code(code, c1);
    report.elapsed = start.elapsed();
    Ok(report)
}

impl Report {
    fn extend_code(&mut self, code: &GapCode, c1: u64) {
        let value = value_of(code);
        let tail = value_of(&code.tail());
        let mut lowered = code.clone().into_inner();
        lowered[0] = c1 - 1;
        let lowered = value_of(&GapCode::new(lowered));
        let input = |relation: &str| [("code", code.to_string()), ("relation", relation.to_string())];

        self.record(compare(&input("double"), value.clone(), &lowered * 2u32 - 1u32));
        self.record(compare(&input("split"), value.clone(), (&tail << c1) + 1u32));
        self.record(compare(&input("minus-one"), a(&(&value - 1u32)), a(&tail)));
        self.record(compare(&input("plus-one"), a(&(&value + 1u32)), a(&lowered)));
    }
}

/// `a([c_1, ..., c_r]) = (c_1 + 1) a([c_2, ..., c_r]) - a([c_3, ..., c_r])`
/// for `r >= 2`, `c_2 > 0`.
pub fn verify_lemma_l2(code: &GapCode) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new("lemma-l2");
    report.record(lemma_l2_check(code)?);
    report.elapsed = start.elapsed();
    Ok(report)
}

fn lemma_l2_check(code: &GapCode) -> Result<Option<Witness>> {
    let g = code.gaps();
    if g.len() < 2 || g[1] == 0 {
        return Err(Error::Precondition(format!(
            "three-term relation needs r >= 2 and c_2 > 0, got {code}"
        )));
    }
    let lhs = Int::from(a(&value_of(code)));
    let tail = code.tail();
    let rhs = Int::from(a(&value_of(&tail))) * (g[0] + 1) - Int::from(a(&value_of(&tail.tail())));
    Ok((lhs != rhs).then(|| Witness::new(&[("code", code.to_string())], lhs, rhs)))
}

/// Every code of length `min_len..=max_len` with entries in `0..=entry_max`.
fn all_codes(min_len: usize, max_len: usize, entry_max: u64) -> Vec<GapCode> {
    let mut out = Vec::new();
    for len in min_len..=max_len {
        let mut digits = vec![0u64; len];
        loop {
            out.push(GapCode::new(digits.clone()));
            // odometer increment
            let Some(pos) = digits.iter().rposition(|&d| d < entry_max) else {
                break;
            };
            digits[pos] += 1;
            digits[pos + 1..].iter_mut().for_each(|d| *d = 0);
        }
    }
    out
}

/// Code identities over all codes with `1 <= r <= r_max`, `c_1 >= 1` and
/// entries `<= entry_max`; later entries may be 0.
pub fn sweep_code_identities(r_max: usize, entry_max: u64) -> Report {
    let start = Instant::now();
    let codes: Vec<GapCode> = all_codes(1, r_max, entry_max)
        .into_iter()
        .filter(|c| c.gaps()[0] > 0)
        .collect();
    let mut report = codes
        .par_iter()
        .fold(
            || Report::new("code"),
            |mut acc, code| {
                acc.extend_code(code, code.gaps()[0]);
                acc
            },
        )
        .reduce(|| Report::new("code"), Report::merge);
    report.elapsed = start.elapsed();
    report
}

/// The three-term relation over all codes with `2 <= r <= r_max`,
/// `c_2 >= 1` and entries `<= entry_max`.
pub fn sweep_lemma_l2(r_max: usize, entry_max: u64) -> Report {
    let codes: Vec<GapCode> = all_codes(2, r_max.max(2), entry_max)
        .into_iter()
        .filter(|c| c.gaps()[1] > 0 && c.len() <= r_max)
        .collect();
    sweep("lemma-l2", codes.into_par_iter(), |code| {
        lemma_l2_check(&code).expect("filtered codes meet the precondition")
    })
}

/// `a(bit_reverse(n)) = a(n)` for odd `n < n_max`.
pub fn verify_reversal(n_max: u64) -> Report {
    let odds: Vec<u64> = (1..n_max).step_by(2).collect();
    sweep("reversal", odds.into_par_iter(), |n| {
        let big = Nat::from(n);
        let rev = bit_reverse(&big).expect("n >= 1");
        compare(&[("n", n.to_string())], a(&rev), a(&big))
    })
}

/// `q_{k+r}(t ‖ y) = q_k(t) q_r(y) - q_{k-1}(t_1..t_{k-1}) q_{r-1}(y_2..y_r)`.
pub fn verify_splitting(ts: &[Int], ys: &[Int]) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new("splitting");
    report.record(splitting_check(ts, ys)?);
    report.elapsed = start.elapsed();
    Ok(report)
}

fn splitting_check(ts: &[Int], ys: &[Int]) -> Result<Option<Witness>> {
    if ts.is_empty() || ys.is_empty() {
        return Err(Error::Precondition(
            "splitting needs k >= 1 and r >= 1".into(),
        ));
    }
    let joined: Vec<Int> = ts.iter().chain(ys).cloned().collect();
    let lhs = q_eval(&joined);
    let rhs = q_eval(ts) * q_eval(ys) - q_eval(&ts[..ts.len() - 1]) * q_eval(&ys[1..]);
    let show = |v: &[Int]| {
        let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        format!("[{}]", items.join(","))
    };
    Ok((lhs != rhs).then(|| Witness::new(&[("t", show(ts)), ("y", show(ys))], lhs, rhs)))
}

/// `cases` random splits with `k + r <= max_total` and full-range 64-bit
/// signed entries.
pub fn sweep_splitting(cases: usize, max_total: usize, seed: u64) -> Result<Report> {
    if max_total < 2 {
        return Err(Error::Precondition("splitting needs k + r >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inputs: Vec<(Vec<Int>, Vec<Int>)> = (0..cases)
        .map(|_| {
            let k = rng.gen_range(1..max_total);
            let r = rng.gen_range(1..=max_total - k);
            let mut draw = |len: usize| (0..len).map(|_| Int::from(rng.gen::<i64>())).collect();
            (draw(k), draw(r))
        })
        .collect();
    let mut report = sweep("splitting", inputs.into_par_iter(), |(ts, ys)| {
        splitting_check(&ts, &ys).expect("k, r >= 1")
    });
    report.seed = Some(seed);
    Ok(report)
}

/// `a(c)a(2u+5) + a(2^e-c)a(2u+3) = a(2^e(u+2)+c) + a(2^e(u+1)+c)` for all
/// `0 <= c <= 2^e`, `0 <= u <= u_max`.
pub fn verify_coons(e: u32, u_max: u64) -> Report {
    let pairs = c_u_pairs(e, 0..=1u64 << e, u_max);
    let top = pow2(e as u64);
    sweep("coons", pairs.into_par_iter(), |(c, u)| {
        let cn = Nat::from(c);
        let lhs = a(&cn) * a_u(2 * u + 5) + a(&(&top - &cn)) * a_u(2 * u + 3);
        let rhs = a(&(&top * (u + 2) + &cn)) + a(&(&top * (u + 1) + &cn));
        compare(
            &[("e", e.to_string()), ("c", c.to_string()), ("u", u.to_string())],
            lhs,
            rhs,
        )
    })
}

fn c_u_pairs(e: u32, cs: RangeInclusive<u64>, u_max: u64) -> Vec<(u64, u64)> {
    assert!(e < 63, "exhaustive sweep over c <= 2^{e} is out of range");
    cs.flat_map(|c| (0..=u_max).map(move |u| (c, u))).collect()
}

/// `a(2^e + c) = a(2^e - c) + a(c)` for all `0 <= c <= 2^e`.
pub fn verify_reznick_split(e: u32) -> Report {
    assert!(e < 63, "exhaustive sweep over c <= 2^{e} is out of range");
    let top = pow2(e as u64);
    let cs: Vec<u64> = (0..=1u64 << e).collect();
    sweep("reznick", cs.into_par_iter(), |c| {
        let cn = Nat::from(c);
        let lhs = a(&(&top + &cn));
        let rhs = a(&(&top - &cn)) + a(&cn);
        compare(&[("e", e.to_string()), ("c", c.to_string())], lhs, rhs)
    })
}

/// `a(2^e - c)a(u+1) + a(c)a(u+2) = a(2^e(u+1) + c)` for `c` in `cs`,
/// `0 <= u <= u_max`.
pub fn verify_linear_comb(e: u32, u_max: u64, cs: RangeInclusive<u64>) -> Result<Report> {
    if e >= 63 || *cs.end() > 1u64 << e {
        return Err(Error::Precondition(format!(
            "linear combination needs c <= 2^e (e={e}, c up to {})",
            cs.end()
        )));
    }
    let top = pow2(e as u64);
    let pairs = c_u_pairs(e, cs, u_max);
    Ok(sweep("linear-comb", pairs.into_par_iter(), |(c, u)| {
        let cn = Nat::from(c);
        let lhs = a(&(&top - &cn)) * a_u(u + 1) + a(&cn) * a_u(u + 2);
        let rhs = a(&(&top * (u + 1) + &cn));
        compare(
            &[("e", e.to_string()), ("c", c.to_string()), ("u", u.to_string())],
            lhs,
            rhs,
        )
    }))
}

/// `trials` random codes with entries in `{k, 2k, 3k}` and length `<= 24`:
/// `a(n) mod k` against [`divisibility_class`].
pub fn verify_divisibility(k: u64, trials: usize, seed: u64) -> Result<Report> {
    if k == 0 {
        return Err(Error::ZeroDivisor);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ k.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let codes: Vec<GapCode> = (0..trials)
        .map(|_| {
            let len = rng.gen_range(0..=24);
            GapCode::new((0..len).map(|_| k * rng.gen_range(1..=3)).collect())
        })
        .collect();
    let mut report = sweep("divisibility", codes.into_par_iter(), |code| {
        let n = value_of(&code);
        let predicted = divisibility_class(&n, k)
            .expect("entries are multiples of k")
            .mod_k(k);
        let actual = int_mod(&Int::from(a(&n)), k);
        (predicted != actual).then(|| {
            Witness::new(
                &[("k", k.to_string()), ("code", code.to_string())],
                actual,
                predicted,
            )
        })
    });
    report.seed = Some(seed);
    Ok(report)
}

/// `binet(r, t)` against `a((2^{rt}-1)/(2^t-1))` and `q_{r-1}(t+1, ...)`.
pub fn verify_binet(r_max: u64, ts: RangeInclusive<u64>) -> Result<Report> {
    if *ts.start() < 2 {
        return Err(Error::Precondition("binet needs t >= 2".into()));
    }
    let pairs: Vec<(u64, u64)> = ts
        .flat_map(|t| (1..=r_max).map(move |r| (r, t)))
        .collect();
    let start = Instant::now();
    let mut report = pairs
        .into_par_iter()
        .fold(
            || Report::new("binet"),
            |mut acc, (r, t)| {
                let closed = binet(r, t).expect("r >= 1, t >= 2");
                let literal = ratio_integer(r, t).expect("r, t >= 1");
                let input = |via: &str| {
                    [("r", r.to_string()), ("t", t.to_string()), ("against", via.to_string())]
                };
                acc.record(compare(&input("stern_pair"), closed.clone(), a(&literal)));
                let constant = q_const(&Int::from(t + 1), (r - 1) as usize);
                let closed = Int::from(closed);
                acc.record((closed != constant).then(|| Witness::new(&input("q_const"), closed, constant)));
                acc
            },
        )
        .reduce(|| Report::new("binet"), Report::merge);
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Agreement of the pair scan with the gap, determinant and (when
/// `with_subsets` and `s(n) <= 17`) subset routes on odd `n`.
pub fn verify_cross(ns: &[Nat], with_subsets: bool) -> Result<Report> {
    if ns.iter().any(|n| !n.bit(0)) {
        return Err(Error::NotOdd);
    }
    Ok(sweep("cross", ns.par_iter(), |n| cross_check(n, with_subsets)))
}

/// [`verify_cross`] over odd `n` in `lo..hi`.
pub fn sweep_cross(lo: u64, hi: u64, with_subsets: bool) -> Report {
    let odds: Vec<u64> = (lo | 1..hi).step_by(2).collect();
    sweep("cross", odds.into_par_iter(), |n| cross_check(&Nat::from(n), with_subsets))
}

fn cross_check(n: &Nat, with_subsets: bool) -> Option<Witness> {
    let oracle = stern_pair(n);
    let mut routes = vec![
        ("gaps", stern_via_gaps(n).expect("odd")),
        ("det", stern_via_det(n).expect("odd")),
    ];
    if with_subsets && digit_sum(n) <= SUBSET_DIGIT_SUM_LIMIT {
        routes.push(("subsets", stern_via_subsets(n).expect("within limit")));
    }
    routes.into_iter().find(|(_, v)| *v != oracle).map(|(route, v)| {
        Witness::new(&[("n", n.to_string()), ("route", route.to_string())], &oracle, v)
    })
}

/// Names accepted by [`run_identity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    Shift,
    Code,
    LemmaL2,
    Reversal,
    Splitting,
    Coons,
    Reznick,
    LinearComb,
    Divisibility,
    Binet,
    Cross,
}

impl Identity {
    pub const ALL: [Identity; 11] = [
        Identity::Shift,
        Identity::Code,
        Identity::LemmaL2,
        Identity::Reversal,
        Identity::Splitting,
        Identity::Coons,
        Identity::Reznick,
        Identity::LinearComb,
        Identity::Divisibility,
        Identity::Binet,
        Identity::Cross,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Shift => "shift",
            Identity::Code => "code",
            Identity::LemmaL2 => "lemma-l2",
            Identity::Reversal => "reversal",
            Identity::Splitting => "splitting",
            Identity::Coons => "coons",
            Identity::Reznick => "reznick",
            Identity::LinearComb => "linear-comb",
            Identity::Divisibility => "divisibility",
            Identity::Binet => "binet",
            Identity::Cross => "cross",
        }
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: "unknown identity".into(),
            })
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Ranges for every sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub shift_n_max: u64,
    pub shift_c_max: u32,
    pub code_r_max: usize,
    pub code_entry_max: u64,
    pub reversal_max: u64,
    pub splitting_cases: usize,
    pub splitting_max_total: usize,
    /// Coons, Reznick and linear-combination sweeps run every `e <= e_max`.
    pub e_max: u32,
    pub u_max: u64,
    /// Divisibility runs every `1 <= k <= k_max`.
    pub k_max: u64,
    pub divisibility_trials: usize,
    pub binet_r_max: u64,
    pub binet_t: RangeInclusive<u64>,
    /// Three-way agreement for odd `n < cross_max`.
    pub cross_max: u64,
    /// Four-way agreement (with subsets) for odd `n < cross_subsets_max`.
    pub cross_subsets_max: u64,
    pub seed: u64,
}

impl SweepConfig {
    /// The full ranges used by the acceptance suite.
    pub fn standard() -> Self {
        SweepConfig {
            shift_n_max: 1 << 12,
            shift_c_max: 10,
            code_r_max: 5,
            code_entry_max: 4,
            reversal_max: 1 << 18,
            splitting_cases: 200,
            splitting_max_total: 16,
            e_max: 10,
            u_max: 16,
            k_max: 8,
            divisibility_trials: 10_000,
            binet_r_max: 40,
            binet_t: 2..=6,
            cross_max: 1 << 20,
            cross_subsets_max: 1 << 16,
            seed: 0,
        }
    }

    /// Reduced ranges for a smoke run of a few seconds.
    pub fn quick() -> Self {
        SweepConfig {
            shift_n_max: 1 << 9,
            shift_c_max: 8,
            code_r_max: 4,
            code_entry_max: 3,
            reversal_max: 1 << 14,
            splitting_cases: 50,
            splitting_max_total: 12,
            e_max: 6,
            u_max: 8,
            k_max: 8,
            divisibility_trials: 500,
            binet_r_max: 20,
            binet_t: 2..=5,
            cross_max: 1 << 14,
            cross_subsets_max: 1 << 12,
            seed: 0,
        }
    }
}

/// Runs one identity over the configured ranges and merges the result into
/// a single report.
pub fn run_identity(id: Identity, cfg: &SweepConfig) -> Result<Report> {
    let start = Instant::now();
    let merged = |reports: Vec<Report>| {
        reports
            .into_iter()
            .reduce(Report::merge)
            .unwrap_or_else(|| Report::new(id.name()))
    };
    let mut report = match id {
        Identity::Shift => verify_shift(cfg.shift_n_max, cfg.shift_c_max),
        Identity::Code => sweep_code_identities(cfg.code_r_max, cfg.code_entry_max),
        Identity::LemmaL2 => sweep_lemma_l2(cfg.code_r_max, cfg.code_entry_max),
        Identity::Reversal => verify_reversal(cfg.reversal_max),
        Identity::Splitting => {
            sweep_splitting(cfg.splitting_cases, cfg.splitting_max_total, cfg.seed)?
        }
        Identity::Coons => merged((0..=cfg.e_max).map(|e| verify_coons(e, cfg.u_max)).collect()),
        Identity::Reznick => merged((0..=cfg.e_max).map(verify_reznick_split).collect()),
        Identity::LinearComb => merged(
            (0..=cfg.e_max)
                .map(|e| verify_linear_comb(e, cfg.u_max, 0..=1u64 << e))
                .collect::<Result<_>>()?,
        ),
        Identity::Divisibility => merged(
            (1..=cfg.k_max)
                .map(|k| verify_divisibility(k, cfg.divisibility_trials, cfg.seed))
                .collect::<Result<_>>()?,
        ),
        Identity::Binet => verify_binet(cfg.binet_r_max, cfg.binet_t.clone())?,
        Identity::Cross => {
            let split = cfg.cross_subsets_max.min(cfg.cross_max);
            sweep_cross(1, split, true).merge(sweep_cross(split, cfg.cross_max, false))
        }
    };
    report.elapsed = start.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(v: &[u64]) -> GapCode {
        GapCode::new(v.to_vec())
    }

    #[test]
    fn shift_examples() {
        // a(3) = a(1)*1 + a(2), a(9) = a(2)*2 + a(3)
        assert_eq!(a_u(3), a_u(1) + a_u(2));
        assert_eq!(a_u(9), a_u(2) * 2u32 + a_u(3));
        let r = verify_shift(64, 6);
        assert!(r.passed());
        assert_eq!(r.checked, 63 * 7);
    }

    #[test]
    fn code_examples() {
        assert!(verify_code_identities(&code(&[2])).unwrap().passed());
        assert!(verify_code_identities(&code(&[2, 2])).unwrap().passed());
        assert!(verify_code_identities(&code(&[1, 1])).unwrap().passed());
        assert_eq!(a_u(20), a_u(5));
        assert_eq!(a_u(8), a_u(4));
        assert!(verify_code_identities(&code(&[0, 1])).is_err());
        assert!(verify_code_identities(&code(&[])).is_err());
    }

    #[test]
    fn lemma_examples() {
        for c in [&[1, 1][..], &[2, 2], &[3, 1, 2]] {
            let r = verify_lemma_l2(&code(c)).unwrap();
            assert!(r.passed(), "{r}");
        }
        assert!(verify_lemma_l2(&code(&[3])).is_err());
        assert!(verify_lemma_l2(&code(&[3, 0, 1])).is_err());
    }

    #[test]
    fn reversal_examples() {
        assert_eq!(a_u(11), a_u(13));
        assert!(verify_reversal(1 << 10).passed());
    }

    #[test]
    fn splitting_examples() {
        let i = |v: &[i64]| v.iter().map(|&x| Int::from(x)).collect::<Vec<_>>();
        assert!(verify_splitting(&i(&[3]), &i(&[4])).unwrap().passed());
        assert!(verify_splitting(&i(&[2, -7]), &i(&[5])).unwrap().passed());
        assert!(verify_splitting(&[], &i(&[5])).is_err());
        assert!(verify_splitting(&i(&[5]), &[]).is_err());
        let r = sweep_splitting(20, 16, 7).unwrap();
        assert!(r.passed());
        assert_eq!(r.seed, Some(7));
    }

    #[test]
    fn coons_family_examples() {
        // e=2, c=3, u=1: 2*3 + 1*3 = 9 = a(15) + a(11)
        assert_eq!(a_u(3) * a_u(7) + a_u(1) * a_u(5), a_u(15) + a_u(11));
        assert_eq!(a_u(23), a_u(9) + a_u(7));
        assert!(verify_coons(5, 8).passed());
        assert!(verify_reznick_split(4).passed());
        assert!(verify_linear_comb(6, 8, 0..=64).unwrap().passed());
        assert!(verify_linear_comb(2, 1, 0..=5).is_err());
    }

    #[test]
    fn divisibility_and_binet() {
        for k in 1..=4 {
            assert!(verify_divisibility(k, 200, 3).unwrap().passed());
        }
        assert!(verify_divisibility(0, 1, 0).is_err());
        assert!(verify_binet(10, 2..=4).unwrap().passed());
        assert!(verify_binet(10, 1..=4).is_err());
    }

    #[test]
    fn cross_examples() {
        assert!(verify_cross(&[Nat::from(1u32)], true).unwrap().passed());
        assert!(verify_cross(&[Nat::from(4u32)], true).is_err());
        assert!(sweep_cross(1, 1 << 10, true).passed());
    }

    #[test]
    fn merge_keeps_first_witnesses_in_order() {
        let w = |i: u32| Witness::new(&[("i", i.to_string())], i, 0);
        let mut left = Report::new("x");
        (0..7).for_each(|i| left.record(Some(w(i))));
        let mut right = Report::new("x");
        (7..14).for_each(|i| right.record(Some(w(i))));
        let merged = left.clone().merge(right.clone());
        assert_eq!(merged.checked, 14);
        let kept: Vec<String> = merged.failures.iter().map(|w| w.lhs.clone()).collect();
        assert_eq!(kept, (0..10).map(|i| i.to_string()).collect::<Vec<_>>());
    }

    #[test]
    fn report_detects_a_false_identity() {
        // a(2n) = a(n) + 1 is false everywhere
        let r = sweep("bogus", (1..50u64).collect::<Vec<_>>().into_par_iter(), |n| {
            compare(&[("n", n.to_string())], a_u(2 * n), a_u(n) + 1u32)
        });
        assert!(!r.passed());
        assert_eq!(r.failures.len(), DEFAULT_FAILURE_CAP);
        assert_eq!(r.failures[0].input["n"], "1");
    }

    #[test]
    fn report_json_shape() {
        let r = verify_reversal(16);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in ["identity", "checked", "failures", "seed", "elapsed_ms"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back.checked, r.checked);
        assert_eq!(back.identity, "reversal");
    }

    #[test]
    fn identity_names_parse() {
        for id in Identity::ALL {
            assert_eq!(id.name().parse::<Identity>().unwrap(), id);
        }
        assert!("nope".parse::<Identity>().is_err());
    }

    #[test]
    fn quick_suite_passes() {
        let cfg = SweepConfig::quick();
        for id in Identity::ALL {
            let r = run_identity(id, &cfg).unwrap();
            assert!(r.passed(), "{r}");
            assert!(r.checked > 0);
        }
    }
}
