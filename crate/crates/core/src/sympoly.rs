//! Sparse squarefree polynomials with exact integer coefficients.
//!
//! `q_r` is multilinear, so a monomial is just the set of its variable
//! indices, stored as a bitset (bit `i - 1` for variable `i`, `i <= 64`).
//! `q_r` is built both from its three-term recurrence and from the
//! alternating-parity expansion; `p_r(x) = q_r(x_1 + 1, ..., x_r + 1)` comes
//! from `q_r` by expanding each monomial over the subsets of its support.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::subsets::{iter_a, omega};
use crate::{Error, Int, Result};

/// Term-count guard for `q_r`.
pub const MAX_Q_ARITY: usize = 28;
/// Term-count guard for `p_r`.
pub const MAX_P_ARITY: usize = 20;

/// Squarefree monomial over variables `1..=64`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_indices(indices: &[usize]) -> Self {
        Monomial(indices.iter().fold(0, |acc, &i| acc | (1u64 << (i - 1))))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, index: usize) -> bool {
        (1..=64).contains(&index) && self.0 & (1 << (index - 1)) != 0
    }

    /// Variable indices, ascending.
    pub fn indices(self) -> Vec<usize> {
        let mut rest = self.0;
        let mut out = Vec::with_capacity(rest.count_ones() as usize);
        while rest != 0 {
            out.push(rest.trailing_zeros() as usize + 1);
            rest &= rest - 1;
        }
        out
    }

    /// Rendering order: degree descending, then lexicographic on the
    /// ascending index list.
    fn canonical_cmp(self, other: Monomial) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Latex,
}

/// Polynomial in variables `1..=arity`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    arity: usize,
    terms: BTreeMap<Monomial, Int>,
}

/// One term of the JSON rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub support: Vec<usize>,
    pub coeff: String,
}

impl Poly {
    pub fn zero(arity: usize) -> Self {
        Poly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Poly::monomial(arity, Monomial::ONE, Int::one())
    }

    pub fn var(arity: usize, index: usize) -> Result<Self> {
        if !(1..=arity).contains(&index) {
            return Err(Error::IndexOutOfRange { index, arity });
        }
        Ok(Poly::monomial(
            arity,
            Monomial::from_indices(&[index]),
            Int::one(),
        ))
    }

    fn monomial(arity: usize, m: Monomial, coeff: Int) -> Self {
        let mut p = Poly::zero(arity);
        p.add_term(m, coeff);
        p
    }

    /// Builds from explicit terms, summing repeated monomials.
    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Vec<usize>, Int)>) -> Result<Self> {
        let mut p = Poly::zero(arity);
        for (support, coeff) in terms {
            if let Some(&index) = support.iter().find(|&&i| !(1..=arity).contains(&i)) {
                return Err(Error::IndexOutOfRange { index, arity });
            }
            let m = Monomial::from_indices(&support);
            if m.degree() as usize != support.len() {
                return Err(Error::NotSquarefree(support[0]));
            }
            p.add_term(m, coeff);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, coeff: Int) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Int::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Int)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn coeff(&self, m: Monomial) -> Int {
        self.terms.get(&m).cloned().unwrap_or_else(Int::zero)
    }

    /// Same polynomial viewed in a larger variable set.
    pub fn with_arity(&self, arity: usize) -> Result<Self> {
        let needed = self.terms.keys().map(|m| 64 - m.0.leading_zeros() as usize).max().unwrap_or(0);
        if needed > arity {
            return Err(Error::IndexOutOfRange { index: needed, arity });
        }
        Ok(Poly {
            arity,
            terms: self.terms.clone(),
        })
    }

    /// Renames variable `i` to `i + offset` inside arity `arity`.
    pub fn shift_indices(&self, offset: usize, arity: usize) -> Result<Self> {
        let mut out = Poly::zero(arity);
        for (&m, c) in &self.terms {
            let shifted = m.0.checked_shl(offset as u32).filter(|s| s >> offset == m.0);
            let shifted = shifted.ok_or(Error::IndexOutOfRange { index: 65, arity })?;
            let top = 64 - shifted.leading_zeros() as usize;
            if top > arity {
                return Err(Error::IndexOutOfRange { index: top, arity });
            }
            out.terms.insert(Monomial(shifted), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(&m, c)| (m, -c)).collect(),
        }
    }

    /// Product of polynomials whose variable sets are disjoint, so every
    /// product monomial stays squarefree.
    pub fn mul_disjoint(&self, other: &Poly) -> Result<Self> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        let mut out = Poly::zero(self.arity);
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                if a.0 & b.0 != 0 {
                    let shared = (a.0 & b.0).trailing_zeros() as usize + 1;
                    return Err(Error::NotSquarefree(shared));
                }
                out.add_term(Monomial(a.0 | b.0), ca * cb);
            }
        }
        Ok(out)
    }

    /// Deterministic rendering, e.g. `y1*y2 - 1` or `y_{1}y_{2} - 1`.
    pub fn render(&self, format: Format, var: &str) -> String {
        let mut terms: Vec<(Monomial, &Int)> = self.terms().collect();
        terms.sort_by(|a, b| a.0.canonical_cmp(b.0));
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let magnitude = c.abs();
            let factors: Vec<String> = m
                .indices()
                .iter()
                .map(|i| match format {
                    Format::Text => format!("{var}{i}"),
                    Format::Latex => format!("{var}_{{{i}}}"),
                })
                .collect();
            let sep = match format {
                Format::Text => "*",
                Format::Latex => "",
            };
            if factors.is_empty() {
                write!(out, "{magnitude}").unwrap();
            } else {
                if !magnitude.is_one() {
                    write!(out, "{magnitude}{sep}").unwrap();
                }
                out.push_str(&factors.join(sep));
            }
        }
        out
    }

    /// Canonically ordered `{support, coeff}` list.
    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        let mut terms: Vec<(Monomial, &Int)> = self.terms().collect();
        terms.sort_by(|a, b| a.0.canonical_cmp(b.0));
        terms
            .into_iter()
            .map(|(m, c)| JsonTerm {
                support: m.indices(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_terms()).expect("terms serialize")
    }

    pub fn from_json(arity: usize, json: &str) -> Result<Self> {
        let terms: Vec<JsonTerm> = serde_json::from_str(json).map_err(|e| Error::Parse {
            input: json.to_string(),
            reason: e.to_string(),
        })?;
        let parsed = terms
            .into_iter()
            .map(|t| {
                let coeff = t.coeff.parse::<Int>().map_err(|e| Error::Parse {
                    input: t.coeff.clone(),
                    reason: e.to_string(),
                })?;
                Ok((t.support, coeff))
            })
            .collect::<Result<Vec<_>>>()?;
        Poly::from_terms(arity, parsed)
    }
}

pub fn poly_add(a: &Poly, b: &Poly) -> Result<Poly> {
    if a.arity != b.arity {
        return Err(Error::ArityMismatch {
            expected: a.arity,
            found: b.arity,
        });
    }
    let mut out = a.clone();
    for (&m, c) in &b.terms {
        out.add_term(m, c.clone());
    }
    Ok(out)
}

pub fn poly_sub(a: &Poly, b: &Poly) -> Result<Poly> {
    poly_add(a, &b.neg())
}

/// Multiplies every term by the variable `index`, which must not already
/// occur in any term.
pub fn poly_shift_mul(p: &Poly, index: usize) -> Result<Poly> {
    if !(1..=p.arity).contains(&index) {
        return Err(Error::IndexOutOfRange {
            index,
            arity: p.arity,
        });
    }
    let bit = 1u64 << (index - 1);
    if p.terms.keys().any(|m| m.0 & bit != 0) {
        return Err(Error::NotSquarefree(index));
    }
    Ok(Poly {
        arity: p.arity,
        terms: p.terms.iter().map(|(&m, c)| (Monomial(m.0 | bit), c.clone())).collect(),
    })
}

fn guard(r: usize, max: usize) -> Result<()> {
    if r > max {
        Err(Error::ArityGuard { r, max })
    } else {
        Ok(())
    }
}

/// `q_r` from the three-term recurrence, assembling the suffix polynomials
/// in `y_i, ..., y_r` from right to left.
pub fn build_q(r: usize) -> Result<Poly> {
    guard(r, MAX_Q_ARITY)?;
    // (suffix starting at i + 1, suffix starting at i + 2)
    let mut cur = Poly::one(r);
    let mut prev = Poly::zero(r);
    for i in (1..=r).rev() {
        let next = poly_sub(&poly_shift_mul(&cur, i)?, &prev)?;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// `q_r` term by term from `Σ_s ω(r, s) Σ_{u ∈ A(r, s)} y_u`.
pub fn build_q_subsets(r: usize) -> Result<Poly> {
    guard(r, MAX_Q_ARITY)?;
    if r == 0 {
        return Ok(Poly::one(0));
    }
    let mut out = Poly::zero(r);
    for s in 0..=r {
        let w = omega(r, s);
        if w == 0 {
            continue;
        }
        for u in iter_a(r, s)? {
            out.add_term(Monomial::from_indices(u.indices()), Int::from(w));
        }
    }
    Ok(out)
}

/// `p_r(x_1, ..., x_r) = q_r(x_1 + 1, ..., x_r + 1)`.
pub fn build_p(r: usize) -> Result<Poly> {
    guard(r, MAX_P_ARITY)?;
    let q = build_q(r)?;
    let mut acc: HashMap<u64, Int> = HashMap::new();
    for (m, c) in q.terms() {
        // every submask of the support
        let mut sub = m.0;
        loop {
            *acc.entry(sub).or_insert_with(Int::zero) += c;
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & m.0;
        }
    }
    let mut p = Poly::zero(r);
    for (bits, c) in acc {
        p.add_term(Monomial(bits), c);
    }
    Ok(p)
}

pub fn poly_eval(p: &Poly, args: &[Int]) -> Result<Int> {
    if args.len() != p.arity {
        return Err(Error::ArityMismatch {
            expected: p.arity,
            found: args.len(),
        });
    }
    Ok(p.terms.iter().fold(Int::zero(), |acc, (m, c)| {
        let term = m.indices().iter().fold(c.clone(), |t, &i| t * &args[i - 1]);
        acc + term
    }))
}

/// Relabels variable `i` as `arity - i + 1`.
pub fn poly_reverse(p: &Poly) -> Poly {
    let r = p.arity;
    let mut out = Poly::zero(r);
    for (&m, c) in &p.terms {
        let indices: Vec<usize> = m.indices().iter().map(|&i| r - i + 1).collect();
        out.terms.insert(Monomial::from_indices(&indices), c.clone());
    }
    out
}

pub fn poly_render(p: &Poly, format: Format) -> String {
    p.render(format, "y")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(arity: usize, terms: &[(&[usize], i64)]) -> Poly {
        Poly::from_terms(arity, terms.iter().map(|(s, c)| (s.to_vec(), Int::from(*c)))).unwrap()
    }

    #[test]
    fn add_examples() {
        let p = poly(3, &[(&[1, 2], 1), (&[], -1)]);
        assert_eq!(poly_add(&p, &Poly::zero(3)).unwrap(), p);
        assert_eq!(
            poly_add(&p, &Poly::one(3)).unwrap(),
            poly(3, &[(&[1, 2], 1)])
        );
        assert_eq!(
            poly_add(&Poly::var(3, 1).unwrap(), &Poly::var(3, 3).unwrap()).unwrap(),
            poly(3, &[(&[1], 1), (&[3], 1)])
        );
        assert_eq!(
            poly_add(&p, &Poly::one(2)),
            Err(Error::ArityMismatch { expected: 3, found: 2 })
        );
    }

    #[test]
    fn shift_mul_examples() {
        assert_eq!(poly_shift_mul(&Poly::one(3), 1).unwrap(), poly(3, &[(&[1], 1)]));
        assert_eq!(
            poly_shift_mul(&poly(3, &[(&[2, 3], 1)]), 1).unwrap(),
            poly(3, &[(&[1, 2, 3], 1)])
        );
        assert_eq!(
            poly_shift_mul(&Poly::var(3, 1).unwrap(), 1),
            Err(Error::NotSquarefree(1))
        );
    }

    #[test]
    fn build_q_examples() {
        assert_eq!(build_q(0).unwrap(), Poly::one(0));
        assert_eq!(build_q(1).unwrap(), poly(1, &[(&[1], 1)]));
        assert_eq!(build_q(2).unwrap(), poly(2, &[(&[1, 2], 1), (&[], -1)]));
        assert_eq!(
            build_q(3).unwrap(),
            poly(3, &[(&[1, 2, 3], 1), (&[1], -1), (&[3], -1)])
        );
        assert_eq!(build_q(5).unwrap().len(), 8);
        assert_eq!(build_q(29), Err(Error::ArityGuard { r: 29, max: 28 }));
        assert_eq!(build_q_subsets(29), Err(Error::ArityGuard { r: 29, max: 28 }));
        assert_eq!(build_p(21), Err(Error::ArityGuard { r: 21, max: 20 }));
    }

    #[test]
    fn build_q_subsets_examples() {
        assert_eq!(build_q_subsets(0).unwrap(), Poly::one(0));
        assert_eq!(build_q_subsets(2).unwrap(), build_q(2).unwrap());
        // y1*q3(y2, y3, y4) - q2(y3, y4) carries a constant +1
        assert_eq!(
            build_q_subsets(4).unwrap(),
            poly(
                4,
                &[(&[1, 2, 3, 4], 1), (&[1, 2], -1), (&[1, 4], -1), (&[3, 4], -1), (&[], 1)]
            )
        );
    }

    #[test]
    fn build_p_examples() {
        assert_eq!(build_p(0).unwrap(), Poly::one(0));
        assert_eq!(build_p(1).unwrap(), poly(1, &[(&[1], 1), (&[], 1)]));
        assert_eq!(
            build_p(2).unwrap(),
            poly(2, &[(&[1, 2], 1), (&[1], 1), (&[2], 1)])
        );
        assert_eq!(
            build_p(3).unwrap(),
            poly(
                3,
                &[(&[1, 2, 3], 1), (&[1, 2], 1), (&[1, 3], 1), (&[2, 3], 1), (&[2], 1), (&[], -1)]
            )
        );
    }

    #[test]
    fn eval_examples() {
        let q2 = build_q(2).unwrap();
        assert_eq!(poly_eval(&q2, &[Int::from(3), Int::from(4)]).unwrap(), Int::from(11));
        assert_eq!(poly_eval(&build_p(1).unwrap(), &[Int::from(2)]).unwrap(), Int::from(3));
        let period = [1, 1, 0, -1, -1, 0];
        for r in 0..14 {
            let ones = vec![Int::one(); r];
            assert_eq!(poly_eval(&build_q(r).unwrap(), &ones).unwrap(), Int::from(period[r % 6]));
        }
        assert_eq!(
            poly_eval(&q2, &[Int::one()]),
            Err(Error::ArityMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn reverse_examples() {
        let y1 = Poly::var(3, 1).unwrap();
        assert_eq!(poly_reverse(&y1), Poly::var(3, 3).unwrap());
        for r in 0..=12 {
            let q = build_q(r).unwrap();
            assert_eq!(poly_reverse(&q), q);
        }
        let p = build_p(4).unwrap();
        assert_eq!(poly_reverse(&poly_reverse(&p)), p);
    }

    #[test]
    fn render_examples() {
        assert_eq!(poly_render(&build_q(2).unwrap(), Format::Text), "y1*y2 - 1");
        assert_eq!(poly_render(&build_q(0).unwrap(), Format::Text), "1");
        assert_eq!(
            poly_render(&build_q(3).unwrap(), Format::Latex),
            "y_{1}y_{2}y_{3} - y_{1} - y_{3}"
        );
        assert_eq!(
            poly_render(&build_q(5).unwrap(), Format::Text),
            "y1*y2*y3*y4*y5 - y1*y2*y3 - y1*y2*y5 - y1*y4*y5 - y3*y4*y5 + y1 + y3 + y5"
        );
        assert_eq!(build_p(2).unwrap().render(Format::Text, "x"), "x1*x2 + x1 + x2");
        assert_eq!(poly(2, &[(&[2], -3), (&[], 2)]).render(Format::Text, "y"), "-3*y2 + 2");
        assert_eq!(poly(2, &[(&[1], 3)]).render(Format::Latex, "y"), "3y_{1}");
        assert_eq!(Poly::zero(2).render(Format::Text, "y"), "0");
    }

    #[test]
    fn json_round_trip() {
        let p = build_p(4).unwrap();
        let json = p.to_json();
        assert!(json.starts_with(r#"[{"support":[1,2,3,4],"coeff":"1"}"#));
        assert_eq!(Poly::from_json(4, &json).unwrap(), p);
        assert_eq!(build_q(2).unwrap().to_json(), r#"[{"support":[1,2],"coeff":"1"},{"support":[],"coeff":"-1"}]"#);
    }

    #[test]
    fn disjoint_product_and_shift() {
        let a = Poly::var(4, 1).unwrap();
        let b = build_q(2).unwrap().shift_indices(2, 4).unwrap();
        assert_eq!(
            a.mul_disjoint(&b).unwrap(),
            poly(4, &[(&[1, 3, 4], 1), (&[1], -1)])
        );
        assert_eq!(a.mul_disjoint(&a), Err(Error::NotSquarefree(1)));
        assert!(build_q(3).unwrap().shift_indices(2, 4).is_err());
    }
}
