//! Sparse multivariate polynomials over GF(2).
//!
//! A polynomial is a set of monomials: with coefficients in the two-element
//! field, presence of a monomial is the whole datum and addition is symmetric
//! difference. Variables carry a cohomological weight, and monomials are
//! ordered by weighted degree first and exponent vector second. The
//! canonical text form lists terms from the largest monomial down, e.g.
//! `w1^3*w2 + w2^2`, with `0` and `1` as literals.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Names and weights of the variables of a polynomial ring.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct VarSpace {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl VarSpace {
    pub fn new(names: Vec<String>, weights: Vec<u32>) -> Result<Arc<Self>> {
        if names.len() != weights.len() {
            return Err(Error::usage("variable names and weights differ in length"));
        }
        for (i, name) in names.iter().enumerate() {
            let mut chars = name.chars();
            let ok = chars
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::usage(format!("invalid variable name {name:?}")));
            }
            if names[..i].contains(name) {
                return Err(Error::usage(format!("duplicate variable name {name:?}")));
            }
        }
        if weights.contains(&0) {
            return Err(Error::usage("variable weights must be positive"));
        }
        Ok(Arc::new(VarSpace { names, weights }))
    }

    /// `w1, …, wk` with `wi` in degree `i`.
    pub fn stiefel_whitney(k: usize) -> Arc<Self> {
        Arc::new(VarSpace {
            names: (1..=k).map(|i| format!("w{i}")).collect(),
            weights: (1..=k as u32).collect(),
        })
    }

    /// `w1, …, wk, wb1, …, wbm`: Stiefel-Whitney classes followed by their
    /// duals.
    pub fn with_duals(k: usize, m: usize) -> Arc<Self> {
        let names = (1..=k)
            .map(|i| format!("w{i}"))
            .chain((1..=m).map(|j| format!("wb{j}")))
            .collect();
        let weights = (1..=k as u32).chain(1..=m as u32).collect();
        Arc::new(VarSpace { names, weights })
    }

    /// `e1, …, en`, all of degree one.
    pub fn line_classes(n: usize) -> Arc<Self> {
        Arc::new(VarSpace {
            names: (1..=n).map(|i| format!("e{i}")).collect(),
            weights: vec![1; n],
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn degree(&self, exps: &[u16]) -> Result<u32> {
        let d: u64 = exps
            .iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum();
        u32::try_from(d).map_err(|_| Error::usage("monomial degree overflows u32"))
    }

    pub fn monomial(&self, exps: &[u16]) -> Result<Monomial> {
        if exps.len() != self.len() {
            return Err(Error::usage(format!(
                "exponent vector has {} entries, variable space has {}",
                exps.len(),
                self.len()
            )));
        }
        Ok(Monomial {
            degree: self.degree(exps)?,
            exps: exps.into(),
        })
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut out = String::new();
        for (i, &e) in m.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(&self.names[i]);
            if e > 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }

    pub fn parse_monomial(&self, text: &str) -> Result<Monomial> {
        let terms = Parser {
            space: self,
            src: text.as_bytes(),
            pos: 0,
        }
        .terms()?;
        match <[_; 1]>::try_from(terms) {
            Ok([Some(m)]) => Ok(m),
            _ => Err(Error::parse(
                0,
                format!("expected a single monomial, got {text:?}"),
            )),
        }
    }
}

/// Exponent vector together with its weighted degree.
///
/// Ordered by degree, then lexicographically by exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: Box<[u16]>,
}

impl Monomial {
    pub fn one(vars: usize) -> Self {
        Monomial {
            degree: 0,
            exps: vec![0; vars].into(),
        }
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of generator factors, `Σ exps`.
    pub fn factor_count(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.checked_add(b))
            .collect::<Option<Box<[u16]>>>()
            .ok_or_else(|| Error::usage("exponent overflow"))?;
        let degree = self
            .degree
            .checked_add(other.degree)
            .ok_or_else(|| Error::usage("degree overflow"))?;
        Ok(Monomial { degree, exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }
}

/// A polynomial over GF(2): a finite set of monomials in one variable space.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    space: Arc<VarSpace>,
    terms: BTreeSet<Monomial>,
}

impl Polynomial {
    pub fn zero(space: &Arc<VarSpace>) -> Self {
        Polynomial {
            space: space.clone(),
            terms: BTreeSet::new(),
        }
    }

    pub fn one(space: &Arc<VarSpace>) -> Self {
        Self::from_monomial(space, Monomial::one(space.len()))
    }

    pub fn var(space: &Arc<VarSpace>, i: usize) -> Result<Self> {
        if i >= space.len() {
            return Err(Error::usage(format!("variable index {i} out of range")));
        }
        let mut exps = vec![0u16; space.len()];
        exps[i] = 1;
        Ok(Self::from_monomial(space, space.monomial(&exps)?))
    }

    pub fn from_monomial(space: &Arc<VarSpace>, m: Monomial) -> Self {
        debug_assert_eq!(m.exps.len(), space.len());
        let mut terms = BTreeSet::new();
        terms.insert(m);
        Polynomial {
            space: space.clone(),
            terms,
        }
    }

    pub fn from_exps(space: &Arc<VarSpace>, exps: &[u16]) -> Result<Self> {
        Ok(Self::from_monomial(space, space.monomial(exps)?))
    }

    /// Sums the given monomials mod 2 (repeated monomials cancel in pairs).
    pub fn from_terms(space: &Arc<VarSpace>, terms: impl IntoIterator<Item = Monomial>) -> Self {
        let mut p = Self::zero(space);
        for m in terms {
            p.toggle(m);
        }
        p
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    /// Terms in canonical (descending) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = &Monomial> + ExactSizeIterator {
        self.terms.iter().rev()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    /// Number of terms; the zero polynomial has none (see [`Self::is_zero`]).
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.first().unwrap().is_one()
    }

    /// Largest weighted degree of a term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.last().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        match (self.terms.first(), self.terms.last()) {
            (Some(a), Some(b)) => a.degree == b.degree,
            _ => true,
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .filter(|m| m.degree == d)
                .cloned()
                .collect(),
        }
    }

    pub fn toggle(&mut self, m: Monomial) {
        debug_assert_eq!(m.exps.len(), self.space.len());
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    fn check_space(&self, other: &Polynomial) -> Result<()> {
        if self.space != other.space {
            return Err(Error::usage(
                "polynomials live in different variable spaces",
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_space(other)?;
        Ok(Polynomial {
            space: self.space.clone(),
            terms: self
                .terms
                .symmetric_difference(&other.terms)
                .cloned()
                .collect(),
        })
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_space(other)?;
        let mut out = Polynomial::zero(&self.space);
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.mul(b)?);
            }
        }
        Ok(out)
    }

    /// `self^m` by square-and-multiply; `pow(0)` is one.
    pub fn pow(&self, mut m: u32) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.space);
        let mut base = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            m >>= 1;
            if m > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Sum of all square-free monomials in `i` distinct variables from
    /// `vars`. Zero when `i > vars.len()`.
    pub fn elementary_symmetric(
        space: &Arc<VarSpace>,
        vars: &[usize],
        i: usize,
    ) -> Result<Polynomial> {
        if let Some(&bad) = vars.iter().find(|&&v| v >= space.len()) {
            return Err(Error::usage(format!("variable index {bad} out of range")));
        }
        let mut sorted = vars.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut out = Polynomial::zero(space);
        if i > sorted.len() {
            return Ok(out);
        }
        let mut pick: Vec<usize> = (0..i).collect();
        loop {
            let mut exps = vec![0u16; space.len()];
            for &p in &pick {
                exps[sorted[p]] = 1;
            }
            out.toggle(space.monomial(&exps)?);
            // next i-combination of 0..len in lexicographic order
            let Some(j) = (0..i).rev().find(|&j| pick[j] < sorted.len() - i + j) else {
                break;
            };
            pick[j] += 1;
            for l in j + 1..i {
                pick[l] = pick[l - 1] + 1;
            }
        }
        Ok(out)
    }

    /// Parses the canonical text form (whitespace-insensitive; repeated
    /// terms cancel).
    pub fn parse(space: &Arc<VarSpace>, text: &str) -> Result<Polynomial> {
        let terms = Parser {
            space,
            src: text.as_bytes(),
            pos: 0,
        }
        .terms()?;
        Ok(Polynomial::from_terms(space, terms.into_iter().flatten()))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            f.write_str(&self.space.format_monomial(m))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

struct Parser<'a> {
    space: &'a VarSpace,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn terms(mut self) -> Result<Vec<Option<Monomial>>> {
        let mut out = Vec::new();
        loop {
            out.push(self.term()?);
            match self.peek() {
                Some(b'+') => self.pos += 1,
                None => return Ok(out),
                Some(c) => {
                    return Err(Error::parse(
                        self.pos,
                        format!("unexpected character {:?}", c as char),
                    ))
                }
            }
        }
    }

    /// `None` for the literal `0`.
    fn term(&mut self) -> Result<Option<Monomial>> {
        let mut exps = vec![0u16; self.space.len()];
        let mut zero = false;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let start = self.pos;
                    let v = self.number()?;
                    match v {
                        0 => zero = true,
                        1 => {}
                        _ => {
                            return Err(Error::parse(
                                start,
                                "coefficients other than 0 and 1 are not allowed",
                            ))
                        }
                    }
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric()
                            || self.src[self.pos] == b'_')
                    {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let var = self
                        .space
                        .index_of(name)
                        .ok_or_else(|| Error::parse(start, format!("unknown variable {name:?}")))?;
                    let mut e = 1u64;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        e = self.number()?;
                    }
                    let total = exps[var] as u64 + e;
                    exps[var] = u16::try_from(total)
                        .map_err(|_| Error::parse(start, "exponent exceeds 65535"))?;
                }
                _ => return Err(Error::parse(self.pos, "expected a term")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        if zero {
            return Ok(None);
        }
        let m = self
            .space
            .monomial(&exps)
            .map_err(|e| Error::parse(self.pos, e.to_string()))?;
        Ok(Some(m))
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| Error::parse(start, "number too large"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(k: usize) -> Arc<VarSpace> {
        VarSpace::stiefel_whitney(k)
    }

    fn p(space: &Arc<VarSpace>, s: &str) -> Polynomial {
        Polynomial::parse(space, s).unwrap()
    }

    #[test]
    fn add_cancels_in_characteristic_two() {
        let s = w(2);
        let w1 = p(&s, "w1");
        assert!(w1.add(&w1).unwrap().is_zero());
        assert_eq!(p(&s, "w1^2 + w2").add(&p(&s, "w2")).unwrap(), p(&s, "w1^2"));
    }

    #[test]
    fn dual_square_plus_w1_squared_is_w2() {
        // w̄2 = w1^2 + w2 in G2
        let s = w(2);
        let wb2 = p(&s, "w1^2 + w2");
        assert_eq!(wb2.add(&p(&s, "w1^2")).unwrap(), p(&s, "w2"));
    }

    #[test]
    fn mul_examples() {
        let s = w(2);
        let q = p(&s, "w1^2 + w2");
        assert_eq!(Polynomial::one(&s).mul(&q).unwrap(), q);
        let a = p(&s, "1 + w1");
        assert_eq!(a.mul(&a).unwrap(), p(&s, "1 + w1^2"));
    }

    #[test]
    fn pow_examples() {
        let s = w(2);
        assert!(p(&s, "w1").pow(0).unwrap().is_one());
        assert_eq!(p(&s, "w1 + w2").pow(2).unwrap(), p(&s, "w1^2 + w2^2"));
        let e = VarSpace::line_classes(2);
        assert_eq!(
            p(&e, "e1 + e2").pow(3).unwrap(),
            p(&e, "e1^3 + e1^2*e2 + e1*e2^2 + e2^3")
        );
    }

    #[test]
    fn elementary_symmetric_examples() {
        let e = VarSpace::line_classes(4);
        assert_eq!(
            Polynomial::elementary_symmetric(&e, &[0, 1], 2).unwrap(),
            p(&e, "e1*e2")
        );
        assert_eq!(
            Polynomial::elementary_symmetric(&e, &[2, 3], 1).unwrap(),
            p(&e, "e3 + e4")
        );
        assert_eq!(
            Polynomial::elementary_symmetric(&e, &[0], 1).unwrap(),
            p(&e, "e1")
        );
        assert!(Polynomial::elementary_symmetric(&e, &[0], 2)
            .unwrap()
            .is_zero());
        assert!(Polynomial::elementary_symmetric(&e, &[0, 1, 2], 0)
            .unwrap()
            .is_one());
    }

    #[test]
    fn canonical_text() {
        let s = w(2);
        let q = p(&s, "w2^2 + w2*w1^3");
        assert_eq!(q.to_string(), "w1^3*w2 + w2^2");
        assert_eq!(Polynomial::zero(&s).to_string(), "0");
        assert_eq!(p(&s, "w1 + 1").to_string(), "w1 + 1");
        assert_eq!(p(&s, "w1^2+w2").to_string(), "w1^2 + w2");
        assert_eq!(p(&s, "0 + w2 + 0").to_string(), "w2");
    }

    #[test]
    fn parse_errors() {
        let s = w(2);
        for bad in ["", "w3", "w1 +", "2*w1", "w1^", "w1^99999", "w1 w2", "+"] {
            assert!(Polynomial::parse(&s, bad).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn mismatched_spaces_are_usage_errors() {
        let a = Polynomial::one(&w(2));
        let b = Polynomial::one(&w(3));
        assert!(matches!(a.add(&b), Err(Error::Usage(_))));
        assert!(matches!(a.mul(&b), Err(Error::Usage(_))));
    }

    #[test]
    fn parse_monomial_helper() {
        let s = w(3);
        let m = s.parse_monomial("w1^2*w3").unwrap();
        assert_eq!(m.exps(), &[2, 0, 1]);
        assert_eq!(m.degree(), 5);
        assert!(s.parse_monomial("w1 + w2").is_err());
        assert!(s.parse_monomial("0").is_err());
    }
}
