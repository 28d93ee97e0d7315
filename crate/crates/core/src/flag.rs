//! Non-vanishing certificates through the complete flag manifold.
//!
//! `H*(Flag(R^n); Z/2) = Z/2[e1, …, en] / (symmetric functions)`, every
//! `ei^n` vanishes, and a top-degree monomial evaluates to 1 exactly when
//! its exponents are a permutation of `0, …, n-1`. The projection
//! `π: Flag(R^n) → G_k(R^n)` is injective in cohomology with
//! `π*(wi) = e_i(e1..ek)` and `π*(w̄j) = e_j(e_{k+1}..en)`.
//!
//! A class `p` on the Grassmannian is non-zero iff
//! `y = π*(p) · e1^{k-1}⋯e_{k-1} · e_{k+1}^{n-k-1}⋯e_{n-1}` is non-zero in
//! the flag ring. By Poincaré duality that holds iff some monomial
//! `e^m` with `m_i ≤ n-1-i` (0-based; these span the flag ring) makes
//! `y · e^m` evaluate to 1 in the top degree.

use std::fmt;
use std::sync::Arc;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, VarSpace};

/// Largest `n` supported by the packed representation.
pub const MAX_FLAG_N: usize = 16;

/// Default bound on backtracking nodes in the multiplier search.
pub const DEFAULT_NODE_CAP: u64 = 200_000_000;

const FIELD: u32 = 8;

#[inline]
fn field(x: u128, i: usize) -> u16 {
    ((x >> (FIELD as usize * i)) & 0xff) as u16
}

fn pack(exps: &[u16]) -> u128 {
    exps.iter()
        .enumerate()
        .fold(0, |acc, (i, &e)| acc | (e as u128) << (FIELD as usize * i))
}

/// Element of `Z/2[e1..en]` modulo all `ei^n`.
///
/// Terms are packed exponent vectors (8 bits per variable), sorted and
/// distinct; every exponent is at most `n - 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct FlagElement {
    n: usize,
    bias: u128,
    high: u128,
    terms: Vec<u128>,
}

impl FlagElement {
    pub fn zero(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_FLAG_N {
            return Err(Error::usage(format!(
                "flag computations need 1 ≤ n ≤ {MAX_FLAG_N}, got n = {n}"
            )));
        }
        let mut bias = 0u128;
        let mut high = 0u128;
        for i in 0..n {
            bias |= ((128 - n) as u128) << (FIELD as usize * i);
            high |= 0x80u128 << (FIELD as usize * i);
        }
        Ok(FlagElement {
            n,
            bias,
            high,
            terms: Vec::new(),
        })
    }

    pub fn one(n: usize) -> Result<Self> {
        let mut x = Self::zero(n)?;
        x.terms.push(0);
        Ok(x)
    }

    /// The monomial `e^exps`, or zero if some exponent is at least `n`.
    pub fn monomial(n: usize, exps: &[u16]) -> Result<Self> {
        let mut x = Self::zero(n)?;
        if exps.len() != n {
            return Err(Error::usage(format!(
                "exponent vector has {} entries, expected {n}",
                exps.len()
            )));
        }
        if exps.iter().all(|&e| (e as usize) < n) {
            x.terms.push(pack(exps));
        }
        Ok(x)
    }

    /// Truncating conversion from a polynomial in `e1..en`.
    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        let n = p.space().len();
        if **p.space() != *VarSpace::line_classes(n) {
            return Err(Error::usage("expected a polynomial in e1..en"));
        }
        let mut set = FxHashSet::default();
        for m in p.terms() {
            if m.exps().iter().all(|&e| (e as usize) < n) {
                set.insert(pack(m.exps()));
            }
        }
        let mut x = Self::zero(n)?;
        x.terms = set.into_iter().collect();
        x.terms.sort_unstable();
        Ok(x)
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let space = VarSpace::line_classes(self.n);
        Polynomial::from_terms(
            &space,
            self.exponent_vectors().map(|e| space.monomial(&e).unwrap()),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn exponent_vectors(&self) -> impl Iterator<Item = Vec<u16>> + '_ {
        self.terms
            .iter()
            .map(|&t| (0..self.n).map(|i| field(t, i)).collect())
    }

    /// Common total degree of all terms; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.iter().map(|&t| self.degree_of(t));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    fn degree_of(&self, t: u128) -> u32 {
        (0..self.n).map(|i| field(t, i) as u32).sum()
    }

    #[inline]
    fn fits(&self, s: u128) -> bool {
        (s + self.bias) & self.high == 0
    }

    fn with_terms(&self, set: FxHashSet<u128>) -> Self {
        let mut terms: Vec<u128> = set.into_iter().collect();
        terms.sort_unstable();
        FlagElement {
            terms,
            ..self.clone_empty()
        }
    }

    fn clone_empty(&self) -> Self {
        FlagElement {
            n: self.n,
            bias: self.bias,
            high: self.high,
            terms: Vec::new(),
        }
    }

    fn check_same(&self, other: &FlagElement) -> Result<()> {
        if self.n != other.n {
            return Err(Error::usage(format!(
                "flag elements over n = {} and n = {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &FlagElement) -> Result<FlagElement> {
        self.check_same(other)?;
        let mut set: FxHashSet<u128> = self.terms.iter().copied().collect();
        for &t in &other.terms {
            if !set.insert(t) {
                set.remove(&t);
            }
        }
        Ok(self.with_terms(set))
    }

    pub fn mul(&self, other: &FlagElement) -> Result<FlagElement> {
        self.check_same(other)?;
        let mut set = FxHashSet::default();
        for &a in &self.terms {
            for &b in &other.terms {
                let s = a + b;
                if self.fits(s) && !set.insert(s) {
                    set.remove(&s);
                }
            }
        }
        Ok(self.with_terms(set))
    }

    /// Squaring is additive in characteristic 2.
    pub fn square(&self) -> FlagElement {
        let mut out = self.clone_empty();
        out.terms = self
            .terms
            .iter()
            .map(|&t| t << 1)
            .filter(|&s| self.fits(s))
            .collect();
        out
    }

    pub fn pow(&self, mut m: u32) -> FlagElement {
        let mut acc = self.clone_empty();
        acc.terms.push(0);
        let mut base = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            m >>= 1;
            if m > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// `e_i` of the variables `vars` (0-based indices).
    pub fn elementary(n: usize, vars: &[usize], i: usize) -> Result<FlagElement> {
        let space = VarSpace::line_classes(n);
        let p = Polynomial::elementary_symmetric(&space, vars, i)?;
        Self::from_polynomial(&p)
    }
}

impl fmt::Debug for FlagElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FlagElement(n={}, {})", self.n, self.to_polynomial())
    }
}

impl fmt::Display for FlagElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_polynomial().fmt(f)
    }
}

/// Image of one variable of `p`'s space under `π*`.
fn variable_image(space: &VarSpace, var: usize, k: usize, n: usize) -> Result<FlagElement> {
    let name = space.name(var);
    let index = |prefix: &str| {
        name.strip_prefix(prefix)
            .filter(|r| !r.starts_with('0'))
            .and_then(|r| r.parse::<usize>().ok())
    };
    if let Some(j) = index("wb") {
        if (1..=n - k).contains(&j) {
            return FlagElement::elementary(n, &(k..n).collect::<Vec<_>>(), j);
        }
    } else if let Some(i) = index("w") {
        if (1..=k).contains(&i) {
            return FlagElement::elementary(n, &(0..k).collect::<Vec<_>>(), i);
        }
    }
    Err(Error::usage(format!(
        "variable {name} is not a class of G_{k}(R^{n})"
    )))
}

/// `start · π*(p)`, truncated.
fn pi_star_times(p: &Polynomial, k: usize, n: usize, start: &FlagElement) -> Result<FlagElement> {
    if k > n {
        return Err(Error::usage(format!("k = {k} exceeds n = {n}")));
    }
    let space = p.space();
    let images: Vec<FlagElement> = (0..space.len())
        .map(|v| variable_image(space, v, k, n))
        .collect::<Result<_>>()?;
    let mut powers: FxHashMap<(usize, u16), FlagElement> = FxHashMap::default();
    let mut out = FlagElement::zero(n)?;
    for m in p.terms() {
        let mut acc = start.clone();
        for (v, &e) in m.exps().iter().enumerate() {
            if e == 0 || acc.is_zero() {
                continue;
            }
            let pw = powers
                .entry((v, e))
                .or_insert_with(|| images[v].pow(e as u32));
            acc = acc.mul(pw)?;
        }
        out = out.add(&acc)?;
    }
    Ok(out)
}

/// `π*(p)` for `p` in `w1..wk` and optionally `wb1..wb(n-k)`.
pub fn pi_star(p: &Polynomial, k: usize, n: usize) -> Result<FlagElement> {
    pi_star_times(p, k, n, &FlagElement::one(n)?)
}

/// Evaluation on the fundamental class; `x` must be zero or homogeneous of
/// degree `n(n-1)/2`.
pub fn top_eval(x: &FlagElement) -> Result<bool> {
    let n = x.n;
    let top = (n * (n - 1) / 2) as u32;
    let mut parity = false;
    for &t in &x.terms {
        if x.degree_of(t) != top {
            return Err(Error::usage(format!(
                "top evaluation needs degree {top}, found a term of degree {}",
                x.degree_of(t)
            )));
        }
        parity ^= is_permutation(t, n);
    }
    Ok(parity)
}

fn is_permutation(t: u128, n: usize) -> bool {
    let mut seen = 0u32;
    for i in 0..n {
        seen |= 1 << field(t, i);
    }
    seen == (1u32 << n) - 1
}

/// Exponents of `e1^{k-1}⋯e_{k-1} · e_{k+1}^{n-k-1}⋯e_{n-1}`.
pub fn fixed_multiplier(k: usize, n: usize) -> Vec<u16> {
    (0..n)
        .map(|i| if i < k { k - 1 - i } else { n - 1 - i } as u16)
        .collect()
}

/// Multiplier and surviving permutation monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagCertificate {
    /// `m` with `m_i ≤ n-1-i`, lexicographically greatest among successes.
    pub multiplier: Vec<u16>,
    /// Lexicographically greatest permutation exponent vector in `y · e^m`.
    pub permutation: Vec<u16>,
}

impl FlagCertificate {
    pub fn multiplier_text(&self) -> String {
        format_e(&self.multiplier)
    }

    pub fn permutation_text(&self) -> String {
        format_e(&self.permutation)
    }
}

fn format_e(exps: &[u16]) -> String {
    let space: Arc<VarSpace> = VarSpace::line_classes(exps.len());
    let m: Monomial = space.monomial(exps).unwrap();
    space.format_monomial(&m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagVerdict {
    pub nonzero: bool,
    pub certificate: Option<FlagCertificate>,
}

/// Decides `p ≠ 0` in `H*(G_k(R^n))` through the flag manifold.
pub fn grassmann_nonzero_via_flag(p: &Polynomial, k: usize, n: usize) -> Result<FlagVerdict> {
    grassmann_nonzero_via_flag_capped(p, k, n, DEFAULT_NODE_CAP)
}

fn check_grassmann_class(p: &Polynomial, k: usize, n: usize) -> Result<()> {
    if k > n {
        return Err(Error::usage(format!("k = {k} exceeds n = {n}")));
    }
    if **p.space() != *VarSpace::stiefel_whitney(k) {
        return Err(Error::usage(format!("expected a polynomial in w1..w{k}")));
    }
    if !p.is_homogeneous() {
        return Err(Error::usage("the flag test needs a homogeneous class"));
    }
    let dim = (k * (n - k)) as u32;
    if p.degree().is_some_and(|d| d > dim) {
        return Err(Error::usage(format!(
            "degree {} exceeds dim G_{k}(R^{n}) = {dim}",
            p.degree().unwrap()
        )));
    }
    Ok(())
}

/// The element `y` whose non-vanishing in the flag ring is equivalent to
/// `p ≠ 0`.
pub fn lifted_class(p: &Polynomial, k: usize, n: usize) -> Result<FlagElement> {
    check_grassmann_class(p, k, n)?;
    let start = FlagElement::monomial(n, &fixed_multiplier(k, n))?;
    pi_star_times(p, k, n, &start)
}

/// Evaluation of top-degree monomials of `G_k(R^n)` on the fundamental
/// class, computed in the flag ring and memoized.
#[derive(Debug)]
pub struct TopEvaluator {
    k: usize,
    n: usize,
    dim: u32,
    space: Arc<VarSpace>,
    cache: FxHashMap<Vec<u16>, bool>,
}

impl TopEvaluator {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k > n || n > MAX_FLAG_N || n == 0 {
            return Err(Error::usage(format!(
                "flag evaluation needs k ≤ n ≤ {MAX_FLAG_N}, got k = {k}, n = {n}"
            )));
        }
        Ok(TopEvaluator {
            k,
            n,
            dim: (k * (n - k)) as u32,
            space: VarSpace::stiefel_whitney(k),
            cache: FxHashMap::default(),
        })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// `⟨w^exps, [G_k(R^n)]⟩`; zero outside the top degree.
    pub fn eval(&mut self, exps: &[u16]) -> Result<bool> {
        if self.space.degree(exps)? != self.dim {
            return Ok(false);
        }
        if let Some(&v) = self.cache.get(exps) {
            return Ok(v);
        }
        let p = Polynomial::from_exps(&self.space, exps)?;
        let y = lifted_class(&p, self.k, self.n)?;
        let v = top_eval(&y)?;
        self.cache.insert(exps.to_vec(), v);
        Ok(v)
    }
}

/// `top_eval(y · e^m)` for a caller-chosen multiplier.
pub fn multiplier_certifies(p: &Polynomial, k: usize, n: usize, m: &[u16]) -> Result<bool> {
    let y = lifted_class(p, k, n)?;
    let top = (n * (n - 1) / 2) as u32;
    let deg = y.homogeneous_degree();
    if deg.is_some_and(|d| d + m.iter().map(|&e| e as u32).sum::<u32>() != top) {
        return Ok(false);
    }
    top_eval(&y.mul(&FlagElement::monomial(n, m)?)?)
}

pub fn grassmann_nonzero_via_flag_capped(
    p: &Polynomial,
    k: usize,
    n: usize,
    node_cap: u64,
) -> Result<FlagVerdict> {
    let y = lifted_class(p, k, n)?;
    if y.is_zero() {
        return Ok(FlagVerdict {
            nonzero: false,
            certificate: None,
        });
    }
    let mut search = Search {
        n,
        nodes: 0,
        cap: node_cap,
        parity: FxHashMap::default(),
        used: 0,
        sigma: [0; MAX_FLAG_N],
        t: [0; MAX_FLAG_N],
    };
    for &t in &y.terms {
        for i in 0..n {
            search.t[i] = field(t, i);
        }
        search.descend(n)?;
    }
    let best = search
        .parity
        .iter()
        .filter(|(_, &odd)| odd)
        .map(|(&m, _)| m)
        .max();
    let Some(key) = best else {
        return Ok(FlagVerdict {
            nonzero: false,
            certificate: None,
        });
    };
    let multiplier: Vec<u16> = (0..n).map(|i| nibble(key, i)).collect();
    let shift = pack(&multiplier);
    let permutation = y
        .terms
        .iter()
        .map(|&t| t + shift)
        .filter(|&s| y.fits(s) && is_permutation(s, n))
        .map(|s| (0..n).map(|i| field(s, i)).collect::<Vec<u16>>())
        .max()
        .expect("odd count implies at least one permutation");
    Ok(FlagVerdict {
        nonzero: true,
        certificate: Some(FlagCertificate {
            multiplier,
            permutation,
        }),
    })
}

/// Multipliers are keyed with `m_0` in the highest nibble, so integer order
/// is lexicographic order.
#[inline]
fn nibble(key: u64, i: usize) -> u16 {
    ((key >> (4 * (15 - i))) & 0xf) as u16
}

struct Search {
    n: usize,
    nodes: u64,
    cap: u64,
    parity: FxHashMap<u64, bool>,
    used: u32,
    sigma: [u16; MAX_FLAG_N],
    t: [u16; MAX_FLAG_N],
}

impl Search {
    /// Assigns positions `i-1` down to 0; the last positions have the
    /// tightest ranges.
    fn descend(&mut self, i: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::Infeasible(format!(
                "flag multiplier search exceeded {} nodes",
                self.cap
            )));
        }
        if i == 0 {
            let mut key = 0u64;
            for j in 0..self.n {
                key |= ((self.sigma[j] - self.t[j]) as u64) << (4 * (15 - j));
            }
            *self.parity.entry(key).or_insert(false) ^= true;
            return Ok(());
        }
        let pos = i - 1;
        let lo = self.t[pos] as usize;
        let hi = (lo + self.n - 1 - pos).min(self.n - 1);
        for v in lo..=hi {
            if self.used & (1 << v) != 0 {
                continue;
            }
            self.used |= 1 << v;
            self.sigma[pos] = v as u16;
            self.descend(pos)?;
            self.used &= !(1 << v);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(k: usize, s: &str) -> Polynomial {
        Polynomial::parse(&VarSpace::stiefel_whitney(k), s).unwrap()
    }

    #[test]
    fn pi_star_examples() {
        let x = pi_star(&w(2, "w2"), 2, 4).unwrap();
        assert_eq!(x.to_string(), "e1*e2");
        let space = VarSpace::with_duals(2, 2);
        let p = Polynomial::parse(&space, "w1 + wb1").unwrap();
        let x = pi_star(&p, 2, 4).unwrap();
        let e = VarSpace::line_classes(4);
        assert_eq!(
            x.to_polynomial(),
            Polynomial::parse(&e, "e1 + e2 + e3 + e4").unwrap()
        );
        let x = pi_star(&w(3, "w1^8"), 3, 12).unwrap();
        let e = VarSpace::line_classes(12);
        assert_eq!(
            x.to_polynomial(),
            Polynomial::parse(&e, "e1^8 + e2^8 + e3^8").unwrap()
        );
    }

    #[test]
    fn out_of_range_variables() {
        let space = VarSpace::with_duals(2, 3);
        let p = Polynomial::parse(&space, "wb3").unwrap();
        assert!(pi_star(&p, 2, 4).is_err());
        assert!(pi_star(&w(3, "w3"), 2, 4).is_err());
    }

    #[test]
    fn truncation_drops_high_powers() {
        let x = FlagElement::monomial(3, &[3, 0, 0]).unwrap();
        assert!(x.is_zero());
        let e1 = FlagElement::monomial(3, &[1, 0, 0]).unwrap();
        assert!(e1.pow(3).is_zero());
        assert_eq!(e1.pow(2).len(), 1);
    }

    #[test]
    fn top_evaluation() {
        let x = FlagElement::monomial(2, &[0, 1]).unwrap();
        assert!(top_eval(&x).unwrap());
        let x = FlagElement::monomial(3, &[0, 1, 2]).unwrap();
        assert!(top_eval(&x).unwrap());
        let x = FlagElement::monomial(3, &[1, 1, 1]).unwrap();
        assert!(!top_eval(&x).unwrap());
        let x = FlagElement::monomial(2, &[1, 1]).unwrap();
        assert!(matches!(top_eval(&x), Err(Error::Usage(_))));
    }

    #[test]
    fn defining_relation_maps_to_zero() {
        // π*(w · w̄) = Π (1 + ei) = 1 modulo symmetric functions; here checked
        // degreewise on the polynomial level before reduction.
        let (k, n) = (2, 5);
        let space = VarSpace::with_duals(k, n - k);
        for d in 1..=n as u32 {
            let mut rel = Polynomial::zero(&space);
            for i in 0..=k.min(d as usize) {
                let j = d as usize - i;
                if j > n - k {
                    continue;
                }
                let a = if i == 0 { "1".into() } else { format!("w{i}") };
                let b = if j == 0 { "1".into() } else { format!("wb{j}") };
                rel = rel
                    .add(&Polynomial::parse(&space, &format!("{a}*{b}")).unwrap())
                    .unwrap();
            }
            let image = pi_star(&rel, k, n).unwrap();
            let sym = FlagElement::elementary(n, &(0..n).collect::<Vec<_>>(), d as usize).unwrap();
            assert_eq!(image, sym, "degree {d}");
        }
    }

    #[test]
    fn certificates() {
        // G2(R^6), s = 2: w1^4 w2 ≠ 0 with the multiplier e1^2 from the proof.
        let p = w(2, "w1^4*w2");
        let v = grassmann_nonzero_via_flag(&p, 2, 6).unwrap();
        assert!(v.nonzero);
        let c = v.certificate.unwrap();
        assert!(multiplier_certifies(&p, 2, 6, &c.multiplier).unwrap());
        assert!(multiplier_certifies(&p, 2, 6, &[2, 0, 0, 0, 0, 0]).unwrap());
        assert!(
            !grassmann_nonzero_via_flag(&w(2, "w1^4*w2^2"), 2, 6)
                .unwrap()
                .nonzero
        );
        assert!(
            !grassmann_nonzero_via_flag(&w(2, "w1^3"), 2, 4)
                .unwrap()
                .nonzero
        );
        assert!(
            grassmann_nonzero_via_flag(&w(3, "w1^4*w2^2"), 3, 9)
                .unwrap()
                .nonzero
        );
    }

    #[test]
    fn node_cap_is_infeasible_not_negative() {
        let p = w(2, "w1");
        let r = grassmann_nonzero_via_flag_capped(&p, 2, 6, 3);
        assert!(matches!(r, Err(Error::Infeasible(_))));
    }
}
