//! `H*(X × X) = H*(X) ⊗ H*(X)` for `X = G_k(R^n)`, zero-divisors and the
//! zero-divisor cup-length.
//!
//! The basic zero-divisors are `z(wi) = wi ⊗ 1 + 1 ⊗ wi`. In characteristic
//! 2, `z(w)^m = Σ_{j ⊆ m} w^j ⊗ w^{m-j}` where `j` runs over the binary
//! submasks of `m`, so a product `Π z(wi)^{mi}` has at most
//! `2^{Σ popcount(mi)}` terms before reduction.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::bits::{BitMatrix, BitVec};
use crate::bounds::rho;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::ring::GrassmannRing;

/// Formal sum of pairs `left ⊗ right` of monomials in `w1..wk`, mod 2.
#[derive(Clone)]
pub struct TensorPolynomial<'r> {
    ring: &'r GrassmannRing,
    terms: BTreeSet<(Monomial, Monomial)>,
}

impl<'r> TensorPolynomial<'r> {
    pub fn zero(ring: &'r GrassmannRing) -> Self {
        TensorPolynomial {
            ring,
            terms: BTreeSet::new(),
        }
    }

    pub fn one(ring: &'r GrassmannRing) -> Self {
        let one = Monomial::one(ring.k());
        Self::pair(ring, one.clone(), one)
    }

    pub fn pair(ring: &'r GrassmannRing, left: Monomial, right: Monomial) -> Self {
        let mut t = Self::zero(ring);
        t.terms.insert((left, right));
        t
    }

    pub fn from_exps(ring: &'r GrassmannRing, left: &[u16], right: &[u16]) -> Result<Self> {
        let s = ring.space();
        Ok(Self::pair(ring, s.monomial(left)?, s.monomial(right)?))
    }

    /// `z(w_i) = w_i ⊗ 1 + 1 ⊗ w_i` for `1 ≤ i ≤ k`.
    pub fn z(ring: &'r GrassmannRing, i: usize) -> Result<Self> {
        if i == 0 || i > ring.k() {
            return Err(Error::usage(format!(
                "generator index {i} outside 1..={}",
                ring.k()
            )));
        }
        let mut e = vec![0u16; ring.k()];
        e[i - 1] = 1;
        let zero = vec![0u16; ring.k()];
        let mut t = Self::from_exps(ring, &e, &zero)?;
        t.toggle((ring.space().monomial(&zero)?, ring.space().monomial(&e)?));
        Ok(t)
    }

    pub fn ring(&self) -> &'r GrassmannRing {
        self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = &(Monomial, Monomial)> {
        self.terms.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn toggle(&mut self, term: (Monomial, Monomial)) {
        if !self.terms.remove(&term) {
            self.terms.insert(term);
        }
    }

    fn check_ring(&self, other: &TensorPolynomial<'_>) -> Result<()> {
        if !std::ptr::eq(self.ring, other.ring) {
            return Err(Error::usage("tensor operands belong to different rings"));
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorPolynomial<'r>) -> Result<Self> {
        self.check_ring(other)?;
        let terms = self
            .terms
            .symmetric_difference(&other.terms)
            .cloned()
            .collect();
        Ok(TensorPolynomial {
            ring: self.ring,
            terms,
        })
    }

    /// `(a1 ⊗ a2)(b1 ⊗ b2) = a1 b1 ⊗ a2 b2`; no signs in characteristic 2.
    pub fn mul(&self, other: &TensorPolynomial<'r>) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = Self::zero(self.ring);
        for (a1, a2) in &self.terms {
            for (b1, b2) in &other.terms {
                out.toggle((a1.mul(b1)?, a2.mul(b2)?));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, m: u32) -> Result<Self> {
        let mut acc = Self::one(self.ring);
        for _ in 0..m {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn reduce(&self) -> Result<ReducedTensor> {
        let mut out = ReducedTensor::default();
        for (l, r) in &self.terms {
            let (Some((dl, vl)), Some((dr, vr))) = (
                self.ring.monomial_nf(l.exps())?,
                self.ring.monomial_nf(r.exps())?,
            ) else {
                continue;
            };
            out.add_outer(self.ring, dl, dr, vl, vr)?;
        }
        out.prune();
        Ok(out)
    }

    pub fn is_nonzero(&self) -> Result<bool> {
        Ok(!self.reduce()?.is_zero())
    }

    /// Image under the diagonal: `Σ left · right`, reduced.
    pub fn delta_star(&self) -> Result<Polynomial> {
        let mut p = Polynomial::zero(self.ring.space());
        for (l, r) in &self.terms {
            p.toggle(l.mul(r)?);
        }
        self.ring.reduce(&p)
    }
}

impl fmt::Display for TensorPolynomial<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let s = self.ring.space();
        for (i, (l, r)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}⊗{}", s.format_monomial(l), s.format_monomial(r))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorPolynomial<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorPolynomial({self})")
    }
}

/// A class of `H*(X) ⊗ H*(X)` in coordinates: for each bidegree
/// `(d1, d2)` a matrix over `basis(d1) × basis(d2)`. Only non-zero blocks
/// are stored after [`ReducedTensor::prune`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReducedTensor {
    pub blocks: BTreeMap<(u32, u32), BitMatrix>,
}

impl ReducedTensor {
    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(BitMatrix::is_zero)
    }

    fn block(&mut self, ring: &GrassmannRing, d1: u32, d2: u32) -> Result<&mut BitMatrix> {
        Ok(match self.blocks.entry((d1, d2)) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => {
                let rows = ring.table(d1)?.basis_len();
                let cols = ring.table(d2)?.basis_len();
                e.insert(BitMatrix::zeros(rows, cols))
            }
        })
    }

    fn add_outer(
        &mut self,
        ring: &GrassmannRing,
        d1: u32,
        d2: u32,
        u: &BitVec,
        v: &BitVec,
    ) -> Result<()> {
        if u.is_zero() || v.is_zero() {
            return Ok(());
        }
        self.block(ring, d1, d2)?.add_outer(u, v);
        Ok(())
    }

    fn prune(&mut self) {
        self.blocks.retain(|_, b| !b.is_zero());
    }

    /// `z(w_i)` in coordinates.
    pub fn z(ring: &GrassmannRing, i: usize) -> Result<Self> {
        TensorPolynomial::z(ring, i)?.reduce()
    }

    pub fn mul(&self, other: &ReducedTensor, ring: &GrassmannRing) -> Result<ReducedTensor> {
        let dim = ring.dim();
        let mut out = ReducedTensor::default();
        for (&(a1, a2), ma) in &self.blocks {
            for (&(b1, b2), mb) in &other.blocks {
                let (d1, d2) = (a1 + b1, a2 + b2);
                if d1 > dim || d2 > dim {
                    continue;
                }
                let (ta1, ta2) = (ring.table(a1)?, ring.table(a2)?);
                let (tb1, tb2) = (ring.table(b1)?, ring.table(b2)?);
                // right products c_j · c'_q, indexed [j][q]
                let right: Vec<Vec<&BitVec>> = (0..ta2.basis_len())
                    .map(|j| {
                        (0..tb2.basis_len())
                            .map(|q| {
                                ring.product_nf(ta2.basis_exps(j), tb2.basis_exps(q))
                                    .map(|o| o.expect("degree ≤ dim").1)
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<_>>()?;
                let cols = ring.table(d2)?.basis_len();
                for i in 0..ma.rows() {
                    let row_a = ma.row(i);
                    if row_a.is_zero() {
                        continue;
                    }
                    for p in 0..mb.rows() {
                        let row_b = mb.row(p);
                        if row_b.is_zero() {
                            continue;
                        }
                        let mut v = BitVec::zeros(cols);
                        for j in row_a.iter_ones() {
                            for q in row_b.iter_ones() {
                                v.xor_assign(right[j][q]);
                            }
                        }
                        if v.is_zero() {
                            continue;
                        }
                        let (_, u) = ring
                            .product_nf(ta1.basis_exps(i), tb1.basis_exps(p))?
                            .expect("degree ≤ dim");
                        out.add_outer(ring, d1, d2, u, &v)?;
                    }
                }
            }
        }
        out.prune();
        Ok(out)
    }

    /// Coefficient of the top class `[X] ⊗ [X]` after multiplying by the
    /// basis pair `(y1, y2)` in bidegree `(dim - d1, dim - d2)`.
    fn top_pairing(&self, ring: &GrassmannRing) -> Result<Option<(u32, u32, usize, usize)>> {
        for (&(d1, d2), b) in self.blocks.iter().rev() {
            let p1 = ring.pairing(d1)?;
            let p2 = ring.pairing(d2)?;
            let c = p1.transpose().mul(b).mul(&p2);
            for r in 0..c.rows() {
                if let Some(col) = c.row(r).first_one() {
                    return Ok(Some((ring.dim() - d1, ring.dim() - d2, r, col)));
                }
            }
        }
        Ok(None)
    }
}

/// Largest `m` with `z(w_i)^m ≠ 0`, by repeated multiplication in
/// coordinates.
pub fn height_z(ring: &GrassmannRing, i: usize) -> Result<u32> {
    let z = ReducedTensor::z(ring, i)?;
    if z.is_zero() {
        return Ok(0);
    }
    let mut cur = z.clone();
    let mut m = 1;
    loop {
        cur = cur.mul(&z, ring)?;
        if cur.is_zero() {
            return Ok(m);
        }
        m += 1;
    }
}

/// `Π z(w_i)^{m_i}` in coordinates, expanded through binary submasks with
/// pruning of vanishing partial monomials.
pub fn zd_product(ring: &GrassmannRing, m: &[u16]) -> Result<ReducedTensor> {
    if m.len() != ring.k() {
        return Err(Error::usage(format!(
            "zero-divisor exponent vector has {} entries, ring has {} generators",
            m.len(),
            ring.k()
        )));
    }
    let mut factors: Vec<(usize, u16, u32)> = Vec::new();
    for (i, &mi) in m.iter().enumerate() {
        for b in 0..16 {
            if mi >> b & 1 == 1 {
                factors.push((i, 1 << b, (i as u32 + 1) << b));
            }
        }
    }
    factors.sort_by(|a, b| b.2.cmp(&a.2).then(a.0.cmp(&b.0)));
    let total: u32 = factors.iter().map(|f| f.2).sum();
    let mut out = ReducedTensor::default();
    if total > 2 * ring.dim() {
        return Ok(out);
    }
    let mut remaining = vec![0u32; factors.len() + 1];
    for i in (0..factors.len()).rev() {
        remaining[i] = remaining[i + 1] + factors[i].2;
    }
    let mut walk = Walk {
        ring,
        factors: &factors,
        remaining: &remaining,
        left: vec![0; ring.k()],
        right: vec![0; ring.k()],
        out: &mut out,
    };
    walk.go(0, 0, 0)?;
    out.prune();
    Ok(out)
}

struct Walk<'a> {
    ring: &'a GrassmannRing,
    factors: &'a [(usize, u16, u32)],
    remaining: &'a [u32],
    left: Vec<u16>,
    right: Vec<u16>,
    out: &'a mut ReducedTensor,
}

impl Walk<'_> {
    fn go(&mut self, f: usize, dl: u32, dr: u32) -> Result<()> {
        let dim = self.ring.dim();
        if f == self.factors.len() {
            let u = self.ring.nf_in_degree(dl, &self.left)?;
            let v = self.ring.nf_in_degree(dr, &self.right)?;
            return self.out.add_outer(self.ring, dl, dr, u, v);
        }
        let (i, e, d) = self.factors[f];
        let rest = self.remaining[f + 1];
        // each side ends at most at dim
        if dl + d <= dim && (dim - dl - d) + (dim - dr) >= rest {
            self.left[i] += e;
            if self.ring.nf_in_degree(dl + d, &self.left)?.is_zero() {
                self.left[i] -= e;
            } else {
                self.go(f + 1, dl + d, dr)?;
                self.left[i] -= e;
            }
        }
        if dr + d <= dim && (dim - dl) + (dim - dr - d) >= rest {
            self.right[i] += e;
            if !self.ring.nf_in_degree(dr + d, &self.right)?.is_zero() {
                self.go(f + 1, dl, dr + d)?;
            }
            self.right[i] -= e;
        }
        Ok(())
    }
}

pub fn zd_product_is_nonzero(ring: &GrassmannRing, m: &[u16]) -> Result<bool> {
    Ok(!zd_product(ring, m)?.is_zero())
}

/// Decides `Π z(w_i)^{m_i} ≠ 0` in `H*(G_k(R^n))^{⊗2}` without the
/// normal-form tables.
///
/// By Poincaré duality on `X × X` a class `M` vanishes iff
/// `⟨M · (a ⊗ b), [X × X]⟩ = 0` for all monomials `a`, `b`; each
/// evaluation on `[X]` goes through the flag manifold.
pub fn flag_zd_product_is_nonzero(k: usize, n: usize, m: &[u16]) -> Result<bool> {
    use crate::flag::TopEvaluator;
    use crate::ring::monomials_of_degree;
    use rustc_hash::FxHashSet;

    if m.len() != k {
        return Err(Error::usage("exponent vector length differs from k"));
    }
    let mut ev = TopEvaluator::new(k, n)?;
    let dim = ev.dim();
    let weight = |e: &[u16]| -> u32 {
        e.iter()
            .enumerate()
            .map(|(i, &x)| (i as u32 + 1) * x as u32)
            .sum()
    };
    // expansion through binary submasks, collected mod 2
    let mut terms: FxHashSet<(Vec<u16>, Vec<u16>)> = FxHashSet::default();
    let masks: Vec<Vec<u16>> = m
        .iter()
        .map(|&mi| (0..=mi).filter(|j| j & mi == *j).collect())
        .collect();
    let mut idx = vec![0usize; k];
    'outer: loop {
        let left: Vec<u16> = (0..k).map(|i| masks[i][idx[i]]).collect();
        let right: Vec<u16> = (0..k).map(|i| m[i] - left[i]).collect();
        if weight(&left) <= dim && weight(&right) <= dim {
            let t = (left, right);
            if !terms.remove(&t) {
                terms.insert(t);
            }
        }
        for i in 0..k {
            idx[i] += 1;
            if idx[i] < masks[i].len() {
                continue 'outer;
            }
            idx[i] = 0;
        }
        break;
    }
    let add = |a: &[u16], b: &[u16]| -> Vec<u16> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    let mut blocks: BTreeMap<u32, BitMatrix> = BTreeMap::new();
    let mut sorted: Vec<_> = terms.into_iter().collect();
    sorted.sort();
    for (l, r) in sorted {
        let (dl, dr) = (weight(&l), weight(&r));
        let rows = monomials_of_degree(k, dim - dl);
        let cols = monomials_of_degree(k, dim - dr);
        let mut u = BitVec::zeros(rows.len());
        for (i, a) in rows.iter().enumerate() {
            if ev.eval(&add(&l, a))? {
                u.set(i, true);
            }
        }
        let mut v = BitVec::zeros(cols.len());
        for (j, b) in cols.iter().enumerate() {
            if ev.eval(&add(&r, b))? {
                v.set(j, true);
            }
        }
        blocks
            .entry(dl)
            .or_insert_with(|| BitMatrix::zeros(rows.len(), cols.len()))
            .add_outer(&u, &v);
    }
    Ok(blocks.values().any(|b| !b.is_zero()))
}

/// A product `Π z(w_i)^{m_i}`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ZeroDivisorMonomial {
    pub m: Vec<u16>,
}

impl ZeroDivisorMonomial {
    pub fn length(&self) -> u32 {
        self.m.iter().map(|&x| x as u32).sum()
    }

    pub fn degree(&self) -> u32 {
        self.m
            .iter()
            .enumerate()
            .map(|(i, &x)| (i as u32 + 1) * x as u32)
            .sum()
    }
}

impl fmt::Display for ZeroDivisorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.m.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "z(w{})", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Result of a zero-divisor cup-length search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zcl {
    pub zcl: u32,
    pub witness: ZeroDivisorMonomial,
    /// Basis pair `(y1, y2)` with `witness · (y1 ⊗ y2)` hitting the top
    /// class; only filled by [`zcl_exact`].
    pub y: Option<(Monomial, Monomial)>,
}

/// `ρ(height(w_i)) - 1` for every generator.
pub fn z_height_caps(ring: &GrassmannRing) -> Result<Vec<u16>> {
    (0..ring.k())
        .map(|i| {
            let h = ring.height_of_generator(i)?;
            Ok((rho(h as u64) - 1) as u16)
        })
        .collect()
}

/// `table[a]` = largest `b` with `z(w_i)^a z(w_j)^b ≠ 0`, or `None` if
/// already `z(w_i)^a = 0`.
fn pair_table(ring: &GrassmannRing, caps: &[u16], i: usize, j: usize) -> Result<Vec<Option<u16>>> {
    let mut out = Vec::with_capacity(caps[i] as usize + 1);
    let mut m = vec![0u16; ring.k()];
    let mut prev = caps[j];
    for a in 0..=caps[i] {
        m[i] = a;
        // products vanish upward, so the bound only shrinks with a
        let mut best = None;
        for b in (0..=prev).rev() {
            m[j] = b;
            if zd_product_is_nonzero(ring, &m)? {
                best = Some(b);
                break;
            }
        }
        out.push(best);
        match best {
            Some(b) => prev = b,
            None => {
                out.resize(caps[i] as usize + 1, None);
                break;
            }
        }
    }
    Ok(out)
}

/// Exponent vectors `m ≤ caps` with `Σ m = len`, `Σ (i+1) m_i ≤ max_deg`,
/// accepted by `keep`, in descending lexicographic order.
fn level_candidates(
    caps: &[u16],
    len: u32,
    max_deg: u32,
    keep: &dyn Fn(&[u16]) -> bool,
) -> Vec<Vec<u16>> {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        caps: &[u16],
        rest_len: u32,
        deg: u32,
        max_deg: u32,
        cur: &mut Vec<u16>,
        keep: &dyn Fn(&[u16]) -> bool,
        out: &mut Vec<Vec<u16>>,
    ) {
        let k = caps.len();
        if i == k {
            if rest_len == 0 && keep(cur) {
                out.push(cur.clone());
            }
            return;
        }
        let later: u32 = caps[i + 1..].iter().map(|&c| c as u32).sum();
        let hi = (caps[i] as u32).min(rest_len);
        let lo = rest_len.saturating_sub(later);
        for a in (lo..=hi).rev() {
            // the cheapest completion puts the rest on the lowest weights
            let d = deg + a * (i as u32 + 1) + rest_len.saturating_sub(a) * (i as u32 + 2);
            if i + 1 < k && d > max_deg {
                continue;
            }
            if i + 1 == k && deg + a * (i as u32 + 1) > max_deg {
                continue;
            }
            cur.push(a as u16);
            rec(
                i + 1,
                caps,
                rest_len - a,
                deg + a * (i as u32 + 1),
                max_deg,
                cur,
                keep,
                out,
            );
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, caps, len, 0, max_deg, &mut Vec::new(), keep, &mut out);
    out
}

/// Longest non-zero product of basic zero-divisors `Π z(w_i)^{m_i}`.
///
/// Lengths are tried downward from `Σ (ρ(height(w_i)) - 1)`; candidates
/// respect those caps, the total-degree bound `2 dim` and pairwise
/// sub-product tables. The witness is the lexicographically greatest
/// success at the winning length.
pub fn zcl_basic(ring: &GrassmannRing) -> Result<Zcl> {
    let k = ring.k();
    let caps = z_height_caps(ring)?;
    let mut tables = vec![vec![Vec::new(); k]; k];
    for (i, row) in tables.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate().skip(i + 1) {
            *slot = pair_table(ring, &caps, i, j)?;
        }
    }
    let keep = |m: &[u16]| {
        (0..k).all(|i| {
            (i + 1..k).all(|j| match tables[i][j][m[i] as usize] {
                Some(b) => m[j] <= b,
                None => false,
            })
        })
    };
    let top: u32 = caps.iter().map(|&c| c as u32).sum();
    for len in (0..=top).rev() {
        let cands = level_candidates(&caps, len, 2 * ring.dim(), &keep);
        let found = cands
            .par_iter()
            .map(|m| zd_product_is_nonzero(ring, m).map(|ok| ok.then_some(m)))
            .find_first(|r| !matches!(r, Ok(None)));
        match found {
            Some(Ok(Some(m))) => {
                return Ok(Zcl {
                    zcl: len,
                    witness: ZeroDivisorMonomial { m: m.clone() },
                    y: None,
                })
            }
            Some(Err(e)) => return Err(e),
            _ => {}
        }
    }
    unreachable!("the empty product 1 ⊗ 1 is non-zero")
}

/// Longest non-zero product of zero-divisors, by ascending closure.
///
/// Non-zero products form a down-set in the exponent lattice, so a vector
/// is tested only when every predecessor `m - e_i` survived; no height caps
/// are used. The returned `y` is a basis pair whose product with the
/// witness reaches the top class of `X × X`.
pub fn zcl_exact(ring: &GrassmannRing) -> Result<Zcl> {
    let k = ring.k();
    let max_deg = 2 * ring.dim();
    let mut level: BTreeSet<Vec<u16>> = BTreeSet::from([vec![0u16; k]]);
    let mut len = 0;
    loop {
        let mut cands: BTreeSet<Vec<u16>> = BTreeSet::new();
        for m in &level {
            for i in 0..k {
                let mut next = m.clone();
                next[i] += 1;
                let deg: u32 = next
                    .iter()
                    .enumerate()
                    .map(|(j, &x)| (j as u32 + 1) * x as u32)
                    .sum();
                if deg > max_deg || cands.contains(&next) {
                    continue;
                }
                let closed = (0..k).all(|j| {
                    next[j] == 0 || {
                        let mut p = next.clone();
                        p[j] -= 1;
                        level.contains(&p)
                    }
                });
                if closed {
                    cands.insert(next);
                }
            }
        }
        let cands: Vec<Vec<u16>> = cands.into_iter().collect();
        let alive: Vec<bool> = cands
            .par_iter()
            .map(|m| zd_product_is_nonzero(ring, m))
            .collect::<Result<_>>()?;
        let next: BTreeSet<Vec<u16>> = cands
            .into_iter()
            .zip(alive)
            .filter_map(|(m, ok)| ok.then_some(m))
            .collect();
        if next.is_empty() {
            break;
        }
        level = next;
        len += 1;
    }
    let witness = level.iter().next_back().unwrap().clone();
    let product = zd_product(ring, &witness)?;
    let (e1, e2, r, c) = product
        .top_pairing(ring)?
        .expect("non-zero classes pair non-trivially with the top class");
    let s = ring.space();
    let y1 = s.monomial(ring.table(e1)?.basis_exps(r))?;
    let y2 = s.monomial(ring.table(e2)?.basis_exps(c))?;
    Ok(Zcl {
        zcl: len,
        witness: ZeroDivisorMonomial { m: witness },
        y: Some((y1, y2)),
    })
}

/// Coordinates on `⊕_{d1 + d2 = d} basis(d1) ⊗ basis(d2)`.
struct Flat {
    offsets: Vec<(u32, u32, usize, usize)>,
    len: usize,
}

impl Flat {
    fn new(ring: &GrassmannRing, d: u32) -> Result<Self> {
        let dim = ring.dim();
        let mut offsets = Vec::new();
        let mut len = 0;
        for d1 in d.saturating_sub(dim)..=d.min(dim) {
            let d2 = d - d1;
            let cols = ring.table(d2)?.basis_len();
            offsets.push((d1, d2, len, cols));
            len += ring.table(d1)?.basis_len() * cols;
        }
        Ok(Flat { offsets, len })
    }

    fn index(&self, d1: u32, i: usize, j: usize) -> usize {
        let (_, _, off, cols) = self
            .offsets
            .iter()
            .find(|o| o.0 == d1)
            .copied()
            .expect("bidegree in range");
        off + i * cols + j
    }
}

/// `(dim Ker Δ*, dim of the ideal (z(w1), …, z(wk)))` in total degree `d`.
pub fn kernel_and_ideal_dims(ring: &GrassmannRing, d: u32) -> Result<(usize, usize)> {
    if d > 2 * ring.dim() {
        return Err(Error::usage(format!(
            "total degree {d} exceeds 2 dim = {}",
            2 * ring.dim()
        )));
    }
    let flat = Flat::new(ring, d)?;
    // Δ* on basis pairs
    let mut delta_rows = Vec::new();
    let target = if d <= ring.dim() {
        ring.table(d)?.basis_len()
    } else {
        0
    };
    for &(d1, d2, _, _) in &flat.offsets {
        let (t1, t2) = (ring.table(d1)?, ring.table(d2)?);
        for i in 0..t1.basis_len() {
            for j in 0..t2.basis_len() {
                let v = ring
                    .product_nf(t1.basis_exps(i), t2.basis_exps(j))?
                    .map(|(_, v)| v.clone())
                    .unwrap_or_else(|| BitVec::zeros(target));
                delta_rows.push(v);
            }
        }
    }
    let kernel = flat.len - crate::bits::rank(delta_rows, target);
    // z(w_g) · (b ⊗ c) for (b, c) in total degree d - g - 1
    let mut ideal_rows = Vec::new();
    for g in 0..ring.k() {
        let w = g as u32 + 1;
        if w > d {
            break;
        }
        let src = Flat::new(ring, d - w)?;
        for &(d1, d2, _, _) in &src.offsets {
            let (t1, t2) = (ring.table(d1)?, ring.table(d2)?);
            for i in 0..t1.basis_len() {
                for j in 0..t2.basis_len() {
                    let mut v = BitVec::zeros(flat.len);
                    let mut bump = |left: bool| -> Result<()> {
                        let (mut a, mut b) = (t1.basis_exps(i).to_vec(), t2.basis_exps(j).to_vec());
                        if left {
                            a[g] += 1;
                        } else {
                            b[g] += 1;
                        }
                        let (da, db) = if left { (d1 + w, d2) } else { (d1, d2 + w) };
                        if da > ring.dim() || db > ring.dim() {
                            return Ok(());
                        }
                        let (na, nb) = (ring.nf_in_degree(da, &a)?, ring.nf_in_degree(db, &b)?);
                        for x in na.iter_ones() {
                            for y in nb.iter_ones() {
                                v.toggle(flat.index(da, x, y));
                            }
                        }
                        Ok(())
                    };
                    bump(true)?;
                    bump(false)?;
                    ideal_rows.push(v);
                }
            }
        }
    }
    let ideal = crate::bits::rank(ideal_rows, flat.len);
    Ok((kernel, ideal))
}

/// Whether `Ker Δ*` coincides with the ideal generated by the `z(wi)` in
/// total degree `d` (the ideal is always contained in the kernel).
pub fn kernel_matches_ideal(ring: &GrassmannRing, d: u32) -> Result<bool> {
    let (k, i) = kernel_and_ideal_dims(ring, d)?;
    Ok(k == i)
}

/// All exponent vectors `m` with `Π z(wi)^{mi} ≠ 0`.
pub fn nonzero_zd_monomials(ring: &GrassmannRing) -> Result<HashSet<Vec<u16>>> {
    let k = ring.k();
    let mut all = HashSet::new();
    let mut frontier = vec![vec![0u16; k]];
    all.insert(vec![0u16; k]);
    while let Some(m) = frontier.pop() {
        for i in 0..k {
            let mut next = m.clone();
            next[i] += 1;
            if all.contains(&next) {
                continue;
            }
            if zd_product_is_nonzero(ring, &next)? {
                all.insert(next.clone());
                frontier.push(next);
            }
        }
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(k: usize, n: usize) -> GrassmannRing {
        GrassmannRing::new(k, n).unwrap()
    }

    #[test]
    fn z_examples() {
        let r = ring(2, 6);
        let z1 = TensorPolynomial::z(&r, 1).unwrap();
        assert_eq!(z1.to_string(), "w1⊗1 + 1⊗w1");
        assert_eq!(z1.mul(&z1).unwrap().to_string(), "w1^2⊗1 + 1⊗w1^2");
        let z2 = TensorPolynomial::z(&r, 2).unwrap();
        assert!(z1.delta_star().unwrap().is_zero());
        assert!(z1.mul(&z2).unwrap().delta_star().unwrap().is_zero());
        let a = TensorPolynomial::from_exps(&r, &[1, 0], &[0, 0]).unwrap();
        let b = TensorPolynomial::from_exps(&r, &[0, 0], &[0, 1]).unwrap();
        assert_eq!(a.mul(&b).unwrap().to_string(), "w1⊗w2");
        assert!(TensorPolynomial::z(&r, 3).is_err());
        let z4 = z1.pow(4).unwrap();
        assert_eq!(z4.to_string(), "w1^4⊗1 + 1⊗w1^4");
    }

    #[test]
    fn products_in_g2_r6() {
        let r = ring(2, 6);
        assert!(zd_product_is_nonzero(&r, &[7, 1]).unwrap());
        assert!(!zd_product_is_nonzero(&r, &[8, 0]).unwrap());
        let z1 = TensorPolynomial::z(&r, 1).unwrap();
        assert!(!z1.pow(8).unwrap().is_nonzero().unwrap());
        assert!(!TensorPolynomial::zero(&r).is_nonzero().unwrap());
    }

    #[test]
    fn fast_product_matches_expansion() {
        let r = ring(2, 5);
        let z1 = TensorPolynomial::z(&r, 1).unwrap();
        let z2 = TensorPolynomial::z(&r, 2).unwrap();
        for a in 0..6u16 {
            for b in 0..5u16 {
                let slow = z1
                    .pow(a as u32)
                    .unwrap()
                    .mul(&z2.pow(b as u32).unwrap())
                    .unwrap();
                assert_eq!(
                    slow.reduce().unwrap(),
                    zd_product(&r, &[a, b]).unwrap(),
                    "{a},{b}"
                );
            }
        }
    }

    #[test]
    fn z_heights() {
        assert_eq!(height_z(&ring(2, 6), 1).unwrap(), 7);
        assert_eq!(height_z(&ring(2, 6), 2).unwrap(), 7);
        assert_eq!(height_z(&ring(1, 3), 1).unwrap(), 3);
    }

    #[test]
    fn zcl_small() {
        let r = ring(2, 4);
        let b = zcl_basic(&r).unwrap();
        assert_eq!((b.zcl, b.witness.m.clone()), (4, vec![3, 1]));
        let e = zcl_exact(&r).unwrap();
        assert_eq!(e.zcl, 4);
        let (y1, y2) = e.y.unwrap();
        // witness · (y1 ⊗ y2) is non-zero
        let mut t = TensorPolynomial::pair(&r, y1, y2).reduce().unwrap();
        t = t.mul(&zd_product(&r, &e.witness.m).unwrap(), &r).unwrap();
        assert!(!t.is_zero());
        let e = zcl_exact(&ring(2, 6)).unwrap();
        assert_eq!((e.zcl, e.witness.m.clone()), (10, vec![6, 4]));
        assert_eq!(zcl_exact(&ring(1, 3)).unwrap().zcl, 3);
    }

    #[test]
    fn products_that_beat_power_of_two_exponents() {
        // z(w1)^6 z(w2)^4 in G2(R6): the terms w1^6 ⊗ w2^4 and w2^4 ⊗ w1^6 survive.
        let r = ring(2, 6);
        assert!(zd_product_is_nonzero(&r, &[6, 4]).unwrap());
        // z(w1)^7 z(w2) in G2(R5) keeps w1 w2 ⊗ w1^6.
        let r = ring(2, 5);
        assert!(zd_product_is_nonzero(&r, &[7, 1]).unwrap());
    }

    #[test]
    fn nonzero_class_can_give_vanishing_zero_divisor_power() {
        // w1^4 w2^4 w3 is non-zero in G3(R8), yet z(w1)^7 z(w2)^7 z(w3) vanishes.
        let r = ring(3, 8);
        assert!(r.monomial_is_nonzero(&[4, 4, 1]).unwrap());
        assert!(!zd_product_is_nonzero(&r, &[7, 7, 1]).unwrap());
    }

    #[test]
    fn ring_and_flag_evaluators_agree() {
        for (k, n, m) in [
            (2, 5, vec![7u16, 1]),
            (2, 6, vec![6, 4]),
            (2, 6, vec![7, 2]),
            (3, 6, vec![3, 3, 1]),
            (3, 8, vec![7, 7, 1]),
        ] {
            let r = ring(k, n);
            assert_eq!(
                zd_product_is_nonzero(&r, &m).unwrap(),
                flag_zd_product_is_nonzero(k, n, &m).unwrap(),
                "({k},{n}) {m:?}"
            );
        }
    }

    #[test]
    fn kernel_is_generated_by_basic_zero_divisors() {
        for (k, n) in [(1, 3), (2, 4)] {
            let r = ring(k, n);
            for d in 0..=2 * r.dim() {
                assert!(kernel_matches_ideal(&r, d).unwrap(), "({k},{n}) degree {d}");
            }
        }
    }
}
