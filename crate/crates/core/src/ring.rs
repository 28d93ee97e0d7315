//! `H*(G_k(R^n); Z/2)` as a graded quotient of `Z/2[w1, …, wk]`.
//!
//! The relation ideal is generated by the dual classes `w̄_j` for
//! `n-k < j ≤ n`, each written as a polynomial in the `wi` through
//! `w · w̄ = 1`. Every degree is reduced independently: the relation rows
//! `m · w̄_j` are brought to reduced echelon form over the space of
//! degree-`d` monomials, the non-pivot monomials form the basis and each
//! monomial gets its normal form as a bit-vector over that basis. Degree
//! tables are built on first use and memoized.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::bits::{BitMatrix, BitVec, Echelon};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, VarSpace};

/// Bound on `k · Σ_{j ≤ n} #monomials(j)`, the work of expanding the dual classes.
const MAX_PRESENTATION_TERMS: u64 = 1 << 22;

/// One degree as read from a cache: all monomials, basis positions and the
/// normal form of every monomial.
pub(crate) type RawTable = (Vec<Box<[u16]>>, Vec<u32>, Vec<BitVec>);

/// Resource caps for ring construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RingLimits {
    /// Largest `rows × cols` relation block reduced in a single degree.
    pub max_block_bits: u64,
}

impl Default for RingLimits {
    fn default() -> Self {
        RingLimits {
            max_block_bits: 1 << 26,
        }
    }
}

/// `w̄_j` as a polynomial in `w1, …, wk`, from `w̄_j = Σ_{i=1}^{min(j,k)} wi · w̄_{j-i}`.
pub fn dual_class(k: usize, j: usize) -> Polynomial {
    dual_classes(k, j).pop().unwrap()
}

/// `[w̄_0, w̄_1, …, w̄_upto]`.
pub fn dual_classes(k: usize, upto: usize) -> Vec<Polynomial> {
    let space = VarSpace::stiefel_whitney(k);
    let gens: Vec<Polynomial> = (0..k)
        .map(|i| Polynomial::var(&space, i).unwrap())
        .collect();
    let mut out = vec![Polynomial::one(&space)];
    for j in 1..=upto {
        let mut acc = Polynomial::zero(&space);
        for i in 1..=j.min(k) {
            let term = gens[i - 1].mul(&out[j - i]).expect("same space");
            acc = acc.add(&term).expect("same space");
        }
        out.push(acc);
    }
    out
}

/// Relation generators `r_j = Σ_{i ≤ k, j-i ≤ n-k} wi · w̄_{j-i}` for
/// `n-k < j ≤ n`: the degree-`j` part of `w · w̄` with `w̄` truncated at
/// `n-k`. They generate the same ideal as `w̄_{n-k+1}, …, w̄_n`.
pub fn relation_classes(k: usize, n: usize) -> Vec<Polynomial> {
    let duals = dual_classes(k, n - k);
    let space = VarSpace::stiefel_whitney(k);
    (n - k + 1..=n)
        .map(|j| {
            let mut acc = Polynomial::zero(&space);
            for i in (j - (n - k))..=k.min(j) {
                let g = Polynomial::var(&space, i - 1).expect("generator");
                acc = acc
                    .add(&g.mul(&duals[j - i]).expect("same space"))
                    .expect("same space");
            }
            acc
        })
        .collect()
}

/// Maps `(k, n)` to the representative with `2k ≤ n`.
///
/// Returns the possibly replaced `k` and whether the complement
/// `G_{n-k}(R^n) ≅ G_k(R^n)` was used.
pub fn standard_form(k: usize, n: usize) -> Result<(usize, bool)> {
    if k > n {
        return Err(Error::usage(format!("k = {k} exceeds n = {n}")));
    }
    if 2 * k > n && k != n {
        Ok((n - k, true))
    } else {
        Ok((k, false))
    }
}

/// Exponent vectors of weighted degree `d` in weights `1..=k`, in
/// descending lexicographic order.
pub fn monomials_of_degree(k: usize, d: u32) -> Vec<Box<[u16]>> {
    fn rec(i: usize, k: usize, rest: u32, cur: &mut Vec<u16>, out: &mut Vec<Box<[u16]>>) {
        if i == k {
            if rest == 0 {
                out.push(cur.as_slice().into());
            }
            return;
        }
        let w = (i + 1) as u32;
        if i + 1 == k {
            if rest.is_multiple_of(w) {
                cur.push((rest / w) as u16);
                out.push(cur.as_slice().into());
                cur.pop();
            }
            return;
        }
        for a in (0..=rest / w).rev() {
            cur.push(a as u16);
            rec(i + 1, k, rest - a * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if d == 0 {
            out.push(Box::from([]));
        }
        return out;
    }
    rec(0, k, d, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Number of exponent vectors of weighted degree `d` in weights `1..=k`.
pub fn count_monomials(k: usize, d: u32) -> u64 {
    // partitions of d into parts of size at most k
    let d = d as usize;
    let mut ways = vec![0u64; d + 1];
    ways[0] = 1;
    for part in 1..=k {
        for s in part..=d {
            ways[s] = ways[s].saturating_add(ways[s - part]);
        }
    }
    ways[d]
}

/// Normal-form data for one degree.
#[derive(Debug)]
pub struct DegreeTable {
    degree: u32,
    monomials: Vec<Box<[u16]>>,
    codes: FxHashMap<u64, u32>,
    basis: Vec<u32>,
    nf: Vec<BitVec>,
}

impl DegreeTable {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// All monomials of this degree, descending.
    pub fn monomials(&self) -> &[Box<[u16]>] {
        &self.monomials
    }

    pub fn basis_len(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_exps(&self, i: usize) -> &[u16] {
        &self.monomials[self.basis[i] as usize]
    }

    /// Position of a monomial (by code) within this degree.
    #[inline]
    pub fn position(&self, code: u64) -> Option<usize> {
        self.codes.get(&code).map(|&p| p as usize)
    }

    /// Normal form of the monomial at `pos` over the basis.
    #[inline]
    pub fn nf(&self, pos: usize) -> &BitVec {
        &self.nf[pos]
    }
}

/// A class written in the basis, degree by degree; only non-zero
/// components are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalForm {
    pub components: BTreeMap<u32, BitVec>,
}

impl NormalForm {
    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, d: u32) -> Option<&BitVec> {
        self.components.get(&d)
    }

    fn add_component(&mut self, d: u32, v: &BitVec) {
        use std::collections::btree_map::Entry;
        match self.components.entry(d) {
            Entry::Vacant(e) => {
                if !v.is_zero() {
                    e.insert(v.clone());
                }
            }
            Entry::Occupied(mut e) => {
                e.get_mut().xor_assign(v);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

/// Result of the cup-length search: the longest non-zero generator
/// monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupLength {
    pub length: u32,
    pub witness: Vec<u16>,
}

#[derive(Debug)]
pub struct GrassmannRing {
    k: usize,
    n: usize,
    dim: u32,
    space: Arc<VarSpace>,
    strides: Vec<u64>,
    relations: Vec<Polynomial>,
    limits: RingLimits,
    tables: Vec<OnceLock<DegreeTable>>,
}

impl GrassmannRing {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        Self::with_limits(k, n, RingLimits::default())
    }

    pub fn with_limits(k: usize, n: usize, limits: RingLimits) -> Result<Self> {
        if k > n {
            return Err(Error::usage(format!("k = {k} exceeds n = {n}")));
        }
        if 2 * k > n && k != n {
            return Err(Error::usage(format!(
                "G_{k}(R^{n}) has k > n/2; compute with the complement ({}, {n})",
                n - k
            )));
        }
        if limits.max_block_bits == 0 {
            return Err(Error::usage("resource cap must be positive"));
        }
        let dim = u32::try_from(k * (n - k))
            .ok()
            .filter(|&d| d < u16::MAX as u32)
            .ok_or_else(|| Error::Infeasible(format!("dimension of G_{k}(R^{n}) too large")))?;
        let presentation: u64 = (1..=n as u32)
            .filter(|_| dim > 0)
            .map(|j| count_monomials(k, j))
            .sum();
        if presentation.saturating_mul(k as u64) > MAX_PRESENTATION_TERMS {
            return Err(Error::Infeasible(format!(
                "presentation of G_{k}(R^{n}) has {presentation} dual-class terms"
            )));
        }
        let mut strides = Vec::with_capacity(k);
        let mut acc: u64 = 1;
        for i in 1..=k as u64 {
            strides.push(acc);
            acc = acc.checked_mul(dim as u64 / i + 1).ok_or_else(|| {
                Error::Infeasible(format!("monomial codes overflow for G_{k}(R^{n})"))
            })?;
        }
        let relations = if dim == 0 {
            Vec::new()
        } else {
            relation_classes(k, n)
        };
        Ok(GrassmannRing {
            k,
            n,
            dim,
            space: VarSpace::stiefel_whitney(k),
            strides,
            relations,
            limits,
            tables: (0..=dim).map(|_| OnceLock::new()).collect(),
        })
    }

    pub(crate) fn from_tables(
        k: usize,
        n: usize,
        limits: RingLimits,
        tables: Vec<RawTable>,
    ) -> Result<Self> {
        let ring = Self::with_limits(k, n, limits)?;
        if tables.len() != ring.tables.len() {
            return Err(Error::Corrupt(format!(
                "expected {} degrees, found {}",
                ring.tables.len(),
                tables.len()
            )));
        }
        for (d, (monomials, basis, nf)) in tables.into_iter().enumerate() {
            let codes = monomials
                .iter()
                .enumerate()
                .map(|(p, m)| (ring.code(m), p as u32))
                .collect();
            let table = DegreeTable {
                degree: d as u32,
                monomials,
                codes,
                basis,
                nf,
            };
            let _ = ring.tables[d].set(table);
        }
        Ok(ring)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Top cohomological degree `k(n-k)`.
    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn limits(&self) -> RingLimits {
        self.limits
    }

    /// The relation generators, see [`relation_classes`].
    pub fn relation_generators(&self) -> &[Polynomial] {
        &self.relations
    }

    /// Mixed-radix code of an exponent vector of degree at most `dim`.
    #[inline]
    pub fn code(&self, exps: &[u16]) -> u64 {
        exps.iter()
            .zip(&self.strides)
            .map(|(&e, &s)| e as u64 * s)
            .sum()
    }

    #[inline]
    pub fn strides(&self) -> &[u64] {
        &self.strides
    }

    pub fn table(&self, d: u32) -> Result<&DegreeTable> {
        let slot = self
            .tables
            .get(d as usize)
            .ok_or_else(|| Error::usage(format!("degree {d} exceeds top degree {}", self.dim)))?;
        if let Some(t) = slot.get() {
            return Ok(t);
        }
        let built = self.build_degree(d)?;
        let _ = slot.set(built);
        Ok(slot.get().unwrap())
    }

    /// Builds every degree table (in parallel).
    pub fn ensure_all(&self) -> Result<()> {
        (0..=self.dim)
            .into_par_iter()
            .try_for_each(|d| self.table(d).map(|_| ()))
    }

    /// All degree tables, building them if needed.
    pub fn tables(&self) -> Result<Vec<&DegreeTable>> {
        self.ensure_all()?;
        (0..=self.dim).map(|d| self.table(d)).collect()
    }

    fn build_degree(&self, d: u32) -> Result<DegreeTable> {
        let monomials = monomials_of_degree(self.k, d);
        let cols = monomials.len();
        let row_count: u64 = self
            .relations
            .iter()
            .filter_map(|r| r.degree())
            .filter(|&j| j <= d)
            .map(|j| count_monomials(self.k, d - j))
            .sum();
        let bits = row_count.saturating_mul(cols as u64);
        if bits > self.limits.max_block_bits {
            return Err(Error::Infeasible(format!(
                "degree {d} of G_{}(R^{}) needs a {row_count}x{cols} relation block \
                 ({bits} bits, cap {})",
                self.k, self.n, self.limits.max_block_bits
            )));
        }
        let codes: FxHashMap<u64, u32> = monomials
            .iter()
            .enumerate()
            .map(|(p, m)| (self.code(m), p as u32))
            .collect();
        let mut rows = Vec::with_capacity(row_count as usize);
        for rel in &self.relations {
            let j = rel.degree().expect("relations are non-zero");
            if j > d {
                continue;
            }
            let rel_codes: Vec<u64> = rel.terms().map(|t| self.code(t.exps())).collect();
            for m in monomials_of_degree(self.k, d - j) {
                let base = self.code(&m);
                let mut row = BitVec::zeros(cols);
                for &c in &rel_codes {
                    row.toggle(codes[&(base + c)] as usize);
                }
                rows.push(row);
            }
        }
        let ech = Echelon::reduce(rows, cols);
        let mut is_pivot = vec![false; cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let basis: Vec<u32> = (0..cols as u32)
            .filter(|&c| !is_pivot[c as usize])
            .collect();
        let mut basis_pos = vec![usize::MAX; cols];
        for (i, &c) in basis.iter().enumerate() {
            basis_pos[c as usize] = i;
        }
        let mut nf = vec![BitVec::zeros(basis.len()); cols];
        for (i, &c) in basis.iter().enumerate() {
            nf[c as usize].set(i, true);
        }
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            // row = m_p + Σ (non-pivot columns) = 0 in the quotient
            let v = &mut nf[p];
            for c in row.iter_ones() {
                if c != p {
                    v.toggle(basis_pos[c]);
                }
            }
        }
        Ok(DegreeTable {
            degree: d,
            monomials,
            codes,
            basis,
            nf,
        })
    }

    /// Betti numbers `dim H^d`, `0 ≤ d ≤ dim`.
    pub fn betti(&self) -> Result<Vec<usize>> {
        (0..=self.dim)
            .map(|d| self.table(d).map(DegreeTable::basis_len))
            .collect()
    }

    pub fn basis(&self, d: u32) -> Result<Vec<Monomial>> {
        let t = self.table(d)?;
        (0..t.basis_len())
            .map(|i| self.space.monomial(t.basis_exps(i)))
            .collect()
    }

    fn check_exps(&self, exps: &[u16]) -> Result<u32> {
        if exps.len() != self.k {
            return Err(Error::usage(format!(
                "exponent vector has {} entries, ring has {} generators",
                exps.len(),
                self.k
            )));
        }
        self.space.degree(exps)
    }

    /// Normal form of a single monomial; `None` if its degree exceeds `dim`.
    pub fn monomial_nf(&self, exps: &[u16]) -> Result<Option<(u32, &BitVec)>> {
        let d = self.check_exps(exps)?;
        if d > self.dim {
            return Ok(None);
        }
        let t = self.table(d)?;
        let pos = t
            .position(self.code(exps))
            .expect("monomial of this degree");
        Ok(Some((d, t.nf(pos))))
    }

    pub fn monomial_is_nonzero(&self, exps: &[u16]) -> Result<bool> {
        Ok(self.monomial_nf(exps)?.is_some_and(|(_, v)| !v.is_zero()))
    }

    /// Normal form of a monomial whose degree `d ≤ dim` the caller already
    /// knows.
    #[inline]
    pub fn nf_in_degree(&self, d: u32, exps: &[u16]) -> Result<&BitVec> {
        let t = self.table(d)?;
        Ok(t.nf(t.position(self.code(exps)).expect("degree matches")))
    }

    /// Normal form of the product of two monomials.
    pub fn product_nf(&self, a: &[u16], b: &[u16]) -> Result<Option<(u32, &BitVec)>> {
        let sum: Vec<u16> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.monomial_nf(&sum)
    }

    fn check_poly(&self, p: &Polynomial) -> Result<()> {
        if **p.space() != *self.space {
            return Err(Error::usage(format!(
                "polynomial is not in the variables w1..w{}",
                self.k
            )));
        }
        Ok(())
    }

    /// Linear; monomials of degree above `dim` map to zero.
    pub fn normal_form(&self, p: &Polynomial) -> Result<NormalForm> {
        self.check_poly(p)?;
        let mut out = NormalForm::default();
        for m in p.terms() {
            if let Some((d, v)) = self.monomial_nf(m.exps())? {
                out.add_component(d, v);
            }
        }
        Ok(out)
    }

    pub fn is_nonzero(&self, p: &Polynomial) -> Result<bool> {
        Ok(!self.normal_form(p)?.is_zero())
    }

    /// The canonical representative: a sum of basis monomials.
    pub fn to_polynomial(&self, nf: &NormalForm) -> Result<Polynomial> {
        let mut out = Polynomial::zero(&self.space);
        for (&d, v) in &nf.components {
            let t = self.table(d)?;
            for i in v.iter_ones() {
                out.toggle(self.space.monomial(t.basis_exps(i))?);
            }
        }
        Ok(out)
    }

    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial> {
        self.to_polynomial(&self.normal_form(p)?)
    }

    pub fn mul_nf(&self, a: &NormalForm, b: &NormalForm) -> Result<NormalForm> {
        let mut out = NormalForm::default();
        let mut exps = vec![0u16; self.k];
        for (&da, va) in &a.components {
            let ta = self.table(da)?;
            for (&db, vb) in &b.components {
                let d = da + db;
                if d > self.dim {
                    continue;
                }
                let tb = self.table(db)?;
                let t = self.table(d)?;
                let mut acc = BitVec::zeros(t.basis_len());
                for i in va.iter_ones() {
                    let x = ta.basis_exps(i);
                    for j in vb.iter_ones() {
                        let y = tb.basis_exps(j);
                        for (e, (&p, &q)) in exps.iter_mut().zip(x.iter().zip(y)) {
                            *e = p + q;
                        }
                        acc.xor_assign(t.nf(t.position(self.code(&exps)).unwrap()));
                    }
                }
                out.add_component(d, &acc);
            }
        }
        Ok(out)
    }

    /// Largest `m` with `p^m ≠ 0`; zero if `p` itself vanishes.
    pub fn height(&self, p: &Polynomial) -> Result<u32> {
        self.check_poly(p)?;
        if !p.is_homogeneous() || p.degree().is_none_or(|d| d == 0) {
            return Err(Error::usage(
                "height is defined for homogeneous classes of positive degree",
            ));
        }
        let base = self.normal_form(p)?;
        if base.is_zero() {
            return Ok(0);
        }
        let mut cur = base.clone();
        let mut m = 1;
        loop {
            cur = self.mul_nf(&cur, &base)?;
            if cur.is_zero() {
                return Ok(m);
            }
            m += 1;
        }
    }

    pub fn height_of_generator(&self, i: usize) -> Result<u32> {
        let g = Polynomial::var(&self.space, i)
            .map_err(|_| Error::usage(format!("generator index w{} out of range", i + 1)))?;
        self.height(&g)
    }

    /// Longest non-zero monomial `w1^a1 ⋯ wk^ak` (by `Σ ai`).
    ///
    /// Since the ring is generated by the `wi`, this equals the cup-length.
    /// Ties go to the lexicographically greatest exponent vector.
    pub fn max_monomial_cup_length(&self) -> Result<CupLength> {
        self.ensure_all()?;
        let mut best = CupLength {
            length: 0,
            witness: vec![0; self.k],
        };
        let mut cur = vec![0u16; self.k];
        self.cup_search(0, 0, &mut cur, &mut best)?;
        Ok(best)
    }

    fn cup_search(
        &self,
        i: usize,
        deg: u32,
        cur: &mut Vec<u16>,
        best: &mut CupLength,
    ) -> Result<()> {
        if i == self.k {
            let len: u32 = cur.iter().map(|&e| e as u32).sum();
            if len > best.length || (len == best.length && *cur > best.witness) {
                best.length = len;
                best.witness = cur.clone();
            }
            return Ok(());
        }
        let w = (i + 1) as u32;
        let mut a = 0u16;
        loop {
            // prefix with later exponents zero; vanishing is inherited by multiples
            if a > 0 && !self.monomial_is_nonzero(cur_with(cur, i, a).as_slice())? {
                break;
            }
            cur[i] = a;
            self.cup_search(i + 1, deg + a as u32 * w, cur, best)?;
            cur[i] = 0;
            if deg + (a as u32 + 1) * w > self.dim {
                break;
            }
            a += 1;
        }
        Ok(())
    }

    /// Matrix of multiplication by `w_{i+1}` from degree `d` to `d + i + 1`
    /// (rows: basis of degree `d`).
    pub fn generator_matrix(&self, i: usize, d: u32) -> Result<BitMatrix> {
        let src = self.table(d)?;
        let td = d + i as u32 + 1;
        if td > self.dim {
            return Ok(BitMatrix::zeros(src.basis_len(), 0));
        }
        let dst = self.table(td)?;
        let mut out = BitMatrix::zeros(src.basis_len(), dst.basis_len());
        let mut exps = vec![0u16; self.k];
        for r in 0..src.basis_len() {
            exps.copy_from_slice(src.basis_exps(r));
            exps[i] += 1;
            let pos = dst.position(self.code(&exps)).unwrap();
            out.row_mut(r).xor_assign(dst.nf(pos));
        }
        Ok(out)
    }

    /// Poincaré pairing between degrees `d` and `dim - d`:
    /// entry `(r, c)` is the top coefficient of `b_r · b_c`.
    pub fn pairing(&self, d: u32) -> Result<BitMatrix> {
        if d > self.dim {
            return Err(Error::usage(format!(
                "degree {d} exceeds top degree {}",
                self.dim
            )));
        }
        let a = self.table(d)?;
        let b = self.table(self.dim - d)?;
        let top = self.table(self.dim)?;
        let mut out = BitMatrix::zeros(a.basis_len(), b.basis_len());
        let mut exps = vec![0u16; self.k];
        for r in 0..a.basis_len() {
            for c in 0..b.basis_len() {
                for (e, (&p, &q)) in exps
                    .iter_mut()
                    .zip(a.basis_exps(r).iter().zip(b.basis_exps(c)))
                {
                    *e = p + q;
                }
                let pos = top.position(self.code(&exps)).unwrap();
                if top.nf(pos).get(0) {
                    out.row_mut(r).set(c, true);
                }
            }
        }
        Ok(out)
    }

    /// True iff every monomial of degree `d > dim` lies in the relation
    /// ideal. Used to confirm that the presentation vanishes above the top.
    pub fn vanishes_in_degree(&self, d: u32) -> Result<bool> {
        let monomials = monomials_of_degree(self.k, d);
        let cols = monomials.len();
        let codes: FxHashMap<Box<[u16]>, usize> = monomials
            .iter()
            .enumerate()
            .map(|(p, m)| (m.clone(), p))
            .collect();
        let mut rows = Vec::new();
        for rel in &self.relations {
            let j = rel.degree().unwrap();
            if j > d {
                continue;
            }
            for m in monomials_of_degree(self.k, d - j) {
                let mut row = BitVec::zeros(cols);
                for t in rel.terms() {
                    let e: Box<[u16]> = m.iter().zip(t.exps()).map(|(a, b)| a + b).collect();
                    row.toggle(codes[&e]);
                }
                rows.push(row);
            }
        }
        Ok(crate::bits::rank(rows, cols) == cols)
    }
}

fn cur_with(cur: &[u16], i: usize, a: u16) -> Vec<u16> {
    let mut v = cur.to_vec();
    v[i] = a;
    v
}

/// Binomial coefficient, saturating.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(r: &GrassmannRing, s: &str) -> Polynomial {
        Polynomial::parse(r.space(), s).unwrap()
    }

    #[test]
    fn dual_classes_of_g2() {
        let s = VarSpace::stiefel_whitney(2);
        let p = |t: &str| Polynomial::parse(&s, t).unwrap();
        assert!(dual_class(2, 0).is_one());
        assert_eq!(dual_class(2, 1), p("w1"));
        assert_eq!(dual_class(2, 2), p("w1^2 + w2"));
        assert_eq!(dual_class(2, 3), p("w1^3"));
        assert_eq!(dual_class(2, 4), p("w1^4 + w1^2*w2 + w2^2"));
        assert_eq!(dual_class(2, 5), p("w1^5 + w1*w2^2"));
        assert_eq!(dual_class(2, 6), p("w1^6 + w1^4*w2 + w2^3"));
    }

    #[test]
    fn relations_of_g2_r6() {
        let r = GrassmannRing::new(2, 6).unwrap();
        let rels: Vec<String> = r
            .relation_generators()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(rels, ["w1^5 + w1*w2^2", "w1^4*w2 + w1^2*w2^2 + w2^3"]);
        for rel in r.relation_generators() {
            assert!(r.normal_form(rel).unwrap().is_zero());
        }
        assert!(!r.is_nonzero(&poly(&r, "w1^7")).unwrap());
    }

    #[test]
    fn projective_space_is_truncated() {
        let r = GrassmannRing::new(1, 5).unwrap();
        assert_eq!(r.betti().unwrap(), vec![1; 5]);
        for d in 0..=4u16 {
            assert_eq!(r.basis(d as u32).unwrap()[0].exps(), &[d]);
        }
        assert!(!r.monomial_is_nonzero(&[5]).unwrap());
        assert_eq!(r.height(&poly(&r, "w1")).unwrap(), 4);
    }

    #[test]
    fn rank_matches_cell_count() {
        for (k, n) in [(1, 3), (2, 4), (2, 5), (2, 6), (3, 6), (3, 7), (4, 8)] {
            let r = GrassmannRing::new(k, n).unwrap();
            let b = r.betti().unwrap();
            assert_eq!(b.iter().sum::<usize>() as u64, binomial(n as u64, k as u64));
            let rev: Vec<_> = b.iter().rev().copied().collect();
            assert_eq!(b, rev, "Poincaré symmetry for ({k},{n})");
            assert_eq!(b[r.dim() as usize], 1);
            assert!(r.vanishes_in_degree(r.dim() + 1).unwrap());
        }
    }

    #[test]
    fn g2_r6_products() {
        let r = GrassmannRing::new(2, 6).unwrap();
        assert!(r.is_nonzero(&poly(&r, "w1^6")).unwrap());
        assert!(r.is_nonzero(&poly(&r, "w1^4*w2")).unwrap());
        assert!(!r.is_nonzero(&poly(&r, "w1^4*w2^2")).unwrap());
        assert_eq!(r.height(&poly(&r, "w1")).unwrap(), 6);
        assert_eq!(r.height(&poly(&r, "w2")).unwrap(), 4);
        let c = r.max_monomial_cup_length().unwrap();
        assert_eq!(c.length, 7);
        assert_eq!(c.witness, vec![6, 1]);
    }

    #[test]
    fn cup_length_of_projective_space() {
        let r = GrassmannRing::new(1, 5).unwrap();
        let c = r.max_monomial_cup_length().unwrap();
        assert_eq!((c.length, c.witness), (4, vec![4]));
    }

    #[test]
    fn degenerate_rings() {
        for (k, n) in [(0, 3), (3, 3), (0, 0)] {
            let r = GrassmannRing::new(k, n).unwrap();
            assert_eq!(r.dim(), 0);
            assert_eq!(r.betti().unwrap(), vec![1]);
        }
        assert!(matches!(GrassmannRing::new(3, 5), Err(Error::Usage(_))));
        assert!(matches!(GrassmannRing::new(4, 3), Err(Error::Usage(_))));
        assert_eq!(standard_form(3, 5).unwrap(), (2, true));
        assert_eq!(standard_form(2, 5).unwrap(), (2, false));
    }

    #[test]
    fn cap_is_enforced() {
        let r = GrassmannRing::with_limits(2, 6, RingLimits { max_block_bits: 16 }).unwrap();
        assert!(matches!(r.table(8), Err(Error::Infeasible(_))));
        assert!(r.table(0).is_ok());
    }

    #[test]
    fn normal_form_of_zero_and_reduce() {
        let r = GrassmannRing::new(2, 6).unwrap();
        assert!(r
            .normal_form(&Polynomial::zero(r.space()))
            .unwrap()
            .is_zero());
        let red = r.reduce(&poly(&r, "w1^5")).unwrap();
        assert_eq!(r.reduce(&red).unwrap(), red);
        assert_eq!(
            r.normal_form(&red).unwrap(),
            r.normal_form(&poly(&r, "w1*w2^2")).unwrap()
        );
    }

    #[test]
    fn height_rejects_inhomogeneous() {
        let r = GrassmannRing::new(2, 6).unwrap();
        assert!(r.height(&poly(&r, "w1 + w2")).is_err());
        assert!(r.height(&poly(&r, "1")).is_err());
    }

    #[test]
    fn counting_matches_enumeration() {
        for k in 0..5 {
            for d in 0..20 {
                assert_eq!(
                    monomials_of_degree(k, d).len() as u64,
                    count_monomials(k, d)
                );
            }
        }
    }
}
