//! Closed-form predictions and bounds for category and topological
//! complexity.
//!
//! Every prediction is a claim about the engine's ring and is meant to be
//! checked, not trusted: see [`check_claim`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::GrassmannRing;
use crate::tensor::{self, ZeroDivisorMonomial};

/// Least power of two strictly greater than `m`.
pub fn rho(m: u64) -> u64 {
    if m == 0 {
        1
    } else {
        1u64 << (64 - m.leading_zeros())
    }
}

/// The unique `s` with `2^s < n ≤ 2^{s+1}`; `None` for `n < 2`.
pub fn s_of(n: usize) -> Option<u32> {
    (n >= 2).then(|| usize::BITS - (n - 1).leading_zeros() - 1)
}

fn pow2(e: u32) -> i64 {
    1i64 << e
}

/// What a claim asserts about the class `Π w_i^{exps_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Expectation {
    Nonzero,
    Zero,
    /// The class equals the monomial `other`, and both are non-zero.
    EqualTo {
        other: Vec<u16>,
    },
    /// The class is non-zero and no generator monomial with more factors is.
    MaximalLength,
    /// The class (a single generator) has exactly this height.
    Height {
        value: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Applicability {
    Applicable,
    NotApplicable { reason: String },
}

/// One checkable statement about `H*(G_k(R^n); Z/2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductClaim {
    /// Stable identifier, e.g. `g2-half-power/nonzero`; inherited claims
    /// carry an `@n<m>` suffix.
    pub id: String,
    /// Empty when the claim is not applicable.
    pub exps: Vec<u16>,
    pub expectation: Expectation,
    pub applicability: Applicability,
    /// Set when the claim is stated for a smaller ambient dimension and
    /// carried over (non-vanishing survives `n -> n+1`).
    pub inherited_from: Option<usize>,
}

impl ProductClaim {
    pub fn is_applicable(&self) -> bool {
        self.applicability == Applicability::Applicable
    }
}

/// Closed-form zero-divisor cup-length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormZcl {
    pub source: &'static str,
    pub value: u32,
    /// Exponents `m` of the witness `Π z(w_i)^{m_i}`.
    pub witness: Vec<u16>,
    /// `false` when only a lower bound is asserted.
    pub exact: bool,
    pub tc_lower: u32,
}

/// Everything the closed forms predict for one `(k, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormPrediction {
    pub k: usize,
    pub n: usize,
    pub s: Option<u32>,
    /// `n - 2^s`.
    pub t: Option<usize>,
    pub claims: Vec<ProductClaim>,
    pub zcl: Option<ClosedFormZcl>,
}

struct Builder {
    k: usize,
    dim: i64,
    claims: Vec<ProductClaim>,
}

impl Builder {
    fn exps(&self, raw: &[i64]) -> std::result::Result<Vec<u16>, String> {
        if let Some(e) = raw.iter().find(|&&e| e < 0) {
            return Err(format!("exponent {e} is negative"));
        }
        let mut v: Vec<u16> = raw.iter().map(|&e| e as u16).collect();
        v.resize(self.k, 0);
        Ok(v)
    }

    fn degree(raw: &[i64]) -> i64 {
        raw.iter()
            .enumerate()
            .map(|(i, &e)| (i as i64 + 1) * e)
            .sum()
    }

    fn skip(&mut self, id: &str, expectation: Expectation, reason: String) {
        self.claims.push(ProductClaim {
            id: id.into(),
            exps: Vec::new(),
            expectation,
            applicability: Applicability::NotApplicable { reason },
            inherited_from: None,
        });
    }

    /// A clause made of non-vanishing parts and vanishing parts; the whole
    /// clause is skipped when any part is malformed or a non-vanishing part
    /// exceeds the top degree.
    fn clause(&mut self, id: &str, parts: &[(&str, &[i64], Expectation)]) {
        let mut built = Vec::new();
        for (suffix, raw, expectation) in parts {
            let full = if suffix.is_empty() {
                id.to_string()
            } else {
                format!("{id}/{suffix}")
            };
            let exps = match self.exps(raw) {
                Ok(e) => e,
                Err(reason) => return self.skip_all(id, parts, reason),
            };
            if *expectation != Expectation::Zero && Self::degree(raw) > self.dim {
                let reason = format!(
                    "degree {} exceeds the dimension {}",
                    Self::degree(raw),
                    self.dim
                );
                return self.skip_all(id, parts, reason);
            }
            built.push(ProductClaim {
                id: full,
                exps,
                expectation: expectation.clone(),
                applicability: Applicability::Applicable,
                inherited_from: None,
            });
        }
        self.claims.extend(built);
    }

    fn skip_all(&mut self, id: &str, parts: &[(&str, &[i64], Expectation)], reason: String) {
        for (suffix, _, expectation) in parts {
            let full = if suffix.is_empty() {
                id.to_string()
            } else {
                format!("{id}/{suffix}")
            };
            self.skip(&full, expectation.clone(), reason.clone());
        }
    }
}

fn direct_claims(k: usize, n: usize) -> Vec<ProductClaim> {
    let mut b = Builder {
        k,
        dim: (k * (n - k)) as i64,
        claims: Vec::new(),
    };
    let Some(s) = s_of(n) else { return b.claims };
    let (p, p1, ni) = (pow2(s), pow2(s + 1), n as i64);
    use Expectation::*;

    if k >= 2 {
        let h = if k == 2 || (k == 3 && ni == p + 1) {
            p1 - 2
        } else {
            p1 - 1
        };
        b.clause("w1-height", &[("", &[1], Height { value: h as u32 })]);
    }

    if k == 2 {
        b.clause(
            "g2-half-power",
            &[
                ("nonzero", &[p, ni - p - 1], Nonzero),
                ("zero", &[p, ni - p], Zero),
            ],
        );
        b.clause("g2-max-cup", &[("", &[p1 - 2, ni - p - 1], MaximalLength)]);
    }

    if k == 3 {
        g3_max_cup(&mut b, s, ni);
        let t = ni - p;
        let half = p / 2;
        match t {
            1 => b.clause(
                "g3-power-products/1",
                &[
                    ("nonzero", &[p, half], Nonzero),
                    ("zero", &[p, half, 1], Zero),
                ],
            ),
            2 => b.clause(
                "g3-power-products/2",
                &[
                    ("nonzero", &[p, half, 1], Nonzero),
                    ("zero", &[p, half, 2], Zero),
                ],
            ),
            _ => b.clause(
                "g3-power-products/3",
                &[("nonzero", &[p, p, t - 3], Nonzero)],
            ),
        }
    }

    if k == 4 {
        g4_max_cup(&mut b, s, ni);
        let t = ni - p - p / 2;
        if (3..=p / 2).contains(&t) {
            b.clause(
                "g4-power-products",
                &[("nonzero", &[p, p, p / 2, t - 3], Nonzero)],
            );
        } else {
            b.skip(
                "g4-power-products/nonzero",
                Nonzero,
                format!("t = n - 2^s - 2^(s-1) = {t} is outside 3..={}", p / 2),
            );
        }
    }

    if k >= 3 {
        let kk = k as i64;
        if ni == p + kk && kk <= p {
            let cube = b.exps(&[0, 0, p]).unwrap_or_default();
            b.clause(
                "w3-power-identity/1",
                &[
                    ("equal", &[p, p], EqualTo { other: cube }),
                    ("nonzero", &[p, p], Nonzero),
                ],
            );
            b.clause("w3-power-identity/3", &[("zero", &[p, p, p], Zero)]);
        } else {
            let reason = format!("n = {n} is not 2^s + k = {} with k ≤ 2^s", p + kk);
            b.skip("w3-power-identity/1", Nonzero, reason.clone());
            b.skip("w3-power-identity/3", Zero, reason);
        }
        if ni == p + p / 2 + kk && kk <= p / 2 {
            b.clause(
                "w3-power-identity/2",
                &[("nonzero", &[p, p, p / 2], Nonzero)],
            );
        } else {
            b.skip(
                "w3-power-identity/2",
                Nonzero,
                format!(
                    "n = {n} is not 2^s + 2^(s-1) + k = {} with k ≤ 2^(s-1)",
                    p + p / 2 + kk
                ),
            );
        }
    }
    b.claims
}

/// Maximal products for `k = 3`; every `n` in `(2^s, 2^{s+1}]` falls in
/// exactly one case.
fn g3_max_cup(b: &mut Builder, s: u32, ni: i64) {
    let p1 = pow2(s + 1);
    if ni == p1 {
        b.clause(
            "g3-max-cup/top",
            &[("", &[p1 - 1, p1 - 4], Expectation::MaximalLength)],
        );
        return;
    }
    for q in 1..=s {
        let base = p1 - pow2(q) + 1;
        let half = pow2(q - 1);
        if ni == base {
            b.clause(
                "g3-max-cup/a",
                &[("", &[p1 - 2, p1 - 3 * half - 2], Expectation::MaximalLength)],
            );
            return;
        }
        let t = ni - base;
        if 0 < t && t < half {
            b.clause(
                "g3-max-cup/b",
                &[(
                    "",
                    &[p1 - 1, p1 - 3 * half - 1, t - 1],
                    Expectation::MaximalLength,
                )],
            );
            return;
        }
    }
}

/// Maximal products for `k = 4`.
fn g4_max_cup(b: &mut Builder, s: u32, ni: i64) {
    let (p, p1) = (pow2(s), pow2(s + 1));
    if ni == p + 1 {
        b.clause(
            "g4-max-cup/a",
            &[("", &[p1 - 2, p - 5], Expectation::MaximalLength)],
        );
        b.clause(
            "g4-max-cup/b",
            &[("", &[p1 - 1, p - 7, 1], Expectation::MaximalLength)],
        );
        return;
    }
    for r in 0..s {
        let pr = pow2(r);
        let t = ni - p - pr - 1;
        if (0..pr).contains(&t) {
            b.clause(
                "g4-max-cup/c",
                &[(
                    "",
                    &[p1 - 2, p + 2 * pr - 5, 0, t],
                    Expectation::MaximalLength,
                )],
            );
            if r > 0 {
                b.clause(
                    "g4-max-cup/d",
                    &[(
                        "",
                        &[p1 - 1, p + 2 * pr - 7, 1, t],
                        Expectation::MaximalLength,
                    )],
                );
            }
            return;
        }
    }
}

/// All closed-form product claims for `G_k(R^n)`, including non-vanishing
/// statements inherited from smaller `n`.
pub fn predict_products(k: usize, n: usize) -> ClosedFormPrediction {
    let s = s_of(n);
    let t = s.map(|s| n - (1usize << s));
    if k == 0 || 2 * k > n {
        return ClosedFormPrediction {
            k,
            n,
            s,
            t,
            claims: vec![ProductClaim {
                id: "standing-assumption".into(),
                exps: Vec::new(),
                expectation: Expectation::Nonzero,
                applicability: Applicability::NotApplicable {
                    reason: format!("requires 1 ≤ k ≤ n/2, got k = {k}, n = {n}"),
                },
                inherited_from: None,
            }],
            zcl: None,
        };
    }
    let mut claims = direct_claims(k, n);
    let mut seen: std::collections::BTreeSet<Vec<u16>> = claims
        .iter()
        .filter(|c| c.is_applicable() && c.expectation != Expectation::Zero)
        .map(|c| c.exps.clone())
        .collect();
    for m in 2 * k..n {
        for c in direct_claims(k, m) {
            let carries = matches!(
                c.expectation,
                Expectation::Nonzero | Expectation::MaximalLength | Expectation::EqualTo { .. }
            );
            if c.is_applicable() && carries && seen.insert(c.exps.clone()) {
                claims.push(ProductClaim {
                    id: format!("{}@n{m}", c.id),
                    expectation: Expectation::Nonzero,
                    inherited_from: Some(m),
                    ..c
                });
            }
        }
    }
    ClosedFormPrediction {
        k,
        n,
        s,
        t,
        claims,
        zcl: closed_form_zcl(k, n),
    }
}

/// Closed-form zero-divisor cup-length, exact for `k ∈ {2, 3}` and for
/// `k = 4` near the top of a dyadic range, a lower bound for larger `k`.
pub fn closed_form_zcl(k: usize, n: usize) -> Option<ClosedFormZcl> {
    if k < 2 || 2 * k > n {
        return None;
    }
    let s = s_of(n)?;
    let (p, p1) = (1u64 << s, 1u64 << (s + 1));
    let n64 = n as u64;
    let make = |source, witness: Vec<u64>, exact| {
        let mut w: Vec<u16> = witness.iter().map(|&e| e as u16).collect();
        w.resize(k, 0);
        let value = w.iter().map(|&e| e as u32).sum();
        Some(ClosedFormZcl {
            source,
            value,
            witness: w,
            exact,
            tc_lower: value + 1,
        })
    };
    match k {
        2 => make("zcl-g2", vec![p1 - 1, rho(n64 - 1 - p) - 1], true),
        3 => {
            let t = n64 - p;
            match t {
                1 => make("zcl-g3", vec![p1 - 1, p - 1], true),
                2 => make("zcl-g3", vec![p1 - 1, p - 1, 1], true),
                _ => make("zcl-g3", vec![p1 - 1, p1 - 1, rho(t - 3) - 1], true),
            }
        }
        _ => {
            let kk = k as u64;
            if k == 4 && n64 >= p + p / 2 + 3 {
                let t = n64 - p - p / 2;
                return make("zcl-g4", vec![p1 - 1, p1 - 1, p - 1, rho(t - 3) - 1], true);
            }
            if n64 < p + kk {
                return None;
            }
            if n64 >= p + p / 2 + 3 && kk <= p / 2 {
                make("zcl-generic-lower", vec![p1 - 1, p1 - 1, p - 1], false)
            } else if kk <= p {
                make("zcl-generic-lower", vec![p1 - 1, p1 - 1], false)
            } else {
                None
            }
        }
    }
}

/// Outcome of checking one claim against a ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    pub holds: bool,
    /// Human-readable computed value, e.g. `nonzero`, `height 6`,
    /// `cup-length 16 via w1^14*w2^2`.
    pub computed: String,
}

/// Evaluates an applicable claim in `ring`. `cup` supplies the ring's
/// cup-length for [`Expectation::MaximalLength`] claims.
pub fn check_claim(
    ring: &GrassmannRing,
    claim: &ProductClaim,
    cup: Option<&crate::ring::CupLength>,
) -> Result<ClaimCheck> {
    if !claim.is_applicable() {
        return Err(Error::usage(format!(
            "claim {} is not applicable",
            claim.id
        )));
    }
    let word = |b: bool| if b { "nonzero" } else { "zero" };
    let e = &claim.exps;
    Ok(match &claim.expectation {
        Expectation::Nonzero => {
            let v = ring.monomial_is_nonzero(e)?;
            ClaimCheck {
                holds: v,
                computed: word(v).into(),
            }
        }
        Expectation::Zero => {
            let v = ring.monomial_is_nonzero(e)?;
            ClaimCheck {
                holds: !v,
                computed: word(v).into(),
            }
        }
        Expectation::EqualTo { other } => {
            let a = ring.monomial_nf(e)?;
            let b = ring.monomial_nf(other)?;
            let equal = a == b;
            let nonzero = a.is_some();
            ClaimCheck {
                holds: equal && nonzero,
                computed: format!(
                    "{}, {}",
                    if equal { "equal" } else { "different" },
                    word(nonzero)
                ),
            }
        }
        Expectation::MaximalLength => {
            let v = ring.monomial_is_nonzero(e)?;
            let own;
            let cup = match cup {
                Some(c) => c,
                None => {
                    own = ring.max_monomial_cup_length()?;
                    &own
                }
            };
            let len: u32 = e.iter().map(|&x| x as u32).sum();
            let witness = ring
                .space()
                .format_monomial(&ring.space().monomial(&cup.witness)?);
            ClaimCheck {
                holds: v && cup.length == len,
                computed: format!("{}, cup-length {} via {witness}", word(v), cup.length),
            }
        }
        Expectation::Height { value } => {
            let i = e.iter().position(|&x| x == 1).unwrap_or(0);
            let h = ring.height_of_generator(i)?;
            ClaimCheck {
                holds: h == *value,
                computed: format!("height {h}"),
            }
        }
    })
}

/// Cases where `w_1^{dim} ≠ 0`: every projective space (`k = 1`) and
/// `k = 2, n = 2^d + 1`.
pub fn is_listed_exception(k: usize, n: usize) -> bool {
    match k {
        1 => n >= 2,
        2 => n > 2 && (n - 1).is_power_of_two(),
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TcUpper {
    pub value: u32,
    /// `w_1^{dim} ≠ 0`.
    pub w1_top_nonzero: bool,
    pub mechanism: String,
}

/// Upper bound `2·dim`, lowered to `2·dim - 1` when `w_1^{dim} = 0`.
pub fn tc_upper(ring: &GrassmannRing) -> Result<TcUpper> {
    let dim = ring.dim();
    if dim == 0 {
        return Ok(TcUpper {
            value: 1,
            w1_top_nonzero: false,
            mechanism: "point".into(),
        });
    }
    let top = u16::try_from(dim).map_err(|_| Error::Infeasible("dimension too large".into()))?;
    let mut e = vec![0u16; ring.k()];
    e[0] = top;
    let nonzero = ring.monomial_is_nonzero(&e)?;
    Ok(if nonzero {
        TcUpper {
            value: 2 * dim,
            w1_top_nonzero: true,
            mechanism: "w1^dim != 0: dimensional bound 2*dim".into(),
        }
    } else {
        TcUpper {
            value: 2 * dim - 1,
            w1_top_nonzero: false,
            mechanism: "w1^dim = 0: closed manifold bound 2*dim - 1".into(),
        }
    })
}

/// `TC(G_k(C^n)) = 2k(n-k) + 1`.
pub fn complex_tc(k: usize, n: usize) -> Result<u64> {
    if k == 0 || k > n {
        return Err(Error::usage(format!(
            "complex Grassmannian needs 1 ≤ k ≤ n, got k = {k}, n = {n}"
        )));
    }
    Ok(2 * (k * (n - k)) as u64 + 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatBounds {
    pub lower: u32,
    pub upper: u32,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TcBounds {
    pub lower: u32,
    pub upper: u32,
    pub witness: String,
    pub zcl: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zcl_exact: Option<u32>,
    pub upper_mechanism: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub k: usize,
    pub n: usize,
    pub dim: u32,
    pub cat: CatBounds,
    pub tc: TcBounds,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<ClosedFormZcl>,
    pub exceptions: Vec<String>,
    /// `false` for reports assembled from closed forms alone.
    pub complete: bool,
}

impl BoundsReport {
    pub fn is_consistent(&self) -> bool {
        self.cat.lower <= self.cat.upper && self.tc.lower <= self.tc.upper
    }
}

fn exception_notes(k: usize, n: usize, w1_top_nonzero: Option<bool>) -> Vec<String> {
    let mut out = Vec::new();
    let listed = is_listed_exception(k, n);
    if listed {
        out.push(format!(
            "w1^dim != 0 for k = {k}, n = {n}: upper bound stays at 2*dim"
        ));
        if k == 2 {
            out.push("open: whether TC reaches the upper bound 2*dim".into());
        }
    }
    if let Some(actual) = w1_top_nonzero {
        if actual != listed {
            out.push(format!(
                "mechanism disagrees with exception list: w1^dim {}",
                if actual { "!= 0" } else { "= 0" }
            ));
        }
    }
    out
}

/// Bounds from the engine: cup-length and zero-divisor cup-length below,
/// dimension and the `w_1` mechanism above.
pub fn bounds_report(ring: &GrassmannRing, exact: bool) -> Result<BoundsReport> {
    let (k, n, dim) = (ring.k(), ring.n(), ring.dim());
    let cup = ring.max_monomial_cup_length()?;
    let zcl = tensor::zcl_basic(ring)?;
    let zcl_exact = if exact {
        Some(tensor::zcl_exact(ring)?.zcl)
    } else {
        None
    };
    let best_zcl = zcl_exact.unwrap_or(zcl.zcl).max(zcl.zcl);
    let upper = tc_upper(ring)?;
    let cat = CatBounds {
        lower: cup.length + 1,
        upper: dim + 1,
        witness: ring
            .space()
            .format_monomial(&ring.space().monomial(&cup.witness)?),
    };
    let (tc_lower, witness) = if best_zcl + 1 >= cat.lower {
        (best_zcl + 1, zcl.witness.to_string())
    } else {
        (cat.lower, format!("cat lower bound via {}", cat.witness))
    };
    let mut exceptions = exception_notes(k, n, Some(upper.w1_top_nonzero));
    let closed_form = closed_form_zcl(k, n);
    if let Some(cf) = &closed_form {
        let cmp = zcl_exact.unwrap_or(zcl.zcl);
        if cf.exact && cf.value != cmp {
            exceptions.push(format!(
                "closed-form zcl {} differs from computed {}",
                cf.value, cmp
            ));
        } else if !cf.exact && cf.value > best_zcl {
            exceptions.push(format!(
                "closed-form lower bound {} exceeds computed {}",
                cf.value, best_zcl
            ));
        }
    }
    Ok(BoundsReport {
        k,
        n,
        dim,
        tc: TcBounds {
            lower: tc_lower,
            upper: upper.value.min(2 * cat.upper - 1),
            witness,
            zcl: zcl.zcl,
            zcl_exact,
            upper_mechanism: upper.mechanism,
        },
        cat,
        closed_form,
        exceptions,
        complete: true,
    })
}

/// Report assembled from closed forms only, for rings too large to build.
/// Lower bounds here are not verified by the engine.
pub fn partial_bounds_report(k: usize, n: usize) -> Result<BoundsReport> {
    if k == 0 || 2 * k > n {
        return Err(Error::usage(format!(
            "requires 1 ≤ k ≤ n/2, got k = {k}, n = {n}"
        )));
    }
    let dim = (k * (n - k)) as u32;
    let lower = closed_form_lower_bounds(k, n);
    let pred = predict_products(k, n);
    let listed = is_listed_exception(k, n);
    let cat_witness = best_predicted_product(&pred)
        .map(|e| fmt_exps(&e))
        .unwrap_or_else(|| "1".into());
    let cf = closed_form_zcl(k, n);
    Ok(BoundsReport {
        k,
        n,
        dim,
        cat: CatBounds {
            lower: lower.cat,
            upper: dim + 1,
            witness: cat_witness,
        },
        tc: TcBounds {
            lower: lower.tc,
            upper: if listed { 2 * dim } else { 2 * dim - 1 },
            witness: cf
                .as_ref()
                .map(|c| {
                    ZeroDivisorMonomial {
                        m: c.witness.clone(),
                    }
                    .to_string()
                })
                .unwrap_or_else(|| "1".into()),
            zcl: cf.as_ref().map_or(0, |c| c.value),
            zcl_exact: None,
            upper_mechanism: "exception list (ring not built)".into(),
        },
        closed_form: cf,
        exceptions: exception_notes(k, n, None),
        complete: false,
    })
}

fn fmt_exps(e: &[u16]) -> String {
    let space = crate::poly::VarSpace::stiefel_whitney(e.len());
    space
        .monomial(e)
        .map(|m| space.format_monomial(&m))
        .unwrap_or_default()
}

fn best_predicted_product(pred: &ClosedFormPrediction) -> Option<Vec<u16>> {
    pred.claims
        .iter()
        .filter(|c| {
            c.is_applicable()
                && matches!(
                    c.expectation,
                    Expectation::Nonzero | Expectation::MaximalLength
                )
        })
        .max_by_key(|c| c.exps.iter().map(|&x| x as u32).sum::<u32>())
        .map(|c| c.exps.clone())
}

/// Lower bounds for `cat` and `TC` of one Grassmannian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBounds {
    pub cat: u32,
    pub tc: u32,
}

/// Lower bounds read off the closed forms alone: the longest predicted
/// non-zero product and the closed-form zero-divisor cup-length.
pub fn closed_form_lower_bounds(k: usize, n: usize) -> LowerBounds {
    let pred = predict_products(k, n);
    let cat =
        best_predicted_product(&pred).map_or(1, |e| e.iter().map(|&x| x as u32).sum::<u32>() + 1);
    let tc = closed_form_zcl(k, n).map_or(0, |c| c.tc_lower).max(cat);
    LowerBounds { cat, tc }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    Established,
    /// A sufficient condition failed; nothing follows either way.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotonicityReport {
    pub k: usize,
    pub m: usize,
    pub n: usize,
    pub lower: LowerBounds,
    /// `cat(G_k(R^m)) ≤ cat(G_k(R^n))` follows when `lower.cat` exceeds this.
    pub cat_threshold: u32,
    pub cat: Criterion,
    /// `TC(G_k(R^m)) ≤ TC(G_k(R^n))` follows when `lower.tc` exceeds this.
    pub tc_threshold: u32,
    pub tc: Criterion,
}

/// Skeleton criteria for comparing `G_k(R^m) ⊆ G_k(R^n)`, using lower
/// bounds for the larger Grassmannian.
pub fn monotonicity_report(
    k: usize,
    m: usize,
    n: usize,
    lower: LowerBounds,
) -> Result<MonotonicityReport> {
    if k == 0 || 2 * k > m || m > n {
        return Err(Error::usage(format!(
            "requires 2k ≤ m ≤ n, got k = {k}, m = {m}, n = {n}"
        )));
    }
    let d = (m - k) as u32;
    let kk = k as u32;
    let cat_threshold = (kk - 1) * d + 1;
    let tc_threshold = (2 * kk - 1) * d + 1;
    let verdict = |ok: bool| {
        if ok {
            Criterion::Established
        } else {
            Criterion::Inconclusive
        }
    };
    Ok(MonotonicityReport {
        k,
        m,
        n,
        lower,
        cat_threshold,
        cat: verdict(lower.cat > cat_threshold),
        tc_threshold,
        tc: verdict(lower.tc > tc_threshold),
    })
}
