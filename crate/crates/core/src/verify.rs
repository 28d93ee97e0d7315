//! Batch verification of closed-form claims and worked examples against
//! the engine.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{self, Criterion, Expectation, LowerBounds};
use crate::cache::RingCache;
use crate::cells;
use crate::error::{Error, Result};
use crate::flag;
use crate::poly::Polynomial;
use crate::ring::{self, binomial, GrassmannRing, RingLimits};
use crate::tensor::{self, ZeroDivisorMonomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inapplicable,
    Infeasible,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inapplicable => "inapplicable",
            Status::Infeasible => "infeasible",
        }
    }
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// A stated closed form or proposition.
    ClosedForm,
    /// A worked numerical example.
    Example,
    /// A consequence checked here (counts, symmetry, agreement of methods).
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationRecord {
    pub id: String,
    pub expected: String,
    pub provenance: Provenance,
    pub computed: String,
    pub status: Status,
}

impl VerificationRecord {
    fn new(
        id: impl Into<String>,
        provenance: Provenance,
        expected: impl Into<String>,
        computed: impl Into<String>,
        ok: bool,
    ) -> Self {
        VerificationRecord {
            id: id.into(),
            expected: expected.into(),
            provenance,
            computed: computed.into(),
            status: if ok { Status::Pass } else { Status::Fail },
        }
    }

    fn with_status(
        id: impl Into<String>,
        provenance: Provenance,
        expected: impl Into<String>,
        computed: impl Into<String>,
        status: Status,
    ) -> Self {
        VerificationRecord {
            id: id.into(),
            expected: expected.into(),
            provenance,
            computed: computed.into(),
            status,
        }
    }
}

/// Parameters of a verification run.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_k: usize,
    pub max_n: usize,
    /// Also run the exact zero-divisor cup-length search.
    pub exact: bool,
    /// Cross-check product claims with the flag oracle up to this `n`.
    pub flag_max_n: usize,
    /// Check `z`-heights by powering up to this `n`.
    pub z_height_max_n: usize,
    pub limits: RingLimits,
    pub cache: Option<RingCache>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_k: 3,
            max_n: 11,
            exact: false,
            flag_max_n: 9,
            z_height_max_n: 10,
            limits: RingLimits::default(),
            cache: None,
        }
    }
}

impl VerifyOptions {
    pub fn build(&self, k: usize, n: usize) -> Result<GrassmannRing> {
        match &self.cache {
            Some(c) => c.load_or_build(k, n, self.limits),
            None => {
                let r = GrassmannRing::with_limits(k, n, self.limits)?;
                r.ensure_all()?;
                Ok(r)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inapplicable: usize,
    pub infeasible: usize,
}

impl Summary {
    pub fn of(records: &[VerificationRecord]) -> Self {
        let mut s = Summary::default();
        for r in records {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Inapplicable => s.inapplicable += 1,
                Status::Infeasible => s.infeasible += 1,
            }
        }
        s
    }
}

fn word(b: bool) -> &'static str {
    if b {
        "nonzero"
    } else {
        "zero"
    }
}

fn fmt_exps(ring: &GrassmannRing, e: &[u16]) -> String {
    ring.space()
        .monomial(e)
        .map(|m| ring.space().format_monomial(&m))
        .unwrap_or_else(|_| format!("{e:?}"))
}

fn expected_text(ring: &GrassmannRing, c: &bounds::ProductClaim) -> String {
    let m = fmt_exps(ring, &c.exps);
    match &c.expectation {
        Expectation::Nonzero => format!("{m} nonzero"),
        Expectation::Zero => format!("{m} zero"),
        Expectation::EqualTo { other } => format!("{m} = {} nonzero", fmt_exps(ring, other)),
        Expectation::MaximalLength => format!(
            "{m} nonzero of maximal length {}",
            c.exps.iter().map(|&x| x as u32).sum::<u32>()
        ),
        Expectation::Height { value } => format!("height {value}"),
    }
}

/// Every check that needs the ring of one `(k, n)`.
pub fn verify_pair(k: usize, n: usize, opts: &VerifyOptions) -> Vec<VerificationRecord> {
    let tag = format!("k{k}n{n}");
    let ring = match opts.build(k, n) {
        Ok(r) => r,
        Err(Error::Infeasible(msg)) => {
            return vec![VerificationRecord::with_status(
                format!("ring/{tag}"),
                Provenance::Derived,
                "ring built",
                msg,
                Status::Infeasible,
            )];
        }
        Err(e) => {
            return vec![VerificationRecord::new(
                format!("ring/{tag}"),
                Provenance::Derived,
                "ring built",
                e.to_string(),
                false,
            )];
        }
    };
    match pair_records(&ring, &tag, opts) {
        Ok(v) => v,
        Err(e) => {
            let status = if matches!(e, Error::Infeasible(_)) {
                Status::Infeasible
            } else {
                Status::Fail
            };
            vec![VerificationRecord::with_status(
                format!("pair/{tag}"),
                Provenance::Derived,
                "all checks run",
                e.to_string(),
                status,
            )]
        }
    }
}

fn pair_records(
    ring: &GrassmannRing,
    tag: &str,
    opts: &VerifyOptions,
) -> Result<Vec<VerificationRecord>> {
    let (k, n) = (ring.k(), ring.n());
    let mut out = Vec::new();
    let cup = ring.max_monomial_cup_length()?;

    // Product claims, with an independent flag-manifold check for small n.
    let pred = bounds::predict_products(k, n);
    for c in &pred.claims {
        let id = format!("{}/{tag}", c.id);
        if !c.is_applicable() {
            let reason = match &c.applicability {
                bounds::Applicability::NotApplicable { reason } => reason.clone(),
                bounds::Applicability::Applicable => unreachable!(),
            };
            out.push(VerificationRecord::with_status(
                id,
                Provenance::ClosedForm,
                "applicable",
                reason,
                Status::Inapplicable,
            ));
            continue;
        }
        let check = bounds::check_claim(ring, c, Some(&cup))?;
        out.push(VerificationRecord::new(
            id.clone(),
            Provenance::ClosedForm,
            expected_text(ring, c),
            check.computed,
            check.holds,
        ));
        if n <= opts.flag_max_n && !matches!(c.expectation, Expectation::Height { .. }) {
            let p = Polynomial::from_exps(ring.space(), &c.exps)?;
            let v = p.degree().is_some_and(|d| d <= ring.dim())
                && flag::grassmann_nonzero_via_flag(&p, k, n)?.nonzero;
            let want = c.expectation != Expectation::Zero;
            out.push(VerificationRecord::new(
                format!("flag/{id}"),
                Provenance::Derived,
                word(want),
                word(v),
                v == want,
            ));
        }
    }

    // Heights of the zero-divisors z(w_i) against ρ(height(w_i)) - 1.
    if n <= opts.z_height_max_n {
        for i in 0..k {
            let h = ring.height_of_generator(i)?;
            let want = bounds::rho(h as u64) - 1;
            let got = tensor::height_z(ring, i + 1)?;
            out.push(VerificationRecord::new(
                format!("z-height/w{}/{tag}", i + 1),
                Provenance::ClosedForm,
                format!("{want}"),
                format!("{got}"),
                got as u64 == want,
            ));
        }
    }

    // Zero-divisor cup-length against the closed forms.
    let basic = tensor::zcl_basic(ring)?;
    let exact = if opts.exact {
        Some(tensor::zcl_exact(ring)?)
    } else {
        None
    };
    if let Some(cf) = bounds::closed_form_zcl(k, n) {
        let w = ZeroDivisorMonomial {
            m: cf.witness.clone(),
        };
        let nz = tensor::zd_product_is_nonzero(ring, &cf.witness)?;
        out.push(VerificationRecord::new(
            format!("{}/witness/{tag}", cf.source),
            Provenance::ClosedForm,
            format!("{w} nonzero"),
            word(nz),
            nz,
        ));
        let shown = |z: &tensor::Zcl| format!("{} via {}", z.zcl, z.witness);
        if cf.exact {
            out.push(VerificationRecord::new(
                format!("{}/basic/{tag}", cf.source),
                Provenance::ClosedForm,
                cf.value.to_string(),
                shown(&basic),
                basic.zcl == cf.value,
            ));
            if let Some(e) = &exact {
                out.push(VerificationRecord::new(
                    format!("{}/exact/{tag}", cf.source),
                    Provenance::ClosedForm,
                    cf.value.to_string(),
                    shown(e),
                    e.zcl == cf.value,
                ));
            }
        } else {
            out.push(VerificationRecord::new(
                format!("{}/basic/{tag}", cf.source),
                Provenance::ClosedForm,
                format!(">= {}", cf.value),
                shown(&basic),
                basic.zcl >= cf.value,
            ));
        }
    }

    // Upper bound mechanism against the exception list.
    let up = bounds::tc_upper(ring)?;
    let listed = bounds::is_listed_exception(k, n);
    out.push(VerificationRecord::new(
        format!("tc-upper/exceptions/{tag}"),
        Provenance::ClosedForm,
        format!("w1^dim {}", if listed { "!= 0" } else { "= 0" }),
        format!(
            "w1^dim {} (upper {})",
            if up.w1_top_nonzero { "!= 0" } else { "= 0" },
            up.value
        ),
        listed == up.w1_top_nonzero,
    ));

    // Cells against Betti numbers.
    let counts = cells::cell_counts(k, n)?;
    let betti: Vec<u64> = ring.betti()?.into_iter().map(|b| b as u64).collect();
    let total: u64 = counts.iter().sum();
    out.push(VerificationRecord::new(
        format!("cells/total/{tag}"),
        Provenance::ClosedForm,
        binomial(n as u64, k as u64).to_string(),
        total.to_string(),
        total == binomial(n as u64, k as u64),
    ));
    out.push(VerificationRecord::new(
        format!("cells/betti/{tag}"),
        Provenance::Derived,
        format!("{counts:?}"),
        format!("{betti:?}"),
        counts == betti,
    ));
    let symmetric = counts.iter().eq(counts.iter().rev());
    out.push(VerificationRecord::new(
        format!("cells/symmetry/{tag}"),
        Provenance::Derived,
        "symmetric",
        if symmetric { "symmetric" } else { "asymmetric" },
        symmetric,
    ));
    let skel = cells::skeleton_agreement(k, n)?;
    out.push(VerificationRecord::new(
        format!("cells/skeleton/{tag}"),
        Provenance::ClosedForm,
        "agree",
        if skel { "agree" } else { "differ" },
        skel,
    ));

    // Category monotonicity along the chain G_k(R^m) ⊆ G_k(R^n).
    if k <= 3 {
        let lower = LowerBounds {
            cat: cup.length + 1,
            tc: cup.length + 1,
        };
        let failing: Vec<usize> = (2 * k..=n)
            .filter(|&m| {
                bounds::monotonicity_report(k, m, n, lower)
                    .map_or(true, |r| r.cat != Criterion::Established)
            })
            .collect();
        out.push(VerificationRecord::new(
            format!("monotonicity/cat-chain/{tag}"),
            Provenance::ClosedForm,
            format!("established for all {} ≤ m ≤ {n}", 2 * k),
            if failing.is_empty() {
                "established".to_string()
            } else {
                format!("inconclusive for m in {failing:?}")
            },
            failing.is_empty(),
        ));
    }
    Ok(out)
}

/// Worked examples with fixed parameters.
pub fn example_records(opts: &VerifyOptions) -> Vec<VerificationRecord> {
    let mut out = Vec::new();
    let mut push = |r: Result<Vec<VerificationRecord>>, id: &str| match r {
        Ok(v) => out.extend(v),
        Err(e) => {
            let status = if matches!(e, Error::Infeasible(_)) {
                Status::Infeasible
            } else {
                Status::Fail
            };
            out.push(VerificationRecord::with_status(
                id,
                Provenance::Example,
                "computed",
                e.to_string(),
                status,
            ));
        }
    };
    push(presentation_example(), "example/presentation");
    push(ring_examples(opts), "example/ring");
    push(tc_examples(opts), "example/tc");
    push(monotonicity_examples(opts), "example/monotonicity");
    push(misc_examples(), "example/misc");
    out
}

fn presentation_example() -> Result<Vec<VerificationRecord>> {
    let ring = GrassmannRing::new(2, 6)?;
    let space = ring.space().clone();
    let mut out = Vec::new();
    for (j, text) in [(3, "w1^3"), (4, "w1^4 + w1^2*w2 + w2^2")] {
        let want = Polynomial::parse(&space, text)?;
        let got = ring::dual_class(2, j);
        out.push(VerificationRecord::new(
            format!("example/dual-class/{j}"),
            Provenance::Example,
            text,
            got.to_string(),
            got == want,
        ));
    }
    let rels = ring.relation_generators();
    for (i, text) in ["w1^5 + w1*w2^2", "w1^4*w2 + w1^2*w2^2 + w2^3"]
        .into_iter()
        .enumerate()
    {
        let want = Polynomial::parse(&space, text)?;
        let got = rels.get(i).map(|p| p.to_string()).unwrap_or_default();
        let vanishes = !ring.is_nonzero(&want)?;
        out.push(VerificationRecord::new(
            format!("example/relation/{}", i + 5),
            Provenance::Example,
            format!("{text}, reduces to 0"),
            format!(
                "{got}, reduces to {}",
                if vanishes { "0" } else { "nonzero" }
            ),
            rels.get(i) == Some(&want) && vanishes,
        ));
    }
    Ok(out)
}

fn ring_examples(opts: &VerifyOptions) -> Result<Vec<VerificationRecord>> {
    let mut out = Vec::new();
    let r26 = opts.build(2, 6)?;
    let h2 = r26.height_of_generator(1)?;
    out.push(VerificationRecord::new(
        "example/height-w2/k2n6",
        Provenance::Example,
        "4",
        h2.to_string(),
        h2 == 4,
    ));
    for (k, n, len, witness) in [
        (2usize, 6usize, 7u32, vec![6u16, 1]),
        (3, 9, 12, vec![8, 4, 0]),
    ] {
        let r = opts.build(k, n)?;
        let c = r.max_monomial_cup_length()?;
        out.push(VerificationRecord::new(
            format!("example/cup-length/k{k}n{n}"),
            Provenance::Example,
            format!("{len} via {}", fmt_exps(&r, &witness)),
            format!("{} via {}", c.length, fmt_exps(&r, &c.witness)),
            c.length == len && c.witness == witness,
        ));
    }
    let z = tensor::zd_product_is_nonzero(&r26, &[7, 1])?;
    out.push(VerificationRecord::new(
        "example/zd-product/k2n6/7-1",
        Provenance::Example,
        "nonzero",
        word(z),
        z,
    ));
    let z = tensor::zd_product_is_nonzero(&r26, &[8, 0])?;
    out.push(VerificationRecord::new(
        "example/zd-product/k2n6/8-0",
        Provenance::Example,
        "zero",
        word(z),
        !z,
    ));
    for (k, n, want, exact) in [
        (2usize, 4usize, 4u32, false),
        (2, 13, 22, false),
        (3, 11, 30, false),
        (2, 4, 4, true),
        (2, 6, 8, true),
    ] {
        let r = opts.build(k, n)?;
        let z = if exact {
            tensor::zcl_exact(&r)?
        } else {
            tensor::zcl_basic(&r)?
        };
        out.push(VerificationRecord::new(
            format!(
                "example/zcl-{}/k{k}n{n}",
                if exact { "exact" } else { "basic" }
            ),
            Provenance::Example,
            want.to_string(),
            format!("{} via {}", z.zcl, z.witness),
            z.zcl == want,
        ));
    }
    Ok(out)
}

/// A stated lower bound `TC ≥ value` holds when its witness product is
/// non-zero; the engine's own bound is reported alongside.
fn tc_examples(opts: &VerifyOptions) -> Result<Vec<VerificationRecord>> {
    let mut out = Vec::new();
    // (k, n, stated lower, stated upper, witness exponents)
    type Case = (usize, usize, Option<u32>, Option<u32>, Vec<u16>);
    let cases: [Case; 4] = [
        (2, 4, Some(5), Some(7), vec![3, 1]),
        (2, 13, Some(23), Some(43), vec![15, 7]),
        (3, 11, Some(31), None, vec![15, 15, 0]),
        (5, 13, Some(31), None, vec![15, 15, 0, 0, 0]),
    ];
    for (k, n, lo, hi, witness) in cases {
        let r = opts.build(k, n)?;
        let rep = bounds::bounds_report(&r, false)?;
        let tag = format!("k{k}n{n}");
        if let Some(lo) = lo {
            let nz = tensor::zd_product_is_nonzero(&r, &witness)?;
            let len: u32 = witness.iter().map(|&x| x as u32).sum();
            let ok = nz && len + 1 >= lo && rep.tc.lower >= lo;
            out.push(VerificationRecord::new(
                format!("example/tc-lower/{tag}"),
                Provenance::Example,
                format!(">= {lo} via {}", ZeroDivisorMonomial { m: witness.clone() }),
                format!(
                    "witness {}; engine bound {} via {}",
                    word(nz),
                    rep.tc.lower,
                    rep.tc.witness
                ),
                ok,
            ));
        }
        if let Some(hi) = hi {
            out.push(VerificationRecord::new(
                format!("example/tc-upper/{tag}"),
                Provenance::Example,
                format!("<= {hi}"),
                format!("{} ({})", rep.tc.upper, rep.tc.upper_mechanism),
                rep.tc.upper == hi,
            ));
        }
    }
    let r = opts.build(1, 8)?;
    let up = bounds::tc_upper(&r)?;
    out.push(VerificationRecord::new(
        "example/tc-upper/k1n8",
        Provenance::Example,
        "14",
        up.value.to_string(),
        up.value == 14,
    ));
    Ok(out)
}

fn monotonicity_examples(opts: &VerifyOptions) -> Result<Vec<VerificationRecord>> {
    let mut out = Vec::new();
    let stated = bounds::closed_form_lower_bounds(2, 9);
    let r = opts.build(2, 9)?;
    let rep = bounds::bounds_report(&r, false)?;
    let engine = LowerBounds {
        cat: rep.cat.lower,
        tc: rep.tc.lower,
    };
    for (m, want) in [
        (6usize, Criterion::Established),
        (7, Criterion::Inconclusive),
    ] {
        let a = bounds::monotonicity_report(2, m, 9, stated)?;
        let b = bounds::monotonicity_report(2, m, 9, engine)?;
        let name = |c: Criterion| match c {
            Criterion::Established => "established",
            Criterion::Inconclusive => "inconclusive",
        };
        out.push(VerificationRecord::new(
            format!("example/monotonicity/k2m{m}n9/tc"),
            Provenance::Example,
            name(want),
            format!(
                "{} from closed-form TC >= {} vs threshold {}; {} from engine TC >= {}",
                name(a.tc),
                stated.tc,
                a.tc_threshold,
                name(b.tc),
                engine.tc
            ),
            a.tc == want,
        ));
    }
    Ok(out)
}

fn misc_examples() -> Result<Vec<VerificationRecord>> {
    let mut out = Vec::new();
    for (m, want) in [(8u64, 16u64), (11, 16)] {
        let got = bounds::rho(m);
        out.push(VerificationRecord::new(
            format!("example/rho/{m}"),
            Provenance::Example,
            want.to_string(),
            got.to_string(),
            got == want,
        ));
    }
    for (k, n, want) in [(2usize, 4usize, 9u64), (3, 6, 19)] {
        let got = bounds::complex_tc(k, n)?;
        out.push(VerificationRecord::new(
            format!("example/complex-tc/k{k}n{n}"),
            Provenance::Example,
            want.to_string(),
            got.to_string(),
            got == want,
        ));
    }
    let total = cells::enumerate_symbols(2, 5, None)?.len();
    out.push(VerificationRecord::new(
        "example/cells/k2n5",
        Provenance::Example,
        "10",
        total.to_string(),
        total == 10,
    ));
    // Flag certificate for w1^4 w2 in G2(R6) with multiplier e1^2.
    let space = crate::poly::VarSpace::stiefel_whitney(2);
    let p = Polynomial::from_exps(&space, &[4, 1])?;
    let ok = flag::multiplier_certifies(&p, 2, 6, &[2, 0, 0, 0, 0, 0])?;
    out.push(VerificationRecord::new(
        "example/flag-multiplier/k2n6",
        Provenance::Example,
        "certifies",
        if ok { "certifies" } else { "does not certify" },
        ok,
    ));
    Ok(out)
}

/// All `(k, n)` with `1 ≤ k ≤ max_k` and `2k ≤ n ≤ max_n`, ordered.
pub fn grid(max_k: usize, max_n: usize) -> Vec<(usize, usize)> {
    (1..=max_k)
        .flat_map(|k| (2 * k..=max_n).map(move |n| (k, n)))
        .collect()
}

/// Runs the whole suite. Records are ordered by `(k, n)` and then by
/// generation order, independently of scheduling.
pub fn run_suite(opts: &VerifyOptions) -> Vec<VerificationRecord> {
    let pairs = grid(opts.max_k, opts.max_n);
    let per_pair: BTreeMap<(usize, usize), Vec<VerificationRecord>> = pairs
        .par_iter()
        .map(|&(k, n)| ((k, n), verify_pair(k, n, opts)))
        .collect();
    let mut out = example_records(opts);
    for (_, v) in per_pair {
        out.extend(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_pair_records() {
        let opts = VerifyOptions::default();
        let recs = verify_pair(2, 4, &opts);
        assert!(recs.iter().all(|r| r.status == Status::Pass), "{recs:#?}");
        assert!(recs.iter().any(|r| r.id.starts_with("flag/")));
    }

    #[test]
    fn failures_keep_both_values() {
        let opts = VerifyOptions::default();
        let recs = verify_pair(2, 6, &opts);
        let r = recs.iter().find(|r| r.id == "zcl-g2/basic/k2n6").unwrap();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.expected, "8");
        assert!(r.computed.starts_with("10 via"));
    }

    #[test]
    fn grid_order() {
        assert_eq!(
            grid(2, 5),
            vec![(1, 2), (1, 3), (1, 4), (1, 5), (2, 4), (2, 5)]
        );
    }
}
