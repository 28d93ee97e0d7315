//! Acceptance run: one line per criterion, `PASS` or `FAIL`.
//!
//! Criterion 5 is a known failure. The closed-form zero-divisor cup-lengths
//! disagree with the engine, and the flag oracle confirms the engine. That
//! criterion prints `FAIL`. The process exits non-zero only if the computed
//! table drifts from `KNOWN_ZCL`, so a regression is still caught.

use std::process::ExitCode;
use std::time::Instant;

use grasstc::bounds::{self, Criterion, Expectation, LowerBounds};
use grasstc::cells;
use grasstc::flag::{self, TopEvaluator};
use grasstc::ring::{binomial, dual_class, monomials_of_degree};
use grasstc::tensor::{self, flag_zd_product_is_nonzero, zd_product_is_nonzero};
use grasstc::{GrassmannRing, NormalForm, Polynomial, Result};

/// Engine values of `zcl` (basic and exact agree) for the closed-form ranges.
const KNOWN_ZCL: &[(usize, usize, u32)] = &[
    (2, 4, 4),
    (2, 5, 8),
    (2, 6, 10),
    (2, 7, 12),
    (2, 8, 12),
    (2, 9, 20),
    (2, 10, 22),
    (2, 11, 24),
    (2, 12, 24),
    (2, 13, 28),
    (2, 14, 28),
    (2, 15, 28),
    (2, 16, 28),
    (3, 7, 14),
    (3, 8, 14),
    (3, 9, 22),
    (3, 10, 27),
    (3, 11, 30),
    (3, 12, 31),
    (3, 13, 34),
    (3, 14, 35),
    (3, 15, 35),
    (3, 16, 35),
    (4, 15, 40),
    (4, 16, 40),
];

struct Outcome {
    pass: bool,
    detail: String,
    /// Failure that is documented and expected; does not fail the run.
    known: bool,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
            known: false,
        }
    }
}

fn poly(ring: &GrassmannRing, exps: &[u16]) -> Result<Polynomial> {
    Polynomial::from_exps(ring.space(), exps)
}

fn deg(exps: &[u16]) -> u32 {
    exps.iter()
        .enumerate()
        .map(|(i, &e)| (i as u32 + 1) * e as u32)
        .sum()
}

/// Flag verdict for a monomial; degrees above `dim` are zero.
fn flag_nonzero(k: usize, n: usize, exps: &[u16]) -> Result<bool> {
    if deg(exps) > (k * (n - k)) as u32 {
        return Ok(false);
    }
    let p = Polynomial::from_exps(&grasstc::VarSpace::stiefel_whitney(k), exps)?;
    Ok(flag::grassmann_nonzero_via_flag(&p, k, n)?.nonzero)
}

fn c1() -> Result<Outcome> {
    let ring = GrassmannRing::new(2, 6)?;
    let sp = ring.space().clone();
    let mut bad = Vec::new();
    for (j, text) in [(3, "w1^3"), (4, "w1^4 + w1^2*w2 + w2^2")] {
        if dual_class(2, j) != Polynomial::parse(&sp, text)? {
            bad.push(format!("dual class {j}"));
        }
    }
    let want = ["w1^5 + w1*w2^2", "w1^4*w2 + w1^2*w2^2 + w2^3"];
    for (i, text) in want.iter().enumerate() {
        let p = Polynomial::parse(&sp, text)?;
        if ring.relation_generators().get(i) != Some(&p) {
            bad.push(format!("relation {}", i + 5));
        }
        if ring.is_nonzero(&p)? {
            bad.push(format!("relation {} survives", i + 5));
        }
    }
    Ok(Outcome::new(
        bad.is_empty(),
        if bad.is_empty() {
            "dual classes and both relations reproduced; relations reduce to 0".into()
        } else {
            format!("mismatch: {bad:?}")
        },
    ))
}

fn w1_height_formula(k: usize, n: usize) -> u32 {
    let s = bounds::s_of(n).unwrap();
    let p = 1u32 << s;
    if k == 2 || (k == 3 && n as u32 == p + 1) {
        2 * p - 2
    } else {
        2 * p - 1
    }
}

fn c2() -> Result<Outcome> {
    let (mut cases, mut short_branch) = (0, 0);
    let mut bad = Vec::new();
    for n in 4..=16 {
        for k in 2..=n / 2 {
            let want = w1_height_formula(k, n);
            let s = bounds::s_of(n).unwrap();
            if want == (2 << s) - 2 {
                short_branch += 1;
            }
            let got = GrassmannRing::new(k, n)?.height_of_generator(0)?;
            cases += 1;
            if got != want {
                bad.push(format!("({k},{n}): {got} vs {want}"));
            }
        }
    }
    Ok(Outcome::new(
        bad.is_empty() && short_branch > 0 && short_branch < cases,
        format!("{cases} pairs, {short_branch} on the 2^(s+1)-2 branch, mismatches {bad:?}"),
    ))
}

fn c3() -> Result<Outcome> {
    let mut pairs: Vec<(usize, usize)> = (2..=4)
        .flat_map(|k| (2 * k..=16).map(move |n| (k, n)))
        .collect();
    pairs.push((5, 13));
    let (mut checked, mut flagged, mut skipped) = (0, 0, 0);
    let mut bad = Vec::new();
    for (k, n) in pairs {
        let pred = bounds::predict_products(k, n);
        let ring = GrassmannRing::new(k, n)?;
        let needs_cup = pred
            .claims
            .iter()
            .any(|c| c.is_applicable() && matches!(c.expectation, Expectation::MaximalLength));
        let cup = if needs_cup {
            Some(ring.max_monomial_cup_length()?)
        } else {
            None
        };
        for c in &pred.claims {
            if !c.is_applicable() {
                skipped += 1;
                continue;
            }
            checked += 1;
            let r = bounds::check_claim(&ring, c, cup.as_ref())?;
            if !r.holds {
                bad.push(format!("{} ({k},{n}): {}", c.id, r.computed));
            }
            if n <= 9 {
                flagged += 1;
                let ok = match &c.expectation {
                    Expectation::Nonzero | Expectation::MaximalLength => {
                        flag_nonzero(k, n, &c.exps)?
                    }
                    Expectation::Zero => !flag_nonzero(k, n, &c.exps)?,
                    Expectation::EqualTo { other } => {
                        let sum = poly(&ring, &c.exps)?.add(&poly(&ring, other)?)?;
                        flag_nonzero(k, n, &c.exps)?
                            && (sum.is_zero()
                                || !flag::grassmann_nonzero_via_flag(&sum, k, n)?.nonzero)
                    }
                    Expectation::Height { value } => {
                        let mut e = c.exps.clone();
                        e[0] = *value as u16;
                        let at = flag_nonzero(k, n, &e)?;
                        e[0] += 1;
                        at && !flag_nonzero(k, n, &e)?
                    }
                };
                if !ok {
                    bad.push(format!("flag {} ({k},{n})", c.id));
                }
            }
        }
    }
    Ok(Outcome::new(
        bad.is_empty() && checked > 0,
        format!(
            "{checked} applicable claims hold, {flagged} also flag-certified, \
             {skipped} out of range; failures {bad:?}"
        ),
    ))
}

fn c4() -> Result<Outcome> {
    let (mut cases, mut bad) = (0, Vec::new());
    for k in 1..=3 {
        for n in (2 * k).max(2)..=10 {
            let ring = GrassmannRing::new(k, n)?;
            for i in 0..k {
                let h = ring.height_of_generator(i)?;
                let want = bounds::rho(h as u64) as u32 - 1;
                let got = tensor::height_z(&ring, i + 1)?;
                cases += 1;
                if got != want {
                    bad.push(format!("w{} in ({k},{n}): {got} vs {want}", i + 1));
                }
            }
        }
    }
    Ok(Outcome::new(
        bad.is_empty(),
        format!("{cases} generators powered directly; mismatches {bad:?}"),
    ))
}

fn c5() -> Result<Outcome> {
    let mut diffs = Vec::new();
    let mut drift = Vec::new();
    let mut agree = 0;
    for &(k, n, known) in KNOWN_ZCL {
        let ring = GrassmannRing::new(k, n)?;
        let basic = tensor::zcl_basic(&ring)?;
        let exact = tensor::zcl_exact(&ring)?;
        if basic.zcl != known || exact.zcl != known {
            drift.push(format!(
                "({k},{n}) {} / {} vs {known}",
                basic.zcl, exact.zcl
            ));
        }
        let cf = bounds::closed_form_zcl(k, n).filter(|c| c.exact);
        let Some(cf) = cf else { continue };
        if cf.value == basic.zcl && cf.value == exact.zcl {
            agree += 1;
            continue;
        }
        // The closed-form witness, if longer than the engine value, must vanish.
        let witness_zero = !zd_product_is_nonzero(&ring, &cf.witness)?;
        diffs.push(format!(
            "({k},{n}) closed {} engine {} witness {}",
            cf.value,
            basic.zcl,
            if cf.value > basic.zcl {
                if witness_zero {
                    "zero"
                } else {
                    "NONZERO"
                }
            } else {
                "short"
            }
        ));
    }
    // Flag confirmation of two disputed cases.
    let flag_ok = !flag_zd_product_is_nonzero(3, 8, &[7, 7, 1])?
        && flag_zd_product_is_nonzero(2, 9, &[15, 5])?
        && !flag_zd_product_is_nonzero(2, 9, &[15, 6])?;
    let regression_free =
        drift.is_empty() && flag_ok && !diffs.iter().any(|d| d.contains("NONZERO"));
    Ok(Outcome {
        pass: diffs.is_empty() && drift.is_empty(),
        detail: format!(
            "{agree} agree, {} differ: {}; engine table {}; flag spot checks {}",
            diffs.len(),
            diffs.join("; "),
            if drift.is_empty() {
                "unchanged".to_string()
            } else {
                format!("DRIFTED {drift:?}")
            },
            if flag_ok {
                "confirm engine"
            } else {
                "DISAGREE"
            }
        ),
        known: regression_free,
    })
}

fn c6() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut sandwich = |k: usize, n: usize, lo: u32, hi: Option<u32>| -> Result<()> {
        let ring = GrassmannRing::new(k, n)?;
        let rep = bounds::bounds_report(&ring, false)?;
        let good = rep.tc.lower >= lo && hi.is_none_or(|h| rep.tc.upper == h);
        ok &= good;
        notes.push(format!(
            "({k},{n}) {} <= TC <= {} (stated {lo}..{})",
            rep.tc.lower,
            rep.tc.upper,
            hi.map_or("".into(), |h| h.to_string())
        ));
        Ok(())
    };
    sandwich(2, 4, 5, Some(7))?;
    sandwich(2, 13, 23, Some(43))?;
    sandwich(3, 11, 31, None)?;
    // The stated witnesses themselves.
    let r = GrassmannRing::new(2, 4)?;
    ok &= zd_product_is_nonzero(&r, &[3, 1])?;
    let r = GrassmannRing::new(2, 13)?;
    ok &= zd_product_is_nonzero(&r, &[15, 7])?;
    let r = GrassmannRing::new(3, 11)?;
    ok &= zd_product_is_nonzero(&r, &[15, 15, 0])?;
    let r = GrassmannRing::new(5, 13)?;
    let ring_ok = zd_product_is_nonzero(&r, &[15, 15, 0, 0, 0])?;
    let flag_ok = flag_zd_product_is_nonzero(5, 13, &[15, 15, 0, 0, 0])?;
    ok &= ring_ok && flag_ok;
    notes.push(format!(
        "(5,13) z(w1)^15 z(w2)^15 nonzero in ring {ring_ok}, via flag {flag_ok}, so TC >= 31"
    ));
    Ok(Outcome::new(ok, notes.join("; ")))
}

fn c7() -> Result<Outcome> {
    let mut ok = true;
    let mut degs = 0;
    for (k, n) in [(1, 3), (2, 4), (2, 5)] {
        let ring = GrassmannRing::new(k, n)?;
        for d in 0..=2 * ring.dim() {
            ok &= tensor::kernel_matches_ideal(&ring, d)?;
            degs += 1;
        }
    }
    Ok(Outcome::new(
        ok,
        format!("{degs} total degrees compared over three pairs"),
    ))
}

fn c8() -> Result<Outcome> {
    let (mut pairs, mut bad) = (0, Vec::new());
    for k in 1..=4 {
        for n in 2 * k..=16 {
            pairs += 1;
            let c = cells::cell_counts(k, n)?;
            if c.iter().sum::<u64>() != binomial(n as u64, k as u64) {
                bad.push(format!("total ({k},{n})"));
            }
            if !c.iter().eq(c.iter().rev()) {
                bad.push(format!("symmetry ({k},{n})"));
            }
            let betti = GrassmannRing::new(k, n)?.betti()?;
            if !betti.iter().map(|&b| b as u64).eq(c.iter().copied()) {
                bad.push(format!("betti ({k},{n})"));
            }
            if !cells::skeleton_agreement(k, n)? {
                bad.push(format!("skeleton ({k},{n})"));
            }
        }
    }
    Ok(Outcome::new(
        bad.is_empty(),
        format!("{pairs} pairs; failures {bad:?}"),
    ))
}

fn c9() -> Result<Outcome> {
    let stated = bounds::closed_form_lower_bounds(2, 9);
    let a = bounds::monotonicity_report(2, 6, 9, stated)?;
    let b = bounds::monotonicity_report(2, 7, 9, stated)?;
    let mut ok = a.tc == Criterion::Established && b.tc == Criterion::Inconclusive;
    let ring = GrassmannRing::new(2, 9)?;
    let rep = bounds::bounds_report(&ring, false)?;
    let engine = LowerBounds {
        cat: rep.cat.lower,
        tc: rep.tc.lower,
    };
    let b_engine = bounds::monotonicity_report(2, 7, 9, engine)?;
    let mut chains = 0;
    let mut bad = Vec::new();
    for k in 1..=3 {
        for n in 2 * k..=16 {
            let cup = GrassmannRing::new(k, n)?.max_monomial_cup_length()?;
            let lower = LowerBounds {
                cat: cup.length + 1,
                tc: cup.length + 1,
            };
            for m in 2 * k..=n {
                chains += 1;
                if bounds::monotonicity_report(k, m, n, lower)?.cat != Criterion::Established {
                    bad.push((k, m, n));
                }
            }
        }
    }
    ok &= bad.is_empty();
    Ok(Outcome::new(
        ok,
        format!(
            "(2,6,9) {:?} and (2,7,9) {:?} from TC >= {}; engine TC >= {} makes (2,7,9) {:?}; \
             {chains} cat chains, inconclusive {bad:?}",
            a.tc, b.tc, stated.tc, engine.tc, b_engine.tc
        ),
    ))
}

fn c10() -> Result<Outcome> {
    use proptest::prelude::*;
    use proptest::test_runner::{Config, TestRunner};

    let rings: Vec<GrassmannRing> = [(2, 6), (3, 7), (2, 7)]
        .into_iter()
        .map(|(k, n)| GrassmannRing::new(k, n))
        .collect::<Result<_>>()?;
    let mut runner = TestRunner::new(Config {
        cases: 200,
        failure_persistence: None,
        rng_algorithm: proptest::test_runner::RngAlgorithm::ChaCha,
        ..Config::default()
    });
    let terms = |k: usize| prop::collection::vec(prop::collection::vec(0u16..4, k), 0..5);
    let mut axioms = Ok(());
    for ring in &rings {
        let k = ring.k();
        let strat = (terms(k), terms(k), terms(k));
        let r = runner.run(&strat, |(a, b, c)| {
            let sp = ring.space();
            let mk = |t: &Vec<Vec<u16>>| -> Polynomial {
                let mut p = Polynomial::zero(sp);
                for e in t {
                    p = p.add(&Polynomial::from_exps(sp, e).unwrap()).unwrap();
                }
                p
            };
            let (a, b, c) = (mk(&a), mk(&b), mk(&c));
            let nf = |p: &Polynomial| ring.normal_form(p).unwrap();
            let (na, nb, nc) = (nf(&a), nf(&b), nf(&c));
            let m = |x: &NormalForm, y: &NormalForm| -> NormalForm { ring.mul_nf(x, y).unwrap() };
            prop_assert_eq!(nf(&a.mul(&b).unwrap()), m(&na, &nb));
            prop_assert_eq!(m(&na, &nb), m(&nb, &na));
            prop_assert_eq!(m(&m(&na, &nb), &nc), m(&na, &m(&nb, &nc)));
            prop_assert_eq!(
                m(&na, &nf(&b.add(&c).unwrap())),
                nf(&a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap())
            );
            let squares = a.terms().fold(Polynomial::zero(sp), |acc, t| {
                let sq =
                    Polynomial::from_exps(sp, &t.exps().iter().map(|&e| 2 * e).collect::<Vec<_>>())
                        .unwrap();
                acc.add(&sq).unwrap()
            });
            prop_assert_eq!(nf(&a.pow(2).unwrap()), nf(&squares));
            Ok(())
        });
        if let Err(e) = r {
            axioms = Err(format!("({},{}) {e}", ring.k(), ring.n()));
            break;
        }
    }

    let mut monomials = 0;
    let mut bad = Vec::new();
    for (k, n) in [(2, 4), (2, 5), (2, 6), (3, 6), (3, 7)] {
        let ring = GrassmannRing::new(k, n)?;
        let mut top = TopEvaluator::new(k, n)?;
        for d in 0..=ring.dim() {
            for e in monomials_of_degree(k, d) {
                monomials += 1;
                let engine = ring.monomial_is_nonzero(&e)?;
                let oracle = flag_nonzero(k, n, &e)?;
                if engine != oracle {
                    bad.push(format!("({k},{n}) {e:?}"));
                }
                if d == ring.dim() && top.eval(&e)? != engine {
                    bad.push(format!("top ({k},{n}) {e:?}"));
                }
            }
        }
    }
    Ok(Outcome::new(
        axioms.is_ok() && bad.is_empty(),
        format!(
            "randomized axioms, Frobenius and multiplicativity {}; \
             {monomials} monomials compared with the flag oracle, disagreements {bad:?}",
            match &axioms {
                Ok(()) => "hold".to_string(),
                Err(e) => format!("FAIL {e}"),
            }
        ),
    ))
}

fn main() -> ExitCode {
    type Check = fn() -> Result<Outcome>;
    let checks: [(u32, Check); 10] = [
        (1, c1),
        (2, c2),
        (3, c3),
        (4, c4),
        (5, c5),
        (6, c6),
        (7, c7),
        (8, c8),
        (9, c9),
        (10, c10),
    ];
    let mut unexpected = 0;
    for (id, f) in checks {
        let t = Instant::now();
        let outcome = f();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(o) => {
                let tag = match (o.pass, o.known) {
                    (true, _) => "PASS",
                    (false, true) => "FAIL (known, see notes)",
                    (false, false) => "FAIL",
                };
                if !o.pass && !o.known {
                    unexpected += 1;
                }
                println!("criterion {id}: {tag} [{secs:.2}s] {}", o.detail);
            }
            Err(e) => {
                unexpected += 1;
                println!("criterion {id}: FAIL [{secs:.2}s] error: {e}");
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    }
}
