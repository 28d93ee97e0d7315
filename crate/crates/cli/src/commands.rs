use std::fmt::Write as _;

use rayon::prelude::*;
use serde_json::{json, Value};

use grasstc::bounds::{self, BoundsReport};
use grasstc::cells as cellmod;
use grasstc::flag::{self, FlagCertificate, MAX_FLAG_N};
use grasstc::tensor;
use grasstc::verify::{self, Status, Summary, VerifyOptions};
use grasstc::{Error, GrassmannRing, Polynomial, Result};

use crate::output::Output;
use crate::{Context, Pair, EXIT_INFEASIBLE, EXIT_VERIFY_FAILED};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// Published closed forms and worked examples.
    Paper,
}

/// Inclusive range of small integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Range {
    pub start: usize,
    pub end: usize,
}

const MAX_RANGE_END: usize = 64;

pub fn parse_range(text: &str) -> std::result::Result<Range, String> {
    let num = |s: &str| s.trim().parse::<usize>().map_err(|e| format!("{s:?}: {e}"));
    let (start, end) = if let Some((a, b)) = text.split_once("..=") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = text.split_once("..") {
        let b = num(b)?;
        if b == 0 {
            return Err("empty range".into());
        }
        (num(a)?, b - 1)
    } else {
        let v = num(text)?;
        (v, v)
    };
    if start > end {
        return Err(format!("empty range {text:?}"));
    }
    if end > MAX_RANGE_END {
        return Err(format!("range end {end} exceeds {MAX_RANGE_END}"));
    }
    Ok(Range { start, end })
}

fn title(k: usize, n: usize) -> String {
    format!("G_{k}(R^{n})")
}

pub fn ring(ctx: &Context, p: Pair) -> Result<Output> {
    let r = ctx.ring(p)?;
    let betti = r.betti()?;
    let total: usize = betti.iter().sum();
    let rels: Vec<String> = r
        .relation_generators()
        .iter()
        .map(|x| x.to_string())
        .collect();
    let gens: Vec<String> = (0..r.k()).map(|i| r.space().name(i).to_string()).collect();

    let mut plain = format!(
        "{}: dimension {}, generators {}\nrelations:\n",
        title(r.k(), r.n()),
        r.dim(),
        gens.join(" ")
    );
    for rel in &rels {
        let _ = writeln!(plain, "  {rel}");
    }
    plain.push_str("degree  basis\n");
    for (d, b) in betti.iter().enumerate() {
        let _ = writeln!(plain, "{d:>6}  {b}");
    }
    let _ = writeln!(plain, "total   {total}");

    let json = json!({
        "k": r.k(), "n": r.n(), "dim": r.dim(),
        "generators": gens, "relations": rels,
        "betti": betti, "total": total,
    });
    let rows = betti
        .iter()
        .enumerate()
        .map(|(d, b)| vec![d.to_string(), b.to_string()])
        .collect();
    Ok(Output::new(plain, json, vec!["degree", "basis_size"], rows))
}

fn certificate_json(c: &FlagCertificate) -> Value {
    json!({
        "multiplier": c.multiplier,
        "permutation": c.permutation,
        "multiplier_text": c.multiplier_text(),
        "permutation_text": c.permutation_text(),
    })
}

pub fn height(ctx: &Context, p: Pair, class: Option<&str>, certificate: bool) -> Result<Output> {
    let r = ctx.ring(p)?;
    let (k, n) = (r.k(), r.n());
    let classes: Vec<Polynomial> = match class {
        Some(text) => vec![Polynomial::parse(r.space(), text)?],
        None => (0..k)
            .map(|i| Polynomial::var(r.space(), i))
            .collect::<Result<_>>()?,
    };
    let mut entries = Vec::new();
    let mut plain = format!("{}\n", title(k, n));
    let mut rows = Vec::new();
    for c in &classes {
        let h = r.height(c)?;
        let cert = if certificate {
            if !c.is_homogeneous() {
                return Err(Error::Usage("certificates need a homogeneous class".into()));
            }
            if n > MAX_FLAG_N {
                None
            } else {
                flag::grassmann_nonzero_via_flag(&c.pow(h)?, k, n)?.certificate
            }
        } else {
            None
        };
        let name = c.to_string();
        let _ = write!(plain, "height({name}) = {h}");
        if let Some(cert) = &cert {
            let _ = write!(
                plain,
                "  certificate: multiplier {}, permutation {}",
                cert.multiplier_text(),
                cert.permutation_text()
            );
        } else if certificate {
            let _ = write!(plain, "  certificate: unavailable for n > {MAX_FLAG_N}");
        }
        plain.push('\n');
        rows.push(vec![
            name.clone(),
            h.to_string(),
            cert.as_ref()
                .map(|c| c.multiplier_text())
                .unwrap_or_default(),
            cert.as_ref()
                .map(|c| c.permutation_text())
                .unwrap_or_default(),
        ]);
        let mut e = json!({ "class": name, "height": h });
        if certificate {
            e["certificate"] = cert.as_ref().map_or(Value::Null, certificate_json);
        }
        entries.push(e);
    }
    let json = json!({ "k": k, "n": n, "heights": entries });
    Ok(Output::new(
        plain,
        json,
        vec!["class", "height", "multiplier", "permutation"],
        rows,
    ))
}

fn monomial_text(r: &GrassmannRing, e: &[u16]) -> Result<String> {
    Ok(r.space().format_monomial(&r.space().monomial(e)?))
}

pub fn cuplength(ctx: &Context, p: Pair) -> Result<Output> {
    let r = ctx.ring(p)?;
    let c = r.max_monomial_cup_length()?;
    let w = monomial_text(&r, &c.witness)?;
    let plain = format!(
        "{}: cup-length {} via {w}\ncat >= {}\n",
        title(r.k(), r.n()),
        c.length,
        c.length + 1
    );
    let json = json!({
        "k": r.k(), "n": r.n(), "length": c.length,
        "witness": w, "witness_exponents": c.witness, "cat_lower": c.length + 1,
    });
    let row = vec![
        r.k().to_string(),
        r.n().to_string(),
        c.length.to_string(),
        w,
        (c.length + 1).to_string(),
    ];
    Ok(Output::new(
        plain,
        json,
        vec!["k", "n", "length", "witness", "cat_lower"],
        vec![row],
    ))
}

pub fn zcl(ctx: &Context, p: Pair, exact: bool) -> Result<Output> {
    let r = ctx.ring(p)?;
    let b = tensor::zcl_basic(&r)?;
    let e = if exact {
        Some(tensor::zcl_exact(&r)?)
    } else {
        None
    };
    let best = e.as_ref().map_or(b.zcl, |e| e.zcl.max(b.zcl));
    let mut plain = format!(
        "{}: zcl >= {} via {}\n",
        title(r.k(), r.n()),
        b.zcl,
        b.witness
    );
    let mut json = json!({
        "k": r.k(), "n": r.n(), "zcl": b.zcl,
        "witness": b.witness.to_string(), "witness_exponents": b.witness.m,
        "tc_lower": best + 1,
    });
    if let Some(e) = &e {
        let _ = writeln!(plain, "exact zcl = {} via {}", e.zcl, e.witness);
        json["zcl_exact"] = e.zcl.into();
        json["exact_witness"] = e.witness.to_string().into();
        if let Some((y1, y2)) = &e.y {
            let s = r.space();
            json["dual_pair"] = json!([s.format_monomial(y1), s.format_monomial(y2)]);
        }
    }
    let _ = writeln!(plain, "TC >= {}", best + 1);
    let row = vec![
        r.k().to_string(),
        r.n().to_string(),
        b.zcl.to_string(),
        b.witness.to_string(),
        e.as_ref().map(|e| e.zcl.to_string()).unwrap_or_default(),
        (best + 1).to_string(),
    ];
    Ok(Output::new(
        plain,
        json,
        vec!["k", "n", "zcl", "witness", "zcl_exact", "tc_lower"],
        vec![row],
    ))
}

/// Full report, or a closed-form-only report when the ring is out of reach.
fn report_for(ctx: &Context, p: Pair, exact: bool) -> Result<BoundsReport> {
    match ctx.ring(p).and_then(|r| bounds::bounds_report(&r, exact)) {
        Err(Error::Infeasible(msg)) => {
            log::warn!(
                "{}: {msg}; reporting closed forms only",
                title(p.k as usize, p.n as usize)
            );
            bounds::partial_bounds_report(p.k as usize, p.n as usize)
        }
        other => other,
    }
}

fn bounds_plain(rep: &BoundsReport) -> String {
    let mut s = format!("{}, dimension {}\n", title(rep.k, rep.n), rep.dim);
    let _ = writeln!(
        s,
        "cat: {} <= cat <= {}  (lower via {})",
        rep.cat.lower, rep.cat.upper, rep.cat.witness
    );
    let _ = writeln!(
        s,
        "TC:  {} <= TC <= {}  (lower via {}; upper: {})",
        rep.tc.lower, rep.tc.upper, rep.tc.witness, rep.tc.upper_mechanism
    );
    let _ = write!(s, "zcl: {}", rep.tc.zcl);
    if let Some(e) = rep.tc.zcl_exact {
        let _ = write!(s, ", exact {e}");
    }
    s.push('\n');
    if let Some(cf) = &rep.closed_form {
        let _ = writeln!(
            s,
            "closed form ({}): {} via {}, {}",
            cf.source,
            cf.value,
            tensor::ZeroDivisorMonomial {
                m: cf.witness.clone()
            },
            if cf.exact {
                "stated as exact"
            } else {
                "stated as a lower bound"
            }
        );
    }
    if !rep.complete {
        s.push_str("partial report: ring not built, lower bounds unverified\n");
    }
    for e in &rep.exceptions {
        let _ = writeln!(s, "note: {e}");
    }
    s
}

const TABLE_HEADER: [&str; 13] = [
    "k",
    "n",
    "dim",
    "cat_lower",
    "cat_upper",
    "tc_lower",
    "tc_upper",
    "zcl",
    "zcl_exact",
    "closed_form_zcl",
    "closed_form_exact",
    "tc_witness",
    "complete",
];

fn table_row(rep: &BoundsReport) -> Vec<String> {
    vec![
        rep.k.to_string(),
        rep.n.to_string(),
        rep.dim.to_string(),
        rep.cat.lower.to_string(),
        rep.cat.upper.to_string(),
        rep.tc.lower.to_string(),
        rep.tc.upper.to_string(),
        rep.tc.zcl.to_string(),
        rep.tc.zcl_exact.map(|v| v.to_string()).unwrap_or_default(),
        rep.closed_form
            .as_ref()
            .map(|c| c.value.to_string())
            .unwrap_or_default(),
        rep.closed_form
            .as_ref()
            .map(|c| c.exact.to_string())
            .unwrap_or_default(),
        rep.tc.witness.clone(),
        rep.complete.to_string(),
    ]
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

pub fn bounds(ctx: &Context, p: Pair, exact: bool) -> Result<Output> {
    let rep = report_for(ctx, p, exact)?;
    let exit = if rep.complete {
        0
    } else {
        EXIT_INFEASIBLE as i32
    };
    Ok(Output::new(
        bounds_plain(&rep),
        to_json(&rep),
        TABLE_HEADER.to_vec(),
        vec![table_row(&rep)],
    )
    .with_exit(exit))
}

pub fn cells(p: Pair, dimension: Option<u32>) -> Result<Output> {
    let (k, n) = (p.k as usize, p.n as usize);
    let counts = cellmod::cell_counts(k, n)?;
    let total: u64 = counts.iter().sum();
    let mut plain = format!("{}: {total} cells\ndimension  count\n", title(k, n));
    for (d, c) in counts.iter().enumerate() {
        let _ = writeln!(plain, "{d:>9}  {c}");
    }
    let mut json = json!({ "k": k, "n": n, "total": total, "counts": counts });
    let mut header = vec!["dimension", "count"];
    let mut rows: Vec<Vec<String>> = counts
        .iter()
        .enumerate()
        .map(|(d, c)| vec![d.to_string(), c.to_string()])
        .collect();
    if let Some(d) = dimension {
        let syms = cellmod::enumerate_symbols(k, n, Some(d))?;
        let _ = writeln!(plain, "symbols of dimension {d}:");
        for s in &syms {
            let parts: Vec<String> = s.sigma.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(plain, "  ({})", parts.join(","));
        }
        json["dimension"] = d.into();
        json["symbols"] = syms.iter().map(|s| to_json(&s.sigma)).collect();
        header = vec!["dimension", "symbol"];
        rows = syms
            .iter()
            .map(|s| {
                let parts: Vec<String> = s.sigma.iter().map(|x| x.to_string()).collect();
                vec![d.to_string(), parts.join(" ")]
            })
            .collect();
    }
    Ok(Output::new(plain, json, header, rows))
}

pub fn table(ctx: &Context, ks: Range, ns: Range, exact: bool) -> Result<Output> {
    let pairs: Vec<Pair> = (ks.start.max(1)..=ks.end)
        .flat_map(|k| (ns.start.max(2 * k)..=ns.end).map(move |n| (k, n)))
        .map(|(k, n)| Pair {
            k: k as u16,
            n: n as u16,
        })
        .collect();
    if pairs.is_empty() {
        return Err(Error::Usage(
            "no (k, n) with 1 ≤ k and 2k ≤ n in the given ranges".into(),
        ));
    }
    let reports: Vec<BoundsReport> = pairs
        .par_iter()
        .map(|&p| report_for(ctx, p, exact))
        .collect::<Result<_>>()?;
    let mut plain = String::new();
    let widths = [3, 3, 4, 9, 9, 8, 8, 4];
    let _ = writeln!(
        plain,
        "{:>3} {:>3} {:>4} {:>9} {:>9} {:>8} {:>8} {:>4}  witness",
        "k", "n", "dim", "cat_lower", "cat_upper", "tc_lower", "tc_upper", "zcl"
    );
    for r in &reports {
        let row = table_row(r);
        for (cell, w) in row.iter().zip(widths) {
            let _ = write!(plain, "{cell:>w$} ");
        }
        let _ = writeln!(
            plain,
            " {}{}",
            r.tc.witness,
            if r.complete { "" } else { "  (partial)" }
        );
    }
    let complete = reports.iter().all(|r| r.complete);
    let json = json!({ "rows": reports.iter().map(to_json).collect::<Vec<_>>() });
    let rows = reports.iter().map(table_row).collect();
    let out = Output::new(plain, json, TABLE_HEADER.to_vec(), rows);
    Ok(if complete {
        out
    } else {
        out.with_exit(EXIT_INFEASIBLE as i32)
    })
}

pub fn verify(
    ctx: &Context,
    _suite: Suite,
    max_k: usize,
    max_n: usize,
    exact: bool,
) -> Result<Output> {
    let opts = VerifyOptions {
        max_k,
        max_n,
        exact,
        limits: ctx.limits,
        cache: ctx.cache.clone(),
        ..VerifyOptions::default()
    };
    let records = verify::run_suite(&opts);
    let summary = Summary::of(&records);
    let mut plain = String::new();
    for r in &records {
        let _ = writeln!(
            plain,
            "{:<12} {}: expected {}; computed {}",
            r.status.as_str(),
            r.id,
            r.expected,
            r.computed
        );
    }
    let _ = writeln!(
        plain,
        "summary: {} pass, {} fail, {} inapplicable, {} infeasible",
        summary.pass, summary.fail, summary.inapplicable, summary.infeasible
    );
    let json = json!({
        "suite": "paper", "max_k": max_k, "max_n": max_n, "exact": exact,
        "summary": to_json(&summary),
        "records": records.iter().map(to_json).collect::<Vec<_>>(),
    });
    let rows = records
        .iter()
        .map(|r| {
            vec![
                r.id.clone(),
                r.status.as_str().to_string(),
                r.expected.clone(),
                r.computed.clone(),
            ]
        })
        .collect();
    let exit = if records.iter().any(|r| r.status == Status::Fail) {
        EXIT_VERIFY_FAILED
    } else if summary.infeasible > 0 {
        EXIT_INFEASIBLE
    } else {
        0
    };
    Ok(Output::new(
        plain,
        json,
        vec!["id", "status", "expected", "computed"],
        rows,
    )
    .with_exit(exit as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..=4"), Ok(Range { start: 2, end: 4 }));
        assert_eq!(parse_range("2..5"), Ok(Range { start: 2, end: 4 }));
        assert_eq!(parse_range("7"), Ok(Range { start: 7, end: 7 }));
        assert!(parse_range("5..3").is_err());
        assert!(parse_range("0..0").is_err());
        assert!(parse_range("1..=1000").is_err());
        assert!(parse_range("x").is_err());
    }
}
