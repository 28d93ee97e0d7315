//! Text serialization of ring normal-form tables and an on-disk cache.
//!
//! ```text
//! GRASSTC-NF v1 k=<k> n=<n>
//! degree <d>
//! basis <m1> <m2> …
//! nf <monomial> = <polynomial>     (one row per monomial of degree d, descending)
//! …
//! end
//! ```

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, VarSpace};
use crate::ring::{monomials_of_degree, GrassmannRing, RingLimits};

pub const MAGIC: &str = "GRASSTC-NF";
pub const VERSION: u32 = 1;
/// Environment variable naming the cache directory.
pub const CACHE_DIR_ENV: &str = "GRASSTC_CACHE_DIR";

/// Largest `n` accepted from a cache header.
const MAX_HEADER_N: usize = 64;

pub fn header(k: usize, n: usize) -> String {
    format!("{MAGIC} v{VERSION} k={k} n={n}")
}

/// Serializes every degree of `ring` (building missing degrees first).
pub fn encode(ring: &GrassmannRing) -> Result<String> {
    let space = ring.space();
    let mut out = header(ring.k(), ring.n());
    out.push('\n');
    for table in ring.tables()? {
        out.push_str(&format!("degree {}\nbasis", table.degree()));
        for i in 0..table.basis_len() {
            out.push(' ');
            out.push_str(&space.format_monomial(&space.monomial(table.basis_exps(i))?));
        }
        out.push('\n');
        for (pos, exps) in table.monomials().iter().enumerate() {
            let m = space.monomial(exps)?;
            let nf = Polynomial::from_terms(
                space,
                table
                    .nf(pos)
                    .iter_ones()
                    .map(|i| space.monomial(table.basis_exps(i)).unwrap()),
            );
            out.push_str(&format!("nf {} = {nf}\n", space.format_monomial(&m)));
        }
    }
    out.push_str("end\n");
    Ok(out)
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.iter
            .next()
            .map(|(i, l)| (i + 1, l))
            .ok_or_else(|| Error::Corrupt(format!("unexpected end of file, expected {what}")))
    }
}

fn corrupt(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Corrupt(format!("line {line}: {msg}"))
}

/// Parses the header line into `(k, n)`.
pub fn parse_header(line: &str) -> Result<(usize, usize)> {
    let rest = line
        .strip_prefix(MAGIC)
        .and_then(|r| r.strip_prefix(' '))
        .ok_or_else(|| corrupt(1, "missing magic"))?;
    let mut parts = rest.split(' ');
    let version = parts
        .next()
        .and_then(|v| v.strip_prefix('v'))
        .and_then(|v| v.parse::<u32>().ok());
    if version != Some(VERSION) {
        return Err(corrupt(1, format!("unsupported version in {line:?}")));
    }
    let field = |p: Option<&str>, key: &str| -> Result<usize> {
        p.and_then(|p| p.strip_prefix(key))
            .and_then(|v| v.strip_prefix('='))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| corrupt(1, format!("bad {key} field")))
    };
    let k = field(parts.next(), "k")?;
    let n = field(parts.next(), "n")?;
    if parts.next().is_some() {
        return Err(corrupt(1, "trailing header fields"));
    }
    if n > MAX_HEADER_N || k > n {
        return Err(corrupt(1, format!("implausible parameters k={k} n={n}")));
    }
    Ok((k, n))
}

/// Rebuilds a ring from [`encode`] output, validating structure.
pub fn decode(text: &str, limits: RingLimits) -> Result<GrassmannRing> {
    let mut lines = Lines {
        iter: text.lines().enumerate(),
    };
    let (_, head) = lines.next("header")?;
    let (k, n) = parse_header(head)?;
    let shell = GrassmannRing::with_limits(k, n, limits).map_err(|e| match e {
        Error::Io(e) => Error::Io(e),
        other => corrupt(1, other),
    })?;
    let space = shell.space().clone();
    let mut tables = Vec::new();
    let mut total = 0u64;
    for d in 0..=shell.dim() {
        let (ln, line) = lines.next("degree line")?;
        if line != format!("degree {d}") {
            return Err(corrupt(ln, format!("expected `degree {d}`")));
        }
        let expected = monomials_of_degree(k, d);
        let (ln, line) = lines.next("basis line")?;
        let list = line
            .strip_prefix("basis")
            .ok_or_else(|| corrupt(ln, "expected basis line"))?;
        let mut basis_monos = Vec::new();
        for tok in list.split_whitespace() {
            basis_monos.push(parse_mono(&space, tok, d, ln)?);
        }
        let mut basis = Vec::with_capacity(basis_monos.len());
        for m in &basis_monos {
            let pos = expected
                .iter()
                .position(|e| **e == *m.exps())
                .ok_or_else(|| corrupt(ln, "basis monomial of wrong degree"))?;
            if basis.last().is_some_and(|&p| p >= pos as u32) {
                return Err(corrupt(ln, "basis not in canonical order"));
            }
            basis.push(pos as u32);
        }
        let mut nf = Vec::with_capacity(expected.len());
        for (pos, exps) in expected.iter().enumerate() {
            let (ln, line) = lines.next("nf row")?;
            let (lhs, rhs) = line
                .strip_prefix("nf ")
                .and_then(|r| r.split_once(" = "))
                .ok_or_else(|| corrupt(ln, "expected `nf <monomial> = <polynomial>`"))?;
            if *parse_mono(&space, lhs, d, ln)?.exps() != **exps {
                return Err(corrupt(ln, "nf rows out of canonical order"));
            }
            let value = Polynomial::parse(&space, rhs).map_err(|e| corrupt(ln, e))?;
            let mut v = BitVec::zeros(basis.len());
            for t in value.terms() {
                let i = basis_monos
                    .iter()
                    .position(|b| b == t)
                    .ok_or_else(|| corrupt(ln, "normal form uses a non-basis monomial"))?;
                v.set(i, true);
            }
            if let Ok(i) = basis.binary_search(&(pos as u32)) {
                if v != BitVec::unit(basis.len(), i) {
                    return Err(corrupt(ln, "basis monomial does not reduce to itself"));
                }
            }
            nf.push(v);
        }
        total += basis.len() as u64;
        tables.push((expected, basis, nf));
    }
    let (ln, line) = lines.next("end")?;
    if line != "end" {
        return Err(corrupt(ln, "expected `end`"));
    }
    if let Some((ln, _)) = lines.iter.next() {
        return Err(corrupt(ln + 1, "trailing content after `end`"));
    }
    if total != crate::ring::binomial(n as u64, k as u64) {
        return Err(Error::Corrupt(format!(
            "total rank {total} differs from C({n},{k})"
        )));
    }
    GrassmannRing::from_tables(k, n, limits, tables)
}

fn parse_mono(space: &VarSpace, tok: &str, d: u32, ln: usize) -> Result<Monomial> {
    let m = space.parse_monomial(tok).map_err(|e| corrupt(ln, e))?;
    if m.degree() != d {
        return Err(corrupt(ln, format!("{tok} is not of degree {d}")));
    }
    Ok(m)
}

/// Directory of `G<k>_R<n>.nf` files.
#[derive(Clone, Debug)]
pub struct RingCache {
    dir: PathBuf,
}

impl RingCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        RingCache { dir: dir.into() }
    }

    /// Explicit directory first, then the environment variable.
    pub fn from_env_or(dir: Option<PathBuf>) -> Option<Self> {
        dir.or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
            .map(RingCache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, k: usize, n: usize) -> PathBuf {
        self.dir.join(format!("G{k}_R{n}.nf"))
    }

    /// `None` when absent; unreadable or stale files are reported as
    /// warnings and treated as absent.
    pub fn load(&self, k: usize, n: usize, limits: RingLimits) -> Option<GrassmannRing> {
        let path = self.path(k, n);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => {
                log::warn!("ignoring unreadable cache file {}: {e}", path.display());
                return None;
            }
        };
        match decode(&text, limits) {
            Ok(ring) if ring.k() == k && ring.n() == n => Some(ring),
            Ok(_) => {
                log::warn!("ignoring cache file {} for another ring", path.display());
                None
            }
            Err(e) => {
                log::warn!("ignoring cache file {}: {e}", path.display());
                None
            }
        }
    }

    /// Writes atomically: a temporary file in the same directory is renamed
    /// over the target.
    pub fn store(&self, ring: &GrassmannRing) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let text = encode(ring)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(text.as_bytes())?;
        tmp.as_file().sync_all()?;
        let path = self.path(ring.k(), ring.n());
        tmp.persist(&path).map_err(|e| Error::Io(e.error))?;
        Ok(path)
    }

    /// Loads from the cache or builds fully and stores.
    pub fn load_or_build(&self, k: usize, n: usize, limits: RingLimits) -> Result<GrassmannRing> {
        if let Some(ring) = self.load(k, n, limits) {
            return Ok(ring);
        }
        let ring = GrassmannRing::with_limits(k, n, limits)?;
        ring.ensure_all()?;
        if let Err(e) = self.store(&ring) {
            log::warn!("could not write ring cache: {e}");
        }
        Ok(ring)
    }
}
