//! Schubert cells of `G_k(R^n)`: partitions in a `k × (n-k)` box.

use serde::Serialize;

use crate::error::{Error, Result};

/// Non-decreasing `σ_1 ≤ … ≤ σ_k ≤ n-k`; the cell has dimension `Σ σ_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SchubertSymbol {
    pub sigma: Vec<u16>,
}

impl SchubertSymbol {
    pub fn dimension(&self) -> u32 {
        self.sigma.iter().map(|&x| x as u32).sum()
    }
}

fn check(k: usize, n: usize) -> Result<()> {
    if k > n || n > u16::MAX as usize {
        return Err(Error::usage(format!(
            "need 0 ≤ k ≤ n, got k = {k}, n = {n}"
        )));
    }
    Ok(())
}

/// Lexicographic successor among non-decreasing sequences bounded by `top`.
fn advance(sigma: &mut [u16], top: u16) -> bool {
    let Some(i) = sigma.iter().rposition(|&x| x < top) else {
        return false;
    };
    let v = sigma[i] + 1;
    sigma[i..].fill(v);
    true
}

/// All symbols, optionally of one dimension, in lexicographic order.
pub fn enumerate_symbols(k: usize, n: usize, d: Option<u32>) -> Result<Vec<SchubertSymbol>> {
    check(k, n)?;
    let top = (n - k) as u16;
    let mut sigma = vec![0u16; k];
    let mut out = Vec::new();
    loop {
        let s = SchubertSymbol {
            sigma: sigma.clone(),
        };
        if d.is_none_or(|d| s.dimension() == d) {
            out.push(s);
        }
        if !advance(&mut sigma, top) {
            return Ok(out);
        }
    }
}

/// Number of cells in each dimension `0..=k(n-k)`.
pub fn cell_counts(k: usize, n: usize) -> Result<Vec<u64>> {
    check(k, n)?;
    let (dim, width) = (k * (n - k), n - k);
    // table[m][d]: partitions of d into the parts placed so far, all ≤ m.
    let mut table = vec![vec![0u64; dim + 1]; width + 1];
    for row in table.iter_mut() {
        row[0] = 1;
    }
    for _ in 0..k {
        let mut next = vec![vec![0u64; dim + 1]; width + 1];
        for (m, row) in next.iter_mut().enumerate() {
            // The new part v is the largest, so the rest are ≤ v.
            for v in 0..=m {
                for d in v..=dim {
                    row[d] += table[v][d - v];
                }
            }
        }
        table = next;
    }
    Ok(table.swap_remove(width))
}

/// Whether `G_k(R^n)` and `G_k(R^{n+1})` have the same cells up to
/// dimension `n-k`.
pub fn skeleton_agreement(k: usize, n: usize) -> Result<bool> {
    if 2 * k > n {
        return Err(Error::usage(format!("need 2k ≤ n, got k = {k}, n = {n}")));
    }
    for d in 0..=(n - k) as u32 {
        if enumerate_symbols(k, n, Some(d))? != enumerate_symbols(k, n + 1, Some(d))? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::binomial;

    #[test]
    fn small_boxes() {
        assert_eq!(cell_counts(2, 4).unwrap(), vec![1, 1, 2, 1, 1]);
        assert_eq!(cell_counts(1, 5).unwrap(), vec![1; 5]);
        assert_eq!(enumerate_symbols(2, 5, None).unwrap().len(), 10);
        let syms = enumerate_symbols(2, 4, None).unwrap();
        let mut sorted = syms.clone();
        sorted.sort();
        assert_eq!(syms, sorted);
        assert_eq!(syms[1].sigma, vec![0, 1]);
    }

    #[test]
    fn counts_match_enumeration() {
        for k in 0..=4 {
            for n in k..=10 {
                let c = cell_counts(k, n).unwrap();
                assert_eq!(c.iter().sum::<u64>(), binomial(n as u64, k as u64));
                for (d, &x) in c.iter().enumerate() {
                    assert_eq!(
                        enumerate_symbols(k, n, Some(d as u32)).unwrap().len() as u64,
                        x
                    );
                }
            }
        }
    }

    #[test]
    fn skeleton() {
        assert!(skeleton_agreement(2, 4).unwrap());
        assert!(skeleton_agreement(3, 6).unwrap());
        assert_eq!(enumerate_symbols(2, 4, Some(3)).unwrap().len(), 1);
        assert_eq!(enumerate_symbols(2, 5, Some(3)).unwrap().len(), 2);
        assert!(skeleton_agreement(3, 5).is_err());
    }
}
