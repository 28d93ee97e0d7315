//! Replays the fuzz corpus through the same checks the fuzz targets make,
//! so the seeds stay meaningful without a fuzzing toolchain.

use std::fs;
use std::path::PathBuf;

use grasstc::{cache, Polynomial, RingLimits, VarSpace};

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| fs::read(e.unwrap().path()).unwrap())
        .collect();
    assert!(!out.is_empty(), "no seeds for {target}");
    out.sort();
    out
}

#[test]
fn polynomial_seeds() {
    let mut accepted = 0;
    for data in seeds("parse_polynomial") {
        let Some((&k, rest)) = data.split_first() else {
            continue;
        };
        let Ok(text) = std::str::from_utf8(rest) else {
            continue;
        };
        let space = VarSpace::stiefel_whitney(1 + (k % 8) as usize);
        if let Ok(p) = Polynomial::parse(&space, text) {
            accepted += 1;
            assert_eq!(Polynomial::parse(&space, &p.to_string()).unwrap(), p);
        }
    }
    assert!(accepted > 0);
}

#[test]
fn cache_seeds() {
    let limits = RingLimits {
        max_block_bits: 1 << 16,
    };
    let mut accepted = 0;
    for data in seeds("decode_ring_cache") {
        let Ok(text) = std::str::from_utf8(&data) else {
            continue;
        };
        if let Ok(ring) = cache::decode(text, limits) {
            accepted += 1;
            let again = cache::encode(&ring).unwrap();
            let ring2 = cache::decode(&again, limits).unwrap();
            assert_eq!(cache::encode(&ring2).unwrap(), again);
        }
    }
    assert!(accepted >= 4);
}

#[test]
fn header_seeds() {
    let mut accepted = 0;
    for data in seeds("parse_cache_header") {
        let Ok(line) = std::str::from_utf8(&data) else {
            continue;
        };
        if let Ok((k, n)) = cache::parse_header(line) {
            accepted += 1;
            assert!(k <= n);
            assert_eq!(cache::parse_header(&cache::header(k, n)).unwrap(), (k, n));
        }
    }
    assert_eq!(accepted, 1);
}
