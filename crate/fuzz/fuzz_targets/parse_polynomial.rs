#![no_main]

use grasstc::{Polynomial, VarSpace};
use libfuzzer_sys::fuzz_target;

// First byte picks the number of generators; the rest is the text.
fuzz_target!(|data: &[u8]| {
    let Some((&k, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let space = VarSpace::stiefel_whitney(1 + (k % 8) as usize);
    if let Ok(p) = Polynomial::parse(&space, text) {
        // Display output must parse back to the same polynomial.
        let again = Polynomial::parse(&space, &p.to_string()).expect("display re-parses");
        assert_eq!(again, p);
    }
});
