#![no_main]

use grasstc::cache;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(line) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok((k, n)) = cache::parse_header(line) {
        assert!(k <= n);
        assert_eq!(cache::parse_header(&cache::header(k, n)).unwrap(), (k, n));
    }
});
