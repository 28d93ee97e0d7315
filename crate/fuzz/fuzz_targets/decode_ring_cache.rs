#![no_main]

use grasstc::cache;
use grasstc::RingLimits;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let limits = RingLimits {
        max_block_bits: 1 << 16,
    };
    if let Ok(ring) = cache::decode(text, limits) {
        // Re-encoding is a fixed point of decode then encode.
        let again = cache::encode(&ring).expect("decoded ring encodes");
        let ring2 = cache::decode(&again, limits).expect("encoded ring decodes");
        assert_eq!(cache::encode(&ring2).unwrap(), again);
    }
});
