#![no_main]

use libfuzzer_sys::fuzz_target;

use lambda_ring::parse::parse_weights;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(w) = parse_weights(text) {
        // accepted weight vectors are nonempty and strictly positive
        assert!(!w.is_empty());
        let _ = w.last();
    }
});
