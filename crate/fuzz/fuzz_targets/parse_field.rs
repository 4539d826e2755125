#![no_main]

use libfuzzer_sys::fuzz_target;

use lambda_ring::parse::parse_field_spec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(field) = parse_field_spec(text) {
        let one = field.one();
        assert!(field.is_one(&one));
        let two = field.add(&one, &one);
        if !field.is_zero(&two) {
            let half = field.inv(&two).expect("nonzero element inverts");
            assert!(field.is_one(&field.mul(&two, &half)));
        }
    }
});
