#![no_main]

use libfuzzer_sys::fuzz_target;

use lambda_ring::field::FieldDesc;
use lambda_ring::parse::parse_series;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for (field, nvars, prec) in [
        (FieldDesc::rationals(), 1usize, 4u32),
        (FieldDesc::rationals(), 3, 6),
        (FieldDesc::prime(7).unwrap(), 2, 5),
    ] {
        if let Ok(series) = parse_series(text, &field, nvars, prec) {
            // canonical invariants
            assert!(series.terms().all(|(m, _)| m.k < prec));
            assert!(series.terms().all(|(_, c)| !field.is_zero(c)));
            // canonical text must reparse to the same value
            let rendered = series.to_string();
            let back =
                parse_series(&rendered, &field, nvars, prec).expect("canonical text must reparse");
            assert_eq!(back, series);
        }
    }
});
