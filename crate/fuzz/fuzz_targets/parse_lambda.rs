#![no_main]

use libfuzzer_sys::fuzz_target;

use lambda_ring::parse::parse_lambda_spec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(lam) = parse_lambda_spec(text) {
        // accepted specs must evaluate and validate without panicking
        let _ = lam.eval(0);
        let _ = lam.eval(3);
        let report = lam.validate(8);
        let _ = report.is_valid();
    }
});
