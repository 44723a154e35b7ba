#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = contextia::io::parse_model(text) {
        let p = m.predict();
        assert!(p.total.is_finite());
    }
});
