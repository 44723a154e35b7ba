#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let tol = contextia::Tolerances::default();
    if let Ok(doc) = contextia::io::parse_scenario(text, &tol) {
        let _ = doc.scenario.value(&tol);
    }
});
