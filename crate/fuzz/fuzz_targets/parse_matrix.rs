#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = contextia::io::parse_matrix(text) {
        // a decoded matrix must re-encode and decode to itself
        let again = serde_json::to_string(&m).unwrap();
        assert_eq!(contextia::io::parse_matrix(&again).unwrap(), m);
    }
});
