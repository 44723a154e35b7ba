#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = contextia::io::parse_graph(text) {
        let _ = contextia::exclusivity::noncontextual_bound(&g);
    }
});
