#![no_main]

use libfuzzer_sys::fuzz_target;
use ringlab_core::expr::{build_str, format_elem, resolve_literal};
use ringlab_core::ring::RingFactory;

// Building under a small cap either fails cleanly or yields a ring whose
// canonical literals resolve back to their elements.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(ring) = build_str(text, &RingFactory::new(512)) else {
        return;
    };
    for e in ring.elements().take(16) {
        let lit = format_elem(&ring, e);
        assert_eq!(resolve_literal(&ring, &lit), Ok(e));
    }
});
