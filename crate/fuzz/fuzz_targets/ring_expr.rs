#![no_main]

use libfuzzer_sys::fuzz_target;
use ringlab_core::expr::parse_ring_expr;

// Anything that parses prints back to text that parses to the same tree.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(expr) = parse_ring_expr(text) {
        let printed = expr.to_string();
        assert_eq!(parse_ring_expr(&printed).as_ref(), Ok(&expr), "{printed}");
    }
});
