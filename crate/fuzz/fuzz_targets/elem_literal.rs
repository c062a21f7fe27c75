#![no_main]

use libfuzzer_sys::fuzz_target;
use ringlab_core::expr::parse_elem_literal;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(lit) = parse_elem_literal(text) {
        let printed = lit.to_string();
        assert_eq!(parse_elem_literal(&printed).as_ref(), Ok(&lit), "{printed}");
    }
});
