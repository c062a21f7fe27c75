#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use ringlab_core::expr::build_str;
use ringlab_core::report::{decomposition_from_json, decomposition_json};
use ringlab_core::ring::{FiniteRing, RingFactory};

fn rings() -> &'static [FiniteRing] {
    static RINGS: OnceLock<Vec<FiniteRing>> = OnceLock::new();
    RINGS.get_or_init(|| {
        ["Z25", "T2(Z2)", "prod(Z2,Z9)", "M2(Z2)"]
            .iter()
            .map(|t| build_str(t, &RingFactory::default()).unwrap())
            .collect()
    })
}

// Accepted records are valid decompositions and re-encode to an equivalent record.
fuzz_target!(|data: &[u8]| {
    let Some((&which, rest)) = data.split_first() else {
        return;
    };
    let Ok(value) = serde_json::from_slice::<serde_json::Value>(rest) else {
        return;
    };
    let ring = &rings()[which as usize % rings().len()];
    if let Ok(d) = decomposition_from_json(ring, &value) {
        assert!(d.validate(ring).is_ok());
        let again = decomposition_from_json(ring, &decomposition_json(ring, &d)).unwrap();
        assert_eq!(again, d);
    }
});
