#![no_main]

use demazure_core::CharElement;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(c) = CharElement::from_json(s) {
        assert_eq!(CharElement::from_json(&c.to_json()).unwrap(), c);
    }
});
