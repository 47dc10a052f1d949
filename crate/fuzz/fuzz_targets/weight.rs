#![no_main]

use demazure_core::parse::{parse_aff_weight, parse_weight};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(w) = parse_weight(s, None) {
        let text = w.to_string();
        let inner = text.trim_start_matches('(').trim_end_matches(')');
        assert_eq!(parse_weight(inner, Some(w.rank())).unwrap(), w);
    }
    for rank in 1..=3 {
        let _ = parse_aff_weight(s, rank);
    }
});
