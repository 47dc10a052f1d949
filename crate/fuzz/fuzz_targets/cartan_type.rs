#![no_main]

use demazure_core::{CartanType, RootSystem};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(t) = s.parse::<CartanType>() {
        // anything that parses must round-trip and build
        assert_eq!(t.to_string().parse::<CartanType>().unwrap(), t);
        if t.rank() <= 4 {
            RootSystem::new(t).unwrap();
        }
    }
});
