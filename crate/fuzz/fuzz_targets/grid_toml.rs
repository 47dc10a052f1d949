#![no_main]

use demazure_core::theorems::GridConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(cfg) = GridConfig::from_toml(s) {
        assert_eq!(GridConfig::from_toml(&cfg.to_toml()).unwrap(), cfg);
    }
});
