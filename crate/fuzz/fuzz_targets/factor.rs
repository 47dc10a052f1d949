#![no_main]

use demazure_core::demazure::generalized_demazure_character;
use demazure_core::parse::parse_factors;
use demazure_core::RootSystem;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    for t in ["A1", "B2"] {
        let rs = RootSystem::new(t.parse().unwrap()).unwrap();
        let Ok(factors) = parse_factors(s, &rs) else { continue };
        // keep the character computation small
        let small = factors.iter().all(|f| {
            f.element.length(&rs) <= 6 && f.weight.level <= 3.into() && f.weight.fin.0.iter().all(|c| *c <= 3.into() && *c >= (-3).into())
        });
        if small && factors.len() <= 3 {
            if let Ok(d) = generalized_demazure_character(&rs, &factors) {
                d.check_invariants().unwrap();
            }
        }
    }
});
