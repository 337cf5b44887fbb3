#![no_main]

use libfuzzer_sys::fuzz_target;
use lz3::config::ScenarioConfig;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(cfg) = ScenarioConfig::parse(text) {
            let again = ScenarioConfig::parse(&cfg.to_json()).unwrap();
            assert_eq!(cfg, again);
        }
    }
});
