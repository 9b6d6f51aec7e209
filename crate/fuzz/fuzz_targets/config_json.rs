#![no_main]

use libfuzzer_sys::fuzz_target;
use tubular_lk::config::RunConfig;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(config) = RunConfig::from_json_str(text) {
            // accepted configs must survive their own validation and re-encoding
            assert!(config.validate().is_ok());
            let again = serde_json::to_string(&config).unwrap();
            assert_eq!(RunConfig::from_json_str(&again).unwrap(), config);
        }
    }
});
