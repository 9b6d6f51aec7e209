#![no_main]

use libfuzzer_sys::fuzz_target;
use tubular_lk::classify::SuiteReport;
use tubular_lk::report::{FrameReport, LkSummary};

fuzz_target!(|data: &[u8]| {
    let _ = serde_json::from_slice::<SuiteReport>(data);
    let _ = serde_json::from_slice::<LkSummary>(data);
    let _ = serde_json::from_slice::<FrameReport>(data);
});
