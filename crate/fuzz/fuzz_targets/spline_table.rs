#![no_main]

use libfuzzer_sys::fuzz_target;
use tubular_lk::spline::NaturalSpline;

fuzz_target!(|data: &[u8]| {
    if let Ok(spline) = serde_json::from_slice::<NaturalSpline>(data) {
        let (a, b) = spline.domain();
        for i in 0..=8 {
            let x = a + (b - a) * i as f64 / 8.0;
            let _ = spline.value(x);
            let _ = spline.derivative(x);
        }
    }
});
