#![no_main]

use libfuzzer_sys::fuzz_target;
use tubular_lk::mesh::read_mesh_csv;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = read_mesh_csv(text);
    }
});
