#![no_main]

use libfuzzer_sys::fuzz_target;
use tubular_lk::mesh::read_obj;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(mesh) = read_obj(text) {
            for face in &mesh.faces {
                assert!(face.iter().all(|&i| i < mesh.vertices.len()));
            }
        }
    }
});
