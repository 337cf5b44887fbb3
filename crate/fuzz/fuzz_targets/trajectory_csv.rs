#![no_main]

use libfuzzer_sys::fuzz_target;
use lz3::csv::{read_csv, read_trajectory_csv};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = read_csv(text);
        let _ = read_trajectory_csv(text);
    }
});
