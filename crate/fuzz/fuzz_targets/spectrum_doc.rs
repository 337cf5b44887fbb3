#![no_main]

use libfuzzer_sys::fuzz_target;
use lz3::spectrum::SpectrumDoc;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(doc) = SpectrumDoc::parse(text) {
            let _ = doc.reconstruct(1.0);
        }
    }
});
