#![no_main]

use libfuzzer_sys::fuzz_target;
use sra_core::selftest::Catalog;

fuzz_target!(|data: &str| {
    if let Ok(cat) = Catalog::from_json(data) {
        for case in &cat.cases {
            let _ = case.job().resolve();
        }
    }
});
