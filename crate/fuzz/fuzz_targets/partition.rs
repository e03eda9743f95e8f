#![no_main]

use libfuzzer_sys::fuzz_target;
use sra_core::symcomb::{self, Partition};

fuzz_target!(|data: &[u8]| {
    let parts: Vec<usize> = data.iter().take(12).map(|&b| (b % 16) as usize).collect();
    let Ok(mu) = Partition::new(parts) else {
        return;
    };
    assert_eq!(mu.conjugate().conjugate(), mu);
    if mu.size() <= 12 {
        let _ = symcomb::dim_irrep(&mu);
        if mu.size() >= 2 {
            let _ = symcomb::transposition_character(&mu);
        }
    }
});
