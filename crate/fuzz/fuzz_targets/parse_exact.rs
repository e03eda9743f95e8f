#![no_main]

use libfuzzer_sys::fuzz_target;
use sra_core::arith::CyclotomicField;
use sra_core::job::{exact_value, ExactInput};

fuzz_target!(|data: &[u8]| {
    let Ok(input) = serde_json::from_slice::<ExactInput>(data) else {
        return;
    };
    let order = match &input {
        ExactInput::Cyclotomic { order, .. } => *order,
        _ => 5,
    };
    if !(1..=64).contains(&order) {
        return;
    }
    let Ok(field) = CyclotomicField::new(order) else {
        return;
    };
    if let Ok(v) = input.to_cyclotomic(&field) {
        // written values must read back to the same element
        let text = exact_value(&v).to_string();
        let again: ExactInput = serde_json::from_str(&text).unwrap();
        assert_eq!(again.to_cyclotomic(&field).unwrap(), v);
    }
});
