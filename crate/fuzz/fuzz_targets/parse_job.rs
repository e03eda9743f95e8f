#![no_main]

use libfuzzer_sys::fuzz_target;
use sra_core::job::JobSpec;

fuzz_target!(|data: &str| {
    if let Ok(job) = JobSpec::from_json(data) {
        let _ = job.resolve();
    }
});
