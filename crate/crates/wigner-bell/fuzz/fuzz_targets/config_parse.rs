//! The run-config parser is the one place the library decodes untrusted
//! input; parsing plus validation must never panic, whatever the bytes.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    match wigner_bell::run::parse_config(data) {
        Ok(config) => {
            // A config that validated must also yield a grid and a
            // scenario without panicking.
            let _ = config.omega_grid();
            let _ = config.build();
        }
        Err(err) => {
            // Errors must format cleanly.
            let _ = err.to_string();
        }
    }
});
