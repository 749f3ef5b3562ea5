#![no_main]

//! Integrand expressions; the first byte picks the rank.

use ladic::parse::parse_integrand;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&rank, rest)) = data.split_first() else {
        return;
    };
    let text = String::from_utf8_lossy(rest);
    let _ = parse_integrand(&text, 1 + rank as usize % 3, 5);
});
