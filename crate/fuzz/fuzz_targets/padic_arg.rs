#![no_main]

//! Command-line `l`-adic scalars such as `--s 1/2`.

use ladic::parse::parse_padic;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    for ell in [3, 5, 65_521] {
        let _ = parse_padic(&text, ell);
    }
});
