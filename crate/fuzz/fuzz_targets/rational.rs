#![no_main]

//! Rational literals: anything that parses must print back to itself.

use ladic::exactq::{format_rational, parse_rational};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Ok(q) = parse_rational(&text) {
        let printed = format_rational(&q);
        assert_eq!(parse_rational(&printed).unwrap(), q);
    }
});
