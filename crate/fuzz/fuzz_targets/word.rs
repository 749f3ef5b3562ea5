#![no_main]

//! Words in the free monoid on `X`, `Y`: parsing inverts `Display` (which
//! writes the empty word as `1`).

use ladic::ncalg::Word;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Some(w) = Word::parse(&text) {
        let expected = if text.is_empty() { "1" } else { &text };
        assert_eq!(w.to_string(), expected);
    }
});
