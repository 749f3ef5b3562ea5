#![no_main]

//! `PadicNum` JSON records: accepted records survive a serialize/deserialize
//! round trip and support arithmetic without panicking.

use ladic::padic::PadicNum;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(x) = serde_json::from_slice::<PadicNum>(data) {
        let text = serde_json::to_string(&x).unwrap();
        let y: PadicNum = serde_json::from_str(&text).unwrap();
        assert_eq!(x, y);
        let _ = &x * &y;
        let _ = &x + &y;
        let _ = x.inverse();
    }
});
