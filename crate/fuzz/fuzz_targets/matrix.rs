#![no_main]

//! Integer matrices such as `1,2;0,1`: parsed matrices are square and within
//! the dimension cap.

use ladic::parse::{parse_matrix, MAX_MATRIX_DIM};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Ok(m) = parse_matrix(&text) {
        assert!(!m.is_empty() && m.len() <= MAX_MATRIX_DIM);
        assert!(m.iter().all(|row| row.len() == m.len()));
    }
});
