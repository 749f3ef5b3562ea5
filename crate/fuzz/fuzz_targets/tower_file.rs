#![no_main]

//! Measure tower files: a tower that validates must re-encode to an equal
//! tower.

use ladic::measure::TowerFile;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Ok(tower) = TowerFile::parse(&text) {
        let again = TowerFile::parse(&TowerFile::to_json(&tower)).unwrap();
        assert_eq!(again, tower);
        let _ = tower.total_mass();
    }
});
