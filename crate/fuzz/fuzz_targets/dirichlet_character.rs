#![no_main]

//! Dirichlet character specifications such as `5:2=zeta(4)` or `4:3=-1`.

use ladic::lfunc::DirichletCharacter;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    for ell in [5, 13] {
        let _ = DirichletCharacter::parse(&text, ell);
    }
});
