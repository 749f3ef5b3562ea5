//! Replays the checked-in fuzz corpus through the same entry points and
//! invariants as the `fuzz/` targets, so the seeds stay meaningful on stable.

use std::fs;
use std::path::PathBuf;

use ladic::exactq::{format_rational, parse_rational};
use ladic::lfunc::DirichletCharacter;
use ladic::measure::TowerFile;
use ladic::ncalg::Word;
use ladic::padic::PadicNum;
use ladic::parse::{parse_integrand, parse_matrix, parse_padic, MAX_MATRIX_DIM};

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut paths: Vec<_> =
        fs::read_dir(&dir).unwrap_or_else(|e| panic!("{}: {e}", dir.display())).map(|e| e.unwrap().path()).collect();
    paths.sort();
    assert!(!paths.is_empty(), "no seeds for {target}");
    paths.into_iter().map(|p| fs::read(p).unwrap()).collect()
}

/// Runs `f` on each seed and returns how many were accepted.
fn replay(target: &str, f: impl Fn(&[u8]) -> bool) -> usize {
    seeds(target).iter().filter(|s| f(s)).count()
}

fn text(data: &[u8]) -> String {
    String::from_utf8_lossy(data).into_owned()
}

#[test]
fn rational() {
    let ok = replay("rational", |d| match parse_rational(&text(d)) {
        Ok(q) => {
            assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
            true
        }
        Err(_) => false,
    });
    assert!(ok >= 5);
}

#[test]
fn padic_json() {
    let ok = replay("padic_json", |d| match serde_json::from_slice::<PadicNum>(d) {
        Ok(x) => {
            let y: PadicNum = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
            assert_eq!(x, y);
            let _ = &x * &y;
            let _ = x.inverse();
            true
        }
        Err(_) => false,
    });
    assert_eq!(ok, 4);
}

#[test]
fn padic_arg() {
    let ok = replay("padic_arg", |d| [3, 5, 65_521].iter().all(|&ell| parse_padic(&text(d), ell).is_ok()));
    assert_eq!(ok, 4);
}

#[test]
fn tower_file() {
    let ok = replay("tower_file", |d| match TowerFile::parse(&text(d)) {
        Ok(t) => {
            assert_eq!(TowerFile::parse(&TowerFile::to_json(&t)).unwrap(), t);
            true
        }
        Err(_) => false,
    });
    assert_eq!(ok, 5);
}

#[test]
fn dirichlet_character() {
    let ok = replay("dirichlet_character", |d| DirichletCharacter::parse(&text(d), 13).is_ok());
    assert!(ok >= 5);
}

#[test]
fn integrand() {
    let ok = replay("integrand", |d| {
        let (&rank, rest) = d.split_first().unwrap();
        parse_integrand(&text(rest), 1 + rank as usize % 3, 5).is_ok()
    });
    assert_eq!(ok, 5);
}

#[test]
fn matrix() {
    let ok = replay("matrix", |d| match parse_matrix(&text(d)) {
        Ok(m) => {
            assert!(!m.is_empty() && m.len() <= MAX_MATRIX_DIM);
            assert!(m.iter().all(|r| r.len() == m.len()));
            true
        }
        Err(_) => false,
    });
    assert_eq!(ok, 5);
}

#[test]
fn word() {
    let ok = replay("word", |d| {
        let t = text(d);
        match Word::parse(&t) {
            Some(w) => {
                assert_eq!(w.to_string(), if t.is_empty() { "1" } else { &t });
                true
            }
            None => false,
        }
    });
    assert_eq!(ok, 4);
}
