//! Text formats for command-line arguments: integrand expressions, integer
//! matrices and `l`-adic scalars.
//!
//! Integrand grammar (whitespace is ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := item ('*' item)*
//! item   := rational | factor
//! factor := 'x' i ['^' n | '^-1']        x_i^n, or x_i^{-1} on units
//!         | 'w' i ['^' b]                ω(x_i)^b on units
//!         | '[x' i ']^' (b | '(' q ')')  [x_i]^s on units, s = b or q in Z_l
//! ```
//!
//! The index `i` is 1-based and may be omitted when the rank is 1. For
//! example `3/2*x1^2*x2 - [x1]^(1/2)*w1^2*x1^-1`.

use num_traits::One;
use thiserror::Error;

use crate::exactq::{parse_rational, Rational};
use crate::measure::{CoordFactor, Integrand, Term};
use crate::padic::{max_digits, rational_valuation, PadicNum};

/// Largest accepted integer exponent.
pub const MAX_EXPONENT: u32 = 256;
/// Largest accepted number of terms.
pub const MAX_TERMS: usize = 1024;
/// Largest accepted matrix dimension.
pub const MAX_MATRIX_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

pub type Result<T> = std::result::Result<T, ParseError>;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src: src.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(ParseError { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            self.err(format!("expected {:?}", b as char))
        }
    }

    fn digits(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn uint(&mut self, max: u64) -> Result<u64> {
        let d = self.digits();
        if d.is_empty() {
            return self.err("expected a number");
        }
        match d.parse::<u64>() {
            Ok(n) if n <= max => Ok(n),
            _ => self.err(format!("number above {max}")),
        }
    }

    fn int(&mut self, max: u64) -> Result<i64> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let n = self.uint(max)? as i64;
        Ok(if neg { -n } else { n })
    }

    /// `a` or `a/b`, unsigned.
    fn rational(&mut self) -> Result<Rational> {
        let start = self.pos;
        let n = self.digits();
        let mut text = n.to_string();
        if self.eat(b'/') {
            let d = self.digits();
            text.push('/');
            text.push_str(d);
        }
        parse_rational(&text).map_err(|e| ParseError { pos: start, msg: e.to_string() })
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

struct IntegrandParser<'a> {
    cur: Cursor<'a>,
    rank: usize,
    ell: u64,
}

impl IntegrandParser<'_> {
    fn index(&mut self) -> Result<usize> {
        let at_digit = matches!(self.cur.peek(), Some(b) if b.is_ascii_digit());
        if !at_digit {
            if self.rank == 1 {
                return Ok(0);
            }
            return self.cur.err("coordinate index required when rank > 1");
        }
        let i = self.cur.uint(self.rank as u64)?;
        if i == 0 {
            return self.cur.err("coordinates are numbered from 1");
        }
        Ok(i as usize - 1)
    }

    fn exponent_s(&mut self) -> Result<PadicNum> {
        let q = if self.cur.eat(b'(') {
            let neg = self.cur.eat(b'-');
            let q = self.cur.rational()?;
            self.cur.expect(b')')?;
            if neg {
                -q
            } else {
                q
            }
        } else {
            Rational::from_integer(self.cur.int(u32::MAX as u64)?.into())
        };
        if rational_valuation(&q, self.ell).is_some_and(|v| v < 0) {
            return self.cur.err("exponent of [x] must lie in Z_l");
        }
        Ok(PadicNum::from_rational(&q, self.ell, max_digits(self.ell)))
    }

    /// Parses one item into `coeff` or `factors`.
    fn item(&mut self, coeff: &mut Rational, factors: &mut [Vec<CoordFactor>]) -> Result<()> {
        match self.cur.peek() {
            Some(b) if b.is_ascii_digit() => {
                *coeff *= self.cur.rational()?;
            }
            Some(b'x') => {
                self.cur.pos += 1;
                let i = self.index()?;
                if self.cur.eat(b'^') {
                    if self.cur.eat(b'-') {
                        if self.cur.uint(1)? != 1 {
                            return self.cur.err("only x^-1 is allowed among negative powers");
                        }
                        factors[i].push(CoordFactor::Inv);
                    } else {
                        let n = self.cur.uint(MAX_EXPONENT as u64)? as u32;
                        factors[i].push(CoordFactor::Pow(n));
                    }
                } else {
                    factors[i].push(CoordFactor::Pow(1));
                }
            }
            Some(b'w') => {
                self.cur.pos += 1;
                let i = self.index()?;
                let b = if self.cur.eat(b'^') { self.cur.int(u32::MAX as u64)? } else { 1 };
                factors[i].push(CoordFactor::Omega(b));
            }
            Some(b'[') => {
                self.cur.pos += 1;
                self.cur.expect(b'x')?;
                let i = self.index()?;
                self.cur.expect(b']')?;
                self.cur.expect(b'^')?;
                let s = self.exponent_s()?;
                factors[i].push(CoordFactor::Bracket(s));
            }
            _ => return self.cur.err("expected a number, x, w or ["),
        }
        Ok(())
    }

    fn term(&mut self, sign: bool) -> Result<Term> {
        let mut coeff = if sign { -Rational::one() } else { Rational::one() };
        let mut factors = vec![Vec::new(); self.rank];
        self.item(&mut coeff, &mut factors)?;
        while self.cur.eat(b'*') {
            self.item(&mut coeff, &mut factors)?;
        }
        Ok(Term { coeff, factors })
    }

    fn expr(&mut self) -> Result<Integrand> {
        let mut terms = Vec::new();
        let mut neg = self.cur.eat(b'-');
        if !neg {
            self.cur.eat(b'+');
        }
        loop {
            if terms.len() == MAX_TERMS {
                return self.cur.err(format!("more than {MAX_TERMS} terms"));
            }
            terms.push(self.term(neg)?);
            if self.cur.eat(b'+') {
                neg = false;
            } else if self.cur.eat(b'-') {
                neg = true;
            } else if self.cur.at_end() {
                break;
            } else {
                return self.cur.err("expected +, - or *");
            }
        }
        Ok(Integrand { rank: self.rank, terms })
    }
}

/// Parses an integrand on `(Z_l)^rank`.
pub fn parse_integrand(text: &str, rank: usize, ell: u64) -> Result<Integrand> {
    if rank == 0 || rank > MAX_MATRIX_DIM {
        return Err(ParseError { pos: 0, msg: format!("rank must lie in 1..={MAX_MATRIX_DIM}") });
    }
    let mut p = IntegrandParser { cur: Cursor::new(text), rank, ell };
    p.expr()
}

/// Parses a square integer matrix written row by row, rows separated by
/// `;` and entries by `,`: `"1,2;0,1"`.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<i64>>> {
    let mut cur = Cursor::new(text);
    let mut rows: Vec<Vec<i64>> = Vec::new();
    loop {
        let mut row = Vec::new();
        loop {
            row.push(cur.int(i64::MAX as u64)?);
            if row.len() > MAX_MATRIX_DIM {
                return cur.err(format!("more than {MAX_MATRIX_DIM} columns"));
            }
            if !cur.eat(b',') {
                break;
            }
        }
        rows.push(row);
        if rows.len() > MAX_MATRIX_DIM {
            return cur.err(format!("more than {MAX_MATRIX_DIM} rows"));
        }
        if !cur.eat(b';') {
            break;
        }
    }
    if !cur.at_end() {
        return cur.err("trailing input");
    }
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(ParseError { pos: 0, msg: "matrix must be square".into() });
    }
    Ok(rows)
}

/// Parses a rational `a` or `a/b` as an element of `Q_l` at full working
/// precision.
pub fn parse_padic(text: &str, ell: u64) -> Result<PadicNum> {
    let q = parse_rational(text).map_err(|e| ParseError { pos: 0, msg: e.to_string() })?;
    Ok(PadicNum::from_rational(&q, ell, max_digits(ell)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::{int, rat};

    #[test]
    fn integrands() {
        let f = parse_integrand("3/2*x1^2*x2 - x2", 2, 5).unwrap();
        assert_eq!(f.terms.len(), 2);
        assert_eq!(f.terms[0].coeff, rat(3, 2));
        assert_eq!(f.terms[0].factors, vec![vec![CoordFactor::Pow(2)], vec![CoordFactor::Pow(1)]]);
        assert_eq!(f.terms[1].coeff, int(-1));
        assert!(f.is_polynomial());
        let g = parse_integrand("[x]^(1/2) * w^2 * x^-1", 1, 5).unwrap();
        assert_eq!(g.terms[0].factors[0].len(), 3);
        assert!(!g.is_polynomial());
        assert_eq!(parse_integrand(" - 7 ", 1, 3).unwrap().terms[0].coeff, int(-7));
    }

    #[test]
    fn integrand_errors() {
        for bad in ["", "x3", "x", "x^-2", "y", "[x1]^(1/5)", "x1 x2", "1/0", "x1^999", "x0", "+"] {
            assert!(parse_integrand(bad, 2, 5).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn matrices() {
        assert_eq!(parse_matrix("1,2;0,1").unwrap(), vec![vec![1, 2], vec![0, 1]]);
        assert_eq!(parse_matrix(" -3 ").unwrap(), vec![vec![-3]]);
        for bad in ["", "1,2", "1;2", "1,,2", "1,2;3", "a"] {
            assert!(parse_matrix(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn padic_args() {
        let s = parse_padic("1/2", 5).unwrap();
        assert_eq!(s.residue(2).unwrap(), 13);
        assert!(parse_padic("x", 5).is_err());
    }
}
