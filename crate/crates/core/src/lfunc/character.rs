//! Dirichlet characters whose values are `(l-1)`-st roots of unity in `Z_l`.

use std::collections::BTreeMap;

use num_integer::Integer;

use super::{LError, Result};
use crate::exactq::{int, Rational};
use crate::padic::{check_prime, mul_mod, pow_mod, teichmuller, PadicNum};

/// Largest accepted modulus.
pub const MAX_MODULUS: u64 = 10_000;

/// A character `ψ` mod `m`. Each value is stored as an exponent `e` with
/// `ψ(a) = ω(g)^e`, where `g` is the least primitive root mod `l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletCharacter {
    modulus: u64,
    ell: u64,
    generator: u64,
    exponents: BTreeMap<u64, u64>,
}

/// A prescribed value `ψ(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharValue {
    /// `ω(v)` for an integer `v` prime to `l`; `±1` stand for themselves.
    Lift(i64),
    /// `ζ_n^j = ω(g)^{j (l-1)/n}`; needs `n | l - 1`.
    Root { j: u64, n: u64 },
}

/// Least primitive root modulo the prime `ell`.
pub fn primitive_root(ell: u64) -> u64 {
    let phi = ell - 1;
    let factors: Vec<u64> = prime_factors(phi);
    (2..ell).find(|&g| factors.iter().all(|&q| pow_mod(g, (phi / q) as u128, ell) != 1)).unwrap_or(1)
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn discrete_log(v: u64, g: u64, ell: u64) -> Option<u64> {
    let v = v % ell;
    let mut x = 1;
    for e in 0..ell - 1 {
        if x == v {
            return Some(e);
        }
        x = mul_mod(x, g, ell);
    }
    None
}

impl DirichletCharacter {
    /// Builds `ψ` from prescribed values, closing them under
    /// multiplication. The values must determine `ψ` on every unit mod `m`
    /// consistently, and `ψ` must be primitive.
    pub fn from_values(modulus: u64, ell: u64, values: &[(u64, CharValue)]) -> Result<Self> {
        check_prime(ell)?;
        if modulus < 2 {
            return Err(LError::BadModulus("modulus must exceed 1".into()));
        }
        if modulus > MAX_MODULUS {
            return Err(LError::BadModulus(format!("modulus above {MAX_MODULUS}")));
        }
        if modulus.is_multiple_of(ell) {
            return Err(LError::EllDividesModulus);
        }
        let g = primitive_root(ell);
        let order = ell - 1;
        let mut given = Vec::new();
        for (a, v) in values {
            let a = a % modulus;
            if a.gcd(&modulus) != 1 {
                return Err(LError::BadModulus(format!("{a} is not a unit mod {modulus}")));
            }
            let e = match *v {
                CharValue::Lift(x) => {
                    let r = x.rem_euclid(ell as i64) as u64;
                    discrete_log(r, g, ell).ok_or(LError::ValueNotUnit(x))?
                }
                CharValue::Root { j, n } => {
                    if n == 0 || !order.is_multiple_of(n) {
                        return Err(LError::OutsideZl);
                    }
                    (j % n) * (order / n)
                }
            };
            given.push((a, e));
        }
        // close under multiplication starting from ψ(1) = 1
        let mut exps: BTreeMap<u64, u64> = BTreeMap::from([(1 % modulus, 0)]);
        let mut frontier = vec![1 % modulus];
        while let Some(x) = frontier.pop() {
            let ex = exps[&x];
            for &(a, ea) in &given {
                let y = mul_mod(x, a, modulus);
                let ey = (ex + ea) % order;
                match exps.get(&y) {
                    Some(&old) if old != ey => {
                        return Err(LError::NotMultiplicative(y));
                    }
                    Some(_) => {}
                    None => {
                        exps.insert(y, ey);
                        frontier.push(y);
                    }
                }
            }
        }
        let units = (1..modulus).filter(|a| a.gcd(&modulus) == 1).count();
        if exps.len() != units {
            return Err(LError::Incomplete);
        }
        let chi = DirichletCharacter { modulus, ell, generator: g, exponents: exps };
        if let Some(d) = chi.induced_from() {
            return Err(LError::NotPrimitive(d));
        }
        Ok(chi)
    }

    /// A proper divisor `d` of `m` such that `ψ` is trivial on
    /// `{a ≡ 1 mod d}`, if one exists.
    fn induced_from(&self) -> Option<u64> {
        let m = self.modulus;
        (1..m)
            .filter(|d| m.is_multiple_of(*d))
            .find(|&d| self.exponents.iter().filter(|(&a, _)| a % d == 1 % d).all(|(_, &e)| e == 0))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    /// The exponent `e` with `ψ(a) = ω(g)^e`, or `None` when `(a, m) > 1`.
    pub fn exponent(&self, a: i64) -> Option<u64> {
        let r = a.rem_euclid(self.modulus as i64) as u64;
        self.exponents.get(&r).copied()
    }

    /// Whether every value is `±1`.
    pub fn is_real(&self) -> bool {
        self.exponents.values().all(|&e| (2 * e) % (self.ell - 1) == 0)
    }

    /// `ψ(-1) = ±1`.
    pub fn parity(&self) -> i64 {
        let e = self.exponent(-1).expect("-1 is a unit");
        if e == 0 {
            1
        } else {
            -1
        }
    }

    /// `ψ(a)` as an exact rational, for real characters.
    pub fn value_exact(&self, a: i64) -> Option<Rational> {
        match self.exponent(a) {
            None => Some(int(0)),
            Some(0) => Some(int(1)),
            Some(e) if 2 * e == self.ell - 1 => Some(int(-1)),
            Some(_) => None,
        }
    }

    /// `ψ(a)` in `Z_l` to `digits` digits.
    pub fn value(&self, a: i64, digits: u32) -> PadicNum {
        match self.exponent(a) {
            None => PadicNum::zero(self.ell),
            Some(e) => teichmuller(self.generator, self.ell, digits)
                .expect("primitive root is a unit")
                .pow(e as i64)
                .expect("unit power"),
        }
    }

    /// Parses `"m:a1=v1,a2=v2,..."` where each value is an integer `v`
    /// (meaning `ω(v)`) or `zeta(n)^j`.
    pub fn parse(spec: &str, ell: u64) -> Result<Self> {
        let bad = || LError::Parse(format!("malformed character {spec:?}"));
        let (m, rest) = spec.split_once(':').ok_or_else(bad)?;
        let m: u64 = m.trim().parse().map_err(|_| bad())?;
        let mut values = Vec::new();
        for part in rest.split(',').filter(|p| !p.trim().is_empty()) {
            let (a, v) = part.split_once('=').ok_or_else(bad)?;
            let a: u64 = a.trim().parse().map_err(|_| bad())?;
            let v = v.trim();
            let value = if let Some(r) = v.strip_prefix("zeta(") {
                let (n, j) = r.split_once(')').ok_or_else(bad)?;
                let n: u64 = n.trim().parse().map_err(|_| bad())?;
                let j: u64 = match j.trim() {
                    "" => 1,
                    t => t.strip_prefix('^').ok_or_else(bad)?.trim().parse().map_err(|_| bad())?,
                };
                CharValue::Root { j, n }
            } else {
                CharValue::Lift(v.parse().map_err(|_| bad())?)
            };
            values.push((a, value));
        }
        Self::from_values(m, ell, &values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_mod_4() {
        let psi = DirichletCharacter::parse("4:3=-1", 5).unwrap();
        assert!(psi.is_real());
        assert_eq!(psi.parity(), -1);
        assert_eq!(psi.value_exact(5), Some(int(1)));
        assert_eq!(psi.value_exact(2), Some(int(0)));
        assert_eq!(psi.value_exact(7), Some(int(-1)));
    }

    #[test]
    fn rejections() {
        assert!(matches!(DirichletCharacter::parse("1:", 5), Err(LError::BadModulus(_))));
        assert!(matches!(DirichletCharacter::parse("4:3=1", 5), Err(LError::NotPrimitive(1))));
        assert!(matches!(DirichletCharacter::parse("10:3=-1", 5), Err(LError::EllDividesModulus)));
        assert!(matches!(DirichletCharacter::parse("5:2=zeta(4)", 7), Err(LError::OutsideZl)));
        assert!(matches!(DirichletCharacter::parse("8:3=-1", 5), Err(LError::Incomplete)));
        assert!(matches!(DirichletCharacter::parse("3:2=2", 5), Err(LError::NotMultiplicative(_))));
        assert!(DirichletCharacter::parse("garbage", 5).is_err());
    }

    #[test]
    fn quartic_character_mod_5_at_13() {
        // 2 generates (Z/5)^×; ψ(2) = ζ_4 needs 4 | 12
        let psi = DirichletCharacter::parse("5:2=zeta(4)", 13).unwrap();
        assert!(!psi.is_real());
        let i = psi.value(2, 6);
        assert_eq!(i.pow(4).unwrap(), PadicNum::one(13, 6));
        assert_eq!(psi.value(4, 6), i.pow(2).unwrap());
        assert_eq!(psi.parity(), -1);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(5), 2);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(3), 2);
    }
}
