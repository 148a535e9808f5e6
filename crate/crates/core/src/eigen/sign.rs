//! Sign patterns: a choice of +-1 for each prime dividing the level.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::arith::prime_divisors;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignPattern {
    pub level: u64,
    /// (p, eps_p) for the primes p | N in increasing order.
    pub signs: Vec<(u64, i8)>,
}

impl SignPattern {
    pub fn new(level: u64, signs: Vec<(u64, i8)>) -> Result<Self> {
        let ps = prime_divisors(level);
        if signs.len() != ps.len()
            || signs.iter().zip(&ps).any(|((p, s), q)| p != q || (*s != 1 && *s != -1))
        {
            return Err(Error::precondition(format!(
                "sign pattern {signs:?} does not match the primes of {level}"
            )));
        }
        Ok(SignPattern { level, signs })
    }

    /// All 2^omega patterns, ordered by the bit mask where bit k set means
    /// the k-th prime gets -1 (so the all-plus pattern comes first).
    pub fn all(level: u64) -> Vec<SignPattern> {
        let ps = prime_divisors(level);
        (0..1u32 << ps.len())
            .map(|mask| Self::from_mask(level, &ps, mask))
            .collect()
    }

    fn from_mask(level: u64, ps: &[u64], mask: u32) -> SignPattern {
        SignPattern {
            level,
            signs: ps
                .iter()
                .enumerate()
                .map(|(k, &p)| (p, if mask >> k & 1 == 1 { -1 } else { 1 }))
                .collect(),
        }
    }

    pub fn plus(level: u64) -> SignPattern {
        Self::from_mask(level, &prime_divisors(level), 0)
    }

    pub fn minus(level: u64) -> SignPattern {
        let ps = prime_divisors(level);
        Self::from_mask(level, &ps, (1u32 << ps.len()) - 1)
    }

    /// Parse a string of '+' and '-' (ASCII or U+2212), one per prime.
    pub fn parse(level: u64, s: &str) -> Result<Self> {
        let ps = prime_divisors(level);
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace() && *c != ',').collect();
        if chars.len() != ps.len() {
            return Err(Error::precondition(format!(
                "pattern '{s}' needs {} signs for level {level}",
                ps.len()
            )));
        }
        let signs = ps
            .iter()
            .zip(chars)
            .map(|(&p, c)| match c {
                '+' => Ok((p, 1)),
                '-' | '\u{2212}' => Ok((p, -1)),
                _ => Err(Error::precondition(format!("bad sign character '{c}'"))),
            })
            .collect::<Result<_>>()?;
        Ok(SignPattern { level, signs })
    }

    pub fn mask(&self) -> u32 {
        self.signs
            .iter()
            .enumerate()
            .map(|(k, &(_, s))| if s == -1 { 1 << k } else { 0 })
            .sum()
    }

    pub fn eps_p(&self, p: u64) -> Option<i8> {
        self.signs.iter().find(|(q, _)| *q == p).map(|&(_, s)| s)
    }

    /// eps_d for a divisor d of the level (multiplicative extension).
    pub fn eps(&self, d: u64) -> i8 {
        self.signs
            .iter()
            .filter(|(p, _)| d.is_multiple_of(*p))
            .map(|&(_, s)| s)
            .product()
    }

    pub fn eps_level(&self) -> i8 {
        self.eps(self.level)
    }

    pub fn is_all_plus(&self) -> bool {
        self.signs.iter().all(|&(_, s)| s == 1)
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(_, s) in &self.signs {
            f.write_str(if s == 1 { "+" } else { "-" })?;
        }
        Ok(())
    }
}
