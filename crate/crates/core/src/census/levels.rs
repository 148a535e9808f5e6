//! Level filters such as "odd,omega=3,<10000" or "prime,<1000".

use crate::error::{Error, Result};
use crate::exactalg::arith::{is_prime, is_squarefree, omega};

/// A set of squarefree levels with an odd number of prime factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelFilter {
    pub lo: u64,
    /// Exclusive upper bound.
    pub hi: u64,
    pub parity: Option<u64>,
    pub omega: Option<usize>,
    pub prime: Option<bool>,
}

impl LevelFilter {
    /// Comma-separated tokens: odd, even, prime, nonprime, omega=k (or
    /// ω=k), <X, <=X, >X, >=X, and A..B (half-open). An upper bound is
    /// required; "none" denotes the empty range.
    pub fn parse(s: &str) -> Result<Self> {
        let mut f = LevelFilter {
            lo: 2,
            hi: 0,
            parity: None,
            omega: None,
            prime: None,
        };
        let mut bounded = false;
        let num = |t: &str| -> Result<u64> {
            t.trim()
                .parse()
                .map_err(|_| Error::precondition(format!("bad number '{t}' in level range")))
        };
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if tok == "none" {
                f.hi = f.lo;
                bounded = true;
            } else if tok == "odd" {
                f.parity = Some(1);
            } else if tok == "even" {
                f.parity = Some(0);
            } else if tok == "prime" {
                f.prime = Some(true);
            } else if tok == "nonprime" {
                f.prime = Some(false);
            } else if let Some(k) = tok.strip_prefix("omega=").or_else(|| tok.strip_prefix("ω=")) {
                f.omega = Some(num(k)? as usize);
            } else if let Some(x) = tok.strip_prefix("<=") {
                f.hi = num(x)? + 1;
                bounded = true;
            } else if let Some(x) = tok.strip_prefix('<') {
                f.hi = num(x)?;
                bounded = true;
            } else if let Some(x) = tok.strip_prefix(">=") {
                f.lo = f.lo.max(num(x)?);
            } else if let Some(x) = tok.strip_prefix('>') {
                f.lo = f.lo.max(num(x)? + 1);
            } else if let Some((a, b)) = tok.split_once("..") {
                f.lo = f.lo.max(num(a)?);
                f.hi = num(b)?;
                bounded = true;
            } else {
                return Err(Error::precondition(format!("unknown level filter token '{tok}'")));
            }
        }
        if !bounded {
            return Err(Error::precondition("level range needs an upper bound"));
        }
        if let Some(w) = f.omega {
            if w % 2 == 0 {
                return Err(Error::precondition("omega must be odd for a definite algebra"));
            }
        }
        Ok(f)
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.lo
            && n < self.hi
            && is_squarefree(n)
            && omega(n) % 2 == 1
            && self.parity.is_none_or(|p| n % 2 == p)
            && self.omega.is_none_or(|w| omega(n) == w)
            && self.prime.is_none_or(|p| is_prime(n) == p)
    }

    pub fn levels(&self) -> Vec<u64> {
        (self.lo..self.hi).filter(|&n| self.contains(n)).collect()
    }
}
