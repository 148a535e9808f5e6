//! Closed-form counts of trivial zeroes, independent of Brandt matrices.

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::eigen::sign::SignPattern;
use crate::error::{Error, Result};
use crate::exactalg::arith::{
    divisors, imag_quadratic_discriminant, is_prime, is_squarefree, kronecker, omega,
    prime_divisors,
};
use crate::exactalg::forms::iq_class_number;

/// b(d) for odd d: 1 if d = 1 mod 4, 2 if d = 7 mod 8, 4 if d = 3 mod 8.
pub fn b_constant(d: u64) -> Result<u64> {
    if d.is_multiple_of(2) {
        return Err(Error::precondition(format!("b constant needs odd d, got {d}")));
    }
    Ok(match d % 8 {
        1 | 5 => 1,
        7 => 2,
        _ => 4,
    })
}

/// Class number weighted by units: h(-3)/3, h(-4)/2, otherwise h.
pub fn weighted_class_number(disc: i64) -> Result<Ratio<i64>> {
    let h = iq_class_number(disc)? as i64;
    Ok(match disc {
        -3 => Ratio::new(h, 3),
        -4 => Ratio::new(h, 2),
        _ => Ratio::from_integer(h),
    })
}

/// One divisor's term in the dimension bias.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiasTerm {
    pub d: u64,
    pub h_weighted: Ratio<i64>,
    pub b: u64,
    /// prod over p | N/d of (1 - (Delta_d | p)).
    pub kronecker_product: i64,
    pub contribution: Ratio<i64>,
}

fn check_level(n: u64) -> Result<()> {
    if n.is_multiple_of(2) || !is_squarefree(n) || omega(n).is_multiple_of(2) {
        return Err(Error::precondition(format!(
            "formula path needs odd squarefree N with an odd number of primes, got {n}"
        )));
    }
    Ok(())
}

fn kronecker_product(disc: i64, m: u64) -> i64 {
    prime_divisors(m)
        .iter()
        .map(|&p| 1 - kronecker(disc, p as i64) as i64)
        .product()
}

/// Terms of the sum over divisors d > 1, followed by the d = 3 correction
/// (reported with d = 3 and b = 0) when 3 | N.
pub fn bias_terms(n: u64, eps: &SignPattern) -> Result<Vec<BiasTerm>> {
    check_level(n)?;
    if eps.level != n {
        return Err(Error::precondition("sign pattern level mismatch"));
    }
    let mut terms = Vec::new();
    for d in divisors(n).into_iter().filter(|&d| d > 1) {
        let disc = imag_quadratic_discriminant(d);
        let hw = weighted_class_number(disc)?;
        let b = b_constant(d)?;
        let kp = kronecker_product(disc, n / d);
        let coeff = (1 - eps.eps(d) as i64) * b as i64 * kp;
        terms.push(BiasTerm {
            d,
            h_weighted: hw,
            b,
            kronecker_product: kp,
            contribution: hw * coeff / 2,
        });
    }
    if n.is_multiple_of(3) {
        let kp = kronecker_product(-3, n / 3);
        terms.push(BiasTerm {
            d: 3,
            h_weighted: Ratio::new(1, 3),
            b: 0,
            kronecker_product: kp,
            contribution: Ratio::new((1 - eps.eps(3) as i64) * kp, 3),
        });
    }
    Ok(terms)
}

/// dim M^{+} - dim M^{eps}, the number of orbits on which eps forces zeroes.
pub fn dim_bias(n: u64, eps: &SignPattern) -> Result<u64> {
    let terms = bias_terms(n, eps)?;
    let mut total = Ratio::<i64>::zero();
    for t in &terms {
        if t.contribution.is_negative() {
            return Err(Error::defect(format!("negative bias term at N={n}, d={}", t.d)));
        }
        total += t.contribution;
    }
    let scaled = total / (1i64 << omega(n));
    if !scaled.is_integer() {
        return Err(Error::defect(format!("non-integral dimension bias {scaled} at N={n}")));
    }
    Ok(*scaled.numer() as u64)
}

/// Divisors d > 1 with (Delta_d | p) = -1 for every p | N/d.
pub fn inert_divisors(n: u64) -> Vec<u64> {
    divisors(n)
        .into_iter()
        .filter(|&d| d > 1)
        .filter(|&d| {
            let disc = imag_quadratic_discriminant(d);
            prime_divisors(n / d)
                .iter()
                .all(|&p| kronecker(disc, p as i64) == -1)
        })
        .collect()
}

/// Whether eps has no trivial zeroes, by the divisor criterion.
pub fn no_trivial_zeroes_criterion(n: u64, eps: &SignPattern) -> Result<bool> {
    check_level(n)?;
    if eps.level != n {
        return Err(Error::precondition("sign pattern level mismatch"));
    }
    let cond_i = inert_divisors(n).iter().all(|&d| eps.eps(d) == 1);
    let cond_ii = !n.is_multiple_of(3)
        || eps.eps(3) == 1
        || prime_divisors(n).iter().any(|&p| p % 3 == 1);
    Ok(cond_i && cond_ii)
}

/// Whether the Atkin-Lehner involution at p acts on the classes without
/// fixed points.
pub fn sigma_p_fixed_point_free(p: u64, n: u64) -> Result<bool> {
    if !is_prime(p) || !n.is_multiple_of(p) || !is_squarefree(n) {
        return Err(Error::precondition(format!("{p} is not a prime divisor of squarefree {n}")));
    }
    let ps = prime_divisors(n);
    if p % 2 == 1 {
        let split = ps
            .iter()
            .any(|&q| q % 2 == 1 && kronecker(-(p as i64), q as i64) == 1);
        Ok(split || (p % 8 == 7 && n.is_multiple_of(2)))
    } else {
        let split = ps.iter().any(|&q| kronecker(-2, q as i64) == 1);
        Ok(split && ps.iter().any(|&q| q % 4 == 1))
    }
}

/// Number of trivial zeroes of the all-minus pattern at prime level N > 3.
pub fn prime_level_trivial_zero_count(n: u64) -> Result<u64> {
    if n <= 3 || !is_prime(n) {
        return Err(Error::precondition(format!("need a prime above 3, got {n}")));
    }
    let h = iq_class_number(imag_quadratic_discriminant(n))?;
    let hb = h * b_constant(n)?;
    if hb % 2 != 0 {
        return Err(Error::defect(format!("odd h*b at N={n}")));
    }
    Ok(hb / 2)
}

/// One row of a formula-path range scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub level: u64,
    pub pattern: String,
    pub mask: u32,
    pub dim_bias: u64,
    pub criterion: bool,
}

/// Formula-path data for every pattern at one level. Errors if the
/// criterion disagrees with a zero bias.
pub fn scan_level(n: u64) -> Result<Vec<ScanRow>> {
    SignPattern::all(n)
        .into_iter()
        .map(|eps| {
            let bias = dim_bias(n, &eps)?;
            let criterion = eps.is_all_plus() || no_trivial_zeroes_criterion(n, &eps)?;
            if criterion != (bias == 0) {
                return Err(Error::defect(format!(
                    "criterion and bias disagree at N={n}, eps={eps}"
                )));
            }
            Ok(ScanRow {
                level: n,
                pattern: eps.to_string(),
                mask: eps.mask(),
                dim_bias: bias,
                criterion,
            })
        })
        .collect()
}

/// Summary of a scan: levels with some non-trivial pattern free of trivial
/// zeroes, and the number of such patterns.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub levels: usize,
    pub levels_with_free_pattern: usize,
    pub free_patterns: usize,
}

pub fn summarize(rows: &[ScanRow]) -> ScanSummary {
    let mut s = ScanSummary::default();
    let mut last = None;
    let mut counted = None;
    for r in rows {
        if last != Some(r.level) {
            s.levels += 1;
            last = Some(r.level);
        }
        if r.mask != 0 && r.criterion {
            s.free_patterns += 1;
            if counted != Some(r.level) {
                s.levels_with_free_pattern += 1;
                counted = Some(r.level);
            }
        }
    }
    s
}

/// Odd squarefree levels below `bound` with exactly `w` prime factors.
pub fn odd_levels_with_omega(bound: u64, w: usize) -> Vec<u64> {
    (3..bound)
        .step_by(2)
        .filter(|&n| is_squarefree(n) && omega(n) == w)
        .collect()
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from("level,pattern,mask,dim_bias,criterion\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.level, r.pattern, r.mask, r.dim_bias, r.criterion
        ));
    }
    out
}
