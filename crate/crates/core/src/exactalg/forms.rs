//! Positive definite binary quadratic forms of negative discriminant:
//! reduction, enumeration of reduced forms and Gauss composition.

use serde::{Deserialize, Serialize};

use super::arith::{ext_gcd, gcd_i64};
use crate::error::{Error, Result};

/// The form a x^2 + b x y + c y^2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Form {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Form {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Form { a, b, c }
    }

    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        gcd_i64(gcd_i64(self.a, self.b), self.c) == 1
    }

    pub fn is_reduced(&self) -> bool {
        let Form { a, b, c } = *self;
        b.abs() <= a && a <= c && !((b.abs() == a || a == c) && b < 0)
    }

    /// The equivalent reduced form.
    pub fn reduce(&self) -> Form {
        let Form { mut a, mut b, mut c } = *self;
        debug_assert!(a > 0 && c > 0);
        loop {
            // Normalize b into (-a, a].
            if b <= -a || b > a {
                let two_a = 2 * a;
                let k = (a - b).div_euclid(two_a);
                let nb = b + two_a * k;
                c += k * (b + a * k);
                b = nb;
            }
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if a == c && b < 0 {
                b = -b;
            }
            return Form { a, b, c };
        }
    }

    /// The inverse class representative (a, -b, c), reduced.
    pub fn inverse(&self) -> Form {
        Form::new(self.a, -self.b, self.c).reduce()
    }

    /// The principal form of discriminant `disc`.
    pub fn identity(disc: i64) -> Form {
        let b = disc.rem_euclid(2);
        Form::new(1, b, (b * b - disc) / 4)
    }

    /// Gauss composition (Dirichlet's united forms), followed by reduction.
    pub fn compose(&self, other: &Form) -> Form {
        let disc = self.disc();
        debug_assert_eq!(disc, other.disc());
        let (a1, b1) = (self.a as i128, self.b as i128);
        let (a2, b2) = (other.a as i128, other.b as i128);
        let s = (b1 + b2) / 2;
        let (g1, x1, y1) = ext_gcd(self.a, other.a);
        let (e, x2, z) = ext_gcd(g1, s as i64);
        // x a1 + y a2 + z s = e
        let x = x1 as i128 * x2 as i128;
        let y = y1 as i128 * x2 as i128;
        let z = z as i128;
        let e = e as i128;
        let a3 = a1 * a2 / (e * e);
        let d = disc as i128;
        let num = x * a1 * b2 + y * a2 * b1 + z * (b1 * b2 + d) / 2;
        let b3 = (num / e).rem_euclid(2 * a3);
        let c3 = (b3 * b3 - d) / (4 * a3);
        Form::new(a3 as i64, b3 as i64, c3 as i64).reduce()
    }

    /// Repeated composition; negative exponents use the inverse.
    pub fn pow(&self, e: i64) -> Form {
        let base = if e < 0 { self.inverse() } else { self.reduce() };
        let mut acc = Form::identity(self.disc());
        for _ in 0..e.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }
}

fn check_disc(disc: i64) -> Result<()> {
    if disc >= 0 || !matches!(disc.rem_euclid(4), 0 | 1) {
        return Err(Error::precondition(format!(
            "{disc} is not a negative discriminant (need < 0 and 0 or 1 mod 4)"
        )));
    }
    Ok(())
}

/// All reduced primitive forms of discriminant `disc`, sorted.
pub fn reduced_forms(disc: i64) -> Result<Vec<Form>> {
    check_disc(disc)?;
    let mut out = Vec::new();
    let mut a = 1;
    while 3 * a * a <= -disc {
        for b in -a + 1..=a {
            if (b * b - disc) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b - disc) / (4 * a);
            let f = Form::new(a, b, c);
            if f.is_reduced() && f.is_primitive() {
                out.push(f);
            }
        }
        a += 1;
    }
    out.sort();
    Ok(out)
}

/// Class number of the order of discriminant `disc`, counted as the number
/// of reduced primitive positive definite forms.
pub fn iq_class_number(disc: i64) -> Result<u64> {
    Ok(reduced_forms(disc)?.len() as u64)
}
