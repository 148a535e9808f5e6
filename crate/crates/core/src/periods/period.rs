//! Toric periods P_{K,chi}(phi) and the vanishing verdicts they control.

use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::classmap::ClassMapTable;
use super::field::{Character, IQField};
use super::interval::{cos_sin_turns, eval_interval, Interval, RealRoot};
use crate::eigen::spectrum::Eigenform;
use crate::error::{Error, Result};
use crate::exactalg::{IntPoly, NFElem};

/// Precision schedule for periods of characters of order above 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodConfig {
    pub start_bits: u32,
    pub max_bits: u32,
}

impl Default for PeriodConfig {
    fn default() -> Self {
        PeriodConfig {
            start_bits: 128,
            max_bits: 1024,
        }
    }
}

/// A period value. Values for characters of order at most 2 are exact;
/// otherwise the real embedding at the largest root of the form's field is
/// used. Zero is certified exactly, nonzero by an enclosure avoiding 0.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum PeriodValue {
    Exact(NFElem),
    /// sum_a c_a y^a is divisible by Phi_n.
    IdenticallyZero,
    /// zeta is a root of the factor gcd(sum_a c_a y^a, Phi_n) over the form's
    /// field, of the given degree.
    ZeroAtEmbedding { factor_degree: usize },
    Approx { re: Interval, im: Interval, bits: u32 },
}

impl PeriodValue {
    /// Some(true) for zero, Some(false) for nonzero, None when undecided.
    pub fn is_zero(&self) -> Option<bool> {
        match self {
            PeriodValue::Exact(v) => Some(v.is_zero()),
            PeriodValue::IdenticallyZero | PeriodValue::ZeroAtEmbedding { .. } => Some(true),
            PeriodValue::Approx { re, im, .. } => {
                if re.contains_zero() && im.contains_zero() {
                    None
                } else {
                    Some(false)
                }
            }
        }
    }

    /// Real and imaginary enclosures at the given precision.
    pub fn enclose(&self, form: &Eigenform, bits: u32) -> (Interval, Interval) {
        match self {
            PeriodValue::Exact(v) => (embed_value(form, v, bits), Interval::zero()),
            PeriodValue::IdenticallyZero | PeriodValue::ZeroAtEmbedding { .. } => {
                (Interval::zero(), Interval::zero())
            }
            PeriodValue::Approx { re, im, .. } => (re.clone(), im.clone()),
        }
    }
}

impl fmt::Display for PeriodValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PeriodValue::Exact(v) => write!(f, "{v}"),
            PeriodValue::IdenticallyZero | PeriodValue::ZeroAtEmbedding { .. } => f.write_str("0"),
            PeriodValue::Approx { re, im, bits } => write!(
                f,
                "{:.12e} + {:.12e} i (+-2^-{bits})",
                re.mid_f64(),
                im.mid_f64()
            ),
        }
    }
}

fn root_interval(form: &Eigenform, bits: u32) -> Interval {
    let modulus = form.field.modulus();
    let mut r = RealRoot::largest(modulus).expect("eigenvalue fields are totally real");
    r.refine(bits + 8);
    r.interval
}

fn embed_value(form: &Eigenform, v: &NFElem, bits: u32) -> Interval {
    eval_interval(v.rep(), &root_interval(form, bits), bits)
}

/// Cyclotomic polynomial Phi_n.
pub fn cyclotomic(n: u64) -> IntPoly {
    let mut f = {
        let mut c = vec![BigInt::zero(); n as usize + 1];
        c[0] = -BigInt::one();
        c[n as usize] = BigInt::one();
        IntPoly::new(c)
    };
    for d in 1..n {
        if n.is_multiple_of(d) {
            f = f.div_exact(&cyclotomic(d)).expect("Phi_d divides x^n - 1");
        }
    }
    f
}

/// P_{K,chi}(phi) = sum_t phi(iota_*(t)) chi^{-1}(t).
pub fn period(
    form: &Eigenform,
    k: &IQField,
    table: &ClassMapTable,
    chi: &Character,
    cfg: &PeriodConfig,
) -> Result<PeriodValue> {
    let field = &form.field;
    let order = k.character_order(chi);
    if order <= 2 {
        let mut s = NFElem::zero(field);
        for t in 0..k.h() {
            let v = &form.values[table.map[t]];
            if k.character_value(chi, t).is_zero() {
                s = s.add(v);
            } else {
                s = s.sub(v);
            }
        }
        return Ok(PeriodValue::Exact(s));
    }
    // Group by the exponent a with chi^{-1}(t) = exp(2 pi i a / order).
    let n = order as usize;
    let mut c = vec![NFElem::zero(field); n];
    for t in 0..k.h() {
        let q = -k.character_value(chi, t) * Ratio::from_integer(order as i64);
        let a = q.to_integer().rem_euclid(order as i64) as usize;
        c[a] = c[a].add(&form.values[table.map[t]]);
    }
    let phi = cyclotomic(order);
    let phi_k: Vec<NFElem> = phi
        .coeffs()
        .iter()
        .map(|a| NFElem::from_rational(field, BigRational::from_integer(a.clone())))
        .collect();
    let g = kpoly_gcd(&c, &phi_k)?;
    if g.len() == phi_k.len() {
        return Ok(PeriodValue::IdenticallyZero);
    }
    let cofactor = (g.len() > 1).then(|| kpoly_divmod(&phi_k, &g)).transpose()?.map(|(q, _)| q);
    let mut bits = cfg.start_bits;
    loop {
        let x = root_interval(form, bits);
        let (re, im) = eval_at_zeta(&c, &x, order, bits);
        if !(re.contains_zero() && im.contains_zero()) {
            return Ok(PeriodValue::Approx { re, im, bits });
        }
        // zeta is a root of exactly one of g and Phi_n / g.
        if let Some(h) = &cofactor {
            let (hr, hi) = eval_at_zeta(h, &x, order, bits);
            if !(hr.contains_zero() && hi.contains_zero()) {
                return Ok(PeriodValue::ZeroAtEmbedding { factor_degree: g.len() - 1 });
            }
        }
        if bits >= cfg.max_bits {
            return Ok(PeriodValue::Approx { re, im, bits });
        }
        bits = (bits * 2).min(cfg.max_bits);
    }
}

/// sum_a c_a(x) zeta^a with zeta = exp(2 pi i / order).
fn eval_at_zeta(c: &[NFElem], x: &Interval, order: u64, bits: u32) -> (Interval, Interval) {
    let mut re = Interval::zero();
    let mut im = Interval::zero();
    for (a, ca) in c.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        let v = eval_interval(ca.rep(), x, bits);
        let (cs, sn) = cos_sin_turns(&Ratio::new(a as i64, order as i64), bits);
        re = re.add(&v.mul(&cs)).round(bits + 4);
        im = im.add(&v.mul(&sn)).round(bits + 4);
    }
    (re, im)
}

fn kpoly_trim(mut a: Vec<NFElem>) -> Vec<NFElem> {
    while a.last().is_some_and(|x| x.is_zero()) {
        a.pop();
    }
    a
}

/// Quotient and remainder in K[y], coefficients listed from degree 0.
fn kpoly_divmod(a: &[NFElem], b: &[NFElem]) -> Result<(Vec<NFElem>, Vec<NFElem>)> {
    let b = kpoly_trim(b.to_vec());
    let lead = b.last().ok_or_else(|| Error::defect("division by the zero polynomial"))?.inverse()?;
    let mut r = kpoly_trim(a.to_vec());
    if r.len() < b.len() {
        return Ok((Vec::new(), r));
    }
    let zero = NFElem::zero(lead.field());
    let mut q = vec![zero; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = r.last().expect("nonempty").mul(&lead);
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].sub(&f.mul(bi));
        }
        q[shift] = f;
        r.pop();
        r = kpoly_trim(r);
    }
    Ok((q, r))
}

/// Monic gcd in K[y]; the empty vector stands for 0.
fn kpoly_gcd(a: &[NFElem], b: &[NFElem]) -> Result<Vec<NFElem>> {
    let mut a = kpoly_trim(a.to_vec());
    let mut b = kpoly_trim(b.to_vec());
    while !b.is_empty() {
        let (_, r) = kpoly_divmod(&a, &b)?;
        a = b;
        b = r;
    }
    if let Some(l) = a.last() {
        let inv = l.inverse()?;
        a = a.iter().map(|x| x.mul(&inv)).collect();
    }
    Ok(a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    /// A necessary condition for a nonzero period fails.
    ForcedZero,
    LNonzero,
    LZero,
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ForcedZero => "FORCED_ZERO",
            Verdict::LNonzero => "L_NONZERO",
            Verdict::LZero => "L_ZERO",
            Verdict::Undecided => "UNDECIDED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub level: u64,
    pub d: u64,
    pub character: Vec<u64>,
    pub character_order: u64,
    pub sign_pattern: String,
    /// eps_N = +1 whenever chi has order at most 2.
    pub root_number_condition: bool,
    /// eps_N = chi(c) for the twist classes c of the class map.
    pub twisted_root_number_condition: bool,
    pub local_condition: bool,
    pub verdict: Verdict,
    pub period: String,
    pub provenance: String,
    pub base_class: usize,
}

/// chi on the class of the prime above p, as +-1.
fn chi_at_ramified(k: &IQField, chi: &Character, p: u64) -> Result<i8> {
    let v = k.character_value(chi, k.ramified_prime_class(p)?);
    if v.is_zero() {
        Ok(1)
    } else if v == Ratio::new(1, 2) {
        Ok(-1)
    } else {
        Err(Error::defect("ramified prime class is not 2-torsion"))
    }
}

/// Necessary conditions for a nonzero period: eps_N = +1 for chi of order
/// at most 2, its twisted form eps_N = chi(c), and chi(J_p) = eps_p at
/// ramified p | N.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeriodConditions {
    pub root_number: bool,
    pub twisted_root_number: bool,
    pub local: bool,
}

pub fn period_conditions(
    form: &Eigenform,
    k: &IQField,
    table: &ClassMapTable,
    chi: &Character,
) -> Result<PeriodConditions> {
    let eps = &form.sign_pattern;
    let quadratic = k.character_order(chi) <= 2;
    let root_number = !quadratic || eps.eps_level() == 1;
    // P_chi = eps_N chi(c) P_chi when chi = chi^-1.
    let twisted_root_number = !quadratic
        || table.twists.iter().all(|&c| {
            let v = if k.character_value(chi, c).is_zero() { 1 } else { -1 };
            v * eps.eps_level() == 1
        });
    let mut local = true;
    for &(p, e) in &eps.signs {
        if k.d.is_multiple_of(p) && chi_at_ramified(k, chi, p)? != e {
            local = false;
        }
    }
    Ok(PeriodConditions {
        root_number,
        twisted_root_number,
        local,
    })
}

/// Decides L(1/2, phi_K x chi) != 0 through the period when the local
/// conditions allow it. Vanishing is forced by the local signs or by the
/// twisted root number condition; the untwisted one is reported alongside.
pub fn nonvanishing_verdict(
    form: &Eigenform,
    k: &IQField,
    table: &ClassMapTable,
    chi: &Character,
    cfg: &PeriodConfig,
) -> Result<VerdictReport> {
    if form.is_eisenstein {
        return Err(Error::precondition("verdicts need a cusp form"));
    }
    let cond = period_conditions(form, k, table, chi)?;
    let p = period(form, k, table, chi, cfg)?;
    let zero = p.is_zero();
    let (verdict, provenance) = if !cond.local {
        (Verdict::ForcedZero, "local sign condition fails")
    } else if !cond.twisted_root_number {
        (Verdict::ForcedZero, "root number condition fails")
    } else {
        match zero {
            Some(false) if !cond.root_number => {
                (Verdict::LNonzero, "period; untwisted root number condition fails")
            }
            Some(false) => (Verdict::LNonzero, "period"),
            Some(true) => (Verdict::LZero, "period"),
            None => (Verdict::Undecided, "period within error radius"),
        }
    };
    if verdict == Verdict::ForcedZero && zero == Some(false) {
        return Err(Error::defect(format!(
            "period nonzero although a vanishing condition holds ({provenance})"
        )));
    }
    if let Some(fast) = one_class_per_genus_verdict(form, k, table, chi)? {
        let agrees = match verdict {
            Verdict::LNonzero => fast,
            Verdict::LZero | Verdict::ForcedZero => !fast,
            Verdict::Undecided => true,
        };
        if !agrees {
            return Err(Error::defect("period disagrees with the genus-theory shortcut"));
        }
    }
    Ok(VerdictReport {
        level: form.level,
        d: k.d,
        character: chi.exponents.clone(),
        character_order: k.character_order(chi),
        sign_pattern: form.sign_pattern.to_string(),
        root_number_condition: cond.root_number,
        twisted_root_number_condition: cond.twisted_root_number,
        local_condition: cond.local,
        verdict,
        period: p.to_string(),
        provenance: provenance.to_string(),
        base_class: table.embedding.class_index,
    })
}

/// For fields with one class per genus and h_K = 1 or chi matching the
/// signs at every ramified prime (all dividing N): whether L != 0, read off
/// from phi at the base point. None when the hypotheses fail.
pub fn one_class_per_genus_verdict(
    form: &Eigenform,
    k: &IQField,
    table: &ClassMapTable,
    chi: &Character,
) -> Result<Option<bool>> {
    if !k.one_class_per_genus() {
        return Ok(None);
    }
    let applies = k.h() == 1
        || crate::exactalg::arith::prime_divisors(k.d).iter().try_fold(true, |acc, &p| {
            if !acc || !form.level.is_multiple_of(p) {
                return Ok::<bool, Error>(false);
            }
            let e = form.sign_pattern.eps_p(p).expect("p divides the level");
            Ok(chi_at_ramified(k, chi, p)? == e)
        })?;
    if !applies {
        return Ok(None);
    }
    Ok(Some(!form.values[table.map[0]].is_zero()))
}

/// Outcome of looking for a character with nonvanishing twisted L-value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TwistSearch {
    /// phi vanishes at the base point, so no character is guaranteed.
    NotApplicable,
    Found(VerdictReport),
    /// Only undecided verdicts remain among the candidates.
    Undecided,
}

/// When phi is nonzero at the base point, some character has a nonzero
/// period, since the periods over all characters sum to h_K phi(base).
pub fn find_nonvanishing_twist(
    form: &Eigenform,
    k: &IQField,
    table: &ClassMapTable,
    cfg: &PeriodConfig,
) -> Result<TwistSearch> {
    if form.values[table.map[0]].is_zero() {
        return Ok(TwistSearch::NotApplicable);
    }
    let mut undecided = false;
    for chi in k.characters() {
        let r = nonvanishing_verdict(form, k, table, &chi, cfg)?;
        match r.verdict {
            Verdict::LNonzero => return Ok(TwistSearch::Found(r)),
            Verdict::Undecided => undecided = true,
            _ => {}
        }
    }
    if undecided {
        Ok(TwistSearch::Undecided)
    } else {
        Err(Error::defect("every character period vanishes although phi(base) != 0"))
    }
}

/// Checks sum_chi P_chi = h_K phi(base) and P_{chi^-1} = chi(c) eps_N P_chi,
/// c the first twist class, at a fixed precision. Returns descriptions of failures.
pub fn check_period_identities(
    form: &Eigenform,
    k: &IQField,
    table: &ClassMapTable,
    cfg: &PeriodConfig,
) -> Result<Vec<String>> {
    let bits = cfg.start_bits;
    let chars = k.characters();
    let mut bad = Vec::new();
    let mut re = Interval::zero();
    let mut im = Interval::zero();
    let eps_n = BigRational::from_integer(BigInt::from(form.sign_pattern.eps_level()));
    let c = table.twists[0];
    for chi in &chars {
        let p = period(form, k, table, chi, cfg)?;
        let (r, i) = p.enclose(form, bits);
        re = re.add(&r);
        im = im.add(&i);
        let q = period(form, k, table, &k.conjugate(chi), cfg)?;
        let (r2, i2) = q.enclose(form, bits);
        let (cs, sn) = cos_sin_turns(&k.character_value(chi, c), bits);
        let er = r.mul(&cs).sub(&i.mul(&sn)).scale(&eps_n);
        let ei = r.mul(&sn).add(&i.mul(&cs)).scale(&eps_n);
        if !r2.sub(&er).contains_zero() || !i2.sub(&ei).contains_zero() {
            bad.push(format!("conjugate character {:?} breaks the sign symmetry", chi.exponents));
        }
    }
    let base = embed_value(form, &form.values[table.map[0]], bits)
        .scale(&BigRational::from_integer(BigInt::from(k.h())));
    if !re.sub(&base).contains_zero() || !im.contains_zero() {
        bad.push("character sum differs from h_K phi(base)".to_string());
    }
    Ok(bad)
}
