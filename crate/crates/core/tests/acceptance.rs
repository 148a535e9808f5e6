//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Arguments: criterion numbers select a subset; `--include-ignored` or
//! `--ignored` (or QUATZERO_ACCEPT_FULL=1) adds the long prime-level census.
//! Libtest flags such as `--nocapture` are accepted and ignored.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};

use quatzero::census::{
    census_record, degree_histogram, plot_points, run_census, CensusOptions, CensusRecord,
    PlotKind,
};
use quatzero::dimform::{
    b_constant, dim_bias, no_trivial_zeroes_criterion, odd_levels_with_omega, scan_level,
    summarize,
};
use quatzero::eigen::spectrum::{hecke_eigenvalue, split_spectrum, EigenConfig, Spectrum};
use quatzero::exactalg::arith::{
    imag_quadratic_discriminant, is_fundamental_discriminant, is_prime, is_squarefree, omega,
    primes_between,
};
use quatzero::exactalg::iq_class_number;
use quatzero::exactalg::numfield::NFElem;
use quatzero::periods::{
    class_map_identities, embed, embeds, ideal_class_map, nonvanishing_verdict, period, IQField,
    PeriodConfig, Verdict,
};
use quatzero::quatarith::brandt::hecke_matrices;
use quatzero::quatarith::classes::{mass, IdealClassSet};
use quatzero::trivzero::{classify_zeroes, involutions, InvolutionSet};

type Outcome = std::result::Result<String, String>;

const BUDGET: usize = 10_000_000;

/// Criteria expected to fail, with the reason printed next to the result.
const KNOWN_RED: &[(u32, &str)] = &[(
    10,
    "the untwisted inversion rule map[t^-1] = sigma_N(map[t]) and its 2-torsion corollary \
     fail on many pairs; the twisted rule map[t^-1] = sigma_N(map[c t]) \
     and the remaining identities hold on the whole grid",
)];

fn valid_level(n: u64) -> bool {
    n >= 2 && is_squarefree(n) && omega(n) % 2 == 1
}

struct Level {
    classes: IdealClassSet,
    spec: Spectrum,
}

fn spectra() -> &'static BTreeMap<u64, Level> {
    static CELL: OnceLock<BTreeMap<u64, Level>> = OnceLock::new();
    CELL.get_or_init(|| {
        let t = Instant::now();
        let mut out = BTreeMap::new();
        for n in (2..=500).filter(|&n| valid_level(n)) {
            let classes = IdealClassSet::for_level(n).expect("class set");
            let spec = split_spectrum(&classes, &EigenConfig::default()).expect("spectrum");
            out.insert(n, Level { classes, spec });
        }
        eprintln!("  (spectra for N <= 500 in {:.1?})", t.elapsed());
        out
    })
}

fn involutions_upto_1000() -> &'static BTreeMap<u64, (IdealClassSet, InvolutionSet)> {
    static CELL: OnceLock<BTreeMap<u64, (IdealClassSet, InvolutionSet)>> = OnceLock::new();
    CELL.get_or_init(|| {
        let t = Instant::now();
        let mut out = BTreeMap::new();
        for n in (2..=1000).filter(|&n| valid_level(n)) {
            let classes = IdealClassSet::for_level(n).expect("class set");
            let inv = involutions(&classes).expect("involutions");
            out.insert(n, (classes, inv));
        }
        eprintln!("  (involutions for N <= 1000 in {:.1?})", t.elapsed());
        out
    })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixed_points(s: &[usize]) -> usize {
    (0..s.len()).filter(|&i| s[i] == i).count()
}

fn cycle_type(s: &[usize]) -> (usize, usize) {
    let fixed = fixed_points(s);
    (fixed, (s.len() - fixed) / 2)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn c1_level_154() -> Outcome {
    let t = Instant::now();
    let classes = IdealClassSet::for_level(154).map_err(|e| e.to_string())?;
    let spec = split_spectrum(&classes, &EigenConfig::default()).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    ensure(classes.h() == 6, || format!("h = {}", classes.h()))?;
    let inv = &spec.involutions;
    let s = |p| inv.get(p).expect("sigma_p").to_vec();
    let (s2, s7, s11) = (s(2), s(7), s(11));
    // Published labels x1..x6 as 0..5.
    let published: [Vec<usize>; 3] = [
        vec![1, 0, 3, 2, 4, 5],
        vec![1, 0, 3, 2, 5, 4],
        vec![0, 1, 3, 2, 5, 4],
    ];
    let mut found = None;
    for perm in permutations(6) {
        // perm[published index] = our index.
        let conj_ok = [&s2, &s7, &s11].iter().zip(&published).all(|(ours, theirs)| {
            (0..6).all(|i| ours[perm[i]] == perm[theirs[i]])
        });
        if conj_ok && rows_match(&spec, &perm) {
            found = Some(perm);
            break;
        }
    }
    let perm = found.ok_or("no relabeling matches the eigenform table and sigma cycles")?;
    let orbits = quatzero::trivzero::orbit_structure(inv, &classes.weights)
        .map_err(|e| e.to_string())?;
    let mut parts: Vec<Vec<usize>> = orbits.orbits.clone();
    for p in &mut parts {
        p.sort_unstable();
    }
    parts.sort();
    ensure(parts.len() == 3 && parts.iter().all(|p| p.len() == 2), || {
        format!("orbits {parts:?}")
    })?;
    ensure(
        cycle_type(&s2) == (2, 2) && cycle_type(&s7) == (0, 3) && cycle_type(&s11) == (2, 2),
        || "cycle structures differ".into(),
    )?;
    for o in spec.cusp_orbits() {
        let (_, nontrivial) = classify_zeroes(&o.zero_set, spec.report(&o.form.sign_pattern))
            .map_err(|e| e.to_string())?;
        ensure(nontrivial.is_empty(), || "a nontrivial zero at N=154".into())?;
    }
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("relabeling {perm:?}, {elapsed:.2?}"))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every form of the table, read through `perm`, matches a computed orbit up
/// to scaling and conjugation, with the printed signs.
fn rows_match(spec: &Spectrum, perm: &[usize]) -> bool {
    let orbits: Vec<_> = spec.orbits.iter().collect();
    if orbits.len() != 5 {
        return false;
    }
    let v = |o: &quatzero::eigen::spectrum::GaloisOrbit, i: usize| o.form.values[perm[i]].clone();
    let signs = |o: &quatzero::eigen::spectrum::GaloisOrbit| o.form.sign_pattern.to_string();
    let proportional = |o: &quatzero::eigen::spectrum::GaloisOrbit, row: &[i64]| {
        let k = row.iter().position(|&x| x != 0).unwrap();
        let Ok(scale) = v(o, k).div(&NFElem::from_int(&o.form.field, row[k])) else {
            return false;
        };
        (0..6).all(|i| v(o, i) == scale.scale(&rat(row[i])))
    };
    let mut seen = [false; 5];
    for o in &orbits {
        let idx = if o.form.is_eisenstein {
            let ok = o.degree() == 1 && proportional(o, &[1; 6]) && signs(o) == "+++";
            if !ok {
                return false;
            }
            0
        } else if o.degree() == 2 {
            let x1 = v(o, 0);
            let Ok(a) = v(o, 2).div(&x1) else { return false };
            let f = &o.form.field;
            let root = a.mul(&a).add(&a.scale_int(3)).add(&NFElem::one(f)).is_zero();
            let tail = a.scale_int(-2).sub(&NFElem::from_int(f, 2));
            let ok = root
                && v(o, 1) == x1
                && v(o, 3) == v(o, 2)
                && v(o, 4).div(&x1).map(|r| r == tail).unwrap_or(false)
                && v(o, 5) == v(o, 4)
                && signs(o) == "+++";
            if !ok {
                return false;
            }
            1
        } else {
            let rows: [(&[i64], &str); 3] = [
                (&[0, 0, 0, 0, 1, -1], "+--"),
                (&[1, -1, 0, 0, 0, 0], "--+"),
                (&[0, 0, 1, -1, 0, 0], "---"),
            ];
            match rows.iter().position(|(r, s)| signs(o) == *s && proportional(o, r)) {
                Some(k) => 2 + k,
                None => return false,
            }
        };
        if seen[idx] {
            return false;
        }
        seen[idx] = true;
    }
    seen.iter().all(|&s| s)
}

fn c2_level_30() -> Outcome {
    let t = Instant::now();
    let classes = IdealClassSet::for_level(30).map_err(|e| e.to_string())?;
    let spec = split_spectrum(&classes, &EigenConfig::default()).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    let cusp: Vec<_> = spec.cusp_orbits().collect();
    ensure(cusp.len() == 1 && cusp[0].degree() == 1, || format!("{} cusp orbits", cusp.len()))?;
    let f = &cusp[0].form;
    let vals: Vec<BigRational> = f.values.iter().map(|x| x.as_rational().unwrap()).collect();
    let normalized: Vec<BigRational> = vals.iter().map(|x| x / &vals[0]).collect();
    ensure(normalized == vec![rat(1), rat(-1)], || format!("values {normalized:?}"))?;
    ensure(f.sign_pattern.signs == vec![(2, -1), (3, 1), (5, -1)], || {
        format!("signs {}", f.sign_pattern)
    })?;
    ensure(cusp[0].zero_set.is_empty(), || "not zero-free".into())?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("{elapsed:.2?}"))
}

fn c3_structure() -> Outcome {
    let mut levels = 0;
    for (&n, lv) in spectra() {
        levels += 1;
        let c = &lv.classes;
        let spec = &lv.spec;
        let h = c.h();
        ensure(c.mass_sum() == mass(n), || format!("mass formula fails at N={n}"))?;
        let ts: Vec<_> = spec.brandt.iter().filter(|t| t.n <= 13).collect();
        let w = &c.weights;
        for t in &ts {
            let m = &t.entries;
            for i in 0..h {
                for j in 0..h {
                    ensure(w[j] as i64 * m[i][j] == w[i] as i64 * m[j][i], || {
                        format!("T_{} not weighted-symmetric at N={n}", t.n)
                    })?;
                }
            }
            if n % t.n == 0 {
                let s = t
                    .as_permutation()
                    .ok_or_else(|| format!("T_{} is not a permutation at N={n}", t.n))?;
                ensure((0..h).all(|i| s[s[i]] == i), || {
                    format!("T_{} is not an involution at N={n}", t.n)
                })?;
            } else {
                ensure(m.iter().all(|r| r.iter().sum::<i64>() == t.n as i64 + 1), || {
                    format!("row sums of T_{} at N={n}", t.n)
                })?;
            }
        }
        for a in &ts {
            for b in &ts {
                ensure(mat_mul(&a.entries, &b.entries) == mat_mul(&b.entries, &a.entries), || {
                    format!("T_{} and T_{} do not commute at N={n}", a.n, b.n)
                })?;
            }
        }
        let primes_le_13 = primes_between(2, 14);
        ensure(primes_le_13.iter().all(|p| ts.iter().any(|t| t.n == *p)), || {
            format!("missing a Brandt matrix at N={n}")
        })?;
        let sn = spec.involutions.sigma_level();
        ensure(fixed_points(&sn) >= 1, || format!("tr T_N = 0 at N={n}"))?;
    }
    Ok(format!("{levels} levels"))
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let h = a.len();
    (0..h)
        .map(|i| (0..h).map(|j| (0..h).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn c4_graph_vs_formula() -> Outcome {
    let mut patterns = 0;
    for (&n, (_, inv)) in involutions_upto_1000() {
        let w = omega(n);
        if n % 2 == 0 || !(w == 1 || w == 3) {
            continue;
        }
        let reports = quatzero::trivzero::all_reports(inv).map_err(|e| e.to_string())?;
        for r in &reports {
            patterns += 1;
            let bias = dim_bias(n, &r.eps).map_err(|e| e.to_string())?;
            ensure(r.inadmissible.len() as u64 == bias, || {
                format!("N={n} {}: {} inadmissible, bias {bias}", r.eps, r.inadmissible.len())
            })?;
            let crit = no_trivial_zeroes_criterion(n, &r.eps).map_err(|e| e.to_string())?;
            ensure(crit == (bias == 0), || format!("criterion disagrees at N={n} {}", r.eps))?;
        }
    }
    Ok(format!("{patterns} (level, pattern) pairs"))
}

fn c5_fixed_points() -> Outcome {
    let mut count = 0;
    for (&n, (_, inv)) in involutions_upto_1000() {
        if !(5..=500).contains(&n) || !is_prime(n) {
            continue;
        }
        count += 1;
        let tr = fixed_points(&inv.sigma_level()) as u64;
        let h = iq_class_number(imag_quadratic_discriminant(n)).map_err(|e| e.to_string())?;
        let b = b_constant(n).map_err(|e| e.to_string())?;
        ensure(2 * tr == h * b, || format!("N={n}: tr {tr}, h {h}, b {b}"))?;
    }
    Ok(format!("{count} primes"))
}

fn c6_scan() -> Outcome {
    let t = Instant::now();
    let mut rows = Vec::new();
    for n in odd_levels_with_omega(10000, 3) {
        rows.extend(scan_level(n).map_err(|e| e.to_string())?);
    }
    let s = summarize(&rows);
    let elapsed = t.elapsed();
    ensure(s.levels_with_free_pattern == 465 && s.free_patterns == 559, || {
        format!("{} levels, {} patterns", s.levels_with_free_pattern, s.free_patterns)
    })?;
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!("{} of {} levels, {} patterns, {elapsed:.2?}", s.levels_with_free_pattern, s.levels, s.free_patterns))
}

/// #E(F_p) for y^2 + y = x^3 - x^2 - 10x - 20, counting the point at infinity.
fn curve_points(p: i64) -> i64 {
    let mut count = 1;
    for x in 0..p {
        for y in 0..p {
            let lhs = (y * y + y).rem_euclid(p);
            let rhs = (x * x * x - x * x - 10 * x - 20).rem_euclid(p);
            if lhs == rhs {
                count += 1;
            }
        }
    }
    count
}

fn c7_level_11() -> Outcome {
    let lv = &spectra()[&11];
    let cusp: Vec<_> = lv.spec.cusp_orbits().collect();
    ensure(cusp.len() == 1 && cusp[0].degree() == 1, || "expected one rational cusp form".into())?;
    let ps: Vec<u64> = primes_between(2, 51).into_iter().filter(|&p| p != 11).collect();
    let ts = hecke_matrices(&lv.classes, &ps).map_err(|e| e.to_string())?;
    for (p, t) in ps.iter().zip(&ts) {
        let a = hecke_eigenvalue(&cusp[0].form, t).map_err(|e| e.to_string())?;
        let expected = *p as i64 + 1 - curve_points(*p as i64);
        ensure(a.as_rational() == Some(rat(expected)), || {
            format!("a_{p} = {a:?}, expected {expected}")
        })?;
    }
    Ok(format!("{} primes", ps.len()))
}

fn c8_bounds() -> Outcome {
    let mut orbits = 0;
    let mut sparse_levels = 0;
    for (&n, lv) in spectra() {
        let spec = &lv.spec;
        let two_w = 1usize << omega(n);
        let mut per_pattern: BTreeMap<String, usize> = BTreeMap::new();
        let mut any_nontrivial = false;
        for o in &spec.orbits {
            orbits += 1;
            let r = spec.report(&o.form.sign_pattern);
            let d = o.degree();
            let f = r.fundamental_domain.len();
            let zeros_in_f = r.fundamental_domain.iter().filter(|i| o.zero_set.contains(i)).count();
            ensure(zeros_in_f + d <= f, || {
                format!("N={n}: {zeros_in_f} zeroes on a domain of {f} for degree {d}")
            })?;
            let (_, nontrivial) = classify_zeroes(&o.zero_set, r).map_err(|e| e.to_string())?;
            ensure(nontrivial.len() <= two_w * (r.dim() - d), || {
                format!("N={n}: {} nontrivial zeroes exceed the orbit-size bound", nontrivial.len())
            })?;
            if !o.form.is_eisenstein {
                *per_pattern.entry(o.form.sign_pattern.to_string()).or_default() += 1;
            }
            any_nontrivial |= !nontrivial.is_empty();
        }
        if per_pattern.values().all(|&c| c <= 1) {
            sparse_levels += 1;
            ensure(!any_nontrivial, || format!("N={n}: nontrivial zero with one orbit per pattern"))?;
        }
    }
    Ok(format!("{orbits} orbits, {sparse_levels} levels with at most one orbit per pattern"))
}

fn c9_periods_154() -> Outcome {
    let lv = &spectra()[&154];
    let spec = &lv.spec;
    let cfg = PeriodConfig::default();
    let find = |pat: &str| {
        spec.cusp_orbits()
            .find(|o| o.degree() == 1 && o.form.sign_pattern.to_string() == pat)
            .expect("orbit with the given signs")
    };
    let deg2 = spec.cusp_orbits().find(|o| o.degree() == 2).ok_or("no degree 2 orbit")?;
    let (phi3, phi4, phi5) = (find("+--"), find("--+"), find("---"));
    for d in [4u64, 11, 67, 163] {
        ensure(embeds(d, 154), || format!("D={d} does not embed"))?;
        let k = IQField::new(d).map_err(|e| e.to_string())?;
        ensure(k.h() == 1, || format!("h(D={d}) != 1"))?;
        let e = embed(&k, &lv.classes, BUDGET).map_err(|e| e.to_string())?;
        let table = ideal_class_map(&e, &k, &lv.classes, &spec.involutions).map_err(|e| e.to_string())?;
        let chi = k.trivial_character();
        let verdict = |o: &quatzero::eigen::spectrum::GaloisOrbit| {
            nonvanishing_verdict(&o.form, &k, &table, &chi, &cfg).ok().map(|r| r.verdict)
        };
        let zero = |o: &quatzero::eigen::spectrum::GaloisOrbit| {
            period(&o.form, &k, &table, &chi, &cfg).ok().and_then(|p| p.is_zero())
        };
        ensure(verdict(deg2) == Some(Verdict::LNonzero), || format!("D={d}: degree 2 orbit"))?;
        ensure(verdict(phi5) == Some(Verdict::ForcedZero), || format!("D={d}: ---"))?;
        match d {
            4 => ensure(zero(phi3) == Some(false) && zero(phi4) == Some(true), || {
                "D=4 periods".into()
            })?,
            11 => ensure(zero(phi3) == Some(true) && zero(phi4) == Some(false), || {
                "D=11 periods".into()
            })?,
            _ => {}
        }
    }
    Ok("D = 4, 11, 67, 163".into())
}

fn c10_class_maps() -> Outcome {
    let t = Instant::now();
    let mut pairs = 0;
    let mut untwisted = 0;
    let mut two_torsion = 0;
    let mut twisted = 0;
    let mut sigma_d = 0;
    let mut equivariant = 0;
    let mut first_bad = None;
    for (&n, (classes, inv)) in involutions_upto_1000().range(..=300) {
        for d in 3..=100u64 {
            if !is_fundamental_discriminant(-(d as i64)) || !embeds(d, n) {
                continue;
            }
            pairs += 1;
            let k = IQField::new(d).map_err(|e| e.to_string())?;
            let e = embed(&k, classes, BUDGET).map_err(|e| e.to_string())?;
            let table = ideal_class_map(&e, &k, classes, inv).map_err(|e| e.to_string())?;
            let ids = class_map_identities(&table, &k, inv).map_err(|e| e.to_string())?;
            if !ids.inverse_is_sigma_n {
                untwisted += 1;
                first_bad.get_or_insert((n, d));
            }
            two_torsion += usize::from(!ids.two_torsion_fixed);
            twisted += usize::from(!ids.twisted_inverse);
            sigma_d += usize::from(ids.fixed_by_sigma_d == Some(false));
            equivariant += usize::from(ids.equivariant.iter().any(|&(_, ok)| !ok));
        }
    }
    let summary = format!(
        "{pairs} pairs; failures: untwisted inversion {untwisted}, 2-torsion fixed {two_torsion}, \
         twisted inversion {twisted}, sigma_d fixed {sigma_d}, equivariance {equivariant}; \
         first untwisted failure {first_bad:?}; {:.1?}",
        t.elapsed()
    );
    if untwisted + two_torsion + twisted + sigma_d + equivariant == 0 {
        Ok(summary)
    } else {
        Err(summary)
    }
}

/// Zero-free proportion among forms without trivial zeroes, cumulative over
/// prime levels up to X, as published.
const ZERO_FREE_PRIME: &[(u64, f64)] = &[
    (13, 1.0),
    (19, 1.0),
    (29, 1.0),
    (37, 1.0),
    (43, 1.0),
    (53, 1.0),
    (61, 1.0),
    (71, 0.9743589743589743),
    (79, 0.9787234042553191),
    (89, 0.9830508474576272),
    (101, 0.9857142857142858),
    (107, 0.9879518072289156),
    (113, 0.9787234042553191),
    (131, 0.9819819819819819),
    (139, 0.9761904761904762),
    (151, 0.9583333333333334),
    (163, 0.9620253164556962),
    (173, 0.9666666666666667),
    (181, 0.9651741293532339),
    (193, 0.968609865470852),
    (199, 0.963265306122449),
    (223, 0.9664179104477612),
    (229, 0.9556313993174061),
    (239, 0.9596273291925466),
    (251, 0.9629629629629629),
    (263, 0.9659685863874345),
    (271, 0.9685990338164251),
    (281, 0.9638009049773756),
    (293, 0.9661016949152542),
    (311, 0.9607072691552063),
    (317, 0.9591078066914498),
    (337, 0.961335676625659),
    (349, 0.9636363636363636),
    (359, 0.9659969088098919),
    (373, 0.9677891654465594),
    (383, 0.9696551724137931),
    (397, 0.9672346002621232),
    (409, 0.9689054726368159),
    (421, 0.9705535924617197),
    (433, 0.9632107023411371),
    (443, 0.964021164021164),
    (457, 0.9655870445344129),
    (463, 0.9671814671814671),
    (479, 0.9689213893967094),
    (491, 0.9659685863874345),
];

fn prime_records() -> std::result::Result<Vec<CensusRecord>, String> {
    spectra()
        .iter()
        .filter(|(&n, _)| is_prime(n))
        .map(|(_, lv)| census_record(&lv.spec).map_err(|e| e.to_string()))
        .collect()
}

fn c11_zero_free_prefix() -> Outcome {
    let recs = prime_records()?;
    let refs: Vec<&CensusRecord> = recs.iter().collect();
    let pts = plot_points(&refs, PlotKind::ZeroFreePrime);
    let mut matched = 0;
    for &(x, y) in ZERO_FREE_PRIME {
        let p = pts.iter().find(|p| p.x == x).ok_or_else(|| format!("no point at X={x}"))?;
        let den = p.den.expect("proportion");
        ensure(p.num as f64 / den as f64 == y, || {
            format!("X={x}: {}/{den} against {y}", p.num)
        })?;
        matched += 1;
    }
    let p151 = pts.iter().find(|p| p.x == 151).unwrap();
    let r151 = Ratio::new(p151.num, p151.den.unwrap());
    ensure(r151 == Ratio::new(46, 48), || format!("X=151 gives {r151}"))?;
    Ok(format!("{matched} points up to X=491, X=151 at {r151}"))
}

fn c12_table_stretch() -> Outcome {
    let t = Instant::now();
    let levels = primes_between(2, 4000);
    let entries = run_census(&levels, &CensusOptions::default());
    if let Some(e) = entries.iter().find(|e| e.error.is_some()) {
        return Err(format!("N={}: {}", e.level, e.error.as_ref().unwrap()));
    }
    let recs = quatzero::census::records(&entries);
    let hist = degree_histogram(&recs);
    let got = (hist.orbits[0], hist.orbits_with_nontrivial[0], hist.nontrivial_zeroes[0]);
    ensure(got == (179, 152, 9730), || format!("degree 1 column {got:?}"))?;
    Ok(format!("degree 1 column {got:?}, {:.1?}", t.elapsed()))
}

struct Criterion {
    id: u32,
    name: &'static str,
    run: fn() -> Outcome,
    long: bool,
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let full = args.iter().any(|a| a == "--include-ignored" || a == "--ignored")
        || std::env::var("QUATZERO_ACCEPT_FULL").is_ok_and(|v| v == "1");
    let selected: Vec<u32> = args.iter().filter_map(|a| a.parse().ok()).collect();
    if args.iter().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }

    let criteria = [
        Criterion { id: 1, name: "N=154 classes, involutions and eigenform table", run: c1_level_154, long: false },
        Criterion { id: 2, name: "N=30 cusp form", run: c2_level_30, long: false },
        Criterion { id: 3, name: "structural invariants for N <= 500", run: c3_structure, long: false },
        Criterion { id: 4, name: "signed graph against dimension formula, N <= 1000", run: c4_graph_vs_formula, long: false },
        Criterion { id: 5, name: "fixed points of sigma_N at prime N <= 500", run: c5_fixed_points, long: false },
        Criterion { id: 6, name: "trivial-zero-free patterns, omega = 3, N < 10000", run: c6_scan, long: false },
        Criterion { id: 7, name: "N=11 eigenvalues against point counts", run: c7_level_11, long: false },
        Criterion { id: 8, name: "zero bounds for eigenforms, N <= 500", run: c8_bounds, long: false },
        Criterion { id: 9, name: "N=154 periods for D = 4, 11, 67, 163", run: c9_periods_154, long: false },
        Criterion { id: 10, name: "class map identities, N <= 300, D <= 100", run: c10_class_maps, long: false },
        Criterion { id: 11, name: "zero-free proportion at prime levels", run: c11_zero_free_prefix, long: false },
        Criterion { id: 12, name: "prime-level census N < 4000, degree 1 column", run: c12_table_stretch, long: true },
    ];

    let mut unexpected = 0;
    for c in &criteria {
        if !selected.is_empty() && !selected.contains(&c.id) {
            continue;
        }
        if c.long && !full {
            println!("criterion {:>2} SKIP  {} (pass --include-ignored to run)", c.id, c.name);
            continue;
        }
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(c.run)
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let known = KNOWN_RED.iter().find(|(id, _)| *id == c.id).map(|(_, why)| *why);
        let elapsed = t.elapsed();
        match (&outcome, known) {
            (Ok(detail), None) => {
                println!("criterion {:>2} PASS  {}: {detail} [{elapsed:.1?}]", c.id, c.name)
            }
            (Err(detail), Some(why)) => println!(
                "criterion {:>2} FAIL  {}: {detail} [{elapsed:.1?}] (known: {why})",
                c.id, c.name
            ),
            (Err(detail), None) => {
                unexpected += 1;
                println!("criterion {:>2} FAIL  {}: {detail} [{elapsed:.1?}]", c.id, c.name)
            }
            (Ok(detail), Some(_)) => {
                unexpected += 1;
                println!(
                    "criterion {:>2} PASS  {}: {detail} [{elapsed:.1?}] (listed as known red; update the list)",
                    c.id, c.name
                )
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected result(s)");
        ExitCode::FAILURE
    }
}
