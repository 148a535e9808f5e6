use num_rational::Ratio;
use proptest::prelude::*;

use quatzero::eigen::spectrum::{split_spectrum, EigenConfig, Spectrum};
use quatzero::exactalg::arith::{is_fundamental_discriminant, is_squarefree, omega, prime_divisors};
use quatzero::exactalg::iq_class_number;
use quatzero::periods::{
    check_period_identities, class_map_identities, embed, embeds, ideal_class_map,
    nonvanishing_verdict, period, ClassMapTable, IQField, PeriodConfig, PeriodValue, Verdict,
};
use quatzero::quatarith::classes::IdealClassSet;

const BUDGET: usize = 10_000_000;

fn valid(n: u64) -> bool {
    n >= 2 && is_squarefree(n) && omega(n) % 2 == 1
}

fn setup(n: u64, d: u64) -> (IdealClassSet, Spectrum, IQField, ClassMapTable) {
    let c = IdealClassSet::for_level(n).unwrap();
    let s = split_spectrum(&c, &EigenConfig::default()).unwrap();
    let k = IQField::new(d).unwrap();
    let e = embed(&k, &c, BUDGET).unwrap();
    let t = ideal_class_map(&e, &k, &c, &s.involutions).unwrap();
    (c, s, k, t)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn class_group_structure(d in 3u64..3000) {
        prop_assume!(is_fundamental_discriminant(-(d as i64)));
        let k = IQField::new(d).unwrap();
        let h = k.h();
        prop_assert_eq!(h as u64, iq_class_number(-(d as i64)).unwrap());
        for s in 0..h {
            prop_assert_eq!(k.mul[0][s], s);
            prop_assert_eq!(k.mul[s][k.inverse[s]], 0);
            for t in 0..h {
                prop_assert_eq!(k.mul[s][t], k.mul[t][s]);
                for u in 0..h {
                    prop_assert_eq!(k.mul[k.mul[s][t]][u], k.mul[s][k.mul[t][u]]);
                }
            }
        }
        let two_torsion = (0..h).filter(|&t| k.mul[t][t] == 0).count();
        prop_assert_eq!(two_torsion, 1 << (prime_divisors(d).len() - 1));
        let chars = k.characters();
        prop_assert_eq!(chars.len(), h);
        for chi in &chars {
            // Values of a character of order m are equidistributed over Z/m.
            let m = k.character_order(chi) as i64;
            for j in 0..m {
                let count = (0..h).filter(|&t| k.character_value(chi, t) == Ratio::new(j, m)).count();
                prop_assert_eq!(count as i64 * m, h as i64);
            }
            for s in 0..h {
                for t in 0..h {
                    let lhs = k.character_value(chi, k.mul[s][t]);
                    let rhs = k.character_value(chi, s) + k.character_value(chi, t);
                    prop_assert_eq!(lhs, rhs - rhs.floor());
                }
            }
        }
    }

    #[test]
    fn embeddings_are_integral(n in (2u64..200).prop_filter("valid", |&n| valid(n)), d in 3u64..60) {
        prop_assume!(is_fundamental_discriminant(-(d as i64)) && embeds(d, n));
        let c = IdealClassSet::for_level(n).unwrap();
        let k = IQField::new(d).unwrap();
        let e = embed(&k, &c, BUDGET).unwrap();
        if d % 4 == 0 {
            prop_assert_eq!((e.trace, e.norm), (0, d as i64 / 4));
        } else {
            prop_assert_eq!((e.trace, e.norm), (1, (1 + d as i64) / 4));
        }
        prop_assert!(e.scale > 0);
    }
}

/// Twisted class-map identities, period identities and verdicts on a small
/// grid. No pair may produce a defect or an undecided verdict.
#[test]
fn small_grid() {
    let cfg = PeriodConfig::default();
    let mut pairs = 0;
    for n in (2..=60u64).filter(|&n| valid(n)) {
        let c = IdealClassSet::for_level(n).unwrap();
        let s = split_spectrum(&c, &EigenConfig::default()).unwrap();
        for d in (3..=40u64).filter(|&d| is_fundamental_discriminant(-(d as i64)) && embeds(d, n)) {
            pairs += 1;
            let k = IQField::new(d).unwrap();
            let e = embed(&k, &c, BUDGET).unwrap();
            let t = ideal_class_map(&e, &k, &c, &s.involutions).unwrap();
            let ids = class_map_identities(&t, &k, &s.involutions).unwrap();
            assert!(ids.twisted_hold(), "N={n} D={d}: {ids:?}");
            for o in s.cusp_orbits() {
                assert!(check_period_identities(&o.form, &k, &t, &cfg).unwrap().is_empty());
                for chi in k.characters() {
                    let r = nonvanishing_verdict(&o.form, &k, &t, &chi, &cfg).unwrap();
                    assert_ne!(r.verdict, Verdict::Undecided, "N={n} D={d}");
                }
            }
        }
    }
    assert!(pairs > 50);
}

#[test]
fn untwisted_inversion_fails_at_11_23() {
    let (_, s, k, t) = setup(11, 23);
    let ids = class_map_identities(&t, &k, &s.involutions).unwrap();
    assert!(!ids.inverse_is_sigma_n);
    assert!(ids.twisted_inverse);
    assert!(!t.twists.is_empty());
}

#[test]
fn level_154_verdicts() {
    let cfg = PeriodConfig::default();
    for d in [4u64, 11, 67, 163] {
        let (_, s, k, t) = setup(154, d);
        assert_eq!(k.h(), 1);
        let chi = k.trivial_character();
        for o in s.cusp_orbits() {
            let r = nonvanishing_verdict(&o.form, &k, &t, &chi, &cfg).unwrap();
            let zero = period(&o.form, &k, &t, &chi, &cfg).unwrap().is_zero().unwrap();
            let expected = match (o.degree(), o.form.sign_pattern.to_string().as_str()) {
                (2, _) => Verdict::LNonzero,
                (_, "---") => Verdict::ForcedZero,
                // The vanishing cases are forced by the local sign at the
                // ramified prime, so they are trivial zeroes.
                (_, "+--") => match d {
                    4 => Verdict::LNonzero,
                    11 => Verdict::ForcedZero,
                    _ => r.verdict,
                },
                (_, "--+") => match d {
                    4 => Verdict::ForcedZero,
                    11 => Verdict::LNonzero,
                    _ => r.verdict,
                },
                _ => unreachable!(),
            };
            assert_eq!(r.verdict, expected, "D={d} {}", o.form.sign_pattern);
            assert_eq!(zero, r.verdict != Verdict::LNonzero);
        }
    }
}

#[test]
fn exact_zero_for_order_five_characters() {
    let cfg = PeriodConfig::default();
    let (_, s, k, t) = setup(23, 47);
    assert_eq!(k.h(), 5);
    let mut certified = 0;
    for o in s.cusp_orbits() {
        for chi in k.characters() {
            let p = period(&o.form, &k, &t, &chi, &cfg).unwrap();
            if let PeriodValue::ZeroAtEmbedding { .. } = p {
                certified += 1;
                let r = nonvanishing_verdict(&o.form, &k, &t, &chi, &cfg).unwrap();
                assert_eq!(r.verdict, Verdict::LZero);
            }
            assert!(p.is_zero().is_some());
        }
    }
    assert_eq!(certified, 2);
}

#[test]
fn non_fields_rejected() {
    assert!(IQField::new(12).is_err());
    assert!(IQField::new(1).is_err());
    assert!(!embeds(4, 5));
}
