use num_rational::Ratio;
use proptest::prelude::*;

use quatzero::census::{CacheDocument, LevelCache};
use quatzero::eigen::spectrum::{split_spectrum, EigenConfig, Spectrum};
use quatzero::exactalg::arith::{is_squarefree, omega, prime_divisors, primes_between};
use quatzero::exactalg::matrix::charpoly_int;
use quatzero::quatarith::algebra::{build_algebra, hilbert_symbol};
use quatzero::quatarith::brandt::{brandt_by_neighbors, brandt_matrices, hecke_matrices};
use quatzero::quatarith::classes::{ideal_classes, mass, IdealClassSet};

fn valid(n: u64) -> bool {
    n >= 2 && is_squarefree(n) && omega(n) % 2 == 1
}

fn level_strategy(hi: u64) -> impl Strategy<Value = u64> {
    (2..hi).prop_filter("squarefree with an odd number of primes", |&n| valid(n))
}

fn orbit_signature(s: &Spectrum) -> Vec<(String, usize, String, usize)> {
    let mut v: Vec<_> = s
        .orbits
        .iter()
        .map(|o| {
            (
                o.form.sign_pattern.to_string(),
                o.degree(),
                format!("{:?}", o.defining_factor),
                o.zero_set.len(),
            )
        })
        .collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn algebra_ramification(n in level_strategy(2000)) {
        let b = build_algebra(n).unwrap();
        prop_assert!(b.a < 0 && b.b < 0);
        prop_assert_eq!(b.discriminant(), n);
        for p in primes_between(2, 60) {
            let ramified = hilbert_symbol(b.a, b.b, p) == -1;
            prop_assert_eq!(ramified, n % p == 0);
        }
    }

    #[test]
    fn mass_and_brandt_invariants(n in level_strategy(160)) {
        let c = IdealClassSet::for_level(n).unwrap();
        prop_assert_eq!(c.mass_sum(), mass(n));
        let expected: Ratio<i64> = prime_divisors(n).iter().map(|&p| Ratio::from_integer(p as i64 - 1)).product::<Ratio<i64>>() / 12;
        prop_assert_eq!(mass(n), expected);
        let h = c.h();
        let ps = primes_between(2, 20);
        let ts = hecke_matrices(&c, &ps).unwrap();
        let w = &c.weights;
        for t in &ts {
            let m = &t.entries;
            for i in 0..h {
                for j in 0..h {
                    prop_assert_eq!(w[j] as i64 * m[i][j], w[i] as i64 * m[j][i]);
                }
            }
            if n % t.n == 0 {
                let s = t.as_permutation().expect("permutation");
                prop_assert!((0..h).all(|i| s[s[i]] == i));
            } else {
                prop_assert!(m.iter().all(|r| r.iter().sum::<i64>() == t.n as i64 + 1));
            }
        }
        for a in &ts {
            for b in &ts {
                let ab: Vec<Vec<i64>> = (0..h).map(|i| (0..h).map(|j| (0..h).map(|k| a.entries[i][k] * b.entries[k][j]).sum()).collect()).collect();
                let ba: Vec<Vec<i64>> = (0..h).map(|i| (0..h).map(|j| (0..h).map(|k| b.entries[i][k] * a.entries[k][j]).sum()).collect()).collect();
                prop_assert_eq!(ab, ba);
            }
        }
        let t1 = &brandt_matrices(&c, &[1]).unwrap()[0];
        prop_assert_eq!(t1.trace(), h as i64);
    }

    #[test]
    fn neighbor_route_matches_counts(n in level_strategy(120)) {
        let c = IdealClassSet::for_level(n).unwrap();
        for p in primes_between(2, 8).into_iter().filter(|p| n % p != 0) {
            prop_assert_eq!(brandt_by_neighbors(&c, p).unwrap(), brandt_matrices(&c, &[p]).unwrap().remove(0));
        }
    }

    #[test]
    fn two_sided_route_matches_counts(n in level_strategy(300)) {
        let c = IdealClassSet::for_level(n).unwrap();
        let ps = prime_divisors(n);
        let counted = brandt_matrices(&c, &ps).unwrap();
        for (p, t) in ps.iter().zip(&counted) {
            prop_assert_eq!(t.as_permutation().unwrap(), c.involution_two_sided(*p).unwrap());
        }
    }
}

#[test]
fn class_numbers_small_levels() {
    // h = 1 exactly at N = 2, 3, 5, 7, 13 among primes.
    for p in primes_between(2, 40) {
        let h = IdealClassSet::for_level(p).unwrap().h();
        assert_eq!(h == 1, [2, 3, 5, 7, 13].contains(&p), "N={p}");
    }
    assert_eq!(IdealClassSet::for_level(11).unwrap().h(), 2);
    assert_eq!(IdealClassSet::for_level(37).unwrap().h(), 3);
}

#[test]
fn level_precondition() {
    assert!(IdealClassSet::for_level(6).is_err());
    assert!(IdealClassSet::for_level(12).is_err());
}

#[test]
fn other_left_orders_give_the_same_spectrum() {
    let mut tried = 0;
    for n in (2..400u64).filter(|&n| valid(n)) {
        let c = IdealClassSet::for_level(n).unwrap();
        if c.left_order_types.len() < 2 {
            continue;
        }
        tried += 1;
        let base = split_spectrum(&c, &EigenConfig::default()).unwrap();
        let j = c.left_order_types[1][0];
        let o2 = c.order.left_order(&c.representatives[j]).unwrap();
        let c2 = ideal_classes(o2).unwrap();
        assert_eq!(c2.h(), c.h());
        let mut w1 = c.weights.clone();
        let mut w2 = c2.weights.clone();
        w1.sort_unstable();
        w2.sort_unstable();
        assert_eq!(w1, w2, "N={n}");
        for p in primes_between(2, 14) {
            let t1 = brandt_matrices(&c, &[p]).unwrap().remove(0);
            let t2 = brandt_matrices(&c2, &[p]).unwrap().remove(0);
            assert_eq!(charpoly_int(&t1.entries), charpoly_int(&t2.entries), "N={n}, p={p}");
        }
        let other = split_spectrum(&c2, &EigenConfig::default()).unwrap();
        assert_eq!(orbit_signature(&base), orbit_signature(&other), "N={n}");
        if tried == 6 {
            break;
        }
    }
    assert!(tried >= 3);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = LevelCache::new(dir.path());
    let c = IdealClassSet::for_level(154).unwrap();
    let ts = hecke_matrices(&c, &[2, 3, 7, 11]).unwrap();
    cache.store(&CacheDocument::new(c.clone(), ts.clone(), None)).unwrap();
    let doc = cache.load(154).unwrap().expect("stored document");
    assert_eq!(doc.brandt, ts);
    assert_eq!(doc.classes.representatives, c.representatives);
    assert_eq!(doc.classes.weights, c.weights);
    assert_eq!(
        serde_json::to_string(&doc.classes).unwrap(),
        serde_json::to_string(&c).unwrap()
    );
    // The reloaded order still computes the same matrices.
    assert_eq!(hecke_matrices(&doc.classes, &[2, 3, 7, 11]).unwrap(), ts);
    assert_eq!(cache.levels().unwrap(), vec![154]);
    assert!(cache.load(30).unwrap().is_none());
    std::fs::write(cache.path(30), "{not json").unwrap();
    assert!(cache.load(30).unwrap().is_none());
    assert_eq!(cache.clear().unwrap(), 2);
    assert!(cache.levels().unwrap().is_empty());
}

#[test]
fn prime_level_class_numbers() {
    // h = (p - 1)/12 + (1 - (-4|p))/4 + (1 - (-3|p))/3.
    for p in primes_between(5, 200) {
        let h = IdealClassSet::for_level(p).unwrap().h() as i64;
        let p = p as i64;
        let e2 = if p % 4 == 3 { 2 } else { 0 };
        let e3 = if p % 3 == 2 { 2 } else { 0 };
        let expected = Ratio::new(p - 1, 12) + Ratio::new(e2, 4) + Ratio::new(e3, 3);
        assert_eq!(Ratio::from_integer(h), expected, "N={p}");
    }
}
