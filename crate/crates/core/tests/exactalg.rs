use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use quatzero::exactalg::arith::{is_fundamental_discriminant, is_prime, kronecker};
use quatzero::exactalg::forms::{reduced_forms, Form};
use quatzero::exactalg::matrix::{charpoly_faddeev, charpoly_int, mat_mul_i64};
use quatzero::exactalg::modp::pow_mod;
use quatzero::exactalg::{factor_int_poly, iq_class_number, IntPoly, NFElem, NumberField, RatMatrix};

fn poly_strategy() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, 2..=4), 1..=3).prop_map(|fs| {
        // Products of small monic factors, so repeated and reducible
        // inputs are common.
        fs.into_iter().fold(IntPoly::one(), |acc, mut c| {
            *c.last_mut().unwrap() = 1;
            &acc * &IntPoly::from_i64s(&c)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn factors_multiply_back(f in poly_strategy()) {
        let fac = factor_int_poly(&f).unwrap();
        let prod = fac.iter().fold(IntPoly::one(), |acc, (g, m)| {
            (0..*m).fold(acc, |a, _| &a * g)
        });
        prop_assert_eq!(prod, f);
        for (g, _) in &fac {
            prop_assert!(g.is_squarefree());
            prop_assert!(g.is_monic());
        }
    }

    #[test]
    fn kronecker_is_multiplicative(a in -200i64..200, m in 1i64..200, n in 1i64..200) {
        prop_assert_eq!(kronecker(a, m * n), kronecker(a, m) * kronecker(a, n));
    }

    #[test]
    fn kronecker_matches_euler(a in -500i64..500, p in 3u64..400) {
        prop_assume!(is_prime(p));
        let r = pow_mod(a.rem_euclid(p as i64) as u64, (p - 1) / 2, p);
        let euler = if r == 0 { 0 } else if r == 1 { 1 } else { -1 };
        prop_assert_eq!(kronecker(a, p as i64), euler);
    }

    #[test]
    fn class_number_matches_dirichlet(d in 3i64..4000) {
        let disc = -d;
        prop_assume!(is_fundamental_discriminant(disc));
        // h = w / (2|D|) * (-sum_{a < |D|} a (D|a)).
        let s: i64 = (1..d).map(|a| a * kronecker(disc, a) as i64).sum();
        let w = match d { 3 => 6, 4 => 4, _ => 2 };
        prop_assert_eq!(-s * w % (2 * d), 0);
        prop_assert_eq!(iq_class_number(disc).unwrap() as i64, -s * w / (2 * d));
    }

    #[test]
    fn reduction_preserves_class(d in 3i64..3000, a in 1i64..60, k in -60i64..60) {
        let disc = -d;
        prop_assume!(disc.rem_euclid(4) <= 1);
        // A form (a, b, c) with b = b0 + 2ak for some b0 with b0^2 = disc mod 4a.
        let b0 = (0..2 * a).find(|b| (b * b - disc) % (4 * a) == 0);
        prop_assume!(b0.is_some());
        let b = b0.unwrap() + 2 * a * k;
        let c = (b * b - disc) / (4 * a);
        let f = Form::new(a, b, c);
        prop_assume!(f.is_primitive());
        let r = f.reduce();
        prop_assert!(r.is_reduced());
        prop_assert_eq!(r.disc(), disc);
        prop_assert!(reduced_forms(disc).unwrap().contains(&r));
        // The composition with its inverse is the identity class.
        prop_assert_eq!(f.compose(&f.inverse()).reduce(), Form::identity(disc));
    }

    #[test]
    fn kernel_vectors_are_annihilated(rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 5), 1..=4)) {
        let m = RatMatrix::from_i64(&rows).unwrap();
        let ker = m.kernel();
        prop_assert_eq!(ker.len() + m.rank(), 5);
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn charpoly_routes_agree(a in prop::collection::vec(prop::collection::vec(-6i64..=6, 5), 5)) {
        let f = charpoly_int(&a);
        prop_assert_eq!(&f, &charpoly_faddeev(&a));
        // Cayley-Hamilton.
        let n = a.len();
        let mut acc = vec![vec![0i64; n]; n];
        let mut pow: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        for c in f.coeffs() {
            let c: i64 = c.try_into().unwrap();
            for i in 0..n {
                for j in 0..n {
                    acc[i][j] += c * pow[i][j];
                }
            }
            pow = mat_mul_i64(&pow, &a);
        }
        prop_assert!(acc.iter().flatten().all(|&x| x == 0));
    }

    #[test]
    fn number_field_inverse(c in prop::collection::vec(-9i64..=9, 3)) {
        // x^3 - x - 1 is irreducible.
        let k = NumberField::new(IntPoly::from_i64s(&[-1, -1, 0, 1])).unwrap();
        let x = NFElem::from_ints(&k, &c.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>());
        prop_assume!(!x.is_zero());
        let y = x.inverse().unwrap();
        prop_assert!(x.mul(&y).is_one());
    }
}

#[test]
fn reduced_forms_oracle_small() {
    // Reduced forms of discriminant -56 listed by hand.
    let forms = reduced_forms(-56).unwrap();
    assert_eq!(forms, vec![Form::new(1, 0, 14), Form::new(2, 0, 7), Form::new(3, -2, 5), Form::new(3, 2, 5)]);
}

#[test]
fn factor_known_cases() {
    // x^4 + 4 = (x^2 - 2x + 2)(x^2 + 2x + 2).
    let f = IntPoly::from_i64s(&[4, 0, 0, 0, 1]);
    let fac = factor_int_poly(&f).unwrap();
    assert_eq!(fac.len(), 2);
    // Swinnerton-Dyer style: x^4 - 10x^2 + 1 is irreducible though reducible mod every prime.
    let g = IntPoly::from_i64s(&[1, 0, -10, 0, 1]);
    assert_eq!(factor_int_poly(&g).unwrap(), vec![(g.clone(), 1)]);
    let h = &(&g * &g) * &IntPoly::from_i64s(&[-1, 1]);
    let fh = factor_int_poly(&h).unwrap();
    assert_eq!(fh, vec![(IntPoly::from_i64s(&[-1, 1]), 1), (g, 2)]);
}

#[test]
fn determinant_of_unimodular() {
    let m = RatMatrix::from_i64(&[vec![2, 1], vec![1, 1]]).unwrap();
    assert!(m.det().unwrap().is_one());
    let z = RatMatrix::from_i64(&[vec![2, 4], vec![1, 2]]).unwrap();
    assert_eq!(z.det().unwrap(), BigRational::zero());
}

#[test]
fn class_numbers_below_ten_thousand() {
    for d in 3i64..10_000 {
        let disc = -d;
        if !is_fundamental_discriminant(disc) {
            continue;
        }
        let s: i64 = (1..d).map(|a| a * kronecker(disc, a) as i64).sum();
        let w = match d {
            3 => 6,
            4 => 4,
            _ => 2,
        };
        assert_eq!(iq_class_number(disc).unwrap() as i64, -s * w / (2 * d), "disc {disc}");
    }
}
