use dstirling::rational::{int, ratio};
use dstirling::{falling_lambda, log_coeff, Poly, Rational, Series};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(p, q)| ratio(p, q))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |q| !q.is_zero())
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), 0..6).prop_map(Poly::from_coeffs)
}

fn series(order: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(poly(), order).prop_map(|c| Series::new(c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &Poly::one(), a.clone());
        prop_assert!((&a * &Poly::zero()).is_zero());
    }

    #[test]
    fn results_are_canonical(a in poly(), b in poly()) {
        for p in [&a + &b, &a - &b, &a * &b, a.scale(&Rational::zero())] {
            prop_assert!(p.coeffs().last().is_none_or(|c| !c.is_zero()));
        }
    }

    #[test]
    fn eval_is_a_homomorphism(a in poly(), b in poly(), v in rational()) {
        prop_assert_eq!((&a + &b).eval(&v), a.eval(&v) + b.eval(&v));
        prop_assert_eq!((&a - &b).eval(&v), a.eval(&v) - b.eval(&v));
        prop_assert_eq!((&a * &b).eval(&v), a.eval(&v) * b.eval(&v));
    }

    #[test]
    fn poly_json_round_trip(a in poly()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: Poly = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        prop_assert_eq!(Poly::from_field(&a.to_field()).unwrap(), a);
    }

    #[test]
    fn falling_factorial_telescopes(x in rational(), n in 0usize..10) {
        let step = Poly::linear(x.clone(), int(-(n as i64)));
        prop_assert_eq!(falling_lambda(&x, n + 1), &falling_lambda(&x, n) * &step);
        prop_assert_eq!(falling_lambda(&x, n).eval(&Rational::zero()), num_traits::pow(x, n));
    }

    #[test]
    fn log_coeff_matches_product_form(n in 1usize..10, lam in nonzero_rational()) {
        // λ^{n−1}·∏_{i<n}(1 − i/λ)
        let literal = num_traits::pow(lam.clone(), n - 1)
            * (0..n)
                .map(|i| Rational::one() - int(i as i64) / &lam)
                .product::<Rational>();
        prop_assert_eq!(log_coeff(n).unwrap().eval(&lam), literal);
    }

    #[test]
    fn degenerate_exponentials_multiply(x in rational(), y in rational()) {
        let m = 7;
        let lhs = Series::e_lambda(&x, m).unwrap().try_mul(&Series::e_lambda(&y, m).unwrap()).unwrap();
        prop_assert_eq!(lhs, Series::e_lambda(&(x + y), m).unwrap());
    }

    #[test]
    fn exp_of_negation_is_inverse(a in series(6)) {
        let mut a = a;
        a.set_coeff(0, Poly::zero()).unwrap();
        let prod = a.exp().unwrap().try_mul(&a.neg().exp().unwrap()).unwrap();
        prop_assert_eq!(prod, Series::one(6).unwrap());
    }

    #[test]
    fn series_json_round_trip(a in series(4)) {
        let text = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Series>(&text).unwrap(), a);
    }

    #[test]
    fn power_by_squaring_matches_repeated_product(a in series(5), k in 0usize..6) {
        let mut naive = Series::one(5).unwrap();
        for _ in 0..k {
            naive = naive.try_mul(&a).unwrap();
        }
        prop_assert_eq!(a.pow(k), naive);
    }
}

#[test]
fn inverse_pair_to_order_ten() {
    for m in 1..=10 {
        let e_minus_one = Series::e_lambda(&int(1), m)
            .unwrap()
            .try_sub(&Series::one(m).unwrap())
            .unwrap();
        let log = Series::log_lambda(m).unwrap();
        let t = Series::t(m).unwrap();
        assert_eq!(
            log.compose(&e_minus_one).unwrap(),
            t,
            "log∘(e−1), order {m}"
        );
        assert_eq!(
            e_minus_one.compose(&log).unwrap(),
            t,
            "(e−1)∘log, order {m}"
        );
    }
}

#[test]
fn classical_limits_of_the_series() {
    let zero = Rational::zero();
    let mut fact = Rational::one();
    let e = Series::e_lambda(&int(1), 9).unwrap().eval_lambda(&zero);
    let l = Series::log_lambda(9).unwrap().eval_lambda(&zero);
    for n in 0..9 {
        if n > 0 {
            fact *= int(n as i64);
        }
        assert_eq!(e[n], fact.recip());
        if n > 0 {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            assert_eq!(l[n], ratio(sign, n as i64));
        }
    }
}
