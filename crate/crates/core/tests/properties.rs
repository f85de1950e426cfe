//! Randomized algebraic properties of the exact arithmetic layer.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use tracegap::exact::{parse_rational, Poly, Rational};
use tracegap::words::Word;

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-200i64..=200, 1i64..=60).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn arb_poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec((0u32..=12, arb_rational()), 0..=6)
        .prop_map(Poly::from_terms)
}

fn arb_word() -> impl Strategy<Value = Word> {
    proptest::collection::vec(prop_oneof![Just('A'), Just('B')], 1..=24).prop_map(|letters| {
        letters
            .into_iter()
            .collect::<String>()
            .parse()
            .expect("letters are valid")
    })
}

proptest! {
    #[test]
    fn ring_axioms_hold_exactly(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
    }

    #[test]
    fn eval_is_a_ring_homomorphism(p in arb_poly(), q in arb_poly(), x0 in arb_rational()) {
        prop_assert_eq!(
            (&p + &q).eval(&x0),
            p.eval(&x0) + q.eval(&x0)
        );
        prop_assert_eq!(
            (&p * &q).eval(&x0),
            p.eval(&x0) * q.eval(&x0)
        );
    }

    #[test]
    fn coefficients_stay_reduced(p in arb_poly(), q in arb_poly()) {
        for (_, c) in (&p * &q).terms() {
            let g = c.numer().abs().gcd(c.denom());
            prop_assert_eq!(g, BigInt::one());
            prop_assert!(c.denom() > &BigInt::zero());
            prop_assert!(!c.is_zero());
        }
    }

    #[test]
    fn poly_json_round_trips_bit_exactly(p in arb_poly()) {
        let json = serde_json::to_string(&p).unwrap();
        let back: Poly = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn valuation_of_a_shifted_nonzero_poly(p in arb_poly(), k in 0u32..=8) {
        prop_assume!(!p.is_zero());
        let (v, c) = p.valuation().unwrap();
        let shifted = p.shift(k);
        prop_assert_eq!(shifted.valuation().unwrap(), (v + k, c));
    }

    #[test]
    fn word_print_parse_round_trips(w in arb_word()) {
        let printed = w.to_string();
        let back: Word = printed.parse().unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn rational_strings_round_trip(r in arb_rational()) {
        let s = tracegap::exact::format_rational(&r);
        prop_assert_eq!(parse_rational(&s).unwrap(), r);
    }
}
