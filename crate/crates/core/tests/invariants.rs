//! Cross-module invariant sweeps that are exhaustive over small word
//! classes rather than randomized.

use num_traits::Zero;
use rayon::prelude::*;

use tracegap::asymptotics::kappa_brute;
use tracegap::average::{p_newton, p_word_sum, pencil, power_sum_newton};
use tracegap::exact::{binomial, rat, Poly, Rational};
use tracegap::family::Mat3;
use tracegap::words::{enumerate_words, unrank, word_count, word_trace};
use tracegap::BiPoly;

#[test]
fn enumeration_counts_match_binomials_up_to_16() {
    for len in 1..=16u32 {
        for n in 0..=len {
            let m = len - n;
            let expected = binomial(len, n);
            assert_eq!(
                num_bigint::BigUint::from(word_count(n, m)),
                expected,
                "count ({n},{m})"
            );
            if len <= 12 {
                let words: Vec<_> = enumerate_words(n, m).collect();
                assert_eq!(words.len() as u64, word_count(n, m));
                assert!(words.windows(2).all(|p| p[0] < p[1]), "lex order ({n},{m})");
            }
        }
    }
}

#[test]
fn trace_invariances_up_to_10() {
    for len in 2..=10u32 {
        for n in 1..len {
            let m = len - n;
            (0..word_count(n, m)).into_par_iter().for_each(|r| {
                let w = unrank(n, m, r);
                let t = word_trace(&w);
                for k in 1..w.len() {
                    assert_eq!(t, word_trace(&w.rotate_left(k)), "rotation {k} of {w}");
                }
                assert_eq!(t, word_trace(&w.reversed()), "reversal of {w}");
                assert_eq!(t, word_trace(&w.swapped_letters()), "letter swap of {w}");
            });
        }
    }
}

#[test]
fn kappa_is_rotation_invariant_up_to_10() {
    for len in 2..=10u32 {
        for n in 1..len {
            let m = len - n;
            (0..word_count(n, m)).into_par_iter().for_each(|r| {
                let w = unrank(n, m, r);
                let kappa = kappa_brute(&w).unwrap().kappa;
                for k in 1..w.len() {
                    let rotated = kappa_brute(&w.rotate_left(k)).unwrap().kappa;
                    assert_eq!(kappa, rotated, "rotation {k} of {w}");
                }
            });
        }
    }
}

#[test]
fn ensemble_routes_agree_up_to_12() {
    for len in 2..=12u32 {
        for n in 1..len {
            let m = len - n;
            let by_sum = p_word_sum(n, m).unwrap();
            let by_newton = p_newton(n, m).unwrap();
            assert_eq!(by_sum.p_poly, by_newton.p_poly, "({n},{m})");
            assert_eq!(by_sum.word_count, by_newton.word_count);
            assert!(
                by_sum.p_poly.terms().all(|(_, c)| c > &Rational::zero()),
                "({n},{m}) has a nonpositive coefficient"
            );
        }
    }
}

#[test]
fn averaged_leading_term_for_large_exponents() {
    // For n, m >= 5 the average has valuation 4 with low coefficient
    // (n+m) / binomial(n+m, n).
    for (n, m) in [(5u32, 5u32), (5, 6), (6, 6), (5, 7)] {
        let p = p_newton(n, m).unwrap().p_poly;
        let (valuation, low) = p.valuation().unwrap();
        assert_eq!(valuation, 4, "({n},{m})");
        let expected = Rational::from_integer((n + m).into())
            / Rational::from_integer(binomial(n + m, n).into());
        assert_eq!(low, expected, "({n},{m})");
    }
}

#[test]
fn power_sums_match_matrix_powers_up_to_12() {
    let m = pencil();
    let mut mk = Mat3::<BiPoly>::identity();
    for k in 0..=12u32 {
        assert_eq!(power_sum_newton(k), mk.trace(), "k={k}");
        mk = &mk * &m;
    }
}

#[test]
fn clustered_trace_is_symmetric_in_the_exponents() {
    use tracegap::family::clustered_trace_closed;
    for n in 1..=8u32 {
        for m in 1..=8u32 {
            assert_eq!(
                clustered_trace_closed(n, m).unwrap(),
                clustered_trace_closed(m, n).unwrap()
            );
        }
    }
}

#[test]
fn ensemble_average_of_singleton_class() {
    // (1,1): both words are cyclic shifts of each other, so the average
    // equals either trace.
    let p = p_word_sum(1, 1).unwrap().p_poly;
    assert_eq!(p, word_trace(&"AB".parse().unwrap()));
    assert_eq!(p, Poly::from_terms([(1, rat(2, 1)), (2, rat(1, 1))]));
}
