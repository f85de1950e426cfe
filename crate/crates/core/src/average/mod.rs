//! Ensemble averages over all words of a given letter content, by two
//! independent routes (explicit word sum and the characteristic-polynomial
//! recurrence), the clustered-vs-average gap, exact sign scans with
//! bisection brackets, and the leading behavior of the ratio.

mod newton;

pub use newton::{
    char_poly_data, coeff_extract_uvw, pencil, power_sum_newton, sym_u, sym_v, sym_w,
    t5s5_closed_form, verify_newton10_hardcoded, CharPolyData,
};

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{binomial, pow2, rat, sign, Poly, Rational};
use crate::family::clustered_trace_closed;
use crate::words::{unrank, word_count, word_trace};

/// Default cap on n+m for the explicit word-sum route (binomial growth).
pub const DEFAULT_WORD_SUM_LEN_CAP: u32 = 20;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AverageMethod {
    WordSum,
    Newton,
}

impl std::fmt::Display for AverageMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            AverageMethod::WordSum => "word_sum",
            AverageMethod::Newton => "newton",
        };
        write!(f, "{s}")
    }
}

/// The exact ensemble average p_{n,m}(A_x, B_x) with its provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleResult {
    pub n: u32,
    pub m: u32,
    pub method: AverageMethod,
    /// binomial(n+m, n), the number of words averaged.
    pub word_count: u128,
    pub p_poly: Poly,
}

impl Serialize for EnsembleResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("EnsembleResult", 5)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("method", &self.method)?;
        st.serialize_field("word_count", &self.word_count)?;
        st.serialize_field("p", &self.p_poly)?;
        st.end()
    }
}

fn check_exponents(n: u32, m: u32) -> Result<()> {
    if n < 1 || m < 1 {
        return Err(Error::InvalidExponent { n, m });
    }
    Ok(())
}

fn big_word_count(n: u32, m: u32) -> Result<u128> {
    let count: BigUint = binomial(n + m, n);
    u128::try_from(&count).map_err(|_| Error::ComplexityGuard {
        what: "word count",
        limit: u64::MAX,
        actual: u64::MAX,
    })
}

/// p_{n,m} as the normalized sum of word traces over the whole class,
/// partitioned by lexicographic rank ranges. The reduction is exact
/// rational addition, so the result is independent of the partitioning.
pub fn p_word_sum(n: u32, m: u32) -> Result<EnsembleResult> {
    p_word_sum_capped(n, m, DEFAULT_WORD_SUM_LEN_CAP)
}

pub fn p_word_sum_capped(n: u32, m: u32, max_len: u32) -> Result<EnsembleResult> {
    check_exponents(n, m)?;
    let len = n + m;
    if len > max_len.min(64) {
        return Err(Error::ComplexityGuard {
            what: "word length in ensemble sum",
            limit: max_len.min(64) as u64,
            actual: len as u64,
        });
    }
    let count = word_count(n, m);
    let sum: Poly = (0..count)
        .into_par_iter()
        .map(|r| word_trace(&unrank(n, m, r)))
        .reduce(Poly::zero, |a, b| &a + &b);
    let normalizer = Rational::new(1.into(), BigUint::from(count).into());
    Ok(EnsembleResult {
        n,
        m,
        method: AverageMethod::WordSum,
        word_count: count as u128,
        p_poly: sum.scale(&normalizer),
    })
}

/// p_{n,m} via coefficient extraction from tr((tA + sB)^(n+m)):
/// the [t^n s^m] coefficient of the degree-(n+m) power sum divided by
/// binomial(n+m, n). No word is ever enumerated on this route.
pub fn p_newton(n: u32, m: u32) -> Result<EnsembleResult> {
    check_exponents(n, m)?;
    let coeff = power_sum_newton(n + m).coeff(n, m);
    let count = binomial(n + m, n);
    let normalizer = Rational::new(1.into(), count.clone().into());
    Ok(EnsembleResult {
        n,
        m,
        method: AverageMethod::Newton,
        word_count: big_word_count(n, m)?,
        p_poly: coeff.scale(&normalizer),
    })
}

/// Both routes to p_{n,m}; errors if they disagree (they cannot, short of
/// an implementation bug).
fn p_both(n: u32, m: u32, max_len: u32) -> Result<EnsembleResult> {
    let by_sum = p_word_sum_capped(n, m, max_len)?;
    let by_newton = p_newton(n, m)?;
    if by_sum.p_poly != by_newton.p_poly {
        return Err(Error::RouteDisagreement {
            what: format!("p_{{{n},{m}}} (word sum vs characteristic polynomial)"),
        });
    }
    Ok(by_sum)
}

/// The clustered-minus-average gap tr(A^n B^m) - p_{n,m}, with the average
/// computed by both routes and cross-checked.
pub fn gap(n: u32, m: u32) -> Result<Poly> {
    gap_capped(n, m, DEFAULT_WORD_SUM_LEN_CAP)
}

pub fn gap_capped(n: u32, m: u32, max_len: u32) -> Result<Poly> {
    let clustered = clustered_trace_closed(n, m)?;
    let average = p_both(n, m, max_len)?;
    Ok(&clustered - &average.p_poly)
}

/// Exact sign of the gap at one grid point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanPoint {
    #[serde(serialize_with = "crate::exact::serialize_rational")]
    pub x: Rational,
    pub sign: i8,
}

/// A strict sign change bracketed by exact bisection: the gap has the
/// stated nonzero signs at lo and hi, and hi - lo <= 10^-9.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignChangeBracket {
    #[serde(serialize_with = "crate::exact::serialize_rational")]
    pub lo: Rational,
    #[serde(serialize_with = "crate::exact::serialize_rational")]
    pub hi: Rational,
    pub sign_lo: i8,
    pub sign_hi: i8,
}

#[derive(Clone, Debug, Serialize)]
pub struct GapScan {
    pub n: u32,
    pub m: u32,
    pub points: Vec<ScanPoint>,
    pub brackets: Vec<SignChangeBracket>,
}

/// Evaluates the exact sign of the gap on an inclusive uniform grid and
/// brackets every strict sign change to a rational interval of width at
/// most 10^-9 by bisection. All arithmetic is exact.
pub fn gap_sign_scan(
    n: u32,
    m: u32,
    x_lo: &Rational,
    x_hi: &Rational,
    steps: u32,
) -> Result<GapScan> {
    gap_sign_scan_capped(n, m, x_lo, x_hi, steps, DEFAULT_WORD_SUM_LEN_CAP)
}

pub fn gap_sign_scan_capped(
    n: u32,
    m: u32,
    x_lo: &Rational,
    x_hi: &Rational,
    steps: u32,
    max_len: u32,
) -> Result<GapScan> {
    if x_lo < &Rational::zero() || x_lo >= x_hi {
        return Err(Error::InvalidInterval {
            msg: format!("need 0 <= x_lo < x_hi, got [{x_lo}, {x_hi}]"),
        });
    }
    if steps < 1 {
        return Err(Error::InvalidInterval {
            msg: "need at least one step".to_string(),
        });
    }
    let g = gap_capped(n, m, max_len)?;
    let step = (x_hi - x_lo) / Rational::from_integer(steps.into());
    let points: Vec<ScanPoint> = (0..=steps)
        .map(|i| {
            let x = x_lo + &step * Rational::from_integer(i.into());
            let sign = sign(&g.eval(&x));
            ScanPoint { x, sign }
        })
        .collect();

    let tolerance = rat(1, 1_000_000_000);
    let mut brackets = Vec::new();
    for pair in points.windows(2) {
        if pair[0].sign * pair[1].sign == -1 {
            brackets.push(bisect(&g, &pair[0], &pair[1], &tolerance));
        }
    }
    Ok(GapScan {
        n,
        m,
        points,
        brackets,
    })
}

fn bisect(g: &Poly, lo: &ScanPoint, hi: &ScanPoint, tolerance: &Rational) -> SignChangeBracket {
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    let half = rat(1, 2);
    while &hi.x - &lo.x > *tolerance {
        let mid = (&lo.x + &hi.x) * &half;
        let s = sign(&g.eval(&mid));
        if s == 0 {
            // Exact root: shrink to a tolerance-width bracket around it.
            let radius = tolerance * &half;
            let lo_x = &mid - &radius;
            let hi_x = &mid + &radius;
            return SignChangeBracket {
                sign_lo: sign(&g.eval(&lo_x)),
                sign_hi: sign(&g.eval(&hi_x)),
                lo: lo_x,
                hi: hi_x,
            };
        }
        if s == lo.sign {
            lo = ScanPoint { x: mid, sign: s };
        } else {
            hi = ScanPoint { x: mid, sign: s };
        }
    }
    SignChangeBracket {
        lo: lo.x,
        hi: hi.x,
        sign_lo: lo.sign,
        sign_hi: hi.sign,
    }
}

/// The exact closed form of p_{5,5}:
/// (x^4/126)(5 + 1422x + 1675x^2 + 3130x^3 + 4875x^4 + 5930x^5 + 4881x^6).
pub fn p55_closed_form() -> Poly {
    Poly::from_terms(
        [
            (0i64, 5i64),
            (1, 1422),
            (2, 1675),
            (3, 3130),
            (4, 4875),
            (5, 5930),
            (6, 4881),
        ]
        .into_iter()
        .map(|(d, c)| (d as u32 + 4, rat(c, 126))),
    )
}

/// The exact closed form of the (5,5) gap:
/// (5x^4/126)(5475x^6 - 1186x^5 - 975x^4 - 626x^3 - 335x^2 + 522x - 1).
pub fn gap55_closed_form() -> Poly {
    Poly::from_terms(
        [
            (0i64, -1i64),
            (1, 522),
            (2, -335),
            (3, -626),
            (4, -975),
            (5, -1186),
            (6, 5475),
        ]
        .into_iter()
        .map(|(d, c)| (d as u32 + 4, rat(5 * c, 126))),
    )
}

/// Checks the headline counterexample facts at (5,5) as exact identities:
/// both ensemble routes give the closed-form average, the gap matches its
/// closed form, and the gap is strictly negative at x = 1/1000 (the
/// average exceeds the clustered trace there).
pub fn verify_counterexample_5_5() -> Result<Vec<crate::report::Check>> {
    use crate::report::Check;
    let mut checks = Vec::new();
    let frozen_p = p55_closed_form();
    checks.push(Check::exact(
        "p_{5,5} closed form (word sum)",
        &frozen_p,
        &p_word_sum(5, 5)?.p_poly,
    ));
    checks.push(Check::exact(
        "p_{5,5} closed form (characteristic polynomial)",
        &frozen_p,
        &p_newton(5, 5)?.p_poly,
    ));
    let g = gap(5, 5)?;
    checks.push(Check::exact(
        "gap(5,5) closed form",
        &gap55_closed_form(),
        &g,
    ));
    checks.push(Check::exact(
        "sign of gap(5,5) at x = 1/1000",
        &-1i8,
        &sign(&g.eval(&rat(1, 1000))),
    ));
    Ok(checks)
}

/// Leading behavior of p_{n,m} / tr(A^n B^m) as x -> 0+, read off the
/// exact valuations and low coefficients of numerator and denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioLeading {
    pub exponent: i64,
    pub coefficient: Rational,
}

impl Serialize for RatioLeading {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("RatioLeading", 2)?;
        st.serialize_field("exponent", &self.exponent)?;
        st.serialize_field("coefficient", &crate::exact::format_rational(&self.coefficient))?;
        st.end()
    }
}

/// Requires n, m >= 5. The result is cross-checked against the closed
/// formula (n+m) / (d * binomial(n+m, n)) * x^(4 - l) with l = min(n, m)
/// and d = 2^(l-1) for n != m, 2^l for n = m.
pub fn ratio_leading(n: u32, m: u32) -> Result<RatioLeading> {
    if n < 5 || m < 5 {
        return Err(Error::RangeError { n, m, min: 5 });
    }
    let numer = p_newton(n, m)?.p_poly;
    let denom = clustered_trace_closed(n, m)?;
    let (val_n, low_n) = numer.valuation().expect("ensemble average is nonzero");
    let (val_d, low_d) = denom.valuation().expect("clustered trace is nonzero");
    let computed = RatioLeading {
        exponent: val_n as i64 - val_d as i64,
        coefficient: low_n / low_d,
    };

    let level = n.min(m);
    let d = if n == m { pow2(level) } else { pow2(level - 1) };
    let count = Rational::from_integer(binomial(n + m, n).into());
    let formula = RatioLeading {
        exponent: 4 - level as i64,
        coefficient: Rational::from_integer((n + m).into()) / (d * count),
    };
    if computed != formula {
        return Err(Error::RouteDisagreement {
            what: format!("ratio leading term at ({n},{m})"),
        });
    }
    Ok(computed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    /// The exact p_{5,5}: (x^4/126)(5 + 1422x + 1675x^2 + 3130x^3
    /// + 4875x^4 + 5930x^5 + 4881x^6).
    fn frozen_p55() -> Poly {
        Poly::from_terms(
            [
                (0i64, 5i64),
                (1, 1422),
                (2, 1675),
                (3, 3130),
                (4, 4875),
                (5, 5930),
                (6, 4881),
            ]
            .into_iter()
            .map(|(d, c)| (d as u32 + 4, rat(c, 126))),
        )
    }

    /// The exact gap at (5,5): (5x^4/126)(5475x^6 - 1186x^5 - 975x^4
    /// - 626x^3 - 335x^2 + 522x - 1).
    fn frozen_gap55() -> Poly {
        Poly::from_terms(
            [
                (0i64, -1i64),
                (1, 522),
                (2, -335),
                (3, -626),
                (4, -975),
                (5, -1186),
                (6, 5475),
            ]
            .into_iter()
            .map(|(d, c)| (d as u32 + 4, rat(5 * c, 126))),
        )
    }

    #[test]
    fn word_sum_small_cases() {
        let r = p_word_sum(1, 1).unwrap();
        assert_eq!(r.word_count, 2);
        assert_eq!(
            r.p_poly,
            Poly::from_terms([(1, rat_int(2)), (2, rat_int(1))])
        );
        assert!(matches!(
            p_word_sum(0, 1),
            Err(Error::InvalidExponent { .. })
        ));
        assert!(matches!(
            p_word_sum_capped(6, 6, 10),
            Err(Error::ComplexityGuard { .. })
        ));
    }

    #[test]
    fn word_sum_5_5_matches_closed_form() {
        let r = p_word_sum(5, 5).unwrap();
        assert_eq!(r.word_count, 252);
        assert_eq!(r.p_poly, frozen_p55());
        assert_eq!(r.p_poly.valuation().unwrap(), (4, rat(5, 126)));
    }

    #[test]
    fn newton_route_matches_word_sum() {
        for (n, m) in [(1u32, 1u32), (2, 2), (5, 5), (3, 4)] {
            let by_newton = p_newton(n, m).unwrap();
            let by_sum = p_word_sum(n, m).unwrap();
            assert_eq!(by_newton.p_poly, by_sum.p_poly, "({n},{m})");
            assert_eq!(by_newton.word_count, by_sum.word_count);
        }
    }

    #[test]
    fn averages_are_symmetric_and_nonnegative() {
        for (n, m) in [(1u32, 2u32), (2, 5), (3, 4), (5, 6)] {
            let a = p_newton(n, m).unwrap().p_poly;
            let b = p_newton(m, n).unwrap().p_poly;
            assert_eq!(a, b);
            for (_, c) in a.terms() {
                assert!(c > &Rational::zero());
            }
        }
    }

    #[test]
    fn gap_examples() {
        assert!(gap(1, 1).unwrap().is_zero());
        let g = gap(5, 5).unwrap();
        assert_eq!(g, frozen_gap55());
        assert_eq!(sign(&g.eval(&rat(1, 1000))), -1);
        assert_eq!(sign(&g.eval(&Rational::zero())), 0);
    }

    #[test]
    fn scan_brackets_the_sign_change_below_one_hundredth() {
        let scan = gap_sign_scan(5, 5, &Rational::zero(), &rat(1, 10), 100).unwrap();
        assert_eq!(scan.points.len(), 101);
        assert_eq!(scan.points[0].sign, 0);
        assert_eq!(scan.points[1].sign, -1);
        assert_eq!(scan.points.last().unwrap().sign, 1);
        assert_eq!(scan.brackets.len(), 1);
        let bracket = &scan.brackets[0];
        assert_eq!((bracket.sign_lo, bracket.sign_hi), (-1, 1));
        assert!(&bracket.hi - &bracket.lo <= rat(1, 1_000_000_000));
        assert!(bracket.hi < rat(1, 100));
    }

    #[test]
    fn scan_validates_interval() {
        assert!(matches!(
            gap_sign_scan(5, 5, &rat(1, 10), &rat(1, 10), 5),
            Err(Error::InvalidInterval { .. })
        ));
        assert!(matches!(
            gap_sign_scan(5, 5, &rat(-1, 10), &rat(1, 10), 5),
            Err(Error::InvalidInterval { .. })
        ));
        assert!(matches!(
            gap_sign_scan(5, 5, &Rational::zero(), &rat(1, 10), 0),
            Err(Error::InvalidInterval { .. })
        ));
    }

    #[test]
    fn ratio_examples() {
        let r = ratio_leading(5, 5).unwrap();
        assert_eq!(r.exponent, -1);
        assert_eq!(r.coefficient, rat(5, 4032));

        let r = ratio_leading(5, 6).unwrap();
        assert_eq!(r.exponent, -1);
        assert_eq!(r.coefficient, rat(1, 672));

        let r = ratio_leading(6, 6).unwrap();
        assert_eq!(r.exponent, -2);

        assert!(matches!(
            ratio_leading(4, 6),
            Err(Error::RangeError { .. })
        ));
    }

    #[test]
    fn counterexample_checks_are_green() {
        let checks = verify_counterexample_5_5().unwrap();
        assert_eq!(checks.len(), 4);
        assert!(crate::report::all_pass(&checks), "{checks:#?}");
    }

    #[test]
    fn ensemble_json_shape() {
        let r = p_newton(1, 1).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"n":1,"m":1,"method":"newton","word_count":2,"p":{"var":"x","terms":[[1,"2/1"],[2,"1/1"]]}}"#
        );
    }
}
