use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Sparse univariate polynomial in `x` over the rationals.
///
/// Zero coefficients are never stored; the zero polynomial is the empty
/// map. Equality is structural, which is exact equality because every
/// coefficient is kept reduced.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<u32, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::monomial(0, c)
    }

    /// The variable x itself.
    pub fn x() -> Self {
        Poly::monomial(1, Rational::one())
    }

    pub fn monomial(degree: u32, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(degree, coeff);
        }
        Poly { terms }
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, Rational)>,
    {
        let mut p = Poly::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    fn add_term(&mut self, degree: u32, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(degree).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&degree);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of x^degree (zero when absent).
    pub fn coeff(&self, degree: u32) -> Rational {
        self.terms.get(&degree).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest degree with nonzero coefficient; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// Smallest degree with nonzero coefficient, together with that
    /// coefficient. Errors on the zero polynomial.
    pub fn valuation(&self) -> Result<(u32, Rational)> {
        self.terms
            .iter()
            .next()
            .map(|(d, c)| (*d, c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    /// Terms in ascending degree order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(d, v)| (*d, v * c)).collect(),
        }
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: u32) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(d, v)| (d + k, v.clone())).collect(),
        }
    }

    /// Exact value at a rational point.
    pub fn eval(&self, x0: &Rational) -> Rational {
        // Horner over the sparse terms, highest degree first.
        let mut acc = Rational::zero();
        let mut last_degree: Option<u32> = None;
        for (d, c) in self.terms.iter().rev() {
            if let Some(prev) = last_degree {
                acc *= x0.pow((prev - d) as i32);
            }
            acc += c;
            last_degree = Some(*d);
        }
        match last_degree {
            Some(d) => acc * x0.pow(d as i32),
            None => acc,
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_term(*d, c.clone());
        }
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_term(*d, -c.clone());
        }
        out
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.into_iter().map(|(d, c)| (d, -c)).collect(),
        }
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (da, ca) in &self.terms {
            for (db, cb) in &rhs.terms {
                out.add_term(da + db, ca * cb);
            }
        }
        out
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::one()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in &self.terms {
            let (sign, abs) = if c < &Rational::zero() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let coeff_str = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("({}/{})", abs.numer(), abs.denom())
            };
            match (*d, coeff_str.as_str()) {
                (0, s) => write!(f, "{s}")?,
                (1, "1") => write!(f, "x")?,
                (1, s) => write!(f, "{s}x")?,
                (_, "1") => write!(f, "x^{d}")?,
                (_, s) => write!(f, "{s}x^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

// JSON interface: {"var":"x","terms":[[degree,"num/den"],...]} with terms
// in ascending degree and rationals reduced. The BTreeMap makes the term
// order canonical, so serialize/deserialize round-trips bit-exactly.
impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<(u32, String)> = self
            .terms
            .iter()
            .map(|(d, c)| (*d, format_rational(c)))
            .collect();
        let mut st = serializer.serialize_struct("Poly", 2)?;
        st.serialize_field("var", "x")?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            var: String,
            terms: Vec<(u32, String)>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.var != "x" {
            return Err(de::Error::custom(format!(
                "expected polynomial variable \"x\", got {:?}",
                raw.var
            )));
        }
        let mut p = Poly::zero();
        for (d, c) in raw.terms {
            let c = parse_rational(&c).map_err(de::Error::custom)?;
            p.add_term(d, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, rat_int};

    fn p(terms: &[(u32, i64)]) -> Poly {
        Poly::from_terms(terms.iter().map(|&(d, c)| (d, rat_int(c))))
    }

    #[test]
    fn additive_identity() {
        let q = p(&[(1, 2), (2, 1)]);
        assert_eq!(&q + &Poly::zero(), q);
    }

    #[test]
    fn difference_of_squares() {
        let a = p(&[(0, 1), (1, 1)]);
        let b = p(&[(0, 1), (1, -1)]);
        assert_eq!(&a * &b, p(&[(0, 1), (2, -1)]));
    }

    #[test]
    fn scale_divides_every_coefficient() {
        let q = p(&[(5, 32), (10, 256)]);
        assert_eq!(q.scale(&rat(1, 32)), p(&[(5, 1), (10, 8)]));
    }

    #[test]
    fn eval_examples() {
        let q = p(&[(5, 32), (10, 256)]);
        assert_eq!(q.eval(&Rational::zero()), rat_int(0));
        assert_eq!(q.eval(&rat(1, 2)), rat(5, 4));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(
            p(&[(5, 32), (10, 256)]).valuation().unwrap(),
            (5, rat_int(32))
        );
        assert_eq!(
            p(&[(4, 1), (7, 3)]).valuation().unwrap(),
            (4, rat_int(1))
        );
        assert_eq!(p(&[(0, 7)]).valuation().unwrap(), (0, rat_int(7)));
        assert_eq!(Poly::zero().valuation(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn cancellation_removes_stored_terms() {
        let a = p(&[(3, 5), (1, 2)]);
        let b = p(&[(3, -5)]);
        let sum = &a + &b;
        assert_eq!(sum, p(&[(1, 2)]));
        assert_eq!(sum.terms().count(), 1);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[(1, 2), (2, 1)]).to_string(), "2x + x^2");
        assert_eq!(p(&[(0, -1), (4, 3)]).to_string(), "-1 + 3x^4");
        assert_eq!(
            Poly::monomial(4, rat(5, 126)).to_string(),
            "(5/126)x^4"
        );
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let q = Poly::from_terms([(4, rat(5, 126)), (5, rat_int(-3)), (10, rat_int(256))]);
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(
            json,
            r#"{"var":"x","terms":[[4,"5/126"],[5,"-3/1"],[10,"256/1"]]}"#
        );
        let back: Poly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn json_rejects_wrong_variable() {
        let bad = r#"{"var":"y","terms":[[1,"1/1"]]}"#;
        assert!(serde_json::from_str::<Poly>(bad).is_err());
    }
}
