use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::Rational;

/// Polynomial in the formal variables `t` and `s` whose coefficients are
/// `Poly` values in `x`. Keys are `(degree_t, degree_s)`; zero coefficient
/// polynomials are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Poly>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::monomial(0, 0, Poly::one())
    }

    /// The variable t.
    pub fn t() -> Self {
        BiPoly::monomial(1, 0, Poly::one())
    }

    /// The variable s.
    pub fn s() -> Self {
        BiPoly::monomial(0, 1, Poly::one())
    }

    /// A Poly in x embedded as the (t^0 s^0) coefficient.
    pub fn from_poly(p: Poly) -> Self {
        BiPoly::monomial(0, 0, p)
    }

    pub fn monomial(dt: u32, ds: u32, coeff: Poly) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((dt, ds), coeff);
        }
        BiPoly { terms }
    }

    fn add_term(&mut self, key: (u32, u32), coeff: &Poly) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Poly::zero);
        *entry = &*entry + coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of t^n s^m; the zero Poly when absent.
    pub fn coeff(&self, n: u32, m: u32) -> Poly {
        self.terms.get(&(n, m)).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Poly)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    /// Multiply every coefficient by a Poly in x.
    pub fn scale_poly(&self, c: &Poly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, &(v * c));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> BiPoly {
        self.scale_poly(&Poly::constant(c.clone()))
    }

    pub fn pow(&self, k: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, v);
        }
        out
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: BiPoly) -> BiPoly {
        &self + &rhs
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, &(-v.clone()));
        }
        out
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: BiPoly) -> BiPoly {
        &self - &rhs
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect(),
        }
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for ((ta, sa), ca) in &self.terms {
            for ((tb, sb), cb) in &rhs.terms {
                out.add_term((ta + tb, sa + sb), &(ca * cb));
            }
        }
        out
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

impl Zero for BiPoly {
    fn zero() -> Self {
        BiPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl One for BiPoly {
    fn one() -> Self {
        BiPoly::one()
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((dt, ds), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if *dt == 1 {
                write!(f, "t")?;
            } else if *dt > 1 {
                write!(f, "t^{dt}")?;
            }
            if *ds == 1 {
                write!(f, "s")?;
            } else if *ds > 1 {
                write!(f, "s^{ds}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{binomial, rat_int};
    use num_bigint::BigInt;

    #[test]
    fn binomial_coefficients_of_t_plus_s() {
        let u = &BiPoly::t() + &BiPoly::s();
        let p10 = u.pow(10);
        assert_eq!(p10.coeff(5, 5), Poly::constant(rat_int(252)));
        assert_eq!(u.coeff(1, 0), Poly::one());
        let sq = &BiPoly::t() * &BiPoly::s();
        assert!(sq.pow(2).coeff(3, 0).is_zero());
    }

    #[test]
    fn pascal_rows_up_to_20() {
        let u = &BiPoly::t() + &BiPoly::s();
        for k in 0u32..=20 {
            let uk = u.pow(k);
            for i in 0..=k {
                let expect = Rational::from_integer(BigInt::from(binomial(k, i)));
                assert_eq!(uk.coeff(i, k - i), Poly::constant(expect), "k={k} i={i}");
            }
        }
    }

    #[test]
    fn multiplication_commutes_with_poly_coefficients() {
        let a = BiPoly::monomial(1, 0, Poly::x()) + BiPoly::monomial(0, 1, Poly::one());
        let b = BiPoly::monomial(1, 1, Poly::from_terms([(0, rat_int(2)), (3, rat_int(5))]));
        assert_eq!(&a * &b, &b * &a);
    }
}
