//! The one-parameter matrix pair (A_x, B_x), its rank-one projection
//! normal form A_x = P + 2x U, B_x = 2x V + Q, the clustered-trace closed
//! form, and the commutator diagnostics.

mod mat3;

pub use mat3::Mat3;

use std::sync::OnceLock;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{pow2, rat, Poly, Rational};
use crate::report::Check;

/// The four rank-one projections of the normal form. Each has rational
/// entries, is symmetric and idempotent, and has trace 1. The defining
/// unit vectors contain 1/sqrt(2) and are never materialized; every trace
/// downstream is a product of these matrices, keeping all arithmetic
/// rational.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionSet {
    pub p: Mat3<Rational>,
    pub u: Mat3<Rational>,
    pub v: Mat3<Rational>,
    pub q: Mat3<Rational>,
}

impl ProjectionSet {
    /// Projections in the fixed order P, U, V, Q with their names.
    pub fn named(&self) -> [(&'static str, &Mat3<Rational>); 4] {
        [("P", &self.p), ("U", &self.u), ("V", &self.v), ("Q", &self.q)]
    }
}

/// A_x and B_x: symmetric positive semidefinite for x >= 0, with entries
/// linear in x.
pub fn build_family() -> (Mat3<Poly>, Mat3<Poly>) {
    let c = |n: i64| Poly::constant(rat(n, 1));
    let x = Poly::x();
    let nx = -Poly::x();
    let a = Mat3::new([
        [c(1), c(0), c(0)],
        [c(0), x.clone(), nx.clone()],
        [c(0), nx.clone(), x.clone()],
    ]);
    let b = Mat3::new([
        [x.clone(), nx.clone(), c(0)],
        [nx, x, c(0)],
        [c(0), c(0), c(1)],
    ]);
    (a, b)
}

/// P = diag(1,0,0), U and V the half-matrices onto (0,-1,1) and (1,-1,0),
/// Q = diag(0,0,1).
pub fn build_projections() -> ProjectionSet {
    let r = |n: i64, d: i64| rat(n, d);
    let z = || rat(0, 1);
    let p = Mat3::new([
        [r(1, 1), z(), z()],
        [z(), z(), z()],
        [z(), z(), z()],
    ]);
    let u = Mat3::new([
        [z(), z(), z()],
        [z(), r(1, 2), r(-1, 2)],
        [z(), r(-1, 2), r(1, 2)],
    ]);
    let v = Mat3::new([
        [r(1, 2), r(-1, 2), z()],
        [r(-1, 2), r(1, 2), z()],
        [z(), z(), z()],
    ]);
    let q = Mat3::new([
        [z(), z(), z()],
        [z(), z(), z()],
        [z(), z(), r(1, 1)],
    ]);
    ProjectionSet { p, u, v, q }
}

/// Shared read-only copies for the sweep-heavy callers.
pub(crate) fn family() -> &'static (Mat3<Poly>, Mat3<Poly>) {
    static FAMILY: OnceLock<(Mat3<Poly>, Mat3<Poly>)> = OnceLock::new();
    FAMILY.get_or_init(build_family)
}

pub(crate) fn projections() -> &'static ProjectionSet {
    static PROJ: OnceLock<ProjectionSet> = OnceLock::new();
    PROJ.get_or_init(build_projections)
}

pub fn const_to_poly(m: &Mat3<Rational>) -> Mat3<Poly> {
    m.map(|c| Poly::constant(c.clone()))
}

/// The nonzero pair traces of the projection set: tr(PV) = tr(UQ) = 1/2,
/// tr(UV) = 1/4; all other distinct pairs vanish.
pub fn overlap_table() -> [((&'static str, &'static str), Rational); 3] {
    [
        (("P", "V"), rat(1, 2)),
        (("U", "Q"), rat(1, 2)),
        (("U", "V"), rat(1, 4)),
    ]
}

/// Checks the decomposition A = P + 2xU, B = 2xV + Q, the projection
/// axioms, PQ = 0, and the full pair-trace table, all as exact identities.
pub fn verify_normal_form() -> Vec<Check> {
    let (a, b) = build_family();
    let set = build_projections();
    let two_x = Poly::monomial(1, rat(2, 1));

    let mut checks = Vec::new();

    let p_plus = &const_to_poly(&set.p) + &const_to_poly(&set.u).scale(&two_x);
    checks.push(Check::exact("A = P + 2xU", &p_plus, &a));
    let q_plus = &const_to_poly(&set.v).scale(&two_x) + &const_to_poly(&set.q);
    checks.push(Check::exact("B = 2xV + Q", &q_plus, &b));

    for (name, r) in set.named() {
        checks.push(Check::exact(format!("{name}^2 = {name}"), &(r * r), r));
        checks.push(Check::exact(format!("{name} symmetric"), &r.transpose(), r));
        checks.push(Check::exact(format!("tr({name}) = 1"), &Rational::one(), &r.trace()));
    }

    checks.push(Check::named(
        "PQ = 0",
        "zero matrix",
        format!("{}", &set.p * &set.q),
        (&set.p * &set.q).is_zero(),
    ));

    // All 6 distinct unordered pairs: three vanish, three match the table.
    let nonzero = overlap_table();
    let named = set.named();
    for i in 0..4 {
        for j in (i + 1)..4 {
            let (ni, mi) = named[i];
            let (nj, mj) = named[j];
            let expected = nonzero
                .iter()
                .find(|((a, b), _)| (*a, *b) == (ni, nj) || (*a, *b) == (nj, ni))
                .map(|(_, v)| v.clone())
                .unwrap_or_else(|| rat(0, 1));
            checks.push(Check::exact(
                format!("tr({ni}{nj})"),
                &expected,
                &(mi * mj).trace(),
            ));
        }
    }
    checks
}

/// tr(A_x^n B_x^m) = 2^(m-1) x^m + 2^(n-1) x^n + 2^(n+m-2) x^(n+m).
pub fn clustered_trace_closed(n: u32, m: u32) -> Result<Poly> {
    if n < 1 || m < 1 {
        return Err(Error::InvalidExponent { n, m });
    }
    Ok(Poly::from_terms([
        (m, pow2(m - 1)),
        (n, pow2(n - 1)),
        (n + m, pow2(n + m - 2)),
    ]))
}

/// [A, B] = AB - BA.
pub fn commutator() -> Mat3<Poly> {
    let (a, b) = build_family();
    &(&a * &b) - &(&b * &a)
}

/// Squared Frobenius norm of the commutator: the exact polynomial
/// 4x^2(1-x)^2 + 2x^4 = 4x^2 - 8x^3 + 6x^4.
pub fn commutator_frobenius_sq() -> Poly {
    let c = commutator();
    let mut sum = Poly::zero();
    for row in &c.entries {
        for e in row {
            sum = &sum + &(e * e);
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;
    use crate::report::all_pass;

    #[test]
    fn family_traces_and_boundary() {
        let (a, b) = build_family();
        assert_eq!(a.trace(), Poly::from_terms([(0, rat_int(1)), (1, rat_int(2))]));
        assert_eq!(a, a.transpose());
        assert_eq!(b, b.transpose());

        // At x = 0 the pair degenerates to (P, Q).
        let set = build_projections();
        let at_zero = |m: &Mat3<Poly>| m.map(|p| p.eval(&rat_int(0)));
        assert_eq!(at_zero(&a), set.p);
        assert_eq!(at_zero(&b), set.q);
    }

    #[test]
    fn projections_are_rank_one_with_stated_overlaps() {
        let set = build_projections();
        assert_eq!(&set.p * &set.p, set.p);
        assert_eq!(set.p.trace(), rat_int(1));
        assert_eq!((&set.p * &set.v).trace(), rat(1, 2));
        assert_eq!((&set.u * &set.v).trace(), rat(1, 4));
        assert!((&set.p * &set.q).is_zero());
    }

    #[test]
    fn normal_form_report_is_all_green() {
        let checks = verify_normal_form();
        assert!(all_pass(&checks), "failing checks: {:#?}", checks);
        assert_eq!(checks.len(), 2 + 12 + 1 + 6);
    }

    #[test]
    fn clustered_closed_form_examples() {
        assert_eq!(
            clustered_trace_closed(5, 5).unwrap(),
            Poly::from_terms([(5, rat_int(32)), (10, rat_int(256))])
        );
        assert_eq!(
            clustered_trace_closed(1, 1).unwrap(),
            Poly::from_terms([(1, rat_int(2)), (2, rat_int(1))])
        );
        assert_eq!(
            clustered_trace_closed(2, 3).unwrap(),
            Poly::from_terms([(3, rat_int(4)), (2, rat_int(2)), (5, rat_int(8))])
        );
        assert_eq!(
            clustered_trace_closed(0, 1),
            Err(Error::InvalidExponent { n: 0, m: 1 })
        );
    }

    #[test]
    fn closed_form_matches_direct_products_up_to_8() {
        let (a, b) = build_family();
        for n in 1..=8u32 {
            let an = a.pow(n);
            for m in 1..=8u32 {
                let direct = (&an * &b.pow(m)).trace();
                assert_eq!(direct, clustered_trace_closed(n, m).unwrap(), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn power_identities_hold_up_to_10() {
        // A^n = P + (2x)^n U and B^m = (2x)^m V + Q.
        let (a, b) = build_family();
        let set = build_projections();
        for k in 1..=10u32 {
            let eps_k = Poly::monomial(k, pow2(k));
            let a_expect = &const_to_poly(&set.p) + &const_to_poly(&set.u).scale(&eps_k);
            let b_expect = &const_to_poly(&set.v).scale(&eps_k) + &const_to_poly(&set.q);
            assert_eq!(a.pow(k), a_expect, "A^{k}");
            assert_eq!(b.pow(k), b_expect, "B^{k}");
        }
    }

    #[test]
    fn eigenvalues_via_characteristic_polynomial() {
        // char poly of both A and B is lambda(lambda - 1)(lambda - 2x):
        // e1 = 1 + 2x, e2 = 2x, e3 = 0.
        let (a, b) = build_family();
        let expect_e1 = Poly::from_terms([(0, rat_int(1)), (1, rat_int(2))]);
        let expect_e2 = Poly::monomial(1, rat_int(2));
        for m in [&a, &b] {
            let (e1, e2, e3) = m.char_poly_elementary();
            assert_eq!(e1, expect_e1);
            assert_eq!(e2, expect_e2);
            assert!(e3.is_zero());
        }
    }

    #[test]
    fn positive_semidefinite_at_sample_points() {
        let (a, b) = build_family();
        let samples = [rat_int(0), rat(1, 1000), rat(1, 2), rat_int(1), rat_int(3)];
        for m in [&a, &b] {
            let minors: Vec<Poly> = (0..3)
                .map(|i| m.entries[i][i].clone())
                .chain((0..3).map(|k| m.principal_minor2(k)))
                .chain(std::iter::once(m.det()))
                .collect();
            for x0 in &samples {
                for minor in &minors {
                    assert!(minor.eval(x0) >= rat_int(0), "minor {minor} at {x0}");
                }
            }
        }
    }

    #[test]
    fn commutator_matches_entrywise_display() {
        // [A,B] = [[0, x(x-1), -x^2], [x(1-x), 0, x(x-1)], [x^2, x(1-x), 0]]
        let c = commutator();
        let x2_minus_x = Poly::from_terms([(2, rat_int(1)), (1, rat_int(-1))]);
        let x_minus_x2 = -x2_minus_x.clone();
        let x_sq = Poly::monomial(2, rat_int(1));
        let z = Poly::zero();
        let expect = Mat3::new([
            [z.clone(), x2_minus_x.clone(), -x_sq.clone()],
            [x_minus_x2.clone(), z.clone(), x2_minus_x],
            [x_sq, x_minus_x2, z],
        ]);
        assert_eq!(c, expect);

        let at_zero = c.map(|p| p.eval(&rat_int(0)));
        assert!(at_zero.is_zero());
    }

    #[test]
    fn commutator_frobenius_norm_squared() {
        assert_eq!(
            commutator_frobenius_sq(),
            Poly::from_terms([(2, rat_int(4)), (3, rat_int(-8)), (4, rat_int(6))])
        );
    }
}
