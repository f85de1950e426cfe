//! The characteristic-polynomial route to the ensemble average: the
//! pencil M = tA_x + sB_x, its elementary symmetric functions, power
//! sums tr(M^k) by the three-term Newton recurrence, and the binomial
//! coefficient-extraction lemma for monomials in u = t+s, v = t^2+s^2,
//! w = ts.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{binomial, rat_int, BiPoly, Poly, Rational};
use crate::family::{build_family, Mat3};
use crate::report::Check;

/// M = tA_x + sB_x as a 3x3 matrix of (t,s)-polynomials.
pub fn pencil() -> Mat3<BiPoly> {
    let (a, b) = build_family();
    let t = BiPoly::t();
    let s = BiPoly::s();
    Mat3::from_fn(|i, j| {
        let at = BiPoly::from_poly(a.entries[i][j].clone()) * t.clone();
        let bs = BiPoly::from_poly(b.entries[i][j].clone()) * s.clone();
        at + bs
    })
}

/// u = t + s.
pub fn sym_u() -> BiPoly {
    BiPoly::t() + BiPoly::s()
}

/// v = t^2 + s^2.
pub fn sym_v() -> BiPoly {
    BiPoly::monomial(2, 0, Poly::one()) + BiPoly::monomial(0, 2, Poly::one())
}

/// w = ts.
pub fn sym_w() -> BiPoly {
    BiPoly::monomial(1, 1, Poly::one())
}

/// Elementary symmetric functions of the pencil eigenvalues, together
/// with the four x-polynomials of their factored forms:
/// e1 = alpha u, e2 = delta v + beta w, e3 = gamma u w with
/// alpha = 2x+1, beta = 3x^2+2x+1, delta = 2x, gamma = x(x+1).
#[derive(Clone, Debug, PartialEq)]
pub struct CharPolyData {
    pub e1: BiPoly,
    pub e2: BiPoly,
    pub e3: BiPoly,
    pub alpha: Poly,
    pub beta: Poly,
    pub delta: Poly,
    pub gamma: Poly,
}

impl CharPolyData {
    /// The factored forms rebuilt from (alpha, beta, delta, gamma); equal
    /// to (e1, e2, e3) computed directly from the pencil.
    pub fn factored_e(&self) -> (BiPoly, BiPoly, BiPoly) {
        let e1 = sym_u().scale_poly(&self.alpha);
        let e2 = sym_v().scale_poly(&self.delta) + sym_w().scale_poly(&self.beta);
        let e3 = (sym_u() * sym_w()).scale_poly(&self.gamma);
        (e1, e2, e3)
    }
}

/// e1, e2, e3 computed directly from the pencil (trace, principal 2x2
/// minors, determinant), plus the factored-ingredient polynomials.
pub fn char_poly_data() -> CharPolyData {
    let (e1, e2, e3) = pencil().char_poly_elementary();
    CharPolyData {
        e1,
        e2,
        e3,
        alpha: Poly::from_terms([(0, rat_int(1)), (1, rat_int(2))]),
        beta: Poly::from_terms([(0, rat_int(1)), (1, rat_int(2)), (2, rat_int(3))]),
        delta: Poly::monomial(1, rat_int(2)),
        gamma: Poly::from_terms([(1, rat_int(1)), (2, rat_int(1))]),
    }
}

/// tr(M^k) as an exact (t,s)-polynomial via the Newton recurrence
/// a_k = e1 a_{k-1} - e2 a_{k-2} + e3 a_{k-3}, seeded with a_0 = 3,
/// a_1 = e1, a_2 = e1^2 - 2 e2.
pub fn power_sum_newton(k: u32) -> BiPoly {
    let data = char_poly_data();
    let a0 = BiPoly::from_poly(Poly::constant(rat_int(3)));
    let a1 = data.e1.clone();
    let a2 = &(&data.e1 * &data.e1) - &data.e2.scale(&rat_int(2));
    let mut window = [a0, a1, a2];
    match k {
        0 | 1 | 2 => window[k as usize].clone(),
        _ => {
            for _ in 3..=k {
                let next = &(&(&data.e1 * &window[2]) - &(&data.e2 * &window[1]))
                    + &(&data.e3 * &window[0]);
                window.rotate_left(1);
                window[2] = next;
            }
            window[2].clone()
        }
    }
}

/// [t^n s^m] u^a v^b w^c by the binomial formula
/// sum_j C(b, j) C(a, n - c - 2j), with out-of-range binomials zero.
/// Requires a + 2b + 2c = n + m.
pub fn coeff_extract_uvw(a: u32, b: u32, c: u32, n: u32, m: u32) -> Result<Rational> {
    let total = a + 2 * b + 2 * c;
    if total != n + m {
        return Err(Error::DegreeMismatch {
            total,
            expected: n + m,
        });
    }
    let mut acc = BigUint::zero();
    for j in 0..=b {
        let t_power = n as i64 - c as i64 - 2 * j as i64;
        if t_power < 0 || t_power > a as i64 {
            continue;
        }
        acc += binomial(b, j) * binomial(a, t_power as u32);
    }
    Ok(Rational::from_integer(acc.into()))
}

struct ExtractionIdentity {
    name: &'static str,
    u_pow: u32,
    mix_pow: u32,
    gw_pow: u32,
    /// Right-hand side as (coefficient, delta^i beta^j gamma^k) monomials.
    stated: &'static [(i64, u32, u32, u32)],
}

/// The fourteen [t^5 s^5] extraction identities for the monomials
/// u^a (delta v + beta w)^b (gamma w)^c occurring in the degree-10 power
/// sum. Each right-hand side is a fixed integer combination of
/// delta^i beta^j gamma^k.
const EXTRACTION_IDENTITIES: &[ExtractionIdentity] = &[
    ExtractionIdentity {
        name: "u^10",
        u_pow: 10,
        mix_pow: 0,
        gw_pow: 0,
        stated: &[(252, 0, 0, 0)],
    },
    ExtractionIdentity {
        name: "u^8 (dv+bw)",
        u_pow: 8,
        mix_pow: 1,
        gw_pow: 0,
        stated: &[(112, 1, 0, 0), (70, 0, 1, 0)],
    },
    ExtractionIdentity {
        name: "u^8 gw",
        u_pow: 8,
        mix_pow: 0,
        gw_pow: 1,
        stated: &[(70, 0, 0, 1)],
    },
    ExtractionIdentity {
        name: "u^6 (dv+bw)^2",
        u_pow: 6,
        mix_pow: 2,
        gw_pow: 0,
        stated: &[(52, 2, 0, 0), (60, 1, 1, 0), (20, 0, 2, 0)],
    },
    ExtractionIdentity {
        name: "u^6 (dv+bw) gw",
        u_pow: 6,
        mix_pow: 1,
        gw_pow: 1,
        stated: &[(30, 1, 0, 1), (20, 0, 1, 1)],
    },
    ExtractionIdentity {
        name: "u^4 (dv+bw)^3",
        u_pow: 4,
        mix_pow: 3,
        gw_pow: 0,
        stated: &[(24, 3, 0, 0), (42, 2, 1, 0), (24, 1, 2, 0), (6, 0, 3, 0)],
    },
    ExtractionIdentity {
        name: "u^6 (gw)^2",
        u_pow: 6,
        mix_pow: 0,
        gw_pow: 2,
        stated: &[(20, 0, 0, 2)],
    },
    ExtractionIdentity {
        name: "u^4 (dv+bw)^2 gw",
        u_pow: 4,
        mix_pow: 2,
        gw_pow: 1,
        stated: &[(14, 2, 0, 1), (16, 1, 1, 1), (6, 0, 2, 1)],
    },
    ExtractionIdentity {
        name: "u^2 (dv+bw)^4",
        u_pow: 2,
        mix_pow: 4,
        gw_pow: 0,
        stated: &[
            (12, 4, 0, 0),
            (24, 3, 1, 0),
            (24, 2, 2, 0),
            (8, 1, 3, 0),
            (2, 0, 4, 0),
        ],
    },
    ExtractionIdentity {
        name: "u^4 (dv+bw) (gw)^2",
        u_pow: 4,
        mix_pow: 1,
        gw_pow: 2,
        stated: &[(8, 1, 0, 2), (6, 0, 1, 2)],
    },
    ExtractionIdentity {
        name: "u^2 (dv+bw)^3 gw",
        u_pow: 2,
        mix_pow: 3,
        gw_pow: 1,
        stated: &[(6, 3, 0, 1), (12, 2, 1, 1), (6, 1, 2, 1), (2, 0, 3, 1)],
    },
    ExtractionIdentity {
        name: "u^4 (gw)^3",
        u_pow: 4,
        mix_pow: 0,
        gw_pow: 3,
        stated: &[(6, 0, 0, 3)],
    },
    ExtractionIdentity {
        name: "(dv+bw)^5",
        u_pow: 0,
        mix_pow: 5,
        gw_pow: 0,
        stated: &[(30, 4, 1, 0), (20, 2, 3, 0), (1, 0, 5, 0)],
    },
    ExtractionIdentity {
        name: "u^2 (dv+bw)^2 (gw)^2",
        u_pow: 2,
        mix_pow: 2,
        gw_pow: 2,
        stated: &[(4, 2, 0, 2), (4, 1, 1, 2), (2, 0, 2, 2)],
    },
];

/// Signed numeric coefficients of the degree-10 Newton identity, paired
/// with the matching extraction identity of each monomial and the power
/// of alpha it carries.
const NEWTON10_TERMS: &[(i64, u32, usize)] = &[
    // (numeric coefficient, power of alpha, extraction identity index)
    (1, 10, 0),    // e1^10
    (-10, 8, 1),   // e1^8 e2
    (10, 7, 2),    // e1^7 e3
    (35, 6, 3),    // e1^6 e2^2
    (-60, 5, 4),   // e1^5 e2 e3
    (-50, 4, 5),   // e1^4 e2^3
    (25, 4, 6),    // e1^4 e3^2
    (100, 3, 7),   // e1^3 e2^2 e3
    (25, 2, 8),    // e1^2 e2^4
    (-60, 2, 9),   // e1^2 e2 e3^2
    (-40, 1, 10),  // e1 e2^3 e3
    (10, 1, 11),   // e1 e3^3
    (-2, 0, 12),   // e2^5
    (15, 0, 13),   // e2^2 e3^2
];

fn monomials_to_poly(data: &CharPolyData, monomials: &[(i64, u32, u32, u32)]) -> Poly {
    let mut out = Poly::zero();
    for &(coeff, di, bj, gk) in monomials {
        let term = &(&data.delta.pow(di) * &data.beta.pow(bj)) * &data.gamma.pow(gk);
        out = &out + &term.scale(&rat_int(coeff));
    }
    out
}

/// Builds the monomial u^a (delta v + beta w)^b (gamma w)^c as a BiPoly.
fn monomial_bipoly(data: &CharPolyData, a: u32, b: u32, c: u32) -> BiPoly {
    let mix = sym_v().scale_poly(&data.delta) + sym_w().scale_poly(&data.beta);
    let gw = sym_w().scale_poly(&data.gamma);
    &(&sym_u().pow(a) * &mix.pow(b)) * &gw.pow(c)
}

/// [t^5 s^5] of the same monomial via the binomial extraction formula:
/// expand (delta v + beta w)^b binomially and extract each u^a v^i w^(b-i+c).
fn monomial_via_extraction(data: &CharPolyData, a: u32, b: u32, c: u32) -> Poly {
    let mut out = Poly::zero();
    for i in 0..=b {
        let count = coeff_extract_uvw(a, i, b - i + c, 5, 5)
            .expect("monomials of the degree-10 identity have total degree 10");
        let choose = Rational::from_integer(binomial(b, i).into());
        let term = &(&data.delta.pow(i) * &data.beta.pow(b - i)) * &data.gamma.pow(c);
        out = &out + &term.scale(&(count * choose));
    }
    out
}

/// The degree-10 power sum written out in the 14-term hardcoded form.
fn newton10_hardcoded(data: &CharPolyData) -> BiPoly {
    let mut acc = BiPoly::zero();
    // e1^10 - 10 e1^8 e2 + 10 e1^7 e3 + 35 e1^6 e2^2 - 60 e1^5 e2 e3
    // - 50 e1^4 e2^3 + 25 e1^4 e3^2 + 100 e1^3 e2^2 e3 + 25 e1^2 e2^4
    // - 60 e1^2 e2 e3^2 - 40 e1 e2^3 e3 + 10 e1 e3^3 - 2 e2^5 + 15 e2^2 e3^2
    let terms: &[(i64, u32, u32, u32)] = &[
        (1, 10, 0, 0),
        (-10, 8, 1, 0),
        (10, 7, 0, 1),
        (35, 6, 2, 0),
        (-60, 5, 1, 1),
        (-50, 4, 3, 0),
        (25, 4, 0, 2),
        (100, 3, 2, 1),
        (25, 2, 4, 0),
        (-60, 2, 1, 2),
        (-40, 1, 3, 1),
        (10, 1, 0, 3),
        (-2, 0, 5, 0),
        (15, 0, 2, 2),
    ];
    for &(coeff, p1, p2, p3) in terms {
        let term = &(&data.e1.pow(p1) * &data.e2.pow(p2)) * &data.e3.pow(p3);
        acc = &acc + &term.scale(&rat_int(coeff));
    }
    acc
}

/// The expected [t^5 s^5] coefficient of the degree-10 power sum:
/// 2x^4 (4881 x^6 + 5930 x^5 + 4875 x^4 + 3130 x^3 + 1675 x^2 + 1422 x + 5).
pub fn t5s5_closed_form() -> Poly {
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
        .map(|(d, c)| (d as u32 + 4, rat_int(2 * c))),
    )
}

/// Verifies the whole characteristic-polynomial route as exact identities:
/// the factored forms of e1, e2, e3; the 14-term hardcoded degree-10 power
/// sum against the recurrence; each extraction identity both by brute
/// expansion and by the binomial formula; and the fully assembled
/// [t^5 s^5] coefficient against its closed form.
pub fn verify_newton10_hardcoded() -> Vec<Check> {
    let data = char_poly_data();
    let mut checks = Vec::new();

    let (f1, f2, f3) = data.factored_e();
    checks.push(Check::exact("e1 = (2x+1)(t+s)", &f1, &data.e1));
    checks.push(Check::exact("e2 = 2x(t^2+s^2) + (3x^2+2x+1)ts", &f2, &data.e2));
    checks.push(Check::exact("e3 = x(x+1)ts(t+s)", &f3, &data.e3));

    let a10 = power_sum_newton(10);
    checks.push(Check::exact(
        "hardcoded degree-10 power sum = Newton recurrence",
        &newton10_hardcoded(&data),
        &a10,
    ));

    for identity in EXTRACTION_IDENTITIES {
        let stated = monomials_to_poly(&data, identity.stated);
        let brute = monomial_bipoly(&data, identity.u_pow, identity.mix_pow, identity.gw_pow)
            .coeff(5, 5);
        checks.push(Check::exact(
            format!("[t^5 s^5] {} (expansion)", identity.name),
            &stated,
            &brute,
        ));
        let formula =
            monomial_via_extraction(&data, identity.u_pow, identity.mix_pow, identity.gw_pow);
        checks.push(Check::exact(
            format!("[t^5 s^5] {} (binomial formula)", identity.name),
            &stated,
            &formula,
        ));
    }

    // The assembled coefficient expression: numeric Newton coefficients
    // times alpha powers times the stated extraction values.
    let mut assembled = Poly::zero();
    for &(coeff, alpha_pow, identity_idx) in NEWTON10_TERMS {
        let stated = monomials_to_poly(&data, EXTRACTION_IDENTITIES[identity_idx].stated);
        let term = &data.alpha.pow(alpha_pow) * &stated;
        assembled = &assembled + &term.scale(&rat_int(coeff));
    }
    let direct = a10.coeff(5, 5);
    checks.push(Check::exact(
        "assembled [t^5 s^5] coefficient = recurrence coefficient",
        &assembled,
        &direct,
    ));
    checks.push(Check::exact(
        "[t^5 s^5] degree-10 power sum closed form",
        &t5s5_closed_form(),
        &direct,
    ));

    checks
}
