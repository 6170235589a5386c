//! `x^n + y^n + (-x-y)^n = xy(x+y) Π_{α ∈ F_q ∖ {0,-1}} (x - αy)^2` for
//! `n = 2q - 1`, in split form over `F_q` and grouped by Frobenius orbits
//! over `F_p`, plus the one-variable steps behind it.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

use super::poly::{uni, BivariatePoly};

pub const MAX_Q: u64 = 343;

/// `(p, f)` with `q = p^f`, for odd prime powers `q ≤ 343`.
pub fn prime_power(q: u64) -> Result<(u32, u32)> {
    if q > MAX_Q {
        return Err(Error::InvalidArgument(format!("q={q} exceeds {MAX_Q}")));
    }
    let factors = factorize(q);
    match factors.as_slice() {
        [(p, f)] if *p != 2 && is_prime(*p) => Ok((*p as u32, *f)),
        [(2, _)] => Err(Error::EvenCharacteristic),
        _ => Err(Error::InvalidArgument(format!("q={q} is not an odd prime power"))),
    }
}

fn fields(q: u64) -> Result<(u32, u32, Arc<Field>)> {
    let (p, f) = prime_power(q)?;
    Ok((p, f, Arc::new(Field::new(p as u64, f)?)))
}

/// `x^n + y^n + (-x-y)^n`.
pub fn identity_lhs(field: &Arc<Field>, n: u32) -> BivariatePoly {
    let x = BivariatePoly::x(field);
    let y = BivariatePoly::y(field);
    let z = x.add(&y).neg();
    x.pow(n).add(&y.pow(n)).add(&z.pow(n))
}

/// `xy(x+y)`.
fn axes(field: &Arc<Field>) -> BivariatePoly {
    let x = BivariatePoly::x(field);
    let y = BivariatePoly::y(field);
    x.mul(&y).mul(&x.add(&y))
}

/// `F_q ∖ {0, -1}` in element-index order.
pub fn interior_points(field: &Field) -> Vec<FieldElement> {
    let minus_one = field.minus_one();
    field
        .elements()
        .filter(|&a| !a.is_zero() && a != minus_one)
        .collect()
}

/// `Π_{α ∈ F_q ∖ {0,-1}} (x - αy)`.
pub fn split_product(field: &Arc<Field>) -> BivariatePoly {
    interior_points(field)
        .into_iter()
        .fold(BivariatePoly::constant(field, field.one()), |acc, a| {
            acc.mul(&BivariatePoly::linear(field, a))
        })
}

fn mismatch(q: u64, left: &BivariatePoly, right: &BivariatePoly) -> Error {
    match left.first_difference(right) {
        Some(((i, j), a, b)) => Error::IdentityMismatch {
            q,
            i,
            j,
            left: left.field().index(a),
            right: right.field().index(b),
        },
        None => Error::CheckFailed(format!("identity mismatch for q={q}")),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub q: u64,
    pub p: u32,
    pub f: u32,
    pub n: u32,
    pub form: &'static str,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    pub homogeneous: bool,
    pub passed: bool,
}

pub fn verify_identity_split(q: u64) -> Result<IdentityReport> {
    let (p, f, field) = fields(q)?;
    let n = (2 * q - 1) as u32;
    let lhs = identity_lhs(&field, n);
    let prod = split_product(&field);
    let rhs = axes(&field).mul(&prod.mul(&prod));
    if lhs != rhs {
        return Err(mismatch(q, &lhs, &rhs));
    }
    Ok(IdentityReport {
        q,
        p,
        f,
        n,
        form: "split",
        lhs_terms: lhs.num_terms(),
        rhs_terms: rhs.num_terms(),
        homogeneous: lhs.is_homogeneous(n) && rhs.is_homogeneous(n),
        passed: true,
    })
}

/// One element of `P_f`: the homogenized minimal polynomial of a Frobenius
/// orbit in `F_q ∖ {0,-1}`.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitFactor {
    pub degree: u32,
    /// Coefficients of `h(u, 1)` over `F_p`, lowest degree first.
    pub coefficients: Vec<u32>,
    pub irreducible: bool,
    #[serde(skip)]
    pub poly: BivariatePoly,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupedIdentityReport {
    pub q: u64,
    pub p: u32,
    pub f: u32,
    pub n: u32,
    pub factors: Vec<OrbitFactor>,
    pub p_f_size: usize,
    /// Monic irreducibles over `F_p` of degree dividing `f`, minus `x` and
    /// `x + 1`, counted by the necklace formula.
    pub expected_p_f_size: u64,
    pub degree_sum: u32,
    pub all_irreducible: bool,
    pub product_descends: bool,
    pub product_matches_split: bool,
    pub passed: bool,
}

/// Number of monic irreducible polynomials of degree `d` over `F_p`.
pub fn irreducible_count(p: u64, d: u32) -> u64 {
    let mut total: i64 = 0;
    for e in 1..=d {
        if d % e != 0 {
            continue;
        }
        let mu = mobius(e as u64);
        total += mu * (p as i64).pow(d / e);
    }
    (total / d as i64) as u64
}

fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Frobenius orbits of `F_q ∖ {0,-1}`, each sorted by element index, listed
/// by their smallest member.
pub fn frobenius_orbits(field: &Field) -> Vec<Vec<FieldElement>> {
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for a in interior_points(field) {
        if seen.contains(&field.index(a)) {
            continue;
        }
        let mut orbit = vec![a];
        let mut b = field.frobenius(a, 1);
        while b != a {
            orbit.push(b);
            b = field.frobenius(b, 1);
        }
        orbit.sort_by_key(|&e| field.index(e));
        for &e in &orbit {
            seen.insert(field.index(e));
        }
        orbits.push(orbit);
    }
    orbits
}

pub fn verify_identity_grouped(q: u64) -> Result<GroupedIdentityReport> {
    let (p, f, field) = fields(q)?;
    let prime = Arc::new(Field::new(p as u64, 1)?);
    let n = (2 * q - 1) as u32;

    let mut factors = Vec::new();
    let mut product_descends = true;
    let mut grouped_product = BivariatePoly::constant(&field, field.one());
    for orbit in frobenius_orbits(&field) {
        let h = orbit
            .iter()
            .fold(BivariatePoly::constant(&field, field.one()), |acc, &a| {
                acc.mul(&BivariatePoly::linear(&field, a))
            });
        grouped_product = grouped_product.mul(&h);
        let Some(h_p) = h.descend(&prime) else {
            product_descends = false;
            continue;
        };
        let univariate = h_p.dehomogenize();
        factors.push(OrbitFactor {
            degree: orbit.len() as u32,
            coefficients: univariate.iter().map(|&c| prime.index(c) as u32).collect(),
            irreducible: uni::is_irreducible_over_prime(&prime, &univariate),
            poly: h_p,
        });
    }
    let split = split_product(&field);
    let product_matches_split = grouped_product == split;
    product_descends &= split.has_prime_coefficients();

    let expected_p_f_size = (1..=f)
        .filter(|d| f % d == 0)
        .map(|d| irreducible_count(p as u64, d))
        .sum::<u64>()
        - 2;

    let lhs = identity_lhs(&prime, n);
    let prod = factors
        .iter()
        .fold(BivariatePoly::constant(&prime, prime.one()), |acc, h| {
            acc.mul(&h.poly).mul(&h.poly)
        });
    let rhs = axes(&prime).mul(&prod);
    if lhs != rhs {
        return Err(mismatch(q, &lhs, &rhs));
    }

    let all_irreducible = factors.iter().all(|h| h.irreducible);
    let degree_sum = factors.iter().map(|h| h.degree).sum();
    let passed = all_irreducible
        && product_descends
        && product_matches_split
        && factors.len() as u64 == expected_p_f_size
        && degree_sum as u64 == q - 2;
    Ok(GroupedIdentityReport {
        q,
        p,
        f,
        n,
        p_f_size: factors.len(),
        factors,
        expected_p_f_size,
        degree_sum,
        all_irreducible,
        product_descends,
        product_matches_split,
        passed,
    })
}

/// The one-variable steps for `P(x) = x^n + 1 - (x+1)^n`, `n = 2q - 1`.
///
/// The `x^n` terms cancel, so `deg P = n - 1 = 2q - 2` with leading
/// coefficient `-n ≡ 1`, which is also the degree and leading coefficient
/// of `x(x+1) Π (x-α)^2`; `literal_degree_2q` records the (false) claim
/// that `deg P = 2q`.
#[derive(Clone, Debug, Serialize)]
pub struct DerivativeReport {
    pub q: u64,
    pub n: u32,
    pub degree: usize,
    pub leading_coefficient: u64,
    pub rhs_degree: usize,
    pub degree_matches_rhs: bool,
    pub literal_degree_2q: bool,
    pub vanishes_on_field: bool,
    pub derivative_vanishes: bool,
    pub double_roots: bool,
    pub passed: bool,
}

pub fn p_polynomial(field: &Field, n: u32) -> Vec<FieldElement> {
    let one = field.one();
    let x_plus_one = vec![one, one];
    let mut xn = vec![field.zero(); n as usize + 1];
    xn[n as usize] = one;
    let left = uni::add(field, &xn, &[one]);
    uni::sub(field, &left, &uni::pow(field, &x_plus_one, n as u64))
}

pub fn verify_derivative_steps(q: u64) -> Result<DerivativeReport> {
    let (_, _, field) = fields(q)?;
    let f = field.as_ref();
    let n = (2 * q - 1) as u32;
    let poly = p_polynomial(f, n);
    let deriv = uni::derivative(f, &poly);
    let interior = interior_points(f);

    let vanishes_on_field = f.elements().all(|b| uni::eval(f, &poly, b).is_zero());
    let derivative_vanishes = interior.iter().all(|&a| uni::eval(f, &deriv, a).is_zero());
    let double_roots = interior.iter().all(|&a| {
        let (quot, r1) = uni::divide_linear(f, &poly, a);
        let (_, r2) = uni::divide_linear(f, &quot, a);
        r1.is_zero() && r2.is_zero()
    });

    let degree = uni::degree(&poly).unwrap_or(0);
    let lead = poly.get(degree).copied().unwrap_or(FieldElement::ZERO);
    let rhs_degree = 2 + 2 * interior.len();
    let degree_matches_rhs = degree == rhs_degree && lead == f.one();
    let passed = vanishes_on_field && derivative_vanishes && double_roots && degree_matches_rhs;
    Ok(DerivativeReport {
        q,
        n,
        degree,
        leading_coefficient: f.index(lead),
        rhs_degree,
        degree_matches_rhs,
        literal_degree_2q: degree as u64 == 2 * q,
        vanishes_on_field,
        derivative_vanishes,
        double_roots,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q3_closed_form() {
        // x^5 + y^5 - (x+y)^5 = -5xy(x+y)(x^2+xy+y^2) ≡ xy(x+y)(x-y)^2 mod 3.
        let (_, _, f3) = fields(3).unwrap();
        let lhs = identity_lhs(&f3, 5);
        let x = BivariatePoly::x(&f3);
        let y = BivariatePoly::y(&f3);
        let x_minus_y = x.sub(&y);
        let expected = x.mul(&y).mul(&x.add(&y)).mul(&x_minus_y.pow(2));
        assert_eq!(lhs, expected);
        let r = verify_identity_split(3).unwrap();
        assert!(r.passed && r.homogeneous);
    }

    #[test]
    fn split_and_grouped_small_q() {
        for q in [3u64, 5, 7, 9, 11, 25, 27] {
            let s = verify_identity_split(q).unwrap();
            assert!(s.passed && s.homogeneous, "q={q}");
            let g = verify_identity_grouped(q).unwrap();
            assert!(g.passed, "q={q}: {g:?}");
            assert_eq!(g.degree_sum as u64, q - 2);
        }
    }

    #[test]
    fn q9_orbit_structure() {
        let g = verify_identity_grouped(9).unwrap();
        let mut degrees: Vec<u32> = g.factors.iter().map(|h| h.degree).collect();
        degrees.sort();
        assert_eq!(degrees, vec![1, 2, 2, 2]);
        assert_eq!(g.p_f_size, 4);
        assert_eq!(g.expected_p_f_size, 4);
        // The rational orbit is α = 1: h = x - y.
        let linear: Vec<_> = g.factors.iter().filter(|h| h.degree == 1).collect();
        assert_eq!(linear[0].coefficients, vec![2, 1]);
    }

    #[test]
    fn prime_q_factors_are_linear() {
        let g = verify_identity_grouped(7).unwrap();
        assert!(g.factors.iter().all(|h| h.degree == 1));
        assert_eq!(g.p_f_size, 5);
    }

    #[test]
    fn necklace_counts() {
        assert_eq!(irreducible_count(2, 1), 2);
        assert_eq!(irreducible_count(2, 4), 3);
        assert_eq!(irreducible_count(3, 2), 3);
        assert_eq!(irreducible_count(3, 3), 8);
        assert_eq!(irreducible_count(5, 2), 10);
    }

    #[test]
    fn derivative_steps() {
        for q in [3u64, 5, 7, 9, 11, 25, 27] {
            let r = verify_derivative_steps(q).unwrap();
            assert!(r.passed, "q={q}: {r:?}");
            assert_eq!(r.degree as u64, 2 * q - 2);
            assert_eq!(r.leading_coefficient, 1);
            assert!(!r.literal_degree_2q);
        }
    }

    #[test]
    fn p_polynomial_q3() {
        let (_, _, f3) = fields(3).unwrap();
        let poly = p_polynomial(&f3, 5);
        for b in 0..3 {
            assert!(uni::eval(&f3, &poly, f3.from_int(b)).is_zero());
        }
        let d = uni::derivative(&f3, &poly);
        assert!(uni::eval(&f3, &d, f3.one()).is_zero());
    }

    #[test]
    fn rejects_bad_q() {
        assert!(verify_identity_split(8).is_err());
        assert!(verify_identity_split(15).is_err());
        assert!(verify_identity_split(361).is_err());
        assert!(verify_derivative_steps(1).is_err());
    }
}
