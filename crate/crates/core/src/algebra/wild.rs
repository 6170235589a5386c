//! The `F_p`-span of roots of unity inside a finite field, and the virtual
//! character `Reg ⊕ Reg - 1` of `F_q ⊕ F_q`.

use serde::Serialize;

use crate::arith::{gcd, is_prime, multiplicative_order};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

use super::identity::prime_power;

/// Reduced row echelon basis of the span of `rows` over `F_p`.
pub fn row_reduce(rows: &[Vec<u32>], p: u32) -> Vec<Vec<u32>> {
    let p64 = p as u64;
    let inv = |a: u32| crate::arith::pow_mod(a as u64, p64 - 2, p64) as u32;
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let s = inv(m[rank][col]);
        for v in m[rank].iter_mut() {
            *v = ((*v as u64 * s as u64) % p64) as u32;
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let c = m[r][col] as u64;
                for k in 0..cols {
                    let sub = (c * m[rank][k] as u64) % p64;
                    m[r][k] = ((m[r][k] as u64 + p64 - sub) % p64) as u32;
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m
}

pub fn in_span(basis: &[Vec<u32>], v: &[u32], p: u32) -> bool {
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    row_reduce(&rows, p).len() == row_reduce(basis, p).len()
}

fn coordinates(field: &Field, elems: &[FieldElement]) -> Vec<Vec<u32>> {
    elems.iter().map(|&e| field.to_poly(e)).collect()
}

/// All primitive `m`-th roots of unity, by increasing discrete log.
pub fn primitive_roots_of_unity(field: &Field, m: u32) -> Result<Vec<FieldElement>> {
    let n = field.unit_order();
    if m == 0 || n % m != 0 {
        return Err(Error::InvalidArgument(format!(
            "{} has no primitive {m}-th roots of unity",
            field.descriptor()
        )));
    }
    let step = n / m;
    Ok((1..m)
        .filter(|&k| gcd(k as u64, m as u64) == 1)
        .map(|k| FieldElement::from_log(k * step))
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct WildInertiaReport {
    pub q: u64,
    pub p: u32,
    pub f: u32,
    pub field: String,
    /// Discrete log of the chosen primitive `(2q-2)`-th root of unity.
    pub zeta_log: u32,
    pub zeta_index: u64,
    pub roots: u32,
    pub dimension: usize,
    pub expected_dimension: u32,
    /// Reduced row echelon basis of the span, in power-basis coordinates.
    pub basis: Vec<Vec<u32>>,
    /// `ζ + ζ^q = 0`.
    pub trace_zero: bool,
    /// `F_q` and `ζ F_q` together have `F_p`-rank `2f`.
    pub direct_sum: bool,
    /// Every root of unity lies in `F_q ⊕ ζ F_q`.
    pub span_in_decomposition: bool,
    /// Every generator of `F_q ⊕ ζ F_q` lies in the span.
    pub decomposition_in_span: bool,
    pub passed: bool,
}

pub fn wild_inertia_span(q: u64) -> Result<WildInertiaReport> {
    wild_inertia_span_with_choice(q, 0)
}

/// As [`wild_inertia_span`], taking the `choice`-th primitive root by
/// increasing discrete log.
pub fn wild_inertia_span_with_choice(q: u64, choice: usize) -> Result<WildInertiaReport> {
    let (p, f) = prime_power(q)?;
    let field = Field::new(p as u64, 2 * f)?;
    let m = (2 * q - 2) as u32;
    let zeta = *primitive_roots_of_unity(&field, m)?
        .get(choice)
        .ok_or_else(|| Error::InvalidArgument(format!("no primitive root choice {choice}")))?;

    let roots: Vec<FieldElement> = (0..m).map(|i| field.pow(zeta, i as u64)).collect();
    let basis = row_reduce(&coordinates(&field, &roots), p);

    let trace_zero = field.trace_to(f, zeta)?.is_zero();

    // F_p-basis of F_q ⊂ F_{q^2}: powers of a generator of F_q^×.
    let h = field.pow(field.generator(), q + 1);
    let small: Vec<FieldElement> = (0..f).map(|i| field.pow(h, i as u64)).collect();
    let generators: Vec<FieldElement> = small
        .iter()
        .copied()
        .chain(small.iter().map(|&a| field.mul(zeta, a)))
        .collect();
    let gen_coords = coordinates(&field, &generators);
    let gen_basis = row_reduce(&gen_coords, p);
    let direct_sum = gen_basis.len() == 2 * f as usize;
    let span_in_decomposition = coordinates(&field, &roots)
        .iter()
        .all(|v| in_span(&gen_basis, v, p));
    let decomposition_in_span = gen_coords.iter().all(|v| in_span(&basis, v, p));

    let dimension = basis.len();
    let passed = dimension == 2 * f as usize
        && trace_zero
        && direct_sum
        && span_in_decomposition
        && decomposition_in_span;
    Ok(WildInertiaReport {
        q,
        p,
        f,
        field: field.descriptor().to_string(),
        zeta_log: zeta.log().expect("root of unity is nonzero"),
        zeta_index: field.index(zeta),
        roots: m,
        dimension,
        expected_dimension: 2 * f,
        basis,
        trace_zero,
        direct_sum,
        span_in_decomposition,
        decomposition_in_span,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSpanReport {
    pub p: u32,
    pub n: u32,
    /// Degree of the smallest extension of `F_p` containing `μ_{n-1}`.
    pub field_degree: u32,
    pub dimension: usize,
}

/// `F_p`-dimension of the span of `μ_{n-1}` for odd `n` with
/// `gcd(n(n-1), p) = 1`.
pub fn root_span(p: u32, n: u32) -> Result<RootSpanReport> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if n < 3 || n % 2 == 0 || gcd(n as u64 * (n as u64 - 1), p as u64) != 1 {
        return Err(Error::InvalidArgument(format!(
            "need odd n >= 3 with gcd(n(n-1), p) = 1, got n={n} p={p}"
        )));
    }
    let m = n - 1;
    let field_degree = multiplicative_order(p as u64 % m as u64, m as u64) as u32;
    let field = Field::new(p as u64, field_degree.max(1))?;
    let step = field.unit_order() / m;
    let roots: Vec<FieldElement> = (0..m).map(|i| FieldElement::from_log(i * step)).collect();
    let dimension = row_reduce(&coordinates(&field, &roots), p).len();
    Ok(RootSpanReport {
        p,
        n,
        field_degree,
        dimension,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VirtualCharacterRow {
    pub class: &'static str,
    pub elements: u64,
    pub value: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VirtualCharacterTable {
    pub q: u64,
    pub rows: Vec<VirtualCharacterRow>,
    pub dimension: i64,
    /// `(1/q^2) Σ value`.
    pub trivial_multiplicity: i64,
}

/// Character of `Reg ⊕ Reg - 1` on `F_q ⊕ F_q`, evaluated element by
/// element and grouped by which coordinates vanish.
pub fn virtual_character_values(q: u64) -> Result<VirtualCharacterTable> {
    prime_power(q)?;
    let reg = |a: u64| if a == 0 { q as i64 } else { 0 };
    let labels = ["(0,0)", "(a,0)", "(0,b)", "(a,b)"];
    let mut counts = [0u64; 4];
    let mut values: [Option<i64>; 4] = [None; 4];
    let mut total = 0i64;
    for a in 0..q {
        for b in 0..q {
            let v = reg(a) + reg(b) - 1;
            let slot = match (a == 0, b == 0) {
                (true, true) => 0,
                (false, true) => 1,
                (true, false) => 2,
                (false, false) => 3,
            };
            counts[slot] += 1;
            if values[slot].is_some_and(|old| old != v) {
                return Err(Error::CheckFailed(format!("class {} is not constant", labels[slot])));
            }
            values[slot] = Some(v);
            total += v;
        }
    }
    let rows = (0..4)
        .map(|i| VirtualCharacterRow {
            class: labels[i],
            elements: counts[i],
            value: values[i].expect("every class is nonempty"),
        })
        .collect::<Vec<_>>();
    Ok(VirtualCharacterTable {
        q,
        dimension: rows[0].value,
        trivial_multiplicity: total / (q * q) as i64,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q3_span_is_f9() {
        let r = wild_inertia_span(3).unwrap();
        assert_eq!(r.roots, 4);
        assert_eq!(r.dimension, 2);
        assert!(r.passed);
        // ζ_4 = g^2 in F_9.
        assert_eq!(r.zeta_log, 2);
    }

    #[test]
    fn dimensions_and_choice_independence() {
        for q in [3u64, 5, 9, 27] {
            let a = wild_inertia_span_with_choice(q, 0).unwrap();
            let b = wild_inertia_span_with_choice(q, 1).unwrap();
            assert!(a.passed && b.passed, "q={q}");
            assert_ne!(a.zeta_log, b.zeta_log);
            assert_eq!(a.dimension, b.dimension);
            assert_eq!(a.basis, b.basis);
            assert_eq!(a.dimension as u32, a.expected_dimension);
        }
        assert_eq!(wild_inertia_span(9).unwrap().dimension, 4);
    }

    #[test]
    fn general_n_span() {
        let r = root_span(5, 7).unwrap();
        assert_eq!((r.field_degree, r.dimension), (2, 2));
        // n = 2q-1 reproduces the wild inertia span.
        assert_eq!(root_span(3, 5).unwrap().dimension, 2);
        assert_eq!(root_span(3, 17).unwrap().dimension, 4);
        assert!(root_span(5, 6).is_err());
        assert!(root_span(5, 11).is_err());
        assert!(root_span(4, 7).is_err());
    }

    #[test]
    fn row_reduction() {
        let rows = vec![vec![1, 2, 0], vec![2, 4, 0], vec![0, 1, 1]];
        let b = row_reduce(&rows, 5);
        assert_eq!(b, vec![vec![1, 0, 3], vec![0, 1, 1]]);
        assert!(in_span(&b, &[1, 3, 1], 5));
        assert!(!in_span(&b, &[0, 0, 1], 5));
    }

    #[test]
    fn virtual_character() {
        for q in [3u64, 5, 9] {
            let t = virtual_character_values(q).unwrap();
            let values: Vec<i64> = t.rows.iter().map(|r| r.value).collect();
            let qi = q as i64;
            assert_eq!(values, vec![2 * qi - 1, qi - 1, qi - 1, -1]);
            assert_eq!(t.trivial_multiplicity, 1);
            assert_eq!(t.rows[3].elements, (q - 1) * (q - 1));
        }
    }
}
