//! Dense polynomial arithmetic over a [`Field`]: bivariate polynomials keyed
//! by monomial exponents, and univariate helpers on coefficient vectors.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::field::{Field, FieldElement};

/// `Σ c_{ij} x^i y^j` with no stored zero coefficients.
#[derive(Clone)]
pub struct BivariatePoly {
    field: Arc<Field>,
    terms: BTreeMap<(u32, u32), FieldElement>,
}

impl PartialEq for BivariatePoly {
    fn eq(&self, other: &Self) -> bool {
        self.field.descriptor() == other.field.descriptor() && self.terms == other.terms
    }
}

impl Eq for BivariatePoly {}

impl fmt::Debug for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivariatePoly[{}] {self}", self.field.descriptor())
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(i, j), &c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "[{}]x^{i}y^{j}", self.field.index(c))?;
        }
        Ok(())
    }
}

impl BivariatePoly {
    pub fn zero(field: &Arc<Field>) -> Self {
        BivariatePoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(field: &Arc<Field>, c: FieldElement, i: u32, j: u32) -> Self {
        let mut p = Self::zero(field);
        if !c.is_zero() {
            p.terms.insert((i, j), c);
        }
        p
    }

    pub fn constant(field: &Arc<Field>, c: FieldElement) -> Self {
        Self::monomial(field, c, 0, 0)
    }

    pub fn x(field: &Arc<Field>) -> Self {
        Self::monomial(field, field.one(), 1, 0)
    }

    pub fn y(field: &Arc<Field>) -> Self {
        Self::monomial(field, field.one(), 0, 1)
    }

    /// `x - a·y`.
    pub fn linear(field: &Arc<Field>, a: FieldElement) -> Self {
        Self::x(field).sub(&Self::monomial(field, a, 0, 1))
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), FieldElement> {
        &self.terms
    }

    pub fn coefficient(&self, i: u32, j: u32) -> FieldElement {
        self.terms.get(&(i, j)).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest total degree of a monomial, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.keys().all(|&(i, j)| i + j == degree)
    }

    fn accumulate(&mut self, key: (u32, u32), c: FieldElement) {
        let f = &self.field;
        let entry = self.terms.entry(key).or_insert(FieldElement::ZERO);
        *entry = f.add(*entry, c);
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, &c) in &other.terms {
            out.accumulate(k, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        BivariatePoly {
            field: f.clone(),
            terms: self.terms.iter().map(|(&k, &c)| (k, f.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f);
        for (&(i1, j1), &c1) in &self.terms {
            for (&(i2, j2), &c2) in &other.terms {
                out.accumulate((i1 + i2, j1 + j2), f.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(&self.field, self.field.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Value at `(x, y)`.
    pub fn eval(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let f = &self.field;
        self.terms.iter().fold(f.zero(), |acc, (&(i, j), &c)| {
            f.add(acc, f.mul(c, f.mul(f.pow(x, i as u64), f.pow(y, j as u64))))
        })
    }

    /// Whether every coefficient lies in the prime field.
    pub fn has_prime_coefficients(&self) -> bool {
        self.terms.values().all(|&c| self.field.in_subfield(1, c))
    }

    /// Rewrite a polynomial with prime-field coefficients over `prime`
    /// (which must be `F_p` for the same `p`).
    pub fn descend(&self, prime: &Arc<Field>) -> Option<Self> {
        if prime.degree() != 1 || prime.p() != self.field.p() {
            return None;
        }
        let mut out = Self::zero(prime);
        for (&k, &c) in &self.terms {
            if !self.field.in_subfield(1, c) {
                return None;
            }
            let v = self.field.to_poly(c)[0];
            out.accumulate(k, prime.from_int(v as i64));
        }
        Some(out)
    }

    /// First monomial (in ascending `(i, j)` order) whose coefficients differ.
    pub fn first_difference(&self, other: &Self) -> Option<((u32, u32), FieldElement, FieldElement)> {
        let keys: std::collections::BTreeSet<_> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().find_map(|&(i, j)| {
            let a = self.coefficient(i, j);
            let b = other.coefficient(i, j);
            (a != b).then_some(((i, j), a, b))
        })
    }

    /// `F(u) = f(u, 1)` as a univariate coefficient vector.
    pub fn dehomogenize(&self) -> Vec<FieldElement> {
        let f = &self.field;
        let deg = self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0) as usize;
        let mut out = vec![f.zero(); deg + 1];
        for (&(i, _), &c) in &self.terms {
            out[i as usize] = f.add(out[i as usize], c);
        }
        uni::trim(out)
    }
}

/// Univariate polynomials as coefficient vectors, lowest degree first,
/// trimmed of trailing zeros (the zero polynomial is empty).
pub mod uni {
    use super::*;

    pub fn trim(mut a: Vec<FieldElement>) -> Vec<FieldElement> {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        a
    }

    pub fn degree(a: &[FieldElement]) -> Option<usize> {
        a.iter().rposition(|c| !c.is_zero())
    }

    pub fn add(f: &Field, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        let n = a.len().max(b.len());
        let get = |v: &[FieldElement], i: usize| v.get(i).copied().unwrap_or(FieldElement::ZERO);
        trim((0..n).map(|i| f.add(get(a, i), get(b, i))).collect())
    }

    pub fn neg(f: &Field, a: &[FieldElement]) -> Vec<FieldElement> {
        a.iter().map(|&c| f.neg(c)).collect()
    }

    pub fn sub(f: &Field, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        add(f, a, &neg(f, b))
    }

    pub fn mul(f: &Field, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![f.zero(); a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        trim(out)
    }

    pub fn pow(f: &Field, a: &[FieldElement], mut e: u64) -> Vec<FieldElement> {
        let mut base = a.to_vec();
        let mut acc = vec![f.one()];
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(f, &acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = mul(f, &base, &base);
            }
        }
        acc
    }

    /// Remainder of `a` modulo a nonzero `m`.
    pub fn rem(f: &Field, a: &[FieldElement], m: &[FieldElement]) -> Vec<FieldElement> {
        divmod(f, a, m).1
    }

    pub fn divmod(f: &Field, a: &[FieldElement], m: &[FieldElement]) -> (Vec<FieldElement>, Vec<FieldElement>) {
        let dm = degree(m).expect("division by zero polynomial");
        let lead_inv = f.inv(m[dm]).expect("nonzero leading coefficient");
        let mut r = trim(a.to_vec());
        let mut q = vec![f.zero(); r.len().saturating_sub(dm).max(1)];
        while let Some(dr) = degree(&r) {
            if dr < dm {
                break;
            }
            let c = f.mul(r[dr], lead_inv);
            let shift = dr - dm;
            q[shift] = c;
            for (i, &mc) in m[..=dm].iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(c, mc));
            }
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn mulmod(f: &Field, a: &[FieldElement], b: &[FieldElement], m: &[FieldElement]) -> Vec<FieldElement> {
        rem(f, &mul(f, a, b), m)
    }

    pub fn powmod(f: &Field, a: &[FieldElement], mut e: u64, m: &[FieldElement]) -> Vec<FieldElement> {
        let mut base = rem(f, a, m);
        let mut acc = rem(f, &[f.one()], m);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(f, &acc, &base, m);
            }
            e >>= 1;
            if e > 0 {
                base = mulmod(f, &base, &base, m);
            }
        }
        acc
    }

    pub fn gcd(f: &Field, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(f, &a, &b);
            a = b;
            b = r;
        }
        match degree(&a) {
            Some(d) => {
                let inv = f.inv(a[d]).expect("nonzero");
                a.iter().map(|&c| f.mul(c, inv)).collect()
            }
            None => a,
        }
    }

    pub fn eval(f: &Field, a: &[FieldElement], x: FieldElement) -> FieldElement {
        a.iter().rev().fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(f: &Field, a: &[FieldElement]) -> Vec<FieldElement> {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| f.mul(f.from_int(k as i64), c))
                .collect(),
        )
    }

    /// Synthetic division by `x - alpha`: `(quotient, remainder)`.
    pub fn divide_linear(f: &Field, a: &[FieldElement], alpha: FieldElement) -> (Vec<FieldElement>, FieldElement) {
        if a.is_empty() {
            return (Vec::new(), f.zero());
        }
        let mut q = vec![f.zero(); a.len() - 1];
        let mut carry = f.zero();
        for k in (0..a.len()).rev() {
            let v = f.add(a[k], f.mul(carry, alpha));
            if k == 0 {
                return (trim(q), v);
            }
            q[k - 1] = v;
            carry = v;
        }
        unreachable!()
    }

    /// Irreducibility over a prime field `F_p` (Ben-Or): a polynomial of
    /// degree `d ≥ 1` is irreducible iff `gcd(x^{p^i} - x, g) = 1` for every
    /// `1 ≤ i ≤ d/2`.
    pub fn is_irreducible_over_prime(f: &Field, g: &[FieldElement]) -> bool {
        assert_eq!(f.degree(), 1, "prime field expected");
        let Some(d) = degree(g) else {
            return false;
        };
        if d == 0 {
            return false;
        }
        let x = vec![f.zero(), f.one()];
        let mut frob = x.clone();
        for _ in 1..=d / 2 {
            frob = powmod(f, &frob, f.p() as u64, g);
            let diff = sub(f, &frob, &x);
            if degree(&gcd(f, &diff, g)) != Some(0) {
                return false;
            }
        }
        true
    }
}
