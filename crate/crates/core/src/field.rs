//! Deterministic models of `F_{p^d}`.
//!
//! Every field is `F_p[x]/(f)` where `f` is the lexicographically smallest
//! primitive polynomial of degree `d` (coefficient lists compared constant term
//! first), so `x` generates the multiplicative group. Fields up to the table
//! threshold carry exp/log/Zech tables and use [`FieldElement`] (a discrete log
//! with a zero sentinel); larger fields only get polynomial arithmetic through
//! [`PolyField`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{checked_pow, distinct_prime_factors, gcd, is_prime, pow_mod};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_DEGREE: u32 = 12;
pub const DEFAULT_TABLE_THRESHOLD: u64 = 1 << 24;
/// Hard ceiling on `p^d`; keeps trial-division factoring of `p^d - 1` cheap.
const MAX_FIELD_ORDER: u64 = 1 << 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldConfig {
    pub max_degree: u32,
    pub table_threshold: u64,
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig {
            max_degree: DEFAULT_MAX_DEGREE,
            table_threshold: DEFAULT_TABLE_THRESHOLD,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub d: u32,
    /// Monic modulus, constant term first, length `d + 1`.
    pub modulus: Vec<u32>,
    pub generator_is_x: bool,
}

impl FieldDescriptor {
    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.d)
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        write!(f, "p={} d={} modulus=[{}]", self.p, self.d, coeffs.join(","))
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("malformed field descriptor {s:?}"));
        let mut p = None;
        let mut d = None;
        let mut modulus = None;
        for part in s.split_whitespace() {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            match key {
                "p" => p = Some(value.parse::<u32>().map_err(|_| bad())?),
                "d" => d = Some(value.parse::<u32>().map_err(|_| bad())?),
                "modulus" => {
                    let inner = value
                        .strip_prefix('[')
                        .and_then(|v| v.strip_suffix(']'))
                        .ok_or_else(bad)?;
                    let coeffs = inner
                        .split(',')
                        .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
                        .collect::<Result<Vec<_>>>()?;
                    modulus = Some(coeffs);
                }
                _ => return Err(bad()),
            }
        }
        let (p, d, modulus) = (p.ok_or_else(bad)?, d.ok_or_else(bad)?, modulus.ok_or_else(bad)?);
        if modulus.len() != d as usize + 1 || modulus[d as usize] != 1 {
            return Err(bad());
        }
        Ok(FieldDescriptor {
            p,
            d,
            modulus,
            generator_is_x: true,
        })
    }
}

// ---------------------------------------------------------------------------
// Polynomial representation
// ---------------------------------------------------------------------------

/// Multiply two reduced polynomials modulo the monic `modulus` over `F_p`.
fn mul_mod_poly(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let d = modulus.len() - 1;
    let p64 = p as u64;
    let mut prod = vec![0u64; 2 * d];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p64;
        }
    }
    for k in (d..2 * d).rev() {
        let top = prod[k] % p64;
        if top == 0 {
            continue;
        }
        prod[k] = 0;
        for (j, &mj) in modulus[..d].iter().enumerate() {
            let sub = top * mj as u64 % p64;
            prod[k - d + j] = (prod[k - d + j] + p64 - sub) % p64;
        }
    }
    prod.truncate(d);
    prod.into_iter().map(|c| c as u32).collect()
}

fn pow_mod_poly(base: &[u32], mut exp: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let d = modulus.len() - 1;
    let mut acc = vec![0u32; d];
    acc[0] = 1;
    let mut b = base.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_poly(&acc, &b, modulus, p);
        }
        exp >>= 1;
        if exp > 0 {
            b = mul_mod_poly(&b, &b, modulus, p);
        }
    }
    acc
}

fn is_primitive_root_mod(g: u64, p: u64) -> bool {
    if g % p == 0 {
        return false;
    }
    distinct_prime_factors(p - 1)
        .into_iter()
        .all(|r| pow_mod(g, (p - 1) / r, p) != 1)
}

/// `x` has order exactly `p^d - 1` modulo `modulus`; this also forces the
/// quotient ring to be a field, so no separate irreducibility test is needed.
fn x_is_primitive(modulus: &[u32], p: u32, unit_order: u64, factors: &[u64]) -> bool {
    let d = modulus.len() - 1;
    let mut x = vec![0u32; d];
    if d == 1 {
        x[0] = (p - modulus[0]) % p;
    } else {
        x[1] = 1;
    }
    let mut one = vec![0u32; d];
    one[0] = 1;
    if pow_mod_poly(&x, unit_order, modulus, p) != one {
        return false;
    }
    factors
        .iter()
        .all(|&r| pow_mod_poly(&x, unit_order / r, modulus, p) != one)
}

/// Lexicographically smallest primitive monic polynomial of degree `d`.
fn smallest_primitive_modulus(p: u32, d: u32) -> Vec<u32> {
    let unit_order = (p as u64).pow(d) - 1;
    let factors = distinct_prime_factors(unit_order);
    let sign_d = if d % 2 == 0 { 1 } else { p as u64 - 1 };
    // c0 is the most significant digit of the lexicographic counter.
    for c0 in 1..p {
        // Norm of x is (-1)^d c0 and must generate F_p^x.
        if !is_primitive_root_mod(sign_d * c0 as u64 % p as u64, p as u64) {
            continue;
        }
        let rest = (p as u64).pow(d - 1);
        for v in 0..rest {
            let mut modulus = vec![0u32; d as usize + 1];
            modulus[0] = c0;
            let mut rem = v;
            for j in (1..d as usize).rev() {
                modulus[j] = (rem % p as u64) as u32;
                rem /= p as u64;
            }
            modulus[d as usize] = 1;
            if x_is_primitive(&modulus, p, unit_order, &factors) {
                return modulus;
            }
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

/// A field model with polynomial arithmetic only.
#[derive(Clone, Debug)]
pub struct PolyField {
    desc: FieldDescriptor,
    order: u64,
    /// Column `j` is `x^{p j} mod f`: the Frobenius matrix.
    frobenius: Vec<Vec<u32>>,
    /// Absolute trace of each basis monomial `x^j`.
    basis_traces: Vec<u32>,
}

impl PolyField {
    fn from_descriptor(desc: FieldDescriptor) -> Self {
        let d = desc.d as usize;
        let p = desc.p;
        let order = desc.order();
        let mut frobenius = Vec::with_capacity(d);
        for j in 0..d {
            let mut mono = vec![0u32; d];
            if d == 1 {
                mono[0] = 1;
            } else {
                mono[j] = 1;
            }
            frobenius.push(pow_mod_poly(&mono, p as u64, &desc.modulus, p));
        }
        let mut field = PolyField {
            desc,
            order,
            frobenius,
            basis_traces: Vec::new(),
        };
        field.basis_traces = (0..d)
            .map(|j| {
                let mut mono = vec![0u32; d];
                mono[j] = 1;
                field.poly_abs_trace_slow(&mono)
            })
            .collect();
        field
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    pub fn p(&self) -> u32 {
        self.desc.p
    }

    pub fn degree(&self) -> u32 {
        self.desc.d
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn poly_zero(&self) -> Vec<u32> {
        vec![0; self.desc.d as usize]
    }

    pub fn poly_from_int(&self, c: i64) -> Vec<u32> {
        let mut v = self.poly_zero();
        v[0] = c.rem_euclid(self.desc.p as i64) as u32;
        v
    }

    /// The generator `x` (for `d = 1`, the root of the linear modulus).
    pub fn poly_generator(&self) -> Vec<u32> {
        let mut v = self.poly_zero();
        if self.desc.d == 1 {
            v[0] = (self.desc.p - self.desc.modulus[0]) % self.desc.p;
        } else {
            v[1] = 1;
        }
        v
    }

    pub fn poly_add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = self.desc.p;
        a.iter().zip(b).map(|(&x, &y)| (x + y) % p).collect()
    }

    pub fn poly_neg(&self, a: &[u32]) -> Vec<u32> {
        let p = self.desc.p;
        a.iter().map(|&x| (p - x) % p).collect()
    }

    pub fn poly_mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        mul_mod_poly(a, b, &self.desc.modulus, self.desc.p)
    }

    pub fn poly_pow(&self, a: &[u32], e: u64) -> Vec<u32> {
        pow_mod_poly(a, e, &self.desc.modulus, self.desc.p)
    }

    /// `a ↦ a^p` via the precomputed Frobenius matrix.
    pub fn poly_frobenius(&self, a: &[u32]) -> Vec<u32> {
        let p = self.desc.p as u64;
        let mut out = vec![0u64; a.len()];
        for (j, &aj) in a.iter().enumerate() {
            if aj == 0 {
                continue;
            }
            for (k, &c) in self.frobenius[j].iter().enumerate() {
                out[k] = (out[k] + aj as u64 * c as u64) % p;
            }
        }
        out.into_iter().map(|c| c as u32).collect()
    }

    fn poly_abs_trace_slow(&self, a: &[u32]) -> u32 {
        let mut acc = a.to_vec();
        let mut cur = a.to_vec();
        for _ in 1..self.desc.d {
            cur = self.poly_frobenius(&cur);
            acc = self.poly_add(&acc, &cur);
        }
        debug_assert!(acc[1..].iter().all(|&c| c == 0));
        acc[0]
    }

    /// Absolute trace `Tr_{F_{p^d}/F_p}` as a linear form on coefficients.
    pub fn poly_abs_trace(&self, a: &[u32]) -> u32 {
        let p = self.desc.p as u64;
        a.iter()
            .zip(&self.basis_traces)
            .fold(0u64, |acc, (&c, &t)| (acc + c as u64 * t as u64) % p) as u32
    }

    /// Base-`p` integer encoding of a coefficient vector (constant term least
    /// significant). This is the element index used in files.
    pub fn encode(&self, a: &[u32]) -> u64 {
        a.iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.desc.p as u64 + c as u64)
    }

    pub fn decode(&self, mut index: u64) -> Vec<u32> {
        let p = self.desc.p as u64;
        (0..self.desc.d)
            .map(|_| {
                let c = (index % p) as u32;
                index /= p;
                c
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Tabulated fields
// ---------------------------------------------------------------------------

/// Element of a tabulated field: `ZERO` or a discrete log relative to `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(u32::MAX);
    pub const ONE: FieldElement = FieldElement(0);

    /// Caller guarantees `log < p^d - 1`.
    pub const fn from_log(log: u32) -> FieldElement {
        FieldElement(log)
    }

    pub fn is_zero(self) -> bool {
        self.0 == u32::MAX
    }

    pub fn log(self) -> Option<u32> {
        (!self.is_zero()).then_some(self.0)
    }
}

/// A field with exp/log/Zech tables.
#[derive(Clone, Debug)]
pub struct Field {
    poly: PolyField,
    unit_order: u32,
    /// log -> index
    exp: Vec<u32>,
    /// index -> log (entry 0 unused)
    log: Vec<u32>,
    /// log i -> log(1 + x^i), or `u32::MAX` when `1 + x^i = 0`
    zech: Vec<u32>,
    /// log -> absolute trace
    trace: Vec<u32>,
}

#[derive(Clone, Debug)]
pub enum FieldModel {
    Tabulated(Field),
    Polynomial(PolyField),
}

impl FieldModel {
    pub fn descriptor(&self) -> &FieldDescriptor {
        match self {
            FieldModel::Tabulated(f) => f.descriptor(),
            FieldModel::Polynomial(f) => f.descriptor(),
        }
    }

    pub fn poly(&self) -> &PolyField {
        match self {
            FieldModel::Tabulated(f) => f.poly(),
            FieldModel::Polynomial(f) => f,
        }
    }

    pub fn into_tabulated(self) -> Result<Field> {
        match self {
            FieldModel::Tabulated(f) => Ok(f),
            FieldModel::Polynomial(f) => Err(Error::NoTables {
                field: f.descriptor().to_string(),
            }),
        }
    }
}

/// Build `F_{p^d}` with the default degree bound and table threshold.
pub fn build_field(p: u64, d: u32) -> Result<FieldModel> {
    build_field_with(p, d, &FieldConfig::default())
}

pub fn build_field_with(p: u64, d: u32, cfg: &FieldConfig) -> Result<FieldModel> {
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if d < 1 || d > cfg.max_degree {
        return Err(Error::DegreeOutOfRange {
            degree: d,
            max: cfg.max_degree,
        });
    }
    let too_large = || Error::FieldTooLarge { p: p as u32, d };
    let p32 = u32::try_from(p).map_err(|_| too_large())?;
    let order = checked_pow(p, d).filter(|&o| o <= MAX_FIELD_ORDER).ok_or_else(too_large)?;
    let modulus = smallest_primitive_modulus(p32, d);
    let desc = FieldDescriptor {
        p: p32,
        d,
        modulus,
        generator_is_x: true,
    };
    let poly = PolyField::from_descriptor(desc);
    if order <= cfg.table_threshold && order <= u32::MAX as u64 {
        Ok(FieldModel::Tabulated(Field::tabulate(poly)))
    } else {
        Ok(FieldModel::Polynomial(poly))
    }
}

impl Field {
    /// Tabulated `F_{p^d}`; errors if the field is above the default threshold.
    pub fn new(p: u64, d: u32) -> Result<Field> {
        build_field(p, d)?.into_tabulated()
    }

    fn tabulate(poly: PolyField) -> Field {
        let order = poly.order as usize;
        let unit_order = order - 1;
        let p = poly.desc.p;
        let mut exp = vec![0u32; unit_order];
        let mut log = vec![u32::MAX; order];
        let mut cur = poly.poly_from_int(1);
        let g = poly.poly_generator();
        for (i, slot) in exp.iter_mut().enumerate() {
            let idx = poly.encode(&cur) as u32;
            *slot = idx;
            log[idx as usize] = i as u32;
            cur = poly.poly_mul(&cur, &g);
        }
        let zech = exp
            .iter()
            .map(|&idx| {
                let c0 = idx % p;
                let bumped = idx - c0 + (c0 + 1) % p;
                if bumped == 0 {
                    u32::MAX
                } else {
                    log[bumped as usize]
                }
            })
            .collect();
        let trace = exp
            .iter()
            .map(|&idx| poly.poly_abs_trace(&poly.decode(idx as u64)))
            .collect();
        Field {
            poly,
            unit_order: unit_order as u32,
            exp,
            log,
            zech,
            trace,
        }
    }

    pub fn poly(&self) -> &PolyField {
        &self.poly
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.poly.desc
    }

    pub fn p(&self) -> u32 {
        self.poly.desc.p
    }

    pub fn degree(&self) -> u32 {
        self.poly.desc.d
    }

    pub fn order(&self) -> u64 {
        self.poly.order
    }

    pub fn unit_order(&self) -> u32 {
        self.unit_order
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn generator(&self) -> FieldElement {
        FieldElement(1 % self.unit_order)
    }

    pub fn minus_one(&self) -> FieldElement {
        FieldElement(self.unit_order / 2)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, c: i64) -> FieldElement {
        self.from_index(c.rem_euclid(self.p() as i64) as u64)
    }

    pub fn from_index(&self, index: u64) -> FieldElement {
        if index == 0 {
            FieldElement::ZERO
        } else {
            FieldElement(self.log[index as usize])
        }
    }

    pub fn index(&self, a: FieldElement) -> u64 {
        match a.log() {
            None => 0,
            Some(l) => self.exp[l as usize] as u64,
        }
    }

    pub fn to_poly(&self, a: FieldElement) -> Vec<u32> {
        self.poly.decode(self.index(a))
    }

    pub fn from_poly(&self, a: &[u32]) -> FieldElement {
        self.from_index(self.poly.encode(a))
    }

    /// All elements in index order (index 0 is zero).
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |i| self.from_index(i))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.unit_order).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (Some(i), Some(j)) = (a.log(), b.log()) else {
            return if a.is_zero() { b } else { a };
        };
        let n = self.unit_order;
        let diff = if j >= i { j - i } else { j + n - i };
        let z = self.zech[diff as usize];
        if z == u32::MAX {
            FieldElement::ZERO
        } else {
            let s = i as u64 + z as u64;
            FieldElement((s % n as u64) as u32)
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        match a.log() {
            None => a,
            Some(i) => {
                let n = self.unit_order as u64;
                FieldElement(((i as u64 + n / 2) % n) as u32)
            }
        }
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match (a.log(), b.log()) {
            (Some(i), Some(j)) => {
                FieldElement(((i as u64 + j as u64) % self.unit_order as u64) as u32)
            }
            _ => FieldElement::ZERO,
        }
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        a.log()
            .map(|i| FieldElement((self.unit_order - i) % self.unit_order))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        match a.log() {
            None if e == 0 => FieldElement::ONE,
            None => FieldElement::ZERO,
            Some(i) => {
                let n = self.unit_order as u64;
                FieldElement(((i as u128 * (e % n) as u128) % n as u128) as u32)
            }
        }
    }

    /// `a^(p^k)`.
    pub fn frobenius(&self, a: FieldElement, k: u32) -> FieldElement {
        let n = self.unit_order as u64;
        let e = pow_mod(self.p() as u64, k as u64, n.max(1));
        match a.log() {
            None => a,
            Some(i) => FieldElement(((i as u128 * e as u128) % n as u128) as u32),
        }
    }

    /// `Tr_{F_{p^d}/F_p}(a)` as an integer in `[0, p)`.
    #[inline]
    pub fn abs_trace(&self, a: FieldElement) -> u32 {
        match a.log() {
            None => 0,
            Some(i) => self.trace[i as usize],
        }
    }

    /// Absolute trace table indexed by discrete log.
    pub fn trace_by_log(&self) -> &[u32] {
        &self.trace
    }

    /// Quadratic character: 0 at zero, else parity of the discrete log.
    #[inline]
    pub fn chi2(&self, a: FieldElement) -> i8 {
        match a.log() {
            None => 0,
            Some(i) if i % 2 == 0 => 1,
            Some(_) => -1,
        }
    }

    /// `Σ_{i < d/e} a^{(p^e)^i}`, the trace down to the degree-`e` subfield.
    pub fn trace_to(&self, sub_degree: u32, a: FieldElement) -> Result<FieldElement> {
        let d = self.degree();
        if sub_degree == 0 || d % sub_degree != 0 {
            return Err(Error::NotADivisor {
                sub: sub_degree,
                degree: d,
            });
        }
        let mut acc = FieldElement::ZERO;
        let mut cur = a;
        for _ in 0..d / sub_degree {
            acc = self.add(acc, cur);
            cur = self.frobenius(cur, sub_degree);
        }
        Ok(acc)
    }

    /// Whether `a` lies in the degree-`e` subfield.
    pub fn in_subfield(&self, sub_degree: u32, a: FieldElement) -> bool {
        self.frobenius(a, sub_degree) == a
    }

    /// Horner evaluation of an integer-coefficient polynomial (constant first).
    pub fn eval_int_poly(&self, coeffs: &[i64], x: FieldElement) -> FieldElement {
        coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| {
                self.add(self.mul(acc, x), self.from_int(c))
            })
    }
}

/// Compatible embedding of a subfield model into an extension model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Embedding {
    sub_unit_order: u32,
    sup_unit_order: u32,
    /// Discrete log (in the extension) of the image of the subfield generator.
    image_log: u32,
}

impl Embedding {
    /// The image of the subfield generator is the root of the subfield's
    /// modulus in the extension with the smallest discrete log. Independent
    /// lexicographic moduli are not norm-compatible in general, so the plain
    /// power `g^((p^D-1)/(p^d-1))` is tried first but not assumed.
    pub fn new(sub: &Field, sup: &Field) -> Result<Embedding> {
        if sub.p() != sup.p() {
            return Err(Error::CharacteristicMismatch {
                left: sub.p(),
                right: sup.p(),
            });
        }
        if sup.degree() % sub.degree() != 0 {
            return Err(Error::NotASubfield {
                sub: sub.descriptor().to_string(),
                sup: sup.descriptor().to_string(),
            });
        }
        let n_sub = sub.unit_order() as u64;
        let n_sup = sup.unit_order() as u64;
        let step = n_sup / n_sub;
        let coeffs: Vec<i64> = sub.descriptor().modulus.iter().map(|&c| c as i64).collect();
        for j in 1..=n_sub {
            if gcd(j, n_sub) != 1 {
                continue;
            }
            let candidate = FieldElement(((step * j) % n_sup) as u32);
            if sup.eval_int_poly(&coeffs, candidate).is_zero() {
                return Ok(Embedding {
                    sub_unit_order: n_sub as u32,
                    sup_unit_order: n_sup as u32,
                    image_log: candidate.0,
                });
            }
        }
        unreachable!("a primitive modulus has a primitive root in every extension")
    }

    pub fn apply(&self, a: FieldElement) -> FieldElement {
        match a.log() {
            None => a,
            Some(i) => FieldElement(
                ((i as u64 * self.image_log as u64) % self.sup_unit_order as u64) as u32,
            ),
        }
    }

    pub fn image_of_generator(&self) -> FieldElement {
        FieldElement(self.image_log)
    }

    pub fn index(&self) -> u32 {
        self.sup_unit_order / self.sub_unit_order
    }
}

pub fn embed(sub: &Field, sup: &Field, a: FieldElement) -> Result<FieldElement> {
    Ok(Embedding::new(sub, sup)?.apply(a))
}
