//! Exact arithmetic in `Z[ζ_p]`.
//!
//! Elements are stored over the basis `1, ζ, …, ζ^{p-2}`; the relation
//! `ζ^{p-1} = -(1 + ζ + … + ζ^{p-2})` is applied on every operation, so the
//! representation is canonical and rationality is a coefficient test.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycInt {
    p: u32,
    coeffs: Vec<BigInt>,
}

/// Fold a length-`p` vector over `ζ^0..ζ^{p-1}` into the canonical basis.
fn reduce(p: u32, mut full: Vec<BigInt>) -> Vec<BigInt> {
    debug_assert_eq!(full.len(), p as usize);
    let top = full.pop().unwrap();
    if !top.is_zero() {
        for c in full.iter_mut() {
            *c -= &top;
        }
    }
    full
}

impl CycInt {
    pub fn zero(p: u32) -> CycInt {
        CycInt {
            p,
            coeffs: vec![BigInt::zero(); p as usize - 1],
        }
    }

    pub fn from_int(p: u32, c: impl Into<BigInt>) -> CycInt {
        let mut z = CycInt::zero(p);
        z.coeffs[0] = c.into();
        z
    }

    pub fn one(p: u32) -> CycInt {
        CycInt::from_int(p, 1)
    }

    /// `ζ_p^e` for any integer exponent.
    pub fn zeta_pow(p: u32, e: i64) -> CycInt {
        let e = e.rem_euclid(p as i64) as usize;
        let mut full = vec![BigInt::zero(); p as usize];
        full[e] = BigInt::one();
        CycInt {
            p,
            coeffs: reduce(p, full),
        }
    }

    /// `Σ_e counts[e] ζ^e`, with `counts.len() == p`.
    pub fn from_exponent_counts(p: u32, counts: &[i64]) -> CycInt {
        assert_eq!(counts.len(), p as usize, "need one count per exponent");
        let full = counts.iter().map(|&c| BigInt::from(c)).collect();
        CycInt {
            p,
            coeffs: reduce(p, full),
        }
    }

    /// Build from canonical-basis coefficients (length `p - 1`).
    pub fn from_coeffs(p: u32, coeffs: Vec<BigInt>) -> Result<CycInt> {
        if coeffs.len() != p as usize - 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients for p={p}, got {}",
                p - 1,
                coeffs.len()
            )));
        }
        Ok(CycInt { p, coeffs })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &CycInt) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::CharacteristicMismatch {
                left: self.p,
                right: other.p,
            })
        }
    }

    pub fn checked_add(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        Ok(CycInt {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        Ok(CycInt {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn checked_mul(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        let p = self.p as usize;
        let mut full = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                full[(i + j) % p] += a * b;
            }
        }
        Ok(CycInt {
            p: self.p,
            coeffs: reduce(self.p, full),
        })
    }

    pub fn scale(&self, k: &BigInt) -> CycInt {
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> CycInt {
        let mut acc = CycInt::one(self.p);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> CycInt {
        let p = self.p as usize;
        let mut full = vec![BigInt::zero(); p];
        for (i, c) in self.coeffs.iter().enumerate() {
            full[(p - i) % p] = c.clone();
        }
        CycInt {
            p: self.p,
            coeffs: reduce(self.p, full),
        }
    }

    /// Galois automorphism `ζ ↦ ζ^a` for `a` prime to `p`.
    pub fn galois(&self, a: u32) -> CycInt {
        let p = self.p as usize;
        let mut full = vec![BigInt::zero(); p];
        for (i, c) in self.coeffs.iter().enumerate() {
            full[(i * a as usize) % p] += c;
        }
        CycInt {
            p: self.p,
            coeffs: reduce(self.p, full),
        }
    }

    /// `Some(c)` iff the element is the rational integer `c`.
    pub fn as_rational(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Image under `ζ ↦ exp(2πi/p)` as `(re, im)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let p = self.p as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (i, c)| {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / p;
            let c = c.to_f64().unwrap_or(f64::NAN);
            (re + c * theta.cos(), im + c * theta.sin())
        })
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}ζ")?,
                _ => write!(f, "{c}ζ^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CycInt> for &CycInt {
            type Output = CycInt;
            fn $method(self, rhs: &CycInt) -> CycInt {
                self.$checked(rhs).expect("CycInt operands over different p")
            }
        }
        impl $trait<CycInt> for CycInt {
            type Output = CycInt;
            fn $method(self, rhs: CycInt) -> CycInt {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}
