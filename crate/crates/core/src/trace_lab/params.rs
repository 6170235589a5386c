use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::characters::CharacterContext;
use crate::error::{Error, Result};
use crate::field::Field;

/// Parameters of `G(k, n, ψ)` with `n = 2q - 1`, `q = p^f`, `k = F_{p^{f₀}}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SystemParams {
    pub p: u32,
    pub f: u32,
    /// Degree `f₀` of the base field `k` over `F_p`.
    pub base_degree: u32,
    /// Element index (base-`p` coefficient encoding) of the multiplier `c ∈ k`.
    pub psi_multiplier: u64,
}

impl SystemParams {
    pub fn new(p: u32, f: u32) -> Result<Self> {
        SystemParams::with_base(p, f, 1, 1)
    }

    pub fn with_base(p: u32, f: u32, base_degree: u32, psi_multiplier: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if f == 0 || base_degree == 0 {
            return Err(Error::InvalidArgument("f and f0 must be >= 1".into()));
        }
        let q = (p as u64)
            .checked_pow(f)
            .filter(|q| *q < (1 << 31))
            .ok_or_else(|| Error::InvalidArgument(format!("q = {p}^{f} is too large")))?;
        let k_order = (p as u64).checked_pow(base_degree).unwrap_or(u64::MAX);
        if psi_multiplier == 0 || psi_multiplier >= k_order {
            return Err(Error::InvalidArgument(format!(
                "psi multiplier index {psi_multiplier} is not a nonzero element of F_{p}^{base_degree}"
            )));
        }
        debug_assert!(q >= 3);
        Ok(SystemParams {
            p,
            f,
            base_degree,
            psi_multiplier,
        })
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.f)
    }

    /// `n = 2q - 1`.
    pub fn n(&self) -> u64 {
        2 * self.q() - 1
    }

    /// Degree `m = 2q` of the symmetric group whose deleted permutation
    /// representation has dimension `n`.
    pub fn group_degree(&self) -> u32 {
        (2 * self.q()) as u32
    }

    pub fn base_order(&self) -> u64 {
        (self.p as u64).pow(self.base_degree)
    }

    /// `-1` is a square in `k` iff `#k ≡ 1 mod 4`.
    pub fn minus_one_is_square(&self) -> bool {
        self.base_order() % 4 == 1
    }

    pub fn base_field(&self) -> Result<Field> {
        Field::new(self.p as u64, self.base_degree)
    }

    pub fn context(&self) -> Result<CharacterContext> {
        let base = Arc::new(self.base_field()?);
        let c = base.from_index(self.psi_multiplier);
        CharacterContext::new(base, c)
    }

    /// Absolute degree of the degree-`D` extension of `k`.
    pub fn absolute_degree(&self, degree: u32) -> u32 {
        self.base_degree * degree
    }

    pub fn extension_order(&self, degree: u32) -> Option<u64> {
        (self.p as u64).checked_pow(self.absolute_degree(degree))
    }
}

impl fmt::Display for SystemParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p={} f={} q={} n={} f0={} psi={}",
            self.p,
            self.f,
            self.q(),
            self.n(),
            self.base_degree,
            self.psi_multiplier
        )
    }
}
