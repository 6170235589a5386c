//! Additive and quadratic characters, Gauss sums and the normalization
//! constant `A(L, n, ψ_{L/k}) = -χ_{2,L}(n(-1)^d) g_L` with `n = 2d + 1`.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldDescriptor, FieldElement};

/// The base field `k` together with the multiplier `c` of
/// `ψ_k(x) = ζ_p^{Tr_{k/F_p}(c x)}`.
#[derive(Clone, Debug)]
pub struct CharacterContext {
    base: Arc<Field>,
    multiplier: FieldElement,
}

impl CharacterContext {
    pub fn new(base: Arc<Field>, multiplier: FieldElement) -> Result<Self> {
        if multiplier.is_zero() {
            return Err(Error::InvalidArgument(
                "additive character multiplier must be nonzero".into(),
            ));
        }
        Ok(CharacterContext { base, multiplier })
    }

    /// `ψ_k = ζ^{Tr(x)}`.
    pub fn canonical(base: Arc<Field>) -> Self {
        CharacterContext {
            base,
            multiplier: FieldElement::ONE,
        }
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<Field> {
        &self.base
    }

    pub fn multiplier(&self) -> FieldElement {
        self.multiplier
    }

    /// Characters of an extension `L ⊇ k`.
    pub fn over<'a>(&'a self, field: &'a Field) -> Result<ExtensionCharacters<'a>> {
        let embedding = Embedding::new(&self.base, field)?;
        Ok(ExtensionCharacters {
            ctx: self,
            field,
            embedding,
            multiplier: embedding.apply(self.multiplier),
        })
    }
}

/// `ψ_{L/k}` and `χ_{2,L}` on a fixed extension.
///
/// Since `c ∈ k`, `Tr_{k/F_p}(c·Tr_{L/k}(x)) = Tr_{L/F_p}(c x)`, so the
/// additive character is one absolute-trace lookup.
#[derive(Clone, Copy, Debug)]
pub struct ExtensionCharacters<'a> {
    ctx: &'a CharacterContext,
    field: &'a Field,
    embedding: Embedding,
    multiplier: FieldElement,
}

impl<'a> ExtensionCharacters<'a> {
    pub fn field(&self) -> &'a Field {
        self.field
    }

    pub fn context(&self) -> &'a CharacterContext {
        self.ctx
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    /// `c` viewed inside `L`.
    pub fn multiplier(&self) -> FieldElement {
        self.multiplier
    }

    /// Exponent `a` with `ψ_{L/k}(x) = ζ^a`.
    #[inline]
    pub fn psi_exponent(&self, x: FieldElement) -> u32 {
        self.field.abs_trace(self.field.mul(self.multiplier, x))
    }

    pub fn psi(&self, x: FieldElement) -> CycInt {
        CycInt::zeta_pow(self.field.p(), self.psi_exponent(x) as i64)
    }

    #[inline]
    pub fn chi2(&self, x: FieldElement) -> i8 {
        self.field.chi2(x)
    }

    /// `g_L = Σ_{x ∈ L^×} ψ_{L/k}(x) χ_{2,L}(x)`.
    pub fn gauss_sum(&self) -> CycInt {
        let p = self.field.p() as usize;
        let mut counts = vec![0i64; p];
        for x in self.field.nonzero_elements() {
            counts[self.psi_exponent(x) as usize] += self.chi2(x) as i64;
        }
        CycInt::from_exponent_counts(p as u32, &counts)
    }
}

/// `χ_{2,L}(x)`.
pub fn chi2(field: &Field, x: FieldElement) -> i8 {
    field.chi2(x)
}

/// `ψ_{L/k}(x)`.
pub fn psi(ctx: &CharacterContext, field: &Field, x: FieldElement) -> Result<CycInt> {
    Ok(ctx.over(field)?.psi(x))
}

/// `-χ_{2,L}(n (-1)^d)` with `d = (n-1)/2`: the sign relating `A` to `g_L`.
pub fn normalization_sign(field: &Field, n: u64) -> Result<i8> {
    if n % 2 == 0 {
        return Err(Error::InvalidArgument(format!("n={n} must be odd")));
    }
    if n % field.p() as u64 == 0 {
        return Err(Error::InvalidArgument(format!(
            "n={n} must be prime to p={}",
            field.p()
        )));
    }
    let d = (n - 1) / 2;
    let sign = if d % 2 == 0 { 1 } else { -1 };
    let arg = field.from_int(sign * (n % field.p() as u64) as i64);
    Ok(-field.chi2(arg))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizationConstant {
    pub n: u64,
    pub value: CycInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaussSum {
    pub field: FieldDescriptor,
    pub value: CycInt,
    pub a_value: Option<NormalizationConstant>,
}

impl GaussSum {
    /// Record `A(L, n, ψ_{L/k})` for the given `n`.
    pub fn with_n(mut self, field: &Field, n: u64) -> Result<GaussSum> {
        let sign = normalization_sign(field, n)?;
        self.a_value = Some(NormalizationConstant {
            n,
            value: self.value.scale(&BigInt::from(sign)),
        });
        Ok(self)
    }

    /// `A·conj(A) = #L` means `1/A = conj(A)/#L`. Since `conj(g) = χ_2(-1) g`,
    /// `conj(A) = -χ_2(n(-1)^d) χ_2(-1) g`.
    pub fn conj_a(&self, field: &Field) -> Option<CycInt> {
        let a = self.a_value.as_ref()?;
        let sign = normalization_sign(field, a.n).ok()? * field.chi2(field.minus_one());
        Some(self.value.scale(&BigInt::from(sign)))
    }
}

pub fn gauss_sum(ctx: &CharacterContext, field: &Field) -> Result<GaussSum> {
    let chars = ctx.over(field)?;
    Ok(GaussSum {
        field: field.descriptor().clone(),
        value: chars.gauss_sum(),
        a_value: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HasseDavenportRow {
    pub degree: u32,
    pub field: FieldDescriptor,
    pub direct: CycInt,
    pub power_of_base: CycInt,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HasseDavenportReport {
    pub base: FieldDescriptor,
    pub n: u64,
    pub rows: Vec<HasseDavenportRow>,
}

impl HasseDavenportReport {
    pub fn all_equal(&self) -> bool {
        self.rows.iter().all(|r| r.equal)
    }
}

/// Compare `A(L, n, ψ_{L/k})` over the degree-`D` extension with `A(k, n, ψ)^D`.
pub fn hasse_davenport_check(
    ctx: &CharacterContext,
    n: u64,
    degrees: &[u32],
) -> Result<HasseDavenportReport> {
    let base = ctx.base();
    let base_a = gauss_sum(ctx, base)?.with_n(base, n)?.a_value.unwrap().value;
    let mut rows = Vec::with_capacity(degrees.len());
    for &degree in degrees {
        if degree == 0 {
            return Err(Error::InvalidArgument("degrees must be >= 1".into()));
        }
        let field = Field::new(base.p() as u64, base.degree() * degree)?;
        let direct = gauss_sum(ctx, &field)?.with_n(&field, n)?.a_value.unwrap().value;
        let power_of_base = base_a.pow(degree);
        rows.push(HasseDavenportRow {
            degree,
            field: field.descriptor().clone(),
            equal: direct == power_of_base,
            direct,
            power_of_base,
        });
    }
    Ok(HasseDavenportReport {
        base: base.descriptor().clone(),
        n,
        rows,
    })
}
