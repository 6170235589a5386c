//! The bucket-counting kernel for
//! `S(t) = Σ_{x ∈ L} ψ_{L/k}(x^n + t x) χ_{2,L}(x)`.
//!
//! `ψ_{L/k}(y) = ζ^{Tr(c y)}` and the absolute trace is additive, so with
//! `x = g^i` and `t = g^j` the exponent is `Tr(c x^n) + Tr(c g^{i+j})`. Both
//! pieces are table lookups, so each `t` costs one pass over `L^×` folding
//! signed counts into `p` buckets; `Z[ζ_p]` is only touched once per `t`.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::characters::{gauss_sum, CharacterContext, ExtensionCharacters, GaussSum};
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

use super::params::SystemParams;

/// Exact `T(t)` stored as `numerator / denominator` with the denominator `#L`
/// left unreduced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceValue {
    pub numerator: BigInt,
    pub denominator: BigInt,
}

impl TraceValue {
    pub fn is_integer(&self) -> bool {
        self.numerator.is_multiple_of(&self.denominator)
    }

    /// The integer value, when integral.
    pub fn as_integer(&self) -> Option<i64> {
        if self.is_integer() {
            i64::try_from(&self.numerator / &self.denominator).ok()
        } else {
            None
        }
    }

    pub fn to_rational(&self) -> num_rational::BigRational {
        num_rational::BigRational::new(self.numerator.clone(), self.denominator.clone())
    }
}

pub struct TraceEngine<'a> {
    params: SystemParams,
    field: &'a Field,
    chars: ExtensionCharacters<'a>,
    gauss: GaussSum,
    conj_a: CycInt,
    /// `Tr(c x^n)` indexed by `log x`.
    x_exponent: Vec<u32>,
    multiplier_log: u32,
}

impl<'a> TraceEngine<'a> {
    pub fn new(params: &SystemParams, ctx: &'a CharacterContext, field: &'a Field) -> Result<Self> {
        if field.p() != params.p {
            return Err(Error::CharacteristicMismatch {
                left: params.p,
                right: field.p(),
            });
        }
        let chars = ctx.over(field)?;
        let n = params.n();
        let gauss = gauss_sum(ctx, field)?.with_n(field, n)?;
        let conj_a = gauss.conj_a(field).expect("A recorded above");
        let c = chars.multiplier();
        let x_exponent = field
            .nonzero_elements()
            .map(|x| field.abs_trace(field.mul(c, field.pow(x, n))))
            .collect();
        Ok(TraceEngine {
            params: params.clone(),
            field,
            chars,
            gauss,
            conj_a,
            x_exponent,
            multiplier_log: c.log().expect("multiplier is nonzero"),
        })
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    pub fn field(&self) -> &'a Field {
        self.field
    }

    pub fn characters(&self) -> &ExtensionCharacters<'a> {
        &self.chars
    }

    pub fn gauss(&self) -> &GaussSum {
        &self.gauss
    }

    /// `A(L, n, ψ_{L/k})`.
    pub fn normalization(&self) -> &CycInt {
        &self.gauss.a_value.as_ref().unwrap().value
    }

    pub fn conj_normalization(&self) -> &CycInt {
        &self.conj_a
    }

    /// Signed bucket counts `counts[a] = Σ_{x: exponent = a} χ_2(x)`.
    pub fn bucket_counts(&self, t: FieldElement, counts: &mut [i64]) {
        let p = self.field.p();
        counts.iter_mut().for_each(|c| *c = 0);
        let xe = &self.x_exponent;
        let Some(tlog) = t.log() else {
            for (i, &e) in xe.iter().enumerate() {
                counts[e as usize] += 1 - 2 * (i as i64 & 1);
            }
            return;
        };
        let n = self.field.unit_order() as usize;
        let tr = self.field.trace_by_log();
        let off = ((tlog as u64 + self.multiplier_log as u64) % n as u64) as usize;
        let mut fold = |i: usize, k: usize| {
            let mut e = xe[i] + tr[k];
            if e >= p {
                e -= p;
            }
            counts[e as usize] += 1 - 2 * (i as i64 & 1);
        };
        for i in 0..n - off {
            fold(i, i + off);
        }
        for i in n - off..n {
            fold(i, i + off - n);
        }
    }

    /// `S(t)` via bucket counting.
    pub fn raw_sum(&self, t: FieldElement) -> CycInt {
        let mut counts = vec![0i64; self.field.p() as usize];
        self.bucket_counts(t, &mut counts);
        CycInt::from_exponent_counts(self.field.p(), &counts)
    }

    /// `S(t)` by term-by-term accumulation of `ψ(x^n + t x) χ_2(x)` in
    /// `Z[ζ_p]`, using only generic field operations. Reference path.
    pub fn raw_sum_naive(&self, t: FieldElement) -> CycInt {
        let f = self.field;
        let n = self.params.n();
        let mut acc = CycInt::zero(f.p());
        for x in f.elements() {
            let chi = f.chi2(x);
            if chi == 0 {
                continue;
            }
            let arg = f.add(f.pow(x, n), f.mul(t, x));
            let term = self.chars.psi(arg).scale(&BigInt::from(chi));
            acc = &acc + &term;
        }
        acc
    }

    /// `T(t) = -S(t)/A = -S(t)·conj(A)/#L`.
    pub fn normalized_from_raw(&self, t: FieldElement, raw: &CycInt) -> Result<TraceValue> {
        let numerator = -(raw * &self.conj_a);
        let numerator = numerator.as_rational().ok_or_else(|| Error::NonRationalTrace {
            t_index: self.field.index(t),
            field: self.field.descriptor().to_string(),
        })?;
        Ok(TraceValue {
            numerator,
            denominator: BigInt::from(self.field.order()),
        })
    }

    pub fn normalized_trace(&self, t: FieldElement) -> Result<TraceValue> {
        self.normalized_from_raw(t, &self.raw_sum(t))
    }

    /// `T(t)` for every `t`, in element-index order. Work is split over the
    /// rayon pool; each worker owns its bucket buffer and writes a disjoint
    /// slot, so the result does not depend on the thread count.
    pub fn all_traces(&self) -> Result<Vec<TraceValue>> {
        use rayon::prelude::*;
        let p = self.field.p() as usize;
        (0..self.field.order())
            .into_par_iter()
            .map_init(
                || vec![0i64; p],
                |counts, index| {
                    let t = self.field.from_index(index);
                    self.bucket_counts(t, counts);
                    let raw = CycInt::from_exponent_counts(p as u32, counts);
                    self.normalized_from_raw(t, &raw)
                },
            )
            .collect()
    }

    /// Whether `-S(t)·conj(A)` is fixed by complex conjugation.
    pub fn is_real(&self, t: FieldElement) -> bool {
        let v = -(&self.raw_sum(t) * &self.conj_a);
        v.conj() == v
    }
}

/// `S(t)` for a single `t` (convenience wrapper building an engine).
pub fn raw_sum(params: &SystemParams, field: &Field, t: FieldElement) -> Result<CycInt> {
    let ctx = params.context()?;
    let engine = TraceEngine::new(params, &ctx, field)?;
    Ok(engine.raw_sum(t))
}

pub fn normalized_trace(params: &SystemParams, field: &Field, t: FieldElement) -> Result<TraceValue> {
    let ctx = params.context()?;
    let engine = TraceEngine::new(params, &ctx, field)?;
    engine.normalized_trace(t)
}

/// `Σ_t S(t)`, which vanishes by orthogonality of `ψ`.
pub fn raw_sum_total(engine: &TraceEngine<'_>) -> CycInt {
    engine
        .field()
        .elements()
        .fold(CycInt::zero(engine.field().p()), |acc, t| &acc + &engine.raw_sum(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(p: u32, f: u32, d: u32) -> (SystemParams, CharacterContext, Field) {
        let params = SystemParams::new(p, f).unwrap();
        let ctx = params.context().unwrap();
        let field = Field::new(p as u64, d).unwrap();
        (params, ctx, field)
    }

    #[test]
    fn raw_sum_f3_t0() {
        let (params, ctx, f3) = setup(3, 1, 1);
        let e = TraceEngine::new(&params, &ctx, &f3).unwrap();
        let s = e.raw_sum(f3.zero());
        assert_eq!(s, &CycInt::zeta_pow(3, 1) - &CycInt::zeta_pow(3, 2));
        let t = e.normalized_trace(f3.zero()).unwrap();
        assert_eq!(t.as_integer(), Some(-1));
        assert_eq!(t.denominator, BigInt::from(3));
    }

    #[test]
    fn bucket_matches_naive_on_small_fields() {
        for &(p, f, d) in &[(3u32, 1u32, 1u32), (3, 1, 2), (3, 1, 3), (5, 1, 2), (3, 2, 2), (7, 1, 2)] {
            let (params, ctx, field) = setup(p, f, d);
            let e = TraceEngine::new(&params, &ctx, &field).unwrap();
            for t in field.elements() {
                assert_eq!(e.raw_sum(t), e.raw_sum_naive(t), "p={p} f={f} d={d}");
            }
        }
    }

    #[test]
    fn sum_over_t_vanishes() {
        for &(p, d) in &[(3u32, 2u32), (3, 4), (5, 2)] {
            let (params, ctx, field) = setup(p, 1, d);
            let e = TraceEngine::new(&params, &ctx, &field).unwrap();
            assert!(raw_sum_total(&e).is_zero());
        }
    }

    #[test]
    fn traces_real_integral_and_bounded() {
        for &(p, f, d) in &[(3u32, 1u32, 1u32), (3, 1, 2), (3, 1, 4), (5, 1, 2), (3, 2, 2), (7, 1, 1)] {
            let (params, ctx, field) = setup(p, f, d);
            let e = TraceEngine::new(&params, &ctx, &field).unwrap();
            let n = params.n() as i64;
            let all = e.all_traces().unwrap();
            for (idx, v) in all.iter().enumerate() {
                let t = field.from_index(idx as u64);
                assert!(e.is_real(t));
                let val = v.as_integer().expect("integral trace");
                assert!(val.abs() <= n);
            }
        }
    }

    #[test]
    fn conj_normalization_lemma() {
        let (params, ctx, field) = setup(3, 1, 3);
        let e = TraceEngine::new(&params, &ctx, &field).unwrap();
        assert_eq!(e.conj_normalization(), &e.normalization().conj());
        let order = BigInt::from(field.order());
        assert_eq!((e.normalization() * e.conj_normalization()).as_rational(), Some(order));
    }

    #[test]
    fn rejects_wrong_characteristic() {
        let params = SystemParams::new(3, 1).unwrap();
        let ctx = params.context().unwrap();
        let f5 = Field::new(5, 1).unwrap();
        assert!(TraceEngine::new(&params, &ctx, &f5).is_err());
    }
}
