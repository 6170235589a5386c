//! Affine point counts `N_L(t) = #{(x, y) ∈ L^2 : f(x, y) = t}` for
//! `f = xy(x+y) Π_{h ∈ P_f} h(x, y)^2`, and the third-moment sum rebuilt
//! from them.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::identity::verify_identity_grouped;
use crate::characters::gauss_sum;
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor, FieldElement};
use crate::rational;
use crate::trace_lab::SystemParams;

pub const DEFAULT_CURVE_BUDGET: u64 = 4096;

/// Coefficients over `F_p` (as integers, lowest degree first) of
/// `F(u) = f(u, 1) = u(u+1) Π h(u, 1)^2`.
pub fn dehomogenized_form(q: u64) -> Result<Vec<i64>> {
    let grouped = verify_identity_grouped(q)?;
    let p = grouped.p as i64;
    let mul = |a: &[i64], b: &[i64]| {
        let mut out = vec![0i64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        out
    };
    let mut poly = vec![0, 1];
    poly = mul(&poly, &[1, 1]);
    for h in &grouped.factors {
        let c: Vec<i64> = h.coefficients.iter().map(|&x| x as i64).collect();
        poly = mul(&poly, &mul(&c, &c));
    }
    Ok(poly)
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveCount {
    pub params: SystemParams,
    pub degree: u32,
    pub field: FieldDescriptor,
    /// `N_L(t)` indexed by the element index of `t`.
    pub counts: Vec<u64>,
}

impl CurveCount {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t_index,count\n");
        for (i, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{i},{c}\n"));
        }
        out
    }
}

/// `f(x, y) = y^n F(x/y)` for `y ≠ 0`, and `0` on `y = 0`.
struct FormEvaluator<'a> {
    field: &'a Field,
    n: u64,
    /// `F(u)` indexed by `log u`, and `F(0)`.
    by_log: Vec<FieldElement>,
    at_zero: FieldElement,
}

impl<'a> FormEvaluator<'a> {
    fn new(field: &'a Field, coeffs: &[i64], n: u64) -> Self {
        FormEvaluator {
            field,
            n,
            by_log: field.nonzero_elements().map(|u| field.eval_int_poly(coeffs, u)).collect(),
            at_zero: field.eval_int_poly(coeffs, field.zero()),
        }
    }

    fn eval(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let f = self.field;
        let Some(_) = y.log() else {
            return f.zero();
        };
        let u = f.div(x, y).expect("y != 0");
        let fu = match u.log() {
            None => self.at_zero,
            Some(l) => self.by_log[l as usize],
        };
        f.mul(f.pow(y, self.n), fu)
    }
}

pub fn count_points(params: &SystemParams, degree: u32, budget: u64) -> Result<CurveCount> {
    let size = params.extension_order(degree).unwrap_or(u64::MAX);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let field = Field::new(params.p as u64, params.absolute_degree(degree))?;
    let coeffs = dehomogenized_form(params.q())?;
    let eval = FormEvaluator::new(&field, &coeffs, params.n());
    let order = field.order() as usize;
    let counts = (0..field.order())
        .into_par_iter()
        .fold(
            || vec![0u64; order],
            |mut hist, yi| {
                let y = field.from_index(yi);
                for x in field.elements() {
                    hist[field.index(eval.eval(x, y)) as usize] += 1;
                }
                hist
            },
        )
        .reduce(
            || vec![0u64; order],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(CurveCount {
        params: params.clone(),
        degree,
        field: field.descriptor().clone(),
        counts,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ModifiedMoment {
    /// `Σ_{t ≠ 0} ψ(t) χ_2(-t) N_L(t)`.
    pub weighted_sum: CycInt,
    #[serde(serialize_with = "rational::serialize")]
    pub value: BigRational,
    pub is_real: bool,
}

/// `(χ_2(-1)/g)^3 Σ_{t ≠ 0} ψ(t) χ_2(-t) N_L(t)`, computed as
/// `χ_2(-1) · W · conj(g)^3 / (#L)^3`.
pub fn modified_third_moment(counts: &CurveCount) -> Result<ModifiedMoment> {
    let params = &counts.params;
    let field = Field::new(params.p as u64, params.absolute_degree(counts.degree))?;
    let ctx = params.context()?;
    let chars = ctx.over(&field)?;
    let p = field.p();
    let mut buckets = vec![0i64; p as usize];
    for t in field.nonzero_elements() {
        let n_t = counts.counts[field.index(t) as usize] as i64;
        let chi = field.chi2(field.neg(t)) as i64;
        buckets[chars.psi_exponent(t) as usize] += chi * n_t;
    }
    let weighted_sum = CycInt::from_exponent_counts(p, &buckets);
    from_weighted_sum(&ctx, &field, weighted_sum)
}

fn from_weighted_sum(
    ctx: &crate::characters::CharacterContext,
    field: &Field,
    weighted_sum: CycInt,
) -> Result<ModifiedMoment> {
    let g = gauss_sum(ctx, field)?.value;
    let sign = BigInt::from(field.chi2(field.minus_one()));
    let numerator = (&weighted_sum * &g.conj().pow(3)).scale(&sign);
    let is_real = numerator.conj() == numerator;
    let value = numerator
        .as_rational()
        .ok_or_else(|| Error::NonRational(format!("modified third moment over {}", field.descriptor())))?;
    let order = BigInt::from(field.order());
    Ok(ModifiedMoment {
        weighted_sum,
        value: BigRational::new(value, &order * &order * &order),
        is_real,
    })
}

/// The same quantity by direct summation of `ψ(x^n + y^n + z^n) χ_2(xyz)`
/// over `x + y + z = 0` with `f(x, y) ≠ 0`, using only generic field
/// operations.
pub fn modified_third_moment_direct(params: &SystemParams, degree: u32) -> Result<ModifiedMoment> {
    let field = Field::new(params.p as u64, params.absolute_degree(degree))?;
    let ctx = params.context()?;
    let chars = ctx.over(&field)?;
    let coeffs = dehomogenized_form(params.q())?;
    let n = params.n();
    let mut acc = CycInt::zero(field.p());
    for x in field.elements() {
        for y in field.elements() {
            let fxy = if y.is_zero() {
                field.zero()
            } else {
                let u = field.div(x, y).expect("y != 0");
                field.mul(field.pow(y, n), field.eval_int_poly(&coeffs, u))
            };
            if fxy.is_zero() {
                continue;
            }
            let z = field.neg(field.add(x, y));
            let arg = field.add(field.add(field.pow(x, n), field.pow(y, n)), field.pow(z, n));
            let chi = field.chi2(field.mul(field.mul(x, y), z));
            acc = &acc + &chars.psi(arg).scale(&BigInt::from(chi));
        }
    }
    from_weighted_sum(&ctx, &field, acc)
}
