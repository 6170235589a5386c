//! The Kummer-descent trace `s ↦ -Σ_{x ∈ L^×} ψ(x^n/s + x) χ_2(x/s)`.
//!
//! Substituting `x = y/t` in `S(t)` gives `S(t) = -descent(t^n)` for `t ≠ 0`
//! (using `χ_2(t^n) = χ_2(t)` for odd `n`), so the untwisted trace is the
//! pullback of the descent function along `t ↦ t^n`. This is checked
//! pointwise; the fiber-weighted sum of squared absolute values is the
//! weaker consistency statement.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::field::FieldElement;

use super::engine::TraceEngine;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentValue {
    pub value: CycInt,
    pub rational: Option<BigInt>,
}

pub fn descent_trace(engine: &TraceEngine<'_>, t: FieldElement) -> Result<DescentValue> {
    if t.is_zero() {
        return Err(Error::InvalidArgument("descent trace needs t != 0".into()));
    }
    let field = engine.field();
    let chars = engine.characters();
    let n = engine.params().n();
    let p = field.p() as usize;
    let mut counts = vec![0i64; p];
    let chi_t = field.chi2(t) as i64;
    for x in field.nonzero_elements() {
        let a = field.div(field.pow(x, n), t).expect("t != 0");
        let e = (chars.psi_exponent(a) + chars.psi_exponent(x)) as usize % p;
        counts[e] -= field.chi2(x) as i64 * chi_t;
    }
    let value = CycInt::from_exponent_counts(p as u32, &counts);
    let rational = value.as_rational();
    Ok(DescentValue { value, rational })
}

#[derive(Clone, Debug, Serialize)]
pub struct DescentReport {
    pub field: String,
    /// `-S(t) = descent(t^n)` for every `t ∈ L^×`.
    pub pullback_holds: bool,
    /// `Σ_{t ∈ L^×} |S(t)|^2`.
    pub lhs_energy: BigInt,
    /// `Σ_{s ∈ L^×} #{t : t^n = s} · |descent(s)|^2`.
    pub rhs_energy: BigInt,
}

impl DescentReport {
    pub fn consistent(&self) -> bool {
        self.pullback_holds && self.lhs_energy == self.rhs_energy
    }
}

pub fn descent_consistency(engine: &TraceEngine<'_>) -> Result<DescentReport> {
    let field = engine.field();
    let n = engine.params().n();
    let energy = |v: &CycInt| -> Result<BigInt> {
        (v * &v.conj())
            .as_rational()
            .ok_or_else(|| Error::NonRational(format!("|{v}|^2")))
    };

    let mut fibers: HashMap<FieldElement, u64> = HashMap::new();
    let mut pullback_holds = true;
    let mut lhs = BigInt::from(0);
    for t in field.nonzero_elements() {
        let s = field.pow(t, n);
        *fibers.entry(s).or_insert(0) += 1;
        let raw = engine.raw_sum(t);
        lhs += energy(&raw)?;
        if -raw != descent_trace(engine, s)?.value {
            pullback_holds = false;
        }
    }
    let mut rhs = BigInt::from(0);
    for s in field.nonzero_elements() {
        if let Some(&count) = fibers.get(&s) {
            rhs += energy(&descent_trace(engine, s)?.value)? * count;
        }
    }
    Ok(DescentReport {
        field: field.descriptor().to_string(),
        pullback_holds,
        lhs_energy: lhs,
        rhs_energy: rhs,
    })
}
