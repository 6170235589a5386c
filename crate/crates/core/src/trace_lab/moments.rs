//! Empirical moments `(1/#L) Σ_t T(t)^m`.
//!
//! `m ≤ 4`; the fourth moment has no theoretical target here and is only
//! reported for diagnostics.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, to_f64};

use super::params::SystemParams;
use super::table::{trace_table, TableOptions, TraceTable};

pub const MAX_MOMENT: u32 = 4;

/// Exact `(1/#L) Σ_t T(t)^m` from a table.
pub fn moment_of_table(table: &TraceTable, m: u32) -> Result<BigRational> {
    if m == 0 || m > MAX_MOMENT {
        return Err(Error::InvalidArgument(format!("moment power {m} outside 1..=4")));
    }
    let order = BigInt::from(table.field_size());
    let mut acc = BigRational::from_integer(BigInt::from(0));
    for v in &table.entries {
        acc += v.to_rational().pow(m as i32);
    }
    Ok(acc / BigRational::from_integer(order))
}

pub fn empirical_moment(
    params: &SystemParams,
    degree: u32,
    m: u32,
    opts: &TableOptions,
) -> Result<BigRational> {
    moment_of_table(&trace_table(params, degree, opts)?, m)
}

/// Third-moment target by coset: `+1` when the Frobenii of degree-`D`
/// extensions fall in `Alt(2q)`, `-1` for the odd coset of `Sym(2q)`.
pub fn third_moment_target(params: &SystemParams, degree: u32) -> i64 {
    if params.minus_one_is_square() || degree % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentRow {
    pub degree: u32,
    pub field_size: u64,
    pub parity: &'static str,
    #[serde(serialize_with = "rational::serialize")]
    pub m1: BigRational,
    #[serde(serialize_with = "rational::serialize")]
    pub m2: BigRational,
    #[serde(serialize_with = "rational::serialize")]
    pub m3: BigRational,
    #[serde(serialize_with = "rational::serialize")]
    pub m4: BigRational,
    pub m3_target: i64,
    pub m2_deviation: f64,
    pub m3_deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentReport {
    pub params: SystemParams,
    pub rows: Vec<MomentRow>,
}

impl MomentRow {
    pub fn from_table(table: &TraceTable) -> Result<MomentRow> {
        let m: Vec<BigRational> = (1..=MAX_MOMENT)
            .map(|k| moment_of_table(table, k))
            .collect::<Result<_>>()?;
        let target = third_moment_target(&table.params, table.degree);
        let one = BigRational::one();
        let target_r = BigRational::from_integer(BigInt::from(target));
        Ok(MomentRow {
            degree: table.degree,
            field_size: table.field_size(),
            parity: if table.degree % 2 == 0 { "even" } else { "odd" },
            m2_deviation: to_f64(&rational::abs_diff(&m[1], &one)),
            m3_deviation: to_f64(&rational::abs_diff(&m[2], &target_r)),
            m1: m[0].clone(),
            m2: m[1].clone(),
            m3: m[2].clone(),
            m4: m[3].clone(),
            m3_target: target,
        })
    }
}

impl MomentReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "degree,field_size,parity,m1,m2,m3,m4,m3_target,m2_deviation,m3_deviation\n",
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{:.6},{:.6}\n",
                r.degree,
                r.field_size,
                r.parity,
                rational::format(&r.m1),
                rational::format(&r.m2),
                rational::format(&r.m3),
                rational::format(&r.m4),
                r.m3_target,
                r.m2_deviation,
                r.m3_deviation
            ));
        }
        out
    }
}

pub fn moment_scan(params: &SystemParams, max_degree: u32, opts: &TableOptions) -> Result<MomentReport> {
    let rows = (1..=max_degree)
        .map(|d| MomentRow::from_table(&trace_table(params, d, opts)?))
        .collect::<Result<_>>()?;
    Ok(MomentReport {
        params: params.clone(),
        rows,
    })
}
