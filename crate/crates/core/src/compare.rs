//! Empirical trace tables against the exact group spectra: membership,
//! total-variation distance, and third-moment convergence.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{build_stats, spectrum, Regime, SpectrumTable, Twist};
use crate::rational::{self, to_f64};
use crate::trace_lab::{third_moment_target, trace_table, MomentRow, SystemParams, TableOptions, TraceTable};

/// Which coset the Frobenii of a degree-`D` extension occupy, and hence
/// which spectrum their traces follow.
pub fn regime_for(params: &SystemParams, degree: u32) -> (Regime, Twist) {
    if params.minus_one_is_square() || degree % 2 == 0 {
        (Regime::Alt, Twist::Plain)
    } else {
        (Regime::OddCoset, Twist::Sign)
    }
}

pub fn oracle_spectrum(params: &SystemParams, degree: u32) -> Result<SpectrumTable> {
    let stats = build_stats(params.group_degree())?;
    let (regime, twist) = regime_for(params, degree);
    Ok(spectrum(&stats, regime, twist))
}

#[derive(Clone, Debug, Serialize)]
pub struct Membership {
    pub total: u64,
    pub members: u64,
    pub rate: f64,
    /// `(t_index, value)` for traces outside the spectrum.
    pub offenders: Vec<(u64, i64)>,
}

impl Membership {
    pub fn complete(&self) -> bool {
        self.members == self.total
    }
}

pub fn spectrum_membership(table: &TraceTable, oracle: &SpectrumTable) -> Result<Membership> {
    let values = table.integer_traces()?;
    let offenders: Vec<(u64, i64)> = values
        .iter()
        .enumerate()
        .filter(|(_, v)| !oracle.contains(**v))
        .map(|(i, &v)| (i as u64, v))
        .collect();
    let total = values.len() as u64;
    let members = total - offenders.len() as u64;
    Ok(Membership {
        total,
        members,
        rate: if total == 0 { 1.0 } else { members as f64 / total as f64 },
        offenders,
    })
}

/// `½ Σ_v |freq(v) - prob(v)|` over the union of supports.
pub fn distribution_distance(table: &TraceTable, oracle: &SpectrumTable) -> Result<BigRational> {
    let hist = table.histogram()?;
    let n = BigInt::from(table.entries.len() as u64);
    let support: BTreeSet<i64> = hist.keys().copied().chain(oracle.support()).collect();
    let mut total = BigRational::zero();
    for v in support {
        let freq = BigRational::new(BigInt::from(hist.get(&v).copied().unwrap_or(0)), n.clone());
        total += (freq - oracle.probability(v)).abs();
    }
    Ok(total / BigRational::from_integer(BigInt::from(2)))
}

/// Engineering tolerances for the asymptotic checks. They apply only to
/// fields with at least `min_field_size` elements.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Thresholds {
    pub tv_max: f64,
    pub m3_tolerance: f64,
    pub min_field_size: u64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            tv_max: 0.05,
            m3_tolerance: 0.2,
            min_field_size: 2187,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictRow {
    pub degree: u32,
    pub field_size: u64,
    pub parity: &'static str,
    pub regime: Regime,
    pub twist: Twist,
    pub membership: Membership,
    #[serde(serialize_with = "rational::serialize")]
    pub tv_distance: BigRational,
    pub tv_distance_f64: f64,
    #[serde(serialize_with = "rational::serialize")]
    pub m2: BigRational,
    #[serde(serialize_with = "rational::serialize")]
    pub m3: BigRational,
    pub m3_target: i64,
    pub m2_deviation: f64,
    pub m3_deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictReport {
    pub params: SystemParams,
    pub max_degree: u32,
    pub thresholds: Thresholds,
    pub rows: Vec<VerdictRow>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerdictRow {
    pub fn from_table(table: &TraceTable) -> Result<VerdictRow> {
        let oracle = oracle_spectrum(&table.params, table.degree)?;
        let membership = spectrum_membership(table, &oracle)?;
        let tv = distribution_distance(table, &oracle)?;
        let moments = MomentRow::from_table(table)?;
        Ok(VerdictRow {
            degree: table.degree,
            field_size: table.field_size(),
            parity: moments.parity,
            regime: oracle.regime,
            twist: oracle.twist,
            membership,
            tv_distance_f64: to_f64(&tv),
            tv_distance: tv,
            m2: moments.m2,
            m3: moments.m3,
            m3_target: third_moment_target(&table.params, table.degree),
            m2_deviation: moments.m2_deviation,
            m3_deviation: moments.m3_deviation,
        })
    }
}

fn assess(rows: &[VerdictRow], t: &Thresholds) -> Vec<Check> {
    let mut checks = Vec::new();
    let offenders: Vec<String> = rows
        .iter()
        .filter(|r| !r.membership.complete())
        .map(|r| format!("degree {}: {:?}", r.degree, &r.membership.offenders[..r.membership.offenders.len().min(5)]))
        .collect();
    checks.push(Check {
        name: "spectrum-membership".into(),
        passed: offenders.is_empty(),
        detail: if offenders.is_empty() {
            format!("all traces in spectrum at degrees 1..={}", rows.len())
        } else {
            offenders.join("; ")
        },
    });

    let large: Vec<&VerdictRow> = rows.iter().filter(|r| r.field_size >= t.min_field_size).collect();
    let bad_m3: Vec<String> = large
        .iter()
        .filter(|r| r.m3_deviation > t.m3_tolerance)
        .map(|r| format!("degree {}: |M3 - {}| = {:.4}", r.degree, r.m3_target, r.m3_deviation))
        .collect();
    checks.push(Check {
        name: "third-moment".into(),
        passed: bad_m3.is_empty(),
        detail: if bad_m3.is_empty() {
            format!("{} degree(s) with #L >= {} within {}", large.len(), t.min_field_size, t.m3_tolerance)
        } else {
            bad_m3.join("; ")
        },
    });

    if let Some(last) = rows.last().filter(|r| r.field_size >= t.min_field_size) {
        checks.push(Check {
            name: "tv-distance".into(),
            passed: last.tv_distance_f64 <= t.tv_max,
            detail: format!("degree {}: {:.4} (max {})", last.degree, last.tv_distance_f64, t.tv_max),
        });
        let first = &rows[0];
        checks.push(Check {
            name: "tv-decrease".into(),
            passed: last.tv_distance < first.tv_distance,
            detail: format!(
                "degree {}: {:.4} vs degree {}: {:.4}",
                last.degree, last.tv_distance_f64, first.degree, first.tv_distance_f64
            ),
        });
    }
    checks
}

pub fn verdict_from_tables(tables: &[TraceTable], thresholds: &Thresholds) -> Result<VerdictReport> {
    let first = tables
        .first()
        .ok_or_else(|| Error::InvalidArgument("no trace tables".into()))?;
    let rows = tables.iter().map(VerdictRow::from_table).collect::<Result<Vec<_>>>()?;
    let checks = assess(&rows, thresholds);
    Ok(VerdictReport {
        params: first.params.clone(),
        max_degree: tables.last().map_or(0, |t| t.degree),
        thresholds: thresholds.clone(),
        passed: checks.iter().all(|c| c.passed),
        rows,
        checks,
    })
}

pub fn verdict(
    params: &SystemParams,
    max_degree: u32,
    thresholds: &Thresholds,
    opts: &TableOptions,
) -> Result<VerdictReport> {
    let tables = (1..=max_degree)
        .map(|d| trace_table(params, d, opts))
        .collect::<Result<Vec<_>>>()?;
    verdict_from_tables(&tables, thresholds)
}

impl VerdictReport {
    pub fn summary(&self) -> String {
        let mut out = format!(
            "{:>6} {:>9} {:>6} {:>9} {:>6} {:>10} {:>10} {:>10} {:>7}\n",
            "degree", "#L", "parity", "regime", "twist", "member", "tv", "m3", "target"
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{:>6} {:>9} {:>6} {:>9} {:>6} {:>10.4} {:>10.4} {:>10.4} {:>7}\n",
                r.degree,
                r.field_size,
                r.parity,
                r.regime.to_string(),
                r.twist.to_string(),
                r.membership.rate,
                r.tv_distance_f64,
                to_f64(&r.m3),
                r.m3_target
            ));
        }
        for c in &self.checks {
            out.push_str(&format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
        }
        out.push_str(if self.passed { "verdict: PASS\n" } else { "verdict: FAIL\n" });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace_lab::TableOptions;

    #[test]
    fn regimes() {
        let f3 = SystemParams::new(3, 1).unwrap();
        assert_eq!(regime_for(&f3, 1), (Regime::OddCoset, Twist::Sign));
        assert_eq!(regime_for(&f3, 2), (Regime::Alt, Twist::Plain));
        let f5 = SystemParams::new(5, 1).unwrap();
        assert!((1..=5).all(|d| regime_for(&f5, d) == (Regime::Alt, Twist::Plain)));
    }

    #[test]
    fn distance_extremes() {
        let params = SystemParams::new(3, 1).unwrap();
        let table = trace_table(&params, 1, &TableOptions::default()).unwrap();
        let hist = table.histogram().unwrap();
        let matching = SpectrumTable {
            regime: Regime::Alt,
            twist: Twist::Plain,
            probabilities: hist
                .iter()
                .map(|(&v, &c)| (v, rational::ratio(c, table.entries.len() as u64)))
                .collect(),
        };
        assert!(distribution_distance(&table, &matching).unwrap().is_zero());
        let disjoint = SpectrumTable {
            regime: Regime::Alt,
            twist: Twist::Plain,
            probabilities: [(100, rational::ratio(1, 1))].into_iter().collect(),
        };
        assert_eq!(distribution_distance(&table, &disjoint).unwrap(), rational::ratio(1, 1));
        let m = spectrum_membership(&table, &disjoint).unwrap();
        assert_eq!((m.members, m.offenders.len()), (0, 3));
    }

    #[test]
    fn small_verdict_rows() {
        let params = SystemParams::new(3, 1).unwrap();
        let r = verdict(&params, 4, &Thresholds::default(), &TableOptions::default()).unwrap();
        assert_eq!(r.rows.len(), 4);
        assert!(r.rows.iter().all(|row| row.membership.complete()));
        assert!(r.rows.iter().all(|row| (0.0..=1.0).contains(&row.tv_distance_f64)));
        // No field reaches the size threshold: only membership and the empty
        // third-moment check are assessed.
        assert_eq!(r.checks.len(), 2);
        assert!(r.passed);
        assert!(r.summary().ends_with("verdict: PASS\n"));
    }
}
