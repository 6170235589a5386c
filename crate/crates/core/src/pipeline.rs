//! The full run for one parameter set: trace tables, moments, group
//! spectra, identities, span checks, curve counts, and the verdict, rendered
//! as a set of named output files.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::algebra::{
    verify_derivative_steps, verify_identity_grouped, verify_identity_split, wild_inertia_span,
};
use crate::characters::{gauss_sum, hasse_davenport_check};
use crate::compare::{regime_for, verdict_from_tables, Check, VerdictReport};
use crate::config::RunConfig;
use crate::curves::{count_points, modified_third_moment};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::{build_stats, exact_moment, spectrum, Regime, Twist};
use crate::rational::{self, to_f64};
use crate::trace_lab::{cache, moment_of_table, trace_table, MomentReport, MomentRow, TraceTable};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// First line of every output file.
pub fn header(command: &str, cfg: &RunConfig, extra: &str) -> String {
    let mut line = format!("# alttrace {VERSION} {command} {}", cfg.describe());
    if !extra.is_empty() {
        line.push(' ');
        line.push_str(extra);
    }
    line
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    comment: &'a str,
    report: &'a T,
}

/// Pretty JSON whose first field is the header comment.
pub fn json_with_header<T: Serialize>(header: &str, report: &T) -> Result<String> {
    let env = Envelope {
        comment: header.trim_start_matches("# "),
        report,
    };
    let mut s = serde_json::to_string_pretty(&env).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Traces in lowest terms, one row per `t` in element-index order.
pub fn trace_csv(cfg: &RunConfig, table: &TraceTable) -> String {
    let mut out = header("traces", cfg, &format!("degree={} field={}", table.degree, table.field));
    out.push('\n');
    out.push_str(cache::CSV_HEADER);
    out.push('\n');
    for (i, v) in table.entries.iter().enumerate() {
        let r = v.to_rational();
        out.push_str(&format!("{i},{},{},{}\n", r.numer(), r.denom(), r.is_integer()));
    }
    out
}

/// Spectra of all four regime/twist pairs and the exact moments `1..=6`.
pub fn groupstats_csv(cfg: &RunConfig, m: u32) -> Result<String> {
    let stats = build_stats(m)?;
    let mut out = header("groupstats", cfg, &format!("m={m}"));
    out.push('\n');
    for (regime, twist) in [
        (Regime::Alt, Twist::Plain),
        (Regime::Alt, Twist::Sign),
        (Regime::OddCoset, Twist::Plain),
        (Regime::OddCoset, Twist::Sign),
    ] {
        out.push_str(&format!("# spectrum regime={regime} twist={twist}\n"));
        out.push_str(&spectrum(&stats, regime, twist).to_csv());
    }
    out.push_str("# moments\nregime,twist,power,moment_num,moment_den\n");
    for regime in [Regime::Alt, Regime::OddCoset, Regime::Sym] {
        for twist in [Twist::Plain, Twist::Sign] {
            for power in 1..=6 {
                let v = exact_moment(&stats, regime, twist, power)?;
                out.push_str(&format!("{regime},{twist},{power},{},{}\n", v.numer(), v.denom()));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveRow {
    pub degree: u32,
    pub field_size: u64,
    pub fiber_sum_ok: bool,
    #[serde(serialize_with = "rational::serialize")]
    pub modified: num_rational::BigRational,
    #[serde(serialize_with = "rational::serialize")]
    pub empirical: num_rational::BigRational,
    pub difference: f64,
    pub bound: f64,
    pub within_bound: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GaussRow {
    pub degree: u32,
    pub field_size: u64,
    pub norm_ok: bool,
    pub square_ok: bool,
}

pub struct PipelineOutput {
    pub files: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub verdict: VerdictReport,
    pub passed: bool,
}

impl PipelineOutput {
    pub fn summary(&self) -> String {
        let mut out = self.verdict.summary();
        for c in &self.checks {
            out.push_str(&format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
        }
        out.push_str(if self.passed { "overall: PASS\n" } else { "overall: FAIL\n" });
        out
    }

    pub fn write_to(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        for (name, contents) in &self.files {
            fs::write(dir.join(name), contents)?;
        }
        Ok(())
    }
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check {
        name: name.into(),
        passed,
        detail,
    }
}

pub fn run_all(cfg: &RunConfig) -> Result<PipelineOutput> {
    cfg.validate()?;
    let params = cfg.params()?;
    let q = params.q();
    let opts = cfg.table_options();
    let mut files = BTreeMap::new();
    let mut checks = Vec::new();

    let tables = (1..=cfg.max_degree)
        .map(|d| trace_table(&params, d, &opts))
        .collect::<Result<Vec<_>>>()?;
    for t in &tables {
        files.insert(format!("traces_d{:02}.csv", t.degree), trace_csv(cfg, t));
    }
    let integral: Vec<u32> = tables.iter().filter(|t| !t.all_integral()).map(|t| t.degree).collect();
    checks.push(check(
        "integrality",
        integral.is_empty(),
        if integral.is_empty() {
            format!("{} traces, all integers", tables.iter().map(|t| t.entries.len()).sum::<usize>())
        } else {
            format!("non-integral traces at degrees {integral:?}")
        },
    ));

    let moments = MomentReport {
        params: params.clone(),
        rows: tables.iter().map(MomentRow::from_table).collect::<Result<_>>()?,
    };
    files.insert(
        "moments.csv".into(),
        format!("{}\n{}", header("moments", cfg, ""), moments.to_csv()),
    );

    files.insert("groupstats.csv".into(), groupstats_csv(cfg, params.group_degree())?);

    let verdict = verdict_from_tables(&tables, &cfg.thresholds)?;
    files.insert("verdict.json".into(), json_with_header(&header("compare", cfg, ""), &verdict)?);

    // Gauss sums over every field used, and Hasse–Davenport along the tower.
    let ctx = params.context()?;
    let mut gauss_rows = Vec::new();
    for d in 1..=cfg.max_degree {
        let field = Field::new(params.p as u64, params.absolute_degree(d))?;
        let g = gauss_sum(&ctx, &field)?.value;
        let order = num_bigint::BigInt::from(field.order());
        let chi = num_bigint::BigInt::from(field.chi2(field.minus_one()));
        gauss_rows.push(GaussRow {
            degree: d,
            field_size: field.order(),
            norm_ok: (&g * &g.conj()).as_rational() == Some(order.clone()),
            square_ok: (&g * &g).as_rational() == Some(chi * order),
        });
    }
    let degrees: Vec<u32> = (1..=cfg.max_degree).collect();
    let hd = hasse_davenport_check(&ctx, params.n(), &degrees)?;
    checks.push(check(
        "gauss-sums",
        gauss_rows.iter().all(|r| r.norm_ok && r.square_ok) && hd.all_equal(),
        format!("g conj(g) = #L, g^2 = chi(-1)#L, Hasse-Davenport at degrees 1..={}", cfg.max_degree),
    ));

    let split = verify_identity_split(q)?;
    let grouped = verify_identity_grouped(q)?;
    let deriv = verify_derivative_steps(q)?;
    checks.push(check(
        "identity",
        split.passed && grouped.passed && deriv.passed,
        format!(
            "q={q}: split and grouped forms agree, |P_f|={}, deg P={}",
            grouped.p_f_size, deriv.degree
        ),
    ));
    #[derive(Serialize)]
    struct IdentityBundle<'a> {
        split: &'a crate::algebra::IdentityReport,
        grouped: &'a crate::algebra::GroupedIdentityReport,
        derivative: &'a crate::algebra::DerivativeReport,
    }
    files.insert(
        "identity.json".into(),
        json_with_header(
            &header("identity", cfg, &format!("q={q}")),
            &IdentityBundle {
                split: &split,
                grouped: &grouped,
                derivative: &deriv,
            },
        )?,
    );

    let wild = wild_inertia_span(q)?;
    checks.push(check(
        "wild-inertia",
        wild.passed,
        format!("span dim {} (expected {})", wild.dimension, wild.expected_dimension),
    ));
    files.insert("wild.json".into(), json_with_header(&header("wild", cfg, &format!("q={q}")), &wild)?);

    let mut curve_rows = Vec::new();
    for t in tables.iter().filter(|t| t.field_size() <= cfg.curve_budget) {
        let counts = count_points(&params, t.degree, cfg.curve_budget)?;
        files.insert(
            format!("curves_d{:02}.csv", t.degree),
            format!(
                "{}\n{}",
                header("curves", cfg, &format!("degree={} field={}", t.degree, t.field)),
                counts.to_csv()
            ),
        );
        let modified = modified_third_moment(&counts)?.value;
        let empirical = moment_of_table(t, 3)?;
        let difference = to_f64(&rational::abs_diff(&modified, &empirical));
        let bound = q as f64 / (t.field_size() as f64).sqrt();
        curve_rows.push(CurveRow {
            degree: t.degree,
            field_size: t.field_size(),
            fiber_sum_ok: counts.total() == t.field_size() * t.field_size(),
            modified,
            empirical,
            difference,
            bound,
            within_bound: difference <= bound,
        });
    }
    let mut curve_csv = header("curves", cfg, "");
    curve_csv.push_str(
        "\ndegree,field_size,fiber_sum_ok,modified,empirical_m3,difference,bound,within_bound\n",
    );
    for r in &curve_rows {
        curve_csv.push_str(&format!(
            "{},{},{},{},{},{:.6},{:.6},{}\n",
            r.degree,
            r.field_size,
            r.fiber_sum_ok,
            rational::format(&r.modified),
            rational::format(&r.empirical),
            r.difference,
            r.bound,
            r.within_bound
        ));
    }
    files.insert("curve_moments.csv".into(), curve_csv);
    checks.push(check(
        "curves",
        curve_rows.iter().all(|r| r.fiber_sum_ok && r.within_bound),
        format!("{} degree(s) within q/sqrt(#L), fiber sums exact", curve_rows.len()),
    ));

    let mut regimes = String::new();
    for d in 1..=cfg.max_degree {
        let (r, t) = regime_for(&params, d);
        regimes.push_str(&format!("{d}:{r}/{t} "));
    }
    let passed = verdict.passed && checks.iter().all(|c| c.passed);
    let mut out = PipelineOutput {
        files,
        checks,
        verdict,
        passed,
    };
    let summary = format!(
        "{}\n# regimes {}\n{}",
        header("all", cfg, ""),
        regimes.trim_end(),
        out.summary()
    );
    out.files.insert("summary.txt".into(), summary);
    Ok(out)
}
