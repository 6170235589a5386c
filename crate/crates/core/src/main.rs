use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use alttrace::algebra::{
    verify_derivative_steps, verify_identity_grouped, verify_identity_split,
    wild::wild_inertia_span_with_choice,
};
use alttrace::compare::verdict;
use alttrace::config::{Format, RunConfig};
use alttrace::curves::count_points;
use alttrace::error::Result;
use alttrace::field::build_field;
use alttrace::pipeline::{groupstats_csv, header, json_with_header, run_all, trace_csv};
use alttrace::trace_lab::{cache::CACHE_DIR_ENV, moment_scan, trace_table};

#[derive(Parser)]
#[command(name = "alttrace", version, about = "Exact trace statistics and their Alt/Sym oracles")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// TOML run configuration; flags given on the command line override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    f: Option<u32>,
    /// Degree of the base field over F_p.
    #[arg(long)]
    f0: Option<u32>,
    /// Element index of the additive character multiplier in the base field.
    #[arg(long)]
    psi: Option<u64>,
    /// Largest field size for which a table is computed.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Describe the deterministic model of F_{p^d}.
    Field {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: u32,
    },
    /// Trace table over the degree-D extension of the base field.
    Traces {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        degree: u32,
    },
    /// Empirical moments for degrees 1..=D.
    Moments {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Split and grouped polynomial identity plus the one-variable steps.
    Identity {
        #[arg(long)]
        q: u64,
    },
    /// Span of the (2q-2)-th roots of unity in F_{q^2}.
    Wild {
        #[arg(long)]
        q: u64,
        /// Which primitive root to use, by increasing discrete log.
        #[arg(long, default_value_t = 0)]
        choice: usize,
    },
    /// Spectra and exact moments for Sym(m) and Alt(m).
    Groupstats {
        #[arg(long, conflicts_with = "q")]
        m: Option<u32>,
        /// Shorthand for m = 2q.
        #[arg(long)]
        q: Option<u32>,
    },
    /// Affine point counts of the level curves of the plane form.
    Curves {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        degree: u32,
    },
    /// Compare trace tables for degrees 1..=D with the group spectra.
    Compare {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Run everything and write all outputs to a directory.
    All {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long, default_value = "alttrace-out")]
        out_dir: PathBuf,
    },
}

fn build_config(common: &Common, params: Option<&ParamArgs>, max_degree: Option<u32>) -> Result<RunConfig> {
    let mut cfg = match &common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(a) = params {
        cfg.p = a.p.unwrap_or(cfg.p);
        cfg.f = a.f.unwrap_or(cfg.f);
        cfg.f0 = a.f0.unwrap_or(cfg.f0);
        cfg.psi = a.psi.unwrap_or(cfg.psi);
        cfg.budget = a.budget.unwrap_or(cfg.budget);
    }
    cfg.max_degree = max_degree.unwrap_or(cfg.max_degree);
    if common.cache_dir.is_some() {
        cfg.cache_dir = common.cache_dir.clone();
    }
    cfg.threads = common.threads.or(cfg.threads);
    cfg.format = common.format.unwrap_or(cfg.format);
    cfg.validate()?;
    Ok(cfg)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => Ok(fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Runs a subcommand; `Ok(false)` means a check ran and failed.
fn run(cli: &Cli) -> Result<bool> {
    let common = &cli.common;
    let out = common.out.as_deref();
    match &cli.command {
        Command::Field { p, d } => {
            let cfg = build_config(common, None, None)?;
            let model = build_field(*p, *d)?;
            let desc = model.descriptor();
            let text = match cfg.format {
                Format::Json => json_with_header(&header("field", &cfg, ""), desc)?,
                Format::Csv => format!(
                    "{}\np,d,order,modulus,generator_is_x,representation\n{},{},{},{},{},{}\n",
                    header("field", &cfg, ""),
                    desc.p,
                    desc.d,
                    desc.order(),
                    desc.modulus.iter().map(u32::to_string).collect::<Vec<_>>().join(" "),
                    desc.generator_is_x,
                    match model {
                        alttrace::field::FieldModel::Tabulated(_) => "zech",
                        alttrace::field::FieldModel::Polynomial(_) => "polynomial",
                    }
                ),
            };
            emit(out, &text)?;
            Ok(true)
        }
        Command::Traces { params, degree } => {
            let cfg = build_config(common, Some(params), None)?;
            let table = trace_table(&cfg.params()?, *degree, &cfg.table_options())?;
            let text = match cfg.format {
                Format::Csv => trace_csv(&cfg, &table),
                Format::Json => json_with_header(
                    &header("traces", &cfg, &format!("degree={degree}")),
                    &table.entries,
                )?,
            };
            emit(out, &text)?;
            table.integer_traces()?;
            Ok(true)
        }
        Command::Moments { params, max_degree } => {
            let cfg = build_config(common, Some(params), *max_degree)?;
            let report = moment_scan(&cfg.params()?, cfg.max_degree, &cfg.table_options())?;
            let text = match cfg.format {
                Format::Csv => format!("{}\n{}", header("moments", &cfg, ""), report.to_csv()),
                Format::Json => json_with_header(&header("moments", &cfg, ""), &report)?,
            };
            emit(out, &text)?;
            Ok(true)
        }
        Command::Identity { q } => {
            let cfg = build_config(common, None, None)?;
            let split = verify_identity_split(*q)?;
            let grouped = verify_identity_grouped(*q)?;
            let deriv = verify_derivative_steps(*q)?;
            let passed = split.passed && grouped.passed && deriv.passed;
            let text = match cfg.format {
                Format::Json => json_with_header(
                    &header("identity", &cfg, &format!("q={q}")),
                    &serde_json::json!({ "split": split, "grouped": grouped, "derivative": deriv }),
                )?,
                Format::Csv => format!(
                    "{}\n{} split: {} monomials on each side, homogeneous of degree {}\n\
                     {} grouped: |P_f| = {} (expected {}), degree sum {}, irreducible {}, descends {}\n\
                     {} derivative: P vanishes on F_q {}, P'(alpha) = 0 {}, double roots {}, deg P = {} = deg RHS {}\n\
                     {}\n",
                    header("identity", &cfg, &format!("q={q}")),
                    status(split.passed),
                    split.lhs_terms,
                    split.n,
                    status(grouped.passed),
                    grouped.p_f_size,
                    grouped.expected_p_f_size,
                    grouped.degree_sum,
                    grouped.all_irreducible,
                    grouped.product_descends,
                    status(deriv.passed),
                    deriv.vanishes_on_field,
                    deriv.derivative_vanishes,
                    deriv.double_roots,
                    deriv.degree,
                    deriv.degree_matches_rhs,
                    status(passed)
                ),
            };
            emit(out, &text)?;
            Ok(passed)
        }
        Command::Wild { q, choice } => {
            let cfg = build_config(common, None, None)?;
            let r = wild_inertia_span_with_choice(*q, *choice)?;
            let text = match cfg.format {
                Format::Json => json_with_header(&header("wild", &cfg, &format!("q={q}")), &r)?,
                Format::Csv => format!(
                    "{}\nfield {}, zeta = g^{}\nspan dimension {} (expected {}), trace zero {}, F_q + zeta F_q direct {}, containments {} {}\n{}\n",
                    header("wild", &cfg, &format!("q={q}")),
                    r.field,
                    r.zeta_log,
                    r.dimension,
                    r.expected_dimension,
                    r.trace_zero,
                    r.direct_sum,
                    r.span_in_decomposition,
                    r.decomposition_in_span,
                    status(r.passed)
                ),
            };
            emit(out, &text)?;
            Ok(r.passed)
        }
        Command::Groupstats { m, q } => {
            let cfg = build_config(common, None, None)?;
            let m = match (m, q) {
                (Some(m), _) => *m,
                (None, Some(q)) => 2 * q,
                (None, None) => 2 * cfg.params()?.q() as u32,
            };
            emit(out, &groupstats_csv(&cfg, m)?)?;
            Ok(true)
        }
        Command::Curves { params, degree } => {
            let cfg = build_config(common, Some(params), None)?;
            let counts = count_points(&cfg.params()?, *degree, cfg.curve_budget)?;
            let h = header("curves", &cfg, &format!("degree={degree} field={}", counts.field));
            let text = match cfg.format {
                Format::Csv => format!("{h}\n{}", counts.to_csv()),
                Format::Json => json_with_header(&h, &counts)?,
            };
            emit(out, &text)?;
            Ok(true)
        }
        Command::Compare { params, max_degree } => {
            let cfg = build_config(common, Some(params), *max_degree)?;
            let report = verdict(&cfg.params()?, cfg.max_degree, &cfg.thresholds, &cfg.table_options())?;
            eprint!("{}", report.summary());
            emit(out, &json_with_header(&header("compare", &cfg, ""), &report)?)?;
            Ok(report.passed)
        }
        Command::All {
            params,
            max_degree,
            out_dir,
        } => {
            let cfg = build_config(common, Some(params), *max_degree)?;
            let result = run_all(&cfg)?;
            result.write_to(out_dir)?;
            print!("{}", result.files["summary.txt"]);
            Ok(result.passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.common.threads;
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = threads {
            b = b.num_threads(n);
        }
        b.build()
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is_falsification() => {
            eprintln!("falsified: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
