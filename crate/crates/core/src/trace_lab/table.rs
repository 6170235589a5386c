use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor, DEFAULT_TABLE_THRESHOLD};

use super::cache;
use super::engine::{TraceEngine, TraceValue};
use super::params::SystemParams;

#[derive(Clone, Debug)]
pub struct TableOptions {
    /// Largest `#L` a table may be computed for.
    pub budget: u64,
    pub cache_dir: Option<PathBuf>,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            budget: DEFAULT_TABLE_THRESHOLD,
            cache_dir: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Strategy {
    BucketCount,
    Cached,
}

#[derive(Clone, Debug)]
pub struct TableMetadata {
    pub wall_time: Duration,
    pub strategy: Strategy,
    pub cache_path: Option<PathBuf>,
}

/// `T(t)` for every `t` in the degree-`D` extension of `k`, indexed by the
/// element index of `t`.
#[derive(Clone, Debug)]
pub struct TraceTable {
    pub params: SystemParams,
    pub degree: u32,
    pub field: FieldDescriptor,
    pub entries: Vec<TraceValue>,
    pub metadata: TableMetadata,
}

impl TraceTable {
    pub fn field_size(&self) -> u64 {
        self.field.order()
    }

    pub fn all_integral(&self) -> bool {
        self.entries.iter().all(TraceValue::is_integer)
    }

    /// Integer traces, or the first non-integral entry as an error.
    pub fn integer_traces(&self) -> Result<Vec<i64>> {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.as_integer().ok_or_else(|| {
                    Error::CheckFailed(format!(
                        "non-integral trace {}/{} at t_index={i} over {}",
                        v.numerator, v.denominator, self.field
                    ))
                })
            })
            .collect()
    }

    /// Value → number of `t` attaining it.
    pub fn histogram(&self) -> Result<BTreeMap<i64, u64>> {
        let mut h = BTreeMap::new();
        for v in self.integer_traces()? {
            *h.entry(v).or_insert(0) += 1;
        }
        Ok(h)
    }

    /// Cache-file rendering (deterministic; no timing data).
    pub fn render(&self) -> String {
        cache::render(&self.params, self.degree, &self.field, &self.entries)
    }
}

/// Compute (or load from cache) the trace table over the degree-`degree`
/// extension of `k`.
pub fn trace_table(params: &SystemParams, degree: u32, opts: &TableOptions) -> Result<TraceTable> {
    let start = Instant::now();
    if degree == 0 {
        return Err(Error::InvalidArgument("degree must be >= 1".into()));
    }
    let size = params.extension_order(degree).unwrap_or(u64::MAX);
    if size > opts.budget {
        return Err(Error::BudgetExceeded {
            size,
            budget: opts.budget,
        });
    }
    let field = Field::new(params.p as u64, params.absolute_degree(degree))?;
    let desc = field.descriptor().clone();

    let path = opts
        .cache_dir
        .as_ref()
        .map(|dir| cache::cache_path(dir, params, &desc));
    if let Some(path) = path.as_ref().filter(|p| p.exists()) {
        let text = fs::read_to_string(path)?;
        let entries = cache::parse(path, &text, params, &desc)?;
        return Ok(TraceTable {
            params: params.clone(),
            degree,
            field: desc,
            entries,
            metadata: TableMetadata {
                wall_time: start.elapsed(),
                strategy: Strategy::Cached,
                cache_path: Some(path.clone()),
            },
        });
    }

    let ctx = params.context()?;
    let engine = TraceEngine::new(params, &ctx, &field)?;
    let entries = engine.all_traces()?;
    let table = TraceTable {
        params: params.clone(),
        degree,
        field: desc,
        entries,
        metadata: TableMetadata {
            wall_time: start.elapsed(),
            strategy: Strategy::BucketCount,
            cache_path: path.clone(),
        },
    };
    if let Some(path) = path {
        cache::write(&path, &table.render())?;
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_one_and_two_over_f3() {
        let params = SystemParams::new(3, 1).unwrap();
        let t1 = trace_table(&params, 1, &TableOptions::default()).unwrap();
        assert_eq!(t1.entries.len(), 3);
        // Odd degree: values in the sgn-twisted odd-coset spectrum of Sym(6).
        for v in t1.integer_traces().unwrap() {
            assert!([-3, -1, 0, 1].contains(&v), "{v}");
        }
        let t2 = trace_table(&params, 2, &TableOptions::default()).unwrap();
        assert_eq!(t2.entries.len(), 9);
        for v in t2.integer_traces().unwrap() {
            assert!([-1, 0, 1, 2, 3, 5].contains(&v), "{v}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let params = SystemParams::new(3, 1).unwrap();
        let opts = TableOptions {
            budget: 100,
            cache_dir: None,
        };
        assert!(matches!(
            trace_table(&params, 5, &opts),
            Err(Error::BudgetExceeded { size: 243, budget: 100 })
        ));
    }

    #[test]
    fn cache_round_trip_is_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let params = SystemParams::new(3, 1).unwrap();
        let opts = TableOptions {
            budget: 1 << 20,
            cache_dir: Some(dir.path().to_path_buf()),
        };
        let first = trace_table(&params, 3, &opts).unwrap();
        assert_eq!(first.metadata.strategy, Strategy::BucketCount);
        let path = first.metadata.cache_path.clone().unwrap();
        let bytes = fs::read(&path).unwrap();
        let second = trace_table(&params, 3, &opts).unwrap();
        assert_eq!(second.metadata.strategy, Strategy::Cached);
        assert_eq!(second.entries, first.entries);
        assert_eq!(fs::read(&path).unwrap(), bytes);
        assert_eq!(second.render().as_bytes(), &bytes[..]);

        // Tamper with one digit.
        let text = String::from_utf8(bytes).unwrap().replacen(",true\n", ",true \n", 1);
        fs::write(&path, text).unwrap();
        assert!(matches!(trace_table(&params, 3, &opts), Err(Error::CacheCorrupt { .. })));
    }
}
