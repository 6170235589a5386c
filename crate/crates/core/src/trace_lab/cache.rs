//! On-disk trace tables.
//!
//! ```text
//! # alttrace <version> trace-table <params> degree=<D>
//! field p=3 d=2 modulus=[2,1,1] f0=1 psi=1 n=5
//! t_index,numerator,denominator,is_integer
//! 0,-9,9,true
//! ...
//! checksum sha256=<hex of every preceding byte>
//! ```

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::FieldDescriptor;

use super::engine::TraceValue;
use super::params::SystemParams;

pub const CACHE_DIR_ENV: &str = "ALTTRACE_CACHE_DIR";
pub const CSV_HEADER: &str = "t_index,numerator,denominator,is_integer";

pub fn comment_line(params: &SystemParams, degree: u32) -> String {
    format!(
        "# alttrace {} trace-table {params} degree={degree}",
        env!("CARGO_PKG_VERSION")
    )
}

pub fn field_line(params: &SystemParams, field: &FieldDescriptor) -> String {
    format!(
        "field {field} f0={} psi={} n={}",
        params.base_degree,
        params.psi_multiplier,
        params.n()
    )
}

/// Cache key: hash of the field line, which pins the field model, `ψ` and `n`.
pub fn cache_path(dir: &Path, params: &SystemParams, field: &FieldDescriptor) -> PathBuf {
    let digest = Sha256::digest(field_line(params, field).as_bytes());
    let key = hex::encode(&digest[..8]);
    dir.join(format!(
        "traces_p{}_f{}_k{}_d{}_{key}.csv",
        params.p, params.f, params.base_degree, field.d
    ))
}

/// CSV body without the checksum trailer.
pub fn render_rows(entries: &[TraceValue]) -> String {
    let mut out = String::with_capacity(entries.len() * 16);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for (i, v) in entries.iter().enumerate() {
        out.push_str(&format!(
            "{i},{},{},{}\n",
            v.numerator,
            v.denominator,
            v.is_integer()
        ));
    }
    out
}

pub fn render(params: &SystemParams, degree: u32, field: &FieldDescriptor, entries: &[TraceValue]) -> String {
    let mut payload = String::new();
    payload.push_str(&comment_line(params, degree));
    payload.push('\n');
    payload.push_str(&field_line(params, field));
    payload.push('\n');
    payload.push_str(&render_rows(entries));
    let sum = hex::encode(Sha256::digest(payload.as_bytes()));
    payload.push_str(&format!("checksum sha256={sum}\n"));
    payload
}

pub fn write(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(contents.as_bytes())?;
        file.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Parse and verify a cache file against the expected parameters.
pub fn parse(
    path: &Path,
    text: &str,
    params: &SystemParams,
    field: &FieldDescriptor,
) -> Result<Vec<TraceValue>> {
    let corrupt = |reason: String| Error::CacheCorrupt {
        path: path.to_path_buf(),
        reason,
    };
    let body = text.strip_suffix('\n').ok_or_else(|| corrupt("missing trailing newline".into()))?;
    let split = body.rfind('\n').ok_or_else(|| corrupt("truncated file".into()))?;
    let (payload, trailer) = (&text[..split + 1], &body[split + 1..]);
    let stored = trailer
        .strip_prefix("checksum sha256=")
        .ok_or_else(|| corrupt("missing checksum line".into()))?;
    let actual = hex::encode(Sha256::digest(payload.as_bytes()));
    if stored != actual {
        return Err(corrupt(format!("checksum mismatch: stored {stored}, computed {actual}")));
    }
    let mut lines = payload.lines();
    let _comment = lines.next().filter(|l| l.starts_with('#')).ok_or_else(|| corrupt("missing comment line".into()))?;
    let expected_field = field_line(params, field);
    match lines.next() {
        Some(l) if l == expected_field => {}
        other => {
            return Err(corrupt(format!(
                "header {:?} does not match {expected_field:?}",
                other.unwrap_or("")
            )))
        }
    }
    if lines.next() != Some(CSV_HEADER) {
        return Err(corrupt("missing CSV header".into()));
    }
    let order = field.order();
    let mut entries = Vec::with_capacity(order as usize);
    for (expected_index, line) in lines.enumerate() {
        let cols: Vec<&str> = line.split(',').collect();
        let bad_row = || corrupt(format!("malformed row {line:?}"));
        if cols.len() != 4 || cols[0].parse::<u64>().ok() != Some(expected_index as u64) {
            return Err(bad_row());
        }
        let numerator: BigInt = cols[1].parse().map_err(|_| bad_row())?;
        let denominator: BigInt = cols[2].parse().map_err(|_| bad_row())?;
        let value = TraceValue {
            numerator,
            denominator,
        };
        if cols[3] != value.is_integer().to_string() {
            return Err(bad_row());
        }
        entries.push(value);
    }
    if entries.len() as u64 != order {
        return Err(corrupt(format!("expected {order} rows, found {}", entries.len())));
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> (SystemParams, FieldDescriptor, Vec<TraceValue>) {
        let params = SystemParams::new(3, 1).unwrap();
        let field: FieldDescriptor = "p=3 d=1 modulus=[1,1]".parse().unwrap();
        let entries = [-3, 6, 0]
            .iter()
            .map(|&n| TraceValue {
                numerator: BigInt::from(n),
                denominator: BigInt::from(3),
            })
            .collect();
        (params, field, entries)
    }

    #[test]
    fn render_parse_round_trip() {
        let (params, field, entries) = sample();
        let text = render(&params, 1, &field, &entries);
        let path = Path::new("mem.csv");
        assert_eq!(parse(path, &text, &params, &field).unwrap(), entries);
        assert!(text.lines().next().unwrap().starts_with("# alttrace"));
    }

    #[test]
    fn tampering_is_detected() {
        let (params, field, entries) = sample();
        let text = render(&params, 1, &field, &entries);
        let tampered = text.replacen("1,6,3,true", "1,3,3,true", 1);
        assert_ne!(tampered, text);
        let err = parse(Path::new("x"), &tampered, &params, &field).unwrap_err();
        assert!(matches!(err, Error::CacheCorrupt { .. }));
        let truncated = &text[..text.len() - 10];
        assert!(parse(Path::new("x"), truncated, &params, &field).is_err());
    }

    #[test]
    fn header_mismatch_is_detected() {
        let (params, field, entries) = sample();
        let text = render(&params, 1, &field, &entries);
        let other = SystemParams::with_base(3, 2, 1, 1).unwrap();
        assert!(parse(Path::new("x"), &text, &other, &field).is_err());
    }
}
