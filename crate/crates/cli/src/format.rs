use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::CliError;

pub const JSON_SCHEMA_VERSION: u32 = 1;

/// Twelve significant digits, so that regression diffs stay meaningful.
pub fn float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.11e}")
    }
}

pub fn opt_float(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

#[derive(Serialize)]
struct Versioned<'a, T: Serialize> {
    schema_version: u32,
    kind: &'a str,
    data: &'a T,
}

pub fn write_json<T: Serialize>(path: &Path, kind: &str, data: &T) -> Result<(), CliError> {
    let doc = Versioned {
        schema_version: JSON_SCHEMA_VERSION,
        kind,
        data,
    };
    let text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::io("json", e))?;
    let mut file = std::fs::File::create(path).map_err(|e| CliError::io(&path.display().to_string(), e))?;
    writeln!(file, "{text}").map_err(|e| CliError::io(&path.display().to_string(), e))
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    let ctx = path.display().to_string();
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::io(&ctx, e))?;
    w.write_record(header).map_err(|e| CliError::io(&ctx, e))?;
    for r in rows {
        w.write_record(r).map_err(|e| CliError::io(&ctx, e))?;
    }
    w.flush().map_err(|e| CliError::io(&ctx, e))
}

/// Left-aligned plain-text table.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = vec![line(header.to_vec())];
    out.extend(rows.iter().map(|r| line(r.iter().map(String::as_str).collect())));
    out.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(float(1.0), "1.00000000000e0");
        assert_eq!(float(-2.5e-23), "-2.50000000000e-23");
        assert_eq!(float(f64::INFINITY), "inf");
    }

    #[test]
    fn table_pads_columns() {
        let t = table(&["k", "mu"], &[vec!["0".into(), "12".into()]]);
        assert_eq!(t, "k  mu\n0  12");
    }
}
