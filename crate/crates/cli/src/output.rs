//! Deterministic CSV and JSON emission.
//!
//! CSV carries the header `x,t,u,v`, rows in t-major order, every number
//! rendered with 17 significant digits so a binary64 value round-trips
//! exactly. Excluded points leave `u` and `v` empty. Lines end with LF.

use crate::error::CliError;
use std::io::Write;
use std::path::Path;

/// 17-significant-digit rendering, round-trip exact for binary64.
pub fn fmt_f64(value: f64) -> String {
    format!("{value:.16e}")
}

pub struct CsvGrid {
    pub rows: Vec<CsvRow>,
}

pub struct CsvRow {
    pub x: f64,
    pub t: f64,
    pub u: Option<f64>,
    pub v: Option<f64>,
}

impl CsvGrid {
    pub fn render(&self) -> String {
        let mut out = String::with_capacity(32 * (self.rows.len() + 1));
        out.push_str("x,t,u,v\n");
        for row in &self.rows {
            out.push_str(&fmt_f64(row.x));
            out.push(',');
            out.push_str(&fmt_f64(row.t));
            out.push(',');
            if let Some(u) = row.u {
                out.push_str(&fmt_f64(u));
            }
            out.push(',');
            if let Some(v) = row.v {
                out.push_str(&fmt_f64(v));
            }
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        write_text(path, &self.render())
    }
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    let mut file = std::fs::File::create(path)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    file.write_all(text.as_bytes())
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    Ok(())
}

/// Writes the JSON document to `--out` or stdout.
pub fn emit_json(doc: &serde_json::Value, out: Option<&Path>) -> Result<(), CliError> {
    let text = format!("{:#}\n", doc);
    match out {
        Some(path) => write_text(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digit_rendering_round_trips() {
        for value in [0.1, -1.0 / 3.0, 2.0_f64.sqrt(), 6.62607015e-34, -0.0, 1e17] {
            let text = fmt_f64(value);
            let back: f64 = text.parse().unwrap();
            assert_eq!(back.to_bits(), value.to_bits(), "{text}");
        }
    }

    #[test]
    fn excluded_rows_have_empty_fields() {
        let grid = CsvGrid {
            rows: vec![CsvRow {
                x: 1.0,
                t: 0.0,
                u: None,
                v: None,
            }],
        };
        let text = grid.render();
        assert_eq!(
            text.lines().nth(1).unwrap(),
            "1.0000000000000000e0,0.0000000000000000e0,,"
        );
    }
}
