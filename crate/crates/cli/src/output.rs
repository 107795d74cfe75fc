//! Plain-text writers. CSV numbers use 17 significant digits so a value
//! read back is bit-identical to the one written.

use std::io::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Comma-joined rows under `header`, LF-terminated.
pub fn csv<I, R>(header: &str, rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut out = String::with_capacity(4096);
    out.push_str(header);
    out.push('\n');
    for row in rows {
        let mut first = true;
        for cell in row {
            if !first {
                out.push(',');
            }
            first = false;
            out.push_str(&cell);
        }
        out.push('\n');
    }
    out
}

pub fn json<V: Serialize>(value: &V) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Writes to `path`, or to stdout when there is none.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0] {
            let s = num(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
            let digits = s.split('e').next().unwrap().trim_start_matches('-').replace('.', "");
            assert_eq!(digits.len(), 17);
        }
    }

    #[test]
    fn csv_uses_lf_only() {
        let s = csv("a,b", vec![vec!["1".to_string(), "2".to_string()]]);
        assert_eq!(s, "a,b\n1,2\n");
    }
}
