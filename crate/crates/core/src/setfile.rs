//! Plain-text set files: one base-10 integer per line, `#` lines are comments.
//! Order in the file is irrelevant; sets are re-sorted on load.

use std::fs;
use std::io;
use std::path::Path;

use crate::error::{Error, Result};
use crate::sets::GroundSet;

/// Parses set-file bytes. Blank lines are skipped; duplicates are rejected.
pub fn parse_set(input: &[u8]) -> Result<GroundSet> {
    let text = std::str::from_utf8(input).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("not UTF-8: {e}"),
    })?;
    let mut values = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: i64 = line.parse().map_err(|e| Error::Parse {
            line: idx + 1,
            msg: format!("{line:?}: {e}"),
        })?;
        values.push(v);
    }
    GroundSet::new(values)
}

/// Renders a set in file format, with optional leading comment lines.
pub fn format_set(set: &GroundSet, comments: &[&str]) -> String {
    let mut out = String::new();
    for c in comments {
        for line in c.lines() {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
    }
    for x in set.iter() {
        out.push_str(&x.to_string());
        out.push('\n');
    }
    out
}

pub fn read_set_file(path: &Path) -> anyhow::Result<GroundSet> {
    let bytes = fs::read(path)?;
    Ok(parse_set(&bytes)?)
}

pub fn write_set_file(path: &Path, set: &GroundSet, comments: &[&str]) -> io::Result<()> {
    fs::write(path, format_set(set, comments))
}
