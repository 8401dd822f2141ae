// Copyright 2026 The jcbath Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};

use crate::error::CliError;

/// Cell format: scientific notation with 15 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.14e}")
}

/// Write a table preceded by a `#` line echoing the configuration and a
/// header row.
pub fn write_rows(
    path: &Path,
    config_echo: &str,
    header: &[&str],
    rows: &[Vec<String>],
) -> Result<PathBuf, CliError> {
    let mut body = format!("# {config_echo}\n{}\n", header.join(","));
    for row in rows {
        body.push_str(&row.join(","));
        body.push('\n');
    }
    std::fs::write(path, body).map_err(|e| CliError::io(path, e))?;
    Ok(path.to_path_buf())
}

/// Numeric table given column-wise.
pub fn write_columns(
    path: &Path,
    config_echo: &str,
    header: &[&str],
    columns: &[&[f64]],
) -> Result<PathBuf, CliError> {
    let rows = columns.first().map_or(0, |c| c.len());
    let rows: Vec<Vec<String>> = (0..rows)
        .map(|i| columns.iter().map(|c| num(c[i])).collect())
        .collect();
    write_rows(path, config_echo, header, &rows)
}
