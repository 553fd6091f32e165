//! Sample input: plain text (one value per line) or a CSV column.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::domain::Selection;
use crate::error::{Error, Result};

/// Which CSV column holds the sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Column {
    Index(usize),
    Name(String),
}

impl std::str::FromStr for Column {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) => Column::Index(i),
            Err(_) => Column::Name(s.to_string()),
        })
    }
}

/// Reads one real per line. Blank lines and lines starting with `#` are
/// skipped.
pub fn read_plain(path: &Path) -> Result<Vec<f64>> {
    let file = File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut values = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        values.push(parse_value(path, i + 1, text)?);
    }
    Ok(values)
}

/// Reads one column of a CSV file. Names require `has_header`.
pub fn read_csv_column(path: &Path, column: &Column, has_header: bool) -> Result<Vec<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .comment(Some(b'#'))
        .flexible(true)
        .from_path(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let index = match column {
        Column::Index(i) => *i,
        Column::Name(name) => {
            if !has_header {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: 1,
                    message: format!("column {name:?} selected by name but the file has no header"),
                });
            }
            let headers = reader.headers()?;
            headers
                .iter()
                .position(|h| h.trim() == name)
                .ok_or_else(|| Error::Parse {
                    path: path.to_path_buf(),
                    line: 1,
                    message: format!("no column named {name:?}"),
                })?
        }
    };
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let field = record.get(index).ok_or_else(|| Error::Parse {
            path: path.to_path_buf(),
            line,
            message: format!("missing column {index}"),
        })?;
        let text = field.trim();
        if text.is_empty() {
            continue;
        }
        values.push(parse_value(path, line, text)?);
    }
    Ok(values)
}

fn parse_value(path: &Path, line: usize, text: &str) -> Result<f64> {
    let v: f64 = text.parse().map_err(|_| Error::Parse {
        path: path.to_path_buf(),
        line,
        message: format!("not a number: {text:?}"),
    })?;
    if !v.is_finite() {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line,
            message: format!("non-finite value {text:?}"),
        });
    }
    Ok(v)
}

/// Reads a sample file into a [`Selection`].
pub fn read_selection(path: &Path, column: Option<&Column>, has_header: bool) -> Result<Selection> {
    let values = match column {
        Some(c) => read_csv_column(path, c, has_header)?,
        None => read_plain(path)?,
    };
    Selection::new(values)
}
