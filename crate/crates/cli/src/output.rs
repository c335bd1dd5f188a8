//! Deterministic output formatting.
//!
//! CSV cells use a fixed 17-significant-digit scientific format and `\n`
//! line endings, so identical inputs produce byte-identical files.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

/// 17 significant digits: enough to round-trip any f64.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub struct CsvWriter {
    out: Box<dyn Write>,
}

impl CsvWriter {
    pub fn create(path: &Path) -> io::Result<Self> {
        Ok(CsvWriter {
            out: Box::new(BufWriter::new(File::create(path)?)),
        })
    }

    pub fn stdout() -> Self {
        CsvWriter {
            out: Box::new(io::stdout()),
        }
    }

    pub fn header(&mut self, columns: &[&str]) -> io::Result<()> {
        self.out.write_all(columns.join(",").as_bytes())?;
        self.out.write_all(b"\n")
    }

    pub fn row(&mut self, cells: &[String]) -> io::Result<()> {
        self.out.write_all(cells.join(",").as_bytes())?;
        self.out.write_all(b"\n")
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.out.flush()
    }
}

/// Write a serde value as pretty JSON with a trailing newline.
pub fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> io::Result<()> {
    let mut f = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut f, value)?;
    f.write_all(b"\n")?;
    f.flush()
}
