use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

use crate::cli::Format;

/// Sole owner of the report stream.
pub struct Output {
    pub format: Format,
    w: Box<dyn Write>,
}

impl Output {
    pub fn open(format: Format, path: Option<&Path>) -> Result<Self> {
        let w: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).with_context(|| format!("creating {}", p.display()))?,
            )),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(Output { format, w })
    }

    pub fn line(&mut self, text: impl AsRef<str>) -> io::Result<()> {
        self.w.write_all(text.as_ref().as_bytes())?;
        self.w.write_all(b"\n")
    }

    pub fn json(&mut self, value: &impl Serialize) -> io::Result<()> {
        serde_json::to_writer(&mut self.w, value)?;
        self.w.write_all(b"\n")
    }

    pub fn csv(&mut self, fields: &[String]) -> io::Result<()> {
        self.line(fields.join(","))
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.w.flush()
    }
}

/// Splits a comma-separated list, ignoring surrounding whitespace.
pub fn split_list(text: &str) -> Vec<&str> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect()
}
