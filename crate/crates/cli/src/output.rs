//! Record emission in JSON Lines or CSV.

use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Writes one record per line (JSON) or per row (CSV). In CSV mode a header
/// is written whenever the record shape changes.
pub struct Emitter {
    format: Format,
    out: Box<dyn Write>,
    last_header: Option<String>,
}

impl Emitter {
    pub fn new(format: Format, out: Box<dyn Write>) -> Self {
        Emitter {
            format,
            out,
            last_header: None,
        }
    }

    pub fn format(&self) -> Format {
        self.format
    }

    pub fn emit<T: Serialize>(&mut self, record: &T) -> std::io::Result<()> {
        match self.format {
            Format::Json => {
                serde_json::to_writer(&mut self.out, record)?;
                writeln!(self.out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.serialize(record).map_err(std::io::Error::other)?;
                let bytes = w
                    .into_inner()
                    .map_err(|e| std::io::Error::other(e.to_string()))?;
                let text = String::from_utf8(bytes).expect("csv output is UTF-8");
                let (header, row) = text.split_once('\n').unwrap_or((&text, ""));
                if self.last_header.as_deref() != Some(header) {
                    writeln!(self.out, "{header}")?;
                    self.last_header = Some(header.to_string());
                }
                self.out.write_all(row.as_bytes())
            }
        }
    }

    pub fn finish(mut self) -> std::io::Result<()> {
        self.out.flush()
    }
}
