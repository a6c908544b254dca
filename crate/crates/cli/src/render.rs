use std::fs;
use std::io::{self, Write};
use std::path::Path;

use lbq_core::scalar::format_fixed;
use lbq_core::{Scalar, TransformEntry};

use crate::args::OutputFormat;

/// A header and string cells, rendered in one of the output formats.
#[derive(Debug, Clone, Default)]
pub struct Grid {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Grid {
    pub fn new(header: Vec<String>) -> Self {
        Grid {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.delimited(b','),
            OutputFormat::Tsv => self.delimited(b'\t'),
            OutputFormat::Markdown => self.markdown(),
        }
    }

    fn delimited(&self, delimiter: u8) -> String {
        let mut w = csv::WriterBuilder::new()
            .delimiter(delimiter)
            .from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("cells are UTF-8")
    }

    fn markdown(&self) -> String {
        let line = |cells: &[String]| format!("| {} |\n", cells.join(" | "));
        let mut out = line(&self.header);
        out.push_str(&format!("|{}\n", "---|".repeat(self.header.len())));
        for row in &self.rows {
            out.push_str(&line(row));
        }
        out
    }
}

/// `BRK` for breakdown, empty for unavailable, else fixed-point.
pub fn entry_cell<T: Scalar>(e: &TransformEntry<T>, digits: usize) -> String {
    match e {
        TransformEntry::Valid(v) => format_fixed(v, digits),
        TransformEntry::Breakdown => "BRK".into(),
        TransformEntry::Unavailable => String::new(),
    }
}

/// Scientific notation with `digits` significant digits.
pub fn scientific<T: Scalar>(x: &T, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    format!("{:.*e}", digits.saturating_sub(1), x.to_f64())
}

pub fn emit(text: &str, out: Option<&Path>) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}
