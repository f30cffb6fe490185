//! CSV tables: header row, comma separated, LF line endings. Text cells are
//! flattened to one line with `;` in place of commas.

use crate::error::{Error, Result};
use crate::special::fmt17;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut w = ::csv::WriterBuilder::new()
            .terminator(::csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header).expect("write to memory");
        for row in &self.rows {
            w.write_record(row).expect("write to memory");
        }
        let bytes = w.into_inner().expect("flush to memory");
        String::from_utf8(bytes).expect("cells are UTF-8")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut r = ::csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(text.as_bytes());
        let bad = |e: ::csv::Error| Error::Usage(format!("malformed CSV: {e}"));
        let header: Vec<String> = r.headers().map_err(bad)?.iter().map(str::to_string).collect();
        if header.is_empty() {
            return Err(Error::Usage("empty CSV".into()));
        }
        let rows = r
            .records()
            .map(|rec| rec.map(|rec| rec.iter().map(str::to_string).collect()).map_err(bad))
            .collect::<Result<_>>()?;
        Ok(Table { header, rows })
    }

    pub fn column(&self, name: &str) -> Result<usize> {
        self.header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Usage(format!("CSV has no column '{name}'")))
    }
}

pub fn float(v: f64) -> String {
    fmt17(v)
}

pub fn text(s: &str) -> String {
    s.replace([',', '\n', '\r'], ";")
}

pub fn parse_float(s: &str) -> Result<f64> {
    s.parse()
        .map_err(|_| Error::Usage(format!("bad number '{s}' in CSV")))
}

pub fn parse_int<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::Usage(format!("bad integer '{s}' in CSV")))
}

pub fn parse_bool(s: &str) -> Result<bool> {
    match s {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(Error::Usage(format!("bad flag '{s}' in CSV"))),
    }
}
