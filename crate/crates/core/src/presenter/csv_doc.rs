use csv::{QuoteStyle, Terminator, WriterBuilder};

/// A table serialized as RFC 4180 CSV: CRLF line endings, UTF-8, fields
/// quoted only when they contain a comma, quote or line break.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvDocument {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("row {row} has {found} cells, header has {expected}")]
pub struct RowWidthError {
    pub row: usize,
    pub found: usize,
    pub expected: usize,
}

impl CsvDocument {
    pub fn new(header: Vec<String>, rows: Vec<Vec<String>>) -> Result<Self, RowWidthError> {
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != header.len()) {
            return Err(RowWidthError {
                row,
                found: r.len(),
                expected: header.len(),
            });
        }
        Ok(Self { header, rows })
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut writer = WriterBuilder::new()
            .terminator(Terminator::CRLF)
            .quote_style(QuoteStyle::Necessary)
            .from_writer(Vec::new());
        for record in std::iter::once(&self.header).chain(&self.rows) {
            writer.write_record(record).expect("writing to memory cannot fail");
        }
        writer.into_inner().expect("flushing to memory cannot fail")
    }
}
