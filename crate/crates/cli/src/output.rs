use std::io::Write;

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

/// One command result in all three renderings.
pub struct Output {
    pub plain: String,
    pub json: Value,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
    pub exit: i32,
}

impl Output {
    pub fn new(
        plain: String,
        json: Value,
        csv_header: Vec<&'static str>,
        csv_rows: Vec<Vec<String>>,
    ) -> Self {
        Output {
            plain,
            json,
            csv_header,
            csv_rows,
            exit: 0,
        }
    }

    pub fn with_exit(mut self, code: i32) -> Self {
        self.exit = code;
        self
    }

    pub fn render(
        &self,
        format: Format,
        timestamp: Option<u64>,
        out: &mut dyn Write,
    ) -> std::io::Result<()> {
        match format {
            Format::Plain => {
                out.write_all(self.plain.as_bytes())?;
                if let Some(t) = timestamp {
                    writeln!(out, "generated at unix time {t}")?;
                }
            }
            Format::Json => {
                let mut v = self.json.clone();
                if let (Some(t), Value::Object(map)) = (timestamp, &mut v) {
                    map.insert("generated_at_unix".into(), t.into());
                }
                serde_json::to_writer_pretty(&mut *out, &v)?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.csv_header)?;
                for row in &self.csv_rows {
                    w.write_record(row)?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }
}
